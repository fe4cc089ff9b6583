use std::collections::BTreeSet;

use super::instance::{Clause, Lit};

/// Result of [`solve_clauses`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// A `±1` assignment to every variable.
    Sat(Vec<i8>),
    /// Indices of a subset of the clauses that is already unsatisfiable.
    Unsat(Vec<usize>),
}

/// Union-find with parity: `value(v) = parity(v) · value(root(v))`.
struct Links {
    parent: Vec<usize>,
    parity: Vec<i8>,
}

impl Links {
    fn new(n: usize) -> Self {
        Links {
            parent: (0..n).collect(),
            parity: vec![1; n],
        }
    }

    fn find(&mut self, v: usize) -> (usize, i8) {
        let mut path = Vec::new();
        let mut x = v;
        while self.parent[x] != x {
            path.push(x);
            x = self.parent[x];
        }
        // compress, accumulating parity from the top down
        let mut acc = 1;
        for &y in path.iter().rev() {
            acc *= self.parity[y];
            self.parity[y] = acc;
            self.parent[y] = x;
        }
        // roots keep parity 1
        (x, self.parity[v])
    }

    /// Imposes `sa·value(a) = sb·value(b)`; false on contradiction.
    fn union(&mut self, a: usize, sa: i8, b: usize, sb: i8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        // value(a) = pa·R_a, value(b) = pb·R_b
        if ra == rb {
            return sa * pa == sb * pb;
        }
        // attach ra under rb: R_a = (sb·pb)/(sa·pa) · R_b
        self.parent[ra] = rb;
        self.parity[ra] = sa * pa * sb * pb;
        true
    }
}

fn sign(l: &Lit) -> i8 {
    if l.positive {
        1
    } else {
        -1
    }
}

/// A literal over link classes.
#[derive(Clone, Copy)]
struct CLit {
    class: usize,
    sign: i8,
}

enum Status {
    Satisfied,
    Open,
    Conflict,
    /// Literals that must become true.
    Force(Vec<CLit>),
}

fn status(kind: &Clause, lits: &[CLit], assign: &[i8]) -> Status {
    let val = |l: &CLit| assign[l.class] * l.sign;
    let t = lits.iter().filter(|l| val(l) > 0).count();
    let f = lits.iter().filter(|l| val(l) < 0).count();
    let open: Vec<CLit> = lits.iter().filter(|l| val(l) == 0).copied().collect();
    match kind {
        Clause::Cocycle { .. } => {
            if t > 2 || f > 2 {
                Status::Conflict
            } else if open.is_empty() {
                Status::Satisfied
            } else if t == 2 {
                Status::Force(
                    open.iter()
                        .map(|l| CLit {
                            class: l.class,
                            sign: -l.sign,
                        })
                        .collect(),
                )
            } else if f == 2 {
                Status::Force(open)
            } else {
                Status::Open
            }
        }
        Clause::Cone { .. } => {
            if t > 0 {
                Status::Satisfied
            } else if open.is_empty() {
                Status::Conflict
            } else if open.len() == 1 {
                Status::Force(open)
            } else {
                Status::Open
            }
        }
        Clause::Link { .. } => Status::Satisfied,
    }
}

struct Search<'a> {
    clauses: &'a [Clause],
    lits: Vec<Vec<CLit>>,
    occurs: Vec<Vec<usize>>,
    assign: Vec<i8>,
    /// `(class, is_decision, flipped)`
    trail: Vec<(usize, bool, bool)>,
    touched: BTreeSet<usize>,
}

impl Search<'_> {
    fn set(&mut self, class: usize, value: i8, decision: bool) {
        self.assign[class] = value;
        self.trail.push((class, decision, false));
    }

    /// Unit propagation from the clauses touching `start`; returns a
    /// conflicting clause.
    fn propagate(&mut self, start: Vec<usize>) -> Option<usize> {
        let mut queue: Vec<usize> = start;
        while let Some(class) = queue.pop() {
            for &ci in &self.occurs[class].clone() {
                match status(&self.clauses[ci], &self.lits[ci], &self.assign) {
                    Status::Conflict => {
                        self.touched.insert(ci);
                        return Some(ci);
                    }
                    Status::Force(ls) => {
                        self.touched.insert(ci);
                        for l in ls {
                            let want = l.sign;
                            match self.assign[l.class] {
                                0 => {
                                    self.set(l.class, want, false);
                                    queue.push(l.class);
                                }
                                v if v == want => {}
                                _ => return Some(ci),
                            }
                        }
                    }
                    Status::Satisfied | Status::Open => {}
                }
            }
        }
        None
    }

    /// Undoes the trail to the last unflipped decision and flips it.
    fn backtrack(&mut self) -> Option<usize> {
        while let Some((class, decision, flipped)) = self.trail.pop() {
            let value = self.assign[class];
            self.assign[class] = 0;
            if decision && !flipped {
                self.assign[class] = -value;
                self.trail.push((class, true, true));
                return Some(class);
            }
        }
        None
    }
}

/// Outcome of running the search, possibly enumerating every solution.
struct Run {
    solutions: Vec<Vec<i8>>,
    touched: BTreeSet<usize>,
    link_conflict: Option<Vec<usize>>,
}

fn run(num_vars: usize, clauses: &[Clause], all: bool) -> Run {
    let mut links = Links::new(num_vars);
    let mut link_ids = Vec::new();
    for (ci, c) in clauses.iter().enumerate() {
        if let Clause::Link { lits, .. } = c {
            link_ids.push(ci);
            if !links.union(lits[0].var, sign(&lits[0]), lits[1].var, sign(&lits[1])) {
                return Run {
                    solutions: Vec::new(),
                    touched: BTreeSet::new(),
                    link_conflict: Some(link_ids),
                };
            }
        }
    }
    // classes numbered by their least variable
    let mut class_of_root = vec![usize::MAX; num_vars];
    let mut var_class = Vec::with_capacity(num_vars);
    let mut count = 0;
    for v in 0..num_vars {
        let (r, p) = links.find(v);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = count;
            count += 1;
        }
        var_class.push((class_of_root[r], p));
    }
    let lits: Vec<Vec<CLit>> = clauses
        .iter()
        .map(|c| {
            c.lits()
                .iter()
                .map(|l| {
                    let (class, p) = var_class[l.var];
                    CLit {
                        class,
                        sign: p * sign(l),
                    }
                })
                .collect()
        })
        .collect();
    let mut occurs = vec![Vec::new(); count];
    for (ci, ls) in lits.iter().enumerate() {
        if matches!(clauses[ci], Clause::Link { .. }) {
            continue;
        }
        for l in ls {
            if occurs[l.class].last() != Some(&ci) {
                occurs[l.class].push(ci);
            }
        }
    }
    let mut s = Search {
        clauses,
        lits,
        occurs,
        assign: vec![0; count],
        trail: Vec::new(),
        touched: BTreeSet::new(),
    };
    let mut solutions = Vec::new();
    let expand =
        |assign: &[i8]| -> Vec<i8> { var_class.iter().map(|&(c, p)| assign[c] * p).collect() };

    // clauses that are falsified or forced with nothing assigned
    let mut conflict = None;
    let mut forced = Vec::new();
    for (ci, clause) in clauses.iter().enumerate() {
        match status(clause, &s.lits[ci], &s.assign) {
            Status::Conflict => {
                s.touched.insert(ci);
                conflict = Some(ci);
                break;
            }
            Status::Force(ls) => {
                s.touched.insert(ci);
                for l in ls {
                    match s.assign[l.class] {
                        0 => {
                            s.set(l.class, l.sign, false);
                            forced.push(l.class);
                        }
                        v if v == l.sign => {}
                        _ => conflict = Some(ci),
                    }
                }
                if conflict.is_some() {
                    break;
                }
            }
            _ => {}
        }
    }
    if conflict.is_none() {
        conflict = s.propagate(forced);
    }
    let mut pending = conflict.is_some();
    let mut next = 0;
    loop {
        if pending {
            let Some(class) = s.backtrack() else { break };
            next = 0;
            pending = s.propagate(vec![class]).is_some();
            continue;
        }
        while next < count && s.assign[next] != 0 {
            next += 1;
        }
        if next == count {
            solutions.push(expand(&s.assign));
            if !all {
                break;
            }
            pending = true;
            continue;
        }
        s.set(next, 1, true);
        pending = s.propagate(vec![next]).is_some();
    }
    Run {
        solutions,
        touched: s.touched,
        link_conflict: None,
    }
}

/// Decides satisfiability. For unsatisfiable input the returned core is
/// the clauses that took part in the search: every conflict or
/// propagation clause together with all links.
pub fn solve_clauses(num_vars: usize, clauses: &[Clause]) -> Outcome {
    let r = run(num_vars, clauses, false);
    if let Some(core) = r.link_conflict {
        return Outcome::Unsat(core);
    }
    if let Some(s) = r.solutions.into_iter().next() {
        return Outcome::Sat(s);
    }
    let mut core: BTreeSet<usize> = r.touched;
    core.extend(
        clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, Clause::Link { .. }))
            .map(|(i, _)| i),
    );
    Outcome::Unsat(core.into_iter().collect())
}

/// Every satisfying assignment, in the order the search meets them
/// (`+1` branches first, variables in index order of their link class).
pub fn all_solutions(num_vars: usize, clauses: &[Clause]) -> Vec<Vec<i8>> {
    run(num_vars, clauses, true).solutions
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Element;

    fn link(a: Lit, b: Lit) -> Clause {
        Clause::Link {
            lits: [a, b],
            elements: vec![],
        }
    }

    fn cone(a: Lit, b: Lit, c: Lit) -> Clause {
        Clause::Cone {
            lits: [a, b, c],
            elements: [Element::index(0), Element::index(0)],
        }
    }

    fn brute(n: usize, clauses: &[Clause]) -> Vec<Vec<i8>> {
        let mut out = Vec::new();
        for mask in 0..1u32 << n {
            let a: Vec<i8> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                .collect();
            if clauses.iter().all(|c| c.is_satisfied(&a)) {
                out.push(a);
            }
        }
        out
    }

    #[test]
    fn self_contradictory_link() {
        assert_eq!(
            solve_clauses(1, &[link(Lit::pos(0), Lit::neg(0))]),
            Outcome::Unsat(vec![0])
        );
    }

    #[test]
    fn matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..7);
            let lit = |rng: &mut rand_chacha::ChaCha8Rng| Lit {
                var: rng.gen_range(0..n),
                positive: rng.gen(),
            };
            let mut clauses = Vec::new();
            for _ in 0..rng.gen_range(0..8) {
                clauses.push(match rng.gen_range(0..3) {
                    0 => link(lit(&mut rng), lit(&mut rng)),
                    1 => cone(lit(&mut rng), lit(&mut rng), lit(&mut rng)),
                    _ => Clause::Cocycle {
                        lits: [lit(&mut rng), lit(&mut rng), lit(&mut rng), lit(&mut rng)],
                        elements: [Element::index(0), Element::index(0), Element::index(0)],
                    },
                });
            }
            let expected = brute(n, &clauses);
            let mut got = all_solutions(n, &clauses);
            got.sort();
            let mut exp = expected.clone();
            exp.sort();
            assert_eq!(got, exp, "{clauses:?}");
            match solve_clauses(n, &clauses) {
                Outcome::Sat(a) => assert!(clauses.iter().all(|c| c.is_satisfied(&a))),
                Outcome::Unsat(core) => {
                    assert!(expected.is_empty());
                    let sub: Vec<Clause> = core.iter().map(|&i| clauses[i].clone()).collect();
                    assert!(brute(n, &sub).is_empty());
                }
            }
        }
    }
}
