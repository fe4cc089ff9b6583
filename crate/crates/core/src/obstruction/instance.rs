use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Circular orders: one variable `c(e, a, b)` per ordered pair.
    Co,
    /// Linear orders: one variable per element, `+1` for the positive cone.
    Lo,
}

/// A literal over `±1`-valued variables: variable `var`, negated when
/// `positive` is false. Serialized DIMACS-style as `±(var + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Lit {
            var,
            positive: false,
        }
    }

    /// Value under `assignment`, as `±1`.
    pub fn value(&self, assignment: &[i8]) -> i8 {
        if self.positive {
            assignment[self.var]
        } else {
            -assignment[self.var]
        }
    }
}

impl Serialize for Lit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = self.var as i64 + 1;
        s.serialize_i64(if self.positive { v } else { -v })
    }
}

impl<'de> Deserialize<'de> for Lit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        if v == 0 {
            return Err(serde::de::Error::custom("literal 0 is not allowed"));
        }
        Ok(Lit {
            var: (v.unsigned_abs() - 1) as usize,
            positive: v > 0,
        })
    }
}

/// One constraint. `elements` records where it came from so that a
/// verifier can re-derive it from the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Clause {
    /// The two literals take equal values.
    Link {
        lits: [Lit; 2],
        elements: Vec<Element>,
    },
    /// Exactly two of the four literals are `+1`: the cocycle identity on
    /// `(e, a, b, c)`.
    Cocycle {
        lits: [Lit; 4],
        elements: [Element; 3],
    },
    /// At least one literal is `+1`: if `a` and `b` are positive so is `ab`.
    Cone {
        lits: [Lit; 3],
        elements: [Element; 2],
    },
}

impl Clause {
    pub fn lits(&self) -> &[Lit] {
        match self {
            Clause::Link { lits, .. } => lits,
            Clause::Cocycle { lits, .. } => lits,
            Clause::Cone { lits, .. } => lits,
        }
    }

    pub fn is_satisfied(&self, assignment: &[i8]) -> bool {
        match self {
            Clause::Link { lits, .. } => lits[0].value(assignment) == lits[1].value(assignment),
            Clause::Cocycle { lits, .. } => {
                lits.iter().filter(|l| l.value(assignment) > 0).count() == 2
            }
            Clause::Cone { lits, .. } => lits.iter().any(|l| l.value(assignment) > 0),
        }
    }

    fn map_vars(&self, f: impl Fn(usize) -> usize) -> Clause {
        let m = |l: &Lit| Lit {
            var: f(l.var),
            positive: l.positive,
        };
        match self {
            Clause::Link { lits, elements } => Clause::Link {
                lits: lits.each_ref().map(m),
                elements: elements.clone(),
            },
            Clause::Cocycle { lits, elements } => Clause::Cocycle {
                lits: lits.each_ref().map(m),
                elements: elements.clone(),
            },
            Clause::Cone { lits, elements } => Clause::Cone {
                lits: lits.each_ref().map(m),
                elements: elements.clone(),
            },
        }
    }
}

/// The finite constraint system for orders restricted to a ball.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstraintInstance {
    pub group: GroupDescriptor,
    pub radius: usize,
    pub mode: Mode,
    pub ball: Vec<Element>,
    /// The triple each variable stands for: `(e, a, b)` in CO mode, and
    /// `(a⁻¹, e, a)` in LO mode.
    pub triples: Vec<[Element; 3]>,
    pub clauses: Vec<Clause>,
    /// Constraints dropped because a translate left the ball.
    pub skipped: usize,
    pub notes: Vec<String>,
}

impl ConstraintInstance {
    pub fn num_vars(&self) -> usize {
        self.triples.len()
    }

    /// Keeps only the clauses at `keep` and the variables they mention,
    /// renumbered in their original order.
    pub fn restrict(&self, keep: &[usize]) -> (Vec<[Element; 3]>, Vec<Clause>) {
        let mut used: Vec<usize> = keep
            .iter()
            .flat_map(|&i| self.clauses[i].lits().iter().map(|l| l.var))
            .collect();
        used.sort_unstable();
        used.dedup();
        let renum: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let triples = used.iter().map(|&v| self.triples[v].clone()).collect();
        let clauses = keep
            .iter()
            .map(|&i| self.clauses[i].map_vars(|v| renum[&v]))
            .collect();
        (triples, clauses)
    }
}

/// Builds the constraints on the ball of the given radius.
///
/// CO mode has a variable `v(a, b) = c(e, a, b)` for distinct nonidentity
/// `a, b`, linked by `v(a, b) = -v(b, a)` and `v(a, b) = v(a⁻¹b, a⁻¹)`, and
/// one cocycle clause for each `a < b < c` (ball order) whose translates
/// stay in the ball. LO mode has `p(a)` for nonidentity `a`, linked by
/// `p(a⁻¹) = -p(a)`, with cone clauses `¬p(a) ∨ ¬p(b) ∨ p(ab)`.
pub fn build_instance(
    group: &GroupDescriptor,
    radius: usize,
    mode: Mode,
) -> Result<ConstraintInstance> {
    group.validate()?;
    if radius == 0 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    let ball = group.ball(radius);
    let e = group.identity();
    let index: HashMap<&Element, usize> = ball.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let nonid: Vec<&Element> = ball.iter().filter(|x| **x != e).collect();
    let inv: Vec<Element> = nonid
        .iter()
        .map(|x| group.inverse(x))
        .collect::<Result<_>>()?;
    let mut triples = Vec::new();
    let mut clauses = Vec::new();
    let mut skipped = 0;
    let mut notes = Vec::new();
    match mode {
        Mode::Co => {
            if nonid.len() < 2 {
                notes.push("fewer than two nonidentity elements; no constraints".into());
            }
            let mut var: HashMap<(usize, usize), usize> = HashMap::new();
            for a in &nonid {
                for b in &nonid {
                    if a != b {
                        var.insert((index[a], index[b]), triples.len());
                        triples.push([e.clone(), (*a).clone(), (*b).clone()]);
                    }
                }
            }
            let v = |a: &Element, b: &Element| -> Option<usize> {
                var.get(&(*index.get(a)?, *index.get(b)?)).copied()
            };
            for (i, a) in nonid.iter().enumerate() {
                for b in &nonid {
                    if a == b {
                        continue;
                    }
                    let ab = v(a, b).expect("pair in ball");
                    let ba = v(b, a).expect("pair in ball");
                    if ab < ba {
                        clauses.push(Clause::Link {
                            lits: [Lit::pos(ab), Lit::neg(ba)],
                            elements: vec![(*a).clone(), (*b).clone()],
                        });
                    }
                    let x = group.multiply(&inv[i], b)?;
                    match v(&x, &inv[i]) {
                        Some(t) if t != ab => clauses.push(Clause::Link {
                            lits: [Lit::pos(ab), Lit::pos(t)],
                            elements: vec![(*a).clone(), (*b).clone()],
                        }),
                        Some(_) => {}
                        None => skipped += 1,
                    }
                }
            }
            for (i, a) in nonid.iter().enumerate() {
                for (j, b) in nonid.iter().enumerate().skip(i + 1) {
                    for c in nonid.iter().skip(j + 1) {
                        let x = group.multiply(&inv[i], b)?;
                        let y = group.multiply(&inv[i], c)?;
                        let Some(xy) = v(&x, &y) else {
                            skipped += 1;
                            continue;
                        };
                        clauses.push(Clause::Cocycle {
                            lits: [
                                Lit::pos(xy),
                                Lit::neg(v(b, c).expect("in ball")),
                                Lit::pos(v(a, c).expect("in ball")),
                                Lit::neg(v(a, b).expect("in ball")),
                            ],
                            elements: [(*a).clone(), (*b).clone(), (*c).clone()],
                        });
                    }
                }
            }
        }
        Mode::Lo => {
            let mut var: HashMap<usize, usize> = HashMap::new();
            for (i, a) in nonid.iter().enumerate() {
                var.insert(index[a], i);
                triples.push([inv[i].clone(), e.clone(), (*a).clone()]);
            }
            let p = |a: &Element| -> Option<usize> { var.get(index.get(a)?).copied() };
            for (i, a) in nonid.iter().enumerate() {
                match p(&inv[i]) {
                    Some(t) if t >= i => clauses.push(Clause::Link {
                        lits: [Lit::pos(i), Lit::neg(t)],
                        elements: vec![(*a).clone()],
                    }),
                    Some(_) => {}
                    None => skipped += 1,
                }
            }
            for (i, a) in nonid.iter().enumerate() {
                for (j, b) in nonid.iter().enumerate() {
                    let ab = group.multiply(a, b)?;
                    if ab == e {
                        continue;
                    }
                    match p(&ab) {
                        Some(t) => clauses.push(Clause::Cone {
                            lits: [Lit::neg(i), Lit::neg(j), Lit::pos(t)],
                            elements: [(*a).clone(), (*b).clone()],
                        }),
                        None => skipped += 1,
                    }
                }
            }
        }
    }
    Ok(ConstraintInstance {
        group: group.clone(),
        radius,
        mode,
        ball,
        triples,
        clauses,
        skipped,
        notes,
    })
}
