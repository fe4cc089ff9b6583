use serde::{Deserialize, Serialize};

use super::instance::{Clause, Mode};
use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

/// A finite unsatisfiable clause set over order values on a ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub mode: Mode,
    pub group_sha: String,
    pub radius: usize,
    /// Variable `i` is the order value on `triples[i]`.
    pub triples: Vec<[Element; 3]>,
    pub clauses: Vec<Clause>,
    pub minimized: bool,
}

/// Largest number of free choices [`verify`] will enumerate.
pub const VERIFY_LIMIT: usize = 26;

/// Checks that the clauses admit no `±1` assignment by enumerating the
/// assignments. Links are applied first to cut the search down to one
/// choice per class.
pub fn verify(cert: &Certificate) -> Result<()> {
    let n = cert.triples.len();
    for c in &cert.clauses {
        if let Some(l) = c.lits().iter().find(|l| l.var >= n) {
            return Err(Error::Parse(format!(
                "literal refers to variable {} of {n}",
                l.var + 1
            )));
        }
    }
    // representative and sign of each variable, by repeated relabelling
    let mut rep: Vec<(usize, i8)> = (0..n).map(|v| (v, 1)).collect();
    let resolve = |rep: &Vec<(usize, i8)>, mut v: usize| -> (usize, i8) {
        let mut s = 1;
        while rep[v].0 != v {
            s *= rep[v].1;
            v = rep[v].0;
        }
        (v, s)
    };
    for c in &cert.clauses {
        if let Clause::Link { lits, .. } = c {
            let (ra, sa) = resolve(&rep, lits[0].var);
            let (rb, sb) = resolve(&rep, lits[1].var);
            let sa = if lits[0].positive { sa } else { -sa };
            let sb = if lits[1].positive { sb } else { -sb };
            if ra == rb {
                if sa != sb {
                    return Ok(());
                }
                continue;
            }
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            rep[hi] = (lo, sa * sb);
        }
    }
    let free: Vec<usize> = (0..n).filter(|&v| rep[v].0 == v).collect();
    if free.len() > VERIFY_LIMIT {
        return Err(Error::Unsupported(format!(
            "{} independent variables; at most {VERIFY_LIMIT} can be enumerated",
            free.len()
        )));
    }
    let paths: Vec<(usize, i8)> = (0..n).map(|v| resolve(&rep, v)).collect();
    let slot: std::collections::HashMap<usize, usize> =
        free.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut assignment = vec![0i8; n];
    for mask in 0u64..1 << free.len() {
        for v in 0..n {
            let (r, s) = paths[v];
            let bit = mask >> slot[&r] & 1;
            assignment[v] = if bit == 0 { s } else { -s };
        }
        if cert.clauses.iter().all(|c| c.is_satisfied(&assignment)) {
            return Err(Error::NotUnsat);
        }
    }
    Ok(())
}

/// Checks that the certificate belongs to `group` and that every clause is
/// the constraint its recorded elements produce.
pub fn verify_against(cert: &Certificate, group: &GroupDescriptor) -> Result<()> {
    if cert.group_sha != group.fingerprint() {
        return Err(Error::Precondition(
            "certificate was issued for a different group".into(),
        ));
    }
    let e = group.identity();
    let triple = |i: usize| -> Result<&[Element; 3]> {
        cert.triples
            .get(i)
            .ok_or_else(|| Error::Parse(format!("variable {} out of range", i + 1)))
    };
    let expect = |lit: &super::Lit, want: [Element; 3], positive: bool| -> Result<()> {
        if *triple(lit.var)? != want || lit.positive != positive {
            return Err(Error::InvalidOrder(format!(
                "literal {} does not match the triple ({}, {}, {})",
                serde_json::to_string(lit).expect("serializes"),
                want[0],
                want[1],
                want[2]
            )));
        }
        Ok(())
    };
    let var_triple = |a: &Element, b: &Element| [e.clone(), a.clone(), b.clone()];
    let p = |a: &Element| -> Result<[Element; 3]> { Ok([group.inverse(a)?, e.clone(), a.clone()]) };
    for (i, t) in cert.triples.iter().enumerate() {
        for x in t {
            group.check(x)?;
        }
        let ok = match cert.mode {
            Mode::Co => t[0] == e && t[1] != e && t[2] != e && t[1] != t[2],
            Mode::Lo => t[1] == e && t[2] != e && t[0] == group.inverse(&t[2])?,
        };
        if !ok {
            return Err(Error::Parse(format!(
                "variable {} is not a valid triple",
                i + 1
            )));
        }
    }
    for c in &cert.clauses {
        match (cert.mode, c) {
            (Mode::Co, Clause::Link { lits, elements }) if elements.len() == 2 => {
                let (a, b) = (&elements[0], &elements[1]);
                expect(&lits[0], var_triple(a, b), true)?;
                if lits[1].positive {
                    let ai = group.inverse(a)?;
                    expect(&lits[1], var_triple(&group.multiply(&ai, b)?, &ai), true)?;
                } else {
                    expect(&lits[1], var_triple(b, a), false)?;
                }
            }
            (
                Mode::Co,
                Clause::Cocycle {
                    lits,
                    elements: [a, b, c],
                },
            ) => {
                let ai = group.inverse(a)?;
                expect(
                    &lits[0],
                    var_triple(&group.multiply(&ai, b)?, &group.multiply(&ai, c)?),
                    true,
                )?;
                expect(&lits[1], var_triple(b, c), false)?;
                expect(&lits[2], var_triple(a, c), true)?;
                expect(&lits[3], var_triple(a, b), false)?;
            }
            (Mode::Lo, Clause::Link { lits, elements }) if elements.len() == 1 => {
                let a = &elements[0];
                expect(&lits[0], p(a)?, true)?;
                expect(&lits[1], p(&group.inverse(a)?)?, false)?;
            }
            (
                Mode::Lo,
                Clause::Cone {
                    lits,
                    elements: [a, b],
                },
            ) => {
                expect(&lits[0], p(a)?, false)?;
                expect(&lits[1], p(b)?, false)?;
                expect(&lits[2], p(&group.multiply(a, b)?)?, true)?;
            }
            _ => {
                return Err(Error::Parse(format!(
                    "clause {c:?} does not fit mode {:?}",
                    cert.mode
                )))
            }
        }
    }
    Ok(())
}
