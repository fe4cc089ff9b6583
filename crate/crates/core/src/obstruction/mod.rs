//! Finite obstructions: the constraints an order must satisfy on a ball,
//! a small complete solver, and unsatisfiable certificates that can be
//! checked independently.

mod certificate;
mod instance;
mod solver;

use serde::{Deserialize, Serialize};

pub use certificate::{verify, verify_against, Certificate, VERIFY_LIMIT};
pub use instance::{build_instance, Clause, ConstraintInstance, Lit, Mode};
pub use solver::{all_solutions, solve_clauses, Outcome};

use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};
use crate::order::{ExplicitTable, OrderValue};

pub fn solve(inst: &ConstraintInstance) -> Outcome {
    solve_clauses(inst.num_vars(), &inst.clauses)
}

fn unsat_core(inst: &ConstraintInstance, keep: &[usize]) -> Option<Vec<usize>> {
    let (triples, clauses) = inst.restrict(keep);
    match solve_clauses(triples.len(), &clauses) {
        Outcome::Sat(_) => None,
        Outcome::Unsat(core) => Some(core.into_iter().map(|i| keep[i]).collect()),
    }
}

/// Shrinks an unsatisfiable set of clause indices until dropping any single
/// clause makes it satisfiable.
pub fn minimize_certificate(inst: &ConstraintInstance, core: &[usize]) -> Result<Certificate> {
    let mut keep = unsat_core(inst, core).ok_or(Error::NotUnsat)?;
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        match unsat_core(inst, &trial) {
            Some(smaller) => {
                // the solver's core can only be smaller; restart the scan
                // at the same position of the shrunk list
                let pos = smaller.iter().filter(|&&c| c < keep[i]).count();
                keep = smaller;
                i = pos;
            }
            None => i += 1,
        }
    }
    let (triples, clauses) = inst.restrict(&keep);
    Ok(Certificate {
        mode: inst.mode,
        group_sha: inst.group.fingerprint(),
        radius: inst.radius,
        triples,
        clauses,
        minimized: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// No order exists.
    No { certificate: Certificate },
    /// Every ball up to `radius` admits a consistent assignment; that is
    /// not evidence that an order exists.
    InconclusiveSatUpTo {
        radius: usize,
        assignment: Vec<([Element; 3], OrderValue)>,
    },
}

/// Tries balls of radius `1..=max_radius` and stops at the first
/// unsatisfiable one. `trace` receives one line per radius.
pub fn search(
    group: &GroupDescriptor,
    max_radius: usize,
    mode: Mode,
    mut trace: impl FnMut(&str),
) -> Result<SearchOutcome> {
    if max_radius == 0 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    let mut last = Vec::new();
    for r in 1..=max_radius {
        let inst = build_instance(group, r, mode)?;
        match solve(&inst) {
            Outcome::Unsat(core) => {
                trace(&format!(
                    "radius {r}: {} variables, {} clauses, unsat core of {}",
                    inst.num_vars(),
                    inst.clauses.len(),
                    core.len()
                ));
                let certificate = minimize_certificate(&inst, &core)?;
                trace(&format!(
                    "minimized to {} clauses",
                    certificate.clauses.len()
                ));
                return Ok(SearchOutcome::No { certificate });
            }
            Outcome::Sat(a) => {
                trace(&format!(
                    "radius {r}: {} variables, {} clauses, satisfiable",
                    inst.num_vars(),
                    inst.clauses.len()
                ));
                last = inst
                    .triples
                    .iter()
                    .cloned()
                    .zip(a.into_iter().map(OrderValue::from_sign))
                    .collect();
            }
        }
    }
    Ok(SearchOutcome::InconclusiveSatUpTo {
        radius: max_radius,
        assignment: last,
    })
}

/// Every circular order on a finite group, as explicit tables, in the
/// solver's deterministic order.
pub fn enumerate_orders(group: &GroupDescriptor) -> Result<Vec<ExplicitTable>> {
    let order = group.finite_order().ok_or_else(|| {
        Error::Unsupported(format!("enumerating orders of the infinite group {group}"))
    })?;
    let layers = group.ball_layers(order as usize);
    let covered: usize = layers.iter().map(Vec::len).sum();
    if covered as u64 != order {
        return Err(Error::InvalidGroup(
            "generators do not reach every element".into(),
        ));
    }
    let inst = build_instance(group, (layers.len() - 1).max(1), Mode::Co)?;
    all_solutions(inst.num_vars(), &inst.clauses)
        .into_iter()
        .map(|a| {
            ExplicitTable::new(
                group.clone(),
                inst.triples
                    .iter()
                    .zip(a)
                    .map(|(t, v)| ((t[1].clone(), t[2].clone()), OrderValue::from_sign(v))),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteTable;

    #[test]
    fn klein_has_no_circular_order() {
        let g = GroupDescriptor::FiniteTable(FiniteTable::klein_four());
        let SearchOutcome::No { certificate } = search(&g, 2, Mode::Co, |_| {}).unwrap() else {
            panic!("expected a certificate")
        };
        verify(&certificate).unwrap();
        verify_against(&certificate, &g).unwrap();
        assert!(certificate.minimized);
    }

    #[test]
    fn z2_has_no_linear_order() {
        let g = GroupDescriptor::cyclic_table(2);
        let SearchOutcome::No { certificate } = search(&g, 1, Mode::Lo, |_| {}).unwrap() else {
            panic!("expected a certificate")
        };
        assert_eq!(certificate.clauses.len(), 1);
        verify(&certificate).unwrap();
        verify_against(&certificate, &g).unwrap();
    }

    #[test]
    fn satisfiable_certificate_is_rejected() {
        let g = GroupDescriptor::cyclic_table(5);
        let inst = build_instance(&g, 1, Mode::Co).unwrap();
        let all: Vec<usize> = (0..inst.clauses.len()).collect();
        assert!(matches!(
            minimize_certificate(&inst, &all),
            Err(Error::NotUnsat)
        ));
        let (triples, clauses) = inst.restrict(&all);
        let cert = Certificate {
            mode: Mode::Co,
            group_sha: g.fingerprint(),
            radius: 1,
            triples,
            clauses,
            minimized: false,
        };
        assert!(matches!(verify(&cert), Err(Error::NotUnsat)));
    }

    #[test]
    fn cyclic_counts() {
        for (m, phi) in [(3, 2), (4, 2), (5, 4), (6, 2)] {
            assert_eq!(
                enumerate_orders(&GroupDescriptor::cyclic_table(m))
                    .unwrap()
                    .len(),
                phi,
                "m = {m}"
            );
        }
    }
}
