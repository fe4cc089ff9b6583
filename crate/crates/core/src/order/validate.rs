use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{CircularOrder, OrderTable};
use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

/// At most this many violations are stored; the total is always counted.
const MAX_STORED: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    /// A degenerate triple with nonzero value or a distinct triple with value 0.
    DV,
    /// The cocycle identity fails on a quadruple.
    C,
    /// Left translation changes a value.
    H,
    /// Cyclic rotation of a triple changes its value.
    IC,
    /// Swapping the last two entries does not negate the value.
    AT,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<Element>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub sample_size: usize,
    pub checked_triples: u64,
    pub checked_quadruples: u64,
    pub checked_homogeneity: u64,
    /// Homogeneity checks skipped because a translate left the sample.
    pub skipped_homogeneity: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violation_count == 0
    }

    fn push(&mut self, kind: ViolationKind, witness: Vec<Element>) {
        self.violation_count += 1;
        if self.violations.len() < MAX_STORED {
            self.violations.push(Violation { kind, witness });
        }
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Checks the circular-order axioms of `c` on every triple and quadruple
/// of `sample`, and homogeneity for translates staying inside it.
pub fn validate<C: CircularOrder + ?Sized>(
    c: &C,
    group: &GroupDescriptor,
    sample: &[Element],
) -> Result<ValidationReport> {
    let s = sample.len();
    let mut index = HashMap::with_capacity(s);
    for (i, x) in sample.iter().enumerate() {
        group.check(x)?;
        if index.insert(x.clone(), i).is_some() {
            return Err(Error::Precondition(format!(
                "{x} occurs twice in the sample"
            )));
        }
    }
    let table = c.tabulate(sample)?;
    let mut report = ValidationReport {
        sample_size: s,
        ..Default::default()
    };
    let w = |idx: &[usize]| idx.iter().map(|&i| sample[i].clone()).collect::<Vec<_>>();

    for i in 0..s {
        for j in 0..s {
            for k in 0..s {
                report.checked_triples += 1;
                let v = table.get(i, j, k);
                let degenerate = i == j || j == k || i == k;
                if degenerate != (v == 0) {
                    report.push(ViolationKind::DV, w(&[i, j, k]));
                }
                if degenerate {
                    continue;
                }
                if v != table.get(j, k, i) {
                    report.push(ViolationKind::IC, w(&[i, j, k]));
                }
                if v != -table.get(i, k, j) {
                    report.push(ViolationKind::AT, w(&[i, j, k]));
                }
            }
        }
    }

    check_cocycle(&table, &mut report, &w);

    // translate tables: trans[g][x] = index of g·x
    for (gi, g) in sample.iter().enumerate() {
        if group.is_identity(g) {
            continue;
        }
        let trans: Vec<Option<usize>> = sample
            .iter()
            .map(|x| Ok(index.get(&group.multiply(g, x)?).copied()))
            .collect::<Result<_>>()?;
        for i in 0..s {
            for j in i + 1..s {
                for k in j + 1..s {
                    let (Some(a), Some(b), Some(d)) = (trans[i], trans[j], trans[k]) else {
                        report.skipped_homogeneity += 1;
                        continue;
                    };
                    report.checked_homogeneity += 1;
                    if table.get(a, b, d) != table.get(i, j, k) {
                        report.push(ViolationKind::H, w(&[gi, i, j, k]));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The cocycle identity on increasing quadruples; the other orderings
/// follow from it together with the (IC)/(AT) checks.
fn check_cocycle(
    table: &OrderTable,
    report: &mut ValidationReport,
    w: &dyn Fn(&[usize]) -> Vec<Element>,
) {
    let s = table.len();
    for a in 0..s {
        for b in a + 1..s {
            let ab = |x: usize| table.get(a, b, x);
            for c in b + 1..s {
                let abc = table.get(a, b, c) as i32;
                for d in c + 1..s {
                    report.checked_quadruples += 1;
                    let sum =
                        table.get(b, c, d) as i32 - table.get(a, c, d) as i32 + ab(d) as i32 - abc;
                    if sum != 0 {
                        report.push(ViolationKind::C, w(&[a, b, c, d]));
                    }
                }
            }
        }
    }
}
