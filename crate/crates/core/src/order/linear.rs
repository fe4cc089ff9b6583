use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::group::{Element, GroupDescriptor};
use crate::lattice;
use crate::AlgebraicReal;

/// A left-invariant linear order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", try_from = "LinearRepr")]
pub enum LinearOrderSpec {
    /// `a < b` on `Z^r` iff `(b - a)·x > 0`; the `x_i` are linearly
    /// independent over Q.
    Translation { x: Vec<AlgebraicReal> },
    /// Lexicographic on `Z^rank`, coordinate `i` read in direction `signs[i]`.
    Lexicographic { rank: usize, signs: Vec<i8> },
    /// Positive cone given by a finite membership table. Comparisons are
    /// defined when `a⁻¹b` lies in the cone, its inverse, or is trivial.
    InducedCone {
        group: GroupDescriptor,
        positive: BTreeSet<Element>,
    },
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum LinearRepr {
    Translation {
        x: Vec<AlgebraicReal>,
    },
    Lexicographic {
        rank: usize,
        signs: Vec<i8>,
    },
    InducedCone {
        group: GroupDescriptor,
        positive: BTreeSet<Element>,
    },
}

impl TryFrom<LinearRepr> for LinearOrderSpec {
    type Error = Error;
    fn try_from(r: LinearRepr) -> Result<Self> {
        match r {
            LinearRepr::Translation { x } => LinearOrderSpec::translation(x),
            LinearRepr::Lexicographic { rank, signs } => {
                LinearOrderSpec::lexicographic(rank, signs)
            }
            LinearRepr::InducedCone { group, positive } => {
                LinearOrderSpec::induced_cone(group, positive)
            }
        }
    }
}

impl LinearOrderSpec {
    pub fn translation(x: Vec<AlgebraicReal>) -> Result<Self> {
        if let Some(dep) = rational_dependency(&x) {
            return Err(Error::InvalidOrder(format!(
                "translation lengths are rationally dependent: coefficients {}",
                dep.iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        Ok(LinearOrderSpec::Translation { x })
    }

    pub fn lexicographic(rank: usize, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != rank || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidOrder(format!(
                "lexicographic order needs {rank} signs in {{-1, 1}}"
            )));
        }
        Ok(LinearOrderSpec::Lexicographic { rank, signs })
    }

    /// The usual order on `Z^rank`, first coordinate most significant.
    pub fn standard(rank: usize) -> Self {
        LinearOrderSpec::Lexicographic {
            rank,
            signs: vec![1; rank],
        }
    }

    pub fn induced_cone(group: GroupDescriptor, positive: BTreeSet<Element>) -> Result<Self> {
        for g in &positive {
            group.check(g)?;
            if group.is_identity(g) {
                return Err(Error::InvalidOrder(
                    "positive cone contains the identity".into(),
                ));
            }
            if positive.contains(&group.inverse(g)?) {
                return Err(Error::InvalidOrder(format!(
                    "{g} and its inverse are both positive"
                )));
            }
        }
        Ok(LinearOrderSpec::InducedCone { group, positive })
    }

    /// Rank of the free abelian group the order lives on, if any.
    pub fn rank(&self) -> Option<usize> {
        match self {
            LinearOrderSpec::Translation { x } => Some(x.len()),
            LinearOrderSpec::Lexicographic { rank, .. } => Some(*rank),
            LinearOrderSpec::InducedCone { .. } => None,
        }
    }

    pub fn group(&self) -> GroupDescriptor {
        match self {
            LinearOrderSpec::InducedCone { group, .. } => group.clone(),
            _ => GroupDescriptor::lattice(self.rank().unwrap_or(0)),
        }
    }

    /// Sign of `v` for the order on `Z^r`: positive iff `0 < v`.
    pub fn sign_of_vector(&self, v: &[i64]) -> Result<Ordering> {
        match self {
            LinearOrderSpec::Translation { x } => {
                if v.len() != x.len() {
                    return Err(mismatch(&Element::vector(v), &self.group()));
                }
                let mut s = AlgebraicReal::zero();
                for (vi, xi) in v.iter().zip(x) {
                    if *vi != 0 {
                        s = s + xi.scale_int(*vi);
                    }
                }
                Ok(s.signum().cmp(&0))
            }
            LinearOrderSpec::Lexicographic { signs, .. } => {
                if v.len() != signs.len() {
                    return Err(mismatch(&Element::vector(v), &self.group()));
                }
                Ok(v.iter()
                    .zip(signs)
                    .find(|(vi, _)| **vi != 0)
                    .map(|(vi, s)| (vi.signum() * *s as i64).cmp(&0))
                    .unwrap_or(Ordering::Equal))
            }
            LinearOrderSpec::InducedCone { .. } => Err(Error::Unsupported(
                "vector comparison on a cone given by a table".into(),
            )),
        }
    }

    /// `a.cmp(b)` in this order.
    pub fn compare(&self, a: &Element, b: &Element) -> Result<Ordering> {
        match self {
            LinearOrderSpec::InducedCone { group, positive } => {
                let d = group.left_divide(a, b)?;
                if group.is_identity(&d) {
                    Ok(Ordering::Equal)
                } else if positive.contains(&d) {
                    Ok(Ordering::Less)
                } else if positive.contains(&group.inverse(&d)?) {
                    Ok(Ordering::Greater)
                } else {
                    Err(Error::Precondition(format!(
                        "{d} is outside the cone table"
                    )))
                }
            }
            _ => {
                let (va, vb) = match (a, b) {
                    (Element::Abelian { vec: va, t: ta }, Element::Abelian { vec: vb, t: tb })
                        if ta.is_empty() && tb.is_empty() =>
                    {
                        (va, vb)
                    }
                    (Element::Abelian { .. }, _) => return Err(mismatch(b, &self.group())),
                    _ => return Err(mismatch(a, &self.group())),
                };
                if va.len() != vb.len() {
                    return Err(mismatch(b, &self.group()));
                }
                let d: Vec<i64> = vb.iter().zip(va).map(|(y, x)| y - x).collect();
                Ok(self.sign_of_vector(&d)?.reverse())
            }
        }
    }

    pub fn is_positive(&self, g: &Element) -> Result<bool> {
        let e = self.group().identity();
        Ok(self.compare(&e, g)? == Ordering::Less)
    }
}

/// A nonzero rational vector `q` with `Σ q_i·x_i = 0`, if one exists.
pub(crate) fn rational_dependency(x: &[AlgebraicReal]) -> Option<Vec<BigRational>> {
    let keys: BTreeSet<u64> = x
        .iter()
        .flat_map(|xi| xi.radicands().collect::<Vec<_>>())
        .collect();
    let keys: Vec<u64> = keys.into_iter().collect();
    // columns are the x_i, rows the radicands
    let m: Vec<Vec<BigRational>> = keys
        .iter()
        .map(|&d| x.iter().map(|xi| xi.coefficient(d)).collect())
        .collect();
    let mut v = lattice::nullspace::<BigInt>(&m, x.len())
        .into_iter()
        .next()?;
    // first nonzero coefficient positive
    if v.iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
    {
        v.iter_mut().for_each(|c| *c = -c.clone());
    }
    Some(v)
}
