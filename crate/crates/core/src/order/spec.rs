use std::cmp::Ordering;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{
    orientation, orientation_by, ranks_by, CircularOrder, ExplicitTable, LinearOrderSpec,
    OrderTable, OrderValue, Transformed,
};
use crate::abelian::{BlowdownData, RotationParams};
use crate::error::{mismatch, Error, Result};
use crate::freeprod::LexOrder;
use crate::group::{Element, GroupDescriptor};
use crate::realization::RealizationMap;

/// Closed-form description of a circular order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CircularOrderSpec {
    Rotation(RotationParams),
    /// The order `c_<` induced by a linear order.
    LinearWrap {
        lin: LinearOrderSpec,
    },
    Intertwined(Box<BlowdownData>),
    LexFreeProduct(Box<LexOrder>),
    FiniteRotation(FiniteRotation),
    ExplicitTable(ExplicitTable),
    PointRecovered(RealizationMap),
    /// An order pulled back along an automorphism.
    Transformed(Box<Transformed>),
}

/// The rotation order on `Z/m` sending the residue `r` to `r·k/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FiniteRotationRepr")]
pub struct FiniteRotation {
    m: u64,
    k: u64,
}

#[derive(Deserialize)]
struct FiniteRotationRepr {
    m: u64,
    k: u64,
}

impl TryFrom<FiniteRotationRepr> for FiniteRotation {
    type Error = Error;
    fn try_from(r: FiniteRotationRepr) -> Result<Self> {
        FiniteRotation::new(r.m, r.k)
    }
}

impl FiniteRotation {
    pub fn new(m: u64, k: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder("finite rotation needs m ≥ 1".into()));
        }
        if k >= m || k.gcd(&m) != 1 {
            return Err(Error::NotCoprime { k, m });
        }
        Ok(FiniteRotation { m, k })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    fn residue(&self, a: &Element) -> Result<u64> {
        let r = match a {
            Element::Index { idx } => *idx as u64,
            Element::Abelian { vec, t } if vec.is_empty() => match t.as_slice() {
                [] => 0,
                [r] => *r,
                _ => return Err(mismatch(a, &self.group())),
            },
            _ => return Err(mismatch(a, &self.group())),
        };
        if r >= self.m {
            return Err(mismatch(a, &self.group()));
        }
        Ok(r)
    }

    /// Numerator of the position `r·k/m` on the circle.
    pub fn position(&self, a: &Element) -> Result<u64> {
        Ok((self.residue(a)? as u128 * self.k as u128 % self.m as u128) as u64)
    }

    pub fn group(&self) -> GroupDescriptor {
        GroupDescriptor::abelian(0, self.m)
    }
}

impl From<FiniteRotation> for CircularOrderSpec {
    fn from(f: FiniteRotation) -> Self {
        CircularOrderSpec::FiniteRotation(f)
    }
}

impl From<RotationParams> for CircularOrderSpec {
    fn from(p: RotationParams) -> Self {
        CircularOrderSpec::Rotation(p)
    }
}

impl CircularOrderSpec {
    pub fn finite_rotation(m: u64, k: u64) -> Result<Self> {
        Ok(FiniteRotation::new(m, k)?.into())
    }

    pub fn linear_wrap(lin: LinearOrderSpec) -> Self {
        CircularOrderSpec::LinearWrap { lin }
    }

    /// The group the order is defined on, when the spec determines it.
    pub fn group(&self) -> Option<GroupDescriptor> {
        match self {
            CircularOrderSpec::Rotation(p) => Some(p.group()),
            CircularOrderSpec::LinearWrap { lin } => Some(lin.group()),
            CircularOrderSpec::Intertwined(d) => Some(d.group()),
            CircularOrderSpec::LexFreeProduct(l) => Some(l.group()),
            CircularOrderSpec::FiniteRotation(f) => Some(f.group()),
            CircularOrderSpec::ExplicitTable(t) => Some(t.group().clone()),
            CircularOrderSpec::PointRecovered(_) => None,
            CircularOrderSpec::Transformed(t) => t.inner().group(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CircularOrderSpec::Rotation(_) => "rotation",
            CircularOrderSpec::LinearWrap { .. } => "linear_wrap",
            CircularOrderSpec::Intertwined(_) => "intertwined",
            CircularOrderSpec::LexFreeProduct(_) => "lex_free_product",
            CircularOrderSpec::FiniteRotation(_) => "finite_rotation",
            CircularOrderSpec::ExplicitTable(_) => "explicit_table",
            CircularOrderSpec::PointRecovered(_) => "point_recovered",
            CircularOrderSpec::Transformed(_) => "transformed",
        }
    }
}

impl CircularOrder for CircularOrderSpec {
    fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        match self {
            CircularOrderSpec::Rotation(p) => p.eval(a, b, c),
            CircularOrderSpec::LinearWrap { lin } => {
                // validate membership before short-circuiting on equal entries
                lin.compare(a, a)?;
                let mut err = None;
                let v = orientation_by(a, b, c, |x, y| {
                    lin.compare(x, y).unwrap_or_else(|e| {
                        err.get_or_insert(e);
                        Ordering::Equal
                    })
                });
                match err {
                    Some(e) => Err(e),
                    None => Ok(v),
                }
            }
            CircularOrderSpec::Intertwined(d) => d.eval(a, b, c),
            CircularOrderSpec::LexFreeProduct(l) => l.eval(a, b, c),
            CircularOrderSpec::FiniteRotation(f) => Ok(orientation(
                &f.position(a)?,
                &f.position(b)?,
                &f.position(c)?,
            )),
            CircularOrderSpec::ExplicitTable(t) => t.eval(a, b, c),
            CircularOrderSpec::PointRecovered(m) => m.eval(a, b, c),
            CircularOrderSpec::Transformed(t) => t.eval(a, b, c),
        }
    }

    fn tabulate(&self, sample: &[Element]) -> Result<OrderTable> {
        match self {
            CircularOrderSpec::Rotation(p) => p.tabulate(sample),
            CircularOrderSpec::FiniteRotation(f) => {
                let pos = sample
                    .iter()
                    .map(|a| f.position(a))
                    .collect::<Result<Vec<_>>>()?;
                Ok(OrderTable::from_ranks(&ranks_by(&pos, |x, y| x.cmp(y))))
            }
            CircularOrderSpec::PointRecovered(m) => {
                let pos = sample
                    .iter()
                    .map(|a| m.position(a).cloned())
                    .collect::<Result<Vec<_>>>()?;
                Ok(OrderTable::from_ranks(&ranks_by(&pos, |x, y| x.cmp(y))))
            }
            CircularOrderSpec::LinearWrap { lin } if lin.rank().is_some() => {
                for a in sample {
                    lin.compare(a, a)?;
                }
                let mut err = None;
                let ranks = ranks_by(sample, |x, y| {
                    lin.compare(x, y).unwrap_or_else(|e| {
                        err.get_or_insert(e);
                        Ordering::Equal
                    })
                });
                match err {
                    Some(e) => Err(e),
                    None => Ok(OrderTable::from_ranks(&ranks)),
                }
            }
            CircularOrderSpec::Transformed(t) => {
                let pulled = sample
                    .iter()
                    .map(|a| t.inverse().apply(a))
                    .collect::<Result<Vec<_>>>()?;
                t.inner().tabulate(&pulled)
            }
            _ => default_tabulate(self, sample),
        }
    }
}

pub(crate) fn default_tabulate<C: CircularOrder + ?Sized>(
    c: &C,
    sample: &[Element],
) -> Result<OrderTable> {
    let n = sample.len();
    let mut values = Vec::with_capacity(n * n * n);
    for a in sample {
        for b in sample {
            for x in sample {
                values.push(c.eval(a, b, x)?.as_i8());
            }
        }
    }
    Ok(OrderTable { n, values })
}
