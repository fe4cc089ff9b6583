//! Circular orders as homogeneous 2-cocycles `G³ → {-1, 0, +1}`.
//!
//! The cocycle form is canonical; cut orders at a basepoint are a derived
//! view (see [`cuts`]). Every closed-form family implements
//! [`CircularOrder`]; axiom checks run on finite samples only.

mod aut;
mod compare;
pub mod cuts;
mod linear;
mod spec;
mod table;
mod validate;

use std::cmp::Ordering;
use std::ops::Neg;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use aut::{aut_act, Automorphism, Transformed};
pub use compare::{
    agreement, bi_invariance_check, is_linear_on, Agreement, BiInvariance, Linearity,
};
pub use cuts::{cocycle_from_cuts, cut_order_at, cuts_on, Cut, CutOrder};
pub(crate) use linear::rational_dependency;
pub use linear::LinearOrderSpec;
#[cfg(test)]
pub(crate) use spec::default_tabulate;
pub use spec::{CircularOrderSpec, FiniteRotation};
pub use table::ExplicitTable;
pub use validate::{validate, ValidationReport, Violation, ViolationKind};

use crate::error::Result;
use crate::group::Element;

/// Value of a circular order on a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderValue {
    Negative,
    Degenerate,
    Positive,
}

impl OrderValue {
    pub fn from_sign(s: i8) -> Self {
        match s.signum() {
            1 => OrderValue::Positive,
            -1 => OrderValue::Negative,
            _ => OrderValue::Degenerate,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            OrderValue::Negative => -1,
            OrderValue::Degenerate => 0,
            OrderValue::Positive => 1,
        }
    }

    pub fn is_positive(self) -> bool {
        self == OrderValue::Positive
    }
}

impl Neg for OrderValue {
    type Output = OrderValue;
    fn neg(self) -> OrderValue {
        OrderValue::from_sign(-self.as_i8())
    }
}

impl std::fmt::Display for OrderValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderValue::Negative => write!(f, "-1"),
            OrderValue::Degenerate => write!(f, "0"),
            OrderValue::Positive => write!(f, "+1"),
        }
    }
}

impl Serialize for OrderValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for OrderValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i8::deserialize(d)? {
            -1 => Ok(OrderValue::Negative),
            0 => Ok(OrderValue::Degenerate),
            1 => Ok(OrderValue::Positive),
            other => Err(serde::de::Error::custom(format!(
                "order value {other} not in {{-1,0,1}}"
            ))),
        }
    }
}

/// Circular orientation of three points of a linearly ordered set: `+1`
/// on cyclic rotations of `a < b < c`, `-1` on cyclic rotations of
/// `a < c < b`, `0` when two coincide.
pub fn orientation<P: Ord + ?Sized>(a: &P, b: &P, c: &P) -> OrderValue {
    orientation_by(a, b, c, |x, y| x.cmp(y))
}

pub fn orientation_by<P: ?Sized>(
    a: &P,
    b: &P,
    c: &P,
    mut cmp: impl FnMut(&P, &P) -> Ordering,
) -> OrderValue {
    let ab = cmp(a, b);
    let bc = cmp(b, c);
    let ca = cmp(c, a);
    if ab == Ordering::Equal || bc == Ordering::Equal || ca == Ordering::Equal {
        return OrderValue::Degenerate;
    }
    // exactly one of the three cyclic steps descends for a positive triple
    let descents = [ab, bc, ca]
        .iter()
        .filter(|&&o| o == Ordering::Greater)
        .count();
    if descents == 1 {
        OrderValue::Positive
    } else {
        OrderValue::Negative
    }
}

/// A left-invariant circular order, evaluable on any triple of its group.
pub trait CircularOrder {
    fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue>;

    /// Values on every ordered triple of `sample`. Implementations may
    /// share per-element work across triples.
    fn tabulate(&self, sample: &[Element]) -> Result<OrderTable> {
        let n = sample.len();
        let mut values = Vec::with_capacity(n * n * n);
        for a in sample {
            for b in sample {
                for c in sample {
                    values.push(self.eval(a, b, c)?.as_i8());
                }
            }
        }
        Ok(OrderTable { n, values })
    }
}

impl<T: CircularOrder + ?Sized> CircularOrder for &T {
    fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        (**self).eval(a, b, c)
    }
    fn tabulate(&self, sample: &[Element]) -> Result<OrderTable> {
        (**self).tabulate(sample)
    }
}

impl<T: CircularOrder + ?Sized> CircularOrder for Box<T> {
    fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        (**self).eval(a, b, c)
    }
    fn tabulate(&self, sample: &[Element]) -> Result<OrderTable> {
        (**self).tabulate(sample)
    }
}

/// Dense table of order values over a sample, indexed by sample positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderTable {
    n: usize,
    values: Vec<i8>,
}

impl OrderTable {
    /// Table induced by a ranking of the sample along the circle.
    pub fn from_ranks(ranks: &[usize]) -> Self {
        let n = ranks.len();
        let mut values = Vec::with_capacity(n * n * n);
        for a in ranks {
            for b in ranks {
                for c in ranks {
                    values.push(orientation(a, b, c).as_i8());
                }
            }
        }
        OrderTable { n, values }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        self.values[(i * self.n + j) * self.n + k]
    }
}

/// Dense ranks of `keys` under a total order (equal keys share a rank).
pub(crate) fn ranks_by<K>(keys: &[K], mut cmp: impl FnMut(&K, &K) -> Ordering) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| cmp(&keys[a], &keys[b]));
    let mut ranks = vec![0; keys.len()];
    let mut r = 0;
    for w in 0..idx.len() {
        if w > 0 && cmp(&keys[idx[w - 1]], &keys[idx[w]]) != Ordering::Equal {
            r += 1;
        }
        ranks[idx[w]] = r;
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_of_points() {
        assert_eq!(orientation(&0, &1, &2), OrderValue::Positive);
        assert_eq!(orientation(&1, &2, &0), OrderValue::Positive);
        assert_eq!(orientation(&2, &0, &1), OrderValue::Positive);
        assert_eq!(orientation(&0, &2, &1), OrderValue::Negative);
        assert_eq!(orientation(&1, &1, &2), OrderValue::Degenerate);
    }

    #[test]
    fn order_value_json() {
        assert_eq!(serde_json::to_string(&OrderValue::Negative).unwrap(), "-1");
        assert!(serde_json::from_str::<OrderValue>("2").is_err());
        assert_eq!(-OrderValue::Positive, OrderValue::Negative);
    }

    #[test]
    fn ranks_share_ties() {
        assert_eq!(ranks_by(&[5, 1, 5, 3], |a, b| a.cmp(b)), vec![2, 0, 2, 1]);
    }
}
