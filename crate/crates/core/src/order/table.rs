use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::OrderValue;
use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};

/// Circular order given by its values `c(e, a, b)` on canonical triples.
///
/// Other triples are reduced to canonical ones by left translation and the
/// symmetries `c(x,y,z) = c(y,z,x) = -c(x,z,y)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct ExplicitTable {
    group: GroupDescriptor,
    pairs: BTreeMap<(Element, Element), OrderValue>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    group: GroupDescriptor,
    /// `[a, b, c(e, a, b)]`
    pairs: Vec<(Element, Element, OrderValue)>,
}

impl TryFrom<TableRepr> for ExplicitTable {
    type Error = Error;
    fn try_from(r: TableRepr) -> Result<Self> {
        ExplicitTable::new(r.group, r.pairs.into_iter().map(|(a, b, v)| ((a, b), v)))
    }
}

impl From<ExplicitTable> for TableRepr {
    fn from(t: ExplicitTable) -> Self {
        TableRepr {
            group: t.group,
            pairs: t.pairs.into_iter().map(|((a, b), v)| (a, b, v)).collect(),
        }
    }
}

impl ExplicitTable {
    /// Builds a table, rejecting non-canonical keys and entries that
    /// contradict antisymmetry.
    pub fn new(
        group: GroupDescriptor,
        entries: impl IntoIterator<Item = ((Element, Element), OrderValue)>,
    ) -> Result<Self> {
        let mut pairs = BTreeMap::new();
        for ((a, b), v) in entries {
            group.check(&a)?;
            group.check(&b)?;
            if group.is_identity(&a)
                || group.is_identity(&b)
                || a == b
                || v == OrderValue::Degenerate
            {
                return Err(Error::InvalidOrder(format!(
                    "({a}, {b}) -> {v} is not a canonical entry"
                )));
            }
            if let Some(&w) = pairs.get(&(b.clone(), a.clone())) {
                if w != -v {
                    return Err(Error::InvalidOrder(format!(
                        "c(e,{a},{b}) and c(e,{b},{a}) agree"
                    )));
                }
            }
            pairs.insert((a, b), v);
        }
        Ok(ExplicitTable { group, pairs })
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Element, &Element, OrderValue)> {
        self.pairs.iter().map(|((a, b), v)| (a, b, *v))
    }

    /// Overwrites one stored value; no consistency check.
    pub fn set_unchecked(&mut self, a: Element, b: Element, v: OrderValue) {
        self.pairs.insert((a, b), v);
    }

    pub fn eval(&self, x: &Element, y: &Element, z: &Element) -> Result<OrderValue> {
        for e in [x, y, z] {
            self.group.check(e)?;
        }
        if x == y || y == z || x == z {
            return Ok(OrderValue::Degenerate);
        }
        // basepoints in cyclic order, then the transposed triple
        for (p, q, r, sign) in [
            (x, y, z, 1),
            (y, z, x, 1),
            (z, x, y, 1),
            (x, z, y, -1),
            (z, y, x, -1),
            (y, x, z, -1),
        ] {
            let a = self.group.left_divide(p, q)?;
            let b = self.group.left_divide(p, r)?;
            if let Some(&v) = self.pairs.get(&(a, b)) {
                return Ok(if sign > 0 { v } else { -v });
            }
        }
        Err(Error::Precondition(format!(
            "triple ({x}, {y}, {z}) is not covered by the table"
        )))
    }
}
