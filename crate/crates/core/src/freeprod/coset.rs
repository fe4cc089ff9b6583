use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::Element;
use crate::order::{orientation_by, CircularOrder, CircularOrderSpec, LinearOrderSpec, OrderValue};

type CosetFn<'a> = Box<dyn Fn(&Element) -> Result<usize> + 'a>;
type CoordFn<'a> = Box<dyn Fn(&Element) -> Result<Element> + 'a>;

/// A circular order on a group acting on a finite set of cosets of a
/// stabilizer `K`: cosets are ordered by `orbit`, points of one coset by
/// the linear order of `K` on their coordinates `k(x)` (so `x = r·k(x)`
/// for a fixed representative `r` of the coset).
pub struct CosetOrder<'a> {
    orbit: CircularOrderSpec,
    lin: LinearOrderSpec,
    coset_of: CosetFn<'a>,
    k_coord: CoordFn<'a>,
}

/// Builds the order from an order on the coset indices (`Element::index`),
/// a linear order on the stabilizer and the two coset maps.
pub fn coset_intertwine<'a>(
    orbit: CircularOrderSpec,
    lin: LinearOrderSpec,
    coset_of: impl Fn(&Element) -> Result<usize> + 'a,
    k_coord: impl Fn(&Element) -> Result<Element> + 'a,
) -> CosetOrder<'a> {
    CosetOrder {
        orbit,
        lin,
        coset_of: Box::new(coset_of),
        k_coord: Box::new(k_coord),
    }
}

impl CosetOrder<'_> {
    /// Checks on `sample` that distinct elements of one coset have distinct
    /// stabilizer coordinates.
    pub fn check_on(&self, sample: &[Element]) -> Result<()> {
        let mut seen: HashMap<(usize, Element), &Element> = HashMap::new();
        for x in sample {
            let key = ((self.coset_of)(x)?, (self.k_coord)(x)?);
            if let Some(prev) = seen.insert(key, x) {
                if prev != x {
                    return Err(Error::InvalidOrder(format!(
                        "{prev} and {x} share a coset and a stabilizer coordinate"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl CircularOrder for CosetOrder<'_> {
    fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        if a == b || b == c || a == c {
            return Ok(OrderValue::Degenerate);
        }
        let (sa, sb, sc) = (
            (self.coset_of)(a)?,
            (self.coset_of)(b)?,
            (self.coset_of)(c)?,
        );
        let less = |x: &Element, y: &Element| -> Result<OrderValue> {
            let o = self.lin.compare(&(self.k_coord)(x)?, &(self.k_coord)(y)?)?;
            match o {
                Ordering::Less => Ok(OrderValue::Positive),
                Ordering::Greater => Ok(OrderValue::Negative),
                Ordering::Equal => Err(Error::InvalidOrder(format!(
                    "{x} and {y} share a coset and a stabilizer coordinate"
                ))),
            }
        };
        match (sa == sb, sb == sc, sa == sc) {
            (false, false, false) => self.orbit.eval(
                &Element::index(sa),
                &Element::index(sb),
                &Element::index(sc),
            ),
            (true, true, _) => {
                let ks = [(self.k_coord)(a)?, (self.k_coord)(b)?, (self.k_coord)(c)?];
                let mut err = None;
                let v = orientation_by(&ks[0], &ks[1], &ks[2], |x, y| {
                    self.lin.compare(x, y).unwrap_or_else(|e| {
                        err.get_or_insert(e);
                        Ordering::Equal
                    })
                });
                err.map_or(Ok(v), Err)
            }
            (true, false, _) => less(a, b),
            (false, true, _) => less(b, c),
            (false, false, true) => less(c, a),
        }
    }
}
