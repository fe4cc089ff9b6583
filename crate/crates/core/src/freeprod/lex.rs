use serde::{Deserialize, Serialize};

use super::reduce::{reduce_triple, TripleReductionTrace};
use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor, Side};
use crate::order::{CircularOrder, CircularOrderSpec, OrderValue};

/// The lexicographic circular order on `G * H` extending `c_G` and `c_H`
/// with `c(e, g, h) = +1` for nonidentity `g ∈ G`, `h ∈ H`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LexRepr", into = "LexRepr")]
pub struct LexOrder {
    group: GroupDescriptor,
    left: CircularOrderSpec,
    right: CircularOrderSpec,
}

#[derive(Serialize, Deserialize)]
struct LexRepr {
    group: GroupDescriptor,
    left: CircularOrderSpec,
    right: CircularOrderSpec,
}

impl TryFrom<LexRepr> for LexOrder {
    type Error = Error;

    fn try_from(r: LexRepr) -> Result<Self> {
        LexOrder::new(r.group, r.left, r.right)
    }
}

impl From<LexOrder> for LexRepr {
    fn from(l: LexOrder) -> Self {
        LexRepr {
            group: l.group,
            left: l.left,
            right: l.right,
        }
    }
}

/// Where an entry of a minimal triple lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    E,
    G,
    H,
}

impl LexOrder {
    pub fn new(
        group: GroupDescriptor,
        left: CircularOrderSpec,
        right: CircularOrderSpec,
    ) -> Result<Self> {
        group.validate()?;
        let GroupDescriptor::FreeProduct {
            left: gl,
            right: gr,
        } = &group
        else {
            return Err(Error::InvalidGroup(format!(
                "{group} is not a free product"
            )));
        };
        for (spec, factor) in [(&left, gl), (&right, gr)] {
            if !lives_on(spec, factor) {
                return Err(Error::InvalidOrder(format!(
                    "a {} order does not live on {factor}",
                    spec.kind()
                )));
            }
        }
        Ok(LexOrder { group, left, right })
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group.clone()
    }

    pub fn left(&self) -> &CircularOrderSpec {
        &self.left
    }

    pub fn right(&self) -> &CircularOrderSpec {
        &self.right
    }

    /// Reduction trace of `(a, b, c)`.
    pub fn reduce(&self, a: &Element, b: &Element, c: &Element) -> Result<TripleReductionTrace> {
        reduce_triple(&self.group, &[a.clone(), b.clone(), c.clone()])
    }

    pub fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        self.eval_with(a, b, c, &|_| None)
    }

    /// Like [`Self::eval`], but `patch` may replace the value assigned to a
    /// minimal triple.
    pub fn eval_with(
        &self,
        a: &Element,
        b: &Element,
        c: &Element,
        patch: &dyn Fn(&[Element; 3]) -> Option<OrderValue>,
    ) -> Result<OrderValue> {
        for x in [a, b, c] {
            self.group.check(x)?;
        }
        if a == b || b == c || a == c {
            return Ok(OrderValue::Degenerate);
        }
        let minimal = self.reduce(a, b, c)?.minimal;
        if let Some(v) = patch(&minimal) {
            return Ok(v);
        }
        self.minimal_value(&minimal)
    }

    /// The value on a minimal triple (entries distinct, each the identity
    /// or a single letter).
    pub fn minimal_value(&self, t: &[Element; 3]) -> Result<OrderValue> {
        let GroupDescriptor::FreeProduct {
            left: gl,
            right: gr,
        } = &self.group
        else {
            unreachable!("checked in new")
        };
        let split = |w: &Element| -> Result<(Kind, Option<Element>)> {
            match w.as_word() {
                Some([]) => Ok((Kind::E, None)),
                Some([(Side::Left, x)]) => Ok((Kind::G, Some(x.clone()))),
                Some([(Side::Right, x)]) => Ok((Kind::H, Some(x.clone()))),
                _ => Err(Error::NotReduced(w.to_string())),
            }
        };
        let parts = [split(&t[0])?, split(&t[1])?, split(&t[2])?];
        let kinds = parts.clone().map(|p| p.0);
        if !kinds.contains(&Kind::H) {
            let e = gl.identity();
            let [x, y, z] = parts.map(|p| p.1.unwrap_or_else(|| e.clone()));
            return self.left.eval(&x, &y, &z);
        }
        if !kinds.contains(&Kind::G) {
            let e = gr.identity();
            let [x, y, z] = parts.map(|p| p.1.unwrap_or_else(|| e.clone()));
            return self.right.eval(&x, &y, &z);
        }
        // rotate so the pattern starts where the table is stated
        let start = match kinds.iter().filter(|k| **k == Kind::E).count() {
            1 => kinds.iter().position(|k| *k == Kind::E),
            _ => {
                let gs = kinds.iter().filter(|k| **k == Kind::G).count();
                if gs == 2 {
                    // h goes last
                    kinds
                        .iter()
                        .position(|k| *k == Kind::H)
                        .map(|i| (i + 1) % 3)
                } else {
                    // g goes first
                    kinds.iter().position(|k| *k == Kind::G)
                }
            }
        }
        .expect("pattern present");
        let r: [(Kind, Option<Element>); 3] =
            std::array::from_fn(|i| parts[(start + i) % 3].clone());
        match (r[0].0, r[1].0, r[2].0) {
            (Kind::E, Kind::G, Kind::H) => Ok(OrderValue::Positive),
            (Kind::E, Kind::H, Kind::G) => Ok(OrderValue::Negative),
            (Kind::G, Kind::G, Kind::H) => {
                let (g1, g2) = (
                    r[0].1.as_ref().expect("letter"),
                    r[1].1.as_ref().expect("letter"),
                );
                self.left.eval(g1, g2, &gl.identity())
            }
            (Kind::G, Kind::H, Kind::H) => {
                let (h1, h2) = (
                    r[1].1.as_ref().expect("letter"),
                    r[2].1.as_ref().expect("letter"),
                );
                self.right.eval(&gr.identity(), h1, h2)
            }
            other => unreachable!("unexpected rotated pattern {other:?}"),
        }
    }
}

fn lives_on(spec: &CircularOrderSpec, factor: &GroupDescriptor) -> bool {
    match (spec, spec.group()) {
        (CircularOrderSpec::FiniteRotation(f), _) => factor.finite_order() == Some(f.m()),
        (_, Some(g)) => g == *factor,
        (_, None) => true,
    }
}

impl CircularOrder for LexOrder {
    fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        LexOrder::eval(self, a, b, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{validate, LinearOrderSpec};

    fn z_star_z() -> LexOrder {
        let z = GroupDescriptor::lattice(1);
        let lin = || CircularOrderSpec::linear_wrap(LinearOrderSpec::standard(1));
        LexOrder::new(GroupDescriptor::free_product(z.clone(), z), lin(), lin()).unwrap()
    }

    fn g(k: i64) -> Element {
        Element::left(Element::vector(vec![k]))
    }

    fn h(k: i64) -> Element {
        Element::right(Element::vector(vec![k]))
    }

    #[test]
    fn initial_conditions() {
        let l = z_star_z();
        let e = Element::word(vec![]);
        assert_eq!(l.eval(&e, &g(1), &h(1)).unwrap(), OrderValue::Positive);
        assert_eq!(l.eval(&e, &h(-2), &g(3)).unwrap(), OrderValue::Negative);
        assert_eq!(l.eval(&g(1), &h(1), &e).unwrap(), OrderValue::Positive);
    }

    #[test]
    fn restricts_to_factors() {
        let l = z_star_z();
        let e = Element::word(vec![]);
        // linear wrap on Z: c(x,y,z) = +1 on cyclic rotations of x < y < z
        assert_eq!(l.eval(&e, &g(1), &g(2)).unwrap(), OrderValue::Positive);
        assert_eq!(l.eval(&g(2), &e, &g(1)).unwrap(), OrderValue::Positive);
        assert_eq!(l.eval(&h(2), &e, &h(1)).unwrap(), OrderValue::Positive);
        assert_eq!(l.eval(&e, &h(2), &h(1)).unwrap(), OrderValue::Negative);
    }

    #[test]
    fn valid_on_small_ball() {
        let l = z_star_z();
        let sample = l.group().ball(2);
        let report = validate(&l, &l.group(), &sample).unwrap();
        assert!(report.is_ok(), "{:?}", report.violations.first());
    }

    #[test]
    fn rejects_wrong_factor_order() {
        let z = GroupDescriptor::lattice(1);
        let fr = CircularOrderSpec::finite_rotation(3, 1).unwrap();
        let lin = CircularOrderSpec::linear_wrap(LinearOrderSpec::standard(1));
        assert!(LexOrder::new(GroupDescriptor::free_product(z.clone(), z), fr, lin).is_err());
    }
}
