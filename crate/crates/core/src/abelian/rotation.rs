use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::group::{Element, GroupDescriptor};
use crate::order::{orientation, ranks_by, OrderTable, OrderValue};
use crate::AlgebraicReal;

/// Rotation order `c_{θ,k}` on `Z^n × Z/m`: the element `(v, t)` sits at
/// `frac(v·θ + t·k/m)` on the circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RotationRepr")]
pub struct RotationParams {
    n: usize,
    m: u64,
    theta: Vec<AlgebraicReal>,
    k: u64,
}

#[derive(Deserialize)]
struct RotationRepr {
    n: usize,
    #[serde(default)]
    m: u64,
    theta: Vec<AlgebraicReal>,
    #[serde(default)]
    k: u64,
}

impl TryFrom<RotationRepr> for RotationParams {
    type Error = Error;
    fn try_from(r: RotationRepr) -> Result<Self> {
        make_rotation_params(r.n, r.m, r.theta, r.k)
    }
}

/// Validates `θ ∈ (0,1)^n` with `{1, θ_1, …, θ_n}` linearly independent
/// over Q, and `gcd(k, m) = 1`.
pub fn make_rotation_params(
    n: usize,
    m: u64,
    theta: Vec<AlgebraicReal>,
    k: u64,
) -> Result<RotationParams> {
    if theta.len() != n {
        return Err(Error::InvalidOrder(format!(
            "expected {n} angles, got {}",
            theta.len()
        )));
    }
    let m = if m == 1 { 0 } else { m };
    let k = if m == 0 { 0 } else { k };
    if m > 0 && (k >= m || k.gcd(&m) != 1) {
        return Err(Error::NotCoprime { k, m });
    }
    for (i, t) in theta.iter().enumerate() {
        if !t.in_unit_interval() {
            return Err(Error::InvalidOrder(format!(
                "θ{} = {t} is not in (0, 1)",
                i + 1
            )));
        }
    }
    let mut with_one = theta.clone();
    with_one.push(AlgebraicReal::from_int(1));
    if let Some(dep) = crate::order::rational_dependency(&with_one) {
        return Err(Error::DependentAngles(describe_dependency(&dep)));
    }
    Ok(RotationParams { n, m, theta, k })
}

/// Renders `q_1 θ1 + … + q_n θn + q_0 = 0` with integer coefficients.
fn describe_dependency(q: &[BigRational]) -> String {
    let den = q.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = q
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let n = ints.len() - 1;
    let mut parts = Vec::new();
    for (i, c) in ints.iter().enumerate() {
        if *c == BigInt::from(0) {
            continue;
        }
        parts.push(if i == n {
            c.to_string()
        } else {
            format!("{c}·θ{}", i + 1)
        });
    }
    format!("{} = 0", parts.join(" + "))
}

impl RotationParams {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn theta(&self) -> &[AlgebraicReal] {
        &self.theta
    }

    pub fn group(&self) -> GroupDescriptor {
        GroupDescriptor::abelian(self.n, self.m)
    }

    fn coordinates<'a>(&self, a: &'a Element) -> Result<(&'a [i64], u64)> {
        match a {
            Element::Abelian { vec, t } if vec.len() == self.n => match (t.as_slice(), self.m) {
                ([], 0) => Ok((vec, 0)),
                ([r], m) if m > 0 && *r < m => Ok((vec, *r)),
                _ => Err(mismatch(a, &self.group())),
            },
            _ => Err(mismatch(a, &self.group())),
        }
    }

    /// `v·θ + t·k/m` before reduction mod 1.
    pub fn raw_position(&self, a: &Element) -> Result<AlgebraicReal> {
        let (v, t) = self.coordinates(a)?;
        let mut s = AlgebraicReal::zero();
        for (vi, th) in v.iter().zip(&self.theta) {
            if *vi != 0 {
                s = s + th.scale_int(*vi);
            }
        }
        if self.m > 0 && t > 0 {
            s = s + AlgebraicReal::from_ratio(BigRational::new(
                BigInt::from(t) * BigInt::from(self.k),
                BigInt::from(self.m),
            ));
        }
        Ok(s)
    }

    pub fn position(&self, a: &Element) -> Result<AlgebraicReal> {
        Ok(self.raw_position(a)?.fract())
    }

    pub fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        let (pa, pb, pc) = (self.position(a)?, self.position(b)?, self.position(c)?);
        if a == b || b == c || a == c {
            return Ok(OrderValue::Degenerate);
        }
        Ok(orientation(&pa, &pb, &pc))
    }

    pub fn tabulate(&self, sample: &[Element]) -> Result<OrderTable> {
        let pos = sample
            .iter()
            .map(|a| self.position(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrderTable::from_ranks(&ranks_by(&pos, |x, y| x.cmp(y))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{CircularOrder, CircularOrderSpec};

    fn s2m1() -> AlgebraicReal {
        AlgebraicReal::sqrt(2) - AlgebraicReal::from_int(1)
    }

    #[test]
    fn integer_rotation() {
        let p = make_rotation_params(1, 0, vec![s2m1()], 0).unwrap();
        let z = |k| Element::vector(vec![k]);
        assert_eq!(p.eval(&z(0), &z(1), &z(2)).unwrap(), OrderValue::Positive);
        assert_eq!(p.eval(&z(0), &z(2), &z(1)).unwrap(), OrderValue::Negative);
        assert!(p.eval(&z(0), &Element::index(1), &z(1)).is_err());
    }

    #[test]
    fn finite_part_only() {
        let p = make_rotation_params(0, 5, vec![], 2).unwrap();
        let r = |t| Element::abelian(vec![], t);
        // positions 0, 2/5, 1/5
        assert_eq!(p.eval(&r(0), &r(1), &r(3)).unwrap(), OrderValue::Negative);
    }

    #[test]
    fn parameter_validation() {
        let s3m1 = AlgebraicReal::sqrt(3) - AlgebraicReal::from_int(1);
        assert!(make_rotation_params(2, 0, vec![s2m1(), s3m1], 0).is_ok());
        let other = AlgebraicReal::from_int(2) - AlgebraicReal::sqrt(2);
        match make_rotation_params(2, 0, vec![s2m1(), other], 0) {
            Err(Error::DependentAngles(w)) => assert_eq!(w, "1·θ1 + 1·θ2 + -1 = 0"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            make_rotation_params(0, 6, vec![], 4),
            Err(Error::NotCoprime { k: 4, m: 6 })
        ));
        assert!(make_rotation_params(1, 0, vec![AlgebraicReal::sqrt(2)], 0).is_err());
    }

    #[test]
    fn tabulate_matches_eval() {
        let p = make_rotation_params(
            1,
            3,
            vec![AlgebraicReal::sqrt(5) - AlgebraicReal::from_int(2)],
            2,
        )
        .unwrap();
        let g = p.group();
        let sample = g.ball(3);
        let c = CircularOrderSpec::Rotation(p);
        assert_eq!(
            c.tabulate(&sample).unwrap(),
            crate::order::default_tabulate(&c, &sample).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let p = make_rotation_params(1, 0, vec![s2m1()], 0).unwrap();
        let c = CircularOrderSpec::Rotation(p);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            text,
            r#"{"type":"rotation","n":1,"m":0,"theta":[{"terms":[[1,"-1"],[2,"1"]]}],"k":0}"#
        );
        assert_eq!(serde_json::from_str::<CircularOrderSpec>(&text).unwrap(), c);
    }
}
