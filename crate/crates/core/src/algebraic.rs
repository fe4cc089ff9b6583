//! Exact real numbers of the form `Σ q_d·√d` with rational `q_d` and
//! distinct squarefree `d`.
//!
//! Square roots of distinct squarefree positive integers are linearly
//! independent over the rationals, so a normalized coefficient map is a
//! canonical form: two values are equal iff their maps are identical, and a
//! value is zero iff its map is empty. Signs of nonzero values are settled by
//! interval refinement, which always terminates because the value is a
//! nonzero real.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::{from_i64, from_u64, IntScalar};

/// Sum of rational multiples of square roots of squarefree integers.
///
/// The key `1` holds the rational part.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SurdSum<T: IntScalar> {
    terms: BTreeMap<u64, Ratio<T>>,
}

/// Splits `n > 0` as `s² · d` with `d` squarefree; returns `(s, d)`.
pub fn squarefree_split(mut n: u64) -> (u64, u64) {
    assert!(n > 0, "squarefree_split of zero");
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        outside *= p.pow(e / 2);
        if e % 2 == 1 {
            inside *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    inside *= n;
    (outside, inside)
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && squarefree_split(n).0 == 1
}

impl<T: IntScalar> SurdSum<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_ratio(q: Ratio<T>) -> Self {
        Self::term(q, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratio(Ratio::from_integer(from_i64(n)))
    }

    /// `p / q` as an exact value. Panics if `q == 0`.
    pub fn fraction(p: i64, q: i64) -> Self {
        Self::from_ratio(Ratio::new(from_i64(p), from_i64(q)))
    }

    /// `√n`, normalized to `s·√d` with `d` squarefree.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Self::term(Ratio::one(), n)
    }

    /// `q·√n`, normalized.
    pub fn term(q: Ratio<T>, n: u64) -> Self {
        let mut out = Self::zero();
        if n == 0 || q.is_zero() {
            return out;
        }
        let (s, d) = squarefree_split(n);
        out.terms.insert(d, q * Ratio::from_integer(from_u64(s)));
        out
    }

    /// Builds a value from `(d, q)` pairs; non-squarefree radicands are
    /// normalized and repeated keys are summed.
    pub fn from_terms<I: IntoIterator<Item = (u64, Ratio<T>)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (d, q)| acc + Self::term(q, d))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Ratio<T>)> {
        self.terms.iter().map(|(d, q)| (*d, q))
    }

    pub fn coefficient(&self, d: u64) -> Ratio<T> {
        self.terms.get(&d).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    pub fn rational_part(&self) -> Ratio<T> {
        self.coefficient(1)
    }

    /// The value minus its rational part.
    pub fn irrational_part(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&1);
        out
    }

    fn insert_add(&mut self, d: u64, q: Ratio<T>) {
        let entry = self.terms.entry(d).or_insert_with(Ratio::zero);
        *entry = entry.clone() + q;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn scale(&self, q: &Ratio<T>) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (*d, c.clone() * q.clone()))
                .collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Ratio::from_integer(from_i64(n)))
    }

    /// Floating-point approximation. Not used for decisions.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| ratio_to_f64(q) * (*d as f64).sqrt())
            .sum()
    }

    fn to_big(&self) -> Vec<(u64, BigRational)> {
        self.terms
            .iter()
            .map(|(d, q)| {
                let n: BigInt = q.numer().clone().into();
                let m: BigInt = q.denom().clone().into();
                (*d, BigRational::new(n, m))
            })
            .collect()
    }

    /// Exact sign in `{-1, 0, +1}`.
    pub fn signum(&self) -> i8 {
        if self.terms.is_empty() {
            return 0;
        }
        if self.is_rational() {
            let q = self.rational_part();
            return if q.is_positive() { 1 } else { -1 };
        }
        if let Some(s) = self.fast_sign() {
            return s;
        }
        refine_sign(&self.to_big())
    }

    fn fast_sign(&self) -> Option<i8> {
        let mut approx = 0.0f64;
        let mut magnitude = 0.0f64;
        for (d, q) in &self.terms {
            let t = ratio_to_f64(q) * (*d as f64).sqrt();
            if !t.is_finite() {
                return None;
            }
            approx += t;
            magnitude += t.abs();
        }
        let bound = magnitude * 1e-12 + f64::MIN_POSITIVE;
        if approx > bound {
            Some(1)
        } else if approx < -bound {
            Some(-1)
        } else {
            None
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> T {
        if self.is_rational() {
            return self.rational_part().floor().to_integer();
        }
        let approx = self.to_f64();
        let mut n: T = if approx.is_finite() && approx.abs() < 1e15 {
            from_i64(approx.floor() as i64)
        } else {
            let (lo, _) = enclose(&self.to_big(), 64);
            let f = lo.floor().to_integer();
            T::try_from(f).ok().expect("floor does not fit scalar type")
        };
        while (self.clone() - Self::from_ratio(Ratio::from_integer(n.clone()))).signum() < 0 {
            n = n - T::one();
        }
        while (self.clone() - Self::from_ratio(Ratio::from_integer(n.clone() + T::one()))).signum()
            >= 0
        {
            n = n + T::one();
        }
        n
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        let f = self.floor();
        self.clone() - Self::from_ratio(Ratio::from_integer(f))
    }

    /// Strictly between 0 and 1.
    pub fn in_unit_interval(&self) -> bool {
        self.signum() > 0 && (Self::from_int(1) - self.clone()).signum() > 0
    }
}

fn ratio_to_f64<T: IntScalar>(q: &Ratio<T>) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    }
}

/// Encloses `Σ q_d √d` in `[lo, hi]` using `√d` bounds with `bits` binary
/// digits after the point.
fn enclose(terms: &[(u64, BigRational)], bits: u32) -> (BigRational, BigRational) {
    let scale = BigInt::one() << bits;
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for (d, q) in terms {
        let (root_lo, root_hi) = if *d == 1 {
            (BigRational::one(), BigRational::one())
        } else {
            let s = (BigInt::from(*d) << (2 * bits)).sqrt();
            (
                BigRational::new(s.clone(), scale.clone()),
                BigRational::new(s + 1, scale.clone()),
            )
        };
        if q.is_positive() {
            lo += q * &root_lo;
            hi += q * &root_hi;
        } else {
            lo += q * &root_hi;
            hi += q * &root_lo;
        }
    }
    (lo, hi)
}

fn refine_sign(terms: &[(u64, BigRational)]) -> i8 {
    let mut bits = 32;
    loop {
        let (lo, hi) = enclose(terms, bits);
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        bits *= 2;
    }
}

impl<T: IntScalar> Default for SurdSum<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: IntScalar> Add for SurdSum<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (d, q) in rhs.terms {
            self.insert_add(d, q);
        }
        self
    }
}

impl<'a, T: IntScalar> Add<&'a SurdSum<T>> for SurdSum<T> {
    type Output = Self;
    fn add(mut self, rhs: &'a SurdSum<T>) -> Self {
        for (d, q) in &rhs.terms {
            self.insert_add(*d, q.clone());
        }
        self
    }
}

impl<T: IntScalar> Neg for SurdSum<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(d, q)| (d, -q)).collect(),
        }
    }
}

impl<T: IntScalar> Sub for SurdSum<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'a, T: IntScalar> Sub<&'a SurdSum<T>> for SurdSum<T> {
    type Output = Self;
    fn sub(mut self, rhs: &'a SurdSum<T>) -> Self {
        for (d, q) in &rhs.terms {
            self.insert_add(*d, -q.clone());
        }
        self
    }
}

impl<T: IntScalar> Mul for SurdSum<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (a, p) in &self.terms {
            for (b, q) in &rhs.terms {
                // √a·√b = g·√(ab/g²) with g = gcd(a, b); the radicand stays squarefree
                let g = a.gcd(b);
                let d = (a / g) * (b / g);
                let c = p.clone() * q.clone() * Ratio::from_integer(from_u64(g));
                out.insert_add(d, c);
            }
        }
        out
    }
}

impl<T: IntScalar> PartialOrd for SurdSum<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: IntScalar> Ord for SurdSum<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other).signum().cmp(&0)
    }
}

impl<T: IntScalar> fmt::Debug for SurdSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: IntScalar> fmt::Display for SurdSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *d == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}·√{d}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SurdSumRepr {
    terms: Vec<(u64, String)>,
}

impl<T: IntScalar> Serialize for SurdSum<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SurdSumRepr {
            terms: self
                .terms
                .iter()
                .map(|(d, q)| (*d, format_ratio(q)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: IntScalar> Deserialize<'de> for SurdSum<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SurdSumRepr::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for (d, text) in repr.terms {
            if d == 0 {
                return Err(serde::de::Error::custom("radicand must be positive"));
            }
            let q = parse_ratio::<T>(&text).map_err(serde::de::Error::custom)?;
            terms.push((d, q));
        }
        Ok(Self::from_terms(terms))
    }
}

pub(crate) fn format_ratio<T: IntScalar>(q: &Ratio<T>) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn parse_ratio<T: IntScalar>(text: &str) -> Result<Ratio<T>, Error> {
    let bad = || Error::Parse(format!("invalid rational literal {text:?}"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: T = n.parse().map_err(|_| bad())?;
    let d: T = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::AlgebraicReal;

    fn q(p: i64, r: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(p), BigInt::from(r))
    }

    #[test]
    fn sqrt2_minus_seven_fifths_is_positive() {
        let x = AlgebraicReal::sqrt(2) - AlgebraicReal::fraction(7, 5);
        assert_eq!(x.signum(), 1);
        assert_eq!(x.coefficient(1), q(-7, 5));
    }

    #[test]
    fn empty_map_is_zero() {
        assert_eq!(AlgebraicReal::zero().signum(), 0);
    }

    #[test]
    fn symbolic_cancellation() {
        let s2 = AlgebraicReal::sqrt(2);
        let x = AlgebraicReal::from_int(3) - s2.scale_int(2) + s2.clone()
            - AlgebraicReal::from_int(1)
            - (AlgebraicReal::from_int(2) - s2);
        assert!(x.is_zero());
        assert_eq!(x.signum(), 0);
    }

    #[test]
    fn normalizes_radicands() {
        let x = AlgebraicReal::sqrt(12);
        assert_eq!(x.coefficient(3), q(2, 1));
        assert_eq!(AlgebraicReal::sqrt(9), AlgebraicReal::from_int(3));
        assert_eq!(squarefree_split(72), (6, 2));
    }

    #[test]
    fn product_of_roots() {
        let x = AlgebraicReal::sqrt(6) * AlgebraicReal::sqrt(10);
        assert_eq!(x, AlgebraicReal::term(q(2, 1), 15));
    }

    #[test]
    fn close_values_need_refinement() {
        // 99/70 approximates √2 to within 7.2e-5; 3363/2378 to within 1.3e-7
        let x = AlgebraicReal::sqrt(2) - AlgebraicReal::fraction(3363, 2378);
        assert_eq!(x.signum(), -1);
        let tiny = AlgebraicReal::term(q(1, 1_000_000_000_000_000), 2)
            - AlgebraicReal::term(q(1, 1_000_000_000_000_000), 3);
        assert_eq!(tiny.signum(), -1);
        assert_eq!(refine_sign(&tiny.to_big()), -1);
    }

    #[test]
    fn floor_and_fract() {
        let x = AlgebraicReal::sqrt(2).scale_int(3);
        assert_eq!(x.floor(), BigInt::from(4));
        let y = -AlgebraicReal::sqrt(2);
        assert_eq!(y.floor(), BigInt::from(-2));
        let f = y.fract();
        assert_eq!(f, AlgebraicReal::from_int(2) - AlgebraicReal::sqrt(2));
        assert!(f.in_unit_interval());
        assert_eq!(AlgebraicReal::fraction(-1, 2).floor(), BigInt::from(-1));
    }

    #[test]
    fn json_shape() {
        let x = AlgebraicReal::sqrt(2) - AlgebraicReal::fraction(7, 5);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"terms":[[1,"-7/5"],[2,"1"]]}"#);
        let back: AlgebraicReal = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn fixed_width_scalar_agrees() {
        let a = SurdSum::<i64>::sqrt(3) - SurdSum::<i64>::fraction(7, 4);
        let b = AlgebraicReal::sqrt(3) - AlgebraicReal::fraction(7, 4);
        assert_eq!(a.signum(), b.signum());
        assert_eq!(a.floor(), -1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn value() -> impl Strategy<Value = SurdSum<i64>> {
            proptest::collection::vec((1u64..30, -50i64..50, 1i64..20), 0..4).prop_map(|ts| {
                SurdSum::from_terms(ts.into_iter().map(|(d, p, q)| (d, Ratio::new(p, q))))
            })
        }

        proptest! {
            #[test]
            fn sign_matches_float_when_well_separated(x in value()) {
                let f = x.to_f64();
                if f.abs() > 1e-6 {
                    prop_assert_eq!(x.signum() as f64, f.signum());
                }
            }

            #[test]
            fn subtraction_is_exact(x in value(), y in value()) {
                let z = (x.clone() + y.clone()) - y;
                prop_assert_eq!(z, x);
            }

            #[test]
            fn fract_is_in_unit_interval(x in value()) {
                let f = x.fract();
                prop_assert!(f.signum() >= 0);
                prop_assert_eq!((SurdSum::<i64>::from_int(1) - f).signum(), 1);
            }
        }
    }
}
