use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{make_rotation_params, BlowdownData, RotationParams};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::lattice;
use crate::order::{agreement, CircularOrderSpec, LinearOrderSpec};
use crate::AlgebraicReal;

/// The first `count` primes greater than `above`.
pub fn fresh_primes(above: u64, count: usize) -> Vec<u64> {
    let is_prime = |p: u64| {
        p >= 2
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d))
    };
    (above + 1..).filter(|&p| is_prime(p)).take(count).collect()
}

fn largest_prime_used<'a>(xs: impl IntoIterator<Item = &'a AlgebraicReal>) -> u64 {
    let mut best = 1;
    for x in xs {
        for mut d in x.radicands() {
            let mut p = 2;
            while d > 1 {
                if p * p > d {
                    best = best.max(d);
                    break;
                }
                while d % p == 0 {
                    best = best.max(p);
                    d /= p;
                }
                p += 1;
            }
        }
    }
    best
}

fn pow2_inv(t: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << t)
}

/// A rotation order agreeing with `c` on every triple of `sample`.
///
/// For an intertwined order the angles are the quotient rotation lifted to
/// `A`, plus the linear order on the kernel scaled by `2^-t`, plus a small
/// multiple of `√p` with a fresh prime `p` in each coordinate; `t` grows
/// until the candidate agrees with `c` on the sample.
pub fn density_search(
    c: &CircularOrderSpec,
    sample: &[Element],
    budget: usize,
) -> Result<RotationParams> {
    let d = match c {
        CircularOrderSpec::Rotation(p) => return Ok(p.clone()),
        CircularOrderSpec::Intertwined(d) => d,
        other => {
            return Err(Error::Unsupported(format!(
                "density search from a {} order",
                other.kind()
            )))
        }
    };
    let n = d.n();
    let m = d.m();
    let (base, k) = lifted_quotient_angles(d)?;
    let kernel_dir = kernel_direction(d, sample)?;
    let used = largest_prime_used(base.iter().chain(kernel_dir.iter()));
    let primes = fresh_primes(used, n);
    for t in 1..=budget as u32 {
        let eps = pow2_inv(t);
        let delta = pow2_inv(2 * t + 3);
        let theta: Vec<AlgebraicReal> = (0..n)
            .map(|i| {
                let x = base[i].clone()
                    + kernel_dir[i].scale(&eps)
                    + AlgebraicReal::sqrt(primes[i])
                        .scale(&(delta.clone() / BigRational::from_integer((i as i64 + 1).into())));
                x.fract()
            })
            .collect();
        let Ok(p) = make_rotation_params(n, m, theta, k) else {
            continue;
        };
        if agreement(c, &CircularOrderSpec::Rotation(p.clone()), sample)?.agrees() {
            return Ok(p);
        }
    }
    Err(Error::Exhausted(budget))
}

/// Angles of the ambient generators under the quotient rotation, before
/// reduction mod 1, and the induced step `k` on the torsion generator.
fn lifted_quotient_angles(d: &BlowdownData) -> Result<(Vec<AlgebraicReal>, u64)> {
    let n = d.n();
    let m = d.m();
    let rho = d.rho();
    let left = d.smith_left();
    let big_n = left.len();
    let f = big_n - rho;
    // raw position of σ(e_j) as a linear function of left · e_j
    let raw = |col: usize| -> Result<AlgebraicReal> {
        let y: Vec<i64> = left.iter().map(|row| row[col]).collect();
        let tors = d.torsion_row().map(|(i, order)| (y[i], order));
        match d.quotient_order() {
            CircularOrderSpec::Rotation(q) if q.n() == f => {
                let mut s = AlgebraicReal::zero();
                for (yi, th) in y[rho..].iter().zip(q.theta()) {
                    s = s + th.scale_int(*yi);
                }
                if let Some((yt, order)) = tors {
                    if q.m() != order {
                        return Err(Error::InvalidOrder(
                            "quotient rotation has the wrong torsion".into(),
                        ));
                    }
                    s = s + AlgebraicReal::from_ratio(BigRational::new(
                        BigInt::from(yt) * BigInt::from(q.k()),
                        BigInt::from(order),
                    ));
                }
                Ok(s)
            }
            CircularOrderSpec::FiniteRotation(fr) if f == 0 => Ok(match tors {
                Some((yt, order)) if order == fr.m() => AlgebraicReal::from_ratio(
                    BigRational::new(BigInt::from(yt) * BigInt::from(fr.k()), BigInt::from(order)),
                ),
                None => AlgebraicReal::zero(),
                Some(_) => {
                    return Err(Error::InvalidOrder(
                        "quotient rotation has the wrong modulus".into(),
                    ))
                }
            }),
            other => Err(Error::Unsupported(format!(
                "density search over a {} quotient order",
                other.kind()
            ))),
        }
    };
    let base = (0..n).map(raw).collect::<Result<Vec<_>>>()?;
    let k = if m > 0 {
        let r = raw(n)?;
        if !r.is_rational() {
            return Err(Error::InvalidOrder(
                "torsion generator maps to an irrational angle".into(),
            ));
        }
        let q = r.rational_part() * BigRational::from_integer(BigInt::from(m));
        if !q.is_integer() {
            return Err(Error::InvalidOrder(
                "torsion generator angle has the wrong order".into(),
            ));
        }
        let k = q.to_integer() % BigInt::from(m);
        let k = if k < BigInt::zero() {
            k + BigInt::from(m)
        } else {
            k
        };
        u64::try_from(k).expect("reduced mod m")
    } else {
        0
    };
    Ok((base, k))
}

/// A functional `λ` on `Z^n` whose value on the kernel generators orders the
/// kernel like the linear order does, at least on differences from `sample`.
fn kernel_direction(d: &BlowdownData, sample: &[Element]) -> Result<Vec<AlgebraicReal>> {
    let n = d.n();
    let r = d.kernel().len();
    if r == 0 {
        return Ok(vec![AlgebraicReal::zero(); n]);
    }
    let x: Vec<AlgebraicReal> = match d.lin() {
        LinearOrderSpec::Translation { x } => x.clone(),
        LinearOrderSpec::Lexicographic { signs, .. } => {
            let mut bound = 1i64;
            for a in sample {
                for c in d.k_coordinate(a)? {
                    bound = bound.max(2 * c.abs() + 1);
                }
            }
            let eta = BigRational::new(BigInt::one(), BigInt::from(4 * bound));
            let mut w = BigRational::one();
            signs
                .iter()
                .map(|s| {
                    let v = AlgebraicReal::from_ratio(
                        w.clone() * BigRational::from_integer((*s as i64).into()),
                    );
                    w = w.clone() * eta.clone();
                    v
                })
                .collect()
        }
        LinearOrderSpec::InducedCone { .. } => {
            return Err(Error::Unsupported(
                "density search over a cone table".into(),
            ))
        }
    };
    // λ = F (FᵀF)⁻¹ x with F the free parts of the kernel generators
    let f: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            d.kernel()
                .iter()
                .map(|row| BigRational::from_integer(row[i].into()))
                .collect()
        })
        .collect();
    let gram: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..n).map(|k| &f[k][i] * &f[k][j]).sum())
                .collect()
        })
        .collect();
    let mut aug: Vec<Vec<BigRational>> = gram
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..r).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    lattice::rref(&mut aug, 2 * r);
    let inv: Vec<Vec<BigRational>> = aug.into_iter().map(|row| row[r..].to_vec()).collect();
    Ok((0..n)
        .map(|i| {
            let mut s = AlgebraicReal::zero();
            for j in 0..r {
                let coef: BigRational = (0..r).map(|l| &f[i][l] * &inv[l][j]).sum();
                if !coef.is_zero() {
                    s = s + x[j].scale(&coef);
                }
            }
            s
        })
        .collect())
}

/// A rotation order different from `p` that agrees with it on `sample`,
/// obtained by nudging `θ_1` by a small multiple of `√q` for a fresh prime.
pub fn nearby_rotation(
    p: &RotationParams,
    sample: &[Element],
    budget: usize,
) -> Result<RotationParams> {
    if p.n() == 0 {
        return Err(Error::Unsupported(
            "rotation orders of a finite group are isolated".into(),
        ));
    }
    let q = fresh_primes(largest_prime_used(p.theta()), 1)[0];
    let c = CircularOrderSpec::Rotation(p.clone());
    for t in 1..=budget as u32 {
        let mut theta = p.theta().to_vec();
        theta[0] = (theta[0].clone() + AlgebraicReal::sqrt(q).scale(&pow2_inv(t))).fract();
        let Ok(np) = make_rotation_params(p.n(), p.m(), theta, p.k()) else {
            continue;
        };
        if agreement(&c, &CircularOrderSpec::Rotation(np.clone()), sample)?.agrees() {
            return Ok(np);
        }
    }
    Err(Error::Exhausted(budget))
}
