use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::group::{Element, GroupDescriptor};
use crate::lattice::{self, Smith};
use crate::order::{orientation_by, CircularOrder, CircularOrderSpec, LinearOrderSpec, OrderValue};

/// Intertwined order on `A = Z^n × Z/m` built from a torsion-free subgroup
/// `K ≤ A`, a linear order on `K ≅ Z^r` and a circular order on `A/K`.
///
/// Each coset of `K` is blown up into a copy of `K` sitting at the
/// position of its image in `A/K`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "BlowdownRepr", into = "BlowdownRepr")]
pub struct BlowdownData {
    n: usize,
    m: u64,
    /// Generators of `K`, one row `(v, t)` each.
    kernel: Vec<Vec<i64>>,
    lin: LinearOrderSpec,
    quotient_order: CircularOrderSpec,
    q: Quotient,
}

#[derive(Serialize, Deserialize)]
struct BlowdownRepr {
    n: usize,
    #[serde(default)]
    m: u64,
    kernel: Vec<Vec<i64>>,
    lin: LinearOrderSpec,
    quotient_order: CircularOrderSpec,
}

impl TryFrom<BlowdownRepr> for BlowdownData {
    type Error = Error;
    fn try_from(r: BlowdownRepr) -> Result<Self> {
        BlowdownData::new(r.n, r.m, r.kernel, r.lin, r.quotient_order)
    }
}

impl From<BlowdownData> for BlowdownRepr {
    fn from(d: BlowdownData) -> Self {
        BlowdownRepr {
            n: d.n,
            m: d.m,
            kernel: d.kernel,
            lin: d.lin,
            quotient_order: d.quotient_order,
        }
    }
}

impl PartialEq for BlowdownData {
    fn eq(&self, other: &Self) -> bool {
        (
            self.n,
            self.m,
            &self.kernel,
            &self.lin,
            &self.quotient_order,
        ) == (
            other.n,
            other.m,
            &other.kernel,
            &other.lin,
            &other.quotient_order,
        )
    }
}

/// Precomputed quotient data.
#[derive(Clone, Debug)]
struct Quotient {
    /// `left · R · right = diag`, `R` the relation matrix with one column
    /// per kernel generator plus the torsion relation.
    smith: Smith<i64>,
    /// Rank of `R`.
    rho: usize,
    /// Row of `left` carrying the quotient torsion, and its order.
    torsion_row: Option<(usize, u64)>,
    /// Hermite basis of the relation lattice, for coset representatives.
    hnf: Vec<Vec<i64>>,
    /// Left inverse of the free parts of the kernel generators.
    solve: Vec<Vec<BigRational>>,
}

impl BlowdownData {
    pub fn new(
        n: usize,
        m: u64,
        kernel: Vec<Vec<i64>>,
        lin: LinearOrderSpec,
        quotient_order: CircularOrderSpec,
    ) -> Result<Self> {
        let m = if m == 1 { 0 } else { m };
        let big_n = n + (m > 0) as usize;
        for row in &kernel {
            if row.len() != big_n {
                return Err(Error::InvalidOrder(format!(
                    "kernel generator {row:?} is not in Z^{n} × Z/{m}"
                )));
            }
        }
        let r = kernel.len();
        if lin.rank() != Some(r) {
            return Err(Error::InvalidOrder(format!(
                "linear order must live on Z^{r}"
            )));
        }
        // free parts must be independent so that K ≅ Z^r
        let free: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                kernel
                    .iter()
                    .map(|row| BigRational::from_integer(row[i].into()))
                    .collect()
            })
            .collect();
        if lattice::rank::<BigInt>(&free, r) != r {
            return Err(Error::InvalidOrder(
                "kernel is not free abelian on its generators".into(),
            ));
        }
        let solve = left_inverse(&free, n, r);

        let mut relations: Vec<Vec<i64>> = kernel.clone();
        if m > 0 {
            let mut t = vec![0; big_n];
            t[n] = m as i64;
            relations.push(t);
        }
        // R has one column per relation
        let cols = relations.len();
        let rmat: Vec<Vec<i64>> = (0..big_n)
            .map(|i| relations.iter().map(|g| g[i]).collect())
            .collect();
        let smith = lattice::smith_normal_form(&rmat, big_n, cols);
        let rho = smith.diagonal.len();
        let torsion: Vec<(usize, u64)> = smith
            .diagonal
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > 1)
            .map(|(i, d)| (i, *d as u64))
            .collect();
        if torsion.len() > 1 {
            return Err(Error::InvalidOrder(format!(
                "quotient has noncyclic torsion {:?}",
                torsion.iter().map(|t| t.1).collect::<Vec<_>>()
            )));
        }
        let hnf = lattice::hermite_normal_form(&relations, big_n);
        let d = BlowdownData {
            n,
            m,
            kernel,
            lin,
            quotient_order,
            q: Quotient {
                smith,
                rho,
                torsion_row: torsion.first().copied(),
                hnf,
                solve,
            },
        };
        let e = d.sigma(&d.group().identity())?;
        d.quotient_order.eval(&e, &e, &e)?;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn kernel(&self) -> &[Vec<i64>] {
        &self.kernel
    }

    pub fn lin(&self) -> &LinearOrderSpec {
        &self.lin
    }

    pub fn quotient_order(&self) -> &CircularOrderSpec {
        &self.quotient_order
    }

    pub fn group(&self) -> GroupDescriptor {
        GroupDescriptor::abelian(self.n, self.m)
    }

    /// `A/K ≅ Z^f × Z/M` in the coordinates used by [`Self::sigma`].
    pub fn quotient_group(&self) -> GroupDescriptor {
        let f = self.n + (self.m > 0) as usize - self.q.rho;
        GroupDescriptor::abelian(f, self.q.torsion_row.map_or(0, |t| t.1))
    }

    /// Rows of the Smith transform, so `σ(x)` reads off `left · x`.
    pub fn smith_left(&self) -> &[Vec<i64>] {
        &self.q.smith.left
    }

    pub fn smith_diagonal(&self) -> &[i64] {
        &self.q.smith.diagonal
    }

    pub(crate) fn rho(&self) -> usize {
        self.q.rho
    }

    pub(crate) fn torsion_row(&self) -> Option<(usize, u64)> {
        self.q.torsion_row
    }

    pub(crate) fn coords(&self, a: &Element) -> Result<Vec<i64>> {
        match a {
            Element::Abelian { vec, t } if vec.len() == self.n => match (t.as_slice(), self.m) {
                ([], 0) => Ok(vec.clone()),
                ([r], m) if m > 0 && *r < m => {
                    let mut x = vec.clone();
                    x.push(*r as i64);
                    Ok(x)
                }
                _ => Err(mismatch(a, &self.group())),
            },
            _ => Err(mismatch(a, &self.group())),
        }
    }

    /// The quotient map `A → A/K`.
    pub fn sigma(&self, a: &Element) -> Result<Element> {
        let y = lattice::mat_vec(&self.q.smith.left, &self.coords(a)?);
        let free = y[self.q.rho..].to_vec();
        Ok(match self.q.torsion_row {
            Some((i, order)) => Element::abelian(free, y[i].rem_euclid(order as i64) as u64),
            None => Element::vector(free),
        })
    }

    /// Coordinates in `K` of `a` minus the fixed representative of `a + K`.
    pub fn k_coordinate(&self, a: &Element) -> Result<Vec<i64>> {
        let x = self.coords(a)?;
        let rep = lattice::reduce_mod_lattice(&self.q.hnf, &x);
        let d: Vec<BigRational> = x[..self.n]
            .iter()
            .zip(&rep)
            .map(|(a, b)| BigRational::from_integer((a - b).into()))
            .collect();
        self.q
            .solve
            .iter()
            .map(|row| {
                let c: BigRational = row.iter().zip(&d).map(|(p, q)| p * q).sum();
                if !c.is_integer() {
                    return Err(Error::InvalidOrder(format!(
                        "{a} has non-integral kernel coordinates"
                    )));
                }
                i64::try_from(c.to_integer())
                    .map_err(|_| Error::Unsupported("kernel coordinate overflow".into()))
            })
            .collect()
    }

    fn lin_cmp(&self, x: &[i64], y: &[i64]) -> Result<Ordering> {
        let d: Vec<i64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        Ok(self.lin.sign_of_vector(&d)?.reverse())
    }

    pub fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        self.eval_with_offset(a, b, c, &|_| None)
    }

    /// Evaluates with coset representatives moved by `offset(σ(a))`
    /// (kernel coordinates); the result does not depend on the offset.
    pub fn eval_with_offset(
        &self,
        a: &Element,
        b: &Element,
        c: &Element,
        offset: &dyn Fn(&Element) -> Option<Vec<i64>>,
    ) -> Result<OrderValue> {
        let (sa, sb, sc) = (self.sigma(a)?, self.sigma(b)?, self.sigma(c)?);
        if a == b || b == c || a == c {
            return Ok(OrderValue::Degenerate);
        }
        let k = |x: &Element, s: &Element| -> Result<Vec<i64>> {
            let mut v = self.k_coordinate(x)?;
            if let Some(o) = offset(s) {
                for (vi, oi) in v.iter_mut().zip(o) {
                    *vi -= oi;
                }
            }
            Ok(v)
        };
        let less = |x: &Element, sx: &Element, y: &Element, sy: &Element| -> Result<bool> {
            Ok(self.lin_cmp(&k(x, sx)?, &k(y, sy)?)? == Ordering::Less)
        };
        let pos = |b: bool| {
            if b {
                OrderValue::Positive
            } else {
                OrderValue::Negative
            }
        };
        match (sa == sb, sb == sc, sa == sc) {
            (false, false, false) => self.quotient_order.eval(&sa, &sb, &sc),
            (true, true, _) => {
                let ks = [k(a, &sa)?, k(b, &sb)?, k(c, &sc)?];
                let mut err = None;
                let v = orientation_by(&ks[0], &ks[1], &ks[2], |x, y| {
                    self.lin_cmp(x, y).unwrap_or_else(|e| {
                        err.get_or_insert(e);
                        Ordering::Equal
                    })
                });
                err.map_or(Ok(v), Err)
            }
            (true, false, _) => Ok(pos(less(a, &sa, b, &sb)?)),
            (false, true, _) => Ok(pos(less(b, &sb, c, &sc)?)),
            (false, false, true) => Ok(pos(less(c, &sc, a, &sa)?)),
        }
    }
}

impl CircularOrder for BlowdownData {
    fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        BlowdownData::eval(self, a, b, c)
    }
}

/// `(FᵀF)⁻¹Fᵀ` for an `n × r` matrix `F` of full column rank.
fn left_inverse(f: &[Vec<BigRational>], n: usize, r: usize) -> Vec<Vec<BigRational>> {
    if r == 0 {
        return Vec::new();
    }
    let gram: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..n).map(|k| &f[k][i] * &f[k][j]).sum())
                .collect()
        })
        .collect();
    // invert the Gram matrix by row reduction of [G | I]
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
    (0..r)
        .map(|i| {
            (0..n)
                .map(|k| (0..r).map(|j| &inv[i][j] * &f[k][j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::AlgebraicReal;

    fn example() -> BlowdownData {
        BlowdownData::new(
            2,
            0,
            vec![vec![1, 0], vec![0, 2]],
            LinearOrderSpec::translation(vec![AlgebraicReal::sqrt(2), AlgebraicReal::sqrt(3)])
                .unwrap(),
            CircularOrderSpec::finite_rotation(2, 1).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn fiber_tie_break() {
        let d = example();
        let v = |x: i64, y: i64| Element::vector(vec![x, y]);
        assert_eq!(d.sigma(&v(0, 1)).unwrap(), d.sigma(&v(1, 1)).unwrap());
        assert_eq!(d.k_coordinate(&v(1, 1)).unwrap(), vec![1, 0]);
        assert_eq!(d.k_coordinate(&v(3, -3)).unwrap(), vec![3, -2]);
        assert_eq!(
            d.eval(&v(0, 0), &v(0, 1), &v(1, 1)).unwrap(),
            OrderValue::Positive
        );
        // one fiber; kernel coordinates (0,0), (1,0), (0,1) give 0 < √2 < √3
        assert_eq!(
            d.eval(&v(0, 0), &v(1, 0), &v(0, 2)).unwrap(),
            OrderValue::Positive
        );
        assert_eq!(d.quotient_group(), GroupDescriptor::abelian(0, 2));
    }

    #[test]
    fn noncyclic_quotient_is_rejected() {
        let r = BlowdownData::new(
            2,
            0,
            vec![vec![2, 0], vec![0, 2]],
            LinearOrderSpec::standard(2),
            CircularOrderSpec::finite_rotation(2, 1).unwrap(),
        );
        assert!(matches!(r, Err(Error::InvalidOrder(_))));
        // Z × Z/2 modulo ⟨(2, 0)⟩ is Z/2 × Z/2
        let r = BlowdownData::new(
            1,
            2,
            vec![vec![2, 0]],
            LinearOrderSpec::standard(1),
            CircularOrderSpec::finite_rotation(2, 1).unwrap(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn torsion_ambient() {
        let d = BlowdownData::new(
            1,
            2,
            vec![vec![3, 0]],
            LinearOrderSpec::standard(1),
            CircularOrderSpec::finite_rotation(6, 5).unwrap(),
        )
        .unwrap();
        assert_eq!(d.quotient_group(), GroupDescriptor::abelian(0, 6));
        let g = d.group();
        let ball = g.ball(3);
        let images: std::collections::HashSet<Element> =
            ball.iter().map(|x| d.sigma(x).unwrap()).collect();
        assert_eq!(images.len(), 6);
    }

    #[test]
    fn json_round_trip() {
        let d = example();
        let c = CircularOrderSpec::Intertwined(Box::new(d));
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<CircularOrderSpec>(&text).unwrap(), c);
    }
}
