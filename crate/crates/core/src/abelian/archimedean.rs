use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupDescriptor};
use crate::lattice;
use crate::order::CircularOrder;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Archimedean {
    /// Smallest `n` with `c(e, g, h) ≠ c(e, gⁿ, h)`.
    Witness { n: u64 },
    /// No flip for `n ≤ N`; not a proof that none exists.
    NoneUpTo { n: u64 },
}

/// Whether `g` and `h` are *not* both powers of one element, i.e. generate
/// a noncyclic subgroup.
pub fn common_root_free(group: &GroupDescriptor, g: &Element, h: &Element) -> Result<bool> {
    group.check(g)?;
    group.check(h)?;
    match group {
        GroupDescriptor::FiniteTable(t) => {
            let (Element::Index { idx: a }, Element::Index { idx: b }) = (g, h) else {
                unreachable!("checked above")
            };
            Ok(!t.is_cyclic_subgroup(&t.generated(&[*a, *b])))
        }
        GroupDescriptor::FgAbelian { .. } => {
            let (n, m) = group
                .abelian_shape()
                .ok_or_else(|| Error::Unsupported(format!("root test in {group}")))?;
            let lift = |x: &Element| -> Vec<i64> {
                let mut v = x.free_part().expect("abelian").to_vec();
                v.extend(x.residues().expect("abelian").iter().map(|&r| r as i64));
                v
            };
            let big_n = n + (m > 0) as usize;
            let mut gens = vec![lift(g), lift(h)];
            if m > 0 {
                let mut t = vec![0; big_n];
                t[n] = m as i64;
                gens.push(t);
            }
            let basis = lattice::hermite_normal_form(&gens, big_n);
            let rank = basis.len();
            if m == 0 {
                return Ok(rank > 1);
            }
            // ⟨g, h⟩ ≅ Z^rank / ⟨w⟩ where w are the coordinates of the torsion
            // relation in the Hermite basis
            let w = coordinates_in_basis(&basis, &gens[2]);
            let content = w.iter().fold(BigInt::from(0), |acc, x| acc.gcd(x));
            Ok(rank > 2 || (rank == 2 && content != BigInt::from(1)))
        }
        GroupDescriptor::Free { .. } => {
            // in a free group, commuting elements are powers of a common one
            Ok(group.multiply(g, h)? != group.multiply(h, g)?)
        }
        GroupDescriptor::FreeProduct { .. } => {
            Err(Error::Unsupported("root test in a free product".into()))
        }
    }
}

fn coordinates_in_basis(basis: &[Vec<i64>], v: &[i64]) -> Vec<BigInt> {
    let r = basis.len();
    let dim = v.len();
    // solve Σ c_i basis_i = v over Q; the solution is integral
    let mut aug: Vec<Vec<BigRational>> = (0..dim)
        .map(|j| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b[j].into()))
                .collect();
            row.push(BigRational::from_integer(v[j].into()));
            row
        })
        .collect();
    let pivots = lattice::rref(&mut aug, r + 1);
    let mut c = vec![BigInt::from(0); r];
    for (row, &p) in pivots.iter().enumerate() {
        if p < r {
            c[p] = aug[row][r].to_integer();
        }
    }
    c
}

/// Searches for the smallest `n ≤ limit` with `c(e, g, h) ≠ c(e, gⁿ, h)`.
pub fn archimedean_witness<C: CircularOrder + ?Sized>(
    c: &C,
    group: &GroupDescriptor,
    g: &Element,
    h: &Element,
    limit: u64,
) -> Result<Archimedean> {
    if group.is_identity(g) || group.is_identity(h) {
        return Err(Error::Precondition("g and h must be nonidentity".into()));
    }
    if !common_root_free(group, g, h)? {
        return Err(Error::Precondition(format!(
            "{g} and {h} are powers of a common element"
        )));
    }
    let e = group.identity();
    let base = c.eval(&e, g, h)?;
    let mut power = g.clone();
    for n in 2..=limit {
        power = group.multiply(&power, g)?;
        if c.eval(&e, &power, h)? != base {
            return Ok(Archimedean::Witness { n });
        }
    }
    Ok(Archimedean::NoneUpTo { n: limit })
}
