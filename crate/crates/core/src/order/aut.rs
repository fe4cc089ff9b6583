use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{CircularOrder, CircularOrderSpec, OrderValue};
use crate::error::{mismatch, Error, Result};
use crate::group::{Element, GroupDescriptor};
use crate::lattice;

/// An automorphism of `Z^n × Z/m` or of a finite table group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Automorphism {
    /// `(v, t) ↦ (M v, hom·v + unit·t mod m)`.
    Abelian {
        matrix: Vec<Vec<i64>>,
        #[serde(default)]
        modulus: u64,
        #[serde(default)]
        hom: Vec<u64>,
        #[serde(default = "one")]
        unit: u64,
    },
    /// `idx ↦ perm[idx]`.
    Table { perm: Vec<usize> },
}

fn one() -> u64 {
    1
}

impl Automorphism {
    /// Automorphism of `Z^n` given by an integer matrix.
    pub fn matrix(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        let a = Automorphism::Abelian {
            matrix,
            modulus: 0,
            hom: Vec::new(),
            unit: 1,
        };
        a.check(&GroupDescriptor::lattice(n))?;
        Ok(a)
    }

    pub fn identity_on(group: &GroupDescriptor) -> Result<Self> {
        if let GroupDescriptor::FiniteTable(t) = group {
            return Ok(Automorphism::Table {
                perm: (0..t.len()).collect(),
            });
        }
        let (n, m) = group
            .abelian_shape()
            .ok_or_else(|| Error::Unsupported(format!("automorphisms of {group}")))?;
        Ok(Automorphism::Abelian {
            matrix: lattice::identity(n),
            modulus: m,
            hom: vec![0; if m > 0 { n } else { 0 }],
            unit: 1,
        })
    }

    /// Checks that the data defines an automorphism of `group`.
    pub fn check(&self, group: &GroupDescriptor) -> Result<()> {
        match (self, group) {
            (Automorphism::Table { perm }, GroupDescriptor::FiniteTable(t)) => {
                let n = t.len();
                let mut seen = vec![false; n];
                if perm.len() != n
                    || perm
                        .iter()
                        .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
                {
                    return Err(Error::InvalidAutomorphism(
                        "not a permutation of the table".into(),
                    ));
                }
                for a in 0..n {
                    for b in 0..n {
                        if perm[t.mul(a, b)] != t.mul(perm[a], perm[b]) {
                            return Err(Error::InvalidAutomorphism(format!(
                                "not a homomorphism at ({a}, {b})"
                            )));
                        }
                    }
                }
                Ok(())
            }
            (
                Automorphism::Abelian {
                    matrix,
                    modulus,
                    hom,
                    unit,
                },
                _,
            ) => {
                let (n, m) = group.abelian_shape().ok_or_else(|| {
                    Error::InvalidAutomorphism(format!("matrix automorphism on {group}"))
                })?;
                if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidAutomorphism(format!(
                        "matrix must be {n}×{n}"
                    )));
                }
                let det = lattice::determinant(matrix);
                if det.abs() != 1 {
                    return Err(Error::InvalidAutomorphism(format!(
                        "determinant {det} is not ±1"
                    )));
                }
                if *modulus != m {
                    return Err(Error::InvalidAutomorphism(format!(
                        "modulus {modulus}, group torsion {m}"
                    )));
                }
                if m > 0 {
                    if hom.len() != n || hom.iter().any(|&h| h >= m) {
                        return Err(Error::InvalidAutomorphism(format!(
                            "hom must have {n} residues mod {m}"
                        )));
                    }
                    if *unit >= m || unit.gcd(&m) != 1 {
                        return Err(Error::InvalidAutomorphism(format!(
                            "{unit} is not a unit mod {m}"
                        )));
                    }
                } else if !hom.is_empty() || *unit != 1 {
                    return Err(Error::InvalidAutomorphism(
                        "torsion data on a torsion-free group".into(),
                    ));
                }
                Ok(())
            }
            _ => Err(Error::InvalidAutomorphism(format!(
                "permutation automorphism on {group}"
            ))),
        }
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        match (self, a) {
            (Automorphism::Table { perm }, Element::Index { idx }) if *idx < perm.len() => {
                Ok(Element::index(perm[*idx]))
            }
            (
                Automorphism::Abelian {
                    matrix,
                    modulus,
                    hom,
                    unit,
                },
                Element::Abelian { vec, t },
            ) if vec.len() == matrix.len() && t.len() == (*modulus > 0) as usize => {
                let v = lattice::mat_vec(matrix, vec);
                if *modulus == 0 {
                    return Ok(Element::vector(v));
                }
                let m = *modulus as i128;
                let mut s = *unit as i128 * t[0] as i128;
                for (h, x) in hom.iter().zip(vec) {
                    s += *h as i128 * *x as i128;
                }
                Ok(Element::abelian(v, s.rem_euclid(m) as u64))
            }
            _ => Err(mismatch(a, &"the automorphism's group")),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        match (self, other) {
            (Automorphism::Table { perm: p }, Automorphism::Table { perm: q })
                if p.len() == q.len() =>
            {
                Ok(Automorphism::Table {
                    perm: q.iter().map(|&x| p[x]).collect(),
                })
            }
            (
                Automorphism::Abelian {
                    matrix: ma,
                    modulus,
                    hom: ha,
                    unit: ua,
                },
                Automorphism::Abelian {
                    matrix: mb,
                    modulus: mod_b,
                    hom: hb,
                    unit: ub,
                },
            ) if modulus == mod_b && ma.len() == mb.len() => {
                let matrix = lattice::mat_mul(ma, mb);
                if *modulus == 0 {
                    return Ok(Automorphism::Abelian {
                        matrix,
                        modulus: 0,
                        hom: Vec::new(),
                        unit: 1,
                    });
                }
                let m = *modulus as i128;
                let n = ma.len();
                // hom = Mbᵀ·ha + ua·hb
                let hom = (0..n)
                    .map(|j| {
                        let mut s = *ua as i128 * hb[j] as i128;
                        for (i, h) in ha.iter().enumerate() {
                            s += mb[i][j] as i128 * *h as i128;
                        }
                        s.rem_euclid(m) as u64
                    })
                    .collect();
                let unit = (*ua as i128 * *ub as i128).rem_euclid(m) as u64;
                Ok(Automorphism::Abelian {
                    matrix,
                    modulus: *modulus,
                    hom,
                    unit,
                })
            }
            _ => Err(Error::InvalidAutomorphism(
                "composing automorphisms of different groups".into(),
            )),
        }
    }

    pub fn inverse(&self) -> Result<Automorphism> {
        match self {
            Automorphism::Table { perm } => {
                let mut inv = vec![0; perm.len()];
                for (i, &p) in perm.iter().enumerate() {
                    inv[p] = i;
                }
                Ok(Automorphism::Table { perm: inv })
            }
            Automorphism::Abelian {
                matrix,
                modulus,
                hom,
                unit,
            } => {
                let mi = lattice::unimodular_inverse(matrix)
                    .ok_or_else(|| Error::InvalidAutomorphism("matrix is not unimodular".into()))?;
                if *modulus == 0 {
                    return Ok(Automorphism::Abelian {
                        matrix: mi,
                        modulus: 0,
                        hom: Vec::new(),
                        unit: 1,
                    });
                }
                let m = *modulus as i128;
                let ui = mod_inverse(*unit as i128, m).ok_or_else(|| {
                    Error::InvalidAutomorphism(format!("{unit} is not a unit mod {modulus}"))
                })?;
                // t = ui·(t' − hom·(Mi v')), so hom' = −ui·Miᵀ·hom
                let n = matrix.len();
                let hom_inv = (0..n)
                    .map(|j| {
                        let mut s: i128 = 0;
                        for (i, h) in hom.iter().enumerate() {
                            s += mi[i][j] as i128 * *h as i128;
                        }
                        (-ui * s).rem_euclid(m) as u64
                    })
                    .collect();
                Ok(Automorphism::Abelian {
                    matrix: mi,
                    modulus: *modulus,
                    hom: hom_inv,
                    unit: ui as u64,
                })
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Automorphism::Table { perm } => perm.iter().enumerate().all(|(i, &p)| i == p),
            Automorphism::Abelian {
                matrix,
                hom,
                unit,
                modulus,
            } => {
                *matrix == lattice::identity::<i64>(matrix.len())
                    && hom.iter().all(|&h| h == 0)
                    && (*modulus == 0 || *unit == 1)
            }
        }
    }
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let e = a.extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// The order `(ρ·c)(x, y, z) = c(ρ⁻¹x, ρ⁻¹y, ρ⁻¹z)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TransformedRepr", into = "TransformedRepr")]
pub struct Transformed {
    aut: Automorphism,
    inverse: Automorphism,
    inner: CircularOrderSpec,
}

#[derive(Serialize, Deserialize)]
struct TransformedRepr {
    aut: Automorphism,
    inner: CircularOrderSpec,
}

impl TryFrom<TransformedRepr> for Transformed {
    type Error = Error;
    fn try_from(r: TransformedRepr) -> Result<Self> {
        if let Some(g) = r.inner.group() {
            r.aut.check(&g)?;
        }
        Ok(Transformed {
            inverse: r.aut.inverse()?,
            aut: r.aut,
            inner: r.inner,
        })
    }
}

impl From<Transformed> for TransformedRepr {
    fn from(t: Transformed) -> Self {
        TransformedRepr {
            aut: t.aut,
            inner: t.inner,
        }
    }
}

impl Transformed {
    pub fn aut(&self) -> &Automorphism {
        &self.aut
    }

    pub fn inner(&self) -> &CircularOrderSpec {
        &self.inner
    }

    pub(crate) fn inverse(&self) -> &Automorphism {
        &self.inverse
    }

    pub fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        self.inner.eval(
            &self.inverse.apply(a)?,
            &self.inverse.apply(b)?,
            &self.inverse.apply(c)?,
        )
    }
}

/// Pushes `c` forward along `rho`.
pub fn aut_act(rho: &Automorphism, c: &CircularOrderSpec) -> Result<CircularOrderSpec> {
    let t = Transformed::try_from(TransformedRepr {
        aut: rho.clone(),
        inner: c.clone(),
    })?;
    Ok(CircularOrderSpec::Transformed(Box::new(t)))
}
