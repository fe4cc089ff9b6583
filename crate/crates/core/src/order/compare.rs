use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{CircularOrder, OrderValue};
use crate::error::Result;
use crate::group::{Element, GroupDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    FirstDisagreement { triple: [Element; 3] },
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        matches!(self, Agreement::Agree)
    }
}

/// Compares two orders on all ordered triples of `sample`, in
/// lexicographic index order.
pub fn agreement<A, B>(c1: &A, c2: &B, sample: &[Element]) -> Result<Agreement>
where
    A: CircularOrder + ?Sized,
    B: CircularOrder + ?Sized,
{
    let t1 = c1.tabulate(sample)?;
    let t2 = c2.tabulate(sample)?;
    let n = sample.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if t1.get(i, j, k) != t2.get(i, j, k) {
                    return Ok(Agreement::FirstDisagreement {
                        triple: [sample[i].clone(), sample[j].clone(), sample[k].clone()],
                    });
                }
            }
        }
    }
    Ok(Agreement::Agree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiInvariance {
    Ok { checked: u64, skipped: u64 },
    Witness { g: Element, triple: [Element; 3] },
}

/// Looks for `g` and a triple with `c(x₀g, x₁g, x₂g) ≠ c(x₀, x₁, x₂)`,
/// using only right translates inside `sample`.
pub fn bi_invariance_check<C: CircularOrder + ?Sized>(
    c: &C,
    group: &GroupDescriptor,
    sample: &[Element],
) -> Result<BiInvariance> {
    let table = c.tabulate(sample)?;
    let index: HashMap<&Element, usize> = sample.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let (mut checked, mut skipped) = (0, 0);
    let s = sample.len();
    for g in sample {
        if group.is_identity(g) {
            continue;
        }
        let trans: Vec<Option<usize>> = sample
            .iter()
            .map(|x| Ok(index.get(&group.multiply(x, g)?).copied()))
            .collect::<Result<_>>()?;
        for i in 0..s {
            for j in i + 1..s {
                for k in j + 1..s {
                    let (Some(a), Some(b), Some(d)) = (trans[i], trans[j], trans[k]) else {
                        skipped += 1;
                        continue;
                    };
                    checked += 1;
                    if table.get(a, b, d) != table.get(i, j, k) {
                        return Ok(BiInvariance::Witness {
                            g: g.clone(),
                            triple: [sample[i].clone(), sample[j].clone(), sample[k].clone()],
                        });
                    }
                }
            }
        }
    }
    Ok(BiInvariance::Ok { checked, skipped })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Linearity {
    /// `P = {g : c(g⁻¹, e, g) = +1}` is closed under products on the sample.
    Linear { cone: Vec<Element>, skipped: u64 },
    /// `g, h ∈ P` with `gh ∉ P`.
    GenuineWitness { g: Element, h: Element },
}

/// Tests whether `c` comes from a linear order, as far as `sample` can tell.
pub fn is_linear_on<C: CircularOrder + ?Sized>(
    c: &C,
    group: &GroupDescriptor,
    sample: &[Element],
) -> Result<Linearity> {
    let e = group.identity();
    let mut cone = Vec::new();
    for g in sample {
        if c.eval(&group.inverse(g)?, &e, g)? == OrderValue::Positive {
            cone.push(g.clone());
        }
    }
    let in_sample: std::collections::HashSet<&Element> = sample.iter().collect();
    let in_cone: std::collections::HashSet<&Element> = cone.iter().collect();
    let mut skipped = 0;
    for g in &cone {
        for h in &cone {
            let gh = group.multiply(g, h)?;
            if !in_sample.contains(&gh) {
                skipped += 1;
                continue;
            }
            if !in_cone.contains(&gh) {
                return Ok(Linearity::GenuineWitness {
                    g: g.clone(),
                    h: h.clone(),
                });
            }
        }
    }
    Ok(Linearity::Linear { cone, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{CircularOrderSpec, LinearOrderSpec};

    #[test]
    fn finite_rotations_disagree_early() {
        let g = GroupDescriptor::cyclic_table(5);
        let a = CircularOrderSpec::finite_rotation(5, 1).unwrap();
        let b = CircularOrderSpec::finite_rotation(5, 2).unwrap();
        assert_eq!(agreement(&a, &a, &g.ball(5)).unwrap(), Agreement::Agree);
        let e = Element::index;
        assert_eq!(
            agreement(&a, &b, &g.ball(5)).unwrap(),
            Agreement::FirstDisagreement {
                triple: [e(0), e(1), e(3)]
            }
        );
    }

    #[test]
    fn linearity_of_wrapped_order() {
        let g = GroupDescriptor::lattice(1);
        let c = CircularOrderSpec::linear_wrap(LinearOrderSpec::standard(1));
        match is_linear_on(&c, &g, &g.ball(3)).unwrap() {
            Linearity::Linear { cone, .. } => {
                assert_eq!(
                    cone,
                    vec![
                        Element::vector(vec![1]),
                        Element::vector(vec![2]),
                        Element::vector(vec![3])
                    ]
                );
            }
            other => panic!("{other:?}"),
        }
        let z4 = GroupDescriptor::cyclic_table(4);
        let f = CircularOrderSpec::finite_rotation(4, 1).unwrap();
        assert_eq!(
            is_linear_on(&f, &z4, &z4.ball(4)).unwrap(),
            Linearity::GenuineWitness {
                g: Element::index(1),
                h: Element::index(1)
            }
        );
    }

    #[test]
    fn abelian_orders_are_bi_invariant() {
        let g = GroupDescriptor::cyclic_table(7);
        let c = CircularOrderSpec::finite_rotation(7, 3).unwrap();
        assert!(matches!(
            bi_invariance_check(&c, &g, &g.ball(7)).unwrap(),
            BiInvariance::Ok { .. }
        ));
        assert!(matches!(
            bi_invariance_check(&c, &g, &[]).unwrap(),
            BiInvariance::Ok { checked: 0, .. }
        ));
    }
}
