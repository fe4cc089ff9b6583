//! Groups as equality-decidable oracles: normal forms, the group law, ball
//! enumeration and the torsion obstruction.
//!
//! Equality is decided only through normal forms. Arbitrary finitely
//! presented groups are supported only through a user-supplied finite
//! multiplication table (for instance a finite quotient).

mod element;
mod table;

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use element::{Element, Side};
pub use table::FiniteTable;

use crate::error::{mismatch, Error, Result};

/// A group with a decidable word problem and a fixed finite generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupDescriptor {
    FiniteTable(FiniteTable),
    /// `Z^rank × Z/t_1 × … × Z/t_k`; an empty torsion list is torsion-free.
    FgAbelian {
        rank: usize,
        #[serde(default, with = "torsion_list")]
        torsion: Vec<u64>,
    },
    Free {
        rank: usize,
    },
    FreeProduct {
        left: Box<GroupDescriptor>,
        right: Box<GroupDescriptor>,
    },
}

/// Outcome of [`GroupDescriptor::torsion_cyclic_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionCheck {
    CyclicTorsion {
        order: u64,
    },
    /// Two torsion elements generating a noncyclic subgroup.
    NonCyclicWitness {
        a: Element,
        b: Element,
    },
}

mod torsion_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        One(u64),
        Many(Vec<u64>),
    }

    pub fn serialize<S: Serializer>(t: &[u64], s: S) -> Result<S::Ok, S::Error> {
        match t {
            [] => Repr::One(0).serialize(s),
            [m] => Repr::One(*m).serialize(s),
            many => Repr::Many(many.to_vec()).serialize(s),
        }
    }

    /// `0` and `1` mean no torsion; factors equal to 1 are dropped.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u64>, D::Error> {
        let v = match Repr::deserialize(d)? {
            Repr::One(m) => vec![m],
            Repr::Many(v) => v,
        };
        if v.len() > 1 && v.contains(&0) {
            return Err(serde::de::Error::custom("torsion factors must be positive"));
        }
        Ok(v.into_iter().filter(|&m| m > 1).collect())
    }
}

impl GroupDescriptor {
    pub fn cyclic_table(n: usize) -> Self {
        GroupDescriptor::FiniteTable(FiniteTable::cyclic(n))
    }

    /// `Z^rank`.
    pub fn lattice(rank: usize) -> Self {
        GroupDescriptor::FgAbelian {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^rank × Z/m`; `m ≤ 1` means torsion-free.
    pub fn abelian(rank: usize, m: u64) -> Self {
        GroupDescriptor::FgAbelian {
            rank,
            torsion: if m > 1 { vec![m] } else { Vec::new() },
        }
    }

    pub fn free(rank: usize) -> Self {
        GroupDescriptor::Free { rank }
    }

    pub fn free_product(left: GroupDescriptor, right: GroupDescriptor) -> Self {
        GroupDescriptor::FreeProduct {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Structural validation beyond what deserialization enforces.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupDescriptor::FiniteTable(_) => Ok(()),
            GroupDescriptor::FgAbelian { torsion, .. } => {
                if torsion.iter().any(|&m| m < 2) {
                    return Err(Error::InvalidGroup("torsion factors must be ≥ 2".into()));
                }
                Ok(())
            }
            GroupDescriptor::Free { rank } => {
                if *rank == 0 {
                    return Err(Error::InvalidGroup("free group needs rank ≥ 1".into()));
                }
                Ok(())
            }
            GroupDescriptor::FreeProduct { left, right } => {
                left.validate()?;
                right.validate()
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            GroupDescriptor::FiniteTable(t) => t.len() == 1,
            GroupDescriptor::FgAbelian { rank, torsion } => *rank == 0 && torsion.is_empty(),
            GroupDescriptor::Free { .. } => false,
            GroupDescriptor::FreeProduct { left, right } => left.is_trivial() && right.is_trivial(),
        }
    }

    /// Number of elements for finite groups.
    pub fn finite_order(&self) -> Option<u64> {
        match self {
            GroupDescriptor::FiniteTable(t) => Some(t.len() as u64),
            GroupDescriptor::FgAbelian { rank: 0, torsion } => Some(torsion.iter().product()),
            GroupDescriptor::FreeProduct { left, right } if left.is_trivial() => {
                right.finite_order()
            }
            GroupDescriptor::FreeProduct { left, right } if right.is_trivial() => {
                left.finite_order()
            }
            _ => None,
        }
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn fingerprint(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("descriptor serializes");
        hex::encode(Sha256::digest(bytes))
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupDescriptor::FiniteTable(t) => Element::index(t.identity()),
            GroupDescriptor::FgAbelian { rank, torsion } => Element::Abelian {
                vec: vec![0; *rank],
                t: vec![0; torsion.len()],
            },
            GroupDescriptor::Free { .. } => Element::free(Vec::new()),
            GroupDescriptor::FreeProduct { .. } => Element::word(Vec::new()),
        }
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        *a == self.identity()
    }

    /// Checks that `a` is a normal-form element of this group.
    pub fn check(&self, a: &Element) -> Result<()> {
        let ok = match (self, a) {
            (GroupDescriptor::FiniteTable(t), Element::Index { idx }) => *idx < t.len(),
            (GroupDescriptor::FgAbelian { rank, torsion }, Element::Abelian { vec, t }) => {
                vec.len() == *rank
                    && t.len() == torsion.len()
                    && t.iter().zip(torsion).all(|(r, m)| r < m)
            }
            (GroupDescriptor::Free { rank }, Element::Free { letters }) => {
                letters.iter().all(|&(g, k)| g < *rank && k != 0)
                    && letters.windows(2).all(|w| w[0].0 != w[1].0)
            }
            (GroupDescriptor::FreeProduct { left, right }, Element::Word { word }) => {
                if word.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(Error::NotReduced(a.to_string()));
                }
                for (side, x) in word {
                    let factor = if *side == Side::Left { left } else { right };
                    factor.check(x)?;
                    if factor.is_identity(x) {
                        return Err(Error::NotReduced(a.to_string()));
                    }
                }
                true
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(mismatch(a, self))
        }
    }

    /// Brings an element given in loose form (unreduced words, residues out
    /// of range, a bare `t: 0` for torsion-free groups) into normal form.
    pub fn normalize(&self, a: &Element) -> Result<Element> {
        match (self, a) {
            (GroupDescriptor::FiniteTable(_), Element::Index { .. }) => {
                self.check(a)?;
                Ok(a.clone())
            }
            (GroupDescriptor::FgAbelian { rank, torsion }, Element::Abelian { vec, t }) => {
                if vec.len() != *rank {
                    return Err(mismatch(a, self));
                }
                let t = if torsion.is_empty() && t.iter().all(|&r| r == 0) {
                    Vec::new()
                } else if t.len() == torsion.len() {
                    t.iter().zip(torsion).map(|(r, m)| r % m).collect()
                } else if t.is_empty() {
                    vec![0; torsion.len()]
                } else {
                    return Err(mismatch(a, self));
                };
                Ok(Element::Abelian {
                    vec: vec.clone(),
                    t,
                })
            }
            (GroupDescriptor::Free { rank }, Element::Free { letters }) => {
                let mut out = Vec::new();
                for &(g, k) in letters {
                    if g >= *rank {
                        return Err(mismatch(a, self));
                    }
                    push_free_letter(&mut out, g, k);
                }
                Ok(Element::free(out))
            }
            (GroupDescriptor::FreeProduct { left, right }, Element::Word { word }) => {
                let mut out = Vec::new();
                for (side, x) in word {
                    let factor = if *side == Side::Left { left } else { right };
                    let x = factor.normalize(x)?;
                    push_product_letter(left, right, &mut out, *side, x)?;
                }
                Ok(Element::word(out))
            }
            _ => Err(mismatch(a, self)),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        match (self, a, b) {
            (
                GroupDescriptor::FiniteTable(t),
                Element::Index { idx: x },
                Element::Index { idx: y },
            ) if *x < t.len() && *y < t.len() => Ok(Element::index(t.mul(*x, *y))),
            (
                GroupDescriptor::FgAbelian { rank, torsion },
                Element::Abelian { vec: u, t: s },
                Element::Abelian { vec: v, t: r },
            ) if u.len() == *rank
                && v.len() == *rank
                && s.len() == torsion.len()
                && r.len() == torsion.len() =>
            {
                Ok(Element::Abelian {
                    vec: u.iter().zip(v).map(|(x, y)| x + y).collect(),
                    t: s.iter()
                        .zip(r)
                        .zip(torsion)
                        .map(|((x, y), m)| (x + y) % m)
                        .collect(),
                })
            }
            (
                GroupDescriptor::Free { .. },
                Element::Free { letters: u },
                Element::Free { letters: v },
            ) => {
                self.check(a)?;
                self.check(b)?;
                let mut out = u.clone();
                for &(g, k) in v {
                    push_free_letter(&mut out, g, k);
                }
                Ok(Element::free(out))
            }
            (
                GroupDescriptor::FreeProduct { left, right },
                Element::Word { word: u },
                Element::Word { word: v },
            ) => {
                self.check(a)?;
                self.check(b)?;
                let mut out = u.clone();
                for (side, x) in v {
                    push_product_letter(left, right, &mut out, *side, x.clone())?;
                }
                Ok(Element::word(out))
            }
            (
                _,
                Element::Index { .. }
                | Element::Abelian { .. }
                | Element::Free { .. }
                | Element::Word { .. },
                _,
            ) => {
                self.check(a)?;
                Err(mismatch(b, self))
            }
        }
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(match (self, a) {
            (GroupDescriptor::FiniteTable(t), Element::Index { idx }) => {
                Element::index(t.inv(*idx))
            }
            (GroupDescriptor::FgAbelian { torsion, .. }, Element::Abelian { vec, t }) => {
                Element::Abelian {
                    vec: vec.iter().map(|x| -x).collect(),
                    t: t.iter().zip(torsion).map(|(r, m)| (m - r) % m).collect(),
                }
            }
            (GroupDescriptor::Free { .. }, Element::Free { letters }) => {
                Element::free(letters.iter().rev().map(|&(g, k)| (g, -k)).collect())
            }
            (GroupDescriptor::FreeProduct { left, right }, Element::Word { word }) => {
                let mut out = Vec::with_capacity(word.len());
                for (side, x) in word.iter().rev() {
                    let factor = if *side == Side::Left { left } else { right };
                    out.push((*side, factor.inverse(x)?));
                }
                Element::word(out)
            }
            _ => unreachable!("check passed"),
        })
    }

    /// `a⁻¹ b`
    pub fn left_divide(&self, a: &Element, b: &Element) -> Result<Element> {
        self.multiply(&self.inverse(a)?, b)
    }

    /// `a^n` for any integer `n`.
    pub fn pow(&self, a: &Element, n: i64) -> Result<Element> {
        let base = if n < 0 { self.inverse(a)? } else { a.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = self.multiply(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    /// The fixed generating set, closed under inverses, in enumeration
    /// order: standard basis vectors and their negatives, then torsion
    /// generators; all non-identity table entries; free generators and their
    /// inverses; for free products the left factor's generators, then the
    /// right's.
    pub fn generators(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        match self {
            GroupDescriptor::FiniteTable(t) => {
                gens.extend(
                    (0..t.len())
                        .filter(|&i| i != t.identity())
                        .map(Element::index),
                );
            }
            GroupDescriptor::FgAbelian { rank, torsion } => {
                for i in 0..*rank {
                    for s in [1, -1] {
                        let mut v = vec![0; *rank];
                        v[i] = s;
                        gens.push(Element::Abelian {
                            vec: v,
                            t: vec![0; torsion.len()],
                        });
                    }
                }
                for (j, m) in torsion.iter().enumerate() {
                    for r in [1, m - 1] {
                        let mut t = vec![0; torsion.len()];
                        t[j] = r;
                        let g = Element::Abelian {
                            vec: vec![0; *rank],
                            t,
                        };
                        if !gens.contains(&g) {
                            gens.push(g);
                        }
                    }
                }
            }
            GroupDescriptor::Free { rank } => {
                for g in 0..*rank {
                    gens.push(Element::free(vec![(g, 1)]));
                    gens.push(Element::free(vec![(g, -1)]));
                }
            }
            GroupDescriptor::FreeProduct { left, right } => {
                gens.extend(left.generators().into_iter().map(Element::left));
                gens.extend(right.generators().into_iter().map(Element::right));
            }
        }
        gens
    }

    /// All distinct elements of word length `≤ radius`, identity first, in
    /// shortlex order of their least spelling over [`Self::generators`].
    pub fn ball(&self, radius: usize) -> Vec<Element> {
        self.ball_layers(radius).into_iter().flatten().collect()
    }

    /// Elements grouped by exact word length `0..=radius`.
    pub fn ball_layers(&self, radius: usize) -> Vec<Vec<Element>> {
        let gens = self.generators();
        let id = self.identity();
        let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
        let mut layers = vec![vec![id]];
        for _ in 0..radius {
            let mut next = Vec::new();
            for x in layers.last().expect("nonempty") {
                for g in &gens {
                    let y = self.multiply(x, g).expect("generators belong to the group");
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layers.push(next);
        }
        layers
    }

    /// Torsion obstruction: a circularly orderable group has cyclic torsion.
    pub fn torsion_cyclic_check(&self) -> Result<TorsionCheck> {
        match self {
            GroupDescriptor::FiniteTable(t) => {
                let all: Vec<usize> = (0..t.len()).collect();
                if t.is_cyclic_subgroup(&all) {
                    return Ok(TorsionCheck::CyclicTorsion {
                        order: t.len() as u64,
                    });
                }
                for a in 0..t.len() {
                    for b in a + 1..t.len() {
                        if !t.is_cyclic_subgroup(&t.generated(&[a, b])) {
                            return Ok(TorsionCheck::NonCyclicWitness {
                                a: Element::index(a),
                                b: Element::index(b),
                            });
                        }
                    }
                }
                unreachable!("every 2-generated subgroup cyclic implies the group is cyclic")
            }
            GroupDescriptor::FgAbelian { rank, torsion } => {
                for i in 0..torsion.len() {
                    for j in i + 1..torsion.len() {
                        let g = torsion[i].gcd(&torsion[j]);
                        if g > 1 {
                            let p = smallest_prime_factor(g);
                            let unit = |k: usize, m: u64| {
                                let mut t = vec![0; torsion.len()];
                                t[k] = m / p;
                                Element::Abelian {
                                    vec: vec![0; *rank],
                                    t,
                                }
                            };
                            return Ok(TorsionCheck::NonCyclicWitness {
                                a: unit(i, torsion[i]),
                                b: unit(j, torsion[j]),
                            });
                        }
                    }
                }
                Ok(TorsionCheck::CyclicTorsion {
                    order: torsion.iter().product(),
                })
            }
            GroupDescriptor::Free { .. } => Ok(TorsionCheck::CyclicTorsion { order: 1 }),
            GroupDescriptor::FreeProduct { left, right } => {
                for (side, factor) in [(Side::Left, left), (Side::Right, right)] {
                    match factor.torsion_cyclic_check() {
                        Ok(TorsionCheck::NonCyclicWitness { a, b }) => {
                            let lift = |x: Element| Element::word(vec![(side, x)]);
                            return Ok(TorsionCheck::NonCyclicWitness {
                                a: lift(a),
                                b: lift(b),
                            });
                        }
                        Ok(TorsionCheck::CyclicTorsion { order: 1 }) => {}
                        Ok(TorsionCheck::CyclicTorsion { .. }) | Err(_) => {
                            return Err(Error::Unsupported(
                                "torsion of a free product with torsion factors is not a subgroup"
                                    .into(),
                            ))
                        }
                    }
                }
                Ok(TorsionCheck::CyclicTorsion { order: 1 })
            }
        }
    }

    /// Single torsion modulus of an abelian group whose torsion is cyclic
    /// and given by at most one factor (0 when torsion-free).
    pub fn abelian_shape(&self) -> Option<(usize, u64)> {
        match self {
            GroupDescriptor::FgAbelian { rank, torsion } => match torsion.as_slice() {
                [] => Some((*rank, 0)),
                [m] => Some((*rank, *m)),
                _ => None,
            },
            _ => None,
        }
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..)
        .find(|p| n.is_multiple_of(*p) || p * p > n)
        .filter(|p| n.is_multiple_of(*p))
        .unwrap_or(n)
}

fn push_free_letter(out: &mut Vec<(usize, i64)>, g: usize, k: i64) {
    if k == 0 {
        return;
    }
    match out.last_mut() {
        Some((h, e)) if *h == g => {
            *e += k;
            if *e == 0 {
                out.pop();
            }
        }
        _ => out.push((g, k)),
    }
}

fn push_product_letter(
    left: &GroupDescriptor,
    right: &GroupDescriptor,
    out: &mut Vec<(Side, Element)>,
    side: Side,
    x: Element,
) -> Result<()> {
    let factor = if side == Side::Left { left } else { right };
    if factor.is_identity(&x) {
        return Ok(());
    }
    match out.last() {
        Some((s, y)) if *s == side => {
            let z = factor.multiply(y, &x)?;
            out.pop();
            if !factor.is_identity(&z) {
                out.push((side, z));
            }
        }
        _ => out.push((side, x)),
    }
    Ok(())
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::FiniteTable(t) => write!(f, "table group of order {}", t.len()),
            GroupDescriptor::FgAbelian { rank, torsion } => {
                write!(f, "Z^{rank}")?;
                for m in torsion {
                    write!(f, " × Z/{m}")?;
                }
                Ok(())
            }
            GroupDescriptor::Free { rank } => write!(f, "F_{rank}"),
            GroupDescriptor::FreeProduct { left, right } => write!(f, "({left}) * ({right})"),
        }
    }
}

/// Parses an element from JSON and brings it into normal form for `group`.
///
/// A bare integer `n` is accepted as shorthand for `{"idx": n}` in a finite
/// table, `{"vec": [n]}` in `Z`, and the residue `n` in `Z/m`; `{"idx": n}`
/// is also accepted for `Z/m`. A bare integer array is a vector in `Z^n`.
/// Letters of a free-product word are parsed against their factor.
pub fn element_from_json(group: &GroupDescriptor, value: &serde_json::Value) -> Result<Element> {
    let cyclic = match group {
        GroupDescriptor::FgAbelian { rank: 0, torsion } if torsion.len() == 1 => Some(torsion[0]),
        _ => None,
    };
    if let Some(n) = value.as_i64() {
        return match group {
            GroupDescriptor::FiniteTable(_) if n >= 0 => {
                group.normalize(&Element::index(n as usize))
            }
            GroupDescriptor::FgAbelian { rank: 1, torsion } if torsion.is_empty() => {
                Ok(Element::vector(vec![n]))
            }
            _ => match cyclic {
                Some(m) => Ok(Element::abelian(vec![], n.rem_euclid(m as i64) as u64)),
                None => Err(Error::Parse(format!(
                    "bare integer {n} is not an element of {group}"
                ))),
            },
        };
    }
    if let (Some(word), GroupDescriptor::FreeProduct { left, right }) =
        (value.get("word").and_then(|w| w.as_array()), group)
    {
        let mut letters = Vec::with_capacity(word.len());
        for item in word {
            let (side, letter) = match item.as_array().map(Vec::as_slice) {
                Some([side, letter]) => (side, letter),
                _ => return Err(Error::Parse(format!("{item} is not a [side, letter] pair"))),
            };
            let side: Side =
                serde_json::from_value(side.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            let factor = if side == Side::Left { left } else { right };
            letters.push((side, element_from_json(factor, letter)?));
        }
        return group.normalize(&Element::word(letters));
    }
    if let (Some(xs), GroupDescriptor::FgAbelian { torsion, .. }) = (value.as_array(), group) {
        if torsion.is_empty() {
            let v = xs
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| Error::Parse(format!("{x} is not an integer")))
                })
                .collect::<Result<Vec<_>>>()?;
            return group.normalize(&Element::vector(v));
        }
    }
    let e: Element =
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    match (&e, cyclic) {
        (Element::Index { idx }, Some(m)) => Ok(Element::abelian(vec![], *idx as u64 % m)),
        _ => group.normalize(&e),
    }
}
