use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Which factor of a free product a letter comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

impl<'de> Deserialize<'de> for Side {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "L" => Ok(Side::Left),
            "R" => Ok(Side::Right),
            other => Err(serde::de::Error::custom(format!(
                "expected \"L\" or \"R\", found {other:?}"
            ))),
        }
    }
}

/// A group element in normal form. The variant must match the group it is
/// used with; see [`GroupDescriptor`](super::GroupDescriptor).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    /// Index into a finite multiplication table.
    Index { idx: usize },
    /// Integer vector plus torsion residues, one per torsion factor.
    Abelian {
        vec: Vec<i64>,
        #[serde(default, with = "residues")]
        t: Vec<u64>,
    },
    /// Alternating word in a free product; letters are non-identity factor
    /// elements.
    Word { word: Vec<(Side, Element)> },
    /// Reduced word in a free group as `(generator, exponent)` syllables.
    Free { letters: Vec<(usize, i64)> },
}

impl Element {
    pub fn index(i: usize) -> Self {
        Element::Index { idx: i }
    }

    /// Element of a torsion-free `Z^n`.
    pub fn vector(v: impl Into<Vec<i64>>) -> Self {
        Element::Abelian {
            vec: v.into(),
            t: Vec::new(),
        }
    }

    /// Element of `Z^n × Z/m` with `m > 0`.
    pub fn abelian(v: impl Into<Vec<i64>>, t: u64) -> Self {
        Element::Abelian {
            vec: v.into(),
            t: vec![t],
        }
    }

    pub fn word(letters: Vec<(Side, Element)>) -> Self {
        Element::Word { word: letters }
    }

    pub fn free(letters: Vec<(usize, i64)>) -> Self {
        Element::Free { letters }
    }

    pub fn left(e: Element) -> Self {
        Element::Word {
            word: vec![(Side::Left, e)],
        }
    }

    pub fn right(e: Element) -> Self {
        Element::Word {
            word: vec![(Side::Right, e)],
        }
    }

    pub fn as_word(&self) -> Option<&[(Side, Element)]> {
        match self {
            Element::Word { word } => Some(word),
            _ => None,
        }
    }

    pub fn free_part(&self) -> Option<&[i64]> {
        match self {
            Element::Abelian { vec, .. } => Some(vec),
            _ => None,
        }
    }

    pub fn residues(&self) -> Option<&[u64]> {
        match self {
            Element::Abelian { t, .. } => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index { idx } => write!(f, "#{idx}"),
            Element::Abelian { vec, t } => {
                write!(f, "(")?;
                for (i, x) in vec.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                for r in t {
                    write!(f, ";{r}")?;
                }
                write!(f, ")")
            }
            Element::Word { word } => {
                if word.is_empty() {
                    return write!(f, "e");
                }
                for (i, (side, x)) in word.iter().enumerate() {
                    if i > 0 {
                        write!(f, "·")?;
                    }
                    let tag = if *side == Side::Left { 'L' } else { 'R' };
                    write!(f, "{tag}{x}")?;
                }
                Ok(())
            }
            Element::Free { letters } => {
                if letters.is_empty() {
                    return write!(f, "e");
                }
                for (g, k) in letters {
                    write!(f, "x{g}^{k}")?;
                }
                Ok(())
            }
        }
    }
}

/// `t` serializes as a bare integer for zero or one torsion factor and as a
/// list otherwise. A bare `0` deserializes to `[0]`; groups canonicalize.
mod residues {
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
            [x] => Repr::One(*x).serialize(s),
            many => Repr::Many(many.to_vec()).serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u64>, D::Error> {
        Ok(match Repr::deserialize(d)? {
            Repr::One(x) => vec![x],
            Repr::Many(v) => v,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let a = Element::abelian(vec![1, -2], 3);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"vec":[1,-2],"t":3}"#
        );
        let w = Element::word(vec![
            (Side::Left, Element::vector(vec![1])),
            (Side::Right, Element::index(2)),
        ]);
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(
            text,
            r#"{"word":[["L",{"vec":[1],"t":0}],["R",{"idx":2}]]}"#
        );
        let f = Element::free(vec![(0, 2), (1, -1)]);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"letters":[[0,2],[1,-1]]}"#
        );
        let back: Element = serde_json::from_str(r#"{"idx":4}"#).unwrap();
        assert_eq!(back, Element::index(4));
        let back: Element = serde_json::from_str(r#"{"vec":[0],"t":[1,2]}"#).unwrap();
        assert_eq!(back.residues().unwrap(), &[1, 2]);
    }
}
