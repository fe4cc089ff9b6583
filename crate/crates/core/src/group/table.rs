use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct FiniteTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inverses: Option<Vec<usize>>,
}

impl TryFrom<TableRepr> for FiniteTable {
    type Error = Error;
    fn try_from(r: TableRepr) -> Result<Self> {
        let t = FiniteTable::new(r.table)?;
        if let Some(inv) = r.inverses {
            if inv != t.inverses {
                return Err(Error::InvalidGroup(
                    "declared inverses disagree with the table".into(),
                ));
            }
        }
        Ok(t)
    }
}

impl From<FiniteTable> for TableRepr {
    fn from(t: FiniteTable) -> Self {
        TableRepr {
            table: t.table,
            inverses: Some(t.inverses),
        }
    }
}

impl FiniteTable {
    /// Validates the table as a group law: Latin square, unique identity,
    /// associativity on every triple.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            if !is_permutation(row.iter().copied(), n) {
                return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
            }
        }
        for j in 0..n {
            if !is_permutation(table.iter().map(|r| r[j]), n) {
                return Err(Error::InvalidGroup(format!(
                    "column {j} is not a permutation"
                )));
            }
        }
        let identities: Vec<usize> = (0..n)
            .filter(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .collect();
        let identity = match identities.as_slice() {
            [e] => *e,
            [] => return Err(Error::InvalidGroup("no identity element".into())),
            _ => return Err(Error::InvalidGroup("identity is not unique".into())),
        };
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity)
                    .expect("latin square")
            })
            .collect();
        Ok(Self {
            table,
            identity,
            inverses,
        })
    }

    /// `Z/n` with index `i` standing for the residue `i`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new(table).expect("cyclic table is a group")
    }

    /// Direct product table; index `(a, b)` is `a * right.len() + b`.
    pub fn product(left: &FiniteTable, right: &FiniteTable) -> Self {
        let (n, m) = (left.len(), right.len());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| left.mul(x / m, y / m) * m + right.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::new(table).expect("product of groups is a group")
    }

    pub fn klein_four() -> Self {
        Self::product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// Quaternion group with `0 = 1, 1 = -1, 2 = i, 3 = -i, 4 = j, 5 = -j,
    /// 6 = k, 7 = -k`.
    pub fn quaternion() -> Self {
        // unit = (letter, sign): letter 0..4 is 1, i, j, k
        fn mul(a: (usize, bool), b: (usize, bool)) -> (usize, bool) {
            let (l, neg) = match (a.0, b.0) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 3) => (1, false),
                (3, 1) => (2, false),
                (2, 1) => (3, true),
                (3, 2) => (1, true),
                (1, 3) => (2, true),
                _ => unreachable!(),
            };
            (l, neg ^ a.1 ^ b.1)
        }
        let decode = |i: usize| (i / 2, i % 2 == 1);
        let encode = |(l, s): (usize, bool)| 2 * l + usize::from(s);
        let table = (0..8)
            .map(|a| (0..8).map(|b| encode(mul(decode(a), decode(b)))).collect())
            .collect();
        Self::new(table).expect("quaternion table is a group")
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.len()).filter(|&i| seen[i]).collect()
    }

    pub fn is_cyclic_subgroup(&self, elems: &[usize]) -> bool {
        elems.iter().any(|&g| self.order_of(g) == elems.len())
    }
}

fn is_permutation(xs: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for x in xs {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_associative() {
        // a Latin square with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteTable::new(t), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn rejects_non_latin() {
        assert!(FiniteTable::new(vec![vec![0, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn quaternion_structure() {
        let q = FiniteTable::quaternion();
        assert_eq!(q.len(), 8);
        assert_eq!(q.order_of(1), 2);
        assert_eq!(
            (2..8).map(|i| q.order_of(i)).collect::<Vec<_>>(),
            vec![4; 6]
        );
        assert_eq!(q.generated(&[2]).len(), 4);
    }

    #[test]
    fn serde_roundtrip_checks_inverses() {
        let z4 = FiniteTable::cyclic(4);
        let text = serde_json::to_string(&z4).unwrap();
        let back: FiniteTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, z4);
        let bad = r#"{"table":[[0,1],[1,0]],"inverses":[0,0]}"#;
        assert!(serde_json::from_str::<FiniteTable>(bad).is_err());
    }
}
