//! Integer and rational matrix routines: Smith and Hermite normal forms,
//! rational elimination, unimodular inverses.
//!
//! Matrices are dense `Vec<Vec<T>>` in row-major order. All pivoting rules
//! are deterministic so that quotient maps and canonical representatives are
//! reproducible.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::scalar::IntScalar;

pub type IntMatrix<T> = Vec<Vec<T>>;

pub fn identity<T: IntScalar>(n: usize) -> IntMatrix<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_vec<T: IntScalar>(m: &[Vec<T>], v: &[T]) -> Vec<T> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

pub fn mat_mul<T: IntScalar>(a: &[Vec<T>], b: &[Vec<T>]) -> IntMatrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

/// Result of [`smith_normal_form`]: `left · A · right = diag(diagonal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith<T> {
    pub left: IntMatrix<T>,
    pub right: IntMatrix<T>,
    /// Nonzero invariant factors `d_0 | d_1 | …`, all positive.
    pub diagonal: Vec<T>,
}

fn swap_cols<T>(m: &mut [Vec<T>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[target] -= q · row[source]`
fn row_axpy<T: IntScalar>(m: &mut [Vec<T>], target: usize, source: usize, q: &T) {
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(src) {
        *x = x.clone() - q.clone() * s;
    }
}

fn col_axpy<T: IntScalar>(m: &mut [Vec<T>], target: usize, source: usize, q: &T) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] = row[target].clone() - q.clone() * s;
    }
}

/// Smith normal form of an `rows × cols` integer matrix.
pub fn smith_normal_form<T: IntScalar>(a: &[Vec<T>], rows: usize, cols: usize) -> Smith<T> {
    let mut b: IntMatrix<T> = a.to_vec();
    let mut left = identity::<T>(rows);
    let mut right = identity::<T>(cols);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&b, t, t..rows, t..cols) else {
            break;
        };
        b.swap(t, pi);
        left.swap(t, pi);
        swap_cols(&mut b, t, pj);
        swap_cols(&mut right, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !b[i][t].is_zero() {
                    let q = b[i][t].div_floor(&b[t][t]);
                    row_axpy(&mut b, i, t, &q);
                    row_axpy(&mut left, i, t, &q);
                    clean &= b[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !b[t][j].is_zero() {
                    let q = b[t][j].div_floor(&b[t][t]);
                    col_axpy(&mut b, j, t, &q);
                    col_axpy(&mut right, j, t, &q);
                    clean &= b[t][j].is_zero();
                }
            }
            if !clean {
                // a smaller remainder sits in row t or column t; move it to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !b[i][t].is_zero() && b[i][t].abs() < b[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !b[t][j].is_zero() && b[t][j].abs() < b[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    b.swap(t, best.0);
                    left.swap(t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut b, t, best.1);
                    swap_cols(&mut right, t, best.1);
                }
                continue;
            }
            let bad_row =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !b[i][j].is_multiple_of(&b[t][t])));
            match bad_row {
                Some(i) => {
                    let minus_one = -T::one();
                    row_axpy(&mut b, t, i, &minus_one);
                    row_axpy(&mut left, t, i, &minus_one);
                }
                None => break,
            }
        }
        if b[t][t].is_negative() {
            for x in b[t].iter_mut() {
                *x = -x.clone();
            }
            for x in left[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diagonal.push(b[t][t].clone());
    }
    Smith {
        left,
        right,
        diagonal,
    }
}

fn min_abs_entry<T: IntScalar>(
    b: &[Vec<T>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if b[i][j].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if b[bi][bj].abs() <= b[i][j].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Row-style Hermite normal form of the lattice spanned by `generators`
/// (each of length `dim`): echelon rows with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form<T: IntScalar>(generators: &[Vec<T>], dim: usize) -> IntMatrix<T> {
    let mut m: IntMatrix<T> = generators.to_vec();
    let mut r = 0;
    for c in 0..dim {
        if r >= m.len() {
            break;
        }
        loop {
            let pivot = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&x, &y| m[x][c].abs().cmp(&m[y][c].abs()).then(x.cmp(&y)));
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    row_axpy(&mut m, i, r, &q);
                    done &= m[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if !q.is_zero() {
                    row_axpy(&mut m, i, r, &q);
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Column index of the first nonzero entry of each HNF row.
pub fn pivot_columns<T: IntScalar>(hnf: &[Vec<T>]) -> Vec<usize> {
    hnf.iter()
        .map(|row| {
            row.iter()
                .position(|x| !x.is_zero())
                .expect("zero row in HNF")
        })
        .collect()
}

/// Reduces `v` modulo the lattice with Hermite basis `hnf`, giving the
/// unique representative whose pivot coordinates lie in `[0, pivot)`.
pub fn reduce_mod_lattice<T: IntScalar>(hnf: &[Vec<T>], v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    for (row, p) in hnf.iter().zip(pivot_columns(hnf)) {
        let q = out[p].div_floor(&row[p]);
        if !q.is_zero() {
            for (x, r) in out.iter_mut().zip(row) {
                *x = x.clone() - q.clone() * r.clone();
            }
        }
    }
    out
}

/// Reduced row echelon form over `Q`; returns the pivot columns.
pub fn rref<T: IntScalar>(m: &mut [Vec<Ratio<T>>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let src = m[r].clone();
                for (x, s) in m[i].iter_mut().zip(src) {
                    *x = x.clone() - f.clone() * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank<T: IntScalar>(m: &[Vec<Ratio<T>>], cols: usize) -> usize {
    let mut w = m.to_vec();
    rref(&mut w, cols).len()
}

/// A basis of `{x : M x = 0}` over `Q`.
pub fn nullspace<T: IntScalar>(m: &[Vec<Ratio<T>>], cols: usize) -> Vec<Vec<Ratio<T>>> {
    let mut w = m.to_vec();
    let pivots = rref(&mut w, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Ratio::zero(); cols];
            x[f] = Ratio::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -w[row][f].clone();
            }
            x
        })
        .collect()
}

/// Inverse of a square integer matrix with determinant `±1`, or `None`.
pub fn unimodular_inverse<T: IntScalar>(m: &[Vec<T>]) -> Option<IntMatrix<T>> {
    let n = m.len();
    let mut aug: Vec<Vec<Ratio<T>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .cloned()
                .map(Ratio::from_integer)
                .chain((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }))
                .collect()
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Vec::with_capacity(n);
    for row in aug {
        let mut out = Vec::with_capacity(n);
        for x in row.into_iter().skip(n) {
            if !x.is_integer() {
                return None;
            }
            out.push(x.to_integer());
        }
        inv.push(out);
    }
    Some(inv)
}

/// Determinant by fraction-free elimination.
pub fn determinant<T: IntScalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut a = m.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return T::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smith_of_index_two_sublattice() {
        let a = vec![vec![1i64, 0], vec![0, 2]];
        let s = smith_normal_form(&a, 2, 2);
        assert_eq!(s.diagonal, vec![1, 2]);
        let d = mat_mul(&mat_mul(&s.left, &a), &s.right);
        assert_eq!(d, vec![vec![1, 0], vec![0, 2]]);
    }

    #[test]
    fn smith_divisibility_chain() {
        let a = vec![vec![2i64, 0], vec![0, 3]];
        let s = smith_normal_form(&a, 2, 2);
        assert_eq!(s.diagonal, vec![1, 6]);
    }

    #[test]
    fn hermite_reduces_above_pivots() {
        let h = hermite_normal_form(&[vec![2i64, 3], vec![0, 5], vec![4, 1]], 2);
        assert_eq!(h, vec![vec![2, 3], vec![0, 5]]);
        assert_eq!(reduce_mod_lattice(&h, &[7, 7]), vec![1, 3]);
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = vec![vec![2i64, 1], vec![1, 1]];
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity::<i64>(2));
        assert!(unimodular_inverse(&[vec![2i64, 0], vec![0, 1]]).is_none());
        assert_eq!(determinant(&m), 1);
        assert_eq!(determinant(&[vec![0i64, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn nullspace_finds_dependency() {
        let m: Vec<Vec<Ratio<i64>>> = vec![vec![Ratio::from(1), Ratio::from(-1)]];
        let ns = nullspace(&m, 2);
        assert_eq!(ns, vec![vec![Ratio::from(1), Ratio::from(1)]]);
    }

    proptest! {
        #[test]
        fn smith_is_a_factorization(entries in proptest::collection::vec(-6i64..6, 6)) {
            let a = vec![entries[0..3].to_vec(), entries[3..6].to_vec()];
            let s = smith_normal_form(&a, 2, 3);
            let d = mat_mul(&mat_mul(&s.left, &a), &s.right);
            for (i, row) in d.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    let want = if i == j && i < s.diagonal.len() { s.diagonal[i] } else { 0 };
                    prop_assert_eq!(x, want);
                }
            }
            prop_assert_eq!(determinant(&s.left).abs(), 1);
            prop_assert_eq!(determinant(&s.right).abs(), 1);
            for w in s.diagonal.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }

        #[test]
        fn hermite_preserves_lattice(entries in proptest::collection::vec(-5i64..5, 4)) {
            let g = vec![entries[0..2].to_vec(), entries[2..4].to_vec()];
            let h = hermite_normal_form(&g, 2);
            // every generator reduces to zero modulo the HNF basis
            for row in &g {
                prop_assert_eq!(reduce_mod_lattice(&h, row), vec![0, 0]);
            }
            let det_g = determinant(&g).abs();
            if det_g != 0 {
                prop_assert_eq!(determinant(&h).abs(), det_g);
            }
        }
    }
}
