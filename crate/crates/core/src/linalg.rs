//! Dense row-reduction over a finite field.

use crate::galois::{Elem, FiniteField};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row-echelon form with unit pivots; zero rows are dropped.
/// Returns the reduced rows and their pivot columns (strictly increasing).
pub fn rref(field: &FiniteField, rows: &[Vec<Elem>], ncols: usize) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(sel) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, sel);
        let inv = field.inv(m[r][col]).expect("nonzero pivot");
        if inv != 1 {
            for x in m[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        for i in 0..m.len() {
            if i == r || m[i][col] == 0 {
                continue;
            }
            let factor = field.neg(m[i][col]);
            let (src, dst) = if i < r {
                let (a, b) = m.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = m.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for c in col..ncols {
                if src[c] != 0 {
                    dst[c] = field.add(dst[c], field.mul(factor, src[c]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(field: &FiniteField, rows: &[Vec<Elem>], ncols: usize) -> usize {
    rref(field, rows, ncols).1.len()
}

/// Basis of `{x : row . x = 0 for every row}`, in RREF.
pub fn nullspace(field: &FiniteField, rows: &[Vec<Elem>], ncols: usize) -> Matrix {
    let (red, pivots) = rref(field, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = field.neg(row[free]);
        }
        basis.push(v);
    }
    rref(field, &basis, ncols).0
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(field: &FiniteField, a: &[Vec<Elem>]) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| (i == j) as Elem));
            r
        })
        .collect();
    let (red, pivots) = rref(field, &aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(field: &FiniteField, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| field.add(acc, field.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn dot(field: &FiniteField, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

pub fn transpose(a: &[Vec<Elem>], ncols: usize) -> Matrix {
    (0..ncols)
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

/// `row := row + c * other`.
pub fn axpy(field: &FiniteField, row: &mut [Elem], c: Elem, other: &[Elem]) {
    if c == 0 {
        return;
    }
    for (x, &y) in row.iter_mut().zip(other) {
        if y != 0 {
            *x = field.add(*x, field.mul(c, y));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn rref_is_canonical_under_row_operations() {
        let f = make_field(3, 1).unwrap();
        let rows = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 2]];
        let mut mixed = rows[0].clone();
        axpy(&f, &mut mixed, 2, &rows[1]);
        let (a, pa) = rref(&f, &rows, 4);
        let (b, pb) = rref(&f, &[rows[1].clone(), mixed], 4);
        assert_eq!(pa, pb);
        assert_eq!(a, b);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let f = make_field(2, 2).unwrap();
        let rows = vec![vec![1, 2, 3, 0, 1], vec![0, 1, 1, 2, 3]];
        let ns = nullspace(&f, &rows, 5);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            for r in &rows {
                assert_eq!(dot(&f, v, r), 0);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = make_field(5, 1).unwrap();
        let a = vec![vec![1, 2, 0], vec![3, 1, 4], vec![0, 2, 2]];
        let inv = inverse(&f, &a).unwrap();
        let id = mat_mul(&f, &a, &inv);
        assert_eq!(id, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(inverse(&f, &[vec![1, 2], vec![2, 4]]).is_none());
    }
}
