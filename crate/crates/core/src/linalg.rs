//! Exact dense linear algebra over Q(zeta_12).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactfield::CycElem;

pub type Matrix = Vec<Vec<CycElem>>;

/// Row echelon form in place. Returns the pivot columns.
///
/// Pivot search scans columns left to right, so callers control which
/// coordinates become pivots by ordering the columns.
pub fn row_reduce(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_exact(m: &[Vec<CycElem>]) -> usize {
    let mut a = m.to_vec();
    row_reduce(&mut a).len()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { CycElem::one() } else { CycElem::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<CycElem>], b: &[Vec<CycElem>]) -> Matrix {
    let k = b.len();
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    let mut s = CycElem::zero();
                    for t in 0..k {
                        if !row[t].is_zero() && !b[t][j].is_zero() {
                            s += &(&row[t] * &b[t][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<CycElem>], v: &[CycElem]) -> Vec<CycElem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(CycElem::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn inverse(m: &[Vec<CycElem>]) -> Result<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let piv = row_reduce(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(m: &[Vec<CycElem>]) -> CycElem {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = CycElem::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return CycElem::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().unwrap();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= &t;
            }
        }
    }
    det
}

/// Basis of the right null space.
pub fn kernel(m: &[Vec<CycElem>], ncols: usize) -> Vec<Vec<CycElem>> {
    let mut a = m.to_vec();
    let piv = row_reduce(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycElem::zero(); ncols];
            v[f] = CycElem::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

/// Solves x * rows = target for x (target in the row span), if possible.
pub fn solve_in_span(rows: &[Vec<CycElem>], target: &[CycElem]) -> Option<Vec<CycElem>> {
    let k = rows.len();
    let n = target.len();
    // columns: unknowns x_0..x_{k-1}, equations per coordinate
    let mut sys: Matrix = (0..n)
        .map(|j| {
            let mut r: Vec<CycElem> = rows.iter().map(|row| row[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    let piv = row_reduce(&mut sys);
    if piv.contains(&k) {
        return None;
    }
    let mut x = vec![CycElem::zero(); k];
    for (r, &p) in piv.iter().enumerate() {
        x[p] = sys[r][k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[&[i64]]) -> Matrix {
        v.iter().map(|r| r.iter().map(|&x| CycElem::from_int(x)).collect()).collect()
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(determinant(&a), CycElem::one());
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn kernel_and_span() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank_exact(&a), 1);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(CycElem::is_zero));
        }
        let rows = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = solve_in_span(&rows, &m(&[&[2, 3, 5]])[0]).unwrap();
        assert_eq!(x, vec![CycElem::from_int(2), CycElem::from_int(3)]);
        assert!(solve_in_span(&rows, &m(&[&[1, 1, 0]])[0]).is_none());
    }
}
