//! Dense linear algebra over a prime field `F_q` (q < 2^31).
//!
//! Matrices are row-major `Vec<Vec<u64>>` with entries already reduced mod q.

use crate::arith::mod_inv;

pub type Matrix = Vec<Vec<u64>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, q: u64) -> Matrix {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0u64; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] = (out[i][j] + aik * b[k][j]) % q;
            }
        }
    }
    out
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Matrix, q: u64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = mod_inv(m[r][c], q).expect("nonzero pivot is invertible");
        for x in m[r].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = f * m[r][j] % q;
                    m[i][j] = (m[i][j] + q - sub) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix, q: u64) -> usize {
    let mut work = m.clone();
    rref(&mut work, q).len()
}

/// Basis of `{x : M x = 0}`, each basis vector having a 1 in a free coordinate.
pub fn nullspace(m: &Matrix, q: u64, cols: usize) -> Vec<Vec<u64>> {
    let mut work = m.clone();
    let pivots = rref(&mut work, q);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - work[row][f]) % q;
            }
            v
        })
        .collect()
}

pub fn inverse(m: &Matrix, q: u64) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(&mut aug, q);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Characteristic polynomial `det(xI - M)`, coefficients in increasing degree.
/// Uses a similarity reduction to upper Hessenberg form.
pub fn char_poly(m: &Matrix, q: u64) -> Vec<u64> {
    let n = m.len();
    let mut h = m.clone();
    // Hessenberg reduction by elementary similarity transforms.
    for c in 0..n.saturating_sub(2) {
        let Some(pr) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if pr != c + 1 {
            h.swap(pr, c + 1);
            for row in h.iter_mut() {
                row.swap(pr, c + 1);
            }
        }
        let inv = mod_inv(h[c + 1][c], q).unwrap();
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let f = h[i][c] * inv % q;
            // row_i -= f * row_{c+1}
            for j in 0..n {
                let sub = f * h[c + 1][j] % q;
                h[i][j] = (h[i][j] + q - sub) % q;
            }
            // col_{c+1} += f * col_i
            for row in h.iter_mut() {
                row[c + 1] = (row[c + 1] + f * row[i]) % q;
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{m=i+1}^{k} h_{m,m-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % q;
            next[d] = (next[d] + q - h[k][k] * c % q) % q;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * h[i + 1][i] % q;
            if prod == 0 {
                break;
            }
            let coef = h[i][k] * prod % q;
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + q - coef * c % q) % q;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn poly_eval(coeffs: &[u64], x: u64, q: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_matches_determinant_expansion() {
        let q = 101;
        let m = vec![vec![2, 1, 0], vec![3, 4, 5], vec![0, 7, 1]];
        let cp = char_poly(&m, q);
        // det(xI - M) evaluated at a few points via direct 3x3 determinant.
        for x in [0u64, 1, 5, 50] {
            let a: Matrix = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| {
                            let d = if i == j { x } else { 0 };
                            (d + q - m[i][j]) % q
                        })
                        .collect()
                })
                .collect();
            let det = (a[0][0] * ((a[1][1] * a[2][2] + q * q - a[1][2] * a[2][1]) % q)
                + q * q
                - a[0][1] * ((a[1][0] * a[2][2] + q * q - a[1][2] * a[2][0]) % q)
                + a[0][2] * ((a[1][0] * a[2][1] + q * q - a[1][1] * a[2][0]) % q))
                % q;
            assert_eq!(poly_eval(&cp, x, q), det);
        }
    }

    #[test]
    fn inverse_and_nullspace() {
        let q = 7;
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = inverse(&m, q).unwrap();
        assert_eq!(mat_mul(&m, &inv, q), identity(2));
        let sing = vec![vec![1, 2], vec![2, 4]];
        assert!(inverse(&sing, q).is_none());
        let ns = nullspace(&sing, q, 2);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!((v[0] + 2 * v[1]) % q, 0);
    }
}
