//! Small square matrices over a prime field `F_p` (p < 256), stored row-major.

use crate::arith::mod_inv;

pub type Mat = Box<[u8]>;

pub fn identity(d: usize) -> Mat {
    let mut m = vec![0u8; d * d];
    for i in 0..d {
        m[i * d + i] = 1;
    }
    m.into_boxed_slice()
}

pub fn scalar(d: usize, c: u32, p: u32) -> Mat {
    let mut m = vec![0u8; d * d];
    for i in 0..d {
        m[i * d + i] = (c % p) as u8;
    }
    m.into_boxed_slice()
}

pub fn from_rows(rows: &[Vec<i64>], p: u32) -> Mat {
    rows.iter()
        .flat_map(|r| r.iter().map(move |&x| x.rem_euclid(p as i64) as u8))
        .collect()
}

pub fn mul(a: &[u8], b: &[u8], d: usize, p: u32) -> Mat {
    let mut out = vec![0u8; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut s = 0u32;
            for k in 0..d {
                s += a[i * d + k] as u32 * b[k * d + j] as u32;
            }
            out[i * d + j] = (s % p) as u8;
        }
    }
    out.into_boxed_slice()
}

pub fn add(a: &[u8], b: &[u8], p: u32) -> Mat {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8)
        .collect()
}

pub fn scale(a: &[u8], c: u32, p: u32) -> Mat {
    a.iter().map(|&x| (x as u32 * (c % p) % p) as u8).collect()
}

pub fn pow(a: &[u8], mut e: u64, d: usize, p: u32) -> Mat {
    let mut result = identity(d);
    let mut base: Mat = a.into();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base, d, p);
        }
        base = mul(&base, &base, d, p);
        e >>= 1;
    }
    result
}

pub fn mat_vec(a: &[u8], v: &[u8], d: usize, p: u32) -> Vec<u8> {
    (0..d)
        .map(|i| {
            let s: u32 = (0..d).map(|k| a[i * d + k] as u32 * v[k] as u32).sum();
            (s % p) as u8
        })
        .collect()
}

pub fn transpose(a: &[u8], d: usize) -> Mat {
    let mut out = vec![0u8; d * d];
    for i in 0..d {
        for j in 0..d {
            out[j * d + i] = a[i * d + j];
        }
    }
    out.into_boxed_slice()
}

pub fn is_identity(a: &[u8], d: usize) -> bool {
    (0..d).all(|i| (0..d).all(|j| a[i * d + j] == u8::from(i == j)))
}

/// `Some(c)` when `a = c·I`.
pub fn as_scalar(a: &[u8], d: usize) -> Option<u8> {
    let c = a[0];
    (0..d)
        .all(|i| (0..d).all(|j| a[i * d + j] == if i == j { c } else { 0 }))
        .then_some(c)
}

pub fn inverse(a: &[u8], d: usize, p: u32) -> Option<Mat> {
    let q = p as u64;
    let m: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).map(|j| a[i * d + j] as u64).collect())
        .collect();
    let inv = crate::linalg::inverse(&m, q)?;
    Some(inv.into_iter().flatten().map(|x| x as u8).collect())
}

pub fn det(a: &[u8], d: usize, p: u32) -> u32 {
    let q = p as u64;
    let mut m: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).map(|j| a[i * d + j] as u64).collect())
        .collect();
    let mut det = 1u64;
    for c in 0..d {
        let Some(pr) = (c..d).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            m.swap(pr, c);
            det = (q - det) % q;
        }
        det = det * m[c][c] % q;
        let inv = mod_inv(m[c][c], q).unwrap();
        for i in c + 1..d {
            let f = m[i][c] * inv % q;
            for j in c..d {
                m[i][j] = (m[i][j] + q - f * m[c][j] % q) % q;
            }
        }
    }
    det as u32
}

/// Kronecker product `a ⊗ b` of a `da`-square and a `db`-square matrix.
pub fn kron(a: &[u8], da: usize, b: &[u8], db: usize, p: u32) -> Mat {
    let d = da * db;
    let mut out = vec![0u8; d * d];
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k) * d + j * db + l] =
                        (a[i * da + j] as u32 * b[k * db + l] as u32 % p) as u8;
                }
            }
        }
    }
    out.into_boxed_slice()
}

/// Block diagonal matrix with the given square blocks.
pub fn block_diag(blocks: &[(&[u8], usize)]) -> Mat {
    let d: usize = blocks.iter().map(|(_, k)| k).sum();
    let mut out = vec![0u8; d * d];
    let mut off = 0;
    for (b, k) in blocks {
        for i in 0..*k {
            for j in 0..*k {
                out[(off + i) * d + off + j] = b[i * k + j];
            }
        }
        off += k;
    }
    out.into_boxed_slice()
}

/// Order of an invertible matrix (bounded search).
pub fn order(a: &[u8], d: usize, p: u32) -> u64 {
    let mut cur: Mat = a.into();
    let mut k = 1;
    while !is_identity(&cur, d) {
        cur = mul(&cur, a, d, p);
        k += 1;
    }
    k
}

/// Decode the integer `index` as a vector of `F_p^d` (little-endian digits).
pub fn vector_from_index(mut index: u64, d: usize, p: u32) -> Vec<u8> {
    (0..d)
        .map(|_| {
            let x = (index % p as u64) as u8;
            index /= p as u64;
            x
        })
        .collect()
}

pub fn vector_index(v: &[u8], p: u32) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * p as u64 + x as u64)
}

/// Basis of `{Y : A Y = Y B}` for square `A, B` of size `d`, each basis element a matrix.
pub fn intertwiners(a: &[u8], b: &[u8], d: usize, p: u32) -> Vec<Mat> {
    let q = p as u64;
    let n = d * d;
    // Unknown y_{kl} at index k*d + l; equation (AY - YB)_{ij} = 0.
    let mut eqs = vec![vec![0u64; n]; n];
    for i in 0..d {
        for j in 0..d {
            let row = &mut eqs[i * d + j];
            for k in 0..d {
                row[k * d + j] = (row[k * d + j] + a[i * d + k] as u64) % q;
                row[i * d + k] = (row[i * d + k] + q - b[k * d + j] as u64) % q;
            }
        }
    }
    crate::linalg::nullspace(&eqs, q, n)
        .into_iter()
        .map(|v| v.into_iter().map(|x| x as u8).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_matrix_identities() {
        let p = 7;
        let a = from_rows(&[vec![1, 2], vec![3, 4]], p);
        let inv = inverse(&a, 2, p).unwrap();
        assert!(is_identity(&mul(&a, &inv, 2, p), 2));
        assert_eq!(det(&a, 2, p), 5);
        let r = from_rows(&[vec![0, -1], vec![1, 0]], p);
        assert_eq!(order(&r, 2, p), 4);
        let k = kron(&r, 2, &identity(2), 2, p);
        assert_eq!(order(&k, 4, p), 4);
        assert_eq!(vector_index(&vector_from_index(40, 3, 5), 5), 40);
    }

    #[test]
    fn intertwiner_space_contains_commutant() {
        let p = 5;
        let x = from_rows(&[vec![0, -1], vec![1, -1]], p);
        let basis = intertwiners(&x, &x, 2, p);
        assert_eq!(basis.len(), 2);
        for y in basis {
            assert_eq!(mul(&x, &y, 2, p), mul(&y, &x, 2, p));
        }
    }
}
