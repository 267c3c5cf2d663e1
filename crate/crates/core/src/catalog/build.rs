//! Matrix and permutation building blocks for the catalog constructions.

use std::collections::HashMap;

use crate::arith::mod_inv;
use crate::error::{Error, Result};
use crate::fp::{self, Mat};
use crate::group::{Element, GroupHandle};

pub fn m(p: u32, rows: &[&[i64]]) -> Mat {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    fp::from_rows(&rows, p)
}

pub fn inv_mod(a: i64, p: u32) -> u32 {
    mod_inv(a.rem_euclid(p as i64) as u64, p as u64).expect("unit") as u32
}

/// Companion matrix of the monic polynomial `t^n + c_{n-1} t^{n-1} + … + c_0`
/// (coefficients `c_0..c_{n-1}`).
pub fn companion(p: u32, coeffs: &[i64]) -> Mat {
    let n = coeffs.len();
    let mut out = vec![0u8; n * n];
    for i in 1..n {
        out[i * n + i - 1] = 1;
    }
    for (i, &c) in coeffs.iter().enumerate() {
        out[i * n + n - 1] = (-c).rem_euclid(p as i64) as u8;
    }
    out.into_boxed_slice()
}

/// `[[0, c], [1, 0]]`, a square root of `c·I`.
pub fn root_of(p: u32, c: i64) -> Mat {
    m(p, &[&[0, c], &[1, 0]])
}

/// Quaternion units in `M_2(F_p)`: `i = [[0,-1],[1,0]]`, `j = [[a,b],[b,-a]]` with
/// `a² + b² = -1`.
pub fn quaternion_pair(p: u32) -> (Mat, Mat) {
    let q = p as i64;
    let (a, b) = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .find(|&(a, b)| (a * a + b * b + 1) % q == 0)
        .expect("-1 is a sum of two squares mod p");
    (m(p, &[&[0, -1], &[1, 0]]), m(p, &[&[a, b], &[b, -a]]))
}

/// `(-1 + i + j + ij)/2`, an element of order 3.
pub fn quaternion_omega(i: &[u8], j: &[u8], p: u32) -> Mat {
    let k = fp::mul(i, j, 2, p);
    let minus_id = fp::scalar(2, p - 1, p);
    let sum = fp::add(&fp::add(&fp::add(&minus_id, i, p), j, p), &k, p);
    fp::scale(&sum, inv_mod(2, p), p)
}

pub fn neg(a: &[u8], p: u32) -> Mat {
    fp::scale(a, p - 1, p)
}

pub fn minus_identity(d: usize, p: u32) -> Mat {
    fp::scalar(d, p - 1, p)
}

/// Elements of the span of a basis of matrices, in index order of the coefficients.
pub fn span_members(basis: Vec<Mat>, p: u32) -> impl Iterator<Item = Mat> {
    let count = (p as u64).pow(basis.len() as u32);
    (1..count).map(move |c| {
        let coeffs = fp::vector_from_index(c, basis.len(), p);
        let len = basis[0].len();
        let mut acc = vec![0u32; len];
        for (b, &x) in basis.iter().zip(&coeffs) {
            for (a, &y) in acc.iter_mut().zip(b.iter()) {
                *a = (*a + x as u32 * y as u32) % p;
            }
        }
        acc.into_iter().map(|x| x as u8).collect()
    })
}

/// Basis of `{Y : A_k Y = Y B_k for all k}`.
pub fn joint_intertwiners(pairs: &[(&[u8], &[u8])], d: usize, p: u32) -> Vec<Mat> {
    let q = p as u64;
    let n = d * d;
    let mut eqs: Vec<Vec<u64>> = Vec::new();
    for (a, b) in pairs {
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![0u64; n];
                for k in 0..d {
                    row[k * d + j] = (row[k * d + j] + a[i * d + k] as u64) % q;
                    row[i * d + k] = (row[i * d + k] + q - b[k * d + j] as u64) % q;
                }
                eqs.push(row);
            }
        }
    }
    crate::linalg::nullspace(&eqs, q, n)
        .into_iter()
        .map(|v| v.into_iter().map(|x| x as u8).collect())
        .collect()
}

pub fn cyclic_perm(n: usize) -> GroupHandle {
    let cycle: Vec<usize> = (1..=n).collect();
    GroupHandle::perm(n, vec![Element::perm_from_cycles(n, &[&cycle])])
}

/// Generalized quaternion group of order `2^k` inside `SL_2(F_17)`.
pub fn generalized_quaternion(order: u64) -> GroupHandle {
    let p = 17u32;
    // 3 generates U(Z/17Z), which has order 16.
    let half = order / 2;
    let eps = crate::arith::mod_pow(3, 16 / half, 17) as i64;
    let eps_inv = inv_mod(eps, p) as i64;
    let y = m(p, &[&[eps, 0], &[0, eps_inv]]);
    let z = m(p, &[&[0, 1], &[-1, 0]]);
    GroupHandle::matrix(p, 2, vec![y, z])
}

/// `C_m ⋊ H` as permutations of `Z/m ⊔ H`: translation on `Z/m`, and each generator
/// `g` of `H` acting by `x ↦ u(g)·x` on `Z/m` and by right multiplication on `H`.
pub fn cyclic_extension(m: u64, h: &GroupHandle, units: &[u64]) -> Result<GroupHandle> {
    let elems = h.elements()?;
    let hn = elems.len();
    let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    // the images must define a homomorphism H -> U(Z/m)
    let mut unit_of: Vec<Option<u64>> = vec![None; hn];
    unit_of[0] = Some(1 % m);
    for i in 0..hn {
        let base = unit_of[i].expect("breadth-first order");
        for (g, &u) in h.gens().iter().zip(units) {
            let j = index[&h.mul(&elems[i], g)];
            let cand = base * u % m;
            match unit_of[j] {
                None => unit_of[j] = Some(cand),
                Some(x) if x == cand => {}
                Some(_) => {
                    return Err(Error::NotHomomorphism(format!(
                        "unit images {units:?} do not respect the relations of H"
                    )))
                }
            }
        }
    }
    let degree = m as usize + hn;
    let mut translation: Vec<u16> = (0..degree as u16).collect();
    for x in 0..m as usize {
        translation[x] = ((x + 1) % m as usize) as u16;
    }
    let mut gens = vec![Element::Perm(translation.into_boxed_slice())];
    for (g, &u) in h.gens().iter().zip(units) {
        let mut img: Vec<u16> = (0..degree as u16).collect();
        for x in 0..m {
            img[x as usize] = (x * u % m) as u16;
        }
        for (i, e) in elems.iter().enumerate() {
            img[m as usize + i] = (m as usize + index[&h.mul(e, g)]) as u16;
        }
        gens.push(Element::Perm(img.into_boxed_slice()));
    }
    Ok(GroupHandle::perm(degree, gens))
}
