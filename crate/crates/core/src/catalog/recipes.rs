//! Generator matrices for the irreducible fixed-point-free modules.

use crate::error::{Error, Result};
use crate::fp::{self, Mat};

use super::build::{
    companion, inv_mod, joint_intertwiners, m, minus_identity, neg, quaternion_omega,
    quaternion_pair, root_of, span_members,
};

/// Generator images of a module, plus the twisted images of its second structure.
pub struct Recipe {
    pub p: u32,
    pub d: usize,
    pub gens: Vec<Mat>,
    pub variant: Option<Vec<Mat>>,
}

fn plain(p: u32, d: usize, gens: Vec<Mat>) -> Recipe {
    Recipe {
        p,
        d,
        gens,
        variant: None,
    }
}

fn twisted(p: u32, d: usize, gens: Vec<Mat>, variant: Vec<Mat>) -> Recipe {
    Recipe {
        p,
        d,
        gens,
        variant: Some(variant),
    }
}

fn kron2(a: &[u8], b: &[u8], p: u32) -> Mat {
    fp::kron(a, 2, b, 2, p)
}

fn id2() -> Mat {
    fp::identity(2)
}

fn quaternion(p: u32) -> Vec<Mat> {
    let (i, j) = quaternion_pair(p);
    vec![i, j]
}

fn sl2_3(p: u32) -> Vec<Mat> {
    let (i, j) = quaternion_pair(p);
    let w = quaternion_omega(&i, &j, p);
    vec![w, i, j]
}

/// `(1 + i)/√2`, given `s = 1/√2`·(scale) such that the square is `i`.
fn octahedral_u(p: u32, scale: u32) -> Mat {
    let (i, _) = quaternion_pair(p);
    fp::scale(&fp::add(&id2(), &i, p), scale, p)
}

/// `x` of order `n` with `y` inverting it, `y² = -1`, found in the intertwiner space.
fn inverting_square_root_of_minus_one(x: &[u8], d: usize, p: u32) -> Result<Mat> {
    let x_inv = fp::inverse(x, d, p).expect("invertible");
    let basis = joint_intertwiners(&[(x, &x_inv)], d, p);
    let target = minus_identity(d, p);
    span_members(basis, p)
        .find(|y| fp::mul(y, y, d, p) == target)
        .ok_or_else(|| Error::Construction {
            name: format!("dihedral-type pair over F_{p}"),
            reason: "no y with y^2 = -1 inverting x".into(),
        })
}

/// `(x, y, z)` realizing `C_3 ⋊ Q_16` on `F_5^4`: `x³ = y⁸ = [x,z] = 1`, `z² = y⁴`,
/// `y^z = y⁻¹`, `x^y = x⁻¹`.
fn h2_generators() -> Result<Vec<Mat>> {
    let p = 5;
    let d = 4;
    let c = m(p, &[&[0, -1], &[1, -1]]);
    let x = fp::block_diag(&[(&c, 2), (&c, 2)]);
    let x_inv = fp::inverse(&x, d, p).expect("invertible");
    let minus = minus_identity(d, p);
    let fail = |reason: &str| Error::Construction {
        name: "H2".into(),
        reason: reason.into(),
    };
    let y_space = joint_intertwiners(&[(&x, &x_inv)], d, p);
    for y in span_members(y_space, p) {
        let y2 = fp::mul(&y, &y, d, p);
        let y4 = fp::mul(&y2, &y2, d, p);
        if y4 != minus {
            continue;
        }
        let y_inv = fp::inverse(&y, d, p).expect("invertible");
        let z_space = joint_intertwiners(&[(&x, &x), (&y, &y_inv)], d, p);
        if z_space.is_empty() {
            continue;
        }
        if let Some(z) = span_members(z_space, p).find(|z| fp::mul(z, z, d, p) == y4) {
            return Ok(vec![x, y, z]);
        }
    }
    Err(fail("no generators satisfy the presentation"))
}

fn sl2_5(p: u32, phi: i64) -> Vec<Mat> {
    let (i, j) = quaternion_pair(p);
    let w = quaternion_omega(&i, &j, p);
    let phi_inv = inv_mod(phi, p);
    let half = inv_mod(2, p);
    let v = fp::add(
        &fp::add(&fp::scalar(2, phi.rem_euclid(p as i64) as u32, p), &fp::scale(&i, phi_inv, p), p),
        &j,
        p,
    );
    let v = fp::scale(&v, half, p);
    vec![w, v, i, j]
}

/// Module for the named complement over `F_p`, or `None` when the pair is not in the
/// catalog.
pub fn recipe(h: &str, p: u32) -> Result<Option<Recipe>> {
    let r = match (h, p) {
        ("C2", 3 | 5) => plain(p, 1, vec![m(p, &[&[-1]])]),
        ("C4", 3) => plain(3, 2, vec![m(3, &[&[0, -1], &[1, 0]])]),
        ("C4", 5) => twisted(5, 1, vec![m(5, &[&[2]])], vec![m(5, &[&[3]])]),
        ("C6", 5) => plain(5, 2, vec![m(5, &[&[0, -1], &[1, 1]])]),
        ("C6", 7) => twisted(7, 1, vec![m(7, &[&[3]])], vec![m(7, &[&[5]])]),
        ("C6", 13) => twisted(13, 1, vec![m(13, &[&[4]])], vec![m(13, &[&[10]])]),
        ("Q8", 3 | 5) => plain(p, 2, quaternion(p)),
        ("C3:C4", 5) => {
            let x = companion(5, &[1, 1]);
            let y = inverting_square_root_of_minus_one(&x, 2, 5)?;
            plain(5, 2, vec![x, y])
        }
        ("Q16", 3 | 5) => {
            let (_, j) = quaternion_pair(p);
            let u = kron2(&octahedral_u(p, inv_mod(2, p)), &root_of(p, 2), p);
            plain(p, 4, vec![u, kron2(&j, &id2(), p)])
        }
        ("H1", 3) => {
            let x = companion(3, &[1, 1, 1, 1]);
            let y = inverting_square_root_of_minus_one(&x, 4, 3)?;
            plain(3, 4, vec![x, y])
        }
        ("SL2_3", 5 | 7) => plain(p, 2, sl2_3(p)),
        ("C3:Q8", 5) => {
            let (i, j) = quaternion_pair(5);
            let half = inv_mod(2, 5);
            let x = fp::add(
                &fp::scalar(4, 5 - half, 5),
                &fp::scale(&kron2(&i, &root_of(5, 3), 5), half, 5),
                5,
            );
            plain(5, 4, vec![x, kron2(&i, &id2(), 5), kron2(&j, &id2(), 5)])
        }
        ("C3xQ8", 5) => {
            let (i, j) = quaternion_pair(5);
            let half = inv_mod(2, 5);
            let w = fp::add(&fp::scalar(2, 5 - half, 5), &fp::scale(&root_of(5, 2), half, 5), 5);
            let x = kron2(&id2(), &w, 5);
            plain(5, 4, vec![x, kron2(&i, &id2(), 5), kron2(&j, &id2(), 5)])
        }
        ("C3xQ8", 7 | 13) => {
            let (i, j) = quaternion_pair(p);
            let c = if p == 7 { 2 } else { 3 };
            let x = fp::scalar(2, c, p);
            let x2 = fp::mul(&x, &x, 2, p);
            twisted(p, 2, vec![x, i.clone(), j.clone()], vec![x2, i, j])
        }
        ("SL2_3.C2", 7) => {
            // 1/√2 = 1/3 = 5
            let u = octahedral_u(7, 5);
            let mut gens = vec![u.clone()];
            gens.extend(sl2_3(7));
            let mut variant = vec![neg(&u, 7)];
            variant.extend(sl2_3(7));
            twisted(7, 2, gens, variant)
        }
        ("SL2_3.C2", 5) => {
            let u = kron2(&octahedral_u(5, inv_mod(2, 5)), &root_of(5, 2), 5);
            let mut gens = vec![u];
            gens.extend(sl2_3(5).iter().map(|g| kron2(g, &id2(), 5)));
            plain(5, 4, gens)
        }
        ("H2", 5) => plain(5, 4, h2_generators()?),
        ("SL2_5", 11) => twisted(11, 2, sl2_5(11, 8), sl2_5(11, 4)),
        // complement C3 for odd-order instances
        ("C3", 7) => plain(7, 1, vec![m(7, &[&[2]])]),
        ("C3x2", 7) => plain(7, 2, vec![fp::scalar(2, 2, 7)]),
        ("C3", 2) => plain(2, 2, vec![m(2, &[&[0, 1], &[1, 1]])]),
        ("C3x2", 2) => {
            let a = m(2, &[&[0, 1], &[1, 1]]);
            plain(2, 4, vec![fp::block_diag(&[(&a, 2), (&a, 2)])])
        }
        _ => return Ok(None),
    };
    Ok(Some(r))
}
