use crate::arith::{is_prime, isqrt, mod_inv, mod_pow, primitive_root};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{ConjugacyData, GroupHandle};
use crate::linalg::{self, Matrix};

use super::CharacterTable;

pub const DEFAULT_DIXON_CAP: u64 = 3000;
const PRIMES_TO_TRY: usize = 6;

/// Smallest prime `q ≡ 1 (mod e)` with `q > 2√|G|`, skipping the first `skip` of them.
pub fn dixon_prime(order: u64, exponent: u64, skip: usize) -> u64 {
    let bound = 2 * isqrt(order) + 1;
    let mut q = exponent + 1;
    let mut found = 0;
    loop {
        if q > bound && is_prime(q) {
            if found == skip {
                return q;
            }
            found += 1;
        }
        q += exponent;
    }
}

pub fn dixon_table(g: &GroupHandle, cap: u64) -> Result<CharacterTable> {
    let order = g.order()?;
    if order > cap {
        return Err(Error::TableCap { order, cap });
    }
    let cls = g.classes()?;
    let coeffs = class_coefficients(g, &cls)?;
    let mut tried = Vec::new();
    for attempt in 0..PRIMES_TO_TRY {
        let q = dixon_prime(order, cls.exponent, attempt);
        tried.push(q);
        if let Some(rows) = attempt_prime(&cls, &coeffs, q) {
            let table = CharacterTable::new(cls.clone(), cls.exponent, rows);
            return Ok(table);
        }
    }
    Err(Error::DixonFailed { primes: tried })
}

/// `a[j][i][k] = #{y ∈ C_j : z_k y^{-1} ∈ C_i}`, the structure constants of the class sums.
fn class_coefficients(g: &GroupHandle, cls: &ConjugacyData) -> Result<Vec<Vec<Vec<u64>>>> {
    let elems = g.elements()?;
    let k = cls.len();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (idx, &c) in cls.class_of.iter().enumerate() {
        members[c as usize].push(idx);
    }
    let inverses: Vec<_> = elems.iter().map(|x| g.inv(x)).collect();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (j, mem) in members.iter().enumerate() {
        for kk in 0..k {
            let z = &cls.reps[kk];
            for &y in mem {
                let x = g.mul(z, &inverses[y]);
                let i = cls.class_of[g.index_of(&x).expect("closed")] as usize;
                a[j][i][kk] += 1;
            }
        }
    }
    Ok(a)
}

/// Common eigenvectors of the class matrices over `F_q`, one per irreducible character.
fn common_eigenvectors(mats: &[Matrix], k: usize, q: u64) -> Option<Vec<Vec<u64>>> {
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![linalg::identity(k)];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for mut w in spaces {
            if w.len() == 1 {
                next.push(w);
                continue;
            }
            let pivots = linalg::rref(&mut w, q);
            let dim = w.len();
            // restriction: column t of R = coordinates of M w_t
            let images: Vec<Vec<u64>> = w
                .iter()
                .map(|wt| {
                    (0..k)
                        .map(|i| (0..k).fold(0, |acc, c| (acc + m[i][c] * wt[c]) % q))
                        .collect()
                })
                .collect();
            let r: Matrix = (0..dim)
                .map(|row| (0..dim).map(|col| images[col][pivots[row]]).collect())
                .collect();
            let cp = linalg::char_poly(&r, q);
            let mut total = 0;
            for lambda in 0..q {
                if linalg::poly_eval(&cp, lambda, q) != 0 {
                    continue;
                }
                let shifted: Matrix = (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| if i == j { (r[i][j] + q - lambda) % q } else { r[i][j] })
                            .collect()
                    })
                    .collect();
                let kernel = linalg::nullspace(&shifted, q, dim);
                total += kernel.len();
                let vecs: Vec<Vec<u64>> = kernel
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|i| (0..dim).fold(0, |acc, t| (acc + c[t] * w[t][i]) % q))
                            .collect()
                    })
                    .collect();
                next.push(vecs);
            }
            if total != dim {
                return None;
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return None;
    }
    Some(spaces.into_iter().map(|mut s| s.remove(0)).collect())
}

fn attempt_prime(cls: &ConjugacyData, coeffs: &[Vec<Vec<u64>>], q: u64) -> Option<Vec<Vec<Cyclotomic>>> {
    let k = cls.len();
    let order = cls.order;
    let e = cls.exponent;
    let mats: Vec<Matrix> = coeffs
        .iter()
        .map(|aj| aj.iter().map(|row| row.iter().map(|&x| x % q).collect()).collect())
        .collect();
    let vectors = common_eigenvectors(&mats, k, q)?;
    let z = mod_pow(primitive_root(q), (q - 1) / e, q);
    let bound = isqrt(order);
    let mut rows = Vec::with_capacity(k);
    for mut w in vectors {
        let inv0 = mod_inv(w[0], q)?;
        for x in w.iter_mut() {
            *x = *x * inv0 % q;
        }
        let mut s = 0u64;
        for i in 0..k {
            let ii = cls.inverse_class(i);
            let term = w[i] * w[ii] % q * mod_inv(cls.sizes[i] % q, q)? % q;
            s = (s + term) % q;
        }
        let deg_sq = order % q * mod_inv(s, q)? % q;
        let degree = (1..=bound).find(|d| d * d % q == deg_sq && order % d == 0)?;
        let values_mod_q: Vec<u64> = (0..k)
            .map(|i| w[i] * degree % q * mod_inv(cls.sizes[i] % q, q).unwrap() % q)
            .collect();
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let o = cls.orders[i];
            let zo = mod_pow(z, e / o, q);
            let zo_inv = mod_inv(zo, q)?;
            let o_inv = mod_inv(o % q, q)?;
            let mut counts = vec![0i64; e as usize];
            for t in 0..o {
                let step = mod_pow(zo_inv, t, q);
                let mut acc = 0u64;
                let mut factor = 1u64;
                for l in 0..o {
                    let chi = values_mod_q[cls.power[i][l as usize] as usize];
                    acc = (acc + chi * factor) % q;
                    factor = factor * step % q;
                }
                let mult = acc * o_inv % q;
                if mult > degree {
                    return None;
                }
                counts[(t * (e / o)) as usize] += mult as i64;
            }
            row.push(Cyclotomic::from_exponent_counts(e, &counts));
        }
        rows.push(row);
    }
    let sum_sq: u64 = rows
        .iter()
        .map(|r| {
            let d = r[0].as_integer().and_then(|d| u64::try_from(d).ok()).unwrap_or(0);
            d * d
        })
        .sum();
    (sum_sq == order).then_some(rows)
}
