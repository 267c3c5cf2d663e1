use crate::cyclotomic::{field_degree, Cyclotomic};
use crate::error::{Error, Result};
use crate::fp;
use crate::group::GroupHandle;
use crate::modules::FpModule;

use super::CharacterTable;

/// `Σ_{t ∈ H} ζ_p^{a·(M_t v)}` as exponent counts in conductor `e` (a multiple of `p`).
fn induced_value(module: &FpModule, a: &[u8], v: &[u8], e: u64) -> Cyclotomic {
    let p = module.p() as u64;
    let step = e / p;
    let mut counts = vec![0i64; e as usize];
    for m in module.images() {
        let w = fp::mat_vec(m, v, module.dim(), module.p());
        let dot = a.iter().zip(&w).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p;
        counts[(dot * step) as usize] += 1;
    }
    Cyclotomic::from_exponent_counts(e, &counts)
}

/// Representatives of the complement orbits on nonzero linear characters of `K`,
/// written as dual vectors.
fn dual_orbit_reps(module: &FpModule) -> Result<Vec<Vec<u8>>> {
    Ok(module.dual()?.orbits()?.into_iter().map(|(a, _)| a).collect())
}

/// Table of a Frobenius group `K ⋊ H` built by `build_semidirect`: inflations of the
/// rows of `h_table`, then one induced character per orbit of nonprincipal linear
/// characters of `K`.
pub fn frobenius_table(g: &GroupHandle, h_table: &CharacterTable) -> Result<CharacterTable> {
    let module = g
        .frobenius_module()
        .ok_or_else(|| Error::Precondition("group was not built as a semidirect product".into()))?;
    if !module.is_fixed_point_free() {
        return Err(Error::Precondition("complement does not act fixed-point-freely".into()));
    }
    let cls = g.classes()?;
    let e = cls.exponent;
    let h = module.complement();
    let h_cls = h.classes()?;
    let reps: Vec<(&[u8], u32)> = cls
        .reps
        .iter()
        .map(|r| r.as_pair().expect("semidirect elements"))
        .collect();
    let mut rows = Vec::new();
    for row in &h_table.rows {
        let values = reps
            .iter()
            .map(|&(_, hi)| {
                let hc = h_cls.class_of[hi as usize] as usize;
                row[hc].embed(e)
            })
            .collect();
        rows.push(values);
    }
    for a in dual_orbit_reps(module)? {
        let values = reps
            .iter()
            .map(|&(v, hi)| {
                if hi == 0 {
                    induced_value(module, &a, v, e)
                } else {
                    Cyclotomic::zero(e)
                }
            })
            .collect();
        rows.push(values);
    }
    Ok(CharacterTable::new(cls.clone(), e, rows))
}

/// Field degree of each induced character `θ^G` (one per dual orbit), computed on
/// kernel orbit representatives in conductor `p`; no enumeration of `G` is needed.
pub fn induced_field_degrees(module: &FpModule) -> Result<Vec<u64>> {
    let p = module.p() as u64;
    let kernel_reps: Vec<Vec<u8>> = module.orbits()?.into_iter().map(|(v, _)| v).collect();
    dual_orbit_reps(module)?
        .iter()
        .map(|a| {
            let values: Vec<Cyclotomic> = kernel_reps
                .iter()
                .map(|v| induced_value(module, a, v, p))
                .collect();
            Ok(field_degree(&values, p).0)
        })
        .collect()
}
