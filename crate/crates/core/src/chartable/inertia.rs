use crate::error::{Error, Result};
use crate::fp;
use crate::group::{Element, GroupHandle};
use crate::units::UnitClassSet;

/// Inertia and semi-inertia subgroups of a linear character `θ_a` of the kernel,
/// with the Galois residues realized by conjugation.
#[derive(Clone, Debug)]
pub struct InertiaPair {
    pub inertia: GroupHandle,
    pub semi_inertia: GroupHandle,
    pub image: UnitClassSet,
    /// `|I_θ|` and `|I*_θ|`.
    pub inertia_order: u64,
    pub semi_inertia_order: u64,
}

impl InertiaPair {
    pub fn quotient_order(&self) -> u64 {
        self.semi_inertia_order / self.inertia_order
    }
}

/// `θ_a(v) = ζ_p^{a·v}`. Conjugation by `h` sends `θ_a` to `θ_{M_h^T a}`.
pub fn semi_inertia(g: &GroupHandle, a: &[u8]) -> Result<InertiaPair> {
    let module = g
        .frobenius_module()
        .ok_or_else(|| Error::Precondition("group was not built as a semidirect product".into()))?;
    let p = module.p();
    let d = module.dim();
    if a.len() != d {
        return Err(Error::Precondition("dual vector has the wrong length".into()));
    }
    let kernel_order = module.kernel_order();
    let mut stab = Vec::new();
    let mut semi = Vec::new();
    let mut image = Vec::new();
    for (hi, m) in module.images().iter().enumerate() {
        let b = fp::mat_vec(&fp::transpose(m, d), a, d, p);
        let scalar = (1..p).find(|&j| {
            a.iter()
                .zip(&b)
                .all(|(&x, &y)| (x as u32 * j % p) as u8 == y)
        });
        if let Some(j) = scalar {
            semi.push(hi as u32);
            image.push(j as u64);
            if j == 1 {
                stab.push(hi as u32);
            }
        }
    }
    let make = |hs: &[u32]| -> GroupHandle {
        let mut gens: Vec<Element> = (0..d)
            .map(|i| {
                let mut v = vec![0u8; d];
                v[i] = 1;
                Element::Pair {
                    v: v.into_boxed_slice(),
                    h: 0,
                }
            })
            .collect();
        gens.extend(hs.iter().filter(|&&h| h != 0).map(|&h| Element::Pair {
            v: vec![0u8; d].into_boxed_slice(),
            h,
        }));
        g.subgroup(gens)
    };
    let image = UnitClassSet::plain(p as u64, image)?
        .into_subgroup()
        .ok_or_else(|| Error::Precondition("realized residues are not a subgroup".into()))?;
    Ok(InertiaPair {
        inertia: make(&stab),
        semi_inertia: make(&semi),
        image,
        inertia_order: kernel_order * stab.len() as u64,
        semi_inertia_order: kernel_order * semi.len() as u64,
    })
}
