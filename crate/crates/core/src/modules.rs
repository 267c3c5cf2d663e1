//! `F_p H`-modules given by matrix images of complement generators.

use std::sync::Arc;

use crate::arith::mult_order;
use crate::error::{Error, Result};
use crate::fp::{self, Mat};
use crate::group::{Element, GroupHandle, SemidirectCtx};
use crate::units::UnitClassSet;

pub const DEFAULT_SCAN_CAP: u64 = 1_000_000;

#[derive(Debug)]
pub struct FpModule {
    p: u32,
    d: usize,
    complement: GroupHandle,
    gen_images: Vec<Mat>,
    /// Image of every complement element, indexed like `complement.elements()`.
    images: Vec<Mat>,
}

impl FpModule {
    /// Extends generator images to the whole complement, failing when they do not
    /// respect the group's relations.
    pub fn new(p: u32, d: usize, complement: GroupHandle, gen_images: Vec<Mat>) -> Result<Self> {
        if gen_images.len() != complement.gens().len() {
            return Err(Error::Precondition(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                complement.gens().len()
            )));
        }
        for m in &gen_images {
            if m.len() != d * d || m.iter().any(|&x| x as u32 >= p) {
                return Err(Error::Precondition("matrix entries out of range".into()));
            }
            if fp::det(m, d, p) == 0 {
                return Err(Error::Precondition("generator image is singular".into()));
            }
        }
        let elems = complement.elements()?;
        let mut images: Vec<Option<Mat>> = vec![None; elems.len()];
        images[0] = Some(fp::identity(d));
        for i in 0..elems.len() {
            let base = images[i]
                .clone()
                .expect("breadth-first order reaches every element from earlier ones");
            for (g, m) in complement.gens().iter().zip(&gen_images) {
                let y = complement.mul(&elems[i], g);
                let j = complement.index_of(&y).expect("closed");
                let candidate = fp::mul(&base, m, d, p);
                match &images[j] {
                    None => images[j] = Some(candidate),
                    Some(existing) if *existing == candidate => {}
                    Some(_) => {
                        return Err(Error::NotHomomorphism(format!(
                            "two words for element {} have different images",
                            elems[j]
                        )))
                    }
                }
            }
        }
        Ok(Self {
            p,
            d,
            complement,
            gen_images,
            images: images.into_iter().map(|m| m.expect("all reached")).collect(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn complement(&self) -> &GroupHandle {
        &self.complement
    }

    pub fn gen_images(&self) -> &[Mat] {
        &self.gen_images
    }

    pub fn image(&self, h: usize) -> &[u8] {
        &self.images[h]
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    /// `|K| = p^d`.
    pub fn kernel_order(&self) -> u64 {
        (self.p as u64).pow(self.d as u32)
    }

    fn check_scan(&self, cap: u64) -> Result<()> {
        let size = self.kernel_order();
        if size > cap {
            return Err(Error::ScanCap { size, cap });
        }
        Ok(())
    }

    /// Dimension of the submodule spanned by the orbit of `v`.
    fn spin_dim(&self, v: &[u8]) -> usize {
        let q = self.p as u64;
        let d = self.d;
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut queue: Vec<Vec<u8>> = vec![v.to_vec()];
        while let Some(w) = queue.pop() {
            let mut rows = basis.clone();
            rows.push(w.iter().map(|&x| x as u64).collect());
            if crate::linalg::rank(&rows, q) > basis.len() {
                basis = rows;
                if basis.len() == d {
                    return d;
                }
                for m in &self.gen_images {
                    queue.push(fp::mat_vec(m, &w, d, self.p));
                }
            }
        }
        basis.len()
    }

    /// A proper nonzero submodule exists iff some nonzero vector spins to less than
    /// the whole space; vectors are tried up to scalar multiples.
    pub fn is_irreducible(&self, cap: u64) -> Result<bool> {
        self.check_scan(cap)?;
        let total = self.kernel_order();
        for idx in 1..total {
            let v = fp::vector_from_index(idx, self.d, self.p);
            let lead = v.iter().rev().find(|&&x| x != 0).copied().unwrap();
            if lead != 1 {
                continue;
            }
            if self.spin_dim(&v) < self.d {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every nontrivial complement element acts without nonzero fixed vectors.
    pub fn is_fixed_point_free(&self) -> bool {
        if self.images.len() < 2 {
            return false;
        }
        let id = fp::identity(self.d);
        let minus_one = self.p - 1;
        self.images[1..].iter().all(|m| {
            let shifted = fp::add(m, &fp::scale(&id, minus_one, self.p), self.p);
            fp::det(&shifted, self.d, self.p) != 0
        })
    }

    /// Smallest scalar `a` of multiplicative order `k` such that every nonzero vector is
    /// an `a`-eigenvector of some complement element.
    pub fn k_eigenvalue_witness(&self, k: u64, cap: u64) -> Result<Option<u64>> {
        let p = self.p as u64;
        if k == 0 || (p - 1) % k != 0 {
            return Err(Error::BadEigenOrder { k, p });
        }
        self.check_scan(cap)?;
        let total = self.kernel_order() as usize;
        let mut distinct: Vec<&Mat> = self.images.iter().collect();
        distinct.sort();
        distinct.dedup();
        for a in 1..p {
            if mult_order(a, p) != k {
                continue;
            }
            let mut covered = vec![false; total];
            for m in &distinct {
                let rows: Vec<Vec<u64>> = (0..self.d)
                    .map(|i| {
                        (0..self.d)
                            .map(|j| {
                                let x = m[i * self.d + j] as u64;
                                if i == j {
                                    (x + p - a) % p
                                } else {
                                    x
                                }
                            })
                            .collect()
                    })
                    .collect();
                let kernel = crate::linalg::nullspace(&rows, p, self.d);
                mark_span(&kernel, p, self.d, &mut covered);
            }
            if covered[1..].iter().all(|&c| c) {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    pub fn has_k_eigenvalue_property(&self, k: u64, cap: u64) -> Result<bool> {
        Ok(self.k_eigenvalue_witness(k, cap)?.is_some())
    }

    /// Dual module: generator images replaced by inverse transposes.
    pub fn dual(&self) -> Result<FpModule> {
        let gens = self
            .gen_images
            .iter()
            .map(|m| fp::transpose(&fp::inverse(m, self.d, self.p).expect("invertible"), self.d))
            .collect();
        FpModule::new(self.p, self.d, self.complement.clone(), gens)
    }

    /// Scalars `λ` with `λ·I` in the image of the complement, as a subgroup of `U(Z/pZ)`.
    pub fn z_subgroup(&self) -> UnitClassSet {
        let scalars: Vec<u64> = self
            .images
            .iter()
            .filter_map(|m| fp::as_scalar(m, self.d))
            .map(u64::from)
            .collect();
        UnitClassSet::plain(self.p as u64, scalars)
            .expect("scalars are units")
            .into_subgroup()
            .expect("scalar matrices in a group form a subgroup")
    }

    /// Diagonal action on `n` copies of the module.
    pub fn power(&self, n: usize) -> Result<FpModule> {
        let gens = self
            .gen_images
            .iter()
            .map(|m| {
                let blocks: Vec<(&[u8], usize)> = (0..n).map(|_| (&m[..], self.d)).collect();
                fp::block_diag(&blocks)
            })
            .collect();
        FpModule::new(self.p, self.d * n, self.complement.clone(), gens)
    }

    /// Direct sum of two modules for the same complement.
    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        if self.p != other.p {
            return Err(Error::Precondition("direct sum over different primes".into()));
        }
        let gens = self
            .gen_images
            .iter()
            .zip(&other.gen_images)
            .map(|(a, b)| fp::block_diag(&[(&a[..], self.d), (&b[..], other.d)]))
            .collect();
        FpModule::new(self.p, self.d + other.d, self.complement.clone(), gens)
    }

    /// Orbit representatives (least index) of nonzero vectors under `v ↦ M_h v`,
    /// with orbit sizes.
    pub fn orbits(&self) -> Result<Vec<(Vec<u8>, usize)>> {
        self.check_scan(DEFAULT_SCAN_CAP)?;
        let total = self.kernel_order();
        let mut seen = vec![false; total as usize];
        let mut out = Vec::new();
        for idx in 1..total {
            if seen[idx as usize] {
                continue;
            }
            let v = fp::vector_from_index(idx, self.d, self.p);
            let mut size = 0;
            for m in &self.images {
                let w = fp::mat_vec(m, &v, self.d, self.p);
                let wi = fp::vector_index(&w, self.p) as usize;
                if !seen[wi] {
                    seen[wi] = true;
                    size += 1;
                }
            }
            out.push((v, size));
        }
        Ok(out)
    }
}

fn mark_span(basis: &[Vec<u64>], p: u64, d: usize, covered: &mut [bool]) {
    let dim = basis.len() as u32;
    let count = p.pow(dim);
    for c in 0..count {
        let coeffs = fp::vector_from_index(c, basis.len(), p as u32);
        let mut v = vec![0u64; d];
        for (b, &x) in basis.iter().zip(&coeffs) {
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = (*vi + x as u64 * bi) % p;
            }
        }
        let v8: Vec<u8> = v.iter().map(|&x| x as u8).collect();
        covered[fp::vector_index(&v8, p as u32) as usize] = true;
    }
}

/// `K ⋊ H` with `(v,h)(w,k) = (v + h·w, hk)`.
pub fn build_semidirect(module: Arc<FpModule>) -> Result<GroupHandle> {
    build_semidirect_capped(module, crate::group::DEFAULT_CAP)
}

pub fn build_semidirect_capped(module: Arc<FpModule>, cap: usize) -> Result<GroupHandle> {
    let d = module.dim();
    let h_order = module.complement().order()?;
    let order = module.kernel_order() * h_order;
    let h_gen_idx: Vec<u32> = module
        .complement()
        .gens()
        .iter()
        .map(|g| module.complement().index_of(g).expect("generator in group") as u32)
        .collect();
    let ctx = Arc::new(SemidirectCtx::new(Arc::clone(&module))?);
    let mut gens = Vec::new();
    for i in 0..d {
        let mut v = vec![0u8; d];
        v[i] = 1;
        gens.push(Element::Pair {
            v: v.into_boxed_slice(),
            h: 0,
        });
    }
    for h in h_gen_idx {
        gens.push(Element::Pair {
            v: vec![0u8; d].into_boxed_slice(),
            h,
        });
    }
    Ok(GroupHandle::semidirect(ctx, gens, order, cap))
}

/// `Z_G(x)·⟨r mod p⟩ = U(Z/pZ)` with `[U(Z/pZ) : Z_G(x)] ≤ 2`.
pub fn z_condition(z: &UnitClassSet, r: u64) -> bool {
    let p = z.modulus();
    if z.index() > 2 {
        return false;
    }
    let mut gens: Vec<u64> = z.members().to_vec();
    gens.push(r % p);
    UnitClassSet::subgroup_generated(p, &gens)
        .map(|s| s.len() == UnitClassSet::full(p).len())
        .unwrap_or(false)
}

/// Semi-rationality of `G_n = K^n ⋊ H` for every `n ≥ 2` at the residue `r`, given
/// the semi-rationality set of `G = K ⋊ H`.
pub fn gn_semi_rationality(module: &FpModule, base_s: &UnitClassSet, r: u64) -> Result<bool> {
    if !base_s.contains(r) {
        return Err(Error::BaseNotSemiRational { r });
    }
    Ok(z_condition(&module.z_subgroup(), r))
}

/// `S_{G_n}` for every `n ≥ 2`.
pub fn gn_set(module: &FpModule, base_s: &UnitClassSet) -> UnitClassSet {
    let z = module.z_subgroup();
    let members: Vec<u64> = base_s
        .members()
        .iter()
        .copied()
        .filter(|&r| z_condition(&z, r))
        .collect();
    UnitClassSet::plain(base_s.modulus(), members).expect("subset of units")
}
