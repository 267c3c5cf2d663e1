//! Subsets of the unit group `U(Z/nZ)`: subgroups, cosets and plain sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{gcd, is_unit, mult_order, units};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Subgroup,
    /// `r·S` for the recorded representative and subgroup.
    Coset { rep: u64, subgroup: Vec<u64> },
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitClassSet {
    modulus: u64,
    members: Vec<u64>,
    structure: Structure,
}

impl UnitClassSet {
    /// Arbitrary set of residues; members are reduced and sorted.
    pub fn plain(modulus: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set = reduce_all(modulus, members)?;
        Ok(Self {
            modulus,
            members: set,
            structure: Structure::Plain,
        })
    }

    pub fn empty(modulus: u64) -> Self {
        Self {
            modulus,
            members: Vec::new(),
            structure: Structure::Plain,
        }
    }

    pub fn full(modulus: u64) -> Self {
        Self {
            modulus,
            members: units(modulus),
            structure: Structure::Subgroup,
        }
    }

    /// Closure of `gens` under multiplication mod `n`.
    pub fn subgroup_generated(n: u64, gens: &[u64]) -> Result<Self> {
        let gens = reduce_all(n, gens.iter().copied())?;
        let one = 1 % n;
        let mut seen = BTreeSet::from([one]);
        let mut frontier = vec![one];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = x * g % n;
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self {
            modulus: n,
            members: seen.into_iter().collect(),
            structure: Structure::Subgroup,
        })
    }

    /// The coset `r·S`. `S` must be a subgroup.
    pub fn coset(r: u64, s: &UnitClassSet) -> Result<Self> {
        let n = s.modulus;
        if !is_unit(r, n) {
            return Err(Error::NotCoprime { j: r, n });
        }
        if !s.is_subgroup() {
            return Err(Error::Precondition("coset of a set that is not a subgroup".into()));
        }
        let members: BTreeSet<u64> = s.members.iter().map(|&x| r % n * x % n).collect();
        Ok(Self {
            modulus: n,
            members: members.into_iter().collect(),
            structure: Structure::Coset {
                rep: r % n,
                subgroup: s.members.clone(),
            },
        })
    }

    /// `−r·⟨gens⟩` style helper accepting signed representatives.
    pub fn signed_coset(n: u64, r: i64, gens: &[u64]) -> Result<Self> {
        let s = Self::subgroup_generated(n, gens)?;
        Self::coset(crate::arith::residue(r, n), &s)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: u64) -> bool {
        self.members.binary_search(&(r % self.modulus.max(1))).is_ok()
            || (self.modulus == 1 && !self.members.is_empty())
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn is_subgroup(&self) -> bool {
        match self.structure {
            Structure::Subgroup => true,
            _ => is_closed(self.modulus, &self.members),
        }
    }

    /// Same members (structure tags are ignored).
    pub fn same_set(&self, other: &UnitClassSet) -> bool {
        self.modulus == other.modulus && self.members == other.members
    }

    /// Mark a set as a subgroup after checking closure.
    pub fn into_subgroup(mut self) -> Option<Self> {
        if is_closed(self.modulus, &self.members) {
            self.structure = Structure::Subgroup;
            Some(self)
        } else {
            None
        }
    }

    /// Index in `U(Z/nZ)`; only meaningful for subgroups.
    pub fn index(&self) -> u64 {
        units(self.modulus).len() as u64 / self.members.len().max(1) as u64
    }

    /// Image under reduction `Z/nZ -> Z/mZ` for `m | n`.
    pub fn reduce_to(&self, m: u64) -> Self {
        let members: BTreeSet<u64> = self.members.iter().map(|&x| x % m).collect();
        let structure = if matches!(self.structure, Structure::Subgroup) {
            Structure::Subgroup
        } else {
            Structure::Plain
        };
        Self {
            modulus: m,
            members: members.into_iter().collect(),
            structure,
        }
    }

    /// Least multiplicative order among members.
    pub fn min_order(&self) -> Option<u64> {
        self.members.iter().map(|&r| mult_order(r, self.modulus)).min()
    }

    /// A small generating set for a subgroup, chosen greedily by increasing residue.
    pub fn generators(&self) -> Vec<u64> {
        let n = self.modulus;
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([1 % n]);
        for &x in &self.members {
            if span.contains(&x) {
                continue;
            }
            gens.push(x);
            let closure = Self::subgroup_generated(n, &gens).expect("members are units");
            span = closure.members.into_iter().collect();
        }
        gens
    }

    /// Render as `r·⟨g1,g2⟩ mod n` for cosets and subgroups, `{a,b} mod n` otherwise.
    pub fn render(&self) -> String {
        let n = self.modulus;
        if self.members.is_empty() {
            return format!("{{}} mod {n}");
        }
        if n == 1 {
            return "{1} mod 1".to_string();
        }
        if n == 2 {
            return format!("{{{}}} mod {n}", join(&self.members));
        }
        if self.is_subgroup() {
            return format!("⟨{}⟩ mod {n}", gens_text(self));
        }
        let rep = match &self.structure {
            Structure::Coset { rep, .. } => Some(*rep),
            _ => None,
        };
        if let Some(coset) = self.as_coset(rep) {
            let (r, sub) = coset;
            let r_text = if r + 1 == n {
                "-1".to_string()
            } else {
                r.to_string()
            };
            return format!("{r_text}·⟨{}⟩ mod {n}", gens_text(&sub));
        }
        format!("{{{}}} mod {n}", join(&self.members))
    }

    /// Write the set as `r·S` with `S = r^{-1}·set` a subgroup, if possible.
    /// Prefers `r = n − 1` when it is a member.
    pub fn as_coset(&self, hint: Option<u64>) -> Option<(u64, UnitClassSet)> {
        let n = self.modulus;
        let first = *self.members.first()?;
        let candidates = [hint, self.contains(n - 1).then_some(n - 1), Some(first)];
        for r in candidates.into_iter().flatten() {
            let inv = crate::arith::mod_inv(r, n)?;
            let shifted: Vec<u64> = self.members.iter().map(|&x| x * inv % n).collect();
            if let Ok(sub) = Self::plain(n, shifted) {
                if let Some(sub) = sub.into_subgroup() {
                    return Some((r, sub));
                }
            }
        }
        None
    }
}

impl fmt::Display for UnitClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn gens_text(s: &UnitClassSet) -> String {
    let gens = s.generators();
    if gens.is_empty() {
        "1".to_string()
    } else {
        join(&gens)
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn reduce_all(n: u64, xs: impl IntoIterator<Item = u64>) -> Result<Vec<u64>> {
    let mut out = BTreeSet::new();
    for x in xs {
        if n > 1 && gcd(x % n, n) != 1 {
            return Err(Error::NotCoprime { j: x, n });
        }
        out.insert(x % n.max(1));
    }
    Ok(out.into_iter().collect())
}

fn is_closed(n: u64, members: &[u64]) -> bool {
    if members.is_empty() || !members.contains(&(1 % n)) {
        return false;
    }
    members
        .iter()
        .all(|&a| members.iter().all(|&b| members.binary_search(&(a * b % n)).is_ok()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_subgroups() {
        let s = UnitClassSet::subgroup_generated(20, &[13]).unwrap();
        assert_eq!(s.members(), &[1, 9, 13, 17]);
        let s = UnitClassSet::subgroup_generated(21, &[4]).unwrap();
        assert_eq!(s.members(), &[1, 4, 16]);
        assert!(UnitClassSet::subgroup_generated(20, &[5]).is_err());
    }

    #[test]
    fn cosets_and_rendering() {
        let one = UnitClassSet::subgroup_generated(6, &[]).unwrap();
        let c = UnitClassSet::coset(5, &one).unwrap();
        assert_eq!(c.members(), &[5]);
        let s = UnitClassSet::signed_coset(20, -1, &[13]).unwrap();
        assert_eq!(s.members(), &[3, 7, 11, 19]);
        assert_eq!(s.render(), "-1·⟨9,13⟩ mod 20");
        assert_eq!(UnitClassSet::full(1).render(), "{1} mod 1");
    }

    #[test]
    fn coset_decomposition_recovers_subgroup() {
        let s = UnitClassSet::signed_coset(660, -7, &[541, 529, 221, 331]).unwrap();
        let plain = UnitClassSet::plain(660, s.members().to_vec()).unwrap();
        let (r, sub) = plain.as_coset(None).unwrap();
        assert!(s.contains(r));
        assert_eq!(sub.members(), UnitClassSet::subgroup_generated(660, &[541, 529, 221, 331]).unwrap().members());
    }
}
