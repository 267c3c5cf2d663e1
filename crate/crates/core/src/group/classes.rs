use crate::arith::{gcd, lcm};
use crate::error::Result;
use crate::units::UnitClassSet;

use super::{Element, GroupHandle};

/// Conjugacy classes with power maps.
///
/// Classes are sorted by (element order, class size, least element), so the identity
/// class comes first. `power[c][j]` is the class of `x_c^j` for `0 <= j < orders[c]`.
#[derive(Debug, Clone)]
pub struct ConjugacyData {
    pub order: u64,
    pub exponent: u64,
    pub reps: Vec<Element>,
    pub rep_index: Vec<u32>,
    pub sizes: Vec<u64>,
    pub orders: Vec<u64>,
    /// Class index of every element, in the group's enumeration order.
    pub class_of: Vec<u32>,
    pub power: Vec<Vec<u32>>,
}

impl ConjugacyData {
    pub(crate) fn compute(g: &GroupHandle) -> Result<Self> {
        let en = g.enumeration()?;
        let n = en.elements.len();
        let gens = g.gens();
        let gen_invs: Vec<Element> = gens.iter().map(|x| g.inv(x)).collect();
        let mut raw_class = vec![u32::MAX; n];
        // (members) per raw class
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            raw_class[start] = id;
            let mut members = vec![start as u32];
            let mut i = 0;
            while i < members.len() {
                let x = &en.elements[members[i] as usize];
                for (a, ai) in gens.iter().zip(&gen_invs) {
                    let y = g.mul(&g.mul(ai, x), a);
                    let yi = en.index[&y];
                    if raw_class[yi as usize] == u32::MAX {
                        raw_class[yi as usize] = id;
                        members.push(yi);
                    }
                }
                i += 1;
            }
            raw.push(members);
        }
        // representative = least element; order of representative
        let mut info: Vec<(u64, u64, Element, u32, usize)> = raw
            .iter()
            .enumerate()
            .map(|(ri, members)| {
                let rep_idx = *members
                    .iter()
                    .min_by(|&&a, &&b| en.elements[a as usize].cmp(&en.elements[b as usize]))
                    .unwrap();
                let rep = en.elements[rep_idx as usize].clone();
                let o = g.element_order(&rep);
                (o, members.len() as u64, rep, rep_idx, ri)
            })
            .collect();
        info.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        let mut renumber = vec![0u32; raw.len()];
        for (new, entry) in info.iter().enumerate() {
            renumber[entry.4] = new as u32;
        }
        let class_of: Vec<u32> = raw_class.iter().map(|&r| renumber[r as usize]).collect();
        let orders: Vec<u64> = info.iter().map(|e| e.0).collect();
        let sizes: Vec<u64> = info.iter().map(|e| e.1).collect();
        let reps: Vec<Element> = info.iter().map(|e| e.2.clone()).collect();
        let rep_index: Vec<u32> = info.iter().map(|e| e.3).collect();
        let power = reps
            .iter()
            .zip(&orders)
            .map(|(x, &o)| {
                let mut cur = g.identity();
                (0..o)
                    .map(|_| {
                        let c = class_of[en.index[&cur] as usize];
                        cur = g.mul(&cur, x);
                        c
                    })
                    .collect()
            })
            .collect();
        let exponent = orders.iter().fold(1, |a, &b| lcm(a, b));
        Ok(Self {
            order: n as u64,
            exponent,
            reps,
            rep_index,
            sizes,
            orders,
            class_of,
            power,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Class of `x_c^j` for any integer `j`.
    pub fn power_class(&self, c: usize, j: u64) -> usize {
        let o = self.orders[c];
        self.power[c][(j % o) as usize] as usize
    }

    /// Class of `x_c^{-1}`.
    pub fn inverse_class(&self, c: usize) -> usize {
        let o = self.orders[c];
        self.power_class(c, o - 1)
    }

    pub fn centralizer_order(&self, c: usize) -> u64 {
        self.order / self.sizes[c]
    }

    /// `A_x = {j ∈ U(Z/|x|Z) : x^j ∈ x^G}` for the class `c`.
    pub fn bg_image(&self, c: usize) -> UnitClassSet {
        let o = self.orders[c];
        let members: Vec<u64> = if o == 1 {
            vec![0]
        } else {
            (1..o)
                .filter(|&j| gcd(j, o) == 1 && self.power[c][j as usize] as usize == c)
                .collect()
        };
        UnitClassSet::plain(o, members)
            .expect("residues are units")
            .into_subgroup()
            .expect("conjugacy-preserving residues form a subgroup")
    }
}
