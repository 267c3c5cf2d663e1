use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::arith::prime_divisors;
use crate::error::Result;
use crate::units::UnitClassSet;

use super::{Element, GroupHandle};

/// Gruenberg–Kegel graph: primes dividing `|G|`, joined when `G` has an element of order `pq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeGraph {
    pub vertices: Vec<u64>,
    pub edges: BTreeSet<(u64, u64)>,
}

impl PrimeGraph {
    /// Connected components, each sorted, in order of least vertex.
    pub fn components(&self) -> Vec<Vec<u64>> {
        let mut remaining: BTreeSet<u64> = self.vertices.iter().copied().collect();
        let mut out = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut comp = vec![start];
            remaining.remove(&start);
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for &(a, b) in &self.edges {
                    let other = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if remaining.remove(&other) {
                        comp.push(other);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

impl fmt::Display for PrimeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices.iter().map(|p| p.to_string()).collect();
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "vertices {{{}}} edges {{{}}}", v.join(","), e.join(","))
    }
}

impl GroupHandle {
    /// Closure of a set of elements under multiplication (all elements lie in `self`).
    pub(crate) fn closure(&self, gens: &[Element]) -> HashSet<Element> {
        let id = self.identity();
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Subgroup generated by the given elements, sharing this group's arithmetic.
    pub fn subgroup(&self, gens: Vec<Element>) -> GroupHandle {
        let gens: Vec<Element> = gens.into_iter().filter(|g| !self.is_identity(g)).collect();
        GroupHandle::with_cap(self.arith().clone(), gens, self.cap())
    }

    /// Subgroup whose element set is known; a small generating set is chosen greedily.
    pub fn subgroup_from_elements(&self, mut elements: Vec<Element>) -> GroupHandle {
        elements.sort();
        let mut gens: Vec<Element> = Vec::new();
        let mut span = HashSet::from([self.identity()]);
        for x in &elements {
            if span.contains(x) {
                continue;
            }
            gens.push(x.clone());
            span = self.closure(&gens);
            if span.len() == elements.len() {
                break;
            }
        }
        self.subgroup(gens)
    }

    pub fn centralizer(&self, x: &Element) -> Result<GroupHandle> {
        let elems = self.elements()?;
        let cent: Vec<Element> = elems
            .into_iter()
            .filter(|g| self.mul(g, x) == self.mul(x, g))
            .collect();
        Ok(self.subgroup_from_elements(cent))
    }

    pub fn center(&self) -> Result<GroupHandle> {
        let elems = self.elements()?;
        let z: Vec<Element> = elems
            .into_iter()
            .filter(|g| self.gens().iter().all(|h| self.mul(g, h) == self.mul(h, g)))
            .collect();
        Ok(self.subgroup_from_elements(z))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.gens();
        gens.iter()
            .all(|a| gens.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Element]) -> GroupHandle {
        let mut gens: Vec<Element> = seeds.iter().filter(|s| !self.is_identity(s)).cloned().collect();
        loop {
            let span = self.closure(&gens);
            let extra = gens.iter().flat_map(|n| {
                self.gens().iter().map(move |g| (n, g))
            }).map(|(n, g)| self.conj(n, g)).find(|c| !span.contains(c));
            match extra {
                Some(c) => gens.push(c),
                None => return self.subgroup_from_elements(span.into_iter().collect()),
            }
        }
    }

    pub fn derived_subgroup(&self) -> GroupHandle {
        let gens = self.gens();
        let comms: Vec<Element> = gens
            .iter()
            .flat_map(|a| gens.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.normal_closure(&comms)
    }

    /// Length of the lower central series, or `None` when it stabilizes above the identity.
    pub fn nilpotency_class(&self) -> Result<Option<u32>> {
        let mut current = self.clone();
        let mut order = self.order()?;
        let mut class = 0;
        while order > 1 {
            let comms: Vec<Element> = current
                .gens()
                .iter()
                .flat_map(|a| self.gens().iter().map(move |b| (a, b)))
                .map(|(a, b)| self.commutator(a, b))
                .collect();
            let next = self.normal_closure(&comms);
            let next_order = next.order()?;
            if next_order == order {
                return Ok(None);
            }
            class += 1;
            current = next;
            order = next_order;
        }
        Ok(Some(class))
    }

    /// A Sylow `p`-subgroup, grown one normalizing `p`-element at a time.
    pub fn sylow(&self, p: u64) -> Result<GroupHandle> {
        let order = self.order()?;
        let mut target = 1;
        let mut m = order;
        while m % p == 0 {
            m /= p;
            target *= p;
        }
        let orders = self.element_orders()?;
        let elems = self.elements()?;
        let p_elems: Vec<&Element> = elems
            .iter()
            .zip(&orders)
            .filter(|(_, &o)| o > 1 && is_power_of(o, p))
            .map(|(e, _)| e)
            .collect();
        let mut gens: Vec<Element> = Vec::new();
        let mut span = HashSet::from([self.identity()]);
        while (span.len() as u64) < target {
            let next = p_elems.iter().find(|x| {
                !span.contains(**x) && gens.iter().all(|g| span.contains(&self.conj(g, x)))
            });
            let Some(x) = next else { break };
            gens.push((*x).clone());
            span = self.closure(&gens);
        }
        Ok(self.subgroup_from_elements(span.into_iter().collect()))
    }

    pub fn prime_graph(&self) -> Result<PrimeGraph> {
        let cls = self.classes()?;
        let vertices = prime_divisors(cls.order);
        let mut edges = BTreeSet::new();
        for &o in &cls.orders {
            let ps = prime_divisors(o);
            for (i, &a) in ps.iter().enumerate() {
                for &b in &ps[i + 1..] {
                    edges.insert((a, b));
                }
            }
        }
        Ok(PrimeGraph { vertices, edges })
    }

    /// Image of `B_G(x)` in `U(Z/|x|Z)`.
    pub fn bg(&self, x: &Element) -> Result<UnitClassSet> {
        let cls = self.classes()?;
        let idx = self
            .index_of(x)
            .ok_or_else(|| crate::error::Error::Precondition("element not in group".into()))?;
        Ok(cls.bg_image(cls.class_of[idx] as usize))
    }

    /// `|N_G(⟨x⟩)| / |C_G(x)|` by direct search (used as an independent check of `bg`).
    pub fn normalizer_quotient_order(&self, x: &Element) -> Result<u64> {
        let elems = self.elements()?;
        let cyc = self.closure(std::slice::from_ref(x));
        let mut norm = 0u64;
        let mut cent = 0u64;
        for g in &elems {
            let c = self.conj(x, g);
            if c == *x {
                cent += 1;
            }
            if cyc.contains(&c) {
                norm += 1;
            }
        }
        Ok(norm / cent)
    }

    pub fn is_subgroup_normal(&self, sub: &GroupHandle) -> Result<bool> {
        for n in sub.gens() {
            for g in self.gens() {
                if !sub.contains(&self.conj(n, g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}
