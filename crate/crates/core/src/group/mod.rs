//! Finite groups given by generators with a concrete element arithmetic.

mod classes;
mod element;
mod structure;

pub use classes::ConjugacyData;
pub use element::Element;
pub use structure::PrimeGraph;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::fp;
use crate::modules::FpModule;

pub const DEFAULT_CAP: usize = 2_000_000;

/// Complement data needed to multiply semidirect pairs.
#[derive(Debug)]
pub struct SemidirectCtx {
    pub module: Arc<FpModule>,
    h_mul: Vec<u32>,
    h_inv: Vec<u32>,
    h_order: usize,
}

impl SemidirectCtx {
    pub fn new(module: Arc<FpModule>) -> Result<Self> {
        let h = module.complement();
        let elems = h.elements()?;
        let n = elems.len();
        let mut h_mul = vec![0u32; n * n];
        let mut h_inv = vec![0u32; n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let c = h.mul(a, b);
                h_mul[i * n + j] = h.index_of(&c).expect("closed") as u32;
            }
            h_inv[i] = h.index_of(&h.inv(a)).expect("closed") as u32;
        }
        Ok(Self {
            module,
            h_mul,
            h_inv,
            h_order: n,
        })
    }

    pub fn h_mul(&self, a: u32, b: u32) -> u32 {
        self.h_mul[a as usize * self.h_order + b as usize]
    }

    pub fn h_inv(&self, a: u32) -> u32 {
        self.h_inv[a as usize]
    }
}

#[derive(Clone, Debug)]
pub enum Arith {
    Perm { degree: usize },
    Matrix { p: u32, d: usize },
    Semidirect(Arc<SemidirectCtx>),
}

#[derive(Debug)]
pub(crate) struct Enumeration {
    pub elements: Vec<Element>,
    pub index: HashMap<Element, u32>,
}

#[derive(Debug)]
struct Inner {
    arith: Arith,
    gens: Vec<Element>,
    cap: usize,
    known_order: Option<u64>,
    /// Generated as the full product `K ⋊ H` of its semidirect context.
    whole: bool,
    enumeration: OnceLock<Arc<Enumeration>>,
    classes: OnceLock<Arc<ConjugacyData>>,
}

/// Shared, immutable handle to a finite group. Element lists and class data are
/// computed on first use and then reused.
#[derive(Clone, Debug)]
pub struct GroupHandle(Arc<Inner>);

impl GroupHandle {
    pub fn new(arith: Arith, gens: Vec<Element>) -> Self {
        Self::with_cap(arith, gens, DEFAULT_CAP)
    }

    pub fn with_cap(arith: Arith, gens: Vec<Element>, cap: usize) -> Self {
        Self(Arc::new(Inner {
            arith,
            gens,
            cap,
            known_order: None,
            whole: false,
            enumeration: OnceLock::new(),
            classes: OnceLock::new(),
        }))
    }

    /// Permutation group on `degree` points.
    pub fn perm(degree: usize, gens: Vec<Element>) -> Self {
        Self::new(Arith::Perm { degree }, gens)
    }

    /// Matrix group of `d × d` matrices over `F_p`.
    pub fn matrix(p: u32, d: usize, gens: Vec<Mat>) -> Self {
        Self::new(Arith::Matrix { p, d }, gens.into_iter().map(Element::Mat).collect())
    }

    pub(crate) fn semidirect(ctx: Arc<SemidirectCtx>, gens: Vec<Element>, order: u64, cap: usize) -> Self {
        Self(Arc::new(Inner {
            arith: Arith::Semidirect(ctx),
            gens,
            cap,
            known_order: Some(order),
            whole: true,
            enumeration: OnceLock::new(),
            classes: OnceLock::new(),
        }))
    }

    /// Same group with a different enumeration cap (lazy data is not shared).
    pub fn recapped(&self, cap: usize) -> Self {
        Self(Arc::new(Inner {
            arith: self.0.arith.clone(),
            gens: self.0.gens.clone(),
            cap,
            known_order: self.0.known_order,
            whole: self.0.whole,
            enumeration: OnceLock::new(),
            classes: OnceLock::new(),
        }))
    }

    pub fn arith(&self) -> &Arith {
        &self.0.arith
    }

    pub fn gens(&self) -> &[Element] {
        &self.0.gens
    }

    pub fn cap(&self) -> usize {
        self.0.cap
    }

    /// The module this group was built from, for full semidirect products (not their
    /// subgroups).
    pub fn frobenius_module(&self) -> Option<&Arc<FpModule>> {
        match &self.0.arith {
            Arith::Semidirect(ctx) if self.0.whole => Some(&ctx.module),
            _ => None,
        }
    }

    pub fn identity(&self) -> Element {
        match &self.0.arith {
            Arith::Perm { degree } => Element::Perm((0..*degree as u16).collect()),
            Arith::Matrix { d, .. } => Element::Mat(fp::identity(*d)),
            Arith::Semidirect(ctx) => Element::Pair {
                v: vec![0u8; ctx.module.dim()].into_boxed_slice(),
                h: 0,
            },
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.0.arith, a, b) {
            (Arith::Perm { .. }, Element::Perm(x), Element::Perm(y)) => {
                Element::Perm(x.iter().map(|&i| y[i as usize]).collect())
            }
            (Arith::Matrix { p, d }, Element::Mat(x), Element::Mat(y)) => {
                Element::Mat(fp::mul(x, y, *d, *p))
            }
            (Arith::Semidirect(ctx), Element::Pair { v, h }, Element::Pair { v: w, h: k }) => {
                let m = &ctx.module;
                let p = m.p();
                let hw = fp::mat_vec(m.image(*h as usize), w, m.dim(), p);
                let v2: Box<[u8]> = v
                    .iter()
                    .zip(&hw)
                    .map(|(&a, &b)| ((a as u32 + b as u32) % p) as u8)
                    .collect();
                Element::Pair {
                    v: v2,
                    h: ctx.h_mul(*h, *k),
                }
            }
            _ => panic!("element does not match group representation"),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match (&self.0.arith, a) {
            (Arith::Perm { .. }, Element::Perm(x)) => {
                let mut out = vec![0u16; x.len()];
                for (i, &y) in x.iter().enumerate() {
                    out[y as usize] = i as u16;
                }
                Element::Perm(out.into_boxed_slice())
            }
            (Arith::Matrix { p, d }, Element::Mat(x)) => {
                Element::Mat(fp::inverse(x, *d, *p).expect("group elements are invertible"))
            }
            (Arith::Semidirect(ctx), Element::Pair { v, h }) => {
                let m = &ctx.module;
                let p = m.p();
                let hi = ctx.h_inv(*h);
                let w = fp::mat_vec(m.image(hi as usize), v, m.dim(), p);
                Element::Pair {
                    v: w.iter().map(|&x| ((p - x as u32) % p) as u8).collect(),
                    h: hi,
                }
            }
            _ => panic!("element does not match group representation"),
        }
    }

    pub fn pow(&self, a: &Element, mut e: u64) -> Element {
        let mut result = self.identity();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// `a^{-1} b a`.
    pub fn conj(&self, b: &Element, a: &Element) -> Element {
        self.mul(&self.mul(&self.inv(a), b), a)
    }

    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        self.mul(&self.mul(&self.inv(a), &self.inv(b)), &self.mul(a, b))
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        *a == self.identity()
    }

    pub fn element_order(&self, g: &Element) -> u64 {
        let id = self.identity();
        let mut cur = g.clone();
        let mut k = 1;
        while cur != id {
            cur = self.mul(&cur, g);
            k += 1;
        }
        k
    }

    pub(crate) fn enumeration(&self) -> Result<Arc<Enumeration>> {
        if let Some(e) = self.0.enumeration.get() {
            return Ok(Arc::clone(e));
        }
        if let Some(order) = self.0.known_order {
            if order > self.0.cap as u64 {
                return Err(Error::TooLarge { cap: self.0.cap });
            }
        }
        let id = self.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &self.0.gens {
                let y = self.mul(&elements[i], g);
                if !index.contains_key(&y) {
                    if elements.len() >= self.0.cap {
                        return Err(Error::TooLarge { cap: self.0.cap });
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let e = Arc::new(Enumeration { elements, index });
        Ok(Arc::clone(self.0.enumeration.get_or_init(|| e)))
    }

    /// All elements, identity first, in breadth-first order from the generators.
    pub fn elements(&self) -> Result<Vec<Element>> {
        Ok(self.enumeration()?.elements.clone())
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.enumeration().ok()?.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Element) -> Result<bool> {
        Ok(self.enumeration()?.index.contains_key(g))
    }

    pub fn order(&self) -> Result<u64> {
        if let Some(o) = self.0.known_order {
            return Ok(o);
        }
        Ok(self.enumeration()?.elements.len() as u64)
    }

    pub fn exponent(&self) -> Result<u64> {
        Ok(self.classes()?.exponent)
    }

    pub fn classes(&self) -> Result<Arc<ConjugacyData>> {
        if let Some(c) = self.0.classes.get() {
            return Ok(Arc::clone(c));
        }
        let data = Arc::new(ConjugacyData::compute(self)?);
        Ok(Arc::clone(self.0.classes.get_or_init(|| data)))
    }

    /// Order of each element in enumeration order.
    pub fn element_orders(&self) -> Result<Vec<u64>> {
        let cls = self.classes()?;
        Ok(cls.class_of.iter().map(|&c| cls.orders[c as usize]).collect())
    }

    /// Exponent from element orders, without needing classes elsewhere.
    pub fn exponent_of(orders: &[u64]) -> u64 {
        orders.iter().fold(1, |a, &b| lcm(a, b))
    }
}

pub type Mat = fp::Mat;

impl fmt::Display for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.0.arith {
            Arith::Perm { degree } => format!("permutation group of degree {degree}"),
            Arith::Matrix { p, d } => format!("matrix group in GL({d},{p})"),
            Arith::Semidirect(ctx) => format!(
                "semidirect product F_{}^{} ⋊ H",
                ctx.module.p(),
                ctx.module.dim()
            ),
        };
        write!(f, "{kind} with {} generators", self.0.gens.len())
    }
}
