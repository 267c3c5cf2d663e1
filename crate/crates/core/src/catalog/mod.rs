//! Named groups: Frobenius complements, Frobenius groups with irreducible kernel,
//! odd-order Frobenius groups with complement `C_3`, and counterexamples.

mod build;
mod recipes;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::fp::{self, Mat};
use crate::group::{Element, GroupHandle};
use crate::modules::{build_semidirect, FpModule};

use build::{cyclic_extension, cyclic_perm, generalized_quaternion, m};
pub use recipes::Recipe;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Complement,
    Instance,
    OddInstance,
    Counterexample,
    Auxiliary,
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryKind::Complement => "complement",
            EntryKind::Instance => "frobenius",
            EntryKind::OddInstance => "frobenius-odd",
            EntryKind::Counterexample => "counterexample",
            EntryKind::Auxiliary => "auxiliary",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: EntryKind,
    pub order: u64,
    pub note: String,
}

/// Complements of quadratic rational Frobenius groups, in increasing order.
pub const COMPLEMENTS: [&str; 14] = [
    "C2", "C3", "C4", "C6", "Q8", "C3:C4", "Q16", "H1", "SL2_3", "C3:Q8", "C3xQ8", "SL2_3.C2",
    "H2", "SL2_5",
];

/// Complements that are not quadratic rational or do not occur.
pub const NEGATIVE_COMPLEMENTS: [&str; 2] = ["Q32", "SL2_5.C2"];

pub const COUNTEREXAMPLES: [&str; 7] = [
    "neg_120", "neg_40", "neg_240", "C15:C4", "C5:Q16/a", "C5:Q16/b", "C5:Q16/c",
];

pub const AUXILIARY: [&str; 3] = ["C2^2", "C4^2", "C5xC5:C4"];

/// `(p, d, has two module structures)`
pub type KernelSpec = (u32, usize, bool);

/// Irreducible kernels per complement of even order.
pub const EVEN_KERNELS: [(&str, &[KernelSpec]); 13] = [
    ("C2", &[(3, 1, false), (5, 1, false)]),
    ("C4", &[(3, 2, false), (5, 1, true)]),
    ("C6", &[(5, 2, false), (7, 1, true), (13, 1, true)]),
    ("Q8", &[(3, 2, false), (5, 2, false)]),
    ("C3:C4", &[(5, 2, false)]),
    ("Q16", &[(3, 4, false), (5, 4, false)]),
    ("H1", &[(3, 4, false)]),
    ("SL2_3", &[(5, 2, false), (7, 2, false)]),
    ("C3:Q8", &[(5, 4, false)]),
    ("C3xQ8", &[(5, 4, false), (7, 2, true), (13, 2, true)]),
    ("H2", &[(5, 4, false)]),
    ("SL2_3.C2", &[(5, 4, false), (7, 2, true)]),
    ("SL2_5", &[(11, 2, true)]),
];

/// Admissible primes for `|K|` and the required divisibility of its exponent.
pub fn kernel_orders(h: &str) -> Option<&'static [(u32, usize)]> {
    Some(match h {
        "C2" => &[(3, 1), (5, 1)],
        "C4" => &[(3, 2), (5, 1)],
        "C6" => &[(5, 2), (7, 1), (13, 1)],
        "Q8" => &[(3, 2), (5, 2)],
        "C3:C4" => &[(5, 2), (7, 2), (13, 1)],
        "Q16" => &[(3, 4), (5, 4)],
        "H1" => &[(3, 4)],
        "SL2_3" | "C3:Q8" | "C3xQ8" => &[(5, 2), (7, 2), (13, 2)],
        "H2" | "SL2_3.C2" => &[(5, 4), (7, 2), (13, 4)],
        "SL2_5" => &[(7, 4), (11, 2), (13, 4)],
        "SL2_5.C2" => &[(7, 4), (11, 4), (13, 4), (17, 4)],
        _ => return None,
    })
}

/// Odd-order Frobenius groups with complement `C_3`: `(name, p, recipe key)`.
const ODD: [(&str, u32, &str); 4] = [
    ("C7:C3", 7, "C3"),
    ("C7^2:C3", 7, "C3x2"),
    ("A4", 2, "C3"),
    ("C2^4:C3", 2, "C3x2"),
];

fn kernel_name(p: u32, d: usize) -> String {
    if d == 1 {
        format!("C{p}")
    } else {
        format!("C{p}^{d}")
    }
}

pub fn instance_name(h: &str, p: u32, d: usize, variant: u8) -> String {
    let base = format!("{}:{h}", kernel_name(p, d));
    if variant == 1 {
        base
    } else {
        format!("{base}/{variant}")
    }
}

/// A Frobenius group `K ⋊ H` built from an irreducible module.
#[derive(Debug)]
pub struct FrobeniusInstance {
    pub name: String,
    pub complement_name: String,
    pub p: u32,
    pub d: usize,
    pub variant: u8,
    pub module: Arc<FpModule>,
    pub group: GroupHandle,
}

fn invalid(name: &str, reason: impl Into<String>) -> Error {
    Error::Construction {
        name: name.into(),
        reason: reason.into(),
    }
}

fn sl2_standard(p: u32) -> GroupHandle {
    GroupHandle::matrix(
        p,
        2,
        vec![m(p, &[&[1, 1], &[0, 1]]), m(p, &[&[1, 0], &[1, 1]])],
    )
}

fn build_complement(name: &str) -> Result<GroupHandle> {
    Ok(match name {
        "C2" => cyclic_perm(2),
        "C3" => cyclic_perm(3),
        "C4" => cyclic_perm(4),
        "C6" => cyclic_perm(6),
        "Q8" => generalized_quaternion(8),
        "Q16" => generalized_quaternion(16),
        "Q32" => generalized_quaternion(32),
        "C3:C4" => GroupHandle::matrix(
            7,
            2,
            vec![m(7, &[&[2, 0], &[0, 4]]), m(7, &[&[0, -1], &[1, 0]])],
        ),
        "H1" => GroupHandle::matrix(
            11,
            2,
            vec![m(11, &[&[3, 0], &[0, 4]]), m(11, &[&[0, -1], &[1, 0]])],
        ),
        "C3:Q8" => GroupHandle::matrix(
            13,
            2,
            vec![
                m(13, &[&[3, 0], &[0, 9]]),
                m(13, &[&[5, 0], &[0, 8]]),
                m(13, &[&[0, 1], &[-1, 0]]),
            ],
        ),
        "C3xQ8" => GroupHandle::matrix(
            13,
            2,
            vec![
                m(13, &[&[3, 0], &[0, 3]]),
                m(13, &[&[5, 0], &[0, 8]]),
                m(13, &[&[0, 1], &[-1, 0]]),
            ],
        ),
        "SL2_3" => sl2_standard(3),
        "SL2_5" => sl2_standard(5),
        "SL2_3.C2" | "H2" => {
            let p = if name == "H2" { 5 } else { 7 };
            let r = recipes::recipe(name, p)?.expect("recipe exists");
            GroupHandle::matrix(r.p, r.d, r.gens)
        }
        "SL2_5.C2" => {
            // SL_2(5) and diag(e, 1/e) inside SL_2(25), with F_25 = F_5[e], e² = 2,
            // written over F_5 via a + be ↦ [[a, 2b], [b, a]]
            let e = build::root_of(5, 2);
            let e_inv = fp::scale(&e, 3, 5);
            let id = fp::identity(2);
            let mut gens: Vec<Mat> = sl2_standard(5)
                .gens()
                .iter()
                .map(|g| match g {
                    Element::Mat(a) => fp::kron(a, 2, &id, 2, 5),
                    _ => unreachable!("matrix generators"),
                })
                .collect();
            gens.push(fp::block_diag(&[(&e, 2), (&e_inv, 2)]));
            GroupHandle::matrix(5, 4, gens)
        }
        _ => return Err(Error::UnknownName(name.into())),
    })
}

fn build_instance(name: &str) -> Result<FrobeniusInstance> {
    let (base, variant) = match name.rsplit_once('/') {
        Some((b, "2")) => (b, 2u8),
        _ => (name, 1u8),
    };
    if let Some(&(_, p, key)) = ODD.iter().find(|(n, _, _)| *n == base) {
        let r = recipes::recipe(key, p)?.expect("recipe exists");
        return module_instance(name, "C3", &r, 1);
    }
    for (h, rows) in EVEN_KERNELS {
        for &(p, d, twin) in rows {
            if instance_name(h, p, d, 1) != base || (variant == 2 && !twin) {
                continue;
            }
            let r = recipes::recipe(h, p)?
                .ok_or_else(|| invalid(name, "no module recipe"))?;
            if r.d != d {
                return Err(invalid(name, format!("recipe has dimension {}", r.d)));
            }
            return module_instance(name, h, &r, variant);
        }
    }
    Err(Error::UnknownName(name.into()))
}

/// The complement is the image of the first structure; the second structure twists
/// the generator images over the same abstract group.
fn module_instance(name: &str, h: &str, r: &Recipe, variant: u8) -> Result<FrobeniusInstance> {
    let complement = GroupHandle::matrix(r.p, r.d, r.gens.clone());
    let images = if variant == 2 {
        r.variant.clone().ok_or_else(|| invalid(name, "no second structure"))?
    } else {
        r.gens.clone()
    };
    let module = Arc::new(FpModule::new(r.p, r.d, complement, images)?);
    let group = build_semidirect(Arc::clone(&module))?;
    Ok(FrobeniusInstance {
        name: name.into(),
        complement_name: h.into(),
        p: r.p,
        d: r.d,
        variant,
        module,
        group,
    })
}

fn build_counterexample(name: &str) -> Result<GroupHandle> {
    match name {
        "neg_120" => cyclic_extension(15, &complement("Q8")?, &[11, 4]),
        "neg_240" => cyclic_extension(5, &complement("SL2_3.C2")?, &[4, 1, 1, 1]),
        "C15:C4" => cyclic_extension(15, &complement("C4")?, &[2]),
        "C5:Q16/a" => cyclic_extension(5, &complement("Q16")?, &[4, 1]),
        "C5:Q16/b" => cyclic_extension(5, &complement("Q16")?, &[1, 4]),
        "C5:Q16/c" => cyclic_extension(5, &complement("Q16")?, &[4, 4]),
        "neg_40" => neg_40(),
        _ => Err(Error::UnknownName(name.into())),
    }
}

/// Isomorphism-class fingerprint: sorted `(element order, class size)` pairs.
fn fingerprint(g: &GroupHandle) -> Result<Vec<(u64, u64)>> {
    let cls = g.classes()?;
    let mut v: Vec<(u64, u64)> = cls.orders.iter().copied().zip(cls.sizes.iter().copied()).collect();
    v.sort_unstable();
    Ok(v)
}

/// Among all `C_5 ⋊ Q_8` (actions through `{±1}`), the unique class whose elements of
/// order 5 are semi-rational.
fn neg_40() -> Result<GroupHandle> {
    let q8 = complement("Q8")?;
    let mut classes: Vec<(Vec<(u64, u64)>, GroupHandle)> = Vec::new();
    for a in [1, 4] {
        for b in [1, 4] {
            let g = cyclic_extension(5, &q8, &[a, b])?;
            let f = fingerprint(&g)?;
            if !classes.iter().any(|(h, _)| *h == f) {
                classes.push((f, g));
            }
        }
    }
    let mut hits = Vec::new();
    for (_, g) in classes {
        let cls = g.classes()?;
        let ok = (0..cls.len())
            .filter(|&c| cls.orders[c] == 5)
            .all(|c| cls.bg_image(c).index() <= 2);
        if ok {
            hits.push(g);
        }
    }
    if hits.len() != 1 {
        return Err(invalid("neg_40", format!("{} candidate classes", hits.len())));
    }
    Ok(hits.remove(0))
}

fn build_auxiliary(name: &str) -> Result<GroupHandle> {
    match name {
        "C2^2" => Ok(GroupHandle::perm(
            4,
            vec![
                Element::perm_from_cycles(4, &[&[1, 2]]),
                Element::perm_from_cycles(4, &[&[3, 4]]),
            ],
        )),
        "C4^2" => Ok(GroupHandle::perm(
            8,
            vec![
                Element::perm_from_cycles(8, &[&[1, 2, 3, 4]]),
                Element::perm_from_cycles(8, &[&[5, 6, 7, 8]]),
            ],
        )),
        "C5xC5:C4" => {
            let images = vec![m(5, &[&[2, 0], &[0, 3]])];
            let h = GroupHandle::matrix(5, 2, images.clone());
            let module = Arc::new(FpModule::new(5, 2, h, images)?);
            build_semidirect(module)
        }
        _ => Err(Error::UnknownName(name.into())),
    }
}

type Memo<T> = OnceLock<Mutex<HashMap<String, T>>>;

static GROUPS: Memo<GroupHandle> = OnceLock::new();
static INSTANCES: Memo<Arc<FrobeniusInstance>> = OnceLock::new();

fn memo<T: Clone>(cell: &'static Memo<T>, name: &str, make: impl FnOnce() -> Result<T>) -> Result<T> {
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("catalog lock").get(name) {
        return Ok(v.clone());
    }
    let v = make()?;
    let mut guard = map.lock().expect("catalog lock");
    Ok(guard.entry(name.into()).or_insert(v).clone())
}

pub fn complement(name: &str) -> Result<GroupHandle> {
    memo(&GROUPS, &format!("complement {name}"), || build_complement(name))
}

pub fn frobenius_instance(name: &str) -> Result<Arc<FrobeniusInstance>> {
    memo(&INSTANCES, name, || build_instance(name).map(Arc::new))
}

pub fn counterexample(name: &str) -> Result<GroupHandle> {
    memo(&GROUPS, &format!("counterexample {name}"), || build_counterexample(name))
}

pub fn odd_complement_instances() -> Result<Vec<Arc<FrobeniusInstance>>> {
    ODD.iter().map(|(n, _, _)| frobenius_instance(n)).collect()
}

/// Names of every Frobenius instance with a complement of even order, both structures
/// included.
pub fn table2_instance_names() -> Vec<String> {
    let mut out = Vec::new();
    for (h, rows) in EVEN_KERNELS {
        for &(p, d, twin) in rows {
            out.push(instance_name(h, p, d, 1));
            if twin {
                out.push(instance_name(h, p, d, 2));
            }
        }
    }
    out
}

pub fn odd_instance_names() -> Vec<String> {
    ODD.iter().map(|(n, _, _)| n.to_string()).collect()
}

/// Any catalog group by name. Complement names take precedence over instance names.
pub fn group(name: &str) -> Result<GroupHandle> {
    if COMPLEMENTS.contains(&name) || NEGATIVE_COMPLEMENTS.contains(&name) {
        return complement(name);
    }
    if COUNTEREXAMPLES.contains(&name) {
        return counterexample(name);
    }
    if AUXILIARY.contains(&name) {
        return memo(&GROUPS, &format!("auxiliary {name}"), || build_auxiliary(name));
    }
    Ok(frobenius_instance(name)?.group.clone())
}

fn known_order(name: &str, kind: EntryKind) -> u64 {
    let complement_order = |h: &str| -> u64 {
        match h {
            "C2" => 2,
            "C3" => 3,
            "C4" => 4,
            "C6" => 6,
            "Q8" => 8,
            "C3:C4" => 12,
            "Q16" => 16,
            "H1" => 20,
            "SL2_3" | "C3:Q8" | "C3xQ8" => 24,
            "Q32" => 32,
            "SL2_3.C2" | "H2" => 48,
            "SL2_5" => 120,
            "SL2_5.C2" => 240,
            _ => 0,
        }
    };
    match kind {
        EntryKind::Complement => complement_order(name),
        EntryKind::Counterexample => match name {
            "neg_120" => 120,
            "neg_40" => 40,
            "neg_240" => 240,
            "C15:C4" => 60,
            _ => 80,
        },
        EntryKind::Auxiliary => match name {
            "C2^2" => 4,
            "C4^2" => 16,
            _ => 100,
        },
        EntryKind::OddInstance => match name {
            "C7:C3" => 21,
            "C7^2:C3" => 147,
            "A4" => 12,
            _ => 48,
        },
        EntryKind::Instance => {
            let (kernel, h) = name.split_once(':').expect("instance name");
            let h = h.split('/').next().unwrap_or(h);
            let (p, d) = match kernel[1..].split_once('^') {
                Some((p, d)) => (p.parse::<u64>().unwrap(), d.parse::<u32>().unwrap()),
                None => (kernel[1..].parse::<u64>().unwrap(), 1),
            };
            p.pow(d) * complement_order(h)
        }
    }
}

/// Every name with its kind, order and a short description.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push = |name: String, kind: EntryKind, note: String| {
        let order = known_order(&name, kind);
        out.push(CatalogEntry {
            name,
            kind,
            order,
            note,
        });
    };
    for h in COMPLEMENTS {
        push(h.into(), EntryKind::Complement, "complement of a quadratic rational Frobenius group".into());
    }
    push("Q32".into(), EntryKind::Complement, "generalized quaternion, not quadratic rational".into());
    push("SL2_5.C2".into(), EntryKind::Complement, "candidate complement that does not occur".into());
    for (h, rows) in EVEN_KERNELS {
        for &(p, d, twin) in rows {
            let note = format!("kernel {} irreducible under {h}", kernel_name(p, d));
            push(instance_name(h, p, d, 1), EntryKind::Instance, note.clone());
            if twin {
                push(instance_name(h, p, d, 2), EntryKind::Instance, format!("{note}, second module structure"));
            }
        }
    }
    for (n, _, _) in ODD {
        push(n.into(), EntryKind::OddInstance, "odd-order Frobenius group with complement C3".into());
    }
    for n in COUNTEREXAMPLES {
        let note = match n {
            "neg_120" => "C15:Q8 acting through C2xC2, not quadratic rational",
            "neg_40" => "C5:Q8 with semi-rational elements of order 5",
            "neg_240" => "C5:(SL2_3.C2), not quadratic rational",
            "C15:C4" => "no central involution",
            _ => "C5:Q16 acting through a quotient of order 2",
        };
        push(n.into(), EntryKind::Counterexample, note.into());
    }
    push("C2^2".into(), EntryKind::Auxiliary, "elementary abelian 2-group".into());
    push("C4^2".into(), EntryKind::Auxiliary, "homocyclic 2-group".into());
    push("C5xC5:C4".into(), EntryKind::Auxiliary, "reducible module diag(2,3) over F5".into());
    out
}

#[cfg(test)]
mod tests;
