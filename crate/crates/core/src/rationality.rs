//! Element and group rationality classifiers built from power maps.

use std::fmt;

use crate::arith::units;
use crate::chartable::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{ConjugacyData, Element, GroupHandle};
use crate::units::UnitClassSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub flag: &'static str,
    /// Class index (or character row index for the quadratic flag).
    pub index: usize,
    pub residue: Option<u64>,
    pub detail: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.flag, self.detail)?;
        if let Some(r) = self.residue {
            write!(f, " (residue {r})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ClassRationality {
    pub class: usize,
    pub order: u64,
    /// `A_x`: residues `j` with `x^j` conjugate to `x`.
    pub a: UnitClassSet,
    /// `[U(Z/|x|Z) : A_x]`, equal to `[Q(x) : Q]`.
    pub index: u64,
}

#[derive(Clone, Debug)]
pub struct RationalityReport {
    pub exponent: u64,
    pub r_g: UnitClassSet,
    pub s_g: UnitClassSet,
    pub rational: bool,
    pub semi_rational: bool,
    pub uniformly_semi_rational: bool,
    pub inverse_semi_rational: bool,
    pub quadratic_rational: Option<bool>,
    pub per_class: Vec<ClassRationality>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ROrderClass {
    Rational,
    Cut,
    Order2,
    Order4,
    Other(u64),
}

impl fmt::Display for ROrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ROrderClass::Rational => f.write_str("rational"),
            ROrderClass::Cut => f.write_str("cut"),
            ROrderClass::Order2 => f.write_str("order-2"),
            ROrderClass::Order4 => f.write_str("order-4"),
            ROrderClass::Other(k) => write!(f, "order-{k}"),
        }
    }
}

/// Per-class `A_x` data.
pub fn class_data(cls: &ConjugacyData) -> Vec<ClassRationality> {
    (0..cls.len())
        .map(|c| {
            let a = cls.bg_image(c);
            ClassRationality {
                class: c,
                order: cls.orders[c],
                index: a.index(),
                a,
            }
        })
        .collect()
}

/// Whether a residue `r` is admissible for one class: `A = U`, or `A` has index 2 and
/// `r ∉ A`.
fn admits(c: &ClassRationality, r: u64) -> bool {
    c.index == 1 || (c.index == 2 && !c.a.contains(r % c.order))
}

fn class_of(g: &GroupHandle, x: &Element) -> Result<(std::sync::Arc<ConjugacyData>, usize)> {
    let cls = g.classes()?;
    let idx = g
        .index_of(x)
        .ok_or_else(|| Error::Precondition("element not in group".into()))?;
    let c = cls.class_of[idx] as usize;
    Ok((cls, c))
}

pub fn is_semi_rational_element(g: &GroupHandle, x: &Element) -> Result<bool> {
    let (cls, c) = class_of(g, x)?;
    Ok(cls.bg_image(c).index() <= 2)
}

pub fn is_r_semi_rational_element(g: &GroupHandle, x: &Element, r: u64) -> Result<bool> {
    let (cls, c) = class_of(g, x)?;
    let o = cls.orders[c];
    if !crate::arith::is_unit(r, o) {
        return Err(Error::NotCoprime { j: r, n: o });
    }
    let a = cls.bg_image(c);
    let data = ClassRationality {
        class: c,
        order: o,
        index: a.index(),
        a,
    };
    Ok(admits(&data, r))
}

/// `R_G = {j mod exp(G) : x^j ∈ x^G for all x}`.
pub fn rationality_group(cls: &ConjugacyData) -> UnitClassSet {
    let data = class_data(cls);
    rationality_from(&data, cls.exponent)
}

fn rationality_from(data: &[ClassRationality], n: u64) -> UnitClassSet {
    let members: Vec<u64> = units(n)
        .into_iter()
        .filter(|&j| data.iter().all(|c| c.a.contains(j % c.order)))
        .collect();
    UnitClassSet::plain(n, members)
        .expect("units")
        .into_subgroup()
        .expect("R_G is a subgroup")
}

/// `S_G`: residues `r` for which every element is `r`-semi-rational.
pub fn semi_rationality_set(cls: &ConjugacyData) -> UnitClassSet {
    let data = class_data(cls);
    semi_from(&data, cls.exponent)
}

fn semi_from(data: &[ClassRationality], n: u64) -> UnitClassSet {
    if data.iter().any(|c| c.index > 2) {
        return UnitClassSet::empty(n);
    }
    let members: Vec<u64> = units(n)
        .into_iter()
        .filter(|&r| data.iter().all(|c| admits(c, r)))
        .collect();
    UnitClassSet::plain(n, members).expect("units")
}

pub fn r_order_class(s: &UnitClassSet) -> Result<ROrderClass> {
    let n = s.modulus();
    let min = s.min_order().ok_or(Error::NotUniformlySemiRational)?;
    Ok(match min {
        1 => ROrderClass::Rational,
        _ if s.contains(n - 1) => ROrderClass::Cut,
        2 => ROrderClass::Order2,
        4 => ROrderClass::Order4,
        k => ROrderClass::Other(k),
    })
}

/// Rationality flags from class data; the quadratic flag comes from a character table
/// when one is supplied.
pub fn classify(cls: &ConjugacyData, table: Option<&CharacterTable>) -> RationalityReport {
    let n = cls.exponent;
    let data = class_data(cls);
    let r_g = rationality_from(&data, n);
    let s_g = semi_from(&data, n);
    let rational = data.iter().all(|c| c.index == 1);
    let semi_rational = data.iter().all(|c| c.index <= 2);
    let uniformly = !s_g.is_empty();
    let inverse = s_g.contains(n - 1);
    let mut witnesses = Vec::new();
    if let Some(c) = data.iter().find(|c| c.index > 1) {
        let j = units(c.order).into_iter().find(|&j| !c.a.contains(j)).unwrap();
        witnesses.push(Witness {
            flag: "rational",
            index: c.class,
            residue: Some(j),
            detail: format!("class {} (order {}) is not conjugate to its power {j}", c.class, c.order),
        });
    }
    if let Some(c) = data.iter().find(|c| c.index > 2) {
        witnesses.push(Witness {
            flag: "semi_rational",
            index: c.class,
            residue: None,
            detail: format!(
                "class {} (order {}) has A_x = {} of index {}",
                c.class, c.order, c.a, c.index
            ),
        });
    }
    if semi_rational && !uniformly {
        let mut allowed: Vec<u64> = units(n);
        for c in &data {
            let next: Vec<u64> = allowed.iter().copied().filter(|&r| admits(c, r)).collect();
            if next.is_empty() {
                witnesses.push(Witness {
                    flag: "uniformly_semi_rational",
                    index: c.class,
                    residue: allowed.first().copied(),
                    detail: format!(
                        "class {} (order {}) rejects every residue still admissible",
                        c.class, c.order
                    ),
                });
                break;
            }
            allowed = next;
        }
    }
    if !inverse {
        if let Some(c) = data.iter().find(|c| !admits(c, n - 1)) {
            witnesses.push(Witness {
                flag: "inverse_semi_rational",
                index: c.class,
                residue: Some(n - 1),
                detail: format!("class {} (order {}) is not (-1)-semi-rational", c.class, c.order),
            });
        }
    }
    let quadratic_rational = table.map(|t| {
        let bad = t.rows_field_degrees().into_iter().enumerate().find(|(_, d)| *d > 2);
        if let Some((row, deg)) = bad {
            witnesses.push(Witness {
                flag: "quadratic_rational",
                index: row,
                residue: None,
                detail: format!("character X.{} has field of values of degree {deg}", row + 1),
            });
        }
        bad.is_none()
    });
    RationalityReport {
        exponent: n,
        r_g,
        s_g,
        rational,
        semi_rational,
        uniformly_semi_rational: uniformly,
        inverse_semi_rational: inverse,
        quadratic_rational,
        per_class: data,
        witnesses,
    }
}
