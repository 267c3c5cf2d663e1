//! Character tables: Dixon–Schneider for enumerable groups and a direct constructor
//! for Frobenius groups with elementary abelian kernel.

mod dixon;
mod frobenius;
mod inertia;

pub use dixon::{dixon_prime, dixon_table, DEFAULT_DIXON_CAP};
pub use frobenius::{frobenius_table, induced_field_degrees};
pub use inertia::{semi_inertia, InertiaPair};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclotomic::{classify_quadratic, field_degree, Cyclotomic, FieldClass};
use crate::error::Result;
use crate::group::{ConjugacyData, GroupHandle};

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub classes: Arc<ConjugacyData>,
    /// Every value lies in `Q(ζ_conductor)`; the conductor is `exp(G)`.
    pub conductor: u64,
    pub rows: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<u64>,
}

impl CharacterTable {
    pub(crate) fn new(classes: Arc<ConjugacyData>, conductor: u64, rows: Vec<Vec<Cyclotomic>>) -> Self {
        let degrees = rows
            .iter()
            .map(|r| {
                r[0].as_integer()
                    .and_then(|d| u64::try_from(d).ok())
                    .expect("degree is a positive integer")
            })
            .collect();
        let mut t = Self {
            classes,
            conductor,
            rows,
            degrees,
        };
        t.sort_rows();
        t
    }

    /// Degree first, principal character leading its degree, then by value encoding.
    fn sort_rows(&mut self) {
        let one = Cyclotomic::one(self.conductor);
        let mut rows: Vec<(u64, Vec<Cyclotomic>)> = self
            .degrees
            .iter()
            .copied()
            .zip(std::mem::take(&mut self.rows))
            .collect();
        rows.sort_by(|(da, a), (db, b)| {
            let pa = !a.iter().all(|v| *v == one);
            let pb = !b.iter().all(|v| *v == one);
            (da, pa, a).cmp(&(db, pb, b))
        });
        self.degrees = rows.iter().map(|r| r.0).collect();
        self.rows = rows.into_iter().map(|r| r.1).collect();
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn field_of_values(&self, row: usize) -> (FieldClass, u64) {
        let values = &self.rows[row];
        let (deg, _) = field_degree(values, self.conductor);
        (classify_quadratic(values, self.conductor), deg)
    }

    pub fn rows_field_degrees(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| field_degree(r, self.conductor).0)
            .collect()
    }

    pub fn is_quadratic_rational(&self) -> bool {
        self.rows_field_degrees().iter().all(|&d| d <= 2)
    }

    pub fn is_rational(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Cyclotomic::is_rational))
    }

    /// Every field of values is `Q` or imaginary quadratic.
    pub fn is_cut(&self) -> bool {
        (0..self.rows.len()).all(|i| {
            matches!(
                self.field_of_values(i).0,
                FieldClass::Rational | FieldClass::ImaginaryQuadratic
            )
        })
    }

    /// Exact row and column orthogonality, degree divisibility and principal first row.
    pub fn check(&self) -> std::result::Result<(), String> {
        let cls = &self.classes;
        let k = cls.len();
        if self.rows.len() != k {
            return Err(format!("{} rows for {k} classes", self.rows.len()));
        }
        let order = BigInt::from(cls.order);
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != cls.order {
            return Err(format!("sum of squared degrees {sum_sq} != {}", cls.order));
        }
        if self.degrees.iter().any(|d| cls.order % d != 0) {
            return Err("a degree does not divide |G|".into());
        }
        let one = Cyclotomic::one(self.conductor);
        if !self.rows[0].iter().all(|v| *v == one) {
            return Err("first row is not the principal character".into());
        }
        let conj: Vec<Vec<Cyclotomic>> = self
            .rows
            .iter()
            .map(|r| (0..k).map(|c| r[cls.inverse_class(c)].clone()).collect())
            .collect();
        for a in 0..k {
            for b in a..k {
                let mut acc = Cyclotomic::zero(self.conductor);
                for c in 0..k {
                    let term = &self.rows[a][c] * &conj[b][c];
                    let size = BigRational::from_integer(BigInt::from(cls.sizes[c]));
                    acc = &acc + &term.scale(&size);
                }
                let expect = if a == b { order.clone() } else { BigInt::zero() };
                if acc != Cyclotomic::from_rational(self.conductor, BigRational::from_integer(expect)) {
                    return Err(format!("rows {a} and {b} are not orthogonal"));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let mut acc = Cyclotomic::zero(self.conductor);
                for r in 0..k {
                    acc = &acc + &(&self.rows[r][c] * &conj[r][d]);
                }
                let expect = if c == d {
                    BigRational::from_integer(BigInt::from(cls.centralizer_order(c)))
                } else {
                    BigRational::zero()
                };
                if acc != Cyclotomic::from_rational(self.conductor, expect) {
                    return Err(format!("columns {c} and {d} are not orthogonal"));
                }
            }
        }
        Ok(())
    }

    /// Rows as sorted lists of rendered-free coefficient data, for comparing tables
    /// built with the same class ordering.
    pub fn row_multiset(&self) -> Vec<Vec<Cyclotomic>> {
        let mut rows = self.rows.clone();
        rows.sort();
        rows
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cls = &self.classes;
        let k = cls.len();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.render()).collect())
            .collect();
        let header: Vec<String> = (0..k)
            .map(|c| format!("{}{}", cls.orders[c], letter(c, cls)))
            .collect();
        let sizes: Vec<String> = cls.sizes.iter().map(|s| s.to_string()).collect();
        let width = cells
            .iter()
            .flatten()
            .chain(&header)
            .chain(&sizes)
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        let line = |label: &str, items: &[String]| -> String {
            let mut s = format!("{label:>6}");
            for it in items {
                s.push_str(&format!(" {it:>width$}"));
            }
            s
        };
        writeln!(f, "{}", line("class", &header))?;
        writeln!(f, "{}", line("size", &sizes))?;
        for (i, row) in cells.iter().enumerate() {
            writeln!(f, "{}", line(&format!("X.{}", i + 1), row))?;
        }
        Ok(())
    }
}

/// Class labels in the usual `2a, 2b, …` style.
fn letter(c: usize, cls: &ConjugacyData) -> String {
    let o = cls.orders[c];
    let pos = (0..c).filter(|&d| cls.orders[d] == o).count();
    let mut n = pos;
    let mut s = String::new();
    loop {
        s.insert(0, (b'a' + (n % 26) as u8) as char);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    s
}

/// How to obtain character tables.
#[derive(Clone, Debug)]
pub struct TableConfig {
    pub dixon_cap: u64,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            dixon_cap: DEFAULT_DIXON_CAP,
        }
    }
}

/// Frobenius constructor when the group was built from a fixed-point-free module,
/// Dixon–Schneider otherwise.
pub fn character_table(g: &GroupHandle, cfg: &TableConfig) -> Result<CharacterTable> {
    if let Some(m) = g.frobenius_module() {
        if m.is_fixed_point_free() {
            let h_table = character_table(m.complement(), cfg)?;
            return frobenius_table(g, &h_table);
        }
    }
    dixon_table(g, cfg.dixon_cap)
}

pub fn is_quadratic_rational(g: &GroupHandle, cfg: &TableConfig) -> Result<bool> {
    Ok(character_table(g, cfg)?.is_quadratic_rational())
}

pub fn is_rational_group(g: &GroupHandle, cfg: &TableConfig) -> Result<bool> {
    Ok(character_table(g, cfg)?.is_rational())
}

pub fn is_cut_group(g: &GroupHandle, cfg: &TableConfig) -> Result<bool> {
    Ok(character_table(g, cfg)?.is_cut())
}

/// Every character of `G` induced from an irreducible character of the normal
/// subgroup `n` has a field of values of degree at most 2.
///
/// Induced values are `θ^G(x) = |C_G(x)| / |N| · Σ_{y ∈ x^G} θ(y)` on `N`, zero elsewhere.
pub fn quadratic_rational_in(n: &GroupHandle, g: &GroupHandle, cfg: &TableConfig) -> Result<bool> {
    let g_cls = g.classes()?;
    let n_table = character_table(n, cfg)?;
    let n_cls = n.classes()?;
    let elems = g.elements()?;
    let e = g_cls.exponent;
    let n_order = n_cls.order;
    // members of each G-class that lie in N, as N-class indices
    let mut inside: Vec<Option<Vec<usize>>> = vec![Some(Vec::new()); g_cls.len()];
    for (idx, x) in elems.iter().enumerate() {
        let c = g_cls.class_of[idx] as usize;
        match (n.index_of(x), &mut inside[c]) {
            (Some(ni), Some(list)) => list.push(n_cls.class_of[ni] as usize),
            (None, slot) => *slot = None,
            _ => {}
        }
    }
    for row in &n_table.rows {
        let values: Vec<Cyclotomic> = (0..g_cls.len())
            .map(|c| match &inside[c] {
                None => Cyclotomic::zero(e),
                Some(list) => {
                    let mut acc = Cyclotomic::zero(n_table.conductor);
                    for &nc in list {
                        acc = &acc + &row[nc];
                    }
                    let factor = BigRational::new(
                        BigInt::from(g_cls.centralizer_order(c)),
                        BigInt::from(n_order),
                    );
                    acc.scale(&factor).embed(e)
                }
            })
            .collect();
        if field_degree(&values, e).0 > 2 {
            return Ok(false);
        }
    }
    Ok(true)
}
