//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` reduced modulo the
//! `n`-th cyclotomic polynomial. Coefficients are arbitrary precision rationals.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{euler_phi, gcd, units};
use crate::error::{Error, Result};
use crate::units::UnitClassSet;

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct Basis {
    pub n: u64,
    pub phi: usize,
    /// Coefficients of the cyclotomic polynomial, increasing degree.
    pub poly: Vec<i64>,
    /// `reduce[k]` holds `x^k mod Φ_n` for `0 <= k < n`.
    reduce: Vec<Vec<i64>>,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn mobius(n: u64) -> i32 {
    let mut result = 1;
    for (_, e) in crate::arith::factorize(n) {
        if e > 1 {
            return 0;
        }
        result = -result;
    }
    result
}

pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let x_minus_one = |d: u64| {
        let mut p = vec![0i64; d as usize + 1];
        p[0] = -1;
        p[d as usize] = 1;
        p
    };
    let mut num = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            num = poly_mul(&num, &x_minus_one(d));
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            num = poly_div_exact(&num, &x_minus_one(d));
        }
    }
    num
}

impl Basis {
    fn new(n: u64) -> Self {
        let poly = cyclotomic_poly(n);
        let phi = euler_phi(n) as usize;
        let mut reduce = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            reduce.push(cur.clone());
            // multiply by x and reduce the overflow term
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
        }
        Basis {
            n,
            phi,
            poly,
            reduce,
        }
    }

    pub fn reduced_power(&self, k: u64) -> &[i64] {
        &self.reduce[(k % self.n) as usize]
    }
}

pub fn basis(n: u64) -> Arc<Basis> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&n) {
        return Arc::clone(b);
    }
    let b = Arc::new(Basis::new(n));
    cache.lock().unwrap().entry(n).or_insert(b).clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<BigRational>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        let phi = euler_phi(n) as usize;
        Self {
            n,
            coeffs: vec![BigRational::zero(); phi],
        }
    }

    pub fn from_rational(n: u64, q: BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(n: u64, a: i64) -> Self {
        Self::from_rational(n, rat(a))
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u64, k: u64) -> Self {
        let b = basis(n);
        Self::from_reduced_ints(n, b.reduced_power(k))
    }

    /// `Σ counts[k] ζ_n^k` for an exponent-indexed integer vector of length `n`.
    pub fn from_exponent_counts(n: u64, counts: &[i64]) -> Self {
        let b = basis(n);
        let mut acc = vec![0i64; b.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &r) in acc.iter_mut().zip(b.reduced_power(k as u64)) {
                *a += c * r;
            }
        }
        Self::from_reduced_ints(n, &acc)
    }

    pub fn from_coeffs(n: u64, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), euler_phi(n) as usize);
        Self { n, coeffs }
    }

    fn from_reduced_ints(n: u64, v: &[i64]) -> Self {
        Self {
            n,
            coeffs: v.iter().map(|&x| rat(x)).collect(),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Integer coefficient vector when every coefficient is a small integer.
    pub fn as_small_ints(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n, other.n, "cyclotomic values from different conductors");
    }

    /// Accumulate `c · ζ^k` into a reduced coefficient vector.
    fn accumulate(b: &Basis, acc: &mut [BigRational], k: u64, c: &BigRational) {
        for (a, &r) in acc.iter_mut().zip(b.reduced_power(k)) {
            if r != 0 {
                *a += c * rat(r);
            }
        }
    }

    /// The Galois automorphism `ζ ↦ ζ^j`.
    pub fn galois(&self, j: u64) -> Result<Self> {
        if gcd(j % self.n.max(1), self.n) != 1 && self.n > 1 {
            return Err(Error::NotCoprime { j, n: self.n });
        }
        Ok(self.galois_unchecked(j))
    }

    fn galois_unchecked(&self, j: u64) -> Self {
        let b = basis(self.n);
        if let Some(ints) = self.as_small_ints() {
            let mut acc = vec![0i64; b.phi];
            for (i, &c) in ints.iter().enumerate() {
                if c != 0 {
                    for (a, &r) in acc.iter_mut().zip(b.reduced_power(i as u64 * j)) {
                        *a += c * r;
                    }
                }
            }
            return Self::from_reduced_ints(self.n, &acc);
        }
        let mut acc = vec![BigRational::zero(); b.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                Self::accumulate(&b, &mut acc, i as u64 * j, c);
            }
        }
        Self {
            n: self.n,
            coeffs: acc,
        }
    }

    pub fn complex_conjugate(&self) -> Self {
        self.galois_unchecked(self.n.saturating_sub(1).max(1))
    }

    /// View in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn embed(&self, m: u64) -> Self {
        assert_eq!(m % self.n, 0, "target conductor must be a multiple");
        if m == self.n {
            return self.clone();
        }
        let step = m / self.n;
        let b = basis(m);
        let mut acc = vec![BigRational::zero(); b.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                Self::accumulate(&b, &mut acc, i as u64 * step, c);
            }
        }
        Self { n: m, coeffs: acc }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the product of the nontrivial Galois conjugates.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut others = Self::one(self.n);
        for j in units(self.n) {
            if j > 1 {
                others = &others * &self.galois_unchecked(j);
            }
        }
        let norm = (self * &others).as_rational()?;
        Some(others.scale(&(BigRational::one() / norm)))
    }

    /// Smallest conductor `m | n` with the value in `Q(ζ_m)`.
    pub fn minimal_conductor(&self) -> u64 {
        let n = self.n;
        for m in (1..=n).filter(|m| n % m == 0 && m % 4 != 2) {
            let fixed = units(n)
                .into_iter()
                .filter(|&j| j % m == 1 % m)
                .all(|j| self.galois_unchecked(j) == *self);
            if fixed {
                return m;
            }
        }
        n
    }

    /// The same number written over its minimal conductor.
    pub fn normalize(&self) -> Self {
        let m = self.minimal_conductor();
        if m == self.n {
            return self.clone();
        }
        if m == 1 {
            return Self::from_rational(1, self.coeffs[0].clone());
        }
        // Solve Σ c_i ζ_m^i = self inside Q(ζ_n).
        let b = basis(self.n);
        let step = self.n / m;
        let phi_m = euler_phi(m) as usize;
        let rows = b.phi;
        let mut aug: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..phi_m)
                    .map(|i| rat(b.reduced_power(i as u64 * step)[r]))
                    .collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let sol = solve_rational(&mut aug, phi_m).expect("value lies in the subfield");
        Self { n: m, coeffs: sol }
    }

    pub fn render(&self) -> String {
        let v = self.normalize();
        let m = v.n;
        let mut terms: Vec<String> = Vec::new();
        for (k, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c_text = c.to_string();
            let term = if k == 0 {
                c_text
            } else {
                let z = if k == 1 {
                    format!("E({m})")
                } else {
                    format!("E({m})^{k}")
                };
                if c.is_one() {
                    z
                } else if (-c).is_one() {
                    format!("-{z}")
                } else {
                    format!("{c_text}*{z}")
                }
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if !t.starts_with('-') {
                out.push('+');
            }
            out.push_str(t);
        }
        out
    }

    /// Parse a rendered value into conductor `n` (every `E(m)` must have `m | n`).
    pub fn parse(text: &str, n: u64) -> std::result::Result<Self, String> {
        let b = basis(n);
        let mut acc = vec![BigRational::zero(); b.phi];
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty value".into());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            let (coef_text, zeta_text) = match body.find("E(") {
                Some(0) => ("1", Some(body)),
                Some(pos) => {
                    let c = body[..pos]
                        .strip_suffix('*')
                        .ok_or_else(|| format!("expected '*' in term `{term}`"))?;
                    (c, Some(&body[pos..]))
                }
                None => (body, None),
            };
            let coef: BigRational = coef_text
                .parse()
                .map_err(|_| format!("bad coefficient `{coef_text}`"))?;
            let coef = coef * rat(sign);
            let exponent = match zeta_text {
                None => 0,
                Some(z) => {
                    let close = z.find(')').ok_or("unclosed E(")?;
                    let m: u64 = z[2..close].parse().map_err(|_| "bad conductor")?;
                    let k: u64 = match z[close + 1..].strip_prefix('^') {
                        Some(k) => k.parse().map_err(|_| "bad exponent")?,
                        None if z.len() == close + 1 => 1,
                        None => return Err(format!("trailing text in `{z}`")),
                    };
                    if m == 0 || n % m != 0 {
                        return Err(format!("E({m}) does not lie in Q(ζ_{n})"));
                    }
                    k * (n / m)
                }
            };
            Self::accumulate(&b, &mut acc, exponent, &coef);
        }
        Ok(Self { n, coeffs: acc })
    }
}

/// Solve a consistent linear system given as an augmented matrix with `unknowns` columns.
fn solve_rational(aug: &mut [Vec<BigRational>], unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = aug.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(pr) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, pr);
        let inv = BigRational::one() / aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=unknowns {
                    let sub = &f * &aug[r][j];
                    aug[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (row, &c) in pivots.iter().enumerate() {
        sol[c] = aug[row][unknowns].clone();
    }
    Some(sol)
}

impl<'a> Add for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl<'a> Mul for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        let b = basis(self.n);
        let n = self.n as usize;
        if let (Some(x), Some(y)) = (self.as_small_ints(), rhs.as_small_ints()) {
            let small = x.iter().chain(&y).all(|v| v.abs() < (1 << 20));
            if small {
                let mut counts = vec![0i64; n];
                for (i, &a) in x.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (j, &c) in y.iter().enumerate() {
                        counts[(i + j) % n] += a * c;
                    }
                }
                return Cyclotomic::from_exponent_counts(self.n, &counts);
            }
        }
        let mut counts = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in rhs.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    counts[(i + j) % n] += a * c;
                }
            }
        }
        let mut acc = vec![BigRational::zero(); b.phi];
        for (k, c) in counts.iter().enumerate() {
            if !c.is_zero() {
                Cyclotomic::accumulate(&b, &mut acc, k as u64, c);
            }
        }
        Cyclotomic {
            n: self.n,
            coeffs: acc,
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldClass {
    Rational,
    RealQuadratic,
    ImaginaryQuadratic,
    HigherDegree,
}

impl fmt::Display for FieldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldClass::Rational => "rational",
            FieldClass::RealQuadratic => "real-quadratic",
            FieldClass::ImaginaryQuadratic => "imaginary-quadratic",
            FieldClass::HigherDegree => "higher-degree",
        })
    }
}

/// Degree of `Q(values)` over `Q` together with the stabilizer in `U(Z/nZ)`.
pub fn field_degree(values: &[Cyclotomic], n: u64) -> (u64, UnitClassSet) {
    let all = units(n);
    let phi = all.len() as u64;
    if n <= 2 {
        return (1, UnitClassSet::full(n));
    }
    let ints: Option<Vec<Vec<i64>>> = values.iter().map(|v| v.as_small_ints()).collect();
    let b = basis(n);
    let fixes = |j: u64| -> bool {
        match &ints {
            Some(ints) => ints.iter().all(|v| {
                let mut acc = vec![0i64; b.phi];
                for (i, &c) in v.iter().enumerate() {
                    if c != 0 {
                        for (a, &r) in acc.iter_mut().zip(b.reduced_power(i as u64 * j)) {
                            *a += c * r;
                        }
                    }
                }
                acc == *v
            }),
            None => values.iter().all(|v| v.galois_unchecked(j) == *v),
        }
    };
    let mut inside: BTreeSet<u64> = BTreeSet::from([1]);
    let mut outside: BTreeSet<u64> = BTreeSet::new();
    for &j in &all {
        if inside.contains(&j) || outside.contains(&j) {
            continue;
        }
        if fixes(j) {
            let mut gens: Vec<u64> = inside.iter().copied().collect();
            gens.push(j);
            inside = UnitClassSet::subgroup_generated(n, &gens)
                .expect("units")
                .members()
                .iter()
                .copied()
                .collect();
        } else {
            for &s in &inside {
                outside.insert(j * s % n);
            }
        }
    }
    let stab = UnitClassSet::subgroup_generated(n, &inside.into_iter().collect::<Vec<_>>())
        .expect("units");
    (phi / stab.len() as u64, stab)
}

pub fn classify_quadratic(values: &[Cyclotomic], n: u64) -> FieldClass {
    let (deg, stab) = field_degree(values, n);
    match deg {
        1 => FieldClass::Rational,
        2 if n <= 2 || stab.contains(n - 1) => FieldClass::RealQuadratic,
        2 => FieldClass::ImaginaryQuadratic,
        _ => FieldClass::HigherDegree,
    }
}

impl Cyclotomic {
    /// Integer value when the number is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let q = self.as_rational()?;
        q.is_integer().then(|| q.to_integer())
    }

    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_satisfies_its_polynomial() {
        for n in [1u64, 3, 8, 20, 21, 60, 105] {
            let poly = cyclotomic_poly(n);
            let mut acc = Cyclotomic::zero(n);
            for (k, &c) in poly.iter().enumerate() {
                acc = &acc + &Cyclotomic::zeta(n, k as u64).scale(&rat(c));
            }
            assert!(acc.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn galois_examples() {
        let z7 = |k| Cyclotomic::zeta(7, k);
        let v = &(&z7(1) + &z7(2)) + &z7(4);
        assert_eq!(v.galois(2).unwrap(), v);
        assert_ne!(v.galois(3).unwrap(), v);
        assert_eq!(Cyclotomic::zeta(9, 1).galois(8).unwrap(), Cyclotomic::zeta(9, 8));
        assert!(Cyclotomic::zeta(6, 1).galois(3).is_err());
    }

    #[test]
    fn field_degrees() {
        let one = Cyclotomic::one(5);
        assert_eq!(field_degree(&[one.clone(), -&one], 5).0, 1);
        let r = &Cyclotomic::zeta(5, 1) + &Cyclotomic::zeta(5, 4);
        assert_eq!(field_degree(std::slice::from_ref(&r), 5).0, 2);
        assert_eq!(classify_quadratic(&[r], 5), FieldClass::RealQuadratic);
        assert_eq!(field_degree(&[Cyclotomic::zeta(7, 1)], 7).0, 6);
        assert_eq!(classify_quadratic(&[Cyclotomic::zeta(3, 1)], 3), FieldClass::ImaginaryQuadratic);
        assert_eq!(classify_quadratic(&[Cyclotomic::zeta(5, 1)], 5), FieldClass::HigherDegree);
    }

    #[test]
    fn inverse_and_normalize() {
        let v = &Cyclotomic::zeta(12, 1) + &Cyclotomic::from_int(12, 2);
        let inv = v.inverse().unwrap();
        assert_eq!(&v * &inv, Cyclotomic::one(12));
        let w = Cyclotomic::zeta(12, 4).normalize();
        assert_eq!(w.conductor(), 3);
        assert_eq!(w.render(), "E(3)");
        assert_eq!(Cyclotomic::zeta(12, 6).render(), "-1");
        assert_eq!(Cyclotomic::zeta(10, 2).normalize().conductor(), 5);
    }

    #[test]
    fn render_parse_roundtrip() {
        let v = &Cyclotomic::zeta(20, 3).scale(&BigRational::new(3.into(), 2.into()))
            - &Cyclotomic::zeta(20, 4);
        let text = v.render();
        assert_eq!(Cyclotomic::parse(&text, 20).unwrap(), v);
        assert_eq!(Cyclotomic::parse(&text, 60).unwrap(), v.embed(60));
        assert!(Cyclotomic::parse("E(7)", 20).is_err());
    }
}
