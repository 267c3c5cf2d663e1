//! TOML group descriptions.
//!
//! ```toml
//! kind = "semidirect"
//! p = 5
//! d = 1
//! matrices = [[2]]
//! complement = "catalog:C4"
//! ```
//!
//! Kinds: `perm` (`generators`, 1-based image arrays), `matrix` (`p`, `d`, row-major
//! `generators`), `semidirect` (`p`, `d`, `matrices`, `complement` as a catalog name or
//! nested table), `power` (`base` table and `n`), and `catalog:<name>`. A document
//! consisting only of `catalog:<name>` is accepted as shorthand.

use std::sync::Arc;

use serde::Deserialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::fp::{self, Mat};
use crate::group::{Element, GroupHandle};
use crate::modules::{build_semidirect_capped, FpModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Description {
    Perm { generators: Vec<Vec<usize>> },
    Matrix { p: u32, d: usize, generators: Vec<Vec<i64>> },
    Semidirect {
        p: u32,
        d: usize,
        matrices: Vec<Vec<i64>>,
        complement: Box<Description>,
    },
    Power { base: Box<Description>, n: usize },
    Catalog(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    kind: String,
    generators: Option<Vec<Vec<i64>>>,
    p: Option<u32>,
    d: Option<usize>,
    matrices: Option<Vec<Vec<i64>>>,
    complement: Option<RawComplement>,
    base: Option<Box<Raw>>,
    n: Option<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawComplement {
    Name(String),
    Nested(Box<Raw>),
}

fn semantic(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column: 1,
        message: message.into(),
    }
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn catalog_name(s: &str) -> String {
    s.strip_prefix("catalog:").unwrap_or(s).to_string()
}

fn need<T>(v: Option<T>, kind: &str, field: &str) -> Result<T> {
    v.ok_or_else(|| semantic(format!("kind `{kind}` requires field `{field}`")))
}

fn convert(raw: Raw) -> Result<Description> {
    let kind = raw.kind.as_str();
    if let Some(name) = kind.strip_prefix("catalog:") {
        return Ok(Description::Catalog(name.to_string()));
    }
    Ok(match kind {
        "perm" => {
            let gens = need(raw.generators, kind, "generators")?;
            let generators = gens
                .into_iter()
                .map(|g| {
                    g.into_iter()
                        .map(|x| usize::try_from(x).map_err(|_| semantic("negative point in permutation")))
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<_>>()?;
            Description::Perm { generators }
        }
        "matrix" => Description::Matrix {
            p: need(raw.p, kind, "p")?,
            d: need(raw.d, kind, "d")?,
            generators: need(raw.generators, kind, "generators")?,
        },
        "semidirect" => {
            let complement = match need(raw.complement, kind, "complement")? {
                RawComplement::Name(s) => Description::Catalog(catalog_name(&s)),
                RawComplement::Nested(r) => convert(*r)?,
            };
            Description::Semidirect {
                p: need(raw.p, kind, "p")?,
                d: need(raw.d, kind, "d")?,
                matrices: need(raw.matrices, kind, "matrices")?,
                complement: Box::new(complement),
            }
        }
        "power" => Description::Power {
            base: Box::new(convert(*need(raw.base, kind, "base")?)?),
            n: need(raw.n, kind, "n")?,
        },
        other => return Err(semantic(format!("unknown kind `{other}`"))),
    })
}

pub fn parse(text: &str) -> Result<Description> {
    let trimmed = text.trim();
    if trimmed.starts_with("catalog:") && !trimmed.contains('=') {
        return Ok(Description::Catalog(catalog_name(trimmed)));
    }
    let raw: Raw = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
        Error::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    convert(raw)
}

fn matrix(entries: &[i64], p: u32, d: usize) -> Result<Mat> {
    if entries.len() != d * d {
        return Err(semantic(format!("matrix has {} entries, expected {}", entries.len(), d * d)));
    }
    let rows: Vec<Vec<i64>> = entries.chunks(d).map(|r| r.to_vec()).collect();
    Ok(fp::from_rows(&rows, p))
}

fn check_prime(p: u32) -> Result<()> {
    if !(2..=251).contains(&p) || !crate::arith::is_prime(p as u64) {
        return Err(semantic(format!("p = {p} must be a prime below 256")));
    }
    Ok(())
}

fn module_of(g: &GroupHandle) -> Result<Arc<FpModule>> {
    g.frobenius_module()
        .cloned()
        .ok_or_else(|| Error::Precondition("power base must be a semidirect product K ⋊ H".into()))
}

/// Builds the group with enumeration cap `cap`.
pub fn build(desc: &Description, cap: usize) -> Result<GroupHandle> {
    match desc {
        Description::Catalog(name) => Ok(catalog::group(name)?.recapped(cap)),
        Description::Perm { generators } => {
            let degree = generators.iter().map(Vec::len).max().unwrap_or(1).max(1);
            let gens = generators
                .iter()
                .map(|g| {
                    let mut images = g.clone();
                    images.extend(images.len() + 1..=degree);
                    Element::perm_from_images(&images)
                        .ok_or_else(|| semantic(format!("{g:?} is not a permutation of 1..{degree}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GroupHandle::perm(degree, gens).recapped(cap))
        }
        Description::Matrix { p, d, generators } => {
            check_prime(*p)?;
            let gens = generators
                .iter()
                .map(|g| {
                    let m = matrix(g, *p, *d)?;
                    if fp::det(&m, *d, *p) == 0 {
                        return Err(semantic("singular generator matrix"));
                    }
                    Ok(m)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GroupHandle::matrix(*p, *d, gens).recapped(cap))
        }
        Description::Semidirect {
            p,
            d,
            matrices,
            complement,
        } => {
            check_prime(*p)?;
            let h = build(complement, cap)?;
            let images = matrices
                .iter()
                .map(|g| matrix(g, *p, *d))
                .collect::<Result<Vec<_>>>()?;
            let module = Arc::new(FpModule::new(*p, *d, h, images)?);
            build_semidirect_capped(module, cap)
        }
        Description::Power { base, n } => {
            if *n == 0 {
                return Err(semantic("power n must be at least 1"));
            }
            let g = build(base, cap)?;
            let module = module_of(&g)?;
            build_semidirect_capped(Arc::new(module.power(*n)?), cap)
        }
    }
}

/// Parses and builds in one step.
pub fn load(text: &str, cap: usize) -> Result<GroupHandle> {
    build(&parse(text)?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_permutations() {
        let g = load("kind = \"perm\"\ngenerators = [[2, 3, 1], [2, 1]]\n", 1000).unwrap();
        assert_eq!(g.order().unwrap(), 6);
    }

    #[test]
    fn c5_c4_semidirect() {
        let text = "kind = \"semidirect\"\np = 5\nd = 1\nmatrices = [[2]]\ncomplement = \"catalog:C4\"\n";
        let g = load(text, 1000).unwrap();
        assert_eq!(g.order().unwrap(), 20);
        assert!(g.frobenius_module().is_some());
    }

    #[test]
    fn nested_complement_and_power() {
        let text = r#"
kind = "power"
n = 2
[base]
kind = "semidirect"
p = 3
d = 1
matrices = [[2]]
[base.complement]
kind = "perm"
generators = [[2, 1]]
"#;
        let g = load(text, 1000).unwrap();
        assert_eq!(g.order().unwrap(), 18);
    }

    #[test]
    fn catalog_shorthand() {
        assert_eq!(parse("catalog:C7:C3").unwrap(), Description::Catalog("C7:C3".into()));
        assert_eq!(parse("kind = \"catalog:Q8\"").unwrap(), Description::Catalog("Q8".into()));
        assert_eq!(load("catalog:C7:C3", 1000).unwrap().order().unwrap(), 21);
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse("kind = \"perm\"\ngenerators = [[1, 2\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert!(line >= 2),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn unknown_field_is_rejected_with_position() {
        let err = parse("kind = \"perm\"\ncolour = 3\n").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 1)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(parse("kind = \"blob\""), Err(Error::Parse { .. })));
        assert!(matches!(parse("kind = \"matrix\"\np = 5"), Err(Error::Parse { .. })));
        let bad = "kind = \"matrix\"\np = 5\nd = 2\ngenerators = [[1, 2, 3]]\n";
        assert!(matches!(load(bad, 100), Err(Error::Parse { .. })));
        let not_hom = "kind = \"semidirect\"\np = 5\nd = 1\nmatrices = [[2]]\ncomplement = \"C2\"\n";
        assert!(matches!(load(not_hom, 100), Err(Error::NotHomomorphism(_))));
        assert!(matches!(load("catalog:nope", 100), Err(Error::UnknownName(_))));
    }
}
