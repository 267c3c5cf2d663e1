//! Reproduction checks for the classification results, one row per check.

mod rows;

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;

use crate::cache::cached_table;
use crate::catalog::{self, FrobeniusInstance};
use crate::chartable::{CharacterTable, TableConfig};
use crate::error::{Error, Result};
use crate::fp;
use crate::group::{GroupHandle, DEFAULT_CAP};
use crate::modules::{build_semidirect_capped, FpModule};

pub use rows::{criterion_title, row_specs, RowSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerificationRow {
    pub criterion: u8,
    pub name: String,
    pub params: Vec<(String, String)>,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub diff: Option<String>,
}

impl VerificationRow {
    /// `PASS|FAIL|SKIP name key=value…`, values with spaces replaced by `_`.
    pub fn machine_line(&self) -> String {
        let clean = |s: &str| s.replace(char::is_whitespace, "_");
        let mut line = format!("{} {} criterion={}", self.status, self.name, self.criterion);
        for (k, v) in &self.params {
            line.push_str(&format!(" {k}={}", clean(v)));
        }
        line.push_str(&format!(" expected={} computed={}", clean(&self.expected), clean(&self.computed)));
        if let Some(d) = &self.diff {
            line.push_str(&format!(" diff={}", clean(d)));
        }
        line
    }

    pub fn text_line(&self) -> String {
        let mut line = format!("[{}] {:<28} expected {}; computed {}", self.status, self.name, self.expected, self.computed);
        if let Some(d) = &self.diff {
            line.push_str(&format!(" ({d})"));
        }
        line
    }
}

/// What a row check reports before it is stamped with its name and criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub params: Vec<(String, String)>,
    pub expected: String,
    pub computed: String,
    pub diff: Option<String>,
}

impl Outcome {
    pub fn compare(expected: impl fmt::Display, computed: impl fmt::Display, ok: bool) -> Self {
        Self {
            status: if ok { Status::Pass } else { Status::Fail },
            params: Vec::new(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            diff: None,
        }
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn with_diff(mut self, diff: impl Into<String>) -> Self {
        if self.status == Status::Fail {
            self.diff = Some(diff.into());
        }
        self
    }

    fn from_error(e: &Error) -> Self {
        let capped = matches!(e, Error::TooLarge { .. } | Error::TableCap { .. } | Error::ScanCap { .. });
        Self {
            status: if capped { Status::Skip } else { Status::Fail },
            params: Vec::new(),
            expected: "-".into(),
            computed: if capped { "skipped: cap".into() } else { format!("error: {e}") },
            diff: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub cap: usize,
    pub dixon_cap: u64,
    pub cache_dir: Option<PathBuf>,
    /// Replacement generator matrices (row-major entries) for named instances.
    pub mutations: HashMap<String, Vec<Vec<i64>>>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            dixon_cap: crate::chartable::DEFAULT_DIXON_CAP,
            cache_dir: None,
            mutations: HashMap::new(),
        }
    }
}

/// Shared access to catalog groups under the harness caps and mutations.
pub struct Ctx {
    pub cfg: HarnessConfig,
}

impl Ctx {
    pub fn new(cfg: HarnessConfig) -> Self {
        Self { cfg }
    }

    pub fn table_config(&self) -> TableConfig {
        TableConfig {
            dixon_cap: self.cfg.dixon_cap,
        }
    }

    fn capped(&self, g: GroupHandle) -> GroupHandle {
        if self.cfg.cap == DEFAULT_CAP {
            g
        } else {
            g.recapped(self.cfg.cap)
        }
    }

    pub fn group(&self, name: &str) -> Result<GroupHandle> {
        Ok(self.capped(catalog::group(name)?))
    }

    pub fn instance(&self, name: &str) -> Result<Arc<FrobeniusInstance>> {
        let inst = catalog::frobenius_instance(name)?;
        if let Some(entries) = self.cfg.mutations.get(name) {
            let m = &inst.module;
            let (p, d) = (m.p(), m.dim());
            let images = entries
                .iter()
                .map(|e| {
                    if e.len() != d * d {
                        return Err(Error::Precondition(format!("mutation for {name} needs {} entries", d * d)));
                    }
                    let rows: Vec<Vec<i64>> = e.chunks(d).map(|r| r.to_vec()).collect();
                    Ok(fp::from_rows(&rows, p))
                })
                .collect::<Result<Vec<_>>>()?;
            let module = Arc::new(FpModule::new(p, d, m.complement().clone(), images)?);
            let group = build_semidirect_capped(Arc::clone(&module), self.cfg.cap)?;
            return Ok(Arc::new(FrobeniusInstance {
                name: inst.name.clone(),
                complement_name: inst.complement_name.clone(),
                p,
                d,
                variant: inst.variant,
                module,
                group,
            }));
        }
        if self.cfg.cap == DEFAULT_CAP {
            return Ok(inst);
        }
        let group = build_semidirect_capped(Arc::clone(&inst.module), self.cfg.cap)?;
        Ok(Arc::new(FrobeniusInstance {
            name: inst.name.clone(),
            complement_name: inst.complement_name.clone(),
            p: inst.p,
            d: inst.d,
            variant: inst.variant,
            module: Arc::clone(&inst.module),
            group,
        }))
    }

    pub fn table(&self, g: &GroupHandle) -> Result<CharacterTable> {
        cached_table(g, &self.table_config(), self.cfg.cache_dir.as_deref())
    }
}

/// Runs every row (in parallel) and returns them in the fixed row order.
pub fn verify_paper(cfg: HarnessConfig) -> Vec<VerificationRow> {
    run_specs(cfg, row_specs())
}

pub fn run_specs(cfg: HarnessConfig, specs: Vec<RowSpec>) -> Vec<VerificationRow> {
    let ctx = Ctx::new(cfg);
    specs
        .par_iter()
        .map(|spec| {
            let outcome = (spec.check)(&ctx).unwrap_or_else(|e| Outcome::from_error(&e));
            VerificationRow {
                criterion: spec.criterion,
                name: spec.name.clone(),
                params: outcome.params,
                status: outcome.status,
                expected: outcome.expected,
                computed: outcome.computed,
                diff: outcome.diff,
            }
        })
        .collect()
}

/// Rows of one criterion.
pub fn criterion_rows(cfg: HarnessConfig, criterion: u8) -> Vec<VerificationRow> {
    let specs = row_specs().into_iter().filter(|s| s.criterion == criterion).collect();
    run_specs(cfg, specs)
}

/// Worst status of a set of rows: any failure fails, otherwise any skip skips.
pub fn summarize(rows: &[VerificationRow]) -> Status {
    rows.iter().map(|r| r.status).fold(Status::Pass, |acc, s| match (acc, s) {
        (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
        (Status::Skip, _) | (_, Status::Skip) => Status::Skip,
        _ => Status::Pass,
    })
}
