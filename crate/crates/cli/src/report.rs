use std::fmt::Write;
use std::path::Path;

use frobrat::cache::cached_table;
use frobrat::group::PrimeGraph;
use frobrat::harness::{criterion_title, summarize, Status, VerificationRow};
use frobrat::rationality::{r_order_class, RationalityReport};
use frobrat::{classify, CharacterTable, GroupHandle, Result, TableConfig};

use crate::Format;

pub struct Analysis {
    order: u64,
    exponent: u64,
    classes: Vec<(u64, u64, String)>,
    prime_graph: PrimeGraph,
    frobenius: Option<String>,
    report: RationalityReport,
    table_note: Option<String>,
    cut_by_characters: Option<bool>,
}

pub fn analyze(g: &GroupHandle, cfg: &TableConfig, cache: Option<&Path>) -> Result<Analysis> {
    let cls = g.classes()?;
    let (table, table_note) = match cached_table(g, cfg, cache) {
        Ok(t) => (Some(t), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let report = classify(&cls, table.as_ref());
    let classes = report
        .per_class
        .iter()
        .map(|c| (c.order, cls.sizes[c.class], c.a.render()))
        .collect();
    let frobenius = g.frobenius_module().map(|m| {
        format!(
            "K = F_{}^{}, |H| = {}, fixed-point free: {}",
            m.p(),
            m.dim(),
            m.complement().order().unwrap_or(0),
            if m.is_fixed_point_free() { "yes" } else { "no" }
        )
    });
    Ok(Analysis {
        order: cls.order,
        exponent: cls.exponent,
        classes,
        prime_graph: g.prime_graph()?,
        frobenius,
        cut_by_characters: table.as_ref().map(CharacterTable::is_cut),
        report,
        table_note,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

impl Analysis {
    fn fields(&self) -> Vec<(&'static str, String)> {
        let r = &self.report;
        let components: Vec<String> = self
            .prime_graph
            .components()
            .iter()
            .map(|c| format!("{c:?}"))
            .collect();
        let mut out = vec![
            ("order", self.order.to_string()),
            ("exponent", self.exponent.to_string()),
            ("classes", self.classes.len().to_string()),
            ("prime_graph", self.prime_graph.to_string()),
            ("prime_graph_components", components.join(" ")),
        ];
        if let Some(f) = &self.frobenius {
            out.push(("semidirect", f.clone()));
        }
        out.push(("rational", yes(r.rational).into()));
        out.push(("semi_rational", yes(r.semi_rational).into()));
        out.push(("uniformly_semi_rational", yes(r.uniformly_semi_rational).into()));
        out.push(("inverse_semi_rational", yes(r.inverse_semi_rational).into()));
        out.push((
            "quadratic_rational",
            match (r.quadratic_rational, &self.table_note) {
                (Some(q), _) => yes(q).into(),
                (None, Some(note)) => format!("unknown ({note})"),
                (None, None) => "unknown".into(),
            },
        ));
        if let Some(c) = self.cut_by_characters {
            out.push(("cut_by_characters", yes(c).into()));
        }
        out.push(("R_G", r.r_g.render()));
        out.push(("S_G", r.s_g.render()));
        if let Ok(bucket) = r_order_class(&r.s_g) {
            out.push(("r_order", bucket.to_string()));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Text => {
                for (k, v) in self.fields() {
                    let _ = writeln!(s, "{:<26}{v}", format!("{k}:"));
                }
                let _ = writeln!(s, "\n{:>5} {:>6} {:>8}  A_x", "class", "order", "size");
                for (i, (o, size, a)) in self.classes.iter().enumerate() {
                    let _ = writeln!(s, "{i:>5} {o:>6} {size:>8}  {a}");
                }
                if !self.report.witnesses.is_empty() {
                    let _ = writeln!(s, "\nwitnesses:");
                    for w in &self.report.witnesses {
                        let _ = writeln!(s, "  {w}");
                    }
                }
            }
            Format::Machine => {
                let clean = |v: &str| v.replace(char::is_whitespace, "_");
                for (k, v) in self.fields() {
                    let _ = writeln!(s, "{k}={}", clean(&v));
                }
                for (i, (o, size, a)) in self.classes.iter().enumerate() {
                    let _ = writeln!(s, "class={i} order={o} size={size} A_x={}", clean(a));
                }
                for w in &self.report.witnesses {
                    let _ = writeln!(s, "witness flag={} index={} detail={}", w.flag, w.index, clean(&w.detail));
                }
            }
        }
        s
    }
}

pub fn chartable(t: &CharacterTable, format: Format) -> String {
    match format {
        Format::Text => t.to_string(),
        Format::Machine => {
            let mut s = String::new();
            let orders: Vec<String> = t.classes.orders.iter().map(u64::to_string).collect();
            let sizes: Vec<String> = t.classes.sizes.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "orders {}", orders.join(" "));
            let _ = writeln!(s, "sizes {}", sizes.join(" "));
            for row in &t.rows {
                let vals: Vec<String> = row.iter().map(|v| v.render()).collect();
                let _ = writeln!(s, "row {}", vals.join(" "));
            }
            s
        }
    }
}

pub fn verification(rows: &[VerificationRow], format: Format) -> String {
    let mut s = String::new();
    let count = |st: Status| rows.iter().filter(|r| r.status == st).count();
    match format {
        Format::Text => {
            let mut current = 0;
            for r in rows {
                if r.criterion != current {
                    current = r.criterion;
                    let own: Vec<VerificationRow> = rows.iter().filter(|x| x.criterion == current).cloned().collect();
                    let _ = writeln!(s, "criterion {current}: {} {}", summarize(&own), criterion_title(current));
                }
                let _ = writeln!(s, "  {}", r.text_line());
            }
        }
        Format::Machine => {
            for r in rows {
                let _ = writeln!(s, "{}", r.machine_line());
            }
        }
    }
    let _ = writeln!(
        s,
        "SUMMARY rows={} pass={} fail={} skip={}",
        rows.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skip)
    );
    s
}
