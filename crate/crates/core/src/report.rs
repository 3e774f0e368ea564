//! Serialized forms: JSON reports, JSON-lines sweep records, CSV summaries,
//! and plain-text tables.
//!
//! JSON output is compact, keys follow struct declaration order, and every
//! number is an integer, so equal inputs give byte-identical documents.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::conditions::ConditionReport;
use crate::error::{Error, Result};
use crate::hilbert::{Engine, FactorizationCount, HilbertBasis};
use crate::model::ExponentVector;
use crate::sweep::SweepSummary;

pub const SCHEMA_VERSION: &str = "1";

/// Process exit codes shared by every command.
pub mod exit {
    pub const OK: i32 = 0;
    pub const COUNTEREXAMPLE: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    #[serde(flatten)]
    pub report: ConditionReport,
}

impl From<ConditionReport> for ReportDocument {
    fn from(report: ConditionReport) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            report,
        }
    }
}

fn check_schema(version: &str) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::Format(format!(
            "unsupported schema_version {version:?}"
        )));
    }
    Ok(())
}

pub fn report_json(report: &ConditionReport) -> Result<String> {
    Ok(serde_json::to_string(&ReportDocument::from(
        report.clone(),
    ))?)
}

pub fn parse_report(text: &str) -> Result<ConditionReport> {
    let doc: ReportDocument = serde_json::from_str(text)?;
    check_schema(&doc.schema_version)?;
    Ok(doc.report)
}

/// Exit code for a finished report: 1 only when a checked equivalence fails.
pub fn report_exit_code(report: &ConditionReport) -> i32 {
    if report.passes() {
        exit::OK
    } else {
        exit::COUNTEREXAMPLE
    }
}

/// Renders a report as JSON or as a text table, returning the text and the exit code.
pub fn emit_report(report: &ConditionReport, json: bool) -> Result<(String, i32)> {
    let text = if json {
        let mut s = report_json(report)?;
        s.push('\n');
        s
    } else {
        report_table(report)
    };
    Ok((text, report_exit_code(report)))
}

/// One newline-terminated JSON line for a sweep output file.
pub fn emit_sweep_record(report: &ConditionReport) -> Result<String> {
    let mut line = report_json(report)?;
    line.push('\n');
    Ok(line)
}

pub fn write_sweep_record(out: &mut (impl Write + ?Sized), report: &ConditionReport) -> Result<()> {
    out.write_all(emit_sweep_record(report)?.as_bytes())?;
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn report_table(report: &ConditionReport) -> String {
    let inst = &report.instance;
    let c = &report.conditions;
    let mut s = String::new();
    let _ = writeln!(s, "rank           {}", inst.rank());
    let _ = writeln!(
        s,
        "degrees        {}",
        ExponentVector::new(inst.degrees().entries().to_vec())
    );
    let _ = writeln!(s, "orders         {}", inst.orders());
    if let Some(g) = inst.degrees().group() {
        let _ = writeln!(s, "group          {g}");
    }
    if let Some(s0) = &inst.s0 {
        let _ = writeln!(s, "s0             {s0}");
    }
    let _ = writeln!(s, "admissible     {}", yes_no(report.admissible.ok));
    for r in &report.admissible.reasons {
        let _ = writeln!(s, "  - {r}");
    }
    let _ = writeln!(
        s,
        "hilbert basis  {} element(s): {}",
        report.hilbert.size,
        join(&report.hilbert.elements)
    );
    let _ = writeln!(s, "factorial      {}", yes_no(report.factorial));
    let _ = writeln!(s, "condition i    {}", yes_no(c.i));
    let _ = writeln!(s, "condition ii   {}", yes_no(c.ii.ok));
    for p in &c.ii.pairs {
        match &p.witness {
            Some(w) => {
                let _ = writeln!(s, "  ({},{})  witness {w}", p.k, p.l);
            }
            None => {
                let _ = writeln!(s, "  ({},{})  no witness", p.k, p.l);
            }
        }
    }
    let m = c.iii.m.map_or("none".to_string(), |m| m.to_string());
    let _ = writeln!(s, "condition iii  {} (m = {m})", yes_no(c.iii.ok));
    let failing = c
        .ii_prime
        .failing_subset
        .as_ref()
        .map_or("none".to_string(), |f| format!("{{{}}}", join(f)));
    let _ = writeln!(
        s,
        "condition ii'  {} (failing subset: {failing})",
        yes_no(c.ii_prime.ok)
    );
    let eq = match report.equivalence_ok {
        Some(true) => "holds",
        Some(false) => "FAILS",
        None => "not asserted",
    };
    let _ = writeln!(s, "equivalence    {eq}");
    s
}

/// JSON document for the `hilbert` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertDocument {
    pub schema_version: String,
    pub orders: Vec<i64>,
    pub engine: Engine,
    pub size: usize,
    pub elements: Vec<ExponentVector>,
    pub factorial: bool,
    pub lattice_full: bool,
    /// Present when the other engine was run as a cross-check.
    pub oracle_agreement: Option<bool>,
}

impl HilbertDocument {
    pub fn new(basis: &HilbertBasis, lattice_full: bool, oracle_agreement: Option<bool>) -> Self {
        HilbertDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            orders: basis.orders().entries().to_vec(),
            engine: basis.engine(),
            size: basis.len(),
            elements: basis.elements().to_vec(),
            factorial: crate::hilbert::is_factorial(basis, basis.rank()),
            lattice_full,
            oracle_agreement,
        }
    }
}

/// JSON document for the `factorize` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDocument {
    pub schema_version: String,
    pub orders: Vec<i64>,
    pub basis: Vec<ExponentVector>,
    pub cap: u64,
    #[serde(flatten)]
    pub result: FactorizationCount,
}

impl FactorizationDocument {
    pub fn new(basis: &HilbertBasis, cap: u64, result: FactorizationCount) -> Self {
        FactorizationDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            orders: basis.orders().entries().to_vec(),
            basis: basis.elements().to_vec(),
            cap,
            result,
        }
    }
}

/// CSV with one row per Hilbert-basis size bucket followed by a totals row.
pub fn summary_csv(summary: &SweepSummary) -> String {
    let mut s = String::from("hilbert_size,instances\n");
    for (size, count) in &summary.hilbert_size_histogram {
        let _ = writeln!(s, "{size},{count}");
    }
    let _ = writeln!(s, "total,{}", summary.admissible);
    s
}

pub fn summary_json(summary: &SweepSummary) -> Result<String> {
    Ok(serde_json::to_string(summary)?)
}
