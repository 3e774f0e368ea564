//! Command-line front end for the `artin-hol` library.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use artin_hol::catalog::{catalog_groups, lookup, validate_catalog_entry};
use artin_hol::conditions::check_instance;
use artin_hol::hilbert::{count_factorizations, hilbert_basis, lattice_is_full, Engine};
use artin_hol::model::{DegreeVector, ExponentVector, Instance, InstanceFlags, OrderVector};
use artin_hol::report::{
    emit_report, exit, summary_csv, summary_json, FactorizationDocument, HilbertDocument,
};
use artin_hol::sweep::{run_sweep, SweepPlan};
use artin_hol::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "artin-hol",
    version,
    about = "Hilbert bases and holomorphy criteria for Artin L-function semigroups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum CliCommand {
    /// Decide every condition for one instance.
    Check(CheckArgs),
    /// Compute the Hilbert basis of Hol for an order vector.
    Hilbert(HilbertArgs),
    /// Count factorizations of an element over the Hilbert basis.
    Factorize(FactorizeArgs),
    /// Check every order vector in the box [-B, B]^r.
    Sweep(SweepArgs),
    /// List or show the built-in character-degree table.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct DegreeSource {
    /// Character degrees, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "group",
        required_unless_present = "group"
    )]
    pub degrees: Option<Vec<u64>>,
    /// Take the degrees of a catalog group instead.
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Args)]
pub struct FlagArgs {
    /// Do not require <d, v> >= 0.
    #[arg(long)]
    pub no_dedekind: bool,
    /// Require v_1 >= 0.
    #[arg(long)]
    pub require_trivial_nonneg: bool,
}

impl FlagArgs {
    fn flags(&self) -> InstanceFlags {
        InstanceFlags {
            require_dedekind: !self.no_dedekind,
            require_trivial_nonneg: self.require_trivial_nonneg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub degrees: DegreeSource,
    /// Orders of f_1..f_r at s0, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub orders: Vec<i64>,
    #[command(flatten)]
    pub flags: FlagArgs,
    /// Opaque annotation for the point s0.
    #[arg(long)]
    pub s0: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    #[value(name = "enum", alias = "oracle")]
    Enum,
    Frontier,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Enum => Engine::Oracle,
            EngineArg::Frontier => Engine::Frontier,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct HilbertArgs {
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub orders: Vec<i64>,
    #[arg(long, value_enum, default_value = "frontier")]
    pub engine: EngineArg,
    /// Also run the other engine and compare.
    #[arg(long)]
    pub oracle_verify: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct FactorizeArgs {
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub orders: Vec<i64>,
    /// Exponent vector of the element, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub element: Vec<u64>,
    /// Stop counting at this many factorizations.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    pub cap: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub degrees: DegreeSource,
    /// Half-width B of the order box [-B, B]^r.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    pub order_bound: i64,
    #[command(flatten)]
    pub flags: FlagArgs,
    /// JSON-lines output, one record per instance.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
    #[arg(long)]
    pub summary_json: Option<PathBuf>,
    #[arg(long)]
    pub summary_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum CatalogCommand {
    List,
    Show { name: String },
}

/// Invalid input; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn degree_vector(src: &DegreeSource) -> Result<DegreeVector, UsageError> {
    match (&src.degrees, &src.group) {
        (_, Some(name)) => {
            let g = lookup(name).ok_or_else(|| usage(format!("unknown group {name:?}")))?;
            g.degree_vector().map_err(|e| usage(e.to_string()))
        }
        (Some(d), None) => DegreeVector::new(d.clone()).map_err(|e| usage(e.to_string())),
        (None, None) => Err(usage("either --degrees or --group is required")),
    }
}

fn order_vector(o: &[i64]) -> Result<OrderVector, UsageError> {
    OrderVector::new(o.to_vec()).map_err(|e| usage(e.to_string()))
}

/// Parses and validates a full argument list (including the program name).
pub fn parse_command<I, T>(argv: I) -> Result<CliCommand, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    validate(&cli.command)
        .map_err(|e| clap::Error::raw(clap::error::ErrorKind::ValueValidation, format!("{e}\n")))?;
    Ok(cli.command)
}

fn validate(cmd: &CliCommand) -> Result<(), UsageError> {
    match cmd {
        CliCommand::Check(a) => {
            let d = degree_vector(&a.degrees)?;
            if d.rank() != a.orders.len() {
                return Err(usage(format!(
                    "length mismatch: {} degrees but {} orders",
                    d.rank(),
                    a.orders.len()
                )));
            }
            order_vector(&a.orders)?;
        }
        CliCommand::Hilbert(a) => {
            order_vector(&a.orders)?;
        }
        CliCommand::Factorize(a) => {
            if a.orders.len() != a.element.len() {
                return Err(usage(format!(
                    "length mismatch: {} orders but element has {} entries",
                    a.orders.len(),
                    a.element.len()
                )));
            }
            order_vector(&a.orders)?;
        }
        CliCommand::Sweep(a) => {
            degree_vector(&a.degrees)?;
        }
        CliCommand::Catalog(CatalogCommand::Show { name }) => {
            lookup(name).ok_or_else(|| usage(format!("unknown group {name:?}")))?;
        }
        CliCommand::Catalog(CatalogCommand::List) => {}
    }
    Ok(())
}

/// Failure of a command after parsing.
#[derive(Debug)]
pub enum RunError {
    Usage(UsageError),
    Library(Error),
    Io(std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Library(Error::EngineMismatch { .. } | Error::Invariant(_)) => {
                exit::COUNTEREXAMPLE
            }
            RunError::Library(Error::Instance { source, .. })
                if matches!(**source, Error::EngineMismatch { .. } | Error::Invariant(_)) =>
            {
                exit::COUNTEREXAMPLE
            }
            _ => exit::INVALID_INPUT,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(e) => write!(f, "{e}"),
            RunError::Library(e) => write!(f, "{e}"),
            RunError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<UsageError> for RunError {
    fn from(e: UsageError) -> Self {
        RunError::Usage(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Library(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::Library(e.into())
    }
}

/// Executes a parsed command, writing its output to `out`; returns the exit code.
pub fn run(cmd: &CliCommand, out: &mut dyn Write) -> Result<i32, RunError> {
    match cmd {
        CliCommand::Check(a) => run_check(a, out),
        CliCommand::Hilbert(a) => run_hilbert(a, out),
        CliCommand::Factorize(a) => run_factorize(a, out),
        CliCommand::Sweep(a) => run_sweep_cmd(a, out),
        CliCommand::Catalog(c) => run_catalog(c, out),
    }
}

fn run_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32, RunError> {
    let inst = Instance::new(degree_vector(&a.degrees)?, order_vector(&a.orders)?)
        .map_err(|e| usage(e.to_string()))?
        .with_flags(a.flags.flags())
        .with_s0(a.s0.clone());
    let report = check_instance(&inst)?;
    let (text, code) = emit_report(&report, a.json)?;
    out.write_all(text.as_bytes())?;
    Ok(code)
}

fn run_hilbert(a: &HilbertArgs, out: &mut dyn Write) -> Result<i32, RunError> {
    let v = order_vector(&a.orders)?;
    let engine = Engine::from(a.engine);
    let basis = hilbert_basis(&v, engine)?;
    let agreement = if a.oracle_verify {
        let other = match engine {
            Engine::Oracle => Engine::Frontier,
            Engine::Frontier => Engine::Oracle,
        };
        Some(hilbert_basis(&v, other)?.same_elements(&basis))
    } else {
        None
    };
    let doc = HilbertDocument::new(&basis, lattice_is_full(&basis, v.rank())?, agreement);
    if a.json {
        writeln!(out, "{}", serde_json::to_string(&doc)?)?;
    } else {
        writeln!(out, "orders      {v}")?;
        writeln!(out, "engine      {}", doc.engine)?;
        writeln!(out, "size        {} (rank {})", doc.size, v.rank())?;
        for e in &doc.elements {
            writeln!(out, "  {e}")?;
        }
        writeln!(out, "factorial   {}", doc.factorial)?;
        writeln!(out, "full rank   {}", doc.lattice_full)?;
        if let Some(ok) = agreement {
            writeln!(out, "engines agree {ok}")?;
        }
    }
    Ok(if agreement == Some(false) {
        exit::COUNTEREXAMPLE
    } else {
        exit::OK
    })
}

fn run_factorize(a: &FactorizeArgs, out: &mut dyn Write) -> Result<i32, RunError> {
    let v = order_vector(&a.orders)?;
    let basis = hilbert_basis(&v, Engine::Frontier)?;
    let k = ExponentVector::new(a.element.clone());
    let count = count_factorizations(&k, &basis, a.cap).map_err(|e| usage(e.to_string()))?;
    let doc = FactorizationDocument::new(&basis, a.cap, count);
    if a.json {
        writeln!(out, "{}", serde_json::to_string(&doc)?)?;
    } else {
        let capped = if doc.result.count >= a.cap {
            " (capped)"
        } else {
            ""
        };
        writeln!(out, "element     {k}")?;
        writeln!(out, "factorizations {}{capped}", doc.result.count)?;
        for w in &doc.result.witnesses {
            let terms: Vec<String> = w
                .iter()
                .zip(&doc.basis)
                .filter(|(c, _)| **c > 0)
                .map(|(c, h)| format!("{c}*{h}"))
                .collect();
            writeln!(out, "  {}", terms.join(" + "))?;
        }
    }
    Ok(exit::OK)
}

fn run_sweep_cmd(a: &SweepArgs, out: &mut dyn Write) -> Result<i32, RunError> {
    let degrees = degree_vector(&a.degrees)?;
    let label = degrees.group().unwrap_or("synthetic").to_string();
    let mut plan = SweepPlan::new(degrees, a.order_bound)
        .with_flags(a.flags.flags())
        .with_workers(a.workers as usize);
    if let Some(p) = &a.out {
        plan = plan.with_output(p);
    }
    let outcome = run_sweep(&plan)?;
    let s = &outcome.summary;
    writeln!(out, "degrees        {:?} ({label})", plan.degrees.entries())?;
    writeln!(
        out,
        "order box      [-{b}, {b}]^{}",
        plan.degrees.rank(),
        b = a.order_bound
    )?;
    writeln!(out, "instances      {}", s.total)?;
    writeln!(out, "admissible     {}", s.admissible)?;
    writeln!(out, "inadmissible   {}", s.inadmissible)?;
    writeln!(
        out,
        "condition i    {} true / {} false",
        s.cond_i_true, s.cond_i_false
    )?;
    writeln!(out, "factorial, not i  {}", s.factorial_not_i)?;
    writeln!(out, "equivalence checked  {}", s.equivalence_checked)?;
    for (size, n) in &s.hilbert_size_histogram {
        writeln!(out, "  |Hilb| = {size}: {n}")?;
    }
    writeln!(out, "counterexamples {}", s.counterexamples.len())?;
    for c in &s.counterexamples {
        writeln!(out, "  {c:?}")?;
    }
    writeln!(
        out,
        "wall time      {:.3}s",
        outcome.wall_time.as_secs_f64()
    )?;
    if let Some(p) = &a.summary_json {
        fs::write(p, summary_json(s)? + "\n")?;
    }
    if let Some(p) = &a.summary_csv {
        fs::write(p, summary_csv(s))?;
    }
    Ok(if s.passes() {
        exit::OK
    } else {
        exit::COUNTEREXAMPLE
    })
}

fn run_catalog(c: &CatalogCommand, out: &mut dyn Write) -> Result<i32, RunError> {
    match c {
        CatalogCommand::List => {
            let groups = catalog_groups();
            writeln!(out, "{}", serde_json::to_string(&groups)?)?;
            let bad = groups.iter().any(|g| !validate_catalog_entry(g).ok);
            Ok(if bad { exit::COUNTEREXAMPLE } else { exit::OK })
        }
        CatalogCommand::Show { name } => {
            let g = lookup(name).ok_or_else(|| usage(format!("unknown group {name:?}")))?;
            writeln!(out, "{}", serde_json::to_string(&g)?)?;
            Ok(exit::OK)
        }
    }
}
