//! Command-line front end: single-instance computation, witness
//! construction, group sweeps, and named verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 budget refusal.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sigma_sumset_core::checks::{run_check, CheckConfig, CheckKind};
use sigma_sumset_core::search::DEFAULT_BUDGET;
use sigma_sumset_core::{
    abelian_groups_up_to, asymmetric_half_witness, bound_report, classify_symmetry,
    cyclic_symmetric_witness, fold_signed_sumset, fold_sumset, product_witness, rho_pm_restricted,
    survey, BoundReport, CyclicWitnessParams, ElementSet, Error, GroupSpec, SearchOptions,
    SearchOutcome, SurveyRow,
};

mod ranges;

use ranges::parse_values;

const BUDGET_ENV: &str = "SIGMA_SUMSET_BUDGET";

#[derive(Parser)]
#[command(
    name = "sigma-sumset",
    version,
    about = "Sumsets and signed sumsets in finite abelian groups",
    long_about = "Computes h-fold sumset and signed-sumset minima over m-subsets of a \
                  finite abelian group, their closed-form bounds, explicit witness sets, \
                  and sweeps that compare search against the formulas."
)]
struct Cli {
    /// Worker threads for the search pool (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Per-instance evaluation budget (overrides SIGMA_SUMSET_BUDGET)
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Output format (csv applies to survey only)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formula,
    Search,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    /// Symmetric union of cosets in a cyclic group, one family per divisor
    CyclicR,
    /// Product of per-factor cyclic witnesses
    Product,
    /// One orientation of each inverse pair inside an odd-order subgroup
    AsymmetricHalf,
}

#[derive(Subcommand)]
enum Command {
    /// Bounds and searched minima for one group over m/h ranges
    Compute {
        /// Invariant factors, e.g. "3,3" or "12"
        #[arg(long)]
        group: String,
        /// Subset size: "4", "2,5", or "1..9"
        #[arg(long)]
        m: String,
        /// Fold weight: "2", "2,3", or "2..5"
        #[arg(long)]
        h: String,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Build a witness set and report the signed sumset size it achieves
    Witness {
        #[arg(long, value_enum)]
        construction: Construction,
        /// Invariant factors; cyclic-r needs a single factor
        #[arg(long)]
        group: String,
        /// Subset size; for product, a comma list of per-factor sizes
        #[arg(long)]
        m: String,
        /// Divisor parameter for cyclic-r and asymmetric-half
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, default_value_t = 2)]
        h: u64,
    },
    /// Sweep all groups up to an order, comparing search and formulas
    Survey {
        #[arg(long, default_value_t = 24)]
        max_order: u64,
        /// Restrict the sweep to one group
        #[arg(long)]
        group: Option<String>,
        /// Subset sizes (default: every m up to each group order)
        #[arg(long)]
        m: Option<String>,
        #[arg(long, default_value = "2,3")]
        h: String,
    },
    /// Run a named verification suite
    Verify {
        /// One of: symmetry, cyclic, upm-equality, conjecture,
        /// no-p2-subgroup, constructions
        #[arg(long)]
        check: String,
        #[arg(long)]
        max_order: Option<u64>,
        #[arg(long)]
        h: Option<String>,
        /// Cap on subset sizes per group
        #[arg(long)]
        m_max: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(workers);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot build worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &CliError) -> u8 {
    match e {
        CliError::Core(Error::BudgetExceeded { .. }) => 3,
        CliError::Core(_) => 2,
        CliError::Usage(_) => 2,
        CliError::Io(_) => 2,
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn run(cli: &Cli) -> CliResult<ExitCode> {
    let options = SearchOptions {
        budget: resolve_budget(cli)?,
        ..SearchOptions::default()
    };
    match &cli.command {
        Command::Compute { group, m, h, mode } => cmd_compute(cli, &options, group, m, h, *mode),
        Command::Witness {
            construction,
            group,
            m,
            d,
            h,
        } => cmd_witness(cli, *construction, group, m, *d, *h),
        Command::Survey {
            max_order,
            group,
            m,
            h,
        } => cmd_survey(cli, &options, *max_order, group.as_deref(), m.as_deref(), h),
        Command::Verify {
            check,
            max_order,
            h,
            m_max,
        } => cmd_verify(cli, &options, check, *max_order, h.as_deref(), *m_max),
    }
}

fn resolve_budget(cli: &Cli) -> CliResult<u64> {
    if let Some(b) = cli.budget {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
            CliError::Usage(format!(
                "{BUDGET_ENV} must be a nonnegative integer, got {raw:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
            f.write_all(b"\n")?;
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn emit_json<T: Serialize>(cli: &Cli, doc: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(doc).expect("serializable output");
    emit(cli, &text)
}

#[derive(Serialize)]
struct ComputeDoc {
    v: u32,
    results: Vec<ComputeResult>,
}

#[derive(Serialize)]
struct ComputeResult {
    group: GroupSpec,
    m: u64,
    h: u64,
    rho: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho_pm: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<SearchOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "match")]
    match_conjecture: Option<bool>,
}

fn cmd_compute(
    cli: &Cli,
    options: &SearchOptions,
    group: &str,
    m_spec: &str,
    h_spec: &str,
    mode: Mode,
) -> CliResult<ExitCode> {
    let group: GroupSpec = group.parse()?;
    let ms = parse_values(m_spec).map_err(CliError::Usage)?;
    let hs = parse_values(h_spec).map_err(CliError::Usage)?;
    let mut results = Vec::new();
    for &m in &ms {
        for &h in &hs {
            let rho = sigma_sumset_core::rho_formula(&group, m, h)?;
            let bounds = match mode {
                Mode::Formula | Mode::Both => Some(bound_report(&group, m, h)?),
                Mode::Search => None,
            };
            let search = match mode {
                Mode::Search | Mode::Both => Some(rho_pm_restricted(&group, m, h, options)?),
                Mode::Formula => None,
            };
            let match_conjecture = match (&bounds, &search) {
                (Some(b), Some(s)) => b.conjecture_value.map(|c| c == s.value),
                _ => None,
            };
            results.push(ComputeResult {
                group: group.clone(),
                m,
                h,
                rho,
                rho_pm: search.as_ref().map(|s| s.value),
                bounds,
                search,
                match_conjecture,
            });
        }
    }
    emit_json(cli, &ComputeDoc { v: 1, results })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct WitnessDoc {
    v: u32,
    construction: &'static str,
    group: GroupSpec,
    h: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sizes: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<CyclicWitnessParams>,
    witness: ElementSet,
    size: u64,
    symmetry_class: String,
    achieved_signed: u64,
    achieved_plain: u64,
}

fn cmd_witness(
    cli: &Cli,
    construction: Construction,
    group: &str,
    m_spec: &str,
    d: Option<u64>,
    h: u64,
) -> CliResult<ExitCode> {
    let group: GroupSpec = group.parse()?;
    let ms = parse_values(m_spec).map_err(CliError::Usage)?;
    let need_d = || d.ok_or_else(|| CliError::Usage("this construction needs --d".into()));
    let single_m = || -> CliResult<u64> {
        if ms.len() != 1 {
            return Err(CliError::Usage(
                "this construction takes a single --m value".into(),
            ));
        }
        Ok(ms[0])
    };
    let (name, witness, params) = match construction {
        Construction::CyclicR => {
            if !group.is_cyclic() {
                return Err(CliError::Usage(
                    "cyclic-r needs a cyclic group (a single invariant factor)".into(),
                ));
            }
            let w = cyclic_symmetric_witness(group.order(), single_m()?, need_d()?)?;
            ("cyclic-r", w.set, Some(w.params))
        }
        Construction::Product => {
            let w = product_witness(&group, &ms, h)?;
            ("product", w, None)
        }
        Construction::AsymmetricHalf => {
            let w = asymmetric_half_witness(&group, single_m()?, need_d()?)?;
            ("asymmetric-half", w, None)
        }
    };
    let achieved_signed = fold_signed_sumset(&witness, h)?.len();
    let achieved_plain = fold_sumset(&witness, h)?.len();
    let (m, sizes) = match construction {
        Construction::Product => (None, Some(ms)),
        _ => (Some(ms[0]), None),
    };
    let doc = WitnessDoc {
        v: 1,
        construction: name,
        group,
        h,
        d,
        m,
        sizes,
        params,
        size: witness.len(),
        symmetry_class: classify_symmetry(&witness).to_string(),
        witness,
        achieved_signed,
        achieved_plain,
    };
    emit_json(cli, &doc)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SurveyDoc {
    v: u32,
    rows: Vec<SurveyRow>,
}

fn cmd_survey(
    cli: &Cli,
    options: &SearchOptions,
    max_order: u64,
    group: Option<&str>,
    m_spec: Option<&str>,
    h_spec: &str,
) -> CliResult<ExitCode> {
    let groups = match group {
        Some(s) => vec![s.parse::<GroupSpec>()?],
        None => abelian_groups_up_to(max_order),
    };
    let max_n = groups.iter().map(|g| g.order()).max().unwrap_or(2);
    let ms = match m_spec {
        Some(spec) => parse_values(spec).map_err(CliError::Usage)?,
        None => (1..=max_n).collect(),
    };
    let hs = parse_values(h_spec).map_err(CliError::Usage)?;
    let rows = survey(&groups, ms.into_iter(), hs.into_iter(), options)?;
    match cli.format {
        Format::Csv => {
            let mut text = String::from(SurveyRow::csv_header());
            for row in &rows {
                text.push('\n');
                text.push_str(&row.to_csv());
            }
            emit(cli, &text)?;
        }
        Format::Json => emit_json(cli, &SurveyDoc { v: 1, rows })?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyDoc {
    v: u32,
    check: &'static str,
    instances: u64,
    passed: bool,
    failures: Vec<sigma_sumset_core::checks::CheckFailure>,
}

fn cmd_verify(
    cli: &Cli,
    options: &SearchOptions,
    check: &str,
    max_order: Option<u64>,
    h_spec: Option<&str>,
    m_max: Option<u64>,
) -> CliResult<ExitCode> {
    let kind: CheckKind = check.parse()?;
    let h_values = match h_spec {
        Some(s) => Some(parse_values(s).map_err(CliError::Usage)?),
        None => None,
    };
    let cfg = CheckConfig {
        max_order,
        h_values,
        m_max,
        options: *options,
    };
    let report = run_check(kind, &cfg)?;
    let passed = report.passed();
    match cli.format {
        Format::Json => emit_json(
            cli,
            &VerifyDoc {
                v: 1,
                check: report.check,
                instances: report.instances,
                passed,
                failures: report.failures,
            },
        )?,
        Format::Csv => {
            let mut text = format!(
                "check {}: {} ({} instances)",
                report.check,
                if passed { "PASS" } else { "FAIL" },
                report.instances
            );
            for f in &report.failures {
                text.push_str(&format!("\n  {} -- {}", f.instance, f.detail));
            }
            emit(cli, &text)?;
        }
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
