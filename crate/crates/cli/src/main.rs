//! Command-line front end: verify the catalog, print |2>-occupancy tables,
//! run the repetition-code protocol, compare cycle-time budgets, and dump
//! circuits in their text form.
//!
//! Exit status: 0 when every requested check passed, 1 when a check failed
//! or a run could not complete, 2 for usage and configuration errors.
//! Data goes to stdout (or `--out` files); summaries go to stderr, so
//! captured output stays machine-readable.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use tritforge_core::catalog::{self, DecompositionEntry};
use tritforge_core::qec::{
    self, AxisSchedule, ErrorMode, ErrorModel, FidelityReport, ResetChannel,
};
use tritforge_core::timing::{self, TimingBudget};
use tritforge_core::verify::{self, EquivalenceReport, TauReport};
use tritforge_core::{Error, Result, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "tritforge", version)]
#[command(about = "qutrit Toffoli catalog verifier and repetition-code simulator")]
struct Cli {
    /// Output format for data written to stdout or --out.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write data here instead of stdout. The qec subcommand treats a path
    /// without a .json/.csv extension as a base name and writes both files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Override the equivalence tolerance used by checks.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Randomness seed; falls back to TRITFORGE_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Check entries against their declared behavior, one line per entry.
    Verify {
        /// Verify every complete catalog entry.
        #[arg(long)]
        all: bool,

        /// Entry ids; append '*' for the truncated variant, B1-N<n> for
        /// the n-controlled ladder.
        ids: Vec<String>,
    },

    /// Print per-input |2>-occupancy costs in two-site-gate units.
    Tau {
        /// All entries the metric applies to.
        #[arg(long)]
        all: bool,

        ids: Vec<String>,
    },

    /// Run the three-qutrit repetition-code protocol.
    Qec(QecArgs),

    /// Compare the gate-sequence and feedback-loop cycle budgets.
    Timing {
        /// Single-site gate duration in ns.
        #[arg(long, default_value_t = 30.0)]
        single_ns: f64,

        /// Two-qutrit gate duration in ns.
        #[arg(long, default_value_t = 90.0)]
        two_qutrit_ns: f64,

        /// Exclusive conditional-flip duration in ns.
        #[arg(long, default_value_t = 125.0)]
        exclusive_ns: f64,

        /// Double-drive reset duration in ns.
        #[arg(long, default_value_t = 280.0)]
        reset_ns: f64,
    },

    /// Print one circuit in the line-oriented text format.
    Dump { id: String },

    /// List catalog metadata for every entry and truncated variant.
    List,
}

#[derive(Debug, Args)]
struct QecArgs {
    /// Number of correction cycles.
    #[arg(long)]
    cycles: Option<usize>,

    /// Codeword amplitude on |0>.
    #[arg(long)]
    alpha: Option<f64>,

    /// Codeword amplitude on |1>.
    #[arg(long)]
    beta: Option<f64>,

    /// Correction circuit id (truncated variant is used).
    #[arg(long)]
    decomposition: Option<String>,

    /// Error axis per cycle: bit, phase, or alternating.
    #[arg(long)]
    basis: Option<String>,

    /// Reset failure probability.
    #[arg(long)]
    eps_reset: Option<f64>,

    /// Leak angle of a nonexclusive central CNOT, radians.
    #[arg(long)]
    eps_cnot: Option<f64>,

    /// Rotation angle for --rotate-site, radians.
    #[arg(long)]
    theta: Option<f64>,

    /// Fixed angle on the first ancilla.
    #[arg(long)]
    theta1: Option<f64>,

    /// Fixed angle on the data site.
    #[arg(long)]
    theta2: Option<f64>,

    /// Fixed angle on the second ancilla.
    #[arg(long)]
    theta3: Option<f64>,

    /// Independent per-site error probability.
    #[arg(long)]
    p_error: Option<f64>,

    /// Rotate one site per cycle, sweeping the block.
    #[arg(long)]
    rotate_site: bool,

    /// One random site and angle per cycle.
    #[arg(long)]
    random_single: bool,

    /// key=value file providing any of the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_class(&err))
        }
    }
}

/// Usage and configuration mistakes exit 2; operational failures exit 1.
fn exit_class(err: &Error) -> u8 {
    match err {
        Error::UnknownId(_)
        | Error::NoIncompleteVariant(_)
        | Error::TauNotApplicable(_)
        | Error::BadControlCount(_)
        | Error::UnknownGate(_)
        | Error::NotNormalized { .. }
        | Error::InvalidBudget(_)
        | Error::Parse { .. }
        | Error::Config(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<bool> {
    let seed = resolve_seed(cli.seed)?;
    match &cli.command {
        Command::Verify { all, ids } => cmd_verify(&cli, *all, ids),
        Command::Tau { all, ids } => cmd_tau(&cli, *all, ids),
        Command::Qec(args) => cmd_qec(&cli, args, seed),
        Command::Timing {
            single_ns,
            two_qutrit_ns,
            exclusive_ns,
            reset_ns,
        } => cmd_timing(&cli, *single_ns, *two_qutrit_ns, *exclusive_ns, *reset_ns),
        Command::Dump { id } => cmd_dump(&cli, id),
        Command::List => cmd_list(&cli),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("TRITFORGE_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("TRITFORGE_SEED `{text}` is not a u64"))),
        Err(_) => Ok(0),
    }
}

/// Reject unknown ids before building anything, then build in input order.
fn resolve_entries(ids: &[String]) -> Result<Vec<DecompositionEntry>> {
    for id in ids {
        let known = if let Some(n) = id.strip_prefix("B1-N") {
            n.parse::<usize>().is_ok_and(|n| (2..=5).contains(&n))
        } else if let Some(base) = id.strip_suffix('*') {
            catalog::incomplete_ids().contains(&base)
        } else {
            catalog::catalog_ids().contains(&id.as_str())
        };
        if !known {
            return Err(Error::UnknownId(id.clone()));
        }
    }
    ids.iter().map(|id| build_entry(id)).collect()
}

fn build_entry(id: &str) -> Result<DecompositionEntry> {
    if let Some(n) = id.strip_prefix("B1-N") {
        let n = n
            .parse::<usize>()
            .map_err(|_| Error::UnknownId(id.to_string()))?;
        return catalog::n_controlled(n);
    }
    if id.ends_with('*') {
        return catalog::incomplete(id);
    }
    catalog::build(id)
}

/// Write to the given path (with path context on failure) or to stdout.
fn emit(out: Option<&Path>, payload: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, payload)
                .map_err(|err| Error::Config(format!("cannot write {}: {err}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn check_tolerance(entry: &DecompositionEntry, flag: Option<f64>) -> Result<Tolerances> {
    if let Some(tol) = flag {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(Error::Config(format!(
                "tolerance {tol} must be finite and positive"
            )));
        }
        return Ok(Tolerances::with_equivalence(tol));
    }
    // Truncated variants are judged against the looser purity bound their
    // random-target sampling is specified at.
    let default = if entry.complete { 1e-10 } else { 1e-9 };
    Ok(Tolerances::with_equivalence(default))
}

fn cmd_verify(cli: &Cli, all: bool, ids: &[String]) -> Result<bool> {
    let ids: Vec<String> = if all || ids.is_empty() {
        catalog::catalog_ids()
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        ids.to_vec()
    };
    let entries = resolve_entries(&ids)?;
    let checks: Vec<(String, Result<EquivalenceReport>)> = entries
        .par_iter()
        .map(|entry| {
            let report = check_tolerance(entry, cli.tolerance)
                .and_then(|tol| verify::check_declared(entry, &tol));
            (entry.declared.label(), report)
        })
        .collect();

    let mut labels = Vec::with_capacity(checks.len());
    let mut reports = Vec::with_capacity(checks.len());
    for (label, report) in checks {
        labels.push(label);
        reports.push(report?);
    }
    let all_passed = reports.iter().all(|r| r.equivalent);

    let payload = match cli.format {
        Format::Table => {
            let mut text = String::new();
            for (label, report) in labels.iter().zip(&reports) {
                let verdict = if report.equivalent { "PASS" } else { "FAIL" };
                let worst = report.worst_input.as_deref().unwrap_or("-");
                let _ = writeln!(
                    text,
                    "{verdict} {:<7} {:<12} dev={:.2e} leak={:.2e} phase={:+.6} inputs={} worst={worst}",
                    report.id,
                    label,
                    report.max_deviation,
                    report.leakage_norm,
                    report.global_phase,
                    report.checked_inputs,
                );
            }
            text
        }
        Format::Json => json_block(&reports)?,
        Format::Csv => {
            let mut text =
                String::from("id,behavior,equivalent,global_phase,max_deviation,leakage_norm,checked_inputs,worst_input\n");
            for (label, report) in labels.iter().zip(&reports) {
                let _ = writeln!(
                    text,
                    "{},{},{},{:.12e},{:.12e},{:.12e},{},{}",
                    report.id,
                    label,
                    u8::from(report.equivalent),
                    report.global_phase,
                    report.max_deviation,
                    report.leakage_norm,
                    report.checked_inputs,
                    report.worst_input.as_deref().unwrap_or(""),
                );
            }
            text
        }
    };
    emit(cli.out.as_deref(), &payload)?;
    let failed = reports.iter().filter(|r| !r.equivalent).count();
    if failed == 0 {
        eprintln!("verified {} entries, all passed", reports.len());
    } else {
        eprintln!("verified {} entries, {failed} failed", reports.len());
    }
    Ok(all_passed)
}

fn cmd_tau(cli: &Cli, all: bool, ids: &[String]) -> Result<bool> {
    let ids: Vec<String> = if all || ids.is_empty() {
        catalog::catalog_ids()
            .iter()
            .filter(|id| !matches!(**id, "ISWAP" | "REF10CX"))
            .map(|s| s.to_string())
            .collect()
    } else {
        ids.to_vec()
    };
    let entries = resolve_entries(&ids)?;
    let reports: Vec<TauReport> = entries
        .par_iter()
        .map(verify::tau_metric)
        .collect::<Result<_>>()?;

    let payload = match cli.format {
        Format::Table => {
            let mut text = String::from("id       input  tau   tau_max\n");
            for report in &reports {
                for (input, tau) in &report.per_input {
                    let _ = writeln!(
                        text,
                        "{:<7}  {input}     {tau:<4.1}  {:.1}",
                        report.id, report.tau_max
                    );
                }
            }
            text
        }
        Format::Json => json_block(&reports)?,
        Format::Csv => {
            let mut text = String::from("id,input,tau,tau_max\n");
            for report in &reports {
                for (input, tau) in &report.per_input {
                    let _ = writeln!(text, "{},{input},{tau:.6},{:.6}", report.id, report.tau_max);
                }
            }
            text
        }
    };
    emit(cli.out.as_deref(), &payload)?;
    eprintln!("computed tau for {} entries", reports.len());
    Ok(true)
}

/// QEC parameters after merging defaults, config file, and flags.
struct QecSettings {
    cycles: usize,
    alpha: f64,
    beta: f64,
    decomposition: String,
    basis: AxisSchedule,
    eps_reset: f64,
    eps_cnot: f64,
    theta: Option<f64>,
    theta1: Option<f64>,
    theta2: Option<f64>,
    theta3: Option<f64>,
    p_error: Option<f64>,
    rotate_site: bool,
    random_single: bool,
    seed: Option<u64>,
}

impl Default for QecSettings {
    fn default() -> Self {
        Self {
            cycles: 10,
            alpha: 0.6,
            beta: 0.8,
            decomposition: qec::DEFAULT_DECOMPOSITION.to_string(),
            basis: AxisSchedule::Alternating,
            eps_reset: 0.0,
            eps_cnot: 0.0,
            theta: None,
            theta1: None,
            theta2: None,
            theta3: None,
            p_error: None,
            rotate_site: false,
            random_single: false,
            seed: None,
        }
    }
}

fn parse_basis(text: &str) -> Result<AxisSchedule> {
    match text {
        "bit" => Ok(AxisSchedule::Bit),
        "phase" => Ok(AxisSchedule::Phase),
        "alternating" => Ok(AxisSchedule::Alternating),
        other => Err(Error::Config(format!(
            "basis `{other}` is not bit, phase, or alternating"
        ))),
    }
}

impl QecSettings {
    fn apply_config(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|err| Error::Config(format!("cannot read {}: {err}", path.display())))?;
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: index + 1,
                msg: format!("`{line}` is not key=value"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Parse {
                line: index + 1,
                msg: format!("`{value}` is not a valid {what} for {key}"),
            };
            match key {
                "cycles" => self.cycles = value.parse().map_err(|_| bad("count"))?,
                "alpha" => self.alpha = value.parse().map_err(|_| bad("number"))?,
                "beta" => self.beta = value.parse().map_err(|_| bad("number"))?,
                "decomposition" => self.decomposition = value.to_string(),
                "basis" => self.basis = parse_basis(value)?,
                "eps_reset" => self.eps_reset = value.parse().map_err(|_| bad("number"))?,
                "eps_cnot" => self.eps_cnot = value.parse().map_err(|_| bad("number"))?,
                "theta" => self.theta = Some(value.parse().map_err(|_| bad("number"))?),
                "theta1" => self.theta1 = Some(value.parse().map_err(|_| bad("number"))?),
                "theta2" => self.theta2 = Some(value.parse().map_err(|_| bad("number"))?),
                "theta3" => self.theta3 = Some(value.parse().map_err(|_| bad("number"))?),
                "p_error" => self.p_error = Some(value.parse().map_err(|_| bad("number"))?),
                "rotate_site" => self.rotate_site = value.parse().map_err(|_| bad("bool"))?,
                "random_single" => self.random_single = value.parse().map_err(|_| bad("bool"))?,
                "seed" => self.seed = Some(value.parse().map_err(|_| bad("u64"))?),
                other => {
                    return Err(Error::Config(format!(
                        "unknown config key `{other}` in {}",
                        path.display()
                    )))
                }
            }
        }
        Ok(())
    }

    fn apply_flags(&mut self, args: &QecArgs) {
        if let Some(v) = args.cycles {
            self.cycles = v;
        }
        if let Some(v) = args.alpha {
            self.alpha = v;
        }
        if let Some(v) = args.beta {
            self.beta = v;
        }
        if let Some(v) = &args.decomposition {
            self.decomposition = v.clone();
        }
        if let Some(v) = args.eps_reset {
            self.eps_reset = v;
        }
        if let Some(v) = args.eps_cnot {
            self.eps_cnot = v;
        }
        if let Some(v) = args.theta {
            self.theta = Some(v);
        }
        if let Some(v) = args.theta1 {
            self.theta1 = Some(v);
        }
        if let Some(v) = args.theta2 {
            self.theta2 = Some(v);
        }
        if let Some(v) = args.theta3 {
            self.theta3 = Some(v);
        }
        if let Some(v) = args.p_error {
            self.p_error = Some(v);
        }
        if args.rotate_site {
            self.rotate_site = true;
        }
        if args.random_single {
            self.random_single = true;
        }
    }

    fn error_mode(&self) -> Result<ErrorMode> {
        let fixed = self.theta1.is_some() || self.theta2.is_some() || self.theta3.is_some();
        let selected = usize::from(self.p_error.is_some())
            + usize::from(self.random_single)
            + usize::from(self.rotate_site)
            + usize::from(fixed);
        if selected > 1 {
            return Err(Error::Config(
                "choose one error mode: --p-error, --random-single, \
                 --rotate-site, or --theta1/--theta2/--theta3"
                    .to_string(),
            ));
        }
        if self.theta.is_some() && !self.rotate_site {
            return Err(Error::Config(
                "--theta selects the --rotate-site angle; pass --rotate-site \
                 or use --theta1/--theta2/--theta3"
                    .to_string(),
            ));
        }
        if let Some(p_error) = self.p_error {
            return Ok(ErrorMode::RandomIndependent { p_error });
        }
        if self.random_single {
            return Ok(ErrorMode::RandomSingle);
        }
        if self.rotate_site {
            let theta = self
                .theta
                .ok_or_else(|| Error::Config("--rotate-site needs --theta".to_string()))?;
            return Ok(ErrorMode::RotateSite { theta });
        }
        Ok(ErrorMode::FixedAngles {
            thetas: [
                self.theta1.unwrap_or(0.0),
                self.theta2.unwrap_or(0.0),
                self.theta3.unwrap_or(0.0),
            ],
        })
    }
}

fn cmd_qec(cli: &Cli, args: &QecArgs, seed: u64) -> Result<bool> {
    let mut settings = QecSettings::default();
    if let Some(path) = &args.config {
        settings.apply_config(path)?;
    }
    settings.apply_flags(args);
    let seed = cli.seed.or(settings.seed).map_or(seed, |s| s);

    let model = ErrorModel {
        mode: settings.error_mode()?,
        axis_schedule: settings.basis,
        seed,
    };
    let reset = ResetChannel::new(settings.eps_reset)?;
    let tol = Tolerances::default();
    let report = qec::run_protocol(
        settings.alpha,
        settings.beta,
        settings.cycles,
        &settings.decomposition,
        &model,
        &reset,
        settings.eps_cnot,
        &tol,
    )?;

    match &cli.out {
        Some(path) => write_qec_files(path, &report)?,
        None => {
            let payload = match cli.format {
                Format::Table => qec_table(&report),
                Format::Json => report.to_json()?,
                Format::Csv => report.to_csv(),
            };
            print!("{payload}");
        }
    }
    eprintln!(
        "cycles={} mean_fidelity={:.12} min_fidelity={:.12} leakage_events={} warnings={}",
        report.cycles,
        report.mean_fidelity,
        report.min_fidelity,
        report.leakage_events,
        report.entangled_reset_warnings,
    );
    Ok(true)
}

/// `--out report.json` or `--out report.csv` writes that one file; any
/// other path is a base name and both serializations are written.
fn write_qec_files(path: &Path, report: &FidelityReport) -> Result<()> {
    let write = |path: &Path, payload: &str| -> Result<()> {
        fs::write(path, payload)
            .map_err(|err| Error::Config(format!("cannot write {}: {err}", path.display())))?;
        eprintln!("wrote {}", path.display());
        Ok(())
    };
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => write(path, &report.to_json()?),
        Some("csv") => write(path, &report.to_csv()),
        _ => {
            let mut json_path = path.as_os_str().to_owned();
            json_path.push(".json");
            let mut csv_path = path.as_os_str().to_owned();
            csv_path.push(".csv");
            write(Path::new(&json_path), &report.to_json()?)?;
            write(Path::new(&csv_path), &report.to_csv())
        }
    }
}

fn qec_table(report: &FidelityReport) -> String {
    let mut text = format!(
        "decomposition={} cycles={} seed={}\n",
        report.decomposition, report.cycles, report.seed
    );
    text.push_str("cycle  basis  sites  thetas                fidelity        leak\n");
    for rec in &report.records {
        let sites = if rec.error_sites.is_empty() {
            "-".to_string()
        } else {
            rec.error_sites
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(";")
        };
        let thetas = if rec.thetas.is_empty() {
            "-".to_string()
        } else {
            rec.thetas
                .iter()
                .map(|t| format!("{t:.6}"))
                .collect::<Vec<_>>()
                .join(";")
        };
        let _ = writeln!(
            text,
            "{:>5}  {:<5}  {sites:<5}  {thetas:<20}  {:.12}  {}",
            rec.cycle,
            rec.basis,
            rec.fidelity,
            u8::from(rec.leakage_flag),
        );
    }
    let _ = writeln!(
        text,
        "final={:.12} mean={:.12} min={:.12}",
        report.final_fidelity, report.mean_fidelity, report.min_fidelity
    );
    text
}

/// Machine-readable view of both budgets and the derived figures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct TimingSummary {
    measurement_free: TimingBudget,
    measurement_based: TimingBudget,
    mf_repetition_mhz: f64,
    mb_repetition_mhz: f64,
    speedup: f64,
}

fn cmd_timing(cli: &Cli, single: f64, two: f64, exclusive: f64, reset: f64) -> Result<bool> {
    let mf = timing::mf_budget(single, two, exclusive, reset)?;
    let mb = timing::mb_budget();
    let summary = TimingSummary {
        mf_repetition_mhz: timing::repetition_rate(&mf)?,
        mb_repetition_mhz: timing::repetition_rate(&mb)?,
        speedup: timing::speedup(&mf, &mb),
        measurement_free: mf,
        measurement_based: mb,
    };

    let payload = match cli.format {
        Format::Table => {
            let mut text =
                timing::render_side_by_side(&summary.measurement_free, &summary.measurement_based);
            let _ = writeln!(
                text,
                "repetition rate: {:.6} MHz vs {:.6} MHz",
                summary.mf_repetition_mhz, summary.mb_repetition_mhz
            );
            let about = if (summary.speedup - 8.0 / 3.0).abs() < 1e-9 {
                " (about three-fold)"
            } else {
                ""
            };
            let _ = writeln!(text, "speedup: {:.6}x{about}", summary.speedup);
            text
        }
        Format::Json => json_block(&summary)?,
        Format::Csv => {
            let mut text = String::from("budget,name,duration_ns,relevant\n");
            for budget in [&summary.measurement_free, &summary.measurement_based] {
                for c in &budget.components {
                    let _ = writeln!(
                        text,
                        "{},{},{:.6},{}",
                        budget.label,
                        c.name,
                        c.duration_ns,
                        u8::from(c.relevant)
                    );
                }
                let _ = writeln!(text, "{},Total,{:.6},1", budget.label, budget.total_ns);
            }
            text
        }
    };
    emit(cli.out.as_deref(), &payload)?;
    eprintln!(
        "totals: {:.0} ns vs {:.0} ns",
        summary.measurement_free.total_ns, summary.measurement_based.total_ns
    );
    Ok(true)
}

fn cmd_dump(cli: &Cli, id: &str) -> Result<bool> {
    let ids = [id.to_string()];
    let entry = resolve_entries(&ids)?.remove(0);
    emit(cli.out.as_deref(), &entry.circuit.to_text())?;
    eprintln!(
        "{}: {} ops, {} two-site",
        entry.id,
        entry.circuit.len(),
        entry.circuit.two_site_count()
    );
    Ok(true)
}

fn cmd_list(cli: &Cli) -> Result<bool> {
    let mut rows = catalog::list_catalog()?;
    for id in catalog::incomplete_ids() {
        let entry = catalog::incomplete(id)?;
        rows.push(catalog::CatalogRow {
            id: entry.id.clone(),
            complete: false,
            two_site_count: entry.circuit.two_site_count(),
            flags: entry.flags,
            declared: entry.declared.label(),
        });
    }

    let payload = match cli.format {
        Format::Table => {
            let mut text =
                String::from("id       complete  two_site  exclusive_cnot  x02  iswap  declared\n");
            for row in &rows {
                let _ = writeln!(
                    text,
                    "{:<7}  {:<8}  {:<8}  {:<14}  {:<3}  {:<5}  {}",
                    row.id,
                    if row.complete { "yes" } else { "no" },
                    row.two_site_count,
                    if row.flags.needs_exclusive_cnot {
                        "yes"
                    } else {
                        "no"
                    },
                    if row.flags.needs_x02_two_photon {
                        "yes"
                    } else {
                        "no"
                    },
                    if row.flags.iswap_based { "yes" } else { "no" },
                    row.declared,
                );
            }
            text
        }
        Format::Json => json_block(&rows)?,
        Format::Csv => {
            let mut text = String::from(
                "id,complete,two_site_count,needs_exclusive_cnot,needs_x02_two_photon,iswap_based,declared\n",
            );
            for row in &rows {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{},{}",
                    row.id,
                    u8::from(row.complete),
                    row.two_site_count,
                    u8::from(row.flags.needs_exclusive_cnot),
                    u8::from(row.flags.needs_x02_two_photon),
                    u8::from(row.flags.iswap_based),
                    row.declared,
                );
            }
            text
        }
    };
    emit(cli.out.as_deref(), &payload)?;
    eprintln!("{} catalog rows", rows.len());
    Ok(true)
}

fn json_block<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}
