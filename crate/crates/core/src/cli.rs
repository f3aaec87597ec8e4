//! The `gtn` command line: sweeps, critical temperatures, plot data and a
//! self-verification run.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 I/O error,
//! 3 verification failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{
    self, critical_temperature, grid, sudden_death_scan, sweep_temperature, SweepRecord,
};
use crate::error::Error;
use crate::quantum::{DensityOperator, C64};
use crate::schwarzschild::{
    build_state, closed_form_elements, gte_formula, measures_catalog,
    reduced_state, svetlichny_formula, BruteForce, ReducedStateId, ScenarioParams,
};
use crate::svetlichny::{svetlichny_bruteforce, DEFAULT_RESTARTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Overrides the default brute-force restart count.
pub const RESTARTS_ENV: &str = "GTN_RESTARTS";

#[derive(Debug, Parser)]
#[command(name = "gtn", version, about = "Tripartite nonlocality and entanglement under Hawking radiation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every measure along a temperature grid and write CSV.
    Sweep(CommonArgs),
    /// Critical temperature of the accessible Svetlichny value.
    Critical(CriticalArgs),
    /// Run the oracle and invariant checks.
    Verify(VerifyArgs),
    /// Emit the data behind one of the four standard plots as CSV.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0.5)]
    pub alpha_sq: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of grid points.
    #[arg(long, default_value_t = 300)]
    pub steps: usize,
    /// Geometric instead of linear spacing.
    #[arg(long)]
    pub log_scale: bool,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Add brute-force Svetlichny columns.
    #[arg(long)]
    pub with_bruteforce: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CriticalArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Scan α² over [--a2-min, --a2-max] with --steps points and emit CSV.
    #[arg(long)]
    pub scan: bool,
    #[arg(long, default_value_t = 0.01)]
    pub a2_min: f64,
    #[arg(long, default_value_t = 0.99)]
    pub a2_max: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Replace every check tolerance (testing hook).
    #[arg(long, hide = true)]
    pub tolerance_override: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    /// Plot number: 1 A_BI_CI, 2 A_BI_CII, 3 A_BII_CII, 4 A_BI_BII with B_BI_BII.
    pub figure: u8,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Subcommand-independent settings after defaults and environment are applied.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub alpha_sq: f64,
    pub omega: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
    pub log_scale: bool,
    pub restarts: usize,
    /// Set when the restart count came from [`RESTARTS_ENV`].
    pub restarts_from_env: bool,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub with_bruteforce: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl RunConfig {
    fn resolve(args: &CommonArgs, t_max_default: f64, env_restarts: Option<&str>) -> Result<Self, Failure> {
        let (restarts, restarts_from_env) = match (args.restarts, env_restarts) {
            (Some(r), _) => (r, false),
            (None, Some(v)) => (
                v.trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("{RESTARTS_ENV}={v} is not a count")))?,
                true,
            ),
            (None, None) => (DEFAULT_RESTARTS, false),
        };
        let cfg = RunConfig {
            alpha_sq: args.alpha_sq,
            omega: args.omega,
            t_min: args.t_min.unwrap_or(0.001),
            t_max: args.t_max.unwrap_or(t_max_default),
            steps: args.steps,
            log_scale: args.log_scale,
            restarts,
            restarts_from_env,
            seed: args.seed,
            output: args.output.clone(),
            with_bruteforce: args.with_bruteforce,
        };
        if cfg.steps < 1 {
            return Err(Failure::Usage("--steps must be at least 1".into()));
        }
        if cfg.restarts < 1 {
            return Err(Failure::Usage("restart count must be at least 1".into()));
        }
        if !(cfg.t_min > 0.0) {
            return Err(Failure::Usage("--t-min must be positive".into()));
        }
        ScenarioParams::from_alpha_sq(cfg.alpha_sq, cfg.omega, cfg.t_min)?;
        Ok(cfg)
    }

    fn brute_force(&self) -> Option<BruteForce> {
        self.with_bruteforce.then_some(BruteForce {
            restarts: self.restarts,
            seed: self.seed,
        })
    }

    fn temperature_grid(&self) -> Result<Vec<f64>, Failure> {
        Ok(grid(self.t_min, self.t_max, self.steps, self.log_scale)?)
    }
}

/// Formats with nine significant digits, like C's `%.9g`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s.to_owned()
        }
    };
    if !(-5..9).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        trim(&format!("{:.*}", (8 - exp) as usize, x))
    }
}

fn sweep_header(with_bruteforce: bool) -> Vec<String> {
    let mut cols: Vec<String> = vec!["temperature".into(), "alpha_sq".into(), "omega".into()];
    for id in ReducedStateId::TRIPARTITE {
        cols.push(format!("S_{}", id.tag()));
        cols.push(format!("C_{}", id.tag()));
    }
    if with_bruteforce {
        for id in ReducedStateId::TRIPARTITE {
            cols.push(format!("SBF_{}", id.tag()));
        }
    }
    for id in ReducedStateId::PAIRWISE {
        cols.push(format!("B_{}", id.tag()));
        cols.push(format!("C_{}", id.tag()));
    }
    cols.extend(
        ["linear_residual", "quadratic_residual", "weighted_residual", "weighted_loose_residual"]
            .map(String::from),
    );
    cols
}

fn sweep_row(r: &SweepRecord, with_bruteforce: bool) -> Vec<f64> {
    let mut row = vec![r.temperature, r.alpha_sq, r.omega];
    for t in &r.catalog.tripartite {
        row.push(t.svetlichny);
        row.push(t.gte);
    }
    if with_bruteforce {
        for t in &r.catalog.tripartite {
            row.push(t.svetlichny_bruteforce.unwrap_or(f64::NAN));
        }
    }
    for p in &r.catalog.pairwise {
        row.push(p.bell);
        row.push(p.concurrence);
    }
    let m = &r.monogamy;
    row.extend([
        m.linear.residual(),
        m.quadratic.residual(),
        m.weighted.residual(),
        m.weighted_loose.residual(),
    ]);
    row
}

fn write_row(out: &mut dyn Write, row: &[f64]) -> io::Result<()> {
    let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
    writeln!(out, "{}", cells.join(","))
}

fn write_provenance(out: &mut dyn Write, cfg: &RunConfig) -> io::Result<()> {
    if cfg.restarts_from_env {
        writeln!(out, "# restarts={} ({RESTARTS_ENV})", cfg.restarts)?;
    }
    Ok(())
}

fn emit_sweep(cfg: &RunConfig, records: &[SweepRecord], out: &mut dyn Write) -> io::Result<()> {
    write_provenance(out, cfg)?;
    writeln!(out, "{}", sweep_header(cfg.with_bruteforce).join(","))?;
    for r in records {
        write_row(out, &sweep_row(r, cfg.with_bruteforce))?;
    }
    Ok(())
}

/// Columns behind each plot and the largest temperature shown.
pub fn figure_panels(figure: u8) -> Option<(&'static [&'static str], f64)> {
    match figure {
        1 => Some((&["S_A_BI_CI", "C_A_BI_CI"], 3.0)),
        2 => Some((&["S_A_BI_CII", "C_A_BI_CII"], 10.0)),
        3 => Some((&["S_A_BII_CII", "C_A_BII_CII"], 10.0)),
        4 => Some((&["S_A_BI_BII", "C_A_BI_BII", "B_BI_BII", "C_BI_BII"], 10.0)),
        _ => None,
    }
}

/// α² values in every plot: α = 1/√2 and α = 1/√6.
pub const FIGURE_ALPHA_SQ: [f64; 2] = [0.5, 1.0 / 6.0];

fn figure_value(r: &SweepRecord, column: &str, brute: bool) -> f64 {
    let (kind, tag) = column.split_once('_').expect("column has a tag");
    let id: ReducedStateId = tag.parse().expect("known tag");
    match (kind, id.is_tripartite()) {
        ("S", true) if brute => r.catalog.tripartite(id).svetlichny_bruteforce.unwrap_or(f64::NAN),
        ("S", true) => r.catalog.tripartite(id).svetlichny,
        ("C", true) => r.catalog.tripartite(id).gte,
        ("B", false) => r.catalog.pairwise(id).bell,
        ("C", false) => r.catalog.pairwise(id).concurrence,
        _ => unreachable!("figure column {column}"),
    }
}

fn cmd_reproduce(figure: u8, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let (columns, _) = figure_panels(figure)
        .ok_or_else(|| Failure::Usage(format!("unknown plot {figure}; expected 1 to 4")))?;
    let temps = cfg.temperature_grid()?;
    let mut header = vec!["alpha_sq".to_owned(), "temperature".to_owned()];
    header.extend(columns.iter().map(|c| c.to_string()));
    if cfg.with_bruteforce {
        header.extend(columns.iter().filter(|c| c.starts_with("S_")).map(|c| format!("SBF_{}", &c[2..])));
    }
    write_provenance(out, cfg)?;
    writeln!(out, "{}", header.join(","))?;
    for a2 in FIGURE_ALPHA_SQ {
        let records = sweep_temperature(a2.sqrt(), cfg.omega, &temps, cfg.brute_force())?;
        for r in &records {
            let mut row = vec![a2, r.temperature];
            row.extend(columns.iter().map(|c| figure_value(r, c, false)));
            if cfg.with_bruteforce {
                row.extend(columns.iter().filter(|c| c.starts_with("S_")).map(|c| figure_value(r, c, true)));
            }
            write_row(out, &row)?;
        }
    }
    Ok(())
}

fn cmd_critical(args: &CriticalArgs, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let show = |v: Option<f64>| v.map_or("none".to_owned(), format_number);
    if args.scan {
        let grid = grid(args.a2_min, args.a2_max, cfg.steps, false)?;
        writeln!(out, "alpha_sq,critical_temperature,bisection")?;
        for (a2, tc) in sudden_death_scan(cfg.omega, &grid)? {
            writeln!(
                out,
                "{},{},{}",
                format_number(a2),
                show(tc.map(|t| t.closed_form)),
                show(tc.and_then(|t| t.bisection))
            )?;
        }
        return Ok(());
    }
    match critical_temperature(cfg.alpha_sq.sqrt(), cfg.omega)? {
        Some(tc) => {
            writeln!(out, "critical_temperature={}", format_number(tc.closed_form))?;
            writeln!(out, "bisection={}", show(tc.bisection))?;
        }
        None => writeln!(out, "critical_temperature=none")?,
    }
    Ok(())
}

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

struct Checker {
    override_tol: Option<f64>,
    outcomes: Vec<CheckOutcome>,
}

impl Checker {
    /// Passes when `residual <= tolerance`.
    fn check(&mut self, name: &'static str, residual: f64, tolerance: f64) {
        let tolerance = self.override_tol.unwrap_or(tolerance);
        self.outcomes.push(CheckOutcome {
            name,
            residual,
            tolerance,
            passed: residual <= tolerance,
        });
    }
}

fn max_entry_diff(a: &nalgebra::DMatrix<C64>, b: &nalgebra::DMatrix<C64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// 20×20 grid of (α², T/ω) over [0, 1] × [0.05, 20].
pub fn verification_grid(omega: f64) -> Vec<ScenarioParams> {
    let temps = grid(0.05, 20.0, 20, false).expect("fixed grid");
    let alphas = grid(0.0, 1.0, 20, false).expect("fixed grid");
    alphas
        .iter()
        .flat_map(|&a2| {
            temps
                .iter()
                .map(move |&t| ScenarioParams::from_alpha_sq(a2, omega, t * omega).expect("grid point"))
        })
        .collect()
}

/// Runs every check; the report is deterministic for a fixed configuration.
pub fn run_verification(
    cfg: &RunConfig,
    tolerance_override: Option<f64>,
) -> Result<Vec<CheckOutcome>, Error> {
    use ReducedStateId::*;
    let mut ck = Checker {
        override_tol: tolerance_override,
        outcomes: Vec::new(),
    };
    let omega = cfg.omega;
    let points = verification_grid(omega);

    let mut construction = 0.0f64;
    let mut hermiticity = 0.0f64;
    let mut trace = 0.0f64;
    let mut negativity = 0.0f64;
    let mut composition = 0.0f64;
    let mut bell = 0.0f64;
    let mut concurrence = 0.0f64;
    let mut exchange = 0.0f64;
    let mut bound_excess = 0.0f64;
    let mut linear = 0.0f64;
    let mut quadratic = 0.0f64;
    let mut weighted = 0.0f64;
    let mut ckw = 0.0f64;
    for p in &points {
        let state = build_state(p)?.density();
        for id in ReducedStateId::all() {
            let rho = state.partial_trace(&id.modes())?;
            let closed = closed_form_elements(p, id).map(|x| C64::new(x, 0.0));
            construction = construction.max(max_entry_diff(&rho.permute_basis(&id.closed_form_basis())?, &closed));
            let d = rho.validate();
            hermiticity = hermiticity.max(d.hermiticity_defect);
            trace = trace.max(d.trace_defect);
            negativity = negativity.max(-d.min_eigenvalue);
            let mirror = state.partial_trace(&id.mirrored().modes())?;
            let swapped = swap_bob_charlie(&rho)?;
            exchange = exchange.max(max_entry_diff(swapped.matrix(), mirror.matrix()));
        }
        let two_step = state
            .partial_trace(&modes_without(&["B_II"]))?
            .partial_trace(&ABICI.modes())?;
        composition = composition.max(max_entry_diff(two_step.matrix(), state.partial_trace(&ABICI.modes())?.matrix()));

        let cat = measures_catalog(p, None)?;
        for pw in &cat.pairwise {
            bell = bell.max((pw.bell - pw.bell_matrix).abs());
            concurrence = concurrence.max((pw.concurrence - pw.concurrence_matrix).abs());
            bound_excess = bound_excess
                .max(pw.bell - 2.0 * std::f64::consts::SQRT_2)
                .max(pw.concurrence - 1.0)
                .max(-pw.bell)
                .max(-pw.concurrence);
        }
        for t in &cat.tripartite {
            bound_excess = bound_excess.max(-t.svetlichny).max(t.gte - 1.0).max(-t.gte);
            if ReducedStateId::STANDARD_X.contains(&t.id) {
                bound_excess = bound_excess.max(t.svetlichny - 4.0 * std::f64::consts::SQRT_2);
            }
        }
        let m = analysis::monogamy_from_catalog(&cat, analysis::MONOGAMY_TOL);
        linear = linear.max(m.linear.residual());
        quadratic = quadratic.max(m.quadratic.residual());
        weighted = weighted.max(m.weighted.residual());
        ckw = ckw.max(m.ckw.iter().map(|c| -c.slack()).fold(0.0, f64::max));
    }
    ck.check("state_construction_oracle", construction, 1e-12);
    ck.check("hermiticity", hermiticity, 1e-12);
    ck.check("unit_trace", trace, 1e-12);
    ck.check("positivity", negativity, 1e-10);
    ck.check("partial_trace_composition", composition, 1e-13);
    ck.check("bell_signal_oracle", bell, 1e-12);
    ck.check("concurrence_oracle", concurrence, 1e-12);
    ck.check("measure_bounds", bound_excess.max(0.0), 1e-9);
    ck.check("exchange_symmetry", exchange, 1e-13);
    ck.check("monogamy_linear", linear, 1e-12);
    ck.check("monogamy_quadratic", quadratic, 1e-12);
    ck.check("monogamy_weighted", weighted, 1e-12);
    ck.check("ckw_inequality", ckw.max(0.0), 1e-12);

    // Brute-force optimizer against the X-state closed form.
    let mut gap = 0.0f64;
    let mut overshoot = f64::NEG_INFINITY;
    for &(a2, t) in &[(0.5, 0.4), (0.5, 1.0), (1.0 / 6.0, 2.0), (0.8, 0.7), (0.3, 5.0)] {
        let p = ScenarioParams::from_alpha_sq(a2, omega, t * omega)?;
        for id in ReducedStateId::STANDARD_X {
            let bf = svetlichny_bruteforce(&reduced_state(&p, id)?, cfg.restarts, cfg.seed)?.value;
            let cf = svetlichny_formula(&p, id).expect("tripartite");
            gap = gap.max((bf - cf).abs());
            overshoot = overshoot.max(bf - cf);
        }
    }
    ck.check("svetlichny_bruteforce_gap", gap, 1e-4);
    ck.check("svetlichny_bruteforce_overshoot", overshoot.max(0.0), 1e-6);

    let mut alpha_sym = 0.0f64;
    for &a2 in &[0.05, 0.2, 0.35, 0.5] {
        for &t in &[0.1, 1.0, 10.0] {
            let x = gte_formula(&ScenarioParams::from_alpha_sq(a2, omega, t)?, ABICI).expect("gte");
            let y = gte_formula(&ScenarioParams::from_alpha_sq(1.0 - a2, omega, t)?, ABICI).expect("gte");
            alpha_sym = alpha_sym.max((x - y).abs());
        }
    }
    ck.check("gte_alpha_symmetry", alpha_sym, 1e-12);

    let mut asymptote = 0.0f64;
    for &a2 in &[0.5, 1.0 / 6.0, 0.9] {
        let hot = ScenarioParams::from_alpha_sq(a2, omega, 1e4 * omega)?;
        let limit_bi = a2;
        asymptote = asymptote.max((gte_formula(&hot, ABIBII).expect("gte") - limit_bi).abs());
        // the accessible GTE approaches its limit only as ω/4T
        let hotter = ScenarioParams::from_alpha_sq(a2, omega, 1e6 * omega)?;
        let limit = hotter.alpha * hotter.beta();
        asymptote = asymptote.max((gte_formula(&hotter, ABICI).expect("gte") - limit).abs());
    }
    ck.check("infinite_temperature_limits", asymptote, 1e-6);

    let mut critical = 0.0f64;
    for a2 in grid(0.15, 0.85, 15, false)? {
        if let Some(tc) = critical_temperature(a2.sqrt(), omega)? {
            critical = critical.max(tc.discrepancy().unwrap_or(f64::INFINITY));
        }
    }
    ck.check("critical_temperature_bisection", critical, 1e-6);

    let temps = grid(0.05, 20.0, 200, false)?;
    let mut stalled_steps = 0usize;
    for a2 in [0.5f64, 1.0 / 6.0, 0.8] {
        let recs = sweep_temperature(a2.sqrt(), omega, &temps, None)?;
        for w in recs.windows(2) {
            let (lo, hi) = (&w[0].catalog, &w[1].catalog);
            let inc = |id| hi.tripartite(id).gte - lo.tripartite(id).gte;
            let mut steps = vec![-inc(ABICI)];
            steps.extend([ABICII, ABIICII, ABIBII].map(inc));
            steps.push(hi.pairwise(BIBII).concurrence - lo.pairwise(BIBII).concurrence);
            stalled_steps += steps.iter().filter(|&&d| !(d > 0.0)).count();
        }
    }
    // strict: a step that does not move counts against the check
    ck.check("gte_strict_monotonicity", stalled_steps as f64, 0.0);
    Ok(ck.outcomes)
}

fn modes_without(drop: &[&str]) -> Vec<crate::quantum::Mode> {
    crate::schwarzschild::all_modes()
        .into_iter()
        .filter(|m| !drop.contains(&m.as_str()))
        .collect()
}

/// Relabels B ↔ C and restores the canonical mode order.
pub fn swap_bob_charlie(rho: &DensityOperator) -> Result<DensityOperator, Error> {
    fn swap(s: &str) -> &str {
        match s {
        "B_I" => "C_I",
        "B_II" => "C_II",
        "C_I" => "B_I",
        "C_II" => "B_II",
        other => other,
        }
    }
    let relabeled = DensityOperator::new(
        rho.modes().iter().map(|m| crate::quantum::Mode::from(swap(m.as_str()))).collect(),
        rho.matrix().clone(),
    )?;
    let canonical: Vec<_> = crate::schwarzschild::all_modes()
        .into_iter()
        .filter(|m| relabeled.modes().contains(m))
        .collect();
    relabeled.reorder_modes(&canonical)
}

fn cmd_verify(args: &VerifyArgs, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let outcomes = run_verification(cfg, args.tolerance_override)?;
    writeln!(out, "# restarts={} seed={}", cfg.restarts, cfg.seed)?;
    for o in &outcomes {
        writeln!(
            out,
            "{} {} residual={:e} tolerance={:e}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.residual,
            o.tolerance
        )?;
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    writeln!(out, "{passed}/{} checks passed", outcomes.len())?;
    if passed == outcomes.len() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn open_output<'a>(cfg: &RunConfig, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, Failure> {
    Ok(match &cfg.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(stdout),
    })
}

fn dispatch(cli: &Cli, env_restarts: Option<&str>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Sweep(args) => {
            let cfg = RunConfig::resolve(args, 3.0, env_restarts)?;
            let records = sweep_temperature(cfg.alpha_sq.sqrt(), cfg.omega, &cfg.temperature_grid()?, cfg.brute_force())?;
            let mut out = open_output(&cfg, stdout)?;
            emit_sweep(&cfg, &records, &mut out)?;
            out.flush()?;
        }
        Command::Critical(args) => {
            let cfg = RunConfig::resolve(&args.common, 3.0, env_restarts)?;
            let mut out = open_output(&cfg, stdout)?;
            cmd_critical(args, &cfg, &mut out)?;
            out.flush()?;
        }
        Command::Verify(args) => {
            let cfg = RunConfig::resolve(&args.common, 3.0, env_restarts)?;
            let mut out = open_output(&cfg, stdout)?;
            let result = cmd_verify(args, &cfg, &mut out);
            out.flush()?;
            result?;
        }
        Command::Reproduce(args) => {
            let t_max = figure_panels(args.figure)
                .ok_or_else(|| Failure::Usage(format!("unknown plot {}; expected 1 to 4", args.figure)))?
                .1;
            let cfg = RunConfig::resolve(&args.common, t_max, env_restarts)?;
            let mut out = open_output(&cfg, stdout)?;
            cmd_reproduce(args.figure, &cfg, &mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, env_restarts: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, env_restarts, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n\nRun `gtn --help` for usage.");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_IO
        }
        Err(Failure::Verify) => {
            let _ = writeln!(stderr, "verification failed");
            EXIT_VERIFY
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{chsh_max, chsh_xstate, concurrence_xstate, XStateParams2};
    use crate::schwarzschild::pairwise_x_params;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_number(0.7310585786300049), "0.731058579");
        assert_eq!(format_number(4.0), "4");
        assert_eq!(format_number(1.1345926571065), "1.13459266");
        assert_eq!(format_number(1e-7), "1e-07");
        assert_eq!(format_number(-2.5e-12), "-2.5e-12");
        assert_eq!(format_number(123456789012.0), "1.23456789e+11");
        assert_eq!(format_number(9.9999999999), "10");
        assert_eq!(format_number(0.0001), "0.0001");
        assert_eq!(format_number(-0.0), "0");
    }

    #[test]
    fn header_has_documented_columns() {
        let h = sweep_header(false);
        assert_eq!(&h[..5], &["temperature", "alpha_sq", "omega", "S_A_BI_CI", "C_A_BI_CI"]);
        assert!(h.contains(&"B_BI_BII".to_owned()));
        assert_eq!(h.len(), 3 + 12 + 20 + 4);
        assert_eq!(sweep_header(true).len(), h.len() + 6);
    }

    #[test]
    fn pairwise_closed_form_is_x_state() {
        let p = ScenarioParams::from_alpha_sq(0.5, 1.0, 1.0).unwrap();
        for id in ReducedStateId::PAIRWISE {
            let x: XStateParams2 = pairwise_x_params(&p, id).unwrap();
            let rho = reduced_state(&p, id).unwrap();
            assert!((chsh_xstate(&x) - chsh_max(&rho).unwrap()).abs() < 1e-12);
            assert!(concurrence_xstate(&x) >= 0.0);
        }
    }
}
