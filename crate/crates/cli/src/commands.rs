//! The four subcommands, written against `io::Write` so tests can run them
//! in-process on byte buffers while the binary points them at stdout or a
//! file.
//!
//! Curve rows fan out through the library's order-preserving dispatcher, so
//! the emitted byte stream is identical with and without the `parallel`
//! feature and across thread counts. Verification runs every check before
//! reporting, one machine-readable line per check, and names the failing
//! invariants in the error it returns.

use std::io::Write;
use std::time::Instant;

use wernerq::discord::conditional_entropy_sweep;
use wernerq::exec::map_collect;
use wernerq::negativity::negativity_second_derivative;
use wernerq::werner::{build_werner_dense, pt_spectrum, werner_spectrum, MAX_DENSE_QUBITS, MAX_QUBITS};
use wernerq::{
    discord_closed, discord_numeric, discord_second_derivative, log_negativity,
    separability_threshold, Spectrum, SweepGrid, WernerParams, FD_STEP,
};

use crate::config::{CurveSample, Mode, SweepConfig};
use crate::error::CliError;
use crate::format::{format_curve_row, BENCH_HEADER, CURVE_HEADER};

/// Eigenvalue multisets from the structured and dense routes must agree to
/// this absolute tolerance.
pub const SPECTRUM_TOL: f64 = 1e-10;
/// Closed-form and dense-pipeline discord must agree to this tolerance.
pub const DISCORD_GAP_TOL: f64 = 1e-6;
/// Max − min of the conditional entropy over a measurement sweep.
pub const FLATNESS_TOL: f64 = 1e-10;
/// Bisected dense sign change vs. the closed-form separability threshold.
pub const THRESHOLD_TOL: f64 = 1e-4;
/// Relative agreement between closed-form and finite-difference curvature.
pub const CURVATURE_REL_TOL: f64 = 1e-4;

/// Mixing values for eigenstructure comparisons: both degenerate endpoints
/// plus generic interior points.
const EDGE_PS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
/// Mixing values for the (more expensive) measurement sweeps.
const SWEEP_PS: [f64; 3] = [0.1, 0.5, 0.9];

/// Discord over the p-grid for each qubit count, one CSV row per (n, p) in
/// ascending order. Analytic columns are always present; `numeric` mode adds
/// the dense-pipeline column and `both` additionally emits the absolute gap
/// between the routes.
pub fn run_discord_curve(cfg: &SweepConfig, out: &mut dyn Write) -> Result<(), CliError> {
    emit_curve(cfg, out)
}

/// Logarithmic negativity over the p-grid for each qubit count, same row
/// schema as the discord command. Only closed forms are involved, so any
/// supported qubit count works; the dense cross-check of the
/// partial-transpose route lives under `verify`, and asking for a numeric
/// mode here fails loudly instead of printing empty columns.
pub fn run_negativity_curve(cfg: &SweepConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if cfg.mode() != Mode::Analytic {
        return Err(CliError::Usage(
            "negativity-curve supports --mode analytic only; \
             dense partial-transpose cross-checks run under `verify`"
                .into(),
        ));
    }
    emit_curve(cfg, out)
}

fn emit_curve(cfg: &SweepConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let p_grid = cfg.p_grid();
    let jobs: Vec<(u32, f64)> = cfg
        .n_list()
        .iter()
        .flat_map(|&n| p_grid.iter().map(move |&p| (n, p)))
        .collect();
    let mode = cfg.mode();
    let grid = cfg.grid();
    let rows: Result<Vec<CurveSample>, CliError> =
        map_collect(jobs, move |(n, p)| curve_sample(n, p, mode, &grid))
            .into_iter()
            .collect();
    let rows = rows?;
    writeln!(out, "{CURVE_HEADER}")?;
    for row in &rows {
        writeln!(out, "{}", format_curve_row(row))?;
    }
    Ok(())
}

fn curve_sample(n: u32, p: f64, mode: Mode, grid: &SweepGrid) -> Result<CurveSample, CliError> {
    let params = WernerParams::new(n, p)?;
    let closed = discord_closed(params);
    let neg = log_negativity(params);
    let (numeric, abs_gap) = match mode {
        Mode::Analytic => (None, None),
        Mode::Numeric => (Some(discord_numeric(params, grid)?.discord), None),
        Mode::Both => {
            let d = discord_numeric(params, grid)?.discord;
            (Some(d), Some((closed - d).abs()))
        }
    };
    Ok(CurveSample {
        n,
        p,
        discord_closed: closed,
        discord_numeric: numeric,
        abs_gap,
        log_negativity: neg.value,
        separable: neg.separable,
    })
}

/// Everything `run_verify` needs; fields are plain so the binary can fill
/// them straight from flags.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest qubit count cross-checked densely (2..=12).
    pub n_max: u32,
    pub theta_steps: usize,
    pub phi_steps: usize,
    /// Fault injection: shift every dense eigenvalue by this much before the
    /// spectrum comparison, to exercise the failure path end to end.
    pub inject_spectrum_error: Option<f64>,
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

/// Cross-checks the closed forms against the dense pipeline, one line per
/// invariant plus a summary line. All checks run even after a failure; the
/// returned error (exit 1) names every failed invariant.
pub fn run_verify(opts: &VerifyOptions, out: &mut dyn Write) -> Result<(), CliError> {
    if opts.n_max < 2 {
        return Err(CliError::Usage(format!(
            "n-max ({}) must be at least 2",
            opts.n_max
        )));
    }
    if opts.n_max > MAX_DENSE_QUBITS {
        return Err(CliError::Capacity(format!(
            "verification materializes 2^n × 2^n matrices; \
             n-max = {} exceeds the dense cap of {MAX_DENSE_QUBITS} qubits",
            opts.n_max
        )));
    }
    let grid = SweepGrid::new(opts.theta_steps, opts.phi_steps)?;
    let checks = [
        check_spectrum_equivalence(opts.n_max, opts.inject_spectrum_error)?,
        check_discord_gap(opts.n_max, &grid)?,
        check_measurement_flatness(opts.n_max, &grid)?,
        check_pt_spectrum_equivalence(opts.n_max)?,
        check_threshold_sign_change(opts.n_max)?,
        check_discord_convexity(opts.n_max)?,
        check_negativity_concavity(opts.n_max)?,
    ];
    for c in &checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {} {}", c.name, c.detail)?;
    }
    let failing: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    if failing.is_empty() {
        writeln!(out, "VERIFY PASS checks={}", checks.len())?;
        Ok(())
    } else {
        writeln!(out, "VERIFY FAIL failing={}", failing.join(","))?;
        Err(CliError::Verification(failing.join(", ")))
    }
}

/// Tracks the worst value of a maximized statistic together with the (n, p)
/// tuple it occurred at, so failure reports point at a concrete case.
struct Worst {
    value: f64,
    n: u32,
    p: f64,
}

impl Worst {
    fn new() -> Self {
        Self { value: f64::NEG_INFINITY, n: 0, p: f64::NAN }
    }

    fn observe(&mut self, value: f64, n: u32, p: f64) {
        if value > self.value {
            *self = Self { value, n, p };
        }
    }
}

fn check_spectrum_equivalence(n_max: u32, inject: Option<f64>) -> Result<Check, CliError> {
    let mut worst = Worst::new();
    for n in 2..=n_max {
        for &p in &EDGE_PS {
            let params = WernerParams::new(n, p)?;
            let structured = werner_spectrum(params).materialize()?;
            let mut dense = build_werner_dense(params)?.eig_hermitian()?;
            if let Some(eps) = inject {
                dense = Spectrum::from_eigenvalues(
                    dense.eigenvalues().iter().map(|v| v + eps).collect(),
                );
            }
            worst.observe(structured.multiset_distance(&dense), n, p);
        }
    }
    Ok(Check {
        name: "spectrum_equivalence",
        pass: worst.value < SPECTRUM_TOL,
        detail: format!(
            "max_multiset_gap={:.3e} tol={SPECTRUM_TOL:.1e} worst_n={} worst_p={}",
            worst.value, worst.n, worst.p
        ),
    })
}

fn check_discord_gap(n_max: u32, grid: &SweepGrid) -> Result<Check, CliError> {
    let mut worst = Worst::new();
    for n in 2..=n_max {
        for &p in &SWEEP_PS {
            let params = WernerParams::new(n, p)?;
            let gap = (discord_closed(params) - discord_numeric(params, grid)?.discord).abs();
            worst.observe(gap, n, p);
        }
    }
    Ok(Check {
        name: "discord_gap",
        pass: worst.value < DISCORD_GAP_TOL,
        detail: format!(
            "max_abs_gap={:.3e} tol={DISCORD_GAP_TOL:.1e} grid={}x{} worst_n={} worst_p={}",
            worst.value,
            grid.theta_steps(),
            grid.phi_steps(),
            worst.n,
            worst.p
        ),
    })
}

fn check_measurement_flatness(n_max: u32, grid: &SweepGrid) -> Result<Check, CliError> {
    let mut worst = Worst::new();
    for n in 2..=n_max.min(4) {
        for &p in &SWEEP_PS {
            let params = WernerParams::new(n, p)?;
            let sweep = conditional_entropy_sweep(params, grid)?;
            worst.observe(sweep.spread(), n, p);
        }
    }
    Ok(Check {
        name: "measurement_flatness",
        pass: worst.value < FLATNESS_TOL,
        detail: format!(
            "max_spread={:.3e} tol={FLATNESS_TOL:.1e} worst_n={} worst_p={}",
            worst.value, worst.n, worst.p
        ),
    })
}

fn check_pt_spectrum_equivalence(n_max: u32) -> Result<Check, CliError> {
    let mut worst = Worst::new();
    for n in 2..=n_max {
        for &p in &EDGE_PS {
            let params = WernerParams::new(n, p)?;
            let structured = pt_spectrum(params).materialize()?;
            let rho = build_werner_dense(params)?;
            let dense = rho.partial_transpose_b(rho.dim() / 2, 2)?.eig_hermitian()?;
            worst.observe(structured.multiset_distance(&dense), n, p);
        }
    }
    Ok(Check {
        name: "pt_spectrum_equivalence",
        pass: worst.value < SPECTRUM_TOL,
        detail: format!(
            "max_multiset_gap={:.3e} tol={SPECTRUM_TOL:.1e} worst_n={} worst_p={}",
            worst.value, worst.n, worst.p
        ),
    })
}

fn min_pt_eigenvalue_dense(n: u32, p: f64) -> Result<f64, CliError> {
    let params = WernerParams::new(n, p)?;
    let rho = build_werner_dense(params)?;
    Ok(rho.partial_transpose_b(rho.dim() / 2, 2)?.eig_hermitian()?.min())
}

fn check_threshold_sign_change(n_max: u32) -> Result<Check, CliError> {
    let mut worst = Worst::new();
    for n in 2..=n_max {
        let threshold = separability_threshold(n)?;
        // The smallest partial-transpose eigenvalue is positive at p = 0 and
        // negative at p = 1; bisect its sign change densely.
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while hi - lo > THRESHOLD_TOL {
            let mid = 0.5 * (lo + hi);
            if min_pt_eigenvalue_dense(n, mid)? >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let crossing = 0.5 * (lo + hi);
        worst.observe((crossing - threshold).abs(), n, crossing);
    }
    Ok(Check {
        name: "threshold_sign_change",
        pass: worst.value <= THRESHOLD_TOL,
        detail: format!(
            "max_dev={:.3e} tol={THRESHOLD_TOL:.1e} worst_n={} crossing={:.6}",
            worst.value, worst.n, worst.p
        ),
    })
}

/// Interior p-grid for curvature checks: 99 points strictly inside (lo, hi).
fn interior_grid(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let span = hi - lo;
    (1..100).map(move |i| lo + span * i as f64 / 100.0)
}

fn check_discord_convexity(n_max: u32) -> Result<Check, CliError> {
    let mut worst_rel = Worst::new();
    let mut min_fd = f64::INFINITY;
    let mut min_closed = f64::INFINITY;
    for n in 2..=n_max {
        for p in interior_grid(0.0, 1.0) {
            let w = discord_second_derivative(WernerParams::new(n, p)?)?;
            min_fd = min_fd.min(w.second_derivative_fd);
            min_closed = min_closed.min(w.second_derivative_closed);
            let rel = (w.second_derivative_fd - w.second_derivative_closed).abs()
                / w.second_derivative_closed;
            worst_rel.observe(rel, n, p);
        }
    }
    Ok(Check {
        name: "discord_convexity",
        pass: min_fd > 0.0 && min_closed > 0.0 && worst_rel.value <= CURVATURE_REL_TOL,
        detail: format!(
            "max_rel={:.3e} tol={CURVATURE_REL_TOL:.1e} min_fd={:.3e} worst_n={} worst_p={}",
            worst_rel.value, min_fd, worst_rel.n, worst_rel.p
        ),
    })
}

fn check_negativity_concavity(n_max: u32) -> Result<Check, CliError> {
    let mut worst_rel = Worst::new();
    let mut max_fd = f64::NEG_INFINITY;
    let mut max_closed = f64::NEG_INFINITY;
    let value_at = |n: u32, p: f64| -> Result<f64, CliError> {
        Ok(log_negativity(WernerParams::new(n, p)?).value)
    };
    for n in 2..=n_max {
        let threshold = separability_threshold(n)?;
        // Stay strictly inside the entangled branch so the FD stencil never
        // straddles the threshold kink.
        for p in interior_grid(threshold, 1.0) {
            let closed = negativity_second_derivative(WernerParams::new(n, p)?)?;
            let h = FD_STEP;
            let fd = (value_at(n, p + h)? - 2.0 * value_at(n, p)? + value_at(n, p - h)?)
                / (h * h);
            max_fd = max_fd.max(fd);
            max_closed = max_closed.max(closed);
            worst_rel.observe((fd - closed).abs() / closed.abs(), n, p);
        }
    }
    Ok(Check {
        name: "negativity_concavity",
        pass: max_fd < 0.0 && max_closed < 0.0 && worst_rel.value <= CURVATURE_REL_TOL,
        detail: format!(
            "max_rel={:.3e} tol={CURVATURE_REL_TOL:.1e} max_fd={:.3e} worst_n={} worst_p={}",
            worst_rel.value, max_fd, worst_rel.n, worst_rel.p
        ),
    })
}

/// Everything `run_bench` needs; fields are plain so the binary can fill
/// them straight from flags.
#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub n_list: Vec<u32>,
    /// Timing repetitions per row; best and mean are reported.
    pub reps: usize,
}

/// Wall-clock comparison of the two routes at p = 0.5, one CSV row per
/// (n, path). The structured row covers the full closed-form bundle; the
/// dense row covers build + eigensolve + partial transpose + trace norm and
/// is marked `skipped` beyond the dense cap instead of failing the run.
/// Field order is fixed; the times themselves naturally vary.
pub fn run_bench(opts: &BenchOptions, out: &mut dyn Write) -> Result<(), CliError> {
    if opts.n_list.is_empty() {
        return Err(CliError::Usage("at least one qubit count is required".into()));
    }
    if opts.reps == 0 {
        return Err(CliError::Usage("reps must be at least 1".into()));
    }
    let mut ns = opts.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    if let Some(&n) = ns.iter().find(|&&n| !(2..=MAX_QUBITS).contains(&n)) {
        return Err(CliError::Usage(format!(
            "qubit count {n} outside the supported range 2..={MAX_QUBITS}"
        )));
    }
    writeln!(out, "{BENCH_HEADER}")?;
    for &n in &ns {
        let params = WernerParams::new(n, 0.5)?;
        let (best, mean) = time_reps(opts.reps, || {
            let spectrum = werner_spectrum(params);
            let d = discord_closed(params);
            let neg = log_negativity(params);
            let pt_min = pt_spectrum(params).min_value();
            std::hint::black_box((spectrum.weight_sum(), d, neg.value, pt_min));
            Ok(())
        })?;
        writeln!(out, "{n},structured,{},{best},{mean},ok", opts.reps)?;
        if n <= MAX_DENSE_QUBITS {
            let (best, mean) = time_reps(opts.reps, || {
                let rho = build_werner_dense(params)?;
                let spectrum = rho.eig_hermitian()?;
                let trace_norm = rho.partial_transpose_b(rho.dim() / 2, 2)?.trace_norm()?;
                std::hint::black_box((spectrum.min(), trace_norm));
                Ok(())
            })?;
            writeln!(out, "{n},dense,{},{best},{mean},ok", opts.reps)?;
        } else {
            writeln!(out, "{n},dense,{},,,skipped", opts.reps)?;
        }
    }
    Ok(())
}

fn time_reps<F>(reps: usize, mut f: F) -> Result<(u128, u128), CliError>
where
    F: FnMut() -> Result<(), CliError>,
{
    let mut best = u128::MAX;
    let mut total = 0u128;
    for _ in 0..reps {
        let start = Instant::now();
        f()?;
        let ns = start.elapsed().as_nanos();
        best = best.min(ns);
        total += ns;
    }
    Ok((best, total / reps as u128))
}
