//! Validated run configuration for the curve commands.

use wernerq::werner::{MAX_DENSE_QUBITS, MAX_QUBITS};
use wernerq::SweepGrid;

use crate::error::CliError;

/// Which route(s) fill the discord columns of a curve row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Closed forms only; any supported qubit count.
    Analytic,
    /// Closed form plus the dense pipeline; qubit counts must fit densely.
    Numeric,
    /// Both routes plus their absolute gap.
    Both,
}

/// A validated curve request. Construction enforces every invariant, so the
/// run functions never re-check: qubit counts in range (sorted, deduplicated),
/// a proper sub-interval of [0, 1] with at least two grid points, and dense
/// capacity whenever a numeric route is requested.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    n_list: Vec<u32>,
    p_min: f64,
    p_max: f64,
    steps: usize,
    mode: Mode,
    grid: SweepGrid,
}

impl SweepConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        mut n_list: Vec<u32>,
        p_min: f64,
        p_max: f64,
        steps: usize,
        mode: Mode,
        theta_steps: usize,
        phi_steps: usize,
    ) -> Result<Self, CliError> {
        if n_list.is_empty() {
            return Err(CliError::Usage("at least one qubit count is required".into()));
        }
        n_list.sort_unstable();
        n_list.dedup();
        for &n in &n_list {
            if !(2..=MAX_QUBITS).contains(&n) {
                return Err(CliError::Usage(format!(
                    "qubit count {n} outside the supported range 2..={MAX_QUBITS}"
                )));
            }
        }
        if !p_min.is_finite()
            || !p_max.is_finite()
            || !(0.0..=1.0).contains(&p_min)
            || !(0.0..=1.0).contains(&p_max)
        {
            return Err(CliError::Usage(format!(
                "p-range [{p_min}, {p_max}] must lie within [0, 1]"
            )));
        }
        if p_min >= p_max {
            return Err(CliError::Usage(format!(
                "p-min ({p_min}) must be strictly below p-max ({p_max})"
            )));
        }
        if steps < 2 {
            return Err(CliError::Usage(format!("steps ({steps}) must be at least 2")));
        }
        if mode != Mode::Analytic {
            if let Some(&n) = n_list.iter().find(|&&n| n > MAX_DENSE_QUBITS) {
                return Err(CliError::Capacity(format!(
                    "numeric mode materializes 2^{n} × 2^{n} matrices; \
                     n = {n} exceeds the dense cap of {MAX_DENSE_QUBITS} qubits"
                )));
            }
        }
        let grid = SweepGrid::new(theta_steps, phi_steps)?;
        Ok(Self { n_list, p_min, p_max, steps, mode, grid })
    }

    pub fn n_list(&self) -> &[u32] {
        &self.n_list
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn grid(&self) -> SweepGrid {
        self.grid
    }

    /// Uniform p-grid with both endpoints included exactly, so closed-form
    /// anchor values at p = 0 and p = 1 come out bit-exact in the output.
    pub fn p_grid(&self) -> Vec<f64> {
        let span = self.p_max - self.p_min;
        (0..self.steps)
            .map(|i| {
                if i == self.steps - 1 {
                    self.p_max
                } else {
                    self.p_min + span * i as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }
}

/// One output row. Optional fields serialize as empty CSV cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub n: u32,
    pub p: f64,
    pub discord_closed: f64,
    pub discord_numeric: Option<f64>,
    pub abs_gap: Option<f64>,
    pub log_negativity: f64,
    pub separable: bool,
}
