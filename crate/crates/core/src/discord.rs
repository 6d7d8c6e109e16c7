//! Quantum discord of ρ_W(n, p) under projective measurement of the last
//! qubit, split as usual into total and classical correlations:
//!
//! ```text
//! D = S(ρ_B) − S(ρ_AB) + min over {Π_k} of Σ_k p_k S(ρ_A|k)
//! ```
//!
//! Two routes to the same number. [`discord_closed`] evaluates an exact
//! expression in log-domain form that survives n = 1024. [`discord_numeric`]
//! grinds through the honest pipeline — dense state, projector contraction,
//! eigensolver, minimization over a measurement-angle grid — and exists to
//! check the closed form, not to be fast.
//!
//! A peculiarity of this family worth stating up front: the conditional
//! entropy landscape over the measurement angles (θ, φ) is exactly flat, so
//! the grid minimum equals every grid sample. The sweep still scans the grid
//! and reports the spread so that flatness is re-established numerically on
//! every run rather than assumed.

use std::f64::consts::{FRAC_PI_2, LN_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{ComplexMatrix, Spectrum};
use crate::werner::{
    build_werner_dense, werner_spectrum, Multiplicity, ScaledValue, SpectralLine,
    StructuredSpectrum, WernerParams,
};
use crate::FD_STEP;

/// Default measurement-grid resolution per axis.
pub const DEFAULT_GRID_STEPS: usize = 32;

/// Below this many samples per axis the sweep is flagged as coarse.
const COARSE_GRID_STEPS: usize = 8;

/// Probability weights below this are dropped from entropy sums (0·log 0 = 0).
const WEIGHT_FLOOR: f64 = 1e-300;

/// Eigenvalues in (−NEG_EIG_TOL, 0) count as rounding noise and clamp to
/// zero; anything at or below −NEG_EIG_TOL is a real failure.
const NEG_EIG_TOL: f64 = 1e-9;

/// Bloch angles (θ, φ) of the measured basis on the last qubit:
/// |u⟩ = cos θ|0⟩ + e^{iφ} sin θ|1⟩ and its orthogonal complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    theta: f64,
    phi: f64,
}

impl MeasurementAngles {
    /// Requires θ ∈ [0, π/2] and φ ∈ [0, 2π].
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::Parameter(format!(
                "theta must lie in [0, pi/2], got {theta}"
            )));
        }
        if !phi.is_finite() || !(0.0..=TAU).contains(&phi) {
            return Err(Error::Parameter(format!(
                "phi must lie in [0, 2*pi], got {phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Which of the two orthogonal measurement outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementOutcome {
    First,
    Second,
}

/// Measurement grid: θ sampled inclusively on [0, π/2], φ sampled on
/// [0, 2π) with the endpoint left out since φ = 0 and φ = 2π coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepGrid {
    theta_steps: usize,
    phi_steps: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self { theta_steps: DEFAULT_GRID_STEPS, phi_steps: DEFAULT_GRID_STEPS }
    }
}

impl SweepGrid {
    pub fn new(theta_steps: usize, phi_steps: usize) -> Result<Self> {
        if theta_steps == 0 || phi_steps == 0 {
            return Err(Error::Parameter("grid steps must be positive".into()));
        }
        Ok(Self { theta_steps, phi_steps })
    }

    pub fn theta_steps(&self) -> usize {
        self.theta_steps
    }

    pub fn phi_steps(&self) -> usize {
        self.phi_steps
    }

    /// True when either axis is sampled too thinly to trust a minimum from
    /// the sweep alone. Coarse grids are allowed — the caller decides.
    pub fn is_coarse(&self) -> bool {
        self.theta_steps < COARSE_GRID_STEPS || self.phi_steps < COARSE_GRID_STEPS
    }

    /// All grid points, θ-major, deterministic order.
    pub fn angles(&self) -> Vec<MeasurementAngles> {
        let thetas: Vec<f64> = if self.theta_steps == 1 {
            vec![0.0]
        } else {
            (0..self.theta_steps)
                .map(|i| FRAC_PI_2 * i as f64 / (self.theta_steps - 1) as f64)
                .collect()
        };
        let mut out = Vec::with_capacity(self.theta_steps * self.phi_steps);
        for &theta in &thetas {
            for j in 0..self.phi_steps {
                let phi = TAU * j as f64 / self.phi_steps as f64;
                out.push(MeasurementAngles { theta, phi });
            }
        }
        out
    }
}

/// Every intermediate of one discord evaluation, so callers can audit the
/// pieces instead of trusting the final difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordBreakdown {
    /// Entropy of the measured qubit's reduced state (1 bit for this family).
    pub s_b: f64,
    /// Joint entropy of the full state.
    pub s_ab: f64,
    /// Minimized average post-measurement entropy of the unmeasured block.
    pub s_a_given_b: f64,
    /// s_b − s_ab + s_a_given_b.
    pub discord: f64,
    /// Outcome probabilities at the minimizing grid point.
    pub p1: f64,
    pub p2: f64,
}

/// Statistics of the conditional entropy over a full (θ, φ) sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalSweep {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub variance: f64,
    /// Grid point attaining the minimum (first hit wins on exact ties).
    pub argmin: MeasurementAngles,
    pub p1_at_min: f64,
    pub p2_at_min: f64,
    pub points: usize,
}

impl ConditionalSweep {
    /// max − min: zero (to rounding) for this family's flat landscape.
    pub fn spread(&self) -> f64 {
        self.max - self.min
    }
}

/// Inputs and outputs of the convexity check on p ↦ D(n, p): the closed
/// second derivative 2^(2n−1)/(2ⁿ ln2 · x·y·z) next to a central
/// finite-difference estimate (taken on D − p, whose second difference is
/// identical), plus the raw pieces for inspection. The raw x, y, z,
/// numerator and denominator fields are plain f64 and overflow for n beyond
/// a few hundred; the `second_derivative_closed` field is computed in
/// rescaled form and is finite everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityWitness {
    /// 1 − p.
    pub x: f64,
    /// 1 + (2ⁿ − 1)p.
    pub y: f64,
    /// 1 + (2^(n−1) − 1)p.
    pub z: f64,
    pub second_derivative_closed: f64,
    pub second_derivative_fd: f64,
    /// y·z + (2ⁿ−1)²·x·z − 2(2^(n−1)−1)²·x·y, which collapses to 2^(2n−1),
    /// independent of p.
    pub alpha_numerator: f64,
    /// 2ⁿ·ln2·x·y·z.
    pub gamma_denominator: f64,
}

/// Shannon entropy in bits of a structured spectrum. Each line contributes
/// −count·λ·log₂λ with the count·λ product and the log both taken in scaled
/// form, so nothing degrades up to n = 1024. Negative eigenvalues beyond
/// −1e-9 are errors; closer to zero they clamp away.
pub fn shannon_entropy_bits(spectrum: &StructuredSpectrum) -> Result<f64> {
    let mut acc = 0.0;
    for line in spectrum.lines() {
        let value = line.value.value();
        if value < 0.0 {
            if value <= -NEG_EIG_TOL {
                return Err(Error::NegativeEigenvalue { value });
            }
            continue;
        }
        let weight = line.multiplicity.weight(line.value);
        if weight.abs() < WEIGHT_FLOOR {
            continue;
        }
        acc -= weight * line.value.log2();
    }
    Ok(acc)
}

/// Shannon entropy in bits of a dense eigenvalue list, same clamping rules.
pub fn dense_entropy_bits(spectrum: &Spectrum) -> Result<f64> {
    let mut acc = 0.0;
    for &value in spectrum.eigenvalues() {
        if value < 0.0 {
            if value <= -NEG_EIG_TOL {
                return Err(Error::NegativeEigenvalue { value });
            }
            continue;
        }
        if value < WEIGHT_FLOOR {
            continue;
        }
        acc -= value * value.log2();
    }
    Ok(acc)
}

/// S(ρ_AB) from the structured spectrum. Exact for all supported n.
pub fn joint_entropy(params: WernerParams) -> f64 {
    shannon_entropy_bits(&werner_spectrum(params))
        .expect("family spectrum is nonnegative by construction")
}

/// Spectrum of either normalized post-measurement block. Both outcomes share
/// it and it carries no θ or φ dependence: the background (1−p)/2^(n−1) with
/// multiplicity 2^(n−1) − 1 plus one dominant value p + (1−p)/2^(n−1).
pub fn post_measurement_spectrum(params: WernerParams) -> StructuredSpectrum {
    let m = params.qubits() - 1;
    let p = params.mixing();
    let x = 1.0 - p;
    let lines = vec![
        SpectralLine {
            value: ScaledValue::new(x, -(m as i32)),
            multiplicity: Multiplicity::power_of_two(m, -1),
        },
        SpectralLine {
            value: ScaledValue::new(p + x * (-(m as f64)).exp2(), 0),
            multiplicity: Multiplicity::exact(1),
        },
    ];
    StructuredSpectrum::new(lines, m).expect("multiplicities sum to 2^(n-1) by construction")
}

/// Average conditional entropy Σ_k p_k S(ρ_A|k) from the structured route.
/// With equal outcome probabilities and a shared outcome spectrum this is
/// just the entropy of [`post_measurement_spectrum`].
pub fn conditional_entropy(params: WernerParams) -> f64 {
    shannon_entropy_bits(&post_measurement_spectrum(params))
        .expect("post-measurement spectrum is nonnegative by construction")
}

/// The two basis vectors of the measured qubit.
fn measurement_vectors(angles: MeasurementAngles) -> ([Complex64; 2], [Complex64; 2]) {
    let (sin_t, cos_t) = angles.theta.sin_cos();
    let phase = Complex64::new(0.0, angles.phi).exp();
    let u = [Complex64::new(cos_t, 0.0), phase * sin_t];
    let v = [Complex64::new(sin_t, 0.0), -phase * cos_t];
    (u, v)
}

/// Dense projectors Π_k = I ⊗ |k⟩⟨k| on the full n-qubit space. Only useful
/// for cross-checks at small n; the pipeline itself contracts the 2×2 blocks
/// directly and never materializes these.
pub fn measurement_projectors(
    angles: MeasurementAngles,
    n: u32,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let params = WernerParams::new(n, 0.0)?;
    let dim = params.dense_dim_checked()?;
    let (u, v) = measurement_vectors(angles);
    let identity_a = ComplexMatrix::identity(dim / 2)?;
    let outer = |w: &[Complex64; 2]| {
        ComplexMatrix::from_fn(2, |i, j| w[i] * w[j].conj()).expect("2x2 is under the cap")
    };
    Ok((identity_a.kron(&outer(&u))?, identity_a.kron(&outer(&v))?))
}

/// Contract the measured qubit with `w`: out_ij = ⟨w|ρ^(i,j)|w⟩ over the 2×2
/// blocks of ρ. Equals tr_B(Π ρ Π) for Π = I ⊗ |w⟩⟨w| at a quarter of the
/// arithmetic and no 2ⁿ-dimensional intermediates.
fn contract_measured_qubit(
    rho: &ComplexMatrix,
    dim_a: usize,
    w: &[Complex64; 2],
) -> Result<(f64, ComplexMatrix)> {
    let wc = [w[0].conj(), w[1].conj()];
    let mut unnorm = ComplexMatrix::zeros(dim_a)?;
    for i in 0..dim_a {
        for j in 0..dim_a {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                for l in 0..2 {
                    let elem = rho.get(2 * i + k, 2 * j + l);
                    if elem != Complex64::new(0.0, 0.0) {
                        acc += wc[k] * elem * w[l];
                    }
                }
            }
            unnorm.set(i, j, acc);
        }
    }
    let prob = unnorm.trace().re;
    if prob < 1e-15 {
        return Err(Error::Domain(format!(
            "measurement outcome probability {prob:.3e} vanishes"
        )));
    }
    Ok((prob, unnorm.scale(Complex64::new(1.0 / prob, 0.0))))
}

/// Outcome probability and normalized post-measurement state of the leading
/// n−1 qubits, from the dense pipeline.
pub fn post_measurement_state(
    params: WernerParams,
    angles: MeasurementAngles,
    outcome: MeasurementOutcome,
) -> Result<(f64, ComplexMatrix)> {
    let rho = build_werner_dense(params)?;
    let dim_a = rho.dim() / 2;
    let (u, v) = measurement_vectors(angles);
    let w = match outcome {
        MeasurementOutcome::First => u,
        MeasurementOutcome::Second => v,
    };
    contract_measured_qubit(&rho, dim_a, &w)
}

/// One grid point of the sweep: conditional entropy and outcome split.
struct SweepPoint {
    conditional: f64,
    p1: f64,
    p2: f64,
}

fn sweep_point(
    rho: &ComplexMatrix,
    dim_a: usize,
    angles: MeasurementAngles,
) -> Result<SweepPoint> {
    let (u, v) = measurement_vectors(angles);
    let (p1, state1) = contract_measured_qubit(rho, dim_a, &u)?;
    let (p2, state2) = contract_measured_qubit(rho, dim_a, &v)?;
    let s1 = dense_entropy_bits(&state1.eig_hermitian()?)?;
    let s2 = dense_entropy_bits(&state2.eig_hermitian()?)?;
    Ok(SweepPoint { conditional: p1 * s1 + p2 * s2, p1, p2 })
}

fn sweep_dense(
    rho: &ComplexMatrix,
    grid: &SweepGrid,
) -> Result<ConditionalSweep> {
    let dim_a = rho.dim() / 2;
    let angles = grid.angles();
    let points = exec::map_collect(angles.clone(), |a| sweep_point(rho, dim_a, a));

    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut argmin = angles[0];
    let mut p_at_min = (0.0, 0.0);
    for (point, a) in points.into_iter().zip(angles) {
        let point = point?;
        if point.conditional < min {
            min = point.conditional;
            argmin = a;
            p_at_min = (point.p1, point.p2);
        }
        max = max.max(point.conditional);
        sum += point.conditional;
        sum_sq += point.conditional * point.conditional;
    }
    let count = (grid.theta_steps * grid.phi_steps) as f64;
    let mean = sum / count;
    let variance = (sum_sq / count - mean * mean).max(0.0);
    Ok(ConditionalSweep {
        min,
        max,
        mean,
        variance,
        argmin,
        p1_at_min: p_at_min.0,
        p2_at_min: p_at_min.1,
        points: grid.theta_steps * grid.phi_steps,
    })
}

/// Sweep the conditional entropy over the grid through the dense pipeline.
pub fn conditional_entropy_sweep(
    params: WernerParams,
    grid: &SweepGrid,
) -> Result<ConditionalSweep> {
    let rho = build_werner_dense(params)?;
    sweep_dense(&rho, grid)
}

/// Discord through the dense pipeline: eigensolver entropies and a grid
/// minimization, no closed forms anywhere.
pub fn discord_numeric(params: WernerParams, grid: &SweepGrid) -> Result<DiscordBreakdown> {
    let rho = build_werner_dense(params)?;
    let dim_a = rho.dim() / 2;
    let s_ab = dense_entropy_bits(&rho.eig_hermitian()?)?;
    let rho_b = rho.partial_trace_a(dim_a, 2)?;
    let s_b = dense_entropy_bits(&rho_b.eig_hermitian()?)?;
    let sweep = sweep_dense(&rho, grid)?;
    Ok(DiscordBreakdown {
        s_b,
        s_ab,
        s_a_given_b: sweep.min,
        discord: s_b - s_ab + sweep.min,
        p1: sweep.p1_at_min,
        p2: sweep.p2_at_min,
    })
}

/// D(n, p) − p, evaluated without ever forming the two large quantities.
/// Algebraically, subtracting the n → ∞ line from S(B) − S(AB) + S(A|B) and
/// cancelling the shared leading terms symbolically leaves
///
/// ```text
/// D − p = x·2⁻ⁿ·(log₂x − n + 2) + [yₙ·log₂yₙ − yₙ₋₁·log₂yₙ₋₁]
/// ```
///
/// with x = 1 − p and y_m = p + x·2⁻ᵐ, and the bracket is evaluated through
/// ln(yₙ/yₙ₋₁) = ln_1p(−x·2⁻ⁿ/yₙ₋₁) to keep it relatively accurate as the
/// two y's coalesce. Evaluating the gap in this form matters twice over: the
/// naive three-entropy difference carries absolute rounding of order n·ε,
/// which would swamp the true gap (it decays like n·x·2⁻ⁿ) long before
/// n = 200; and second differences of D equal second differences of this
/// gap exactly, which is what lets the convexity check resolve curvature far
/// below the rounding floor of D itself.
///
/// Always ≤ 0, approaching 0 from below as n grows.
pub fn discord_limit_gap(params: WernerParams) -> f64 {
    let n = params.qubits();
    let p = params.mixing();
    let x = 1.0 - p;
    if x == 0.0 {
        return 0.0;
    }
    let a = (-(n as f64)).exp2();
    let y_n1 = p + x * (-((n - 1) as f64)).exp2();
    let y_n = p + x * a;
    let bracket = y_n * ((-x * a / y_n1).ln_1p() / LN_2) - x * a * y_n1.log2();
    x * a * (x.log2() - n as f64 + 2.0) + bracket
}

/// Exact discord, as the large-n line plus the exact gap:
/// D = p + [`discord_limit_gap`].
pub fn discord_closed(params: WernerParams) -> f64 {
    if params.mixing() == 1.0 {
        return 1.0;
    }
    params.mixing() + discord_limit_gap(params)
}

/// Pointwise limit of D(n, p) as n → ∞: the mixing parameter itself.
pub fn discord_limit(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!(
            "mixing parameter must lie in [0, 1], got {p}"
        )));
    }
    Ok(p)
}

/// Convexity witness at an interior p: closed second derivative, central
/// finite difference with step [`FD_STEP`], and the raw algebraic pieces.
pub fn discord_second_derivative(params: WernerParams) -> Result<ConvexityWitness> {
    let n = params.qubits();
    let p = params.mixing();
    if p < FD_STEP || p > 1.0 - FD_STEP {
        return Err(Error::Domain(format!(
            "second derivative needs p in [{FD_STEP}, {}], got {p}",
            1.0 - FD_STEP
        )));
    }
    let x = 1.0 - p;
    let pow_n = (n as f64).exp2();
    let y = 1.0 + (pow_n - 1.0) * p;
    let z = 1.0 + (0.5 * pow_n - 1.0) * p;
    let alpha_numerator =
        y * z + (pow_n - 1.0).powi(2) * x * z - 2.0 * (0.5 * pow_n - 1.0).powi(2) * x * y;
    let gamma_denominator = pow_n * LN_2 * x * y * z;

    // Same ratio with the powers of two divided out: y = 2ⁿ·yₙ and
    // z = 2^(n−1)·yₙ₋₁ turn 2^(2n−1)/(2ⁿ·ln2·x·y·z) into this, finite at
    // every supported n.
    let y_n = p + x * (-(n as f64)).exp2();
    let y_n1 = p + x * (-((n - 1) as f64)).exp2();
    let second_derivative_closed = (-(n as f64)).exp2() / (LN_2 * x * y_n * y_n1);

    // Central stencil on D − p rather than D: second differences annihilate
    // affine terms, so in exact arithmetic the two stencils agree. The gap,
    // however, is evaluated with full relative accuracy, while D itself is
    // dominated by p and carries ~ε·p of absolute noise — fatal when the
    // true second difference is D″·h² ~ 1e-13.
    let gap = |p: f64| discord_limit_gap(WernerParams::new(n, p).expect("interior p"));
    let second_derivative_fd =
        (gap(p + FD_STEP) - 2.0 * gap(p) + gap(p - FD_STEP)) / (FD_STEP * FD_STEP);

    Ok(ConvexityWitness {
        x,
        y,
        z,
        second_derivative_closed,
        second_derivative_fd,
        alpha_numerator,
        gamma_denominator,
    })
}
