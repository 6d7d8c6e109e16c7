//! Logarithmic negativity across the last-qubit bipartition,
//! N = log₂‖ρ^(T_B)‖₁.
//!
//! The partial transpose of ρ_W(n, p) has exactly one eigenvalue that can go
//! negative — (1−p)/2ⁿ − p/2 — so the trace norm collapses to 1 − 2λ_min and
//! the whole quantity to a one-line closed form with threshold
//! p* = 1/(1 + 2^(n−1)): below it the state is separable (PPT) and N = 0,
//! above it
//!
//! ```text
//! N(n, p) = log₂( (1 + p) − (1 − p)/2^(n−1) )
//! ```
//!
//! which reaches exactly 1 at p = 1 for every n and tends to log₂(1 + p) as
//! n → ∞. The dense pipeline (partial transpose, eigensolver, trace norm)
//! reproduces all of this at small n; see the integration tests.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::werner::WernerParams;

/// Log-negativity with its context: the separability threshold for this n,
/// whether the state sits at or below it, and the p-derivative where the
/// state is entangled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityResult {
    /// p* = 1/(1 + 2^(n−1)).
    pub threshold: f64,
    /// log₂‖ρ^(T_B)‖₁, zero in the separable region.
    pub value: f64,
    /// p ≤ p*, i.e. the partial transpose is positive semidefinite.
    pub separable: bool,
    /// dN/dp, defined only strictly above the threshold.
    pub derivative: Option<f64>,
}

/// Mixing parameter below which ρ_W(n, p) is separable: 1/(1 + 2^(n−1)).
pub fn separability_threshold(n: u32) -> Result<f64> {
    // Reuse the parameter validation for the qubit range.
    let params = WernerParams::new(n, 0.0)?;
    Ok(1.0 / (1.0 + ((params.qubits() - 1) as f64).exp2()))
}

/// d/dp of the entangled branch: 1/(ln2 · (p + w)) with
/// w = (2^(n−1) − 1)/(2^(n−1) + 1).
fn derivative_entangled(n: u32, p: f64) -> f64 {
    let b = (-((n - 1) as f64)).exp2();
    let w = (1.0 - b) / (1.0 + b);
    1.0 / (LN_2 * (p + w))
}

/// Full evaluation at (n, p).
pub fn log_negativity(params: WernerParams) -> NegativityResult {
    let n = params.qubits();
    let p = params.mixing();
    let threshold = 1.0 / (1.0 + ((n - 1) as f64).exp2());
    let separable = p <= threshold;
    let value = if separable {
        0.0
    } else {
        // (1 + p) − (1−p)·2^{−(n−1)}: ≥ 1 on this branch, so plain log2 is
        // relatively accurate; no rescaling needed.
        ((1.0 + p) - (1.0 - p) * (-((n - 1) as f64)).exp2()).log2()
    };
    let derivative = (!separable).then(|| derivative_entangled(n, p));
    NegativityResult { threshold, value, separable, derivative }
}

/// Pointwise limit as n → ∞: log₂(1 + p).
pub fn log_negativity_limit(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!(
            "mixing parameter must lie in [0, 1], got {p}"
        )));
    }
    Ok(p.ln_1p() / LN_2)
}

/// dN/dp on the entangled branch (threshold, 1]. Errors in the separable
/// region, where N is identically zero and the one-sided slope at the kink
/// is a different question.
pub fn negativity_derivative(params: WernerParams) -> Result<f64> {
    let n = params.qubits();
    let p = params.mixing();
    let threshold = 1.0 / (1.0 + ((n - 1) as f64).exp2());
    if p <= threshold {
        return Err(Error::Domain(format!(
            "derivative defined for p > {threshold}, got {p}"
        )));
    }
    Ok(derivative_entangled(n, p))
}

/// d²N/dp² on the entangled branch: −1/(ln2 · (p + w)²), strictly negative,
/// i.e. N is concave wherever it is nonzero.
pub fn negativity_second_derivative(params: WernerParams) -> Result<f64> {
    let first = negativity_derivative(params)?;
    Ok(-LN_2 * first * first)
}
