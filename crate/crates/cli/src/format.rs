//! Deterministic CSV serialization.
//!
//! Identical configurations must produce byte-identical output, so every
//! float goes through the one formatter here: twelve significant digits,
//! positional notation down to 1e-4, scientific below that, absent values as
//! empty cells. The formatter is pure f64 → String with no locale or
//! environment dependence.

use crate::config::CurveSample;

pub const CURVE_HEADER: &str =
    "n,p,discord_closed,discord_numeric,abs_gap,log_negativity,separable";
pub const BENCH_HEADER: &str = "n,path,reps,best_ns,mean_ns,status";

/// Twelve significant digits. Zero and magnitudes ≥ 1e-4 print positionally
/// (always with a decimal point); smaller magnitudes print as `d.…e±k`.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000".into();
    }
    let a = v.abs();
    if a >= 1e-4 {
        let decimals = if a >= 1.0 {
            // Digits before the point consume significance.
            let int_digits = a.log10().floor() as usize + 1;
            12usize.saturating_sub(int_digits)
        } else {
            // Leading zeros after the point are not significant digits.
            let zeros = (-a.log10().floor()) as usize - 1;
            12 + zeros
        };
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

/// One curve row in header order; booleans as `true`/`false`.
pub fn format_curve_row(s: &CurveSample) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        s.n,
        format_float(s.p),
        format_float(s.discord_closed),
        opt_cell(s.discord_numeric),
        opt_cell(s.abs_gap),
        format_float(s.log_negativity),
        s.separable,
    )
}
