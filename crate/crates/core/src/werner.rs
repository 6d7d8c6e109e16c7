//! The generalized n-qubit Werner family: a GHZ projector mixed with white
//! noise,
//!
//! ```text
//! ρ_W(n, p) = p·|GHZ_n⟩⟨GHZ_n| + (1 − p)·I/2ⁿ
//! ```
//!
//! Two representations coexist. The dense one materializes the full 2ⁿ×2ⁿ
//! matrix (so n ≤ 12) and feeds the generic [`crate::linalg`] machinery. The
//! structured one stores the handful of distinct eigenvalues with symbolic
//! multiplicities and power-of-two scaling, which stays exact in the
//! log-domain up to n = 1024 where the raw eigenvalues underflow and the
//! multiplicities overflow every integer type.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Spectrum, DENSE_DIM_CAP};

/// Largest supported qubit count for the structured representation.
pub const MAX_QUBITS: u32 = 1024;

/// Largest qubit count whose density matrix fits under the dense cap
/// (2¹² = [`DENSE_DIM_CAP`]).
pub const MAX_DENSE_QUBITS: u32 = 12;

/// Slack accepted (and clamped away) on the mixing parameter's boundaries.
const MIXING_SLACK: f64 = 1e-12;

/// Validated (n, p) pair for the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParams {
    n: u32,
    p: f64,
}

impl WernerParams {
    /// Requires 2 ≤ n ≤ [`MAX_QUBITS`] and p ∈ [0, 1]. Values of p within
    /// 1e-12 outside the unit interval are clamped onto it; anything further
    /// out is rejected.
    pub fn new(n: u32, p: f64) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n) {
            return Err(Error::Parameter(format!(
                "qubit count must lie in [2, {MAX_QUBITS}], got {n}"
            )));
        }
        if !p.is_finite() || p < -MIXING_SLACK || p > 1.0 + MIXING_SLACK {
            return Err(Error::Parameter(format!(
                "mixing parameter must lie in [0, 1], got {p}"
            )));
        }
        Ok(Self { n, p: p.clamp(0.0, 1.0) })
    }

    pub fn qubits(&self) -> u32 {
        self.n
    }

    pub fn mixing(&self) -> f64 {
        self.p
    }

    /// Hilbert space dimension 2ⁿ when it fits under the dense cap.
    pub fn dense_dim(&self) -> Option<usize> {
        (self.n <= MAX_DENSE_QUBITS).then(|| 1usize << self.n)
    }

    pub(crate) fn dense_dim_checked(&self) -> Result<usize> {
        self.dense_dim().ok_or(Error::Capacity {
            dim: 1usize.checked_shl(self.n).unwrap_or(usize::MAX),
            cap: DENSE_DIM_CAP,
        })
    }
}

/// A nonnegative-exponent-free scalar m·2^e, kept factored so that log₂ and
/// products of powers of two stay exact far past f64 range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub mantissa: f64,
    pub exp2: i32,
}

impl ScaledValue {
    pub fn new(mantissa: f64, exp2: i32) -> Self {
        Self { mantissa, exp2 }
    }

    /// Collapse to a plain f64 (may underflow to 0 for very negative exp2).
    pub fn value(&self) -> f64 {
        self.mantissa * (self.exp2 as f64).exp2()
    }

    /// log₂(m·2^e) = log₂ m + e, valid for mantissa > 0.
    pub fn log2(&self) -> f64 {
        self.mantissa.log2() + self.exp2 as f64
    }
}

/// Eigenvalue multiplicity 2^pow2 + offset. The power-of-two part is symbolic
/// so counts like 2¹⁰²⁴ − 1 never need to be materialized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multiplicity {
    pow2: Option<u32>,
    offset: i64,
}

impl Multiplicity {
    /// Plain integer count.
    pub fn exact(count: u64) -> Self {
        Self { pow2: None, offset: count as i64 }
    }

    /// Count of the form 2^k + offset (offset may be negative).
    pub fn power_of_two(k: u32, offset: i64) -> Self {
        Self { pow2: Some(k), offset }
    }

    pub fn pow2(&self) -> Option<u32> {
        self.pow2
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Count as f64; infinite once 2^k leaves f64 range (k ≥ 1024).
    pub fn count_f64(&self) -> f64 {
        match self.pow2 {
            Some(k) => (k as f64).exp2() + self.offset as f64,
            None => self.offset as f64,
        }
    }

    /// Count as usize, when small enough to enumerate.
    pub fn try_count_usize(&self) -> Option<usize> {
        let count = match self.pow2 {
            Some(k) if k < 63 => (1i64 << k) + self.offset,
            Some(_) => return None,
            None => self.offset,
        };
        usize::try_from(count).ok()
    }

    /// count·(m·2^e), expanded as m·2^(k+e) + offset·m·2^e so the powers of
    /// two cancel before anything is rounded. This is what keeps weights like
    /// (2ⁿ−1)·x/2ⁿ = x·(1 − 2⁻ⁿ) accurate at n = 1024.
    pub fn weight(&self, value: ScaledValue) -> f64 {
        let m = value.mantissa;
        let e = value.exp2 as f64;
        let tail = self.offset as f64 * m * e.exp2();
        match self.pow2 {
            Some(k) => m * (k as f64 + e).exp2() + tail,
            None => tail,
        }
    }
}

/// One eigenvalue with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub value: ScaledValue,
    pub multiplicity: Multiplicity,
}

/// A complete Hermitian spectrum in compressed form: a few distinct
/// eigenvalues whose multiplicities sum to the full dimension 2^dim_log2.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredSpectrum {
    lines: Vec<SpectralLine>,
    dim_log2: u32,
}

impl StructuredSpectrum {
    /// Validates that the multiplicities sum to exactly 2^dim_log2. The
    /// power-of-two parts are merged symbolically (binary carry), so the
    /// check is exact even where the counts dwarf u128.
    pub fn new(lines: Vec<SpectralLine>, dim_log2: u32) -> Result<Self> {
        let mut offset_sum: i64 = 0;
        let mut exps: Vec<u32> = Vec::new();
        for line in &lines {
            offset_sum = offset_sum
                .checked_add(line.multiplicity.offset())
                .ok_or_else(|| Error::Parameter("multiplicity offsets overflow".into()))?;
            if let Some(k) = line.multiplicity.pow2() {
                exps.push(k);
            }
        }
        // Fold a positive leftover offset into binary exponents, then carry.
        if offset_sum < 0 {
            return Err(Error::Parameter(
                "multiplicities must sum to a power of two".into(),
            ));
        }
        let mut bits = offset_sum as u64;
        let mut bit = 0u32;
        while bits != 0 {
            if bits & 1 == 1 {
                exps.push(bit);
            }
            bits >>= 1;
            bit += 1;
        }
        loop {
            exps.sort_unstable();
            let mut merged = Vec::with_capacity(exps.len());
            let mut carried = false;
            let mut i = 0;
            while i < exps.len() {
                if i + 1 < exps.len() && exps[i] == exps[i + 1] {
                    merged.push(exps[i] + 1);
                    carried = true;
                    i += 2;
                } else {
                    merged.push(exps[i]);
                    i += 1;
                }
            }
            exps = merged;
            if !carried {
                break;
            }
        }
        if exps != [dim_log2] {
            return Err(Error::Parameter(format!(
                "multiplicities must sum to 2^{dim_log2}"
            )));
        }
        Ok(Self { lines, dim_log2 })
    }

    /// Group a dense spectrum (length 2^k) into lines, merging eigenvalues
    /// that agree within `tol`.
    pub fn from_eigenvalues(spectrum: &Spectrum, tol: f64) -> Result<Self> {
        let len = spectrum.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Dimension(format!(
                "spectrum length {len} is not a power of two"
            )));
        }
        let dim_log2 = len.trailing_zeros();
        let mut lines: Vec<SpectralLine> = Vec::new();
        for &v in spectrum.eigenvalues() {
            match lines.last_mut() {
                Some(line) if (line.value.mantissa - v).abs() <= tol => {
                    line.multiplicity =
                        Multiplicity::exact(line.multiplicity.try_count_usize().unwrap() as u64 + 1);
                }
                _ => lines.push(SpectralLine {
                    value: ScaledValue::new(v, 0),
                    multiplicity: Multiplicity::exact(1),
                }),
            }
        }
        Self::new(lines, dim_log2)
    }

    pub fn lines(&self) -> &[SpectralLine] {
        &self.lines
    }

    /// log₂ of the Hilbert space dimension this spectrum spans.
    pub fn dim_log2(&self) -> u32 {
        self.dim_log2
    }

    /// Σ count·value across lines, in the cancellation-friendly scaled form.
    /// Equals 1 for any density matrix spectrum (and for its partial
    /// transpose, which is trace-preserving).
    pub fn weight_sum(&self) -> f64 {
        self.lines
            .iter()
            .map(|l| l.multiplicity.weight(l.value))
            .sum()
    }

    /// Smallest eigenvalue as a plain f64.
    pub fn min_value(&self) -> f64 {
        self.lines
            .iter()
            .map(|l| l.value.value())
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest eigenvalue as a plain f64.
    pub fn max_value(&self) -> f64 {
        self.lines
            .iter()
            .map(|l| l.value.value())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Expand into a plain sorted [`Spectrum`]. Only possible while the total
    /// dimension stays under the dense cap.
    pub fn materialize(&self) -> Result<Spectrum> {
        if self.dim_log2 > MAX_DENSE_QUBITS {
            return Err(Error::Capacity {
                dim: 1usize.checked_shl(self.dim_log2).unwrap_or(usize::MAX),
                cap: DENSE_DIM_CAP,
            });
        }
        let mut values = Vec::with_capacity(1 << self.dim_log2);
        for line in &self.lines {
            let count = line.multiplicity.try_count_usize().ok_or_else(|| {
                Error::Parameter("multiplicity too large to materialize".into())
            })?;
            values.extend(std::iter::repeat(line.value.value()).take(count));
        }
        Ok(Spectrum::from_eigenvalues(values))
    }
}

/// Dense GHZ projector |GHZ_n⟩⟨GHZ_n|: ½ at the four corners of the matrix,
/// zero elsewhere.
pub fn build_ghz(n: u32) -> Result<ComplexMatrix> {
    let params = WernerParams::new(n, 0.0)?;
    let dim = params.dense_dim_checked()?;
    let mut m = ComplexMatrix::zeros(dim)?;
    let half = Complex64::new(0.5, 0.0);
    m.set(0, 0, half);
    m.set(0, dim - 1, half);
    m.set(dim - 1, 0, half);
    m.set(dim - 1, dim - 1, half);
    Ok(m)
}

/// Dense ρ_W(n, p). Nonzero entries: the uniform diagonal (1−p)/2ⁿ, a p/2
/// boost on the two corner diagonal entries, and p/2 on the two corner
/// off-diagonal entries.
pub fn build_werner_dense(params: WernerParams) -> Result<ComplexMatrix> {
    let dim = params.dense_dim_checked()?;
    let p = params.mixing();
    let background = (1.0 - p) * (-(params.qubits() as f64)).exp2();
    let corner = Complex64::new(0.5 * p, 0.0);
    let mut m = ComplexMatrix::zeros(dim)?;
    for i in 0..dim {
        m.set(i, i, Complex64::new(background, 0.0));
    }
    m.set(0, 0, m.get(0, 0) + corner);
    m.set(dim - 1, dim - 1, m.get(dim - 1, dim - 1) + corner);
    m.set(0, dim - 1, corner);
    m.set(dim - 1, 0, corner);
    Ok(m)
}

/// Spectrum of ρ_W(n, p) in structured form: (1−p)/2ⁿ with multiplicity
/// 2ⁿ − 1, and the GHZ-dominant value p + (1−p)/2ⁿ once.
pub fn werner_spectrum(params: WernerParams) -> StructuredSpectrum {
    let n = params.qubits();
    let p = params.mixing();
    let x = 1.0 - p;
    let lines = vec![
        SpectralLine {
            value: ScaledValue::new(x, -(n as i32)),
            multiplicity: Multiplicity::power_of_two(n, -1),
        },
        SpectralLine {
            value: ScaledValue::new(p + x * (-(n as f64)).exp2(), 0),
            multiplicity: Multiplicity::exact(1),
        },
    ];
    StructuredSpectrum::new(lines, n).expect("multiplicities sum to 2^n by construction")
}

/// Reduced state of the last qubit: exactly I/2 for every (n, p), since both
/// the GHZ projector and the white-noise term trace down to it.
pub fn reduced_state_b(_params: WernerParams) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2).expect("2x2 is always under the cap");
    let half = Complex64::new(0.5, 0.0);
    m.set(0, 0, half);
    m.set(1, 1, half);
    m
}

/// Spectrum of the partial transpose over the last qubit, in structured
/// form: (1−p)/2ⁿ − p/2 once, (1−p)/2ⁿ + p/2 three times, and the unshifted
/// background (1−p)/2ⁿ with multiplicity 2ⁿ − 4. The first line is the only
/// one that can go negative; it crosses zero at p = 1/(1 + 2^(n−1)).
pub fn pt_spectrum(params: WernerParams) -> StructuredSpectrum {
    let n = params.qubits();
    let p = params.mixing();
    let x = 1.0 - p;
    // Shifted corner values carried as m·2⁻¹ so the background x·2⁻ⁿ part
    // stays representable next to p at any n.
    let background_scaled = x * (-((n - 1) as f64)).exp2();
    let lines = vec![
        SpectralLine {
            value: ScaledValue::new(background_scaled - p, -1),
            multiplicity: Multiplicity::exact(1),
        },
        SpectralLine {
            value: ScaledValue::new(background_scaled + p, -1),
            multiplicity: Multiplicity::exact(3),
        },
        SpectralLine {
            value: ScaledValue::new(x, -(n as i32)),
            multiplicity: Multiplicity::power_of_two(n, -4),
        },
    ];
    StructuredSpectrum::new(lines, n).expect("multiplicities sum to 2^n by construction")
}
