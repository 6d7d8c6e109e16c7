//! Property tests: structural invariants that must hold for *every* input,
//! not just the hand-checked oracle points.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wernerq::discord::{
    conditional_entropy, conditional_entropy_sweep, discord_closed, discord_limit_gap,
    discord_numeric, discord_second_derivative, joint_entropy, shannon_entropy_bits, SweepGrid,
};
use wernerq::linalg::ComplexMatrix;
use wernerq::negativity::{
    log_negativity, negativity_second_derivative, separability_threshold,
};
use wernerq::werner::{
    build_werner_dense, pt_spectrum, werner_spectrum, StructuredSpectrum, WernerParams,
};

fn hermitize(raw: ComplexMatrix) -> ComplexMatrix {
    raw.add(&raw.adjoint())
        .unwrap()
        .scale(Complex64::new(0.5, 0.0))
}

fn hermitian(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (2..=max_dim).prop_flat_map(|d| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |entries| {
            let raw = ComplexMatrix::from_fn(d, |i, j| {
                let (re, im) = entries[i * d + j];
                Complex64::new(re, im)
            })
            .unwrap();
            hermitize(raw)
        })
    })
}

/// Random Hermitian matrix on a product space, tagged with the factor dims.
fn bipartite_hermitian() -> impl Strategy<Value = (ComplexMatrix, usize, usize)> {
    ((2usize..=4), (2usize..=3)).prop_flat_map(|(da, db)| {
        let d = da * db;
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(
            move |entries| {
                let raw = ComplexMatrix::from_fn(d, |i, j| {
                    let (re, im) = entries[i * d + j];
                    Complex64::new(re, im)
                })
                .unwrap();
                (hermitize(raw), da, db)
            },
        )
    })
}

fn params_strategy() -> impl Strategy<Value = WernerParams> {
    ((2u32..=8), 0.0f64..=1.0).prop_map(|(n, p)| WernerParams::new(n, p).unwrap())
}

fn seeded_hermitian(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
    .unwrap();
    hermitize(raw)
}

// Dense random matrices are the worst case for Jacobi (full fill-in, no
// exact zeros to skip); make sure convergence holds at a realistic size.
#[test]
fn jacobi_handles_dense_random_input() {
    for (dim, seed) in [(64usize, 11), (128, 12)] {
        let h = seeded_hermitian(dim, seed);
        let decomp = h.eigendecompose().unwrap();
        assert!(decomp.reconstruct().unwrap().max_abs_diff(&h) < 1e-9);
        let gram = decomp.vectors().adjoint().matmul(decomp.vectors()).unwrap();
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(dim).unwrap()) < 1e-10);
        assert!((decomp.spectrum().sum() - h.trace().re).abs() < 1e-9);
    }
}

#[test]
fn measurement_sweep_threads_and_sequential_agree_on_order() {
    // map_collect must preserve ordering regardless of the execution mode;
    // the argmin reported by a sweep is meaningful only if it does.
    let params = WernerParams::new(3, 0.4).unwrap();
    let grid = SweepGrid::new(16, 16).unwrap();
    let a = conditional_entropy_sweep(params, &grid).unwrap();
    let b = conditional_entropy_sweep(params, &grid).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn eigenvalue_sum_matches_trace(h in hermitian(8)) {
        let s = h.eig_hermitian().unwrap();
        prop_assert!((s.sum() - h.trace().re).abs() < 1e-10);
    }

    #[test]
    fn spectrum_is_invariant_under_unitary_conjugation(
        h in hermitian(6),
        g in hermitian(6),
    ) {
        prop_assume!(h.dim() == g.dim());
        let u = g.eigendecompose().unwrap();
        let conj = u.vectors().adjoint().matmul(&h).unwrap().matmul(u.vectors()).unwrap();
        let a = h.eig_hermitian().unwrap();
        let b = conj.eig_hermitian().unwrap();
        prop_assert!(a.multiset_distance(&b) < 1e-9);
    }

    #[test]
    fn partial_transpose_involutive_and_spectrum_real((h, da, db) in bipartite_hermitian()) {
        let pt = h.partial_transpose_b(da, db).unwrap();
        prop_assert_eq!(pt.partial_transpose_b(da, db).unwrap(), h.clone());
        prop_assert_eq!(pt.trace(), h.trace());
        // PT of Hermitian stays Hermitian.
        prop_assert!(pt.hermiticity_deviation() < 1e-14);
    }

    #[test]
    fn partial_traces_preserve_trace_and_hermiticity((h, da, db) in bipartite_hermitian()) {
        for reduced in [h.partial_trace_b(da, db).unwrap(), h.partial_trace_a(da, db).unwrap()] {
            prop_assert!((reduced.trace() - h.trace()).norm() < 1e-12);
            prop_assert!(reduced.hermiticity_deviation() < 1e-13);
        }
    }

    #[test]
    fn structured_spectra_match_dense_eigenvalues(params in params_strategy()) {
        let rho = build_werner_dense(params).unwrap();
        let dense = rho.eig_hermitian().unwrap();
        prop_assert!(werner_spectrum(params).materialize().unwrap()
            .multiset_distance(&dense) < 1e-10);

        let dim_a = rho.dim() / 2;
        let pt_dense = rho.partial_transpose_b(dim_a, 2).unwrap().eig_hermitian().unwrap();
        prop_assert!(pt_spectrum(params).materialize().unwrap()
            .multiset_distance(&pt_dense) < 1e-10);
    }

    #[test]
    fn purity_agrees_between_matrix_and_spectrum(params in params_strategy()) {
        let rho = build_werner_dense(params).unwrap();
        let spectral: f64 = rho.eig_hermitian().unwrap()
            .eigenvalues().iter().map(|v| v * v).sum();
        prop_assert!((rho.frobenius_norm_sq() - spectral).abs() < 1e-10);
    }

    #[test]
    fn pt_normalization_and_negativity_threshold(
        n in 2u32..=64,
        p in 0.0f64..=1.0,
    ) {
        let params = WernerParams::new(n, p).unwrap();
        let s = pt_spectrum(params);
        prop_assert!((s.weight_sum() - 1.0).abs() < 1e-12);
        let threshold = separability_threshold(n).unwrap();
        let min = s.min_value();
        // Strictly negative exactly when entangled; at/below threshold the
        // smallest eigenvalue sits at or above zero (within rounding).
        if p > threshold * (1.0 + 1e-12) + 1e-15 {
            prop_assert!(min < 0.0, "p={p} thr={threshold} min={min}");
        } else {
            prop_assert!(min >= -1e-16, "p={p} thr={threshold} min={min}");
        }
    }

    #[test]
    fn entropy_grouping_is_lossless(params in params_strategy()) {
        // Dense eigenvalues regrouped into a structured spectrum must give
        // the same entropy as the dense sum.
        let rho = build_werner_dense(params).unwrap();
        let dense = rho.eig_hermitian().unwrap();
        let grouped = StructuredSpectrum::from_eigenvalues(&dense, 1e-9).unwrap();
        let direct = wernerq::discord::dense_entropy_bits(&dense).unwrap();
        let via_lines = shannon_entropy_bits(&grouped).unwrap();
        prop_assert!((direct - via_lines).abs() < 1e-10);
    }

    #[test]
    fn discord_breakdown_identity(n in 2u32..=4, p in 0.05f64..=0.95) {
        let params = WernerParams::new(n, p).unwrap();
        let grid = SweepGrid::new(8, 8).unwrap();
        let b = discord_numeric(params, &grid).unwrap();
        prop_assert!((b.discord - (b.s_b - b.s_ab + b.s_a_given_b)).abs() < 1e-14);
        prop_assert!((b.p1 + b.p2 - 1.0).abs() < 1e-12);
        prop_assert!((b.s_b - 1.0).abs() < 1e-10);
        prop_assert!(b.discord >= -1e-10);
    }

    #[test]
    fn closed_discord_bounded_by_mixing(n in 2u32..=1024, p in 0.0f64..=1.0) {
        let params = WernerParams::new(n, p).unwrap();
        let d = discord_closed(params);
        prop_assert!(d.is_finite());
        prop_assert!(d >= -1e-12, "n={n} p={p} d={d}");
        prop_assert!(d <= p + 1e-12, "n={n} p={p} d={d}");
        let gap = discord_limit_gap(params);
        prop_assert!(gap <= 0.0, "gap must approach the line from below, got {gap}");
        prop_assert!((d - (p + gap)).abs() < 1e-15);
    }

    #[test]
    fn closed_discord_matches_entropy_route(n in 2u32..=30, p in 0.0f64..=1.0) {
        let params = WernerParams::new(n, p).unwrap();
        let composed = 1.0 - joint_entropy(params) + conditional_entropy(params);
        prop_assert!((discord_closed(params) - composed).abs() < 1e-9);
    }

    #[test]
    fn conditional_landscape_is_flat(n in 2u32..=4, p in 0.0f64..=1.0) {
        let params = WernerParams::new(n, p).unwrap();
        let sweep = conditional_entropy_sweep(params, &SweepGrid::new(8, 8).unwrap()).unwrap();
        prop_assert!(sweep.spread() < 1e-10, "spread={}", sweep.spread());
        prop_assert!((sweep.min - conditional_entropy(params)).abs() < 1e-9);
    }

    // Strictness in n is testable only while the true increments clear one
    // ulp; past n ≈ 50 the discord increments (~n·x·2⁻ⁿ) drop below f64
    // resolution and consecutive values tie exactly.
    #[test]
    fn both_measures_strictly_increase_with_n(n in 2u32..=40, p in 0.35f64..0.99) {
        let a = WernerParams::new(n, p).unwrap();
        let b = WernerParams::new(n + 1, p).unwrap();
        prop_assert!(
            discord_closed(b) > discord_closed(a),
            "discord not increasing at n={n} p={p}"
        );
        prop_assert!(
            log_negativity(b).value > log_negativity(a).value,
            "negativity not increasing at n={n} p={p}"
        );
    }

    #[test]
    fn discord_convex_negativity_concave(n in 2u32..=20, p in 0.01f64..=0.99) {
        let params = WernerParams::new(n, p).unwrap();
        if let Ok(w) = discord_second_derivative(params) {
            prop_assert!(w.second_derivative_closed > 0.0);
            prop_assert!(w.second_derivative_fd > 0.0);
        }
        let threshold = separability_threshold(n).unwrap();
        if p > threshold {
            prop_assert!(negativity_second_derivative(params).unwrap() < 0.0);
        }
    }

    #[test]
    fn trace_norm_identity_on_entangled_branch(n in 2u32..=10, p in 0.0f64..=1.0) {
        let params = WernerParams::new(n, p).unwrap();
        let rho = build_werner_dense(params).unwrap();
        let pt = rho.partial_transpose_b(rho.dim() / 2, 2).unwrap();
        let norm = pt.trace_norm().unwrap();
        let min = pt_spectrum(params).min_value();
        if min < -1e-12 {
            prop_assert!((norm - (1.0 - 2.0 * min)).abs() < 1e-9);
        } else {
            prop_assert!((norm - 1.0).abs() < 1e-9);
        }
    }
}
