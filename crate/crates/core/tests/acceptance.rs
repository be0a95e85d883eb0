//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so every line is printed; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use whichway::coherence::{
    k_from_v, qubit_coherence_state, source_curve, source_schmidt, source_visibility, visibility_from_intensity,
    CoherenceModel,
};
use whichway::interference::{
    joint_state_momentum, marginal_momentum_density, DetectorParams, JointGrids, Representation, SlitParams,
};
use whichway::numerics::{eigh, fourier_to_coordinate, fourier_to_momentum, make_grid, svd, Grid1D, SampledWave};
use whichway::schmidt::{analytic_two_slit_schmidt, numerical_schmidt, reconstruct_marginal, DEFAULT_TRUNCATION};
use whichway::tomography::{
    analyze, check_adequacy, interference_protocol, real_data, reconstruct, scan_completions, Completeness,
    ProtocolMatrix, ReconstructOptions, DEFAULT_RANK_THRESHOLD,
};
use whichway::tunneling::{
    build_two_qubit, derive_well, fit_potential, grid_eigensolve, ground_state_entanglement, splitting_to_frequency,
    two_level_energies, DoubleWell, Isotope, ND3, NH3, NH3_SPLITTING, NT3,
};
use whichway::{Complex64, ComplexMatrix};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(value: f64, target: f64, tol: f64, name: &str) -> Result<(), String> {
    check((value - target).abs() <= tol, format!("{name} = {value:.6} not within {tol} of {target}"))
}

fn fig_params(m: usize) -> (SlitParams, DetectorParams) {
    (SlitParams::new(5.0, 0.5, m).unwrap(), DetectorParams::new(0.5, 0.5).unwrap())
}

fn criterion_1() -> Outcome {
    let (s, d) = fig_params(2);
    let start = Instant::now();
    let grids = JointGrids::momentum(&s, &d, 1024).map_err(|e| e.to_string())?;
    let state = joint_state_momentum(&s, &d, &grids).map_err(|e| e.to_string())?;
    let num = numerical_schmidt(&state, DEFAULT_TRUNCATION).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let an = analytic_two_slit_schmidt(&s, &d, &grids).map_err(|e| e.to_string())?;
    for (label, w, k, sv) in [
        ("analytic", an.weights().to_vec(), an.schmidt_number(), an.entropy()),
        ("numerical", num.weights().to_vec(), num.schmidt_number(), num.entropy()),
    ] {
        check(w.len() == 2, format!("{label}: {} modes", w.len()))?;
        within(w[0], 0.8033, 5e-4, &format!("{label} λ0"))?;
        within(w[1], 0.1967, 5e-4, &format!("{label} λ1"))?;
        within(k, 1.4621, 5e-4, &format!("{label} K"))?;
        within(sv, 0.7153, 5e-4, &format!("{label} S"))?;
    }
    check(elapsed < 1.0, format!("numerical path took {elapsed:.3} s"))?;
    Ok(format!(
        "λ = ({:.4}, {:.4}), K = {:.4}, S = {:.4}, {:.3} s",
        num.weights()[0],
        num.weights()[1],
        num.schmidt_number(),
        num.entropy(),
        elapsed
    ))
}

fn criterion_2() -> Outcome {
    let (s, d) = fig_params(5);
    let start = Instant::now();
    let grids = JointGrids::momentum(&s, &d, 1024).map_err(|e| e.to_string())?;
    let state = joint_state_momentum(&s, &d, &grids).map_err(|e| e.to_string())?;
    let dec = numerical_schmidt(&state, DEFAULT_TRUNCATION).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let expect = [0.4434, 0.3063, 0.1640, 0.0666, 0.0197];
    check(dec.len() == 5, format!("{} modes", dec.len()))?;
    for (k, (w, e)) in dec.weights().iter().zip(expect).enumerate() {
        within(*w, e, 1e-3, &format!("λ{k}"))?;
    }
    within(dec.schmidt_number(), 3.1043, 2e-3, "K")?;
    within(dec.entropy(), 1.8429, 2e-3, "S")?;
    check(elapsed < 5.0, format!("1024x1024 decomposition took {elapsed:.3} s"))?;
    Ok(format!(
        "λ = {:.4?}, K = {:.4}, S = {:.4}, {:.3} s",
        dec.weights(),
        dec.schmidt_number(),
        dec.entropy(),
        elapsed
    ))
}

fn criterion_3() -> Outcome {
    let slits = SlitParams::two_slit(5.0, 0.5).unwrap();
    let grid = make_grid(0.0, 10.0, 1024).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for i in 0..=8 {
        let phi = i as f64 * PI / 16.0;
        let model = CoherenceModel::new(phi, slits).map_err(|e| e.to_string())?;
        let state = qubit_coherence_state(&model, grid, Representation::Momentum).map_err(|e| e.to_string())?;
        let k = numerical_schmidt(&state, DEFAULT_TRUNCATION).map_err(|e| e.to_string())?.schmidt_number();
        let v = visibility_from_intensity(&state.particle_density(), &grid, &slits).map_err(|e| e.to_string())?;
        let coupled = k_from_v(v).map_err(|e| e.to_string())?;
        worst = worst.max((k - coupled).abs());
        check((k - coupled).abs() <= 1e-4, format!("φ = {phi:.4}: K = {k:.8}, 2/(1+V²) = {coupled:.8}"))?;
        if i == 0 || i == 8 {
            within(v, 1.0, 1e-6, "endpoint V")?;
            within(k, 1.0, 1e-6, "endpoint K")?;
        }
        if i == 4 {
            within(v, 0.0, 1e-6, "V at π/4")?;
            within(k, 2.0, 1e-6, "K at π/4")?;
        }
    }
    Ok(format!("max |K - 2/(1+V²)| = {worst:.2e} over 9 phases"))
}

fn criterion_4() -> Outcome {
    check(source_visibility(0.25) == 0.0 || source_visibility(0.25) < 1e-15, "V(0.25) != 0")?;
    check(source_schmidt(0.25) == 2.0 || (source_schmidt(0.25) - 2.0).abs() < 1e-15, "K(0.25) != 2")?;
    check(source_visibility(0.0) == 1.0 && source_schmidt(0.0) == 1.0, "y = 0 values")?;
    let ys: Vec<f64> = (0..=200).map(|i| i as f64 * 0.5 / 200.0).collect();
    let curve = source_curve(&ys);
    check(curve.len() == 201, "curve length")?;
    let mut last = 1.0;
    for &(y, _, k) in curve.iter().filter(|(y, _, _)| *y <= 0.25) {
        check(k >= last, format!("K decreases at y = {y}"))?;
        last = k;
    }
    check(curve.iter().all(|(_, _, k)| (1.0..=2.0).contains(k)), "K outside [1, 2]")?;
    Ok(format!("201-point curve on [0, 0.5], K monotone on [0, 0.25]"))
}

fn criterion_5() -> Outcome {
    let a = Isotope::equilibrium_offset();
    within(a, 0.699, 1e-3, "a")?;
    let fit = fit_potential(0.699, NH3_SPLITTING, NH3.mass).map_err(|e| e.to_string())?;
    within(fit.alpha / 69.29, 1.0, 5e-3, "α/69.29")?;
    within(fit.beta / 141.73, 1.0, 5e-3, "β/141.73")?;
    let mut ghz = Vec::new();
    let mut overlaps = Vec::new();
    for iso in [NH3, ND3, NT3] {
        let well = DoubleWell::new(fit.alpha, fit.beta, iso.mass).map_err(|e| e.to_string())?;
        let d = derive_well(&well);
        let e = two_level_energies(&d, &well).map_err(|e| e.to_string())?;
        ghz.push(splitting_to_frequency(e.delta_e));
        overlaps.push((d.overlap, e.delta_e));
    }
    within(ghz[0] / 24.0, 1.0, 0.01, "NH3 GHz/24")?;
    within(overlaps[1].1 / 0.000416, 1.0, 0.02, "ND3 ΔE/0.000416")?;
    within(ghz[2] / 0.28, 1.0, 0.05, "NT3 GHz/0.28")?;
    within(overlaps[0].0 / 1.18e-4, 1.0, 0.02, "NH3 overlap/1.18e-4")?;
    within(overlaps[1].0 / 7.5e-6, 1.0, 0.02, "ND3 overlap/7.5e-6")?;
    Ok(format!(
        "α = {:.3}, β = {:.3}; NH3 {:.3} GHz, ND3 {:.3} GHz (measured {}), NT3 {:.3} GHz (measured {})",
        fit.alpha, fit.beta, ghz[0], ghz[1], ND3.measured_ghz, ghz[2], NT3.measured_ghz
    ))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    let mut failed = Vec::new();
    for iso in [NH3, ND3, NT3] {
        let well = DoubleWell::new(69.29, 141.73, iso.mass).map_err(|e| e.to_string())?;
        let d = derive_well(&well);
        let closed = two_level_energies(&d, &well).map_err(|e| e.to_string())?.delta_e;
        let grid: Grid1D = make_grid(0.0, 3.0 * d.a, 4001).map_err(|e| e.to_string())?;
        let fd = grid_eigensolve(&well, grid).map_err(|e| e.to_string())?.delta_e();
        let ratio = fd / closed;
        parts.push(format!("{} grid/closed = {ratio:.2}", iso.name));
        if (ratio - 1.0).abs() > 0.10 {
            failed.push(iso.name);
        }
    }
    if failed.is_empty() {
        Ok(parts.join(", "))
    } else {
        Err(format!("outside 10% for {:?}: {}", failed, parts.join(", ")))
    }
}

fn criterion_7() -> Outcome {
    let well = DoubleWell::new(69.29, 141.73, NH3.mass).unwrap();
    let d = derive_well(&well);
    let e = two_level_energies(&d, &well).map_err(|e| e.to_string())?;
    let k0 = ground_state_entanglement(&build_two_qubit(&e, &d, 0.0)).map_err(|e| e.to_string())?.k;
    within(k0, 1.0, 1e-10, "K(g0 = 0)")?;
    let scale = 4.0 * PI.sqrt() * d.sigma_x;
    let g_hi = 1000.0 * e.delta_e * scale;
    let mut summary = Vec::new();
    for sign in [1.0, -1.0] {
        let mut last = k0;
        let mut asymptote = f64::INFINITY;
        for i in 0..50 {
            // log-spaced magnitudes from 1e-4·ΔE·scale to 1000·ΔE·scale
            let mag = g_hi * 10f64.powf(-7.0 * (49 - i) as f64 / 49.0);
            let g0 = sign * mag;
            let k = ground_state_entanglement(&build_two_qubit(&e, &d, g0)).map_err(|e| e.to_string())?.k;
            check(k >= last - 1e-9, format!("K decreases at g0 = {g0:.3e}: {k} < {last}"))?;
            check((1.0 - 1e-12..=2.0 + 1e-12).contains(&k), format!("K = {k} outside [1, 2]"))?;
            if mag / scale >= 100.0 * e.delta_e {
                asymptote = asymptote.min(k);
            }
            last = k;
        }
        check(asymptote > 1.9, format!("K = {asymptote} in the strong-coupling regime (sign {sign})"))?;
        summary.push(format!("{}: K(max) = {last:.6}", if sign > 0.0 { "g0 > 0" } else { "g0 < 0" }));
    }
    Ok(summary.join(", "))
}

fn criterion_8() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for m in 1..=5 {
        for b in [0.0, 0.2, 0.5, 1.0, 3.0] {
            for (a, sx, sxi) in [(5.0, 0.5, 0.5), (1.0, 0.6, 0.4), (2.5, 0.3, 0.7)] {
                let s = SlitParams::new(a, sx, m).unwrap();
                let d = DetectorParams::new(b, sxi).unwrap();
                let grids = JointGrids::momentum(&s, &d, 512).map_err(|e| e.to_string())?;
                let st = joint_state_momentum(&s, &d, &grids).map_err(|e| e.to_string())?;
                let dec = numerical_schmidt(&st, DEFAULT_TRUNCATION).map_err(|e| e.to_string())?;
                let mix = reconstruct_marginal(&dec);
                let direct = marginal_momentum_density(&st).map_err(|e| e.to_string())?;
                let err = mix.iter().zip(&direct).fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()));
                worst = worst.max(err);
                count += 1;
            }
        }
    }
    check(worst <= 1e-8, format!("sup-norm deviation {worst:.3e}"))?;
    Ok(format!("{count} states, max sup-norm deviation {worst:.2e}"))
}

fn criterion_9() -> Outcome {
    let mut b = ComplexMatrix::zeros(2, 4);
    b[(0, 0)] = Complex64::new(1.0, 0.0);
    b[(1, 3)] = Complex64::new(1.0, 0.0);
    let pops = ProtocolMatrix::new(b, 2).map_err(|e| e.to_string())?;
    let an = analyze(&pops, DEFAULT_RANK_THRESHOLD).map_err(|e| e.to_string())?;
    let opts = ReconstructOptions::default();

    let pure = reconstruct(&an, &real_data(&[1.0, 0.0]), &opts).map_err(|e| e.to_string())?;
    within(pure.k_max, 1.0, 1e-12, "K_max for P = (1, 0)")?;
    check(pure.completeness == Completeness::ConditionallyComplete, format!("{:?}", pure.completeness))?;

    let p = real_data(&[0.5, 0.5]);
    let mixed = reconstruct(&an, &p, &opts).map_err(|e| e.to_string())?;
    within(mixed.k_max, 2.0, 1e-12, "K_max for P = (0.5, 0.5)")?;
    let scan = scan_completions(&an, &p).map_err(|e| e.to_string())?;
    check(!scan.members.is_empty(), "empty completion set")?;
    check(
        scan.min_purity >= 0.5 - 1e-9 && scan.max_purity <= 1.0 + 1e-9,
        format!("purity range [{}, {}]", scan.min_purity, scan.max_purity),
    )?;

    let slits = SlitParams::two_slit(5.0, 0.5).unwrap();
    let ip = interference_protocol(&slits, 32).map_err(|e| e.to_string())?;
    let ian = analyze(&ip.protocol, DEFAULT_RANK_THRESHOLD).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for theta in [0.0, 0.4, 1.0, PI / 2.0, 2.5] {
        for phase in [0.0, 0.7, 2.0] {
            let c = [Complex64::new(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), phase)];
            let rho = ComplexMatrix::from_fn(2, 2, |i, j| c[i] * c[j].conj());
            let p = real_data(&ip.probabilities(&rho).map_err(|e| e.to_string())?);
            let rep = reconstruct(&ian, &p, &opts).map_err(|e| e.to_string())?;
            worst = worst.max((rep.k_max - 1.0).abs());
        }
    }
    check(worst <= 1e-6, format!("pure two-slit K_max deviates by {worst:.3e}"))?;

    let mut dup = ComplexMatrix::zeros(3, 4);
    dup[(0, 0)] = Complex64::new(1.0, 0.0);
    dup[(1, 0)] = Complex64::new(1.0, 0.0);
    dup[(2, 3)] = Complex64::new(1.0, 0.0);
    let dan = analyze(&ProtocolMatrix::new(dup, 2).unwrap(), DEFAULT_RANK_THRESHOLD).map_err(|e| e.to_string())?;
    let bad = real_data(&[0.6, 0.2, 0.4]);
    let residual = check_adequacy(&dan, &bad, opts.adequacy_tol).map_err(|e| e.to_string())?.residual;
    check(residual > 1e-3, format!("inadequate residual {residual}"))?;
    check(reconstruct(&dan, &bad, &opts).is_err(), "inadequate data accepted")?;
    Ok(format!(
        "scan purity [{:.3}, {:.3}] over {} members, pure two-slit |K_max - 1| ≤ {worst:.1e}, inadequate residual {residual:.3}",
        scan.min_purity,
        scan.max_purity,
        scan.members.len()
    ))
}

fn random_matrix(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), r * c)
            .prop_map(move |v| ComplexMatrix::from_iterator(r, c, v.into_iter().map(|(a, b)| Complex64::new(a, b))))
    })
}

fn wave_params() -> impl Strategy<Value = (f64, f64, f64)> {
    (-3.0..3.0f64, 0.3..1.5f64, -4.0..4.0f64)
}

fn criterion_10() -> Outcome {
    let config = Config { cases: 128, failure_persistence: None, ..Config::default() };
    let grid = make_grid(0.0, 20.0, 512).unwrap();
    let mut runner = TestRunner::new(config.clone());
    let mut names = Vec::new();

    runner
        .run(&wave_params(), |(c, s, k)| {
            let w = SampledWave::from_fn(grid, |x| {
                Complex64::from_polar(3.0 * (-(x - c).powi(2) / (4.0 * s * s)).exp(), k * x)
            })
            .normalized()
            .unwrap();
            prop_assert!((w.norm_sqr() - 1.0).abs() < 1e-12);
            Ok(())
        })
        .map_err(|e| format!("normalization: {e}"))?;
    names.push("normalization");

    runner
        .run(&wave_params(), |(c, s, k)| {
            let w = SampledWave::from_fn(grid, |x| Complex64::from_polar((-(x - c).powi(2) / (4.0 * s * s)).exp(), k * x))
                .normalized()
                .unwrap();
            let p = fourier_to_momentum(&w).unwrap();
            prop_assert!((p.norm_sqr() - 1.0).abs() < 1e-8, "momentum norm {}", p.norm_sqr());
            let back = fourier_to_coordinate(&p, &grid).unwrap();
            let err = back.amplitudes().iter().zip(w.amplitudes()).fold(0.0_f64, |a, (x, y)| a.max((x - y).norm()));
            prop_assert!(err < 1e-10, "round trip error {}", err);
            Ok(())
        })
        .map_err(|e| format!("Parseval / double transform: {e}"))?;
    names.push("Parseval");
    names.push("double transform");

    let mut runner = TestRunner::new(config.clone());
    runner
        .run(&random_matrix(64), |m| {
            let d = svd(&m).unwrap();
            let err = (d.reconstruct() - &m).norm() / m.norm().max(1e-300);
            prop_assert!(err < 1e-10, "relative reconstruction error {}", err);
            prop_assert!(d.singular_values.windows(2).all(|w| w[0] >= w[1]));
            Ok(())
        })
        .map_err(|e| format!("SVD reconstruction: {e}"))?;
    names.push("SVD reconstruction");

    let mut runner = TestRunner::new(config);
    runner
        .run(&random_matrix(32).prop_filter("square", |m| m.is_square()), |m| {
            let h = &m + m.adjoint();
            let d = eigh(&h).unwrap();
            let lam = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                d.values.len(),
                d.values.iter().map(|v| Complex64::new(*v, 0.0)),
            ));
            let resid = (&h * &d.vectors - &d.vectors * lam).norm();
            prop_assert!(resid < 1e-10 * h.norm().max(1.0), "residual {}", resid);
            Ok(())
        })
        .map_err(|e| format!("eigh residual: {e}"))?;
    names.push("eigh residual");

    Ok(format!("{} suites x 128 cases: {}", names.len(), names.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 two-slit Schmidt weights", criterion_1),
        ("2 five-slit Schmidt weights", criterion_2),
        ("3 visibility-Schmidt coupling", criterion_3),
        ("4 finite-source model", criterion_4),
        ("5 ammonia isotope chain", criterion_5),
        ("6 two-level vs grid eigensolver", criterion_6),
        ("7 two-qubit entanglement", criterion_7),
        ("8 mixture identity", criterion_8),
        ("9 tomography completeness", criterion_9),
        ("10 randomized invariants", criterion_10),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
