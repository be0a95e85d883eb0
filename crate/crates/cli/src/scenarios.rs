//! Scenario implementations and the figure catalog.

use std::f64::consts::PI;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value as Json};
use whichway::coherence::{k_from_v, qubit_coherence_state, source_curve, visibility_from_intensity, CoherenceModel};
use whichway::interference::{
    joint_norm_sq, joint_state_coordinate, joint_state_momentum, marginal_coordinate_density,
    marginal_momentum_density, multi_slit_intensity, slit_amplitude, DetectorParams, JointGrids, Representation,
    SlitParams,
};
use whichway::numerics::{default_grid, make_grid, DEFAULT_GRID_POINTS};
use whichway::schmidt::{analytic_two_slit_schmidt, numerical_schmidt, DEFAULT_TRUNCATION};
use whichway::tomography::{
    analyze, complex_rows, interference_protocol, purity, real_data, reconstruct, scan_completions, ProtocolMatrix,
    ReconstructOptions, DEFAULT_RANK_THRESHOLD,
};
use whichway::tunneling::{
    build_two_qubit, derive_well, fit_potential, grid_eigensolve, ground_state_entanglement, splitting_to_frequency,
    two_level_energies, DoubleWell, AMMONIA_ISOTOPES, NH3, NH3_SPLITTING,
};
use whichway::{Complex64, ComplexMatrix, Error, Grid1D};

use crate::config::{invalid, Params};
use crate::output::{Cell, Kind, Outcome, Table};

pub type Runner = fn(&mut Params) -> Result<Outcome>;

pub struct Scenario {
    pub name: &'static str,
    pub about: &'static str,
    pub run: Runner,
}

/// Subcommand scenarios.
pub const SCENARIOS: &[Scenario] = &[
    Scenario { name: "slits", about: "m-slit coordinate and far-field densities without a detector", run: slits },
    Scenario { name: "entangled", about: "particle marginals of the particle-detector state", run: entangled },
    Scenario { name: "schmidt", about: "numerical Schmidt modes and weights", run: schmidt },
    Scenario { name: "coherence", about: "phase-shifted qubit model of a partially coherent source", run: coherence },
    Scenario { name: "ammonia", about: "double-well fit and isotope splittings", run: ammonia },
    Scenario { name: "qubits", about: "ground-state entanglement of two coupled double wells", run: qubits },
    Scenario { name: "tomography", about: "reconstruction from an arbitrary measurement protocol", run: tomography },
];

const INTERNAL: &[Scenario] = &[
    Scenario { name: "interconnection", about: "marginals over several detector spacings", run: interconnection },
    Scenario { name: "coupling", about: "visibility and Schmidt number of an extended source", run: coupling },
    Scenario { name: "tomography-demo", about: "populations and two-slit protocol examples", run: tomography_demo },
];

pub fn scenario(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().chain(INTERNAL).find(|s| s.name == name)
}

pub struct Figure {
    pub name: &'static str,
    pub anchor: &'static str,
    pub about: &'static str,
    pub scenario: &'static str,
    /// Defaults applied underneath any user-supplied values.
    pub preset: &'static [(&'static str, &'static str)],
}

pub const FIGURES: &[Figure] = &[
    Figure {
        name: "fig1",
        anchor: "Fig. 1",
        about: "two-slit coordinate and momentum densities",
        scenario: "slits",
        preset: &[("a", "5"), ("sigma_x", "0.5"), ("m", "2")],
    },
    Figure {
        name: "fig2",
        anchor: "Fig. 2",
        about: "fringes washed out by a detector, b = 0.7",
        scenario: "entangled",
        preset: &[("a", "5"), ("sigma_x", "0.5"), ("sigma_xi", "0.5"), ("b", "0.7"), ("m", "2")],
    },
    Figure {
        name: "fig3",
        anchor: "Fig. 3",
        about: "two-slit Schmidt modes, K = 1.4621",
        scenario: "schmidt",
        preset: &[("a", "5"), ("sigma_x", "0.5"), ("sigma_xi", "0.5"), ("b", "0.5"), ("m", "2")],
    },
    Figure {
        name: "fig4",
        anchor: "Fig. 4",
        about: "four-slit marginals for increasing detector spacing",
        scenario: "interconnection",
        preset: &[("a", "5"), ("sigma_x", "0.5"), ("sigma_xi", "0.5"), ("m", "4"), ("b", "0,0.25,0.5,1,2")],
    },
    Figure {
        name: "fig5",
        anchor: "Fig. 5",
        about: "five-slit Schmidt modes and weights",
        scenario: "schmidt",
        preset: &[("a", "5"), ("sigma_x", "0.5"), ("sigma_xi", "0.5"), ("b", "0.5"), ("m", "5")],
    },
    Figure {
        name: "fig6-data",
        anchor: "Fig. 6",
        about: "qubit-averaged pattern at phase pi/8 and the source visibility",
        scenario: "coherence",
        preset: &[("a", "5"), ("sigma_x", "0.5"), ("phi", "0.39269908169872414")],
    },
    Figure {
        name: "fig7",
        anchor: "Fig. 7",
        about: "visibility and Schmidt number against source size",
        scenario: "coupling",
        preset: &[("y_max", "1"), ("points", "201")],
    },
    Figure {
        name: "fig10",
        anchor: "Fig. 10",
        about: "Schmidt number of the two-qubit ground state against g0",
        scenario: "qubits",
        preset: &[("alpha", "69.29"), ("beta", "141.73"), ("mass", "2.47")],
    },
    Figure {
        name: "ammonia",
        anchor: "ammonia isotope table",
        about: "NH3 fit and ND3, NT3 predictions",
        scenario: "ammonia",
        preset: &[("isotope", "all")],
    },
    Figure {
        name: "tomography-demo",
        anchor: "tomography examples",
        about: "population and two-slit reconstructions",
        scenario: "tomography-demo",
        preset: &[],
    },
];

pub fn figure(name: &str) -> Option<&'static Figure> {
    FIGURES.iter().find(|f| f.name == name)
}

fn density(stem: &str, axis: &str, grid: &Grid1D, values: &[f64]) -> Table {
    Table::xy(stem, Kind::Density, [axis, "density"], &grid.points(), values)
}

fn grid_points(p: &mut Params) -> Result<usize> {
    Ok(p.count("grid_points", DEFAULT_GRID_POINTS)?)
}

fn slit_params(p: &mut Params, m_default: usize) -> Result<SlitParams> {
    let a = p.positive("a", 5.0)?;
    let sigma_x = p.positive("sigma_x", 0.5)?;
    let m = p.count("m", m_default)?;
    SlitParams::new(a, sigma_x, m).map_err(|e| invalid("m", e).into())
}

fn detector_params(p: &mut Params, b: f64) -> Result<DetectorParams> {
    let sigma_xi = p.positive("sigma_xi", 0.5)?;
    DetectorParams::new(b, sigma_xi).map_err(|e| invalid("b", e).into())
}

/// Too coarse a grid only loses the visibility, not the densities.
fn visibility_scalar(out: &mut Outcome, density: &[f64], grid: &Grid1D, s: &SlitParams) -> Result<()> {
    match visibility_from_intensity(density, grid, s) {
        Ok(v) => out.scalar("visibility", v),
        Err(e @ Error::UnresolvedFringes(_)) => out.scalar("visibility", format!("unresolved: {e}")),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn slits(p: &mut Params) -> Result<Outcome> {
    let s = slit_params(p, 2)?;
    let n = grid_points(p)?;
    let mut out = Outcome::default();

    let centers = s.centers();
    let xg = default_grid(&centers, s.sigma_x, n)?;
    let wave = whichway::SampledWave::from_fn(xg, |x| {
        Complex64::new(centers.iter().map(|c| slit_amplitude(s.sigma_x, *c, x)).sum(), 0.0)
    })
    .normalized()?;
    out.table(density("slits_coordinate", "x", &xg, &wave.density()));

    let pg = JointGrids::momentum(&s, &DetectorParams::new(0.0, s.sigma_x)?, n)?.particle;
    let mom: Vec<f64> = pg.points().iter().map(|&k| multi_slit_intensity(&s, k)).collect();
    out.table(density("slits_momentum", "p", &pg, &mom));

    out.scalar("overlap", s.overlap());
    out.scalar("well_separated", s.well_separated());
    out.scalar("norm_sq", joint_norm_sq(&s, &DetectorParams::new(0.0, 1.0)?));
    if s.m == 2 {
        visibility_scalar(&mut out, &mom, &pg, &s)?;
    }
    Ok(out)
}

fn entangled(p: &mut Params) -> Result<Outcome> {
    let s = slit_params(p, 2)?;
    let b = p.non_negative("b", 0.7)?;
    let d = detector_params(p, b)?;
    let n = grid_points(p)?;
    let mut out = Outcome::default();

    let mg = JointGrids::momentum(&s, &d, n)?;
    let mom = marginal_momentum_density(&joint_state_momentum(&s, &d, &mg)?)?;
    out.table(density("entangled_momentum", "p", &mg.particle, &mom));
    let cg = JointGrids::coordinate(&s, &d, n)?;
    let coord = marginal_coordinate_density(&joint_state_coordinate(&s, &d, &cg)?)?;
    out.table(density("entangled_coordinate", "x", &cg.particle, &coord));

    out.scalar("norm_sq", joint_norm_sq(&s, &d));
    out.scalar("detector_overlap", d.overlap());
    if s.m == 2 {
        visibility_scalar(&mut out, &mom, &mg.particle, &s)?;
    }
    Ok(out)
}

fn schmidt(p: &mut Params) -> Result<Outcome> {
    let s = slit_params(p, 2)?;
    let b = p.non_negative("b", 0.5)?;
    let d = detector_params(p, b)?;
    let n = grid_points(p)?;
    let truncation = p.positive("truncation", DEFAULT_TRUNCATION)?;
    let rep = p.choice("representation", "momentum", &["momentum", "coordinate"])?;
    let max_modes = p.count("modes", 6)?;

    let state = if rep == "momentum" {
        joint_state_momentum(&s, &d, &JointGrids::momentum(&s, &d, n)?)?
    } else {
        joint_state_coordinate(&s, &d, &JointGrids::coordinate(&s, &d, n)?)?
    };
    let dec = numerical_schmidt(&state, truncation)?;
    let mut out = Outcome::default();

    let mut weights = Table::new("schmidt_weights", Kind::Table, &["k", "lambda"]);
    for (k, w) in dec.weights().iter().enumerate() {
        weights.push(vec![Cell::Num(k as f64), Cell::Num(*w)]);
    }
    out.table(weights);
    let axis = if rep == "momentum" { "p" } else { "x" };
    for k in 0..dec.len().min(max_modes) {
        for (side, wave) in [("particle", dec.particle_wave(k)), ("detector", dec.detector_wave(k))] {
            let wave = wave.context("Schmidt mode lost its grid")?;
            out.table(density(&format!("schmidt_{side}_mode_{k}"), axis, wave.grid(), &wave.density()));
        }
    }

    out.scalar("modes", dec.len() as u64);
    out.scalar("schmidt_number", dec.schmidt_number());
    out.scalar("entropy", dec.entropy());
    out.scalar("information", dec.information());
    out.scalar("degenerate", dec.is_degenerate());
    out.detail("lambda", json!(dec.weights()));
    if s.m == 2 && rep == "momentum" {
        let an = analytic_two_slit_schmidt(&s, &d, &JointGrids::momentum(&s, &d, n)?)?;
        out.detail("lambda_analytic", json!(an.weights()));
        out.scalar("schmidt_number_analytic", an.schmidt_number());
    }
    Ok(out)
}

fn interconnection(p: &mut Params) -> Result<Outcome> {
    let s = slit_params(p, 4)?;
    let bs = p.list("b", &[0.0, 0.25, 0.5, 1.0, 2.0])?;
    let n = grid_points(p)?;
    let sigma_xi = p.positive("sigma_xi", 0.5)?;
    let mut out = Outcome::default();
    let mut ks = Vec::new();
    for (i, &b) in bs.iter().enumerate() {
        let d = DetectorParams::new(b, sigma_xi).map_err(|e| invalid("b", e))?;
        let g = JointGrids::momentum(&s, &d, n)?;
        let state = joint_state_momentum(&s, &d, &g)?;
        out.table(density(&format!("interconnection_b{i}"), "p", &g.particle, &marginal_momentum_density(&state)?));
        ks.push(numerical_schmidt(&state, DEFAULT_TRUNCATION)?.schmidt_number());
    }
    out.detail("b", json!(bs));
    out.detail("schmidt_number", json!(ks));
    Ok(out)
}

fn coherence(p: &mut Params) -> Result<Outcome> {
    let s = slit_params(p, 2)?;
    let phi = p.f64("phi", PI / 8.0)?;
    let n = grid_points(p)?;
    let model = CoherenceModel::new(phi, s).map_err(|e| invalid("m", e))?;
    let grid = make_grid(0.0, 10.0 / (2.0 * s.sigma_x), n)?;
    let state = qubit_coherence_state(&model, grid, Representation::Momentum)?;
    let mut out = Outcome::default();

    let avg = state.particle_density();
    out.table(density("coherence_average", "p", &grid, &avg));
    let w = grid.weights();
    for q in 0..2 {
        let raw: Vec<f64> = state.amplitudes().column(q).iter().map(|z| z.norm_sqr()).collect();
        let norm: f64 = raw.iter().zip(&w).map(|(r, w)| r * w).sum();
        let cond: Vec<f64> = raw.iter().map(|r| r / norm).collect();
        out.table(density(&format!("coherence_given_{q}"), "p", &grid, &cond));
    }

    let v = visibility_from_intensity(&avg, &grid, &s)?;
    let dec = numerical_schmidt(&state, DEFAULT_TRUNCATION)?;
    out.scalar("visibility", v);
    out.scalar("visibility_model", model.visibility());
    out.scalar("schmidt_number", dec.schmidt_number());
    out.scalar("schmidt_number_from_visibility", k_from_v(v.min(1.0))?);
    out.scalar("entropy", dec.entropy());
    out.detail("lambda", json!(dec.weights()));
    Ok(out)
}

fn coupling(p: &mut Params) -> Result<Outcome> {
    let y_max = p.positive("y_max", 1.0)?;
    let points = p.count("points", 201)?;
    if points < 2 {
        return Err(invalid("points", "need at least two samples").into());
    }
    let ys: Vec<f64> = (0..points).map(|i| y_max * i as f64 / (points - 1) as f64).collect();
    let mut source = Table::new("source_curve", Kind::Curve, &["y", "visibility", "schmidt_number"]);
    for (y, v, k) in source_curve(&ys) {
        source.push(vec![y.into(), v.into(), k.into()]);
    }
    let mut vk = Table::new("visibility_schmidt", Kind::Curve, &["visibility", "schmidt_number"]);
    for i in 0..points {
        let v = i as f64 / (points - 1) as f64;
        vk.push(vec![v.into(), k_from_v(v)?.into()]);
    }
    let mut out = Outcome::default();
    out.table(source);
    out.table(vk);
    // first zero of sinc(4y)
    out.scalar("first_zero_y", 0.25);
    Ok(out)
}

fn ammonia(p: &mut Params) -> Result<Outcome> {
    let names: Vec<&str> = AMMONIA_ISOTOPES.iter().map(|i| i.name).collect();
    let choice = p.choice("isotope", "all", &[&["all"][..], &names].concat())?;
    // 0.37 Å / 0.529 Å, rounded as in the reference chain
    let a = p.positive("a", 0.699)?;
    let target = p.positive("delta_e", NH3_SPLITTING)?;
    let fit_mass = p.positive("fit_mass", NH3.mass)?;
    let fd_points = p.count("fd_points", 4001)?;
    let (alpha, beta) = match (p.opt_f64("alpha")?, p.opt_f64("beta")?) {
        (Some(al), Some(be)) => (al, be),
        (None, None) => {
            let fit = fit_potential(a, target, fit_mass).map_err(|e| invalid("delta_e", e))?;
            (fit.alpha, fit.beta)
        }
        _ => return Err(invalid("alpha", "alpha and beta must be given together").into()),
    };

    let mut out = Outcome::default();
    out.scalar("alpha", alpha);
    out.scalar("beta", beta);
    let mut table = Table::new(
        "ammonia",
        Kind::Table,
        &["isotope", "mass", "sigma_x", "overlap", "delta_e", "ghz", "measured_ghz", "grid_delta_e"],
    );
    for iso in AMMONIA_ISOTOPES.iter().filter(|i| choice == "all" || choice == i.name) {
        let well = DoubleWell::new(alpha, beta, iso.mass).map_err(|e| invalid("alpha", e))?;
        let d = derive_well(&well);
        let e = two_level_energies(&d, &well)?;
        let ghz = splitting_to_frequency(e.delta_e);
        let fd = grid_eigensolve(&well, make_grid(0.0, 3.0 * d.a, fd_points)?)?.delta_e();
        table.push(vec![
            iso.name.into(),
            iso.mass.into(),
            d.sigma_x.into(),
            d.overlap.into(),
            e.delta_e.into(),
            ghz.into(),
            iso.measured_ghz.into(),
            fd.into(),
        ]);
        let key = |k: &str| format!("{}.{k}", iso.name);
        out.scalar(key("ghz"), ghz);
        out.scalar(key("measured_ghz"), iso.measured_ghz);
        out.scalar(key("delta_e"), e.delta_e);
        out.scalar(key("overlap"), d.overlap);
        out.scalar(key("two_level_valid"), d.is_two_level_valid());
        out.scalar(key("grid_delta_e"), fd);
    }
    out.table(table);
    Ok(out)
}

fn qubits(p: &mut Params) -> Result<Outcome> {
    let alpha = p.positive("alpha", 69.29)?;
    let beta = p.positive("beta", 141.73)?;
    let mass = p.positive("mass", NH3.mass)?;
    let g0 = p.f64("g0", 0.01)?;
    let g_min = p.positive("g0_min", 1e-6)?;
    let g_max = p.positive("g0_max", 1.0)?;
    let points = p.count("points", 61)?;
    if g_max <= g_min || points < 2 {
        return Err(invalid("g0_max", "sweep needs g0_max > g0_min and at least two points").into());
    }
    let well = DoubleWell::new(alpha, beta, mass).map_err(|e| invalid("alpha", e))?;
    let d = derive_well(&well);
    let e = two_level_energies(&d, &well)?;

    let mut out = Outcome::default();
    let mut sweep = Table::new("qubits_sweep", Kind::Curve, &["g0", "schmidt_number", "ground_energy"]);
    let ratio = (g_max / g_min).ln();
    for i in 0..points {
        let g = g_min * (ratio * i as f64 / (points - 1) as f64).exp();
        let gs = ground_state_entanglement(&build_two_qubit(&e, &d, g))?;
        sweep.push(vec![g.into(), gs.k.into(), gs.ground_energy.into()]);
    }
    out.table(sweep);

    let sys = build_two_qubit(&e, &d, g0);
    let gs = ground_state_entanglement(&sys)?;
    out.scalar("delta_e", e.delta_e);
    out.scalar("sigma_x", d.sigma_x);
    out.scalar("h1", sys.h1);
    out.scalar("h2", sys.h2);
    out.scalar("h3", sys.h3);
    out.scalar("schmidt_number", gs.k);
    out.scalar("ground_energy", gs.ground_energy);
    out.scalar("degenerate", gs.degenerate);
    if let Some(k) = gs.alternate_k {
        out.scalar("alternate_schmidt_number", k);
    }
    out.detail("coefficients", json!(gs.coefficients.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()));
    Ok(out)
}

fn populations(s: usize) -> Result<ProtocolMatrix> {
    let mut b = ComplexMatrix::zeros(s, s * s);
    for i in 0..s {
        b[(i, i * (s + 1))] = Complex64::new(1.0, 0.0);
    }
    Ok(ProtocolMatrix::new(b, s)?)
}

/// Two-slit density matrix in the symmetric/antisymmetric basis.
fn two_slit_rho(p: &mut Params) -> Result<ComplexMatrix> {
    let r00 = p.non_negative("rho00", 0.5)?;
    let off = Complex64::new(p.f64("rho01_re", 0.5)?, p.f64("rho01_im", 0.0)?);
    if r00 > 1.0 {
        return Err(invalid("rho00", format!("must lie in [0, 1], got {r00}")).into());
    }
    if off.norm_sqr() > r00 * (1.0 - r00) + 1e-12 {
        return Err(invalid("rho01_re", "coherence exceeds sqrt(rho00 rho11), state is not positive").into());
    }
    Ok(ComplexMatrix::from_row_slice(2, 2, &[Complex64::new(r00, 0.0), off, off.conj(), Complex64::new(1.0 - r00, 0.0)]))
}

fn run_tomography(out: &mut Outcome, prefix: &str, protocol: &ProtocolMatrix, data: &[Complex64]) -> Result<()> {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    let stem = if prefix.is_empty() { "singular_values".to_string() } else { format!("{prefix}_singular_values") };
    let an = analyze(protocol, DEFAULT_RANK_THRESHOLD)?;
    let mut sv = Table::new(&stem, Kind::Table, &["index", "singular_value"]);
    for (i, s) in an.singular_values.iter().enumerate() {
        sv.push(vec![Cell::Num(i as f64), Cell::Num(*s)]);
    }
    out.table(sv);
    let rep = reconstruct(&an, data, &ReconstructOptions::default())?;
    out.scalar(key("rank"), rep.rank as u64);
    out.scalar(key("undefined_count"), rep.undefined_count as u64);
    out.scalar(key("residual"), rep.adequacy.residual);
    out.scalar(key("completeness"), serde_json::to_value(rep.completeness)?);
    out.scalar(key("k_max"), rep.k_max);
    out.scalar(key("physical"), rep.physical);
    out.scalar(key("purity_regularized"), purity(&rep.rho_regularized));
    out.detail(key("rho_regularized"), json!(complex_rows(&rep.rho_regularized)));
    match scan_completions(&an, data) {
        Ok(scan) => {
            out.scalar(key("completions"), scan.members.len() as u64);
            if !scan.members.is_empty() {
                out.scalar(key("min_purity"), scan.min_purity);
                out.scalar(key("max_purity"), scan.max_purity);
            }
        }
        Err(e) => out.scalar(key("completions"), format!("not scanned: {e}")),
    }
    Ok(())
}

fn tomography(p: &mut Params) -> Result<Outcome> {
    let kind = p.choice("protocol", "populations", &["populations", "interference", "file"])?;
    let mut out = Outcome::default();
    match kind.as_str() {
        "populations" => {
            let data = p.list("p", &[0.5, 0.5])?;
            run_tomography(&mut out, "", &populations(data.len())?, &real_data(&data))?;
        }
        "interference" => {
            let s = slit_params(p, 2)?;
            let n = p.count("n", 32)?;
            let ip = interference_protocol(&s, n).map_err(|e| invalid("m", e))?;
            let rho = two_slit_rho(p)?;
            let data = real_data(&ip.probabilities(&rho)?);
            run_tomography(&mut out, "", &ip.protocol, &data)?;
        }
        _ => {
            let path = p.text("protocol_file", "")?;
            if path.is_empty() {
                return Err(invalid("protocol_file", "required when protocol = file").into());
            }
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading protocol file {path}"))?;
            let value: Json = serde_json::from_str(&text).with_context(|| format!("parsing protocol file {path}"))?;
            let protocol = ProtocolMatrix::from_json(&value).map_err(|e| invalid("protocol_file", e))?;
            let data = match value.get("p") {
                Some(v) => serde_json::from_value::<Vec<f64>>(v.clone()).map_err(|e| invalid("protocol_file", e))?,
                None => p.list("p", &[])?,
            };
            if data.len() != protocol.n_measurements() {
                bail!(invalid(
                    "p",
                    format!("{} data values for {} measurements", data.len(), protocol.n_measurements())
                ));
            }
            run_tomography(&mut out, "", &protocol, &real_data(&data))?;
        }
    }
    Ok(out)
}

fn tomography_demo(p: &mut Params) -> Result<Outcome> {
    let mut out = Outcome::default();
    let pops = populations(2)?;
    run_tomography(&mut out, "populations_pure", &pops, &real_data(&[1.0, 0.0]))?;
    run_tomography(&mut out, "populations_mixed", &pops, &real_data(&[0.5, 0.5]))?;
    let s = slit_params(p, 2)?;
    let n = p.count("n", 32)?;
    let ip = interference_protocol(&s, n).map_err(|e| invalid("m", e))?;
    let half = Complex64::new(0.5, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    for (name, rho) in [
        ("two_slit_pure", ComplexMatrix::from_element(2, 2, half)),
        ("two_slit_mixed", ComplexMatrix::from_row_slice(2, 2, &[half, zero, zero, half])),
    ] {
        run_tomography(&mut out, name, &ip.protocol, &real_data(&ip.probabilities(&rho)?))?;
    }
    Ok(out)
}
