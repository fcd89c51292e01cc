//! One function per demo. Each fills a [`QuantReport`] with results and checks.

use std::f64::consts::{FRAC_PI_4, PI};

use geoquant_core::bks::{
    fourier_project, pairing_derivative, schrodinger_residual, PairingOptions, Polarization,
    PolarizedState,
};
use geoquant_core::fock::{fock_gram, op_raise, oscillator_hamiltonian, FockBasis};
use geoquant_core::halfform::{
    check_canonical_commutator, check_selfadjoint, check_selfadjoint_with, ConfigGrid,
    DivergenceTerm, LinearInP,
};
use geoquant_core::lattice::{relative_residual, Axis, Boundary};
use geoquant_core::linalg::{commutator, multiplicities, spectrum};
use geoquant_core::panel::{interior_gaussian, PanelSpec};
use geoquant_core::poly::Polynomial;
use geoquant_core::prequant::{
    check_canonical, check_dirac, cylinder_operator, cylinder_spectrum,
    cylinder_spectrum_unreduced, prequantum_evolve, self_adjoint_residual, weil_admissible,
    EvolveOptions, Observable, PhaseSpaceGrid, SectorSpec,
};
use geoquant_core::spin::{
    check_su2, gram_entry_quadrature, monomial_norm_sq, spin_gram, spin_operators, SpinBasis,
};
use geoquant_core::{Result, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{Demo, RunConfig};
use crate::report::{Check, QuantReport};

/// Seed for the random observable pairs of the prequant-flat demo.
pub const DIRAC_SEED: u64 = 2024;
/// Seed for the random band-limited states of the bks demo.
pub const PARSEVAL_SEED: u64 = 77;
const DIRAC_PAIRS: usize = 20;
const GRAM_NODES: usize = 40;

pub fn run_demo(cfg: &RunConfig, report: &mut QuantReport) -> Result<()> {
    match cfg.demo {
        Demo::PrequantFlat => prequant_flat(cfg, report),
        Demo::WeilSphere => weil_sphere(cfg, report),
        Demo::Cylinder => cylinder(cfg, report),
        Demo::Fock => fock(cfg, report),
        Demo::Spin => spin(cfg, report),
        Demo::Canonical => canonical(cfg, report),
        Demo::Bks => bks(cfg, report),
    }
}

/// Adds the settings the demo actually reads to the report's config section.
pub fn echo_config(cfg: &RunConfig, r: &mut QuantReport) {
    r.config("hbar", cfg.hbar);
    match cfg.demo {
        Demo::PrequantFlat | Demo::Canonical => r.config("grid", cfg.grid.to_string()),
        Demo::WeilSphere | Demo::Spin => r.config("n", cfg.n),
        Demo::Cylinder => {
            r.config("lambda", cfg.lambda);
            r.config("k_max", cfg.k_max);
        }
        Demo::Fock => {
            r.config("n", cfg.n);
            r.config("degree", cfg.degree);
        }
        Demo::Bks => {
            r.config("grid", cfg.grid.to_string());
            r.config("mass", cfg.mass);
            r.config("k_max", cfg.k_max);
            r.config("t_list", cfg.t_list.clone());
        }
    }
    let t = &cfg.tolerances;
    r.config("tol_grid", t.grid);
    r.config("tol_exact", t.exact);
    r.config("tol_bks", t.bks);
    r.config("tol_quadrature", t.quadrature);
    r.config("tol_parseval", t.parseval);
}

fn prequant_flat(cfg: &RunConfig, r: &mut QuantReport) -> Result<()> {
    let (hbar, tol) = (cfg.hbar, &cfg.tolerances);
    let panel = PanelSpec::default();
    let grid = PhaseSpaceGrid::new(
        1,
        Axis::symmetric(6.0, cfg.grid.first),
        Axis::symmetric(6.0, cfg.grid.second),
        Boundary::ZeroPadded,
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(DIRAC_SEED);
    let mut worst: f64 = 0.0;
    let mut worst_pair = String::new();
    for _ in 0..DIRAC_PAIRS {
        let f = Observable::from(Polynomial::random_integer(1, 2, 3, &mut rng)?);
        let g = Observable::from(Polynomial::random_integer(1, 2, 3, &mut rng)?);
        let res = check_dirac(&f, &g, &grid, hbar, &panel)?.max;
        if res > worst || worst_pair.is_empty() {
            worst = res;
            worst_pair = format!(
                "({}, {})",
                geoquant_core::prequant::describe(&f),
                geoquant_core::prequant::describe(&g)
            );
        }
    }
    let canonical = check_canonical(&grid, hbar, 0, &panel)?.max;
    let q = Polynomial::q(1, 0)?;
    let p = Polynomial::p(1, 0)?;
    let mut sa: f64 = 0.0;
    for f in [
        q.clone(),
        p.clone(),
        q.mul(&p)?,
        p.mul(&p)?.scale(0.5).add(&q.mul(&q)?.scale(0.5))?,
    ] {
        sa = sa.max(self_adjoint_residual(&Observable::from(f), &grid, hbar, &panel)?.max);
    }

    let evolve = PhaseSpaceGrid::new(
        1,
        Axis::symmetric(10.0, 256),
        Axis::symmetric(5.0, 256),
        Boundary::ZeroPadded,
    )?;
    let free = Observable::from(p.mul(&p)?.scale(0.5));
    let psi0 = interior_gaussian(evolve.lattice(), &[0.4, -0.2], &[0.5, -0.3], 0.4);
    let norm0 = evolve.lattice().norm(&psi0);
    let times = [0.01, 0.1, 0.5, 1.0, 2.0];
    let mut drift = Vec::with_capacity(times.len());
    for t in times {
        let out = prequantum_evolve(
            &free,
            &psi0,
            t,
            &EvolveOptions::default(),
            &evolve,
            hbar,
            tol,
        )?;
        drift.push((evolve.lattice().norm(&out.state) / norm0 - 1.0).abs() / t);
    }
    let worst_drift = drift.iter().copied().fold(0.0, f64::max);

    r.result("dirac_pairs", DIRAC_PAIRS);
    r.result("dirac_seed", DIRAC_SEED as usize);
    r.result("dirac_max_residual", worst);
    r.result("dirac_worst_pair", worst_pair);
    r.result("canonical_residual", canonical);
    r.result("self_adjoint_residual", sa);
    r.result("evolve_grid", "256x256, q in [-10, 10], p in [-5, 5]");
    r.result("evolve_times", times.to_vec());
    r.result("norm_drift_per_time", drift);
    r.check(Check::below(
        "dirac",
        worst,
        tol.grid,
        "[P_f, P_g] + i hbar P_{f,g} = 0",
    ));
    r.check(Check::below(
        "canonical",
        canonical,
        tol.grid,
        "[P_q, P_p] = i hbar",
    ));
    r.check(Check::below(
        "self_adjoint",
        sa,
        tol.grid,
        "<psi, P_f chi> = <P_f psi, chi>",
    ));
    r.check(Check::below(
        "unitarity",
        worst_drift,
        tol.grid,
        "||exp(i t P_f / hbar) psi|| = ||psi||",
    ));
    r.note("residuals measured on seeded interior Gaussian test vectors");
    Ok(())
}

fn weil_sphere(cfg: &RunConfig, r: &mut QuantReport) -> Result<()> {
    let (hbar, tol) = (cfg.hbar, &cfg.tolerances);
    let cases = [
        (0.5, true),
        (1.0, true),
        (1.5, true),
        (0.7, false),
        (1.2, false),
    ];
    let mut verdicts = Vec::new();
    let mut ratios = Vec::new();
    let mut area_err: f64 = 0.0;
    let mut agree = true;
    for (factor, expect) in cases {
        let s = factor * hbar;
        let v = weil_admissible(&SectorSpec::sphere(s, hbar)?, tol)?;
        area_err = area_err.max((v.integral - 4.0 * PI * s).abs() / (4.0 * PI * s));
        agree &= v.admissible == expect;
        verdicts.push(if v.admissible { "yes" } else { "no" });
        ratios.push(v.ratio);
    }
    let s = cfg.n as f64 * hbar / 2.0;
    let sector = weil_admissible(&SectorSpec::sphere(s, hbar)?, tol)?;

    r.result(
        "s_over_hbar",
        cases.iter().map(|c| c.0).collect::<Vec<f64>>(),
    );
    r.result("verdicts", verdicts.join(", "));
    r.result("area_over_2pi_hbar", ratios);
    r.result("area_relative_error", area_err);
    r.result("sector_s", s);
    r.result("sector_area_over_2pi_hbar", sector.ratio);
    r.result("sector_admissible", sector.admissible);
    r.check(Check::holds(
        "verdicts",
        agree,
        "int omega / (2 pi hbar) in Z, omega = s sin(theta) dtheta ^ dphi",
    ));
    r.check(Check::below("area", area_err, 1e-8, "int omega = 4 pi s"));
    r.check(Check::holds(
        "sector_n",
        sector.admissible,
        "s = n hbar / 2",
    ));
    r.note("expected verdicts {yes, yes, yes, no, no} for s/hbar in {0.5, 1, 1.5, 0.7, 1.2}");
    Ok(())
}

fn cylinder(cfg: &RunConfig, r: &mut QuantReport) -> Result<()> {
    let (hbar, lambda, k_max) = (cfg.hbar, cfg.lambda, cfg.k_max);
    let sector = SectorSpec::cylinder(lambda, hbar)?;
    let op = cylinder_operator(&sector, k_max)?;
    let spec = cylinder_spectrum(&sector, k_max)?;
    let expect: Vec<f64> = (-(k_max as i64)..=k_max as i64)
        .map(|k| (k as f64 + lambda) * hbar)
        .collect();
    let diag_err = op
        .diagonal()
        .iter()
        .zip(&expect)
        .map(|(z, e)| (z - C64::new(*e, 0.0)).norm())
        .fold(0.0, f64::max);
    let off =
        (0..op.dim()).all(|i| (0..op.dim()).all(|j| i == j || op.get(i, j) == C64::new(0.0, 0.0)));
    let spec_err = spec
        .iter()
        .zip(&expect)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let shifted = cylinder_spectrum_unreduced(lambda + 1.0, hbar, k_max);
    let (lo, hi) = (
        (lambda + 1.0 - k_max as f64) * hbar,
        (lambda + k_max as f64) * hbar,
    );
    let a: Vec<f64> = expect
        .iter()
        .copied()
        .filter(|x| (lo..=hi).contains(x))
        .collect();
    let b: Vec<f64> = shifted
        .iter()
        .copied()
        .filter(|x| (lo..=hi).contains(x))
        .collect();

    r.result("spectrum", spec.clone());
    r.result("dimension", spec.len());
    r.result("shared_range", vec![lo, hi]);
    r.check(Check::below(
        "spectrum",
        spec_err.max(diag_err),
        cfg.tolerances.exact,
        "spec P_p = {(k + lambda) hbar}",
    ));
    r.check(Check::holds(
        "diagonal",
        off,
        "P_p e^{ik phi} = (k + lambda) hbar e^{ik phi}",
    ));
    r.check(Check::holds(
        "relabeling",
        a == b && spec.len() == 2 * k_max as usize + 1,
        "lambda ~ lambda + 1",
    ));
    r.note("reference spectrum {(k + lambda) hbar, |k| <= k_max} in closed form");
    Ok(())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn fock(cfg: &RunConfig, r: &mut QuantReport) -> Result<()> {
    let (hbar, tol) = (cfg.hbar, &cfg.tolerances);
    let n = cfg.n as usize;
    let basis = FockBasis::new(n, cfg.degree, hbar)?;
    let gram = fock_gram(&basis)?;
    let h = oscillator_hamiltonian(&basis)?;
    let levels: Vec<f64> = spectrum(&h, &gram)?.iter().map(|z| z.re).collect();
    let mut expect = Vec::with_capacity(levels.len());
    for k in 0..=cfg.degree as u64 {
        let e = hbar * (k as f64 + 0.5 * n as f64);
        expect.extend(std::iter::repeat_n(
            e,
            binomial(k + n as u64 - 1, n as u64 - 1) as usize,
        ));
    }
    let spec_err = if levels.len() == expect.len() {
        levels
            .iter()
            .zip(&expect)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let mult: Vec<usize> = multiplicities(&levels, tol.exact)
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    let expect_mult: Vec<usize> = (0..=cfg.degree as u64)
        .map(|k| binomial(k + n as u64 - 1, n as u64 - 1) as usize)
        .collect();
    let mut ladder: f64 = 0.0;
    for a in 0..n {
        let z = op_raise(&basis, a)?;
        let res = commutator(&h, &z)?.sub(&z.scale(C64::new(hbar, 0.0)))?;
        ladder = ladder.max(res.frobenius_norm_excluding(&basis.top_shell()));
    }

    r.result("dimension", basis.dim());
    r.result("spectrum", levels);
    r.result("multiplicities", mult.clone());
    r.result("ladder_residual", ladder);
    r.check(Check::below(
        "spectrum",
        spec_err,
        tol.exact,
        "spec h = {hbar (|m| + n/2)}",
    ));
    r.check(Check::holds(
        "multiplicities",
        mult == expect_mult,
        "dim of degree-k shell = C(k + n - 1, n - 1)",
    ));
    r.check(Check::below(
        "ladder",
        ladder,
        tol.exact,
        "[h, z_a] = hbar z_a below the top shell",
    ));
    r.note("metaplectic correction applied: ground energy n hbar / 2");
    Ok(())
}

fn spin(cfg: &RunConfig, r: &mut QuantReport) -> Result<()> {
    let (hbar, tol) = (cfg.hbar, &cfg.tolerances);
    let n = cfg.n;
    let basis = SpinBasis::new(n, hbar)?;
    let gram = spin_gram(&basis)?;
    let ops = spin_operators(&basis)?;
    let su2 = check_su2(&basis)?;
    let j3: Vec<f64> = spectrum(&ops.j3, &gram)?.iter().map(|z| z.re).collect();
    let j3_err = j3
        .iter()
        .enumerate()
        .map(|(m, v)| (v - hbar * (m as f64 - n as f64 / 2.0)).abs())
        .fold(0.0, f64::max);
    let exact_casimir = hbar * hbar * (n as f64 / 2.0) * (n as f64 / 2.0 + 1.0);
    let casimir_err = (su2.casimir_scalar - exact_casimir)
        .abs()
        .max(su2.casimir_spread)
        .max(su2.casimir_off_diagonal);
    let relations = su2.raise.max(su2.lower).max(su2.ladder);
    let mut gram_err: f64 = 0.0;
    for m in 0..=n {
        for mp in 0..=n {
            let q = gram_entry_quadrature(n, m, mp, GRAM_NODES)?;
            let exact = if m == mp { monomial_norm_sq(n, m) } else { 0.0 };
            gram_err = gram_err.max((q - C64::new(exact, 0.0)).norm() / monomial_norm_sq(n, m));
        }
    }

    r.result("dimension", basis.dim());
    r.result("casimir", su2.casimir_scalar);
    r.result("casimir_expected", exact_casimir);
    r.result("j3_spectrum", j3);
    r.result("su2_residual", relations);
    r.result("gram_quadrature_error", gram_err);
    r.result("metaplectic_correction", su2.metaplectic_correction);
    r.check(Check::holds(
        "dimension",
        basis.dim() == n as usize + 1,
        "dim H_n = n + 1",
    ));
    r.check(Check::below(
        "casimir",
        casimir_err,
        tol.exact,
        "J^2 = hbar^2 j (j + 1), j = n/2",
    ));
    r.check(Check::below(
        "j3_spectrum",
        j3_err,
        tol.exact,
        "spec J3 = {hbar (m - n/2)}",
    ));
    r.check(Check::below(
        "su2",
        relations,
        tol.exact,
        "[J3, J+-] = +-hbar J+-, [J+, J-] = 2 hbar J3",
    ));
    r.check(Check::below(
        "gram_quadrature",
        gram_err,
        tol.quadrature,
        "<z^m, z^m> = m! (n - m)! / (n + 1)!",
    ));
    r.note("Gram reference from the Beta-function closed form; quadrature is Gauss-Legendre with R = tan(alpha)");
    r.note("no metaplectic correction in the spin sector");
    Ok(())
}

fn canonical(cfg: &RunConfig, r: &mut QuantReport) -> Result<()> {
    let (hbar, tol) = (cfg.hbar, &cfg.tolerances);
    let panel = PanelSpec::default();
    let grid = ConfigGrid::line(10.0, cfg.grid.first, Boundary::ZeroPadded)?;
    let q = Polynomial::q(1, 0)?;
    let p = Polynomial::p(1, 0)?;
    let comm = check_canonical_commutator(&grid, hbar, &panel)?.max;
    let observables = [
        ("q", q.clone()),
        ("p", p.clone()),
        ("qp", q.mul(&p)?),
        ("q^2 p + q", q.mul(&q)?.mul(&p)?.add(&q)?),
    ];
    let mut sa = Vec::with_capacity(observables.len());
    for (_, f) in &observables {
        sa.push(check_selfadjoint(&LinearInP::from_polynomial(f)?, &grid, hbar, &panel)?.max);
    }
    let worst_sa = sa.iter().copied().fold(0.0, f64::max);
    let qp = LinearInP::from_polynomial(&q.mul(&p)?)?;
    let control = check_selfadjoint_with(&qp, &grid, hbar, &panel, DivergenceTerm::Omitted)?.max;

    r.result(
        "observables",
        observables
            .iter()
            .map(|(n, _)| *n)
            .collect::<Vec<_>>()
            .join(", "),
    );
    r.result("commutator_residual", comm);
    r.result("self_adjoint_residuals", sa);
    r.result("divergence_path", "analytic");
    r.result("control_without_div_over_hbar", control / hbar);
    r.check(Check::below(
        "commutator",
        comm,
        tol.grid,
        "[Q_q, Q_p] = i hbar",
    ));
    r.check(Check::below(
        "self_adjoint",
        worst_sa,
        tol.grid,
        "Q_f = -i hbar v.d + u - (i hbar / 2) div v",
    ));
    r.check(Check::above(
        "negative_control",
        control / hbar,
        0.4,
        "defect of Q_qp without -(i hbar / 2) div v",
    ));
    Ok(())
}

fn bks(cfg: &RunConfig, r: &mut QuantReport) -> Result<()> {
    let (hbar, mass, tol) = (cfg.hbar, cfg.mass, &cfg.tolerances);
    let opts = PairingOptions {
        tol: *tol,
        ..PairingOptions::default()
    };
    let points = cfg.grid.first;

    let pgrid = ConfigGrid::line(16.0, points, Boundary::Periodic)?;
    let qgrid = ConfigGrid::line(16.0, points, Boundary::Periodic)?;
    let gauss = |x: &[f64]| C64::new((-x[0] * x[0] / (2.0 * hbar)).exp(), 0.0);
    let phi = PolarizedState::from_fn(pgrid.clone(), Polarization::Momentum, hbar, mass, gauss)?;
    let psi = fourier_project(&phi, &qgrid, tol)?;
    let exact = qgrid.lattice().sample(gauss);
    let lat = qgrid.lattice();
    let gauss_err = relative_residual(lat, psi.samples(), &exact, lat.norm(&exact));

    let mut rng = ChaCha8Rng::seed_from_u64(PARSEVAL_SEED);
    let mut parseval: f64 = 0.0;
    for _ in 0..5 {
        use rand::Rng;
        let bumps: Vec<(f64, f64, f64, f64)> = (0..3)
            .map(|_| {
                (
                    rng.gen_range(-4.0..4.0),
                    rng.gen_range(0.6..1.5),
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(0.2..1.0),
                )
            })
            .collect();
        let state =
            PolarizedState::from_fn(pgrid.clone(), Polarization::Momentum, hbar, mass, |x| {
                bumps
                    .iter()
                    .map(|(c, w, q0, a)| {
                        C64::from_polar(
                            a * (-((x[0] - c) / w).powi(2) / 2.0).exp(),
                            x[0] * q0 / hbar,
                        )
                    })
                    .sum()
            })?;
        let out = fourier_project(&state, &qgrid, tol)?;
        parseval = parseval.max((out.norm() / state.norm() - 1.0).abs());
    }

    let grid = ConfigGrid::line(20.0, points, Boundary::Periodic)?;
    let psi0 = PolarizedState::from_fn(grid, Polarization::Position, hbar, mass, |x| {
        C64::from_polar((-(x[0] - 0.3).powi(2) / 4.5).exp(), 0.5 * x[0])
    })?;
    let fit = schrodinger_residual(&psi0, &cfg.t_list, &PanelSpec::default(), &opts)?;
    let expected = geoquant_core::bks::SchrodingerFit::expected(1, hbar, mass);
    let magnitude = (fit.c_fit.norm() / expected.norm() - 1.0).abs();
    let phase = (fit.c_fit.arg() - expected.arg()).abs();

    let wide = ConfigGrid::line(70.0, 1024, Boundary::Periodic)?;
    let prefactor = C64::from_polar(1.0, FRAC_PI_4) * C64::new(0.0, hbar / (2.0 * mass));
    let mut k2_eff = Vec::new();
    let mut k2_err: f64 = 0.0;
    let mut spread = fit.spread;
    for k in 1..=cfg.k_max {
        let k = k as f64;
        let wave =
            PolarizedState::from_fn(wide.clone(), Polarization::Position, hbar, mass, |x| {
                C64::from_polar((-x[0] * x[0] / 200.0).exp(), k * x[0])
            })?;
        let d = pairing_derivative(&wave, &wave, &cfg.t_list, &opts)?;
        spread = spread.max(d.spread);
        let eff = -(d.derivative / (prefactor * wave.norm().powi(2))).re;
        k2_err = k2_err.max((eff / (k * k) - 1.0).abs());
        k2_eff.push(eff);
    }

    r.result("fourier_gaussian_error", gauss_err);
    r.result("parseval_max_relative", parseval);
    r.result("c_fit", vec![fit.c_fit.re, fit.c_fit.im]);
    r.result("c_expected", vec![expected.re, expected.im]);
    r.result("fit_residual", fit.residual);
    r.result("extrapolation_spread", spread);
    r.result("k2_effective", k2_eff);
    r.result(
        "plane_wave_grid",
        "1024 points on [-70, 70], window exp(-q^2 / 200)",
    );
    r.check(Check::below(
        "fourier_gaussian",
        gauss_err,
        1e-6,
        "psi(q) = (2 pi hbar)^{-1/2} int e^{ipq/hbar} phi(p) dp",
    ));
    r.check(Check::below(
        "parseval",
        parseval,
        tol.parseval,
        "||F phi|| = ||phi||",
    ));
    r.check(Check::below(
        "c_fit_magnitude",
        magnitude,
        tol.bks,
        "|c| = hbar^2 / 2m",
    ));
    r.check(Check::below(
        "c_fit_phase",
        phase,
        1e-2,
        "arg c = -pi n / 4",
    ));
    r.check(Check::below(
        "k2_scaling",
        k2_err,
        1e-2,
        "dP/dt = i^{1/2} (i hbar / 2m) <lap psi, psi> ~ -k^2",
    ));
    r.check(Check::below(
        "extrapolation_spread",
        spread,
        tol.bks,
        "P(t) analytic in t",
    ));
    r.note("expected c = exp(-i pi n/4) hbar^2 / 2m with the branch phase i^{n/2} kept separate");
    r.note("Fourier reference: the Gaussian exp(-x^2 / 2 hbar) is its own transform");
    Ok(())
}
