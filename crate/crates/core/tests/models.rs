use geoquant_core::bks::{
    bks_pairing, fourier_project, inverse_fourier_project, PairingOptions, Polarization,
    PolarizedState,
};
use geoquant_core::fock::{
    fock_gram, gram_entry_quadrature as fock_quadrature, monomial_norm_sq as fock_norm, op_lower,
    op_raise, oscillator_hamiltonian, polarization_preserving, FockBasis, QuadraticSymbol,
};
use geoquant_core::halfform::{
    check_canonical_commutator, check_selfadjoint, check_selfadjoint_with, halfform_operator,
    ConfigGrid, DivergenceTerm, LinearInP,
};
use geoquant_core::lattice::{relative_residual, Boundary};
use geoquant_core::linalg::{self_adjoint_defect, spectrum};
use geoquant_core::panel::PanelSpec;
use geoquant_core::poly::Polynomial;
use geoquant_core::spin::{
    check_su2, gram_entry_quadrature, monomial_norm_sq, orthonormal_constants, spin_gram,
    spin_operators, SpinBasis,
};
use geoquant_core::{Error, Tolerances, C64};

const TOL: Tolerances = Tolerances::DEFAULT;

#[test]
fn fock_norms_match_radial_quadrature() {
    for hbar in [1.0, 0.4] {
        assert!((fock_norm(&[0], hbar) - 1.0).abs() < 1e-15);
        assert!((fock_norm(&[1], hbar) - 2.0 * hbar).abs() < 1e-14);
        assert!((fock_norm(&[2], hbar) - 8.0 * hbar * hbar).abs() < 1e-14);
        for m in 0..5u32 {
            let q = fock_quadrature(&[m], &[m], hbar, 60, 12).unwrap();
            assert!((q.re / fock_norm(&[m], hbar) - 1.0).abs() < 1e-10, "m={m}");
        }
    }
}

#[test]
fn oscillator_levels() {
    let hbar = 0.7;
    let b = FockBasis::new(1, 3, hbar).unwrap();
    let levels: Vec<f64> = spectrum(
        &oscillator_hamiltonian(&b).unwrap(),
        &fock_gram(&b).unwrap(),
    )
    .unwrap()
    .iter()
    .map(|z| z.re)
    .collect();
    assert!((levels[0] - hbar / 2.0).abs() < 1e-12);
    assert!((levels[3] - 3.5 * hbar).abs() < 1e-12);

    let b2 = FockBasis::new(2, 2, hbar).unwrap();
    let h2 = oscillator_hamiltonian(&b2).unwrap();
    let i = b2.index_of(&[1, 1]).unwrap();
    assert!((h2.get(i, i).re - 3.0 * hbar).abs() < 1e-12);
}

#[test]
fn raising_and_truncation() {
    let b = FockBasis::new(1, 3, 1.0).unwrap();
    let z = op_raise(&b, 0).unwrap();
    assert_eq!(z.get(1, 0), C64::new(1.0, 0.0));
    assert!((0..b.dim()).all(|i| z.get(i, 3) == C64::new(0.0, 0.0)));
    assert_eq!(z.truncated(), &[3]);
    let d = op_lower(&b, 0).unwrap();
    assert!((0..b.dim()).all(|i| d.get(i, 0) == C64::new(0.0, 0.0)));
}

#[test]
fn preserving_symbols() {
    let b = FockBasis::new(1, 4, 1.0).unwrap();
    let g = fock_gram(&b).unwrap();
    let constant = polarization_preserving(
        &b,
        &QuadraticSymbol::preserving(
            2.5,
            vec![C64::new(0.0, 0.0)],
            vec![vec![C64::new(0.0, 0.0)]],
        ),
        &TOL,
    )
    .unwrap();
    assert!((0..b.dim()).all(|i| (constant.get(i, i) - C64::new(2.5, 0.0)).norm() < 1e-15));

    let linear = polarization_preserving(
        &b,
        &QuadraticSymbol::preserving(
            0.0,
            vec![C64::new(1.0, 0.0)],
            vec![vec![C64::new(0.0, 0.0)]],
        ),
        &TOL,
    )
    .unwrap();
    let defect = self_adjoint_defect(&linear, &g).unwrap();
    assert!(defect < 1e-12, "{defect}");

    let mut squeeze = QuadraticSymbol::zero(1);
    squeeze.zz[0][0] = C64::new(1.0, 0.0);
    assert!(matches!(
        polarization_preserving(&b, &squeeze, &TOL),
        Err(Error::PolarizationViolation { .. })
    ));
}

#[test]
fn spin_gram_examples() {
    assert!((monomial_norm_sq(2, 1) - 1.0 / 6.0).abs() < 1e-15);
    assert!((monomial_norm_sq(1, 0) - 0.5).abs() < 1e-15);
    assert!(gram_entry_quadrature(3, 1, 2, 40).unwrap().norm() < 1e-14);
    let q = gram_entry_quadrature(2, 1, 1, 40).unwrap();
    assert!((q.re - 1.0 / 6.0).abs() < 1e-14);

    let c = orthonormal_constants(&SpinBasis::new(2, 1.0).unwrap());
    assert!((c[1] - 6f64.sqrt()).abs() < 1e-14);
    assert!(
        (orthonormal_constants(&SpinBasis::new(1, 1.0).unwrap())[0] - 2f64.sqrt()).abs() < 1e-14
    );
    assert_eq!(
        orthonormal_constants(&SpinBasis::new(0, 1.0).unwrap()),
        [1.0]
    );
}

#[test]
fn spin_casimirs() {
    let hbar = 0.6;
    let zero = SpinBasis::new(0, hbar).unwrap();
    let ops = spin_operators(&zero).unwrap();
    assert_eq!(
        ops.j3.frobenius_norm() + ops.j_plus.frobenius_norm() + ops.j_minus.frobenius_norm(),
        0.0
    );
    let r = check_su2(&zero).unwrap();
    assert_eq!(
        (r.raise, r.lower, r.ladder, r.casimir_scalar),
        (0.0, 0.0, 0.0, 0.0)
    );

    for (n, j) in [(1, 0.5), (2, 1.0)] {
        let r = check_su2(&SpinBasis::new(n, hbar).unwrap()).unwrap();
        assert!((r.casimir_scalar - hbar * hbar * j * (j + 1.0)).abs() < 1e-12);
        assert!(r.casimir_off_diagonal < 1e-12 && r.casimir_spread < 1e-12);
        assert!(!r.metaplectic_correction);
    }
    let b = SpinBasis::new(3, hbar).unwrap();
    assert!(
        self_adjoint_defect(&spin_operators(&b).unwrap().j3, &spin_gram(&b).unwrap()).unwrap()
            < 1e-12
    );
}

#[test]
fn halfform_admissible_observables() {
    let q = Polynomial::q(1, 0).unwrap();
    let p = Polynomial::p(1, 0).unwrap();
    assert!(matches!(
        LinearInP::from_polynomial(&p.mul(&p).unwrap()),
        Err(Error::PolarizationViolation { .. })
    ));
    assert!(LinearInP::from_polynomial(&q.mul(&q).unwrap().mul(&q).unwrap()).is_ok());
    assert!(LinearInP::from_polynomial(&q.add(&p.scale(3.0)).unwrap()).is_ok());
}

#[test]
fn halfform_qp_operator() {
    let hbar = 0.9;
    let grid = ConfigGrid::line(10.0, 128, Boundary::ZeroPadded).unwrap();
    let lat = grid.lattice();
    let qp = LinearInP::from_polynomial(
        &Polynomial::q(1, 0)
            .unwrap()
            .mul(&Polynomial::p(1, 0).unwrap())
            .unwrap(),
    )
    .unwrap();
    let op = halfform_operator(&qp, &grid, hbar, DivergenceTerm::Included).unwrap();
    let psi = lat.sample(|x| C64::from_polar((-x[0] * x[0] / 2.0).exp(), 0.3 * x[0]));
    let dpsi = lat.derivative(&psi, 0).unwrap();
    let expect: Vec<C64> = (0..lat.len())
        .map(|i| {
            C64::new(0.0, -hbar) * lat.point(i)[0] * dpsi[i] - C64::new(0.0, hbar / 2.0) * psi[i]
        })
        .collect();
    let got = op.apply(&psi).unwrap();
    assert!(relative_residual(lat, &got, &expect, lat.norm(&psi)) < 1e-12);
}

#[test]
fn halfform_relations() {
    let panel = PanelSpec::default();
    let hbar = 1.0;
    let line = ConfigGrid::line(10.0, 256, Boundary::ZeroPadded).unwrap();
    assert!(check_canonical_commutator(&line, hbar, &panel).unwrap().max < TOL.grid);
    let q = LinearInP::from_polynomial(&Polynomial::q(1, 0).unwrap()).unwrap();
    assert!(check_selfadjoint(&q, &line, hbar, &panel).unwrap().max < TOL.machine);
    let periodic = ConfigGrid::line(10.0, 256, Boundary::Periodic).unwrap();
    let p = LinearInP::from_polynomial(&Polynomial::p(1, 0).unwrap()).unwrap();
    assert!(check_selfadjoint(&p, &periodic, hbar, &panel).unwrap().max < TOL.grid);
    let qp = LinearInP::from_polynomial(
        &Polynomial::q(1, 0)
            .unwrap()
            .mul(&Polynomial::p(1, 0).unwrap())
            .unwrap(),
    )
    .unwrap();
    assert!(
        check_selfadjoint_with(&qp, &line, hbar, &panel, DivergenceTerm::Omitted)
            .unwrap()
            .max
            > 0.5 * hbar
    );
}

#[test]
fn gaussian_fourier_pair() {
    let hbar = 0.5;
    let grid = ConfigGrid::line(12.0, 192, Boundary::Periodic).unwrap();
    let gauss = |x: &[f64]| C64::new((-x[0] * x[0] / (2.0 * hbar)).exp(), 0.0);
    let phi =
        PolarizedState::from_fn(grid.clone(), Polarization::Momentum, hbar, 1.0, gauss).unwrap();
    let psi = fourier_project(&phi, &grid, &TOL).unwrap();
    let exact = grid.lattice().sample(gauss);
    let lat = grid.lattice();
    assert!(relative_residual(lat, psi.samples(), &exact, lat.norm(&exact)) < 1e-10);
    let back = inverse_fourier_project(&psi, &grid, &TOL).unwrap();
    assert!(relative_residual(lat, back.samples(), phi.samples(), phi.norm()) < 1e-10);
}

#[test]
fn pairing_limit_and_escape() {
    let grid = ConfigGrid::line(20.0, 256, Boundary::Periodic).unwrap();
    let psi = PolarizedState::from_fn(grid.clone(), Polarization::Position, 1.0, 1.0, |x| {
        C64::new((-x[0] * x[0] / 4.0).exp(), 0.0)
    })
    .unwrap();
    let r = bks_pairing(&psi, &psi, 1e-6, &PairingOptions::default()).unwrap();
    let expect = r.branch_phase * psi.inner(&psi).unwrap();
    assert!((r.value - expect).norm() / expect.norm() < 1e-5);

    let wide = PolarizedState::from_fn(grid, Polarization::Position, 1.0, 1.0, |x| {
        C64::new((-x[0] * x[0] / 200.0).exp(), 0.0)
    })
    .unwrap();
    assert!(matches!(
        bks_pairing(&wide, &wide, 0.01, &PairingOptions::default()),
        Err(Error::SupportEscapesGrid { .. })
    ));
}
