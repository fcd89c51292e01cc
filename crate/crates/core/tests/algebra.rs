use geoquant_core::lattice::{Axis, Boundary};
use geoquant_core::linalg::{adjoint_wrt, commutator, spectrum, CMatrix};
use geoquant_core::panel::{interior_gaussian, PanelSpec};
use geoquant_core::poly::Polynomial;
use geoquant_core::prequant::{
    check_dirac, cylinder_spectrum, hamiltonian_vector_field, poisson_bracket, prequantize,
    prequantum_evolve, weil_admissible, EvolveOptions, Observable, PhaseSpaceGrid, SectorSpec,
};
use geoquant_core::{BasisId, Error, GramMatrix, OperatorMatrix, Tolerances, C64};

const TOL: Tolerances = Tolerances::DEFAULT;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn op(rows: usize, entries: &[C64]) -> OperatorMatrix {
    OperatorMatrix::new(
        CMatrix::from_row_slice(rows, rows, entries),
        BasisId::new("test"),
    )
    .unwrap()
}

fn gram(diag: &[f64]) -> GramMatrix {
    GramMatrix::from_diagonal(diag, BasisId::new("test")).unwrap()
}

#[test]
fn pauli_commutator() {
    let x = op(2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
    let y = op(2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
    let z = commutator(&x, &y).unwrap();
    assert_eq!(
        z.entries(),
        &CMatrix::from_row_slice(2, 2, &[c(0., 2.), c(0., 0.), c(0., 0.), c(0., -2.)])
    );
    assert_eq!(commutator(&x, &x).unwrap().frobenius_norm(), 0.0);
}

#[test]
fn commutator_rejects_mixed_bases() {
    let a = OperatorMatrix::identity(2, BasisId::new("a")).unwrap();
    let b = OperatorMatrix::identity(2, BasisId::new("b")).unwrap();
    assert!(matches!(
        commutator(&a, &b),
        Err(Error::BasisMismatch { .. })
    ));
}

#[test]
fn gram_adjoint_of_nilpotent() {
    let a = op(2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
    let adj = adjoint_wrt(&a, &gram(&[1.0, 2.0])).unwrap();
    let expect = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(0.5, 0.), c(0., 0.)]);
    assert!((adj.entries() - expect).norm() < 1e-15);
}

#[test]
fn small_spectra() {
    let d = op(
        3,
        &[
            c(3., 0.),
            c(0., 0.),
            c(0., 0.),
            c(0., 0.),
            c(1., 0.),
            c(0., 0.),
            c(0., 0.),
            c(0., 0.),
            c(2., 0.),
        ],
    );
    let s: Vec<f64> = spectrum(&d, &gram(&[1.0; 3]))
        .unwrap()
        .iter()
        .map(|z| z.re)
        .collect();
    assert_eq!(s, [1.0, 2.0, 3.0]);
    let a = op(2, &[c(2., 0.), c(1., 0.), c(1., 0.), c(2., 0.)]);
    let s: Vec<f64> = spectrum(&a, &gram(&[1.0; 2]))
        .unwrap()
        .iter()
        .map(|z| z.re)
        .collect();
    assert!((s[0] - 1.0).abs() < 1e-12 && (s[1] - 3.0).abs() < 1e-12);
}

#[test]
fn vector_fields_and_brackets() {
    let q = Polynomial::q(1, 0).unwrap();
    let p = Polynomial::p(1, 0).unwrap();
    // X_q = -d/dp, so X_q[p] = -1.
    let xq = hamiltonian_vector_field(&Observable::from(q.clone())).unwrap();
    assert_eq!(
        xq.apply(&p).unwrap(),
        Polynomial::constant(1, -1.0).unwrap()
    );
    // X_{p^2/2} = p d/dq.
    let free = hamiltonian_vector_field(&Observable::from(p.mul(&p).unwrap().scale(0.5))).unwrap();
    assert_eq!(free.apply(&q).unwrap(), p);
    assert!(
        hamiltonian_vector_field(&Observable::from(Polynomial::constant(1, 4.0).unwrap()))
            .unwrap()
            .is_zero()
    );

    let qp = poisson_bracket(&q.clone().into(), &p.clone().into()).unwrap();
    assert_eq!(
        qp.as_poly().unwrap(),
        &Polynomial::constant(1, -1.0).unwrap()
    );
    let q2p = poisson_bracket(&q.mul(&q).unwrap().into(), &p.into()).unwrap();
    assert_eq!(q2p.as_poly().unwrap(), &q.scale(-2.0));
}

#[test]
fn momentum_prequantizes_to_derivative() {
    let hbar = 0.8;
    let grid = PhaseSpaceGrid::new(
        1,
        Axis::symmetric(6.0, 64),
        Axis::symmetric(6.0, 64),
        Boundary::ZeroPadded,
    )
    .unwrap();
    let lat = grid.lattice();
    let psi = interior_gaussian(lat, &[0.3, -0.2], &[0.4, 0.1], 0.6);
    let pp = prequantize(&Polynomial::p(1, 0).unwrap().into(), &grid, hbar).unwrap();
    let expect: Vec<C64> = lat
        .derivative(&psi, 0)
        .unwrap()
        .iter()
        .map(|d| c(0., -hbar) * d)
        .collect();
    let got = pp.apply(&psi).unwrap();
    let err: f64 = got
        .iter()
        .zip(&expect)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(err < 1e-12, "{err}");

    let one = prequantize(&Polynomial::constant(1, 1.0).unwrap().into(), &grid, hbar).unwrap();
    assert_eq!(one.apply(&psi).unwrap(), psi);
}

#[test]
fn dirac_on_quadratic_pair() {
    let grid = PhaseSpaceGrid::new(
        1,
        Axis::symmetric(6.0, 96),
        Axis::symmetric(6.0, 96),
        Boundary::ZeroPadded,
    )
    .unwrap();
    let q = Polynomial::q(1, 0).unwrap();
    let f = Observable::from(q.mul(&q).unwrap());
    let g = Observable::from(Polynomial::p(1, 0).unwrap());
    let panel = PanelSpec::default();
    assert!(check_dirac(&f, &g, &grid, 1.0, &panel).unwrap().max < TOL.grid);
    assert!(check_dirac(&f, &f, &grid, 1.0, &panel).unwrap().max < TOL.machine);
}

#[test]
fn weil_examples() {
    let hbar = 1.0;
    let half = weil_admissible(&SectorSpec::sphere(0.5, hbar).unwrap(), &TOL).unwrap();
    assert!(half.admissible && half.nearest_n == 1);
    assert!((half.integral - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    let one = weil_admissible(&SectorSpec::sphere(1.0, hbar).unwrap(), &TOL).unwrap();
    assert!(one.admissible && one.nearest_n == 2);
    assert!(
        !weil_admissible(&SectorSpec::sphere(0.7, hbar).unwrap(), &TOL)
            .unwrap()
            .admissible
    );
}

#[test]
fn cylinder_examples() {
    let s = cylinder_spectrum(&SectorSpec::cylinder(0.0, 1.0).unwrap(), 2).unwrap();
    assert_eq!(s, [-2.0, -1.0, 0.0, 1.0, 2.0]);
    let s = cylinder_spectrum(&SectorSpec::cylinder(0.5, 1.0).unwrap(), 1).unwrap();
    assert_eq!(s, [-0.5, 0.5, 1.5]);
    assert!(SectorSpec::cylinder(1.0, 1.0).is_err());
}

#[test]
fn momentum_flow_translates() {
    let grid = PhaseSpaceGrid::new(
        1,
        Axis::symmetric(8.0, 128),
        Axis::symmetric(8.0, 128),
        Boundary::ZeroPadded,
    )
    .unwrap();
    let lat = grid.lattice();
    let psi0 = interior_gaussian(lat, &[0.0, 0.0], &[0.0, 0.0], 0.5);
    let zero = Observable::from(Polynomial::zero(1).unwrap());
    let same = prequantum_evolve(
        &zero,
        &psi0,
        0.7,
        &EvolveOptions::default(),
        &grid,
        1.0,
        &TOL,
    )
    .unwrap();
    let err: f64 = same
        .state
        .iter()
        .zip(&psi0)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(err < 1e-12);

    // The flow of p moves q by t and L_p = 0, so psi_t(q, p) = psi_0(q + t, p) on the lattice
    // for a shift of exactly two cells.
    let t = 2.0 * lat.axis(0).spacing();
    let moved = prequantum_evolve(
        &Observable::from(Polynomial::p(1, 0).unwrap()),
        &psi0,
        t,
        &EvolveOptions::default(),
        &grid,
        1.0,
        &TOL,
    )
    .unwrap();
    let exact = interior_shifted(lat, t);
    let err: f64 = moved
        .state
        .iter()
        .zip(&exact)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(err < 1e-10, "{err}");
}

fn interior_shifted(lat: &geoquant_core::lattice::Lattice, t: f64) -> Vec<C64> {
    let sigma = geoquant_core::panel::interior_sigma(lat, 0, 0.0, 0.5);
    let sigma_p = geoquant_core::panel::interior_sigma(lat, 1, 0.0, 0.5);
    lat.sample(|x| {
        let u = (x[0] + t) / sigma;
        let v = x[1] / sigma_p;
        c((-0.5 * (u * u + v * v)).exp(), 0.0)
    })
}
