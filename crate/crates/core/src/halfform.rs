//! Vertical polarization on `T*R^n` with half-forms.
//!
//! Polarized sections are functions of `q` alone, and the half-form `sqrt(d^n q)`
//! is carried implicitly by using the grid measure. An observable
//! `f = u(q) + v(q).p` acts as
//!
//! ```text
//! Q_f psi = -i hbar v.grad psi + (u - (i hbar / 2) div v) psi
//! ```
//!
//! Anything quadratic or higher in `p` does not preserve the polarization and
//! is rejected; the free particle is handled by [`crate::bks`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{Axis, Boundary, Lattice, LatticeOperator, DEFAULT_STENCIL_ORDER};
use crate::linalg::{BasisId, OperatorMatrix, C64};
use crate::panel::{panel, PanelSpec};
use crate::poly::{Monomial, Polynomial, MAX_HALF_DIM};
use crate::prequant::PanelResidual;

/// Fewest points per axis a configuration grid may have.
pub const MIN_CONFIG_POINTS: usize = 16;

/// Discretized configuration space `Q = R^n`, `n` in `{1, 2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigGrid {
    lattice: Lattice,
}

impl ConfigGrid {
    pub fn new(axes: Vec<Axis>, boundary: Boundary) -> Result<Self> {
        Self::with_stencil(axes, boundary, DEFAULT_STENCIL_ORDER)
    }

    pub fn with_stencil(axes: Vec<Axis>, boundary: Boundary, order: usize) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_HALF_DIM {
            return Err(Error::invalid(
                "n",
                format!("configuration dimension must be 1 or 2, got {}", axes.len()),
            ));
        }
        Ok(Self {
            lattice: Lattice::with_stencil(axes, boundary, MIN_CONFIG_POINTS, order)?,
        })
    }

    /// Symmetric 1D grid `[-half_width, half_width)`.
    pub fn line(half_width: f64, points: usize, boundary: Boundary) -> Result<Self> {
        Self::new(alloc::vec![Axis::symmetric(half_width, points)], boundary)
    }

    pub fn n(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn id(&self) -> BasisId {
        let dims: Vec<String> = self
            .lattice
            .axes()
            .iter()
            .map(|a| format!("{}", a.points))
            .collect();
        BasisId::new(format!("halfform/q{}", dims.join("x")))
    }
}

/// How `div v` was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivergencePath {
    /// Exact derivative of a polynomial coefficient.
    Analytic,
    /// Finite-difference stencil on sampled coefficients.
    Stencil,
}

#[derive(Clone, Debug, PartialEq)]
enum Coefficients {
    Poly { u: Polynomial, v: Vec<Polynomial> },
    Sampled { u: Vec<f64>, v: Vec<Vec<f64>> },
}

/// `u`, `v^a` and `div v` on the grid.
type Fields = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>);

/// An observable `u(q) + v(q).p`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearInP {
    n: usize,
    coefficients: Coefficients,
}

impl LinearInP {
    /// Splits a polynomial into `u + v.p`; any term of `p`-degree two or more
    /// is a [`Error::PolarizationViolation`].
    pub fn from_polynomial(f: &Polynomial) -> Result<Self> {
        let n = f.n();
        if f.p_degree() >= 2 {
            return Err(Error::PolarizationViolation {
                reason: format!(
                    "{f} has p-degree {}; quantize it through the bks pairing instead",
                    f.p_degree()
                ),
            });
        }
        let mut u = Vec::new();
        let mut v: Vec<Vec<(Monomial, f64)>> = alloc::vec![Vec::new(); n];
        for (m, c) in f.terms() {
            match (0..n).find(|&a| m.p[a] == 1) {
                None => u.push((*m, *c)),
                Some(a) => {
                    let mut q_only = *m;
                    q_only.p[a] = 0;
                    v[a].push((q_only, *c));
                }
            }
        }
        Ok(Self {
            n,
            coefficients: Coefficients::Poly {
                u: Polynomial::from_terms(n, u)?,
                v: v.into_iter()
                    .map(|t| Polynomial::from_terms(n, t))
                    .collect::<Result<_>>()?,
            },
        })
    }

    /// Coefficients sampled on `grid`; `div v` then goes through the stencil.
    pub fn sampled(grid: &ConfigGrid, u: Vec<f64>, v: Vec<Vec<f64>>) -> Result<Self> {
        let len = grid.lattice().len();
        if v.len() != grid.n() {
            return Err(Error::DimensionMismatch {
                expected: grid.n(),
                found: v.len(),
            });
        }
        for s in core::iter::once(&u).chain(&v) {
            if s.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    found: s.len(),
                });
            }
            if s.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid("coefficients", "samples must be finite"));
            }
        }
        Ok(Self {
            n: grid.n(),
            coefficients: Coefficients::Sampled { u, v },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The polynomial `u + v.p`, when the coefficients are polynomial.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match &self.coefficients {
            Coefficients::Poly { u, v } => {
                let mut f = u.clone();
                for (a, va) in v.iter().enumerate() {
                    f = f.add(&va.mul(&Polynomial::p(self.n, a).ok()?).ok()?).ok()?;
                }
                Some(f)
            }
            Coefficients::Sampled { .. } => None,
        }
    }

    pub fn divergence_path(&self) -> DivergencePath {
        match self.coefficients {
            Coefficients::Poly { .. } => DivergencePath::Analytic,
            Coefficients::Sampled { .. } => DivergencePath::Stencil,
        }
    }

    /// `u`, `v^a` and `div v` sampled on the grid.
    fn fields(&self, grid: &ConfigGrid) -> Result<Fields> {
        if grid.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: grid.n(),
                found: self.n,
            });
        }
        let lat = grid.lattice();
        let zeros_p = [0.0; MAX_HALF_DIM];
        match &self.coefficients {
            Coefficients::Poly { u, v } => {
                let at = |p: &Polynomial| lat.sample(|q| p.eval(q, &zeros_p[..q.len()]));
                let mut div = Polynomial::zero(self.n)?;
                for (a, va) in v.iter().enumerate() {
                    div = div.add(&va.d_dq(a))?;
                }
                Ok((at(u), v.iter().map(at).collect(), at(&div)))
            }
            Coefficients::Sampled { u, v } => {
                let mut div = alloc::vec![0.0; lat.len()];
                for (a, va) in v.iter().enumerate() {
                    let c: Vec<C64> = va.iter().map(|x| C64::new(*x, 0.0)).collect();
                    for (d, dv) in div.iter_mut().zip(lat.derivative(&c, a)?) {
                        *d += dv.re;
                    }
                }
                Ok((u.clone(), v.clone(), div))
            }
        }
    }
}

/// Whether the `-(i hbar/2) div v` term is included; dropping it is only
/// useful as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivergenceTerm {
    Included,
    Omitted,
}

/// Matrix-free `Q_f`.
pub fn halfform_operator(
    f: &LinearInP,
    grid: &ConfigGrid,
    hbar: f64,
    div_term: DivergenceTerm,
) -> Result<LatticeOperator> {
    check_hbar(hbar)?;
    let (u, v, div) = f.fields(grid)?;
    let half = if div_term == DivergenceTerm::Included {
        0.5 * hbar
    } else {
        0.0
    };
    let diag: Vec<C64> = u
        .iter()
        .zip(&div)
        .map(|(u, d)| C64::new(*u, -half * d))
        .collect();
    let mut op = LatticeOperator::multiplication(grid.lattice(), diag)?;
    for (a, va) in v.into_iter().enumerate() {
        op = op.with_first_order(
            a,
            va.into_iter().map(|x| C64::new(0.0, -hbar * x)).collect(),
        )?;
    }
    Ok(op)
}

/// Dense matrix of `Q_f` on the grid.
pub fn quantize_halfform(f: &LinearInP, grid: &ConfigGrid, hbar: f64) -> Result<OperatorMatrix> {
    Ok(halfform_operator(f, grid, hbar, DivergenceTerm::Included)?
        .to_matrix(grid.id())?
        .with_hbar_power(1))
}

/// `max ||[q^a, p_b] psi - i hbar delta_ab psi|| / ||psi||` over the panel and all `a, b`.
pub fn check_canonical_commutator(
    grid: &ConfigGrid,
    hbar: f64,
    spec: &PanelSpec,
) -> Result<PanelResidual> {
    let n = grid.n();
    let lat = grid.lattice();
    let vectors = panel(lat, spec);
    let mut max: f64 = 0.0;
    for a in 0..n {
        let qa = halfform_operator(
            &LinearInP::from_polynomial(&Polynomial::q(n, a)?)?,
            grid,
            hbar,
            DivergenceTerm::Included,
        )?;
        for b in 0..n {
            let pb = halfform_operator(
                &LinearInP::from_polynomial(&Polynomial::p(n, b)?)?,
                grid,
                hbar,
                DivergenceTerm::Included,
            )?;
            let target = if a == b {
                C64::new(0.0, hbar)
            } else {
                C64::new(0.0, 0.0)
            };
            for psi in &vectors {
                let comm = qa.commutator_apply(&pb, psi)?;
                let r: Vec<C64> = comm.iter().zip(psi).map(|(c, x)| c - target * x).collect();
                max = max.max(lat.norm(&r) / lat.norm(psi));
            }
        }
    }
    Ok(PanelResidual {
        max,
        vectors: vectors.len(),
    })
}

/// `max |<psi, Q_f chi> - <Q_f psi, chi>| / (||psi|| ||chi||)` over all panel pairs.
pub fn check_selfadjoint(
    f: &LinearInP,
    grid: &ConfigGrid,
    hbar: f64,
    spec: &PanelSpec,
) -> Result<PanelResidual> {
    check_selfadjoint_with(f, grid, hbar, spec, DivergenceTerm::Included)
}

pub fn check_selfadjoint_with(
    f: &LinearInP,
    grid: &ConfigGrid,
    hbar: f64,
    spec: &PanelSpec,
    div_term: DivergenceTerm,
) -> Result<PanelResidual> {
    let op = halfform_operator(f, grid, hbar, div_term)?;
    crate::prequant::symmetry_residual(&op, &panel(grid.lattice(), spec))
}

/// `max ||[Q_f, Q_g] psi + i hbar Q_{f,g} psi|| / ||psi||` over the panel.
pub fn check_dirac(
    f: &LinearInP,
    g: &LinearInP,
    grid: &ConfigGrid,
    hbar: f64,
    spec: &PanelSpec,
) -> Result<PanelResidual> {
    let (fp, gp) = match (f.as_polynomial(), g.as_polynomial()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::UnsupportedObservable {
                kind: "sampled coefficients have no symbolic bracket".into(),
            })
        }
    };
    let bracket = crate::prequant::poisson_bracket(&fp.into(), &gp.into())?;
    let h = LinearInP::from_polynomial(bracket.as_poly()?)?;
    let (qf, qg, qh) = (
        halfform_operator(f, grid, hbar, DivergenceTerm::Included)?,
        halfform_operator(g, grid, hbar, DivergenceTerm::Included)?,
        halfform_operator(&h, grid, hbar, DivergenceTerm::Included)?,
    );
    let lat = grid.lattice();
    let vectors = panel(lat, spec);
    let mut max: f64 = 0.0;
    for psi in &vectors {
        let comm = qf.commutator_apply(&qg, psi)?;
        let hpsi = qh.apply(psi)?;
        let r: Vec<C64> = comm
            .iter()
            .zip(&hpsi)
            .map(|(c, x)| c + C64::new(0.0, hbar) * x)
            .collect();
        max = max.max(lat.norm(&r) / lat.norm(psi));
    }
    Ok(PanelResidual {
        max,
        vectors: vectors.len(),
    })
}

fn check_hbar(hbar: f64) -> Result<()> {
    if hbar.is_finite() && hbar > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "hbar",
            format!("must be positive and finite, got {hbar}"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prequant::poisson_bracket;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line(points: usize) -> ConfigGrid {
        ConfigGrid::line(10.0, points, Boundary::ZeroPadded).unwrap()
    }

    fn lin(f: &Polynomial) -> LinearInP {
        LinearInP::from_polynomial(f).unwrap()
    }

    fn gaussian(g: &ConfigGrid) -> Vec<C64> {
        g.lattice()
            .sample(|x| C64::new((-x[0] * x[0] / 4.0).exp(), 0.0))
    }

    #[test]
    fn position_is_exact_multiplication() {
        let g = line(32);
        let qhat = quantize_halfform(&lin(&Polynomial::q(1, 0).unwrap()), &g, 0.8).unwrap();
        let coords = g.lattice().axis(0).coords();
        for i in 0..32 {
            for j in 0..32 {
                let expect = if i == j {
                    C64::new(coords[i], 0.0)
                } else {
                    C64::new(0.0, 0.0)
                };
                assert_eq!(qhat.get(i, j), expect);
            }
        }
    }

    #[test]
    fn momentum_and_dilation_forms() {
        let g = line(64);
        let hbar = 0.8;
        let psi = gaussian(&g);
        let dpsi = g.lattice().derivative(&psi, 0).unwrap();
        let coords = g.lattice().axis(0).coords();
        let q = Polynomial::q(1, 0).unwrap();
        let p = Polynomial::p(1, 0).unwrap();
        let ih = C64::new(0.0, hbar);

        let pp = halfform_operator(&lin(&p), &g, hbar, DivergenceTerm::Included)
            .unwrap()
            .apply(&psi)
            .unwrap();
        for (a, d) in pp.iter().zip(&dpsi) {
            assert!((a + ih * d).norm() < 1e-15);
        }

        // q p -> -i hbar q d/dq - i hbar / 2.
        let qp = q.mul(&p).unwrap();
        let out = halfform_operator(&lin(&qp), &g, hbar, DivergenceTerm::Included)
            .unwrap()
            .apply(&psi)
            .unwrap();
        for i in 0..coords.len() {
            let expect = -ih * coords[i] * dpsi[i] - ih * 0.5 * psi[i];
            assert!((out[i] - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn polarization_guard() {
        let p = Polynomial::p(1, 0).unwrap();
        let q = Polynomial::q(1, 0).unwrap();
        let p2 = p.mul(&p).unwrap();
        assert!(matches!(
            LinearInP::from_polynomial(&p2),
            Err(Error::PolarizationViolation { .. })
        ));
        assert!(matches!(
            LinearInP::from_polynomial(&q.mul(&p2).unwrap()),
            Err(Error::PolarizationViolation { .. })
        ));
        let q3 = q.mul(&q).unwrap().mul(&q).unwrap();
        assert!(LinearInP::from_polynomial(&q3).is_ok());
        assert!(LinearInP::from_polynomial(&q.add(&p.scale(3.0)).unwrap()).is_ok());
    }

    #[test]
    fn split_roundtrip_and_linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = ConfigGrid::new(
            alloc::vec![Axis::symmetric(6.0, 24), Axis::symmetric(6.0, 20)],
            Boundary::ZeroPadded,
        )
        .unwrap();
        for _ in 0..10 {
            let f = random_linear(2, &mut rng);
            let h = random_linear(2, &mut rng);
            assert_eq!(lin(&f).as_polynomial().unwrap(), f);
            let (a, b) = (1.5, -0.25);
            let combo = f.scale(a).add(&h.scale(b)).unwrap();
            let lhs = quantize_halfform(&lin(&combo), &g, 0.6).unwrap();
            let rhs = quantize_halfform(&lin(&f), &g, 0.6)
                .unwrap()
                .scale(C64::new(a, 0.0))
                .add(
                    &quantize_halfform(&lin(&h), &g, 0.6)
                        .unwrap()
                        .scale(C64::new(b, 0.0)),
                )
                .unwrap();
            assert!(
                lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-12 * lhs.frobenius_norm().max(1.0)
            );
        }
    }

    fn random_linear(n: usize, rng: &mut ChaCha8Rng) -> Polynomial {
        loop {
            let f = Polynomial::random_integer(n, 2, 3, rng).unwrap();
            let keep: Vec<(Monomial, f64)> = f
                .terms()
                .filter(|(m, _)| m.p_degree() <= 1)
                .map(|(m, c)| (*m, *c))
                .collect();
            let f = Polynomial::from_terms(n, keep).unwrap();
            if f.p_degree() == 1 {
                return f;
            }
        }
    }

    #[test]
    fn bracket_closure_is_symbolic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=2 {
            for _ in 0..50 {
                let f = random_linear(n, &mut rng);
                let g = random_linear(n, &mut rng);
                let h = poisson_bracket(&f.into(), &g.into()).unwrap();
                assert!(h.as_poly().unwrap().p_degree() <= 1);
            }
        }
    }

    #[test]
    fn canonical_relations() {
        let spec = PanelSpec::default();
        let r = check_canonical_commutator(&line(256), 1.0, &spec).unwrap();
        assert!(r.max < 1e-6, "{r:?}");
        let g2 = ConfigGrid::new(
            alloc::vec![Axis::symmetric(10.0, 64), Axis::symmetric(10.0, 64)],
            Boundary::ZeroPadded,
        )
        .unwrap();
        let r2 = check_canonical_commutator(&g2, 0.7, &PanelSpec { count: 3, ..spec }).unwrap();
        assert!(r2.max < 1e-4, "{r2:?}");

        // Same-axis positions commute exactly.
        let g = line(64);
        let q = halfform_operator(
            &lin(&Polynomial::q(1, 0).unwrap()),
            &g,
            1.0,
            DivergenceTerm::Included,
        )
        .unwrap();
        let psi = gaussian(&g);
        assert!(q
            .commutator_apply(&q, &psi)
            .unwrap()
            .iter()
            .all(|z| *z == C64::new(0.0, 0.0)));
    }

    #[test]
    fn fourth_order_convergence() {
        let spec = PanelSpec {
            count: 4,
            ..PanelSpec::default()
        };
        let coarse = ConfigGrid::with_stencil(
            alloc::vec![Axis::symmetric(10.0, 64)],
            Boundary::ZeroPadded,
            4,
        )
        .unwrap();
        let fine = ConfigGrid::with_stencil(
            alloc::vec![Axis::symmetric(10.0, 128)],
            Boundary::ZeroPadded,
            4,
        )
        .unwrap();
        let a = check_canonical_commutator(&coarse, 1.0, &spec).unwrap().max;
        let b = check_canonical_commutator(&fine, 1.0, &spec).unwrap().max;
        assert!(a / b >= 8.0, "coarse {a:e} fine {b:e}");
    }

    #[test]
    fn self_adjointness_and_negative_control() {
        let g = line(256);
        let spec = PanelSpec::default();
        let hbar = 0.9;
        let q = Polynomial::q(1, 0).unwrap();
        let p = Polynomial::p(1, 0).unwrap();
        let qp = lin(&q.mul(&p).unwrap());

        let rq = check_selfadjoint(&lin(&q), &g, hbar, &spec).unwrap();
        assert!(rq.max < 1e-14);
        let rqp = check_selfadjoint(&qp, &g, hbar, &spec).unwrap();
        assert!(rqp.max < 1e-6, "{rqp:?}");
        let bare = check_selfadjoint_with(&qp, &g, hbar, &spec, DivergenceTerm::Omitted).unwrap();
        assert!(bare.max > 0.4 * hbar, "{bare:?}");
        // Integration by parts gives the defect i hbar <psi, chi> exactly.
        assert!((bare.max - hbar).abs() < 1e-6);

        let periodic = ConfigGrid::line(10.0, 128, Boundary::Periodic).unwrap();
        let rp = check_selfadjoint(&lin(&p), &periodic, hbar, &spec).unwrap();
        assert!(rp.max < 1e-6);
    }

    #[test]
    fn dirac_on_linear_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = line(256);
        let spec = PanelSpec {
            count: 4,
            ..PanelSpec::default()
        };
        for _ in 0..6 {
            let f = random_linear(1, &mut rng);
            let h = random_linear(1, &mut rng);
            let r = check_dirac(&lin(&f), &lin(&h), &g, 1.0, &spec).unwrap();
            assert!(r.max < 1e-6, "{f} , {h}: {r:?}");
        }
    }

    #[test]
    fn sampled_divergence_matches_analytic() {
        let g = line(256);
        let f = lin(&Polynomial::q(1, 0)
            .unwrap()
            .mul(&Polynomial::p(1, 0).unwrap())
            .unwrap());
        let coords = g.lattice().axis(0).coords();
        let s = LinearInP::sampled(&g, alloc::vec![0.0; 256], alloc::vec![coords]).unwrap();
        assert_eq!(s.divergence_path(), DivergencePath::Stencil);
        assert_eq!(f.divergence_path(), DivergencePath::Analytic);
        // The stencil divergence is off next to the zero-padded edge, so keep psi well inside.
        let psi: Vec<C64> = g.lattice().sample(|x| C64::new((-x[0] * x[0]).exp(), 0.0));
        let a = halfform_operator(&f, &g, 1.0, DivergenceTerm::Included)
            .unwrap()
            .apply(&psi)
            .unwrap();
        let b = halfform_operator(&s, &g, 1.0, DivergenceTerm::Included)
            .unwrap()
            .apply(&psi)
            .unwrap();
        let lat = g.lattice();
        assert!(crate::lattice::relative_residual(lat, &a, &b, lat.norm(&psi)) < 1e-10);
        assert!(
            LinearInP::sampled(&g, alloc::vec![0.0; 10], alloc::vec![alloc::vec![0.0; 256]])
                .is_err()
        );
    }
}
