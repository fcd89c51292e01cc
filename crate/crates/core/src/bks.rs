//! Pairing between the position and momentum polarizations, and the
//! free-particle generator obtained from the small-time pairing.
//!
//! The projection from momentum to position wave functions is the Fourier
//! transform generated by `S = p.q`:
//!
//! ```text
//! (Pi phi)(q) = (2 pi hbar)^{-n/2} int phi(p) exp(i p.q / hbar) d^n p
//! ```
//!
//! For `h = p^2/2m` the pairing of the flowed section with `chi` is
//!
//! ```text
//! P(t) = (t / 2 pi hbar m)^{n/2} int conj(psi(q + t p/m)) chi(q) exp(i p^2 t / 2 m hbar) d^n p d^n q
//! ```
//!
//! Its momentum integral is done on the rotated contour `p = e^{i pi/4} s`,
//! where the chirp becomes a Gaussian and Gauss-Hermite applies. That needs
//! `conj(psi(q + z))` at complex `z`, which comes from the trigonometric
//! interpolant of the samples (states must vanish at the grid edge). With the
//! principal branch, `P(t) = i^{n/2} [<psi, chi> + (i hbar t / 2m) <lap psi, chi>] + O(t^2)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_traits::Float;

use crate::error::{Error, Result};
use crate::halfform::ConfigGrid;
use crate::lattice::Lattice;
use crate::linalg::C64;
use crate::panel::{panel, PanelSpec};
use crate::quadrature::gauss_hermite;
use crate::tolerance::Tolerances;

/// Width of the edge band checked for escaping support.
pub const EDGE_BAND: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarization {
    Position,
    Momentum,
}

/// Samples of a polarized wave function on a 1D or 2D grid.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizedState {
    grid: ConfigGrid,
    samples: Vec<C64>,
    polarization: Polarization,
    hbar: f64,
    mass: f64,
}

impl PolarizedState {
    pub fn new(
        grid: ConfigGrid,
        samples: Vec<C64>,
        polarization: Polarization,
        hbar: f64,
        mass: f64,
    ) -> Result<Self> {
        positive("hbar", hbar)?;
        positive("mass", mass)?;
        if samples.len() != grid.lattice().len() {
            return Err(Error::DimensionMismatch {
                expected: grid.lattice().len(),
                found: samples.len(),
            });
        }
        if samples
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::invalid("samples", "state samples must be finite"));
        }
        Ok(Self {
            grid,
            samples,
            polarization,
            hbar,
            mass,
        })
    }

    pub fn from_fn(
        grid: ConfigGrid,
        polarization: Polarization,
        hbar: f64,
        mass: f64,
        f: impl FnMut(&[f64]) -> C64,
    ) -> Result<Self> {
        let samples = grid.lattice().sample(f);
        Self::new(grid, samples, polarization, hbar, mass)
    }

    pub fn grid(&self) -> &ConfigGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn norm(&self) -> f64 {
        self.grid.lattice().norm(&self.samples)
    }

    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.check_compatible(other)?;
        Ok(self.grid.lattice().inner(&self.samples, &other.samples))
    }

    /// Same state with `mass` replaced.
    pub fn with_mass(mut self, mass: f64) -> Result<Self> {
        positive("mass", mass)?;
        self.mass = mass;
        Ok(self)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::BasisMismatch {
                left: self.grid.id().as_str().into(),
                right: other.grid.id().as_str().into(),
            });
        }
        if self.polarization != other.polarization {
            return Err(Error::BasisMismatch {
                left: format!("{:?}", self.polarization),
                right: format!("{:?}", other.polarization),
            });
        }
        if self.hbar != other.hbar || self.mass != other.mass {
            return Err(Error::invalid(
                "hbar",
                "paired states must share hbar and mass",
            ));
        }
        Ok(())
    }

    fn check_support(&self, tol: &Tolerances) -> Result<()> {
        let tail = self
            .grid
            .lattice()
            .edge_mass_fraction(&self.samples, EDGE_BAND);
        if tail > tol.support_tail {
            Err(Error::SupportEscapesGrid {
                tail_fraction: tail,
                limit: tol.support_tail,
            })
        } else {
            Ok(())
        }
    }
}

fn positive(field: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            field,
            format!("must be positive and finite, got {x}"),
        ))
    }
}

/// Applies `kernel(out_index, in_index)` along axis `d` of a row-major array.
fn transform_axis(
    data: &[C64],
    shape: &[usize],
    d: usize,
    out_len: usize,
    kernel: &[C64],
) -> (Vec<C64>, Vec<usize>) {
    let in_len = shape[d];
    let inner: usize = shape[d + 1..].iter().product();
    let outer: usize = shape[..d].iter().product();
    let mut out = vec![C64::new(0.0, 0.0); outer * out_len * inner];
    for o in 0..outer {
        for i in 0..inner {
            for r in 0..out_len {
                let row = &kernel[r * in_len..(r + 1) * in_len];
                let mut acc = C64::new(0.0, 0.0);
                for (j, k) in row.iter().enumerate() {
                    acc += k * data[(o * in_len + j) * inner + i];
                }
                out[(o * out_len + r) * inner + i] = acc;
            }
        }
    }
    let mut new_shape = shape.to_vec();
    new_shape[d] = out_len;
    (out, new_shape)
}

fn shape(lattice: &Lattice) -> Vec<usize> {
    lattice.axes().iter().map(|a| a.points).collect()
}

/// Quadrature of `(2 pi hbar)^{-n/2} int phi(p) exp(sign i p.q / hbar) d^n p` onto `target`.
fn fourier_quadrature(
    state: &PolarizedState,
    target: &ConfigGrid,
    sign: f64,
    tol: &Tolerances,
) -> Result<Vec<C64>> {
    if target.n() != state.n() {
        return Err(Error::DimensionMismatch {
            expected: state.n(),
            found: target.n(),
        });
    }
    state.check_support(tol)?;
    let (src, dst) = (state.grid.lattice(), target.lattice());
    let hbar = state.hbar;
    let mut data = state.samples.clone();
    let mut sh = shape(src);
    for d in 0..state.n() {
        let (a_in, a_out) = (src.axis(d), dst.axis(d));
        let scale = a_in.spacing() / Float::sqrt(2.0 * core::f64::consts::PI * hbar);
        let mut kernel = Vec::with_capacity(a_out.points * a_in.points);
        for r in 0..a_out.points {
            let q = a_out.coord(r);
            for j in 0..a_in.points {
                kernel.push(C64::from_polar(scale, sign * a_in.coord(j) * q / hbar));
            }
        }
        let (next, next_shape) = transform_axis(&data, &sh, d, a_out.points, &kernel);
        data = next;
        sh = next_shape;
    }
    Ok(data)
}

/// Momentum to position wave function.
pub fn fourier_project(
    phi: &PolarizedState,
    target: &ConfigGrid,
    tol: &Tolerances,
) -> Result<PolarizedState> {
    if phi.polarization != Polarization::Momentum {
        return Err(Error::invalid(
            "polarization",
            "fourier_project expects a momentum-polarized state",
        ));
    }
    let samples = fourier_quadrature(phi, target, 1.0, tol)?;
    PolarizedState::new(
        target.clone(),
        samples,
        Polarization::Position,
        phi.hbar,
        phi.mass,
    )
}

/// Position to momentum wave function, the kernel with the opposite sign.
pub fn inverse_fourier_project(
    psi: &PolarizedState,
    target: &ConfigGrid,
    tol: &Tolerances,
) -> Result<PolarizedState> {
    if psi.polarization != Polarization::Position {
        return Err(Error::invalid(
            "polarization",
            "inverse_fourier_project expects a position-polarized state",
        ));
    }
    let samples = fourier_quadrature(psi, target, -1.0, tol)?;
    PolarizedState::new(
        target.clone(),
        samples,
        Polarization::Momentum,
        psi.hbar,
        psi.mass,
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairingOptions {
    /// Gauss-Hermite nodes per momentum axis; the check reruns with twice as many.
    pub nodes: usize,
    pub tol: Tolerances,
}

pub const DEFAULT_HERMITE_NODES: usize = 24;

impl Default for PairingOptions {
    fn default() -> Self {
        Self {
            nodes: DEFAULT_HERMITE_NODES,
            tol: Tolerances::DEFAULT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairingResult {
    pub value: C64,
    pub t: f64,
    /// `(t / 2 pi hbar m)^{n/2}`.
    pub half_form_factor: f64,
    /// `i^{n/2}` on the principal branch, the value of
    /// `(t / 2 pi hbar m)^{n/2} int exp(i p^2 t / 2 m hbar) d^n p`.
    pub branch_phase: C64,
    /// Change between `nodes` and `2 nodes`, relative to `||psi|| ||chi||`.
    pub doubling_change: f64,
    pub nodes: usize,
}

/// Discrete Fourier data of a state on its periodic extension:
/// `coeffs[k] = sum_x v(x) exp(-i k.(x - x0))` along every axis.
struct Spectrum {
    coeffs: Vec<C64>,
    /// Angular wavenumbers per axis; the Nyquist entry is flagged.
    wavenumbers: Vec<Vec<(f64, bool)>>,
}

fn spectrum(lattice: &Lattice, v: &[C64], sign: f64) -> Spectrum {
    let mut data = v.to_vec();
    let mut sh = shape(lattice);
    let mut wavenumbers = Vec::new();
    for d in 0..lattice.rank() {
        let a = lattice.axis(d);
        let n = a.points;
        let kernel: Vec<C64> = (0..n * n)
            .map(|rj| {
                let (r, j) = (rj / n, rj % n);
                C64::from_polar(
                    1.0,
                    sign * core::f64::consts::TAU * ((r * j) % n) as f64 / n as f64,
                )
            })
            .collect();
        let (next, next_shape) = transform_axis(&data, &sh, d, n, &kernel);
        data = next;
        sh = next_shape;
        let base = core::f64::consts::TAU / (n as f64 * a.spacing());
        wavenumbers.push(
            (0..n)
                .map(|r| {
                    let signed = if 2 * r < n {
                        r as isize
                    } else {
                        r as isize - n as isize
                    };
                    (base * signed as f64, 2 * r == n)
                })
                .collect(),
        );
    }
    Spectrum {
        coeffs: data,
        wavenumbers,
    }
}

/// Factor `exp(i k z)` of the trigonometric interpolant; the Nyquist mode
/// enters as `cos(k z)` so real data stay real.
fn mode_phase(k: f64, nyquist: bool, z: C64) -> C64 {
    let arg = C64::new(0.0, k) * z;
    if nyquist {
        (arg.exp() + (-arg).exp()) * 0.5
    } else {
        arg.exp()
    }
}

/// `sum_x chi(x) conj(psi)(x + delta) dV` for every shift `delta`, using the
/// trigonometric interpolant of `conj(psi)`.
struct ShiftedOverlap {
    /// `conj(psi)^(k) * chi^(-k) * dV / N`.
    weights: Vec<C64>,
    wavenumbers: Vec<Vec<(f64, bool)>>,
    shape: Vec<usize>,
}

impl ShiftedOverlap {
    fn new(lattice: &Lattice, psi: &[C64], chi: &[C64]) -> Self {
        let conj: Vec<C64> = psi.iter().map(|z| z.conj()).collect();
        let p = spectrum(lattice, &conj, -1.0);
        let c = spectrum(lattice, chi, 1.0);
        let scale = lattice.cell_volume() / lattice.len() as f64;
        Self {
            weights: p
                .coeffs
                .iter()
                .zip(&c.coeffs)
                .map(|(a, b)| a * b * scale)
                .collect(),
            wavenumbers: p.wavenumbers,
            shape: shape(lattice),
        }
    }

    fn at(&self, delta: &[C64]) -> C64 {
        let phases: Vec<Vec<C64>> = self
            .wavenumbers
            .iter()
            .zip(delta)
            .map(|(ks, z)| ks.iter().map(|(k, ny)| mode_phase(*k, *ny, *z)).collect())
            .collect();
        let mut acc = C64::new(0.0, 0.0);
        for (flat, w) in self.weights.iter().enumerate() {
            let mut ph = C64::new(1.0, 0.0);
            let mut rem = flat;
            for d in (0..self.shape.len()).rev() {
                ph *= phases[d][rem % self.shape[d]];
                rem /= self.shape[d];
            }
            acc += w * ph;
        }
        acc
    }
}

fn rotated_sum(overlap: &ShiftedOverlap, n: usize, reach: f64, nodes: usize) -> Result<C64> {
    let rule = gauss_hermite(nodes)?;
    let rot = C64::from_polar(1.0, core::f64::consts::FRAC_PI_4);
    let mut acc = C64::new(0.0, 0.0);
    let total = nodes.pow(n as u32);
    let mut delta = vec![C64::new(0.0, 0.0); n];
    for flat in 0..total {
        let mut w = 1.0;
        let mut rem = flat;
        for d in delta.iter_mut() {
            let j = rem % nodes;
            rem /= nodes;
            w *= rule.weights[j];
            *d = rot * (reach * rule.nodes[j]);
        }
        acc += overlap.at(&delta) * w;
    }
    Ok(acc * (rot / Float::sqrt(core::f64::consts::PI)).powi(n as i32))
}

fn pairing_with(
    overlap: &ShiftedOverlap,
    n: usize,
    t: f64,
    hbar: f64,
    mass: f64,
    opts: &PairingOptions,
    scale: f64,
) -> Result<PairingResult> {
    positive("t", t)?;
    if opts.nodes < 2 {
        return Err(Error::invalid(
            "nodes",
            "at least two Gauss-Hermite nodes are needed",
        ));
    }
    let reach = Float::sqrt(2.0 * hbar * t / mass);
    let coarse = rotated_sum(overlap, n, reach, opts.nodes)?;
    let fine = rotated_sum(overlap, n, reach, 2 * opts.nodes)?;
    let change = if scale > 0.0 {
        (fine - coarse).norm() / scale
    } else {
        0.0
    };
    if change > opts.tol.bks {
        return Err(Error::QuadratureFailure {
            change,
            limit: opts.tol.bks,
        });
    }
    Ok(PairingResult {
        value: fine,
        t,
        half_form_factor: Float::powf(
            t / (2.0 * core::f64::consts::PI * hbar * mass),
            n as f64 / 2.0,
        ),
        branch_phase: C64::from_polar(1.0, core::f64::consts::FRAC_PI_4 * n as f64),
        doubling_change: change,
        nodes: 2 * opts.nodes,
    })
}

/// The pairing `P(t)` of the flowed `psi` with `chi`, both position-polarized.
pub fn bks_pairing(
    psi: &PolarizedState,
    chi: &PolarizedState,
    t: f64,
    opts: &PairingOptions,
) -> Result<PairingResult> {
    psi.check_compatible(chi)?;
    if psi.polarization != Polarization::Position {
        return Err(Error::invalid(
            "polarization",
            "the pairing acts on position-polarized states",
        ));
    }
    psi.check_support(&opts.tol)?;
    chi.check_support(&opts.tol)?;
    let lat = psi.grid.lattice();
    let overlap = ShiftedOverlap::new(lat, &psi.samples, &chi.samples);
    pairing_with(
        &overlap,
        psi.n(),
        t,
        psi.hbar,
        psi.mass,
        opts,
        psi.norm() * chi.norm(),
    )
}

/// `(t / 2 pi hbar m)^{n/2} int p_1^power exp(i p^2 t / 2 m hbar) d^n p` on the rotated contour.
///
/// The closed forms are `i^{n/2}` for power 0, zero for odd powers and
/// `i^{n/2} (i m hbar / t)` for power 2.
pub fn momentum_moment(
    n: usize,
    power: u32,
    t: f64,
    hbar: f64,
    mass: f64,
    nodes: usize,
) -> Result<C64> {
    positive("t", t)?;
    let rule = gauss_hermite(nodes)?;
    let rot = C64::from_polar(1.0, core::f64::consts::FRAC_PI_4);
    let s = Float::sqrt(2.0 * mass * hbar / t);
    let first: C64 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(u, w)| (rot * s * *u).powi(power as i32) * *w)
        .sum();
    // Each remaining axis contributes its zeroth moment, i^{1/2}.
    Ok(first / Float::sqrt(core::f64::consts::PI) * rot * rot.powi(n as i32 - 1))
}

/// Geometric `t` values used when none are supplied.
pub fn default_t_list() -> Vec<f64> {
    (0..6).map(|k| 0.04 / f64::from(1u32 << k)).collect()
}

pub const MIN_T_VALUES: usize = 4;
pub const MAX_T_VALUES: usize = 8;

fn check_t_list(t_list: &[f64]) -> Result<()> {
    if !(MIN_T_VALUES..=MAX_T_VALUES).contains(&t_list.len()) {
        return Err(Error::invalid(
            "t_list",
            format!(
                "need {MIN_T_VALUES} to {MAX_T_VALUES} values, got {}",
                t_list.len()
            ),
        ));
    }
    for (i, t) in t_list.iter().enumerate() {
        positive("t_list", *t)?;
        if t_list[..i].contains(t) {
            return Err(Error::invalid("t_list", format!("duplicate value {t}")));
        }
    }
    Ok(())
}

/// Slope at `t = 0` of the interpolating polynomial through `(t_k, v_k)`.
fn slope_at_zero(ts: &[f64], vs: &[C64]) -> Result<C64> {
    let k = ts.len();
    let tmax = ts.iter().cloned().fold(0.0, f64::max);
    let vander = DMatrix::from_fn(k, k, |i, j| Float::powi(ts[i] / tmax, j as i32));
    let lu = vander.lu();
    let re = lu.solve(&DVector::from_iterator(k, vs.iter().map(|z| z.re)));
    let im = lu.solve(&DVector::from_iterator(k, vs.iter().map(|z| z.im)));
    match (re, im) {
        (Some(re), Some(im)) => Ok(C64::new(re[1], im[1]) / tmax),
        _ => Err(Error::invalid(
            "t_list",
            "interpolation through the t values is singular",
        )),
    }
}

/// `dP/dt` at `t = 0` by polynomial extrapolation over `t_list`.
#[derive(Clone, Debug, PartialEq)]
pub struct Extrapolated {
    pub derivative: C64,
    /// Change in the derivative when the largest `t` is dropped, relative to its size.
    pub spread: f64,
    pub values: Vec<PairingResult>,
}

fn extrapolate(
    overlap: &ShiftedOverlap,
    n: usize,
    hbar: f64,
    mass: f64,
    t_list: &[f64],
    opts: &PairingOptions,
    scale: f64,
) -> Result<Extrapolated> {
    check_t_list(t_list)?;
    let mut order: Vec<f64> = t_list.to_vec();
    order.sort_by(|a, b| a.total_cmp(b));
    let values: Vec<PairingResult> = order
        .iter()
        .map(|t| pairing_with(overlap, n, *t, hbar, mass, opts, scale))
        .collect::<Result<_>>()?;
    let vs: Vec<C64> = values.iter().map(|r| r.value).collect();
    let full = slope_at_zero(&order, &vs)?;
    let k = order.len();
    let reduced = slope_at_zero(&order[..k - 1], &vs[..k - 1])?;
    let spread = if full.norm() > 0.0 {
        (full - reduced).norm() / full.norm()
    } else {
        (full - reduced).norm()
    };
    Ok(Extrapolated {
        derivative: full,
        spread,
        values,
    })
}

/// `d/dt P(t)` at `t = 0` for one pair of states.
pub fn pairing_derivative(
    psi: &PolarizedState,
    chi: &PolarizedState,
    t_list: &[f64],
    opts: &PairingOptions,
) -> Result<Extrapolated> {
    psi.check_compatible(chi)?;
    psi.check_support(&opts.tol)?;
    chi.check_support(&opts.tol)?;
    let overlap = ShiftedOverlap::new(psi.grid.lattice(), &psi.samples, &chi.samples);
    extrapolate(
        &overlap,
        psi.n(),
        psi.hbar,
        psi.mass,
        t_list,
        opts,
        psi.norm() * chi.norm(),
    )
}

/// Fit of the generator `i hbar dpsi/dt = -c_fit lap psi`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchrodingerFit {
    /// Fitted prefactor; expected value `exp(-i pi n/4) hbar^2 / 2m`.
    pub c_fit: C64,
    /// `||D - alpha L|| / ||D||` over the test panel.
    pub residual: f64,
    /// Largest extrapolation spread over the panel.
    pub spread: f64,
    /// `dP_j/dt` at zero for each test state.
    pub derivatives: Vec<C64>,
    /// `<lap psi0, chi_j>`.
    pub laplacian_overlaps: Vec<C64>,
    pub t_list: Vec<f64>,
}

impl SchrodingerFit {
    /// `exp(-i pi n/4) hbar^2 / 2m`.
    pub fn expected(n: usize, hbar: f64, mass: f64) -> C64 {
        C64::from_polar(
            hbar * hbar / (2.0 * mass),
            -core::f64::consts::FRAC_PI_4 * n as f64,
        )
    }
}

/// Extracts the small-time generator on `psi0` against a panel of interior
/// test states and fits it to the stencil Laplacian of `psi0`.
///
/// From `dP_j/dt = alpha <lap psi0, chi_j>` and `<dpsi/dt, chi> = -dP/dt`,
/// the prefactor is `c_fit = i hbar conj(alpha)`.
pub fn schrodinger_residual(
    psi0: &PolarizedState,
    t_list: &[f64],
    spec: &PanelSpec,
    opts: &PairingOptions,
) -> Result<SchrodingerFit> {
    if psi0.polarization != Polarization::Position {
        return Err(Error::invalid(
            "polarization",
            "the generator acts on position-polarized states",
        ));
    }
    psi0.check_support(&opts.tol)?;
    let lat = psi0.grid.lattice();
    let mut lap = vec![C64::new(0.0, 0.0); lat.len()];
    for d in 0..psi0.n() {
        for (l, x) in lap.iter_mut().zip(lat.second_derivative(&psi0.samples, d)?) {
            *l += x;
        }
    }
    let tests = panel(lat, spec);
    let mut derivatives = Vec::with_capacity(tests.len());
    let mut overlaps = Vec::with_capacity(tests.len());
    let mut spread: f64 = 0.0;
    for chi in &tests {
        let chi = PolarizedState::new(
            psi0.grid.clone(),
            chi.clone(),
            Polarization::Position,
            psi0.hbar,
            psi0.mass,
        )?;
        chi.check_support(&opts.tol)?;
        let overlap = ShiftedOverlap::new(lat, &psi0.samples, &chi.samples);
        let e = extrapolate(
            &overlap,
            psi0.n(),
            psi0.hbar,
            psi0.mass,
            t_list,
            opts,
            psi0.norm() * chi.norm(),
        )?;
        spread = spread.max(e.spread);
        derivatives.push(e.derivative);
        overlaps.push(lat.inner(&lap, &chi.samples));
    }
    let denom: f64 = overlaps.iter().map(|l| l.norm_sqr()).sum();
    if denom == 0.0 {
        return Err(Error::DegenerateGram {
            reason: "the Laplacian of psi0 is orthogonal to every test state".into(),
        });
    }
    let alpha: C64 = overlaps
        .iter()
        .zip(&derivatives)
        .map(|(l, d)| l.conj() * d)
        .sum::<C64>()
        / denom;
    let misfit: f64 = overlaps
        .iter()
        .zip(&derivatives)
        .map(|(l, d)| (d - alpha * l).norm_sqr())
        .sum();
    let total: f64 = derivatives.iter().map(|d| d.norm_sqr()).sum();
    let mut ts = t_list.to_vec();
    ts.sort_by(|a, b| a.total_cmp(b));
    Ok(SchrodingerFit {
        c_fit: C64::new(0.0, psi0.hbar) * alpha.conj(),
        residual: if total > 0.0 {
            Float::sqrt(misfit / total)
        } else {
            0.0
        },
        spread,
        derivatives,
        laplacian_overlaps: overlaps,
        t_list: ts,
    })
}
