//! Holomorphic quantization of `C^n` on monomials `z^m`, `|m| <= D`, with `z = p + i q`.
//!
//! The inner product is `<phi, phi'> = int conj(phi) phi' exp(-z.zbar / 2 hbar) dq dp / (2 pi hbar)^n`,
//! which makes `<1, 1> = 1` and `<z^m, z^m> = prod_a (2 hbar)^{m_a} m_a!`.
//! `z^a` acts by multiplication and `zbar^a` by `2 hbar d/dz^a`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{BasisId, CMatrix, GramMatrix, OperatorMatrix, C64};
use crate::quadrature::gauss_laguerre;
use crate::special::{binomial_count, factorial};

/// Degree cap keeping `m!` exact in a double.
pub const MAX_DEGREE: u32 = 20;

/// Monomials `z^m` with `|m| <= D`, ordered by total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct FockBasis {
    n: usize,
    degree: u32,
    hbar: f64,
    indices: Vec<Vec<u32>>,
    lookup: BTreeMap<Vec<u32>, usize>,
}

impl FockBasis {
    pub fn new(n: usize, degree: u32, hbar: f64) -> Result<Self> {
        if n == 0 || n > 8 {
            return Err(Error::invalid(
                "n",
                format!("complex dimension must be in 1..=8, got {n}"),
            ));
        }
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow {
                degree,
                cap: MAX_DEGREE,
            });
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::invalid(
                "hbar",
                format!("must be positive and finite, got {hbar}"),
            ));
        }
        let mut indices = Vec::new();
        for total in 0..=degree {
            shell(n, total, &mut vec![0; n], 0, &mut indices);
        }
        debug_assert_eq!(indices.len(), binomial_count(n + degree as usize, n));
        let lookup = indices
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(Self {
            n,
            degree,
            hbar,
            indices,
            lookup,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[Vec<u32>] {
        &self.indices
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn id(&self) -> BasisId {
        BasisId::new(format!("fock/n{}/D{}", self.n, self.degree))
    }

    /// Basis positions of the monomials of total degree `D`.
    pub fn top_shell(&self) -> Vec<usize> {
        self.indices
            .iter()
            .enumerate()
            .filter(|(_, m)| total(m) == self.degree)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_axis(&self, a: usize) -> Result<()> {
        if a < self.n {
            Ok(())
        } else {
            Err(Error::invalid(
                "axis",
                format!("axis {a} out of range for n = {}", self.n),
            ))
        }
    }
}

/// Multi-indices of a fixed total degree, first axis descending.
fn shell(n: usize, left: u32, cur: &mut Vec<u32>, a: usize, out: &mut Vec<Vec<u32>>) {
    if a == n - 1 {
        cur[a] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[a] = e;
        shell(n, left - e, cur, a + 1, out);
    }
    cur[a] = 0;
}

fn total(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// Closed-form norm `<z^m, z^m> = prod_a (2 hbar)^{m_a} m_a!`.
pub fn monomial_norm_sq(m: &[u32], hbar: f64) -> f64 {
    m.iter()
        .map(|&e| Float::powi(2.0 * hbar, e as i32) * factorial(e))
        .product()
}

/// Diagonal Gram matrix of the monomial basis.
pub fn fock_gram(basis: &FockBasis) -> Result<GramMatrix> {
    let diag: Vec<f64> = basis
        .indices
        .iter()
        .map(|m| monomial_norm_sq(m, basis.hbar))
        .collect();
    GramMatrix::from_diagonal(&diag, basis.id())
}

/// `<z^m, z^m'>` by quadrature: Gauss-Laguerre in `u = |z_a|^2 / 2 hbar`, trapezoid in each angle.
///
/// Independent of the closed form; used to confirm it.
pub fn gram_entry_quadrature(
    m: &[u32],
    m_prime: &[u32],
    hbar: f64,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<C64> {
    if m.len() != m_prime.len() {
        return Err(Error::DimensionMismatch {
            expected: m.len(),
            found: m_prime.len(),
        });
    }
    let rule = gauss_laguerre(radial_nodes)?;
    let mut value = C64::new(1.0, 0.0);
    for (&e, &f) in m.iter().zip(m_prime) {
        // d^2 z / (2 pi hbar) = r dr dtheta / (2 pi hbar) = du dtheta / (2 pi) with r^2 = 2 hbar u.
        let radial = rule.integrate(|u| Float::powf(2.0 * hbar * u, 0.5 * (e + f) as f64));
        let mut angular = C64::new(0.0, 0.0);
        for k in 0..angular_nodes {
            let theta = core::f64::consts::TAU * k as f64 / angular_nodes as f64;
            angular += C64::from_polar(1.0, (f as f64 - e as f64) * theta);
        }
        value *= angular / angular_nodes as f64 * radial;
    }
    Ok(value)
}

/// Multiplication by `z^a`; the top shell maps out of the basis and is flagged.
pub fn op_raise(basis: &FockBasis, a: usize) -> Result<OperatorMatrix> {
    basis.check_axis(a)?;
    let d = basis.dim();
    let mut m = CMatrix::zeros(d, d);
    for (j, idx) in basis.indices.iter().enumerate() {
        let mut up = idx.clone();
        up[a] += 1;
        if let Some(i) = basis.index_of(&up) {
            m[(i, j)] = C64::new(1.0, 0.0);
        }
    }
    Ok(OperatorMatrix::new(m, basis.id())?.with_truncated(basis.top_shell()))
}

/// `2 hbar d/dz^a`.
pub fn op_lower(basis: &FockBasis, a: usize) -> Result<OperatorMatrix> {
    basis.check_axis(a)?;
    let d = basis.dim();
    let mut m = CMatrix::zeros(d, d);
    for (j, idx) in basis.indices.iter().enumerate() {
        if idx[a] == 0 {
            continue;
        }
        let mut down = idx.clone();
        down[a] -= 1;
        let i = basis
            .index_of(&down)
            .expect("lowered index stays in the basis");
        m[(i, j)] = C64::new(2.0 * basis.hbar * idx[a] as f64, 0.0);
    }
    Ok(OperatorMatrix::new(m, basis.id())?.with_hbar_power(1))
}

/// `hbar (z . d/dz + n/2)`, diagonal with eigenvalue `hbar (|m| + n/2)`.
pub fn oscillator_hamiltonian(basis: &FockBasis) -> Result<OperatorMatrix> {
    let half_n = basis.n as f64 / 2.0;
    let diag: Vec<C64> = basis
        .indices
        .iter()
        .map(|m| C64::new(basis.hbar * (total(m) as f64 + half_n), 0.0))
        .collect();
    Ok(OperatorMatrix::from_diagonal(&diag, basis.id())?.with_hbar_power(1))
}

/// Quadratic symbol `f0 + w_a z^a + v_a zbar^a + c_ab z^a zbar^b + zz_ab z^a z^b + yy_ab zbar^a zbar^b`.
///
/// Only `v = conj(w)`, Hermitian `c`, real `f0` and vanishing `zz`, `yy` preserve
/// the polarization; [`polarization_preserving`] rejects everything else.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticSymbol {
    pub constant: C64,
    pub linear_z: Vec<C64>,
    pub linear_zbar: Vec<C64>,
    pub mixed: Vec<Vec<C64>>,
    pub zz: Vec<Vec<C64>>,
    pub zbarzbar: Vec<Vec<C64>>,
}

impl QuadraticSymbol {
    pub fn zero(n: usize) -> Self {
        let zeros = vec![C64::new(0.0, 0.0); n];
        let square = vec![zeros.clone(); n];
        Self {
            constant: C64::new(0.0, 0.0),
            linear_z: zeros.clone(),
            linear_zbar: zeros,
            mixed: square.clone(),
            zz: square.clone(),
            zbarzbar: square,
        }
    }

    /// `f0 + w.z + conj(w).zbar + c_ab z^a zbar^b`.
    pub fn preserving(f0: f64, w: Vec<C64>, c: Vec<Vec<C64>>) -> Self {
        let mut s = Self::zero(w.len());
        s.constant = C64::new(f0, 0.0);
        s.linear_zbar = w.iter().map(|x| x.conj()).collect();
        s.linear_z = w;
        s.mixed = c;
        s
    }

    fn n(&self) -> usize {
        self.linear_z.len()
    }
}

fn violation(reason: impl Into<alloc::string::String>) -> Error {
    Error::PolarizationViolation {
        reason: reason.into(),
    }
}

fn check_square(name: &str, m: &[Vec<C64>], n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("symbol", format!("{name} must be {n}x{n}")));
    }
    Ok(())
}

/// Quantizes a polarization-preserving quadratic symbol:
/// `f0 I + w_a z^a + conj(w_a) 2 hbar d_a + c_ab z^a 2 hbar d_b + hbar tr(c)`.
///
/// The last term is the metaplectic correction `-(i hbar / 2) tr(A)` with `A = 2 i c`.
pub fn polarization_preserving(
    basis: &FockBasis,
    symbol: &QuadraticSymbol,
    tol: &crate::Tolerances,
) -> Result<OperatorMatrix> {
    let n = basis.n;
    if symbol.n() != n || symbol.linear_zbar.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: symbol.n(),
        });
    }
    check_square("mixed", &symbol.mixed, n)?;
    check_square("zz", &symbol.zz, n)?;
    check_square("zbarzbar", &symbol.zbarzbar, n)?;
    if symbol.constant.im.abs() > tol.hermitian * symbol.constant.re.abs().max(1.0) {
        return Err(violation("the constant term must be real"));
    }
    let quad_z = symbol
        .zz
        .iter()
        .flatten()
        .chain(symbol.zbarzbar.iter().flatten())
        .any(|z| z.norm() > 0.0);
    if quad_z {
        return Err(violation("terms quadratic in z or in zbar do not preserve the holomorphic polarization; use the bks module"));
    }
    for a in 0..n {
        if (symbol.linear_zbar[a] - symbol.linear_z[a].conj()).norm() > tol.hermitian {
            return Err(violation(format!(
                "zbar coefficient {a} is not the conjugate of the z coefficient"
            )));
        }
        for b in 0..n {
            if (symbol.mixed[a][b] - symbol.mixed[b][a].conj()).norm() > tol.hermitian {
                return Err(violation(format!("c is not Hermitian at ({a},{b})")));
            }
        }
    }

    let hbar = basis.hbar;
    let trace: C64 = (0..n).map(|a| symbol.mixed[a][a]).sum();
    let mut out = OperatorMatrix::identity(basis.dim(), basis.id())?
        .scale(C64::new(symbol.constant.re, 0.0) + trace * hbar);
    for a in 0..n {
        if symbol.linear_z[a].norm() > 0.0 {
            out = out.add(&op_raise(basis, a)?.scale(symbol.linear_z[a]))?;
            out = out.add(&op_lower(basis, a)?.scale(symbol.linear_zbar[a]))?;
        }
    }
    // z^a 2 hbar d_b never leaves the basis, so it is assembled directly rather
    // than through the flagged raise operator.
    let d = basis.dim();
    let mut number = CMatrix::zeros(d, d);
    for (j, idx) in basis.indices.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                let c = symbol.mixed[a][b];
                if c.norm() == 0.0 || idx[b] == 0 {
                    continue;
                }
                let mut target = idx.clone();
                target[b] -= 1;
                target[a] += 1;
                let i = basis.index_of(&target).expect("degree is preserved");
                number[(i, j)] += c * (2.0 * hbar * idx[b] as f64);
            }
        }
    }
    let out = out.add(&OperatorMatrix::new(number, basis.id())?)?;
    Ok(
        out.with_hbar_power(if symbol.mixed.iter().flatten().any(|c| c.norm() > 0.0) {
            1
        } else {
            0
        }),
    )
}
