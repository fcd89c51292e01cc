//! Holomorphic quantization of the sphere in sector `n` on the monomials `1, z, ..., z^n`.
//!
//! With `K = n hbar log(1 + zbar z)` and `theta = -i dK`, the prequantum
//! operators of the moment functions restricted to holomorphic sections are
//! (derived symbolically by `oracles/spin_prequantum.py`):
//!
//! ```text
//! J+ = hbar (z^2 d/dz - n z)      J+ z^m = hbar (m - n) z^{m+1}
//! J- = -hbar d/dz                 J- z^m = -hbar m z^{m-1}
//! J3 = hbar (z d/dz - n/2)        J3 z^m = hbar (m - n/2) z^m
//! ```
//!
//! No metaplectic correction is applied in this sector.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{commutator, frobenius, BasisId, CMatrix, GramMatrix, OperatorMatrix, C64};
use crate::quadrature::gauss_legendre;
use crate::special::factorial;

/// Largest sector supported.
pub const MAX_SECTOR: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinBasis {
    n: u32,
    hbar: f64,
}

impl SpinBasis {
    pub fn new(n: u32, hbar: f64) -> Result<Self> {
        if n > MAX_SECTOR {
            return Err(Error::invalid(
                "n",
                format!("sector must be at most {MAX_SECTOR}, got {n}"),
            ));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::invalid(
                "hbar",
                format!("must be positive and finite, got {hbar}"),
            ));
        }
        Ok(Self { n, hbar })
    }

    pub fn sector(&self) -> u32 {
        self.n
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `n + 1`.
    pub fn dim(&self) -> usize {
        self.n as usize + 1
    }

    pub fn id(&self) -> BasisId {
        BasisId::new(format!("spin/n{}", self.n))
    }
}

/// `<z^m, z^m> = m! (n - m)! / (n + 1)!`.
pub fn monomial_norm_sq(n: u32, m: u32) -> f64 {
    factorial(m) * factorial(n - m) / factorial(n + 1)
}

pub fn spin_gram(basis: &SpinBasis) -> Result<GramMatrix> {
    let diag: Vec<f64> = (0..=basis.n)
        .map(|m| monomial_norm_sq(basis.n, m))
        .collect();
    GramMatrix::from_diagonal(&diag, basis.id())
}

/// `<z^m, z^m'>` by quadrature of `(1/pi) int R^{m+m'+1} e^{i(m'-m)Theta} / (1+R^2)^{n+2} dR dTheta`.
///
/// The radial integral uses Gauss-Legendre in `alpha` with `R = tan(alpha)`,
/// which turns the integrand into `2 sin^{2k+1}(alpha) cos^{2n-2k+1}(alpha)`.
pub fn gram_entry_quadrature(n: u32, m: u32, m_prime: u32, nodes: usize) -> Result<C64> {
    if m > n || m_prime > n {
        return Err(Error::invalid(
            "m",
            format!("monomial degree must be at most n = {n}"),
        ));
    }
    let angular_nodes = 2 * n as usize + 2;
    let mut angular = C64::new(0.0, 0.0);
    for k in 0..angular_nodes {
        let t = core::f64::consts::TAU * k as f64 / angular_nodes as f64;
        angular += C64::from_polar(1.0, (m_prime as f64 - m as f64) * t);
    }
    angular /= angular_nodes as f64;
    let rule = gauss_legendre(nodes)?.mapped(0.0, core::f64::consts::FRAC_PI_2);
    let power = 0.5 * (m + m_prime) as f64;
    let radial = rule.integrate(|a| {
        let (s, c) = Float::sin_cos(a);
        2.0 * Float::powf(s, 2.0 * power + 1.0) * Float::powf(c, 2.0 * (n as f64 - power) + 1.0)
    });
    Ok(angular * radial)
}

/// `C_m = sqrt((n + 1) n! / (m! (n - m)!))`, making `C_m z^m` orthonormal.
pub fn orthonormal_constants(basis: &SpinBasis) -> Vec<f64> {
    let n = basis.n;
    (0..=n)
        .map(|m| Float::sqrt((n + 1) as f64 * factorial(n) / (factorial(m) * factorial(n - m))))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinOperators {
    pub j3: OperatorMatrix,
    pub j_plus: OperatorMatrix,
    pub j_minus: OperatorMatrix,
}

pub fn spin_operators(basis: &SpinBasis) -> Result<SpinOperators> {
    let (n, hbar, d) = (basis.n, basis.hbar, basis.dim());
    let mut j3 = CMatrix::zeros(d, d);
    let mut jp = CMatrix::zeros(d, d);
    let mut jm = CMatrix::zeros(d, d);
    for m in 0..=n as usize {
        let mf = m as f64;
        j3[(m, m)] = C64::new(hbar * (mf - n as f64 / 2.0), 0.0);
        // At m = n the coefficient (m - n) vanishes, so J+ never leaves the sector.
        if m < n as usize {
            jp[(m + 1, m)] = C64::new(hbar * (mf - n as f64), 0.0);
        }
        if m > 0 {
            jm[(m - 1, m)] = C64::new(-hbar * mf, 0.0);
        }
    }
    let id = basis.id();
    Ok(SpinOperators {
        j3: OperatorMatrix::new(j3, id.clone())?.with_hbar_power(1),
        j_plus: OperatorMatrix::new(jp, id.clone())?.with_hbar_power(1),
        j_minus: OperatorMatrix::new(jm, id)?.with_hbar_power(1),
    })
}

/// Residuals of the su(2) relations and the Casimir.
#[derive(Clone, Debug, PartialEq)]
pub struct Su2Report {
    pub dim: usize,
    /// `||[J3, J+] - hbar J+||`.
    pub raise: f64,
    /// `||[J3, J-] + hbar J-||`.
    pub lower: f64,
    /// `||[J+, J-] - 2 hbar J3||`.
    pub ladder: f64,
    /// Frobenius norm of the off-diagonal part of the Casimir.
    pub casimir_off_diagonal: f64,
    /// Mean diagonal entry of the Casimir.
    pub casimir_scalar: f64,
    /// `hbar^2 (n/2)(n/2 + 1)`.
    pub casimir_expected: f64,
    /// Largest deviation of a diagonal Casimir entry from the expected scalar.
    pub casimir_spread: f64,
    pub metaplectic_correction: bool,
}

pub fn check_su2(basis: &SpinBasis) -> Result<Su2Report> {
    let ops = spin_operators(basis)?;
    let hbar = C64::new(basis.hbar, 0.0);
    let raise = commutator(&ops.j3, &ops.j_plus)?
        .sub(&ops.j_plus.scale(hbar))?
        .frobenius_norm();
    let lower = commutator(&ops.j3, &ops.j_minus)?
        .add(&ops.j_minus.scale(hbar))?
        .frobenius_norm();
    let ladder = commutator(&ops.j_plus, &ops.j_minus)?
        .sub(&ops.j3.scale(hbar * 2.0))?
        .frobenius_norm();
    let casimir = ops.j3.compose(&ops.j3)?.add(
        &ops.j_plus
            .compose(&ops.j_minus)?
            .add(&ops.j_minus.compose(&ops.j_plus)?)?
            .scale(C64::new(0.5, 0.0)),
    )?;
    let d = basis.dim();
    let diag = casimir.diagonal();
    let mut off = casimir.entries().clone();
    for i in 0..d {
        off[(i, i)] = C64::new(0.0, 0.0);
    }
    let j = basis.n as f64 / 2.0;
    let expected = basis.hbar * basis.hbar * j * (j + 1.0);
    let scalar = diag.iter().map(|z| z.re).sum::<f64>() / d as f64;
    let spread = diag
        .iter()
        .map(|z| (z - C64::new(expected, 0.0)).norm())
        .fold(0.0, f64::max);
    Ok(Su2Report {
        dim: d,
        raise,
        lower,
        ladder,
        casimir_off_diagonal: frobenius(&off),
        casimir_scalar: scalar,
        casimir_expected: expected,
        casimir_spread: spread,
        metaplectic_correction: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{adjoint_wrt, spectrum};
    use alloc::vec;

    #[test]
    fn gram_examples() {
        assert!((monomial_norm_sq(2, 1) - 1.0 / 6.0).abs() < 1e-16);
        assert!((monomial_norm_sq(1, 0) - 0.5).abs() < 1e-16);
        assert!(gram_entry_quadrature(3, 1, 2, 32).unwrap().norm() < 1e-15);
        for n in 0..=10 {
            for m in 0..=n {
                let q = gram_entry_quadrature(n, m, m, 40).unwrap();
                let exact = monomial_norm_sq(n, m);
                assert!((q.re - exact).abs() <= 1e-12 * exact, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn orthonormal_examples() {
        let c0 = orthonormal_constants(&SpinBasis::new(0, 1.0).unwrap());
        assert_eq!(c0, vec![1.0]);
        let c2 = orthonormal_constants(&SpinBasis::new(2, 1.0).unwrap());
        assert!((c2[1] - 6f64.sqrt()).abs() < 1e-15);
        let c1 = orthonormal_constants(&SpinBasis::new(1, 1.0).unwrap());
        assert!((c1[0] - 2f64.sqrt()).abs() < 1e-15);
        for n in 0..=12 {
            let b = SpinBasis::new(n, 1.0).unwrap();
            for (m, c) in orthonormal_constants(&b).iter().enumerate() {
                assert!((c * c * monomial_norm_sq(n, m as u32) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn trivial_sector() {
        let b = SpinBasis::new(0, 1.3).unwrap();
        let ops = spin_operators(&b).unwrap();
        for op in [&ops.j3, &ops.j_plus, &ops.j_minus] {
            assert_eq!(op.dim(), 1);
            assert_eq!(op.frobenius_norm(), 0.0);
        }
        let r = check_su2(&b).unwrap();
        assert_eq!(
            (r.raise, r.lower, r.ladder, r.casimir_scalar),
            (0.0, 0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn casimir_values() {
        for (n, expect) in [(1u32, 0.75), (2, 2.0)] {
            let hbar = 0.9;
            let r = check_su2(&SpinBasis::new(n, hbar).unwrap()).unwrap();
            assert!((r.casimir_scalar - expect * hbar * hbar).abs() < 1e-12);
            assert!(r.casimir_off_diagonal < 1e-12);
            assert!(r.raise < 1e-12 && r.lower < 1e-12 && r.ladder < 1e-12);
        }
    }

    #[test]
    fn spin_half_is_pauli_up_to_unitary() {
        // Orthonormalize with C_m; J3 becomes diag(-1/2, 1/2) and J+- become
        // off-diagonal with unit modulus entries, times hbar.
        let b = SpinBasis::new(1, 1.0).unwrap();
        let ops = spin_operators(&b).unwrap();
        let c = orthonormal_constants(&b);
        let to_on = |op: &OperatorMatrix| CMatrix::from_fn(2, 2, |i, j| op.get(i, j) * c[j] / c[i]);
        let j3 = to_on(&ops.j3);
        let jp = to_on(&ops.j_plus);
        let jm = to_on(&ops.j_minus);
        assert_eq!(j3[(0, 0)].re, -0.5);
        assert_eq!(j3[(1, 1)].re, 0.5);
        assert!((jp[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((jm[(0, 1)].norm() - 1.0).abs() < 1e-15);
        // In the orthonormal frame J- is the conjugate transpose of J+.
        assert!(frobenius(&(jm - jp.adjoint())) < 1e-15);
    }

    #[test]
    fn gram_adjointness_and_j3_spectrum() {
        for n in 0..=MAX_SECTOR {
            let hbar = 0.7;
            let b = SpinBasis::new(n, hbar).unwrap();
            let g = spin_gram(&b).unwrap();
            let ops = spin_operators(&b).unwrap();
            let adj = adjoint_wrt(&ops.j_plus, &g).unwrap();
            assert!(
                adj.sub(&ops.j_minus).unwrap().frobenius_norm()
                    <= 1e-10 * ops.j_minus.frobenius_norm().max(1.0)
            );
            let adj3 = adjoint_wrt(&ops.j3, &g).unwrap();
            assert!(adj3.sub(&ops.j3).unwrap().frobenius_norm() < 1e-10);
            let s = spectrum(&ops.j3, &g).unwrap();
            for (m, v) in s.iter().enumerate() {
                assert!((v.re - hbar * (m as f64 - n as f64 / 2.0)).abs() < 1e-10);
            }
            let r = check_su2(&b).unwrap();
            assert!(
                r.casimir_spread <= 1e-10 * r.casimir_expected.max(1.0),
                "n={n}: {r:?}"
            );
        }
        assert!(SpinBasis::new(21, 1.0).is_err());
    }
}
