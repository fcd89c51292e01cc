//! Every numerical threshold used by the checks in this crate.
//!
//! Module code takes a [`Tolerances`] value (usually [`Tolerances::DEFAULT`])
//! instead of embedding literals, so a caller can tighten or relax a whole run
//! from one place.

/// Tolerance record shared by all modules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Finite-difference residuals measured on interior test vectors.
    pub grid: f64,
    /// Closed-form matrix algebra (ladder relations, Casimirs, spectra).
    pub exact: f64,
    /// Relative tolerance for oscillatory quadrature and extrapolation.
    pub bks: f64,
    /// Entrywise Hermiticity of a Gram matrix.
    pub hermitian: f64,
    /// Relative agreement between a quadrature and its closed form.
    pub quadrature: f64,
    /// Relative norm change allowed by a unitary transform on a grid.
    pub parseval: f64,
    /// Largest fraction of a state's mass allowed in the outer band of a grid.
    pub support_tail: f64,
    /// Round-off level for identities that hold up to floating reassociation.
    pub machine: f64,
}

impl Tolerances {
    pub const DEFAULT: Self = Self {
        grid: 1e-6,
        exact: 1e-10,
        bks: 1e-3,
        hermitian: 1e-12,
        quadrature: 1e-8,
        parseval: 1e-8,
        support_tail: 1e-8,
        machine: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
