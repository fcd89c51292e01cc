//! Smooth test vectors supported away from the lattice boundary.
//!
//! Residual checks are evaluated on these vectors rather than on the full
//! operator matrix, so the one-sided truncation of the stencils at the edge
//! never enters a measurement.

use alloc::vec::Vec;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::Lattice;
use crate::linalg::C64;

/// Fraction of each axis, centered, that test vectors live in.
pub const INNER_FRACTION: f64 = 0.6;
/// Gaussian widths fit this many standard deviations inside the inner region,
/// so the envelope at its edge is below `exp(-18)`.
const SIGMAS_TO_EDGE: f64 = 6.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PanelSpec {
    pub count: usize,
    pub seed: u64,
    pub inner_fraction: f64,
}

impl Default for PanelSpec {
    fn default() -> Self {
        Self {
            count: 8,
            seed: 0x5eed,
            inner_fraction: INNER_FRACTION,
        }
    }
}

/// Gaussian centred at `center` with momentum `k`, sized to stay inside the
/// inner `inner_fraction` of every axis.
pub fn interior_gaussian(
    lattice: &Lattice,
    center: &[f64],
    k: &[f64],
    inner_fraction: f64,
) -> Vec<C64> {
    let sigmas: Vec<f64> = lattice
        .axes()
        .iter()
        .zip(center)
        .map(|(a, c)| {
            (inner_fraction * a.half_width() - (c - a.center()).abs()).max(0.0) / SIGMAS_TO_EDGE
        })
        .collect();
    lattice.sample(|x| {
        let mut exponent = 0.0;
        let mut phase = 0.0;
        for d in 0..x.len() {
            let u = (x[d] - center[d]) / sigmas[d];
            exponent -= 0.5 * u * u;
            phase += k[d] * (x[d] - center[d]);
        }
        C64::from_polar(Float::exp(exponent), phase)
    })
}

/// Width the Gaussian at `center` gets from [`interior_gaussian`].
pub fn interior_sigma(lattice: &Lattice, d: usize, center: f64, inner_fraction: f64) -> f64 {
    let a = lattice.axis(d);
    (inner_fraction * a.half_width() - (center - a.center()).abs()).max(0.0) / SIGMAS_TO_EDGE
}

/// Centres stay within this fraction of the inner half-width from the middle.
const CENTER_REACH: f64 = 0.2;
/// Largest modulation wavenumber, in units of the inverse Gaussian width.
const MAX_K_SIGMA: f64 = 0.25;

/// Seeded panel of modulated Gaussians near the middle of the inner region.
pub fn panel(lattice: &Lattice, spec: &PanelSpec) -> Vec<Vec<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|_| {
            let mut center = Vec::with_capacity(lattice.rank());
            let mut k = Vec::with_capacity(lattice.rank());
            for (d, a) in lattice.axes().iter().enumerate() {
                let reach = CENTER_REACH * spec.inner_fraction * a.half_width();
                let c = a.center() + rng.gen_range(-reach..=reach);
                let sigma = interior_sigma(lattice, d, c, spec.inner_fraction);
                center.push(c);
                k.push(rng.gen_range(-MAX_K_SIGMA..=MAX_K_SIGMA) / sigma);
            }
            interior_gaussian(lattice, &center, &k, spec.inner_fraction)
        })
        .collect()
}
