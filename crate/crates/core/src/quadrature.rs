//! Gaussian quadrature rules from the Golub-Welsch eigenvalue method.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::Float;

use crate::error::{Error, Result};

/// Nodes and weights of a Gaussian rule, nodes ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Affine map of a Legendre rule from `[-1, 1]` to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> Rule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        Rule {
            nodes: self.nodes.iter().map(|x| mid + half * x).collect(),
            weights: self.weights.iter().map(|w| w * half).collect(),
        }
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> Result<Rule> {
    let n = diag.len();
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            offdiag[i]
        } else if j + 1 == i {
            offdiag[j]
        } else {
            0.0
        }
    });
    let max_iterations = 100 * n.max(10);
    let eig = SymmetricEigen::try_new(jacobi, f64::EPSILON, max_iterations).ok_or(
        Error::EigenFailure {
            dim: n,
            max_iterations,
        },
    )?;
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let v0 = eig.eigenvectors[(0, k)];
            (eig.eigenvalues[k], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::invalid(
            "nodes",
            "a quadrature rule needs at least one node",
        ))
    } else {
        Ok(())
    }
}

/// Gauss-Legendre on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<Rule> {
    check_len(n)?;
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / Float::sqrt(4.0 * k * k - 1.0)
        })
        .collect();
    golub_welsch(&alloc::vec![0.0; n], &off, 2.0)
}

/// Gauss-Laguerre for the weight `e^-x` on `[0, inf)`.
pub fn gauss_laguerre(n: usize) -> Result<Rule> {
    check_len(n)?;
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| k as f64).collect();
    golub_welsch(&diag, &off, 1.0)
}

/// Gauss-Hermite for the weight `e^(-x^2)` on the real line.
pub fn gauss_hermite(n: usize) -> Result<Rule> {
    check_len(n)?;
    let off: Vec<f64> = (1..n).map(|k| Float::sqrt(k as f64 / 2.0)).collect();
    golub_welsch(
        &alloc::vec![0.0; n],
        &off,
        Float::sqrt(core::f64::consts::PI),
    )
}
