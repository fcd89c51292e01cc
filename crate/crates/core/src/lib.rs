//! Finite matrix representations of geometric-quantization operators.
//!
//! The crate builds truncated operator matrices from classical symplectic
//! data on a handful of model phase spaces and measures how well they obey
//! the expected quantum relations:
//!
//! * [`prequant`]: polynomial observables on flat `R^2n`, their Hamiltonian
//!   vector fields and Poisson brackets, the prequantum operators on a
//!   `(q, p)` lattice, Weil integrality on the sphere, the `T*S^1` sectors
//!   and the prequantum flow.
//! * [`fock`]: holomorphic quantization of `C^n` on a truncated monomial basis.
//! * [`spin`]: holomorphic quantization of the sphere in sector `n`.
//! * [`halfform`]: vertical polarization with half-forms on a `q` lattice.
//! * [`bks`]: the position/momentum pairing and the small-time free-particle
//!   generator it induces.
//!
//! Everything here is `no_std` (with `alloc`). File formats, the command line
//! front end and report serialization live in the `geoquant` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod bks;
pub mod error;
pub mod fock;
pub mod halfform;
pub mod lattice;
pub mod linalg;
pub mod panel;
pub mod poly;
pub mod prequant;
pub mod quadrature;
pub mod special;
pub mod spin;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{BasisId, GramMatrix, OperatorMatrix, C64};
pub use tolerance::Tolerances;
