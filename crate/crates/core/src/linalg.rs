//! Dense complex linear algebra with Gram-weighted inner products.
//!
//! An [`OperatorMatrix`] holds the matrix of an operator acting on coefficient
//! vectors of a declared basis; the [`GramMatrix`] of that basis carries the
//! inner products `<e_i, e_j>`. Adjoints and spectra are taken with respect to
//! the Gram-weighted product, so a basis need not be orthonormal.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use nalgebra::{Cholesky, DMatrix, Dyn, Schur, SymmetricEigen};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

const EIGEN_MAX_ITERATIONS: usize = 10_000;

/// Identifier of the representation space an operator acts in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisId(String);

impl BasisId {
    pub fn new(id: impl Into<String>) -> Self {
        BasisId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for BasisId {
    fn from(s: &str) -> Self {
        BasisId(s.to_string())
    }
}

fn check_same_basis(left: &BasisId, right: &BasisId) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::BasisMismatch {
            left: left.0.clone(),
            right: right.0.clone(),
        })
    }
}

/// Matrix of an operator in a truncated basis.
///
/// `hbar_power` tags the physical units carried separately from the
/// dimensionless entries. `truncated` lists basis indices whose image was cut
/// off by the basis truncation; results on those columns are not faithful to
/// the untruncated operator.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    entries: CMatrix,
    basis: BasisId,
    hbar_power: i32,
    truncated: Vec<usize>,
}

impl OperatorMatrix {
    pub fn new(entries: CMatrix, basis: BasisId) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::invalid(
                "entries",
                format!(
                    "operator matrix must be square, got {}x{}",
                    entries.nrows(),
                    entries.ncols()
                ),
            ));
        }
        if entries.nrows() == 0 {
            return Err(Error::invalid("dim", "operator dimension must be positive"));
        }
        Ok(Self {
            entries,
            basis,
            hbar_power: 0,
            truncated: Vec::new(),
        })
    }

    pub fn identity(dim: usize, basis: BasisId) -> Result<Self> {
        Self::new(CMatrix::identity(dim, dim), basis)
    }

    pub fn zeros(dim: usize, basis: BasisId) -> Result<Self> {
        Self::new(CMatrix::zeros(dim, dim), basis)
    }

    pub fn from_diagonal(values: &[C64], basis: BasisId) -> Result<Self> {
        let n = values.len();
        Self::new(
            CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    values[i]
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
            basis,
        )
    }

    pub fn with_hbar_power(mut self, power: i32) -> Self {
        self.hbar_power = power;
        self
    }

    pub fn with_truncated(mut self, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        self.truncated = indices;
        self
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn basis(&self) -> &BasisId {
        &self.basis
    }

    pub fn hbar_power(&self) -> i32 {
        self.hbar_power
    }

    pub fn truncated(&self) -> &[usize] {
        &self.truncated
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    fn merged_truncation(&self, other: &Self) -> Vec<usize> {
        let mut t = self.truncated.clone();
        t.extend_from_slice(&other.truncated);
        t.sort_unstable();
        t.dedup();
        t
    }

    /// Operator product `self * other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_same_basis(&self.basis, &other.basis)?;
        Ok(Self {
            entries: &self.entries * &other.entries,
            basis: self.basis.clone(),
            hbar_power: self.hbar_power + other.hbar_power,
            truncated: self.merged_truncation(other),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_basis(&self.basis, &other.basis)?;
        Ok(Self {
            entries: &self.entries + &other.entries,
            basis: self.basis.clone(),
            hbar_power: self.hbar_power,
            truncated: self.merged_truncation(other),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_basis(&self.basis, &other.basis)?;
        Ok(Self {
            entries: &self.entries - &other.entries,
            basis: self.basis.clone(),
            hbar_power: self.hbar_power,
            truncated: self.merged_truncation(other),
        })
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            entries: self.entries.map(|z| z * factor),
            ..self.clone()
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius(&self.entries)
    }

    /// Frobenius norm of the block that excludes the given basis indices
    /// (both rows and columns).
    pub fn frobenius_norm_excluding(&self, excluded: &[usize]) -> f64 {
        let n = self.dim();
        let mut sum = 0.0;
        for j in 0..n {
            if excluded.contains(&j) {
                continue;
            }
            for i in 0..n {
                if excluded.contains(&i) {
                    continue;
                }
                sum += self.entries[(i, j)].norm_sqr();
            }
        }
        num_traits::Float::sqrt(sum)
    }

    /// Diagonal entries.
    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.entries[(i, i)]).collect()
    }
}

pub(crate) fn frobenius(m: &CMatrix) -> f64 {
    num_traits::Float::sqrt(m.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// Gram matrix `G_ij = <e_i, e_j>` of a basis, validated Hermitian positive definite.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    entries: CMatrix,
    basis: BasisId,
    cholesky: Cholesky<C64, Dyn>,
}

impl GramMatrix {
    pub fn new(entries: CMatrix, basis: BasisId) -> Result<Self> {
        Self::with_tolerances(entries, basis, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(entries: CMatrix, basis: BasisId, tol: &Tolerances) -> Result<Self> {
        let n = entries.nrows();
        if n == 0 || entries.ncols() != n {
            return Err(Error::DegenerateGram {
                reason: format!(
                    "Gram matrix must be square and non-empty, got {}x{}",
                    n,
                    entries.ncols()
                ),
            });
        }
        for i in 0..n {
            for j in 0..=i {
                let d = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                if d > tol.hermitian {
                    return Err(Error::DegenerateGram {
                        reason: format!("not Hermitian at ({i},{j}): deviation {d:.3e}"),
                    });
                }
            }
        }
        let cholesky = Cholesky::new(entries.clone()).ok_or_else(|| Error::DegenerateGram {
            reason: "not positive definite (Cholesky factorization failed)".into(),
        })?;
        // The complex factorization takes square roots of negative pivots
        // without failing, so the pivots are checked here.
        let l = cholesky.l_dirty();
        let scale = entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for i in 0..n {
            let pivot = l[(i, i)];
            if !(pivot.re > 0.0)
                || pivot.im.abs() > tol.hermitian * pivot.re
                || pivot.re * pivot.re <= f64::EPSILON * scale
            {
                return Err(Error::DegenerateGram {
                    reason: format!("not positive definite (pivot {i} is {pivot})"),
                });
            }
        }
        Ok(Self {
            entries,
            basis,
            cholesky,
        })
    }

    pub fn identity(dim: usize, basis: BasisId) -> Result<Self> {
        Self::new(CMatrix::identity(dim, dim), basis)
    }

    pub fn from_diagonal(values: &[f64], basis: BasisId) -> Result<Self> {
        let n = values.len();
        Self::new(
            CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    C64::new(values[i], 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
            basis,
        )
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn basis(&self) -> &BasisId {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Lower Cholesky factor `L` with `G = L L^H`.
    pub fn cholesky_factor(&self) -> CMatrix {
        self.cholesky.l()
    }

    /// Solves `G x = b` column by column.
    pub fn solve(&self, rhs: &CMatrix) -> CMatrix {
        self.cholesky.solve(rhs)
    }

    /// Gram-weighted inner product of two coefficient vectors.
    pub fn inner(&self, a: &[C64], b: &[C64]) -> C64 {
        let n = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            let mut row = C64::new(0.0, 0.0);
            for j in 0..n {
                row += self.entries[(i, j)] * b[j];
            }
            acc += a[i].conj() * row;
        }
        acc
    }
}

/// Commutator `AB - BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_same_basis(&a.basis, &b.basis)?;
    let ab = &a.entries * &b.entries;
    let ba = &b.entries * &a.entries;
    Ok(OperatorMatrix {
        entries: ab - ba,
        basis: a.basis.clone(),
        hbar_power: a.hbar_power + b.hbar_power,
        truncated: a.merged_truncation(b),
    })
}

/// Adjoint with respect to the Gram-weighted product: `G^-1 A^H G`.
pub fn adjoint_wrt(a: &OperatorMatrix, gram: &GramMatrix) -> Result<OperatorMatrix> {
    check_same_basis(&a.basis, &gram.basis)?;
    if a.dim() != gram.dim() {
        return Err(Error::DimensionMismatch {
            expected: gram.dim(),
            found: a.dim(),
        });
    }
    let rhs = a.entries.adjoint() * &gram.entries;
    Ok(OperatorMatrix {
        entries: gram.solve(&rhs),
        basis: a.basis.clone(),
        hbar_power: a.hbar_power,
        truncated: a.truncated.clone(),
    })
}

/// Relative Frobenius distance between `A` and its Gram adjoint.
pub fn self_adjoint_defect(a: &OperatorMatrix, gram: &GramMatrix) -> Result<f64> {
    let adj = adjoint_wrt(a, gram)?;
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    Ok(frobenius(&(adj.entries - &a.entries)) / scale)
}

/// Ordering used for every reported spectrum: real part, then imaginary part.
pub fn spectral_order(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Eigenvalues of the operator `A`, i.e. of the generalized problem
/// `(G A) v = mu G v`, sorted by real part then imaginary part.
///
/// With `G = L L^H` the problem is reduced to the similar matrix
/// `B = L^H A L^-H`, which is Hermitian exactly when `A` is G-self-adjoint.
/// In that case a Hermitian solver is used and the imaginary parts are
/// reported as zero.
pub fn spectrum(a: &OperatorMatrix, gram: &GramMatrix) -> Result<Vec<C64>> {
    spectrum_with(a, gram, &Tolerances::DEFAULT)
}

pub fn spectrum_with(a: &OperatorMatrix, gram: &GramMatrix, tol: &Tolerances) -> Result<Vec<C64>> {
    check_same_basis(&a.basis, &gram.basis)?;
    let n = a.dim();
    if n != gram.dim() {
        return Err(Error::DimensionMismatch {
            expected: gram.dim(),
            found: n,
        });
    }
    let l = gram.cholesky_factor();
    // X = A L^-H, obtained from L X^H = A^H.
    let xh = l
        .solve_lower_triangular(&a.entries.adjoint())
        .ok_or_else(|| Error::DegenerateGram {
            reason: "singular Cholesky factor".into(),
        })?;
    let b = l.adjoint() * xh.adjoint();

    let skew = frobenius(&(&b - b.adjoint()));
    let scale = frobenius(&b).max(1.0);
    let mut values: Vec<C64> = if skew <= tol.exact * scale {
        let h = (&b + b.adjoint()).map(|z| z * 0.5);
        let eig = SymmetricEigen::try_new(h, f64::EPSILON, EIGEN_MAX_ITERATIONS).ok_or(
            Error::EigenFailure {
                dim: n,
                max_iterations: EIGEN_MAX_ITERATIONS,
            },
        )?;
        eig.eigenvalues.iter().map(|&x| C64::new(x, 0.0)).collect()
    } else {
        let schur =
            Schur::try_new(b, f64::EPSILON, EIGEN_MAX_ITERATIONS).ok_or(Error::EigenFailure {
                dim: n,
                max_iterations: EIGEN_MAX_ITERATIONS,
            })?;
        let ev = schur.eigenvalues().ok_or(Error::EigenFailure {
            dim: n,
            max_iterations: EIGEN_MAX_ITERATIONS,
        })?;
        ev.iter().copied().collect()
    };
    values.sort_by(spectral_order);
    Ok(values)
}

/// Groups a sorted real spectrum into `(value, multiplicity)` pairs.
pub fn multiplicities(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some((v, m)) if (x - *v).abs() <= tol * v.abs().max(1.0) => *m += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn id() -> BasisId {
        BasisId::new("test")
    }

    fn mat(rows: &[&[C64]]) -> OperatorMatrix {
        let n = rows.len();
        OperatorMatrix::new(CMatrix::from_fn(n, n, |i, j| rows[i][j]), id()).unwrap()
    }

    fn real_diag(v: &[f64]) -> OperatorMatrix {
        let vals: Vec<C64> = v.iter().map(|&x| c(x, 0.0)).collect();
        OperatorMatrix::from_diagonal(&vals, id()).unwrap()
    }

    #[test]
    fn commutator_of_pauli_x_and_y() {
        let x = mat(&[&[c(0., 0.), c(1., 0.)], &[c(1., 0.), c(0., 0.)]]);
        let y = mat(&[&[c(0., 0.), c(0., -1.)], &[c(0., 1.), c(0., 0.)]]);
        let xy = commutator(&x, &y).unwrap();
        assert_eq!(xy.get(0, 0), c(0., 2.));
        assert_eq!(xy.get(1, 1), c(0., -2.));
        assert_eq!(xy.get(0, 1), c(0., 0.));
        assert_eq!(xy.get(1, 0), c(0., 0.));
    }

    #[test]
    fn commutator_with_self_and_identity_vanishes() {
        let a = mat(&[&[c(1., 2.), c(3., 0.)], &[c(-1., 1.), c(0.5, 0.)]]);
        assert_eq!(commutator(&a, &a).unwrap().frobenius_norm(), 0.0);
        let i = OperatorMatrix::identity(2, id()).unwrap();
        assert_eq!(commutator(&i, &a).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn commutator_rejects_basis_mismatch() {
        let a = OperatorMatrix::identity(2, BasisId::new("a")).unwrap();
        let b = OperatorMatrix::identity(2, BasisId::new("b")).unwrap();
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::BasisMismatch { .. })
        ));
        assert!(matches!(a.compose(&b), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn operator_matrix_must_be_square() {
        let err = OperatorMatrix::new(CMatrix::zeros(2, 3), id()).unwrap_err();
        assert_eq!(err.name(), "InvalidParameter");
    }

    #[test]
    fn adjoint_examples() {
        let h = mat(&[&[c(1., 0.), c(2., -1.)], &[c(2., 1.), c(-3., 0.)]]);
        let g = GramMatrix::identity(2, id()).unwrap();
        let adj = adjoint_wrt(&h, &g).unwrap();
        assert!(frobenius(&(adj.entries() - h.entries())) < 1e-15);

        let d = real_diag(&[1.0, 2.0]);
        let g = GramMatrix::from_diagonal(&[3.0, 0.25], id()).unwrap();
        let adj = adjoint_wrt(&d, &g).unwrap();
        assert!(frobenius(&(adj.entries() - d.entries())) < 1e-15);

        // G^-1 A^H G for A = [[0,1],[0,0]], G = diag(1,2).
        let a = mat(&[&[c(0., 0.), c(1., 0.)], &[c(0., 0.), c(0., 0.)]]);
        let g = GramMatrix::from_diagonal(&[1.0, 2.0], id()).unwrap();
        let adj = adjoint_wrt(&a, &g).unwrap();
        let expected = mat(&[&[c(0., 0.), c(0., 0.)], &[c(0.5, 0.), c(0., 0.)]]);
        assert!(frobenius(&(adj.entries() - expected.entries())) < 1e-15);
    }

    #[test]
    fn gram_validation() {
        let non_herm =
            CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0.5, 0.), c(0.2, 0.), c(1., 0.)]);
        assert!(matches!(
            GramMatrix::new(non_herm, id()),
            Err(Error::DegenerateGram { .. })
        ));
        let indefinite =
            CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
        assert!(matches!(
            GramMatrix::new(indefinite, id()),
            Err(Error::DegenerateGram { .. })
        ));
        let singular = CMatrix::zeros(2, 2);
        assert!(matches!(
            GramMatrix::new(singular, id()),
            Err(Error::DegenerateGram { .. })
        ));
    }

    #[test]
    fn spectrum_examples() {
        let g3 = GramMatrix::identity(3, id()).unwrap();
        let s = spectrum(&real_diag(&[3.0, 1.0, 2.0]), &g3).unwrap();
        assert_eq!(s, vec![c(1., 0.), c(2., 0.), c(3., 0.)]);

        let z = OperatorMatrix::zeros(3, id()).unwrap();
        assert!(spectrum(&z, &g3).unwrap().iter().all(|v| v.norm() == 0.0));

        let g2 = GramMatrix::identity(2, id()).unwrap();
        let a = mat(&[&[c(2., 0.), c(1., 0.)], &[c(1., 0.), c(2., 0.)]]);
        let s = spectrum(&a, &g2).unwrap();
        assert!((s[0] - c(1., 0.)).norm() < 1e-14);
        assert!((s[1] - c(3., 0.)).norm() < 1e-14);
    }

    #[test]
    fn spectrum_of_non_normal_matrix_uses_schur() {
        // Upper triangular with complex diagonal.
        let a = mat(&[&[c(1., 1.), c(5., 0.)], &[c(0., 0.), c(1., -1.)]]);
        let g = GramMatrix::identity(2, id()).unwrap();
        let s = spectrum(&a, &g).unwrap();
        assert!((s[0] - c(1., -1.)).norm() < 1e-12);
        assert!((s[1] - c(1., 1.)).norm() < 1e-12);
    }

    #[test]
    fn spectrum_in_weighted_basis() {
        // A = diag(1,2) written in the basis {e0, e0 + e1}; Gram of that basis.
        let a = mat(&[&[c(1., 0.), c(-1., 0.)], &[c(0., 0.), c(2., 0.)]]);
        let g = GramMatrix::new(
            CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(1., 0.), c(1., 0.), c(2., 0.)]),
            id(),
        )
        .unwrap();
        let s = spectrum(&a, &g).unwrap();
        assert!((s[0] - c(1., 0.)).norm() < 1e-12);
        assert!((s[1] - c(2., 0.)).norm() < 1e-12);
    }

    #[test]
    fn multiplicity_grouping() {
        let m = multiplicities(&[0.5, 1.5, 1.5, 2.5, 2.5, 2.5], 1e-10);
        assert_eq!(m, vec![(0.5, 1), (1.5, 2), (2.5, 3)]);
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = CMatrix> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
            .prop_map(move |v| CMatrix::from_fn(n, n, |i, j| c(v[i * n + j].0, v[i * n + j].1)))
    }

    fn arb_gram(n: usize) -> impl Strategy<Value = CMatrix> {
        arb_matrix(n).prop_map(move |m| &m * m.adjoint() + CMatrix::identity(n, n) * c(0.5, 0.0))
    }

    fn unitary_from(m: &CMatrix) -> CMatrix {
        m.clone().qr().q()
    }

    /// Greedy nearest matching; returns the largest distance between paired values.
    fn match_distance(a: &[C64], b: &[C64]) -> f64 {
        let mut used = vec![false; b.len()];
        let mut worst: f64 = 0.0;
        for x in a {
            let (k, d) = b
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, y)| (k, (x - y).norm()))
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .unwrap();
            used[k] = true;
            worst = worst.max(d);
        }
        worst
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn commutator_is_exactly_antisymmetric(a in arb_matrix(4), b in arb_matrix(4)) {
            let a = OperatorMatrix::new(a, id()).unwrap();
            let b = OperatorMatrix::new(b, id()).unwrap();
            let ab = commutator(&a, &b).unwrap();
            let ba = commutator(&b, &a).unwrap();
            prop_assert_eq!(ab.entries(), &(-ba.entries()));
        }

        #[test]
        fn double_adjoint_is_identity(a in arb_matrix(5), g in arb_gram(5)) {
            let a = OperatorMatrix::new(a, id()).unwrap();
            let g = GramMatrix::new(g, id()).unwrap();
            let back = adjoint_wrt(&adjoint_wrt(&a, &g).unwrap(), &g).unwrap();
            let rel = frobenius(&(back.entries() - a.entries())) / a.frobenius_norm();
            prop_assert!(rel < 1e-12, "relative error {rel:e}");
        }

        #[test]
        fn spectrum_invariant_under_gram_unitary(a in arb_matrix(5), g in arb_gram(5), v in arb_matrix(5)) {
            let gram = GramMatrix::new(g.clone(), id()).unwrap();
            let l = gram.cholesky_factor();
            let l_inv_h = l.clone().try_inverse().unwrap().adjoint();
            // U = L^-H V L^H satisfies U^H G U = G.
            let u = &l_inv_h * unitary_from(&v) * l.adjoint();
            let drift = frobenius(&(u.adjoint() * &g * &u - &g)) / frobenius(&g);
            prop_assert!(drift < 1e-12);

            let op = OperatorMatrix::new(a.clone(), id()).unwrap();
            let moved = OperatorMatrix::new(u.clone().try_inverse().unwrap() * &a * &u, id()).unwrap();
            let s0 = spectrum(&op, &gram).unwrap();
            let s1 = spectrum(&moved, &gram).unwrap();
            prop_assert!(match_distance(&s0, &s1) < 1e-10);

            // Same check on a G-self-adjoint operator, where the Hermitian path is taken.
            let herm = &a + a.adjoint();
            let sa = OperatorMatrix::new(gram.solve(&herm), id()).unwrap();
            let sa_moved = OperatorMatrix::new(u.clone().try_inverse().unwrap() * sa.entries() * &u, id()).unwrap();
            let t0 = spectrum(&sa, &gram).unwrap();
            let t1 = spectrum(&sa_moved, &gram).unwrap();
            prop_assert!(t0.iter().all(|z| z.im == 0.0));
            prop_assert!(match_distance(&t0, &t1) < 1e-10);
        }
    }
}
