//! Uniform tensor-product lattices, centered finite-difference stencils and
//! matrix-free first-order differential operators.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{BasisId, CMatrix, OperatorMatrix, C64};

/// Stencil order used when none is given.
///
/// At 128 points per axis, sixteenth order puts the Dirac residuals of the test
/// panel near `1e-7`; twelfth order leaves them around `5e-6` and fourth order
/// around `1e-3`.
pub const DEFAULT_STENCIL_ORDER: usize = 16;
/// Largest lattice that [`LatticeOperator::to_matrix`] will densify.
pub const DENSE_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Values outside the lattice are zero.
    ZeroPadded,
    /// Each axis wraps around.
    Periodic,
}

/// Points `min + i h`, `i = 0..points`, with `h = (max - min) / points`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, points: usize) -> Self {
        Self { min, max, points }
    }

    pub fn symmetric(half_width: f64, points: usize) -> Self {
        Self::new(-half_width, half_width, points)
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / self.points as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.min + i as f64 * self.spacing()
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.min + self.max)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.max - self.min)
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.coord(i)).collect()
    }
}

/// Centered stencil weights for the first and second derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct Stencil {
    order: usize,
    /// `first[k-1]` multiplies `f(x + k h) - f(x - k h)`.
    first: Vec<f64>,
    /// `second[0]` is the center weight, `second[k]` multiplies `f(x + k h) + f(x - k h)`.
    second: Vec<f64>,
}

impl Stencil {
    /// Accuracy `order` must be even, between 2 and 16.
    pub fn new(order: usize) -> Result<Self> {
        if !(2..=16).contains(&order) || !order.is_multiple_of(2) {
            return Err(Error::invalid(
                "stencil_order",
                format!("expected an even order in 2..=16, got {order}"),
            ));
        }
        let m = order / 2;
        let fact = |k: usize| (1..=k).fold(1.0, |acc, j| acc * j as f64);
        let mut first = Vec::with_capacity(m);
        let mut second = vec![0.0; m + 1];
        for k in 1..=m {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let core = fact(m) * fact(m) / (fact(m - k) * fact(m + k));
            first.push(sign * core / k as f64);
            second[k] = 2.0 * sign * core / (k * k) as f64;
        }
        second[0] = -2.0 * second[1..].iter().sum::<f64>();
        Ok(Self {
            order,
            first,
            second,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn half_width(&self) -> usize {
        self.first.len()
    }

    pub fn first_weights(&self) -> &[f64] {
        &self.first
    }

    pub fn second_weights(&self) -> &[f64] {
        &self.second
    }
}

/// Tensor-product lattice with row-major flat indexing (last axis fastest).
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    axes: Vec<Axis>,
    boundary: Boundary,
    stencil: Stencil,
    strides: Vec<usize>,
}

impl Lattice {
    pub fn new(axes: Vec<Axis>, boundary: Boundary, min_points: usize) -> Result<Self> {
        Self::with_stencil(axes, boundary, min_points, DEFAULT_STENCIL_ORDER)
    }

    pub fn with_stencil(
        axes: Vec<Axis>,
        boundary: Boundary,
        min_points: usize,
        order: usize,
    ) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::invalid("axes", "a lattice needs at least one axis"));
        }
        let stencil = Stencil::new(order)?;
        for a in &axes {
            if !(a.min.is_finite() && a.max.is_finite()) {
                return Err(Error::invalid("extent", "axis extents must be finite"));
            }
            if a.points < min_points.max(stencil.half_width() + 1) {
                return Err(Error::invalid(
                    "points",
                    format!(
                        "need at least {} points per axis, got {}",
                        min_points.max(stencil.half_width() + 1),
                        a.points
                    ),
                ));
            }
            if !(a.spacing() > 0.0) {
                return Err(Error::invalid(
                    "extent",
                    format!("axis spacing must be positive, got [{}, {}]", a.min, a.max),
                ));
            }
        }
        let mut strides = vec![1; axes.len()];
        for d in (0..axes.len() - 1).rev() {
            strides[d] = strides[d + 1] * axes[d + 1].points;
        }
        Ok(Self {
            axes,
            boundary,
            stencil,
            strides,
        })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, d: usize) -> &Axis {
        &self.axes[d]
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn stencil(&self) -> &Stencil {
        &self.stencil
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(Axis::spacing).product()
    }

    /// Multi-index of a flat index.
    pub fn index(&self, flat: usize) -> Vec<usize> {
        self.axes
            .iter()
            .zip(&self.strides)
            .map(|(a, s)| (flat / s) % a.points)
            .collect()
    }

    /// Coordinates of a flat index.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.axes
            .iter()
            .zip(&self.strides)
            .map(|(a, s)| a.coord((flat / s) % a.points))
            .collect()
    }

    /// Evaluates `f` at every lattice point.
    pub fn sample<T>(&self, mut f: impl FnMut(&[f64]) -> T) -> Vec<T> {
        let mut x = vec![0.0; self.rank()];
        (0..self.len())
            .map(|flat| {
                for (d, (a, s)) in self.axes.iter().zip(&self.strides).enumerate() {
                    x[d] = a.coord((flat / s) % a.points);
                }
                f(&x)
            })
            .collect()
    }

    fn check_len(&self, v: &[C64]) -> Result<()> {
        if v.len() == self.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.len(),
                found: v.len(),
            })
        }
    }

    /// Discrete `L^2` inner product `sum conj(a) b dV`.
    pub fn inner(&self, a: &[C64], b: &[C64]) -> C64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>() * self.cell_volume()
    }

    pub fn norm(&self, a: &[C64]) -> f64 {
        Float::sqrt(a.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.cell_volume())
    }

    fn neighbour(&self, flat: usize, i: usize, d: usize, offset: isize) -> Option<usize> {
        let n = self.axes[d].points as isize;
        let j = i as isize + offset;
        let j = if (0..n).contains(&j) {
            j
        } else {
            match self.boundary {
                Boundary::ZeroPadded => return None,
                Boundary::Periodic => j.rem_euclid(n),
            }
        };
        Some((flat as isize + (j - i as isize) * self.strides[d] as isize) as usize)
    }

    /// First derivative along axis `d`.
    pub fn derivative(&self, v: &[C64], d: usize) -> Result<Vec<C64>> {
        self.check_len(v)?;
        self.check_axis(d)?;
        let h = self.axes[d].spacing();
        let w = self.stencil.first_weights();
        let (stride, points) = (self.strides[d], self.axes[d].points);
        Ok((0..v.len())
            .map(|flat| {
                let i = (flat / stride) % points;
                let mut acc = C64::new(0.0, 0.0);
                for (k, wk) in w.iter().enumerate() {
                    let k = k as isize + 1;
                    let plus = self
                        .neighbour(flat, i, d, k)
                        .map_or(C64::new(0.0, 0.0), |j| v[j]);
                    let minus = self
                        .neighbour(flat, i, d, -k)
                        .map_or(C64::new(0.0, 0.0), |j| v[j]);
                    acc += (plus - minus) * *wk;
                }
                acc / h
            })
            .collect())
    }

    /// Second derivative along axis `d`.
    pub fn second_derivative(&self, v: &[C64], d: usize) -> Result<Vec<C64>> {
        self.check_len(v)?;
        self.check_axis(d)?;
        let h = self.axes[d].spacing();
        let w = self.stencil.second_weights();
        let (stride, points) = (self.strides[d], self.axes[d].points);
        Ok((0..v.len())
            .map(|flat| {
                let i = (flat / stride) % points;
                let mut acc = v[flat] * w[0];
                for (k, wk) in w.iter().enumerate().skip(1) {
                    let k = k as isize;
                    let plus = self
                        .neighbour(flat, i, d, k)
                        .map_or(C64::new(0.0, 0.0), |j| v[j]);
                    let minus = self
                        .neighbour(flat, i, d, -k)
                        .map_or(C64::new(0.0, 0.0), |j| v[j]);
                    acc += (plus + minus) * *wk;
                }
                acc / (h * h)
            })
            .collect())
    }

    fn check_axis(&self, d: usize) -> Result<()> {
        if d < self.rank() {
            Ok(())
        } else {
            Err(Error::invalid(
                "axis",
                format!("axis {d} out of range for a rank-{} lattice", self.rank()),
            ))
        }
    }

    /// Largest fraction of `|v|^2` lying in the outer `band` fraction of any axis.
    pub fn edge_mass_fraction(&self, v: &[C64], band: f64) -> f64 {
        let total: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let mut edge = 0.0;
        for (flat, z) in v.iter().enumerate() {
            let idx = self.index(flat);
            let near_edge = idx.iter().zip(&self.axes).any(|(&i, a)| {
                let cut = Float::ceil(band * a.points as f64) as usize;
                i < cut || i + cut >= a.points
            });
            if near_edge {
                edge += z.norm_sqr();
            }
        }
        edge / total
    }
}

/// `diag(x) + sum_d c_d(x) d/dx_d` applied without forming a matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeOperator {
    lattice: Lattice,
    diagonal: Vec<C64>,
    first_order: Vec<Option<Vec<C64>>>,
}

impl LatticeOperator {
    pub fn zero(lattice: &Lattice) -> Self {
        Self {
            lattice: lattice.clone(),
            diagonal: vec![C64::new(0.0, 0.0); lattice.len()],
            first_order: vec![None; lattice.rank()],
        }
    }

    pub fn identity(lattice: &Lattice) -> Self {
        let mut op = Self::zero(lattice);
        op.diagonal.iter_mut().for_each(|z| *z = C64::new(1.0, 0.0));
        op
    }

    pub fn multiplication(lattice: &Lattice, values: Vec<C64>) -> Result<Self> {
        lattice.check_len(&values)?;
        let mut op = Self::zero(lattice);
        op.diagonal = values;
        Ok(op)
    }

    /// Sets the coefficient field in front of `d/dx_d`.
    pub fn with_first_order(mut self, d: usize, coeffs: Vec<C64>) -> Result<Self> {
        self.lattice.check_axis(d)?;
        self.lattice.check_len(&coeffs)?;
        self.first_order[d] = if coeffs.iter().all(|z| *z == C64::new(0.0, 0.0)) {
            None
        } else {
            Some(coeffs)
        };
        Ok(self)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn diagonal(&self) -> &[C64] {
        &self.diagonal
    }

    pub fn first_order(&self, d: usize) -> Option<&[C64]> {
        self.first_order.get(d).and_then(|c| c.as_deref())
    }

    /// True when no derivative term is present.
    pub fn is_multiplication(&self) -> bool {
        self.first_order.iter().all(Option::is_none)
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.lattice.check_len(v)?;
        let mut out: Vec<C64> = self.diagonal.iter().zip(v).map(|(a, b)| a * b).collect();
        for (d, coeffs) in self.first_order.iter().enumerate() {
            if let Some(c) = coeffs {
                let dv = self.lattice.derivative(v, d)?;
                for ((o, ci), di) in out.iter_mut().zip(c).zip(dv) {
                    *o += ci * di;
                }
            }
        }
        Ok(out)
    }

    fn check_same_lattice(&self, other: &Self) -> Result<()> {
        if self.lattice == other.lattice {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: "lattice".into(),
                right: "different lattice".into(),
            })
        }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: C64, other: &Self, b: C64) -> Result<Self> {
        self.check_same_lattice(other)?;
        let mix = |x: &[C64], y: &[C64]| -> Vec<C64> {
            x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
        };
        let zeros = vec![C64::new(0.0, 0.0); self.lattice.len()];
        let first_order = self
            .first_order
            .iter()
            .zip(&other.first_order)
            .map(|(x, y)| match (x, y) {
                (None, None) => None,
                _ => {
                    let c = mix(
                        x.as_deref().unwrap_or(&zeros),
                        y.as_deref().unwrap_or(&zeros),
                    );
                    if c.iter().all(|z| *z == C64::new(0.0, 0.0)) {
                        None
                    } else {
                        Some(c)
                    }
                }
            })
            .collect();
        Ok(Self {
            lattice: self.lattice.clone(),
            diagonal: mix(&self.diagonal, &other.diagonal),
            first_order,
        })
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            lattice: self.lattice.clone(),
            diagonal: self.diagonal.iter().map(|z| z * s).collect(),
            first_order: self
                .first_order
                .iter()
                .map(|c| c.as_ref().map(|c| c.iter().map(|z| z * s).collect()))
                .collect(),
        }
    }

    /// `[A, B] v = A(B v) - B(A v)`.
    pub fn commutator_apply(&self, other: &Self, v: &[C64]) -> Result<Vec<C64>> {
        self.check_same_lattice(other)?;
        let ab = self.apply(&other.apply(v)?)?;
        let ba = other.apply(&self.apply(v)?)?;
        Ok(ab.iter().zip(&ba).map(|(x, y)| x - y).collect())
    }

    /// Dense matrix of the operator; only for lattices with at most [`DENSE_CAP`] points.
    pub fn to_matrix(&self, basis: BasisId) -> Result<OperatorMatrix> {
        let n = self.lattice.len();
        if n > DENSE_CAP {
            return Err(Error::TooLargeForDense {
                dim: n,
                cap: DENSE_CAP,
            });
        }
        let mut m = CMatrix::zeros(n, n);
        let mut e = vec![C64::new(0.0, 0.0); n];
        for j in 0..n {
            e[j] = C64::new(1.0, 0.0);
            let col = self.apply(&e)?;
            for (i, z) in col.into_iter().enumerate() {
                m[(i, j)] = z;
            }
            e[j] = C64::new(0.0, 0.0);
        }
        OperatorMatrix::new(m, basis)
    }
}

/// Relative residual `||a - b|| / ||reference||` in the discrete norm.
pub fn relative_residual(lattice: &Lattice, a: &[C64], b: &[C64], reference: f64) -> f64 {
    let diff: Vec<C64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    lattice.norm(&diff) / reference
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: Vec<f64>) -> Vec<C64> {
        v.into_iter().map(|x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn low_order_weights() {
        let s2 = Stencil::new(2).unwrap();
        assert_eq!(s2.first_weights(), &[0.5]);
        assert_eq!(s2.second_weights(), &[-2.0, 1.0]);
        let s4 = Stencil::new(4).unwrap();
        assert!((s4.first_weights()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((s4.first_weights()[1] + 1.0 / 12.0).abs() < 1e-15);
        assert!((s4.second_weights()[0] + 5.0 / 2.0).abs() < 1e-15);
        assert!((s4.second_weights()[1] - 4.0 / 3.0).abs() < 1e-15);
        assert!((s4.second_weights()[2] + 1.0 / 12.0).abs() < 1e-15);
        assert!(Stencil::new(3).is_err());
        assert!(Stencil::new(18).is_err());
    }

    #[test]
    fn stencil_is_exact_on_polynomials_of_its_order() {
        for order in [2usize, 4, 6, 8, 10] {
            let lat = Lattice::with_stencil(
                vec![Axis::symmetric(1.0, 64)],
                Boundary::ZeroPadded,
                8,
                order,
            )
            .unwrap();
            let k = order as i32;
            let v = real(lat.sample(|x| x[0].powi(k)));
            let dv = lat.derivative(&v, 0).unwrap();
            let d2v = lat.second_derivative(&v, 0).unwrap();
            let m = order / 2;
            for i in m..64 - m {
                let x = lat.axis(0).coord(i);
                assert!(
                    (dv[i].re - k as f64 * x.powi(k - 1)).abs() < 1e-9,
                    "order {order}"
                );
                assert!(
                    (d2v[i].re - (k * (k - 1)) as f64 * x.powi(k - 2)).abs() < 1e-7,
                    "order {order}"
                );
            }
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |n: usize| {
            let lat = Lattice::with_stencil(vec![Axis::new(0.0, 1.0, n)], Boundary::Periodic, 8, 4)
                .unwrap();
            let tau = core::f64::consts::TAU;
            let v = real(lat.sample(|x| (tau * x[0]).sin()));
            let dv = lat.derivative(&v, 0).unwrap();
            (0..n)
                .map(|i| (dv[i].re - tau * (tau * lat.axis(0).coord(i)).cos()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(32) / err(64);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn periodic_wraps_and_zero_padding_truncates() {
        let periodic =
            Lattice::with_stencil(vec![Axis::new(0.0, 1.0, 16)], Boundary::Periodic, 8, 12)
                .unwrap();
        let tau = core::f64::consts::TAU;
        let v = real(periodic.sample(|x| (tau * x[0]).sin()));
        let dv = periodic.derivative(&v, 0).unwrap();
        assert!((dv[0].re - tau).abs() < 1e-4);

        let padded =
            Lattice::with_stencil(vec![Axis::new(0.0, 1.0, 16)], Boundary::ZeroPadded, 8, 12)
                .unwrap();
        let ones = vec![C64::new(1.0, 0.0); 16];
        let d = padded.derivative(&ones, 0).unwrap();
        assert_eq!(d[8], C64::new(0.0, 0.0));
        assert!(d[0].re > 0.0);
    }

    #[test]
    fn two_axis_indexing() {
        let lat = Lattice::with_stencil(
            vec![Axis::new(0.0, 4.0, 16), Axis::new(0.0, 8.0, 32)],
            Boundary::ZeroPadded,
            8,
            4,
        )
        .unwrap();
        assert_eq!(lat.len(), 512);
        assert_eq!(lat.index(33), vec![1, 1]);
        assert_eq!(lat.point(33), vec![0.25, 0.25]);
        let v = real(lat.sample(|x| x[0] * x[0] * x[1]));
        let dq = lat.derivative(&v, 0).unwrap();
        let dp = lat.derivative(&v, 1).unwrap();
        let flat = 8 * 32 + 16;
        assert!((dq[flat].re - 2.0 * 2.0 * 4.0).abs() < 1e-10);
        assert!((dp[flat].re - 4.0).abs() < 1e-10);
    }

    #[test]
    fn operator_algebra_and_densification() {
        let lat =
            Lattice::with_stencil(vec![Axis::new(0.0, 1.0, 8)], Boundary::Periodic, 8, 2).unwrap();
        let x = LatticeOperator::multiplication(&lat, real(lat.sample(|x| x[0]))).unwrap();
        let d = LatticeOperator::zero(&lat)
            .with_first_order(0, vec![C64::new(1.0, 0.0); 8])
            .unwrap();
        let sum = x
            .combine(C64::new(2.0, 0.0), &d, C64::new(0.0, 1.0))
            .unwrap();
        let m = sum.to_matrix(BasisId::new("grid")).unwrap();
        assert_eq!(m.get(3, 3), C64::new(0.75, 0.0));
        assert_eq!(m.get(3, 4), C64::new(0.0, 4.0));
        assert_eq!(m.get(0, 7), C64::new(0.0, -4.0));
        let big = Lattice::new(
            vec![Axis::new(0.0, 1.0, 128), Axis::new(0.0, 1.0, 128)],
            Boundary::Periodic,
            8,
        )
        .unwrap();
        assert!(matches!(
            LatticeOperator::identity(&big).to_matrix(BasisId::new("grid")),
            Err(Error::TooLargeForDense { .. })
        ));
    }

    #[test]
    fn validation() {
        assert!(Lattice::new(vec![Axis::new(0.0, 1.0, 4)], Boundary::Periodic, 8).is_err());
        assert!(Lattice::new(vec![Axis::new(1.0, 1.0, 16)], Boundary::Periodic, 8).is_err());
        assert!(Lattice::new(
            vec![Axis::new(0.0, f64::INFINITY, 16)],
            Boundary::Periodic,
            8
        )
        .is_err());
    }
}
