//! Real polynomials in `(q^1..q^n, p_1..p_n)` with `n <= 2` and total degree at most 4.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest total degree a [`Polynomial`] may carry.
pub const DEGREE_CAP: u32 = 4;
/// Largest supported phase-space half-dimension.
pub const MAX_HALF_DIM: usize = 2;

/// Exponents of `q^1 q^2 p_1 p_2`; unused axes stay zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: [u8; MAX_HALF_DIM],
    pub p: [u8; MAX_HALF_DIM],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        q: [0; MAX_HALF_DIM],
        p: [0; MAX_HALF_DIM],
    };

    pub fn degree(&self) -> u32 {
        self.q.iter().chain(&self.p).map(|&e| e as u32).sum()
    }

    pub fn p_degree(&self) -> u32 {
        self.p.iter().map(|&e| e as u32).sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for a in 0..MAX_HALF_DIM {
            out.q[a] += other.q[a];
            out.p[a] += other.p[a];
        }
        out
    }

    pub fn eval(&self, q: &[f64], p: &[f64]) -> f64 {
        let mut v = 1.0;
        for (a, (&qa, &pa)) in q.iter().zip(p).enumerate() {
            v *= powu(qa, self.q[a]) * powu(pa, self.p[a]);
        }
        v
    }
}

fn powu(x: f64, e: u8) -> f64 {
    (0..e).fold(1.0, |acc, _| acc * x)
}

/// Polynomial observable on `R^2n`, stored as a sparse coefficient table.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, f64>,
}

fn check_half_dim(n: usize) -> Result<()> {
    if (1..=MAX_HALF_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::invalid(
            "n",
            alloc::format!("half-dimension must be 1 or 2, got {n}"),
        ))
    }
}

impl Polynomial {
    pub fn zero(n: usize) -> Result<Self> {
        check_half_dim(n)?;
        Ok(Self {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::from_terms(n, [(Monomial::ONE, c)])
    }

    /// The coordinate function `q^a`.
    pub fn q(n: usize, a: usize) -> Result<Self> {
        let mut m = Monomial::ONE;
        *axis_slot(&mut m.q, a, n)? = 1;
        Self::from_terms(n, [(m, 1.0)])
    }

    /// The coordinate function `p_a`.
    pub fn p(n: usize, a: usize) -> Result<Self> {
        let mut m = Monomial::ONE;
        *axis_slot(&mut m.p, a, n)? = 1;
        Self::from_terms(n, [(m, 1.0)])
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, f64)>) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for (m, c) in terms {
            if !c.is_finite() {
                return Err(Error::invalid(
                    "coefficient",
                    "classical observables need finite real coefficients",
                ));
            }
            if (n..MAX_HALF_DIM).any(|a| m.q[a] != 0 || m.p[a] != 0) {
                return Err(Error::invalid(
                    "monomial",
                    alloc::format!("exponent on an axis beyond n = {n}"),
                ));
            }
            if m.degree() > DEGREE_CAP {
                return Err(Error::DegreeOverflow {
                    degree: m.degree(),
                    cap: DEGREE_CAP,
                });
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: f64) {
        if c == 0.0 {
            return;
        }
        let slot = self.terms.entry(m).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.terms.remove(&m);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &f64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest power of the momenta appearing in any term.
    pub fn p_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::p_degree).max().unwrap_or(0)
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_term(*m, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.times(mb);
                if m.degree() > DEGREE_CAP {
                    return Err(Error::DegreeOverflow {
                        degree: m.degree(),
                        cap: DEGREE_CAP,
                    });
                }
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    /// `d/dq^a`.
    pub fn d_dq(&self, a: usize) -> Self {
        self.derivative(a, true)
    }

    /// `d/dp_a`.
    pub fn d_dp(&self, a: usize) -> Self {
        self.derivative(a, false)
    }

    fn derivative(&self, a: usize, wrt_q: bool) -> Self {
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        if a >= self.n {
            return out;
        }
        for (m, c) in &self.terms {
            let e = if wrt_q { m.q[a] } else { m.p[a] };
            if e == 0 {
                continue;
            }
            let mut d = *m;
            if wrt_q {
                d.q[a] -= 1;
            } else {
                d.p[a] -= 1;
            }
            out.add_term(d, c * e as f64);
        }
        out
    }

    pub fn eval(&self, q: &[f64], p: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c * m.eval(&q[..self.n], &p[..self.n]))
            .sum()
    }

    /// Random polynomial of total degree at most `max_degree` with integer
    /// coefficients in `-range..=range`, so that bracket identities hold exactly.
    pub fn random_integer<R: Rng>(
        n: usize,
        max_degree: u32,
        range: i32,
        rng: &mut R,
    ) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for m in monomials(n, max_degree.min(DEGREE_CAP)) {
            let c = rng.gen_range(-range..=range) as f64;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

fn axis_slot(slots: &mut [u8; MAX_HALF_DIM], a: usize, n: usize) -> Result<&mut u8> {
    check_half_dim(n)?;
    if a >= n {
        return Err(Error::invalid(
            "axis",
            alloc::format!("axis {a} out of range for n = {n}"),
        ));
    }
    Ok(&mut slots[a])
}

/// All monomials in `2n` variables of total degree at most `max_degree`.
pub fn monomials(n: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let vars = 2 * n;
    let mut exps = [0u8; 2 * MAX_HALF_DIM];
    fn rec(
        i: usize,
        vars: usize,
        left: u32,
        exps: &mut [u8; 2 * MAX_HALF_DIM],
        n: usize,
        out: &mut Vec<Monomial>,
    ) {
        if i == vars {
            let mut m = Monomial::ONE;
            m.q[..n].copy_from_slice(&exps[..n]);
            m.p[..n].copy_from_slice(&exps[n..2 * n]);
            out.push(m);
            return;
        }
        for e in 0..=left {
            exps[i] = e as u8;
            rec(i + 1, vars, left - e, exps, n, out);
        }
        exps[i] = 0;
    }
    rec(0, vars, max_degree, &mut exps, n, &mut out);
    out.sort();
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if *c < 0.0 { " - " } else { " + " })?;
            } else if *c < 0.0 {
                f.write_str("-")?;
            }
            write!(f, "{}", c.abs())?;
            for a in 0..self.n {
                for (name, e) in [("q", m.q[a]), ("p", m.p[a])] {
                    match e {
                        0 => {}
                        1 => write!(f, "*{name}{}", a + 1)?,
                        _ => write!(f, "*{name}{}^{e}", a + 1)?,
                    }
                }
            }
        }
        Ok(())
    }
}
