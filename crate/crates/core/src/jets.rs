//! Truncated bivariate Taylor jets.
//!
//! A [`Jet2`] of order `k` at a base point `(u0, v0)` stores the normalized
//! Taylor coefficients `c_ij = ∂^{i+j}g / (i! j! ∂u^i ∂v^j)` for every
//! `i + j ≤ k`. Arithmetic is truncated at the jet order, so every coefficient
//! of a result is exact (up to floating point) for the function it represents.
//!
//! Coefficients are stored by total degree: `[c00, c10, c01, c20, c11, c02, ...]`.
//! Truncating to a lower order is therefore just a prefix.
//!
//! Binary operations on jets of different orders produce a jet of the smaller
//! order. Jets at different base points cannot be combined.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::config::Tolerances;
use crate::poly::Poly2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("DivisionNearZero: divisor constant term {constant:e}")]
    DivisionNearZero { constant: f64 },
    #[error("SqrtOfNonpositive: radicand constant term {constant:e}")]
    SqrtOfNonpositive { constant: f64 },
    #[error("NotDivisibleByV: coefficient c[{i},0] = {coeff:e} is not zero (input not in adapted coordinates?)")]
    NotDivisibleByV { i: usize, coeff: f64 },
}

#[inline]
fn index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Number of coefficients of an order-`k` jet.
#[inline]
pub fn coeff_count(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, m| acc * (n - m) as f64 / (m + 1) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    base: [f64; 2],
    order: usize,
    coeffs: Vec<f64>,
}

impl Jet2 {
    pub fn zero(base: [f64; 2], order: usize) -> Self {
        Self {
            base,
            order,
            coeffs: vec![0.0; coeff_count(order)],
        }
    }

    pub fn constant(base: [f64; 2], order: usize, c: f64) -> Self {
        let mut j = Self::zero(base, order);
        j.coeffs[0] = c;
        j
    }

    /// The coordinate function `u` expanded at `base`.
    pub fn var_u(base: [f64; 2], order: usize) -> Self {
        let mut j = Self::constant(base, order, base[0]);
        if order > 0 {
            j.coeffs[index(1, 0)] = 1.0;
        }
        j
    }

    /// The coordinate function `v` expanded at `base`.
    pub fn var_v(base: [f64; 2], order: usize) -> Self {
        let mut j = Self::constant(base, order, base[1]);
        if order > 0 {
            j.coeffs[index(0, 1)] = 1.0;
        }
        j
    }

    /// Builds a jet from coefficients in total-degree order.
    ///
    /// Returns `None` if `coeffs.len()` is not `(k+1)(k+2)/2`.
    pub fn from_coeffs(base: [f64; 2], order: usize, coeffs: Vec<f64>) -> Option<Self> {
        (coeffs.len() == coeff_count(order)).then_some(Self {
            base,
            order,
            coeffs,
        })
    }

    /// Builds a jet from a closure giving `c_ij`.
    pub fn from_fn(base: [f64; 2], order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut j = Self::zero(base, order);
        for d in 0..=order {
            for jj in 0..=d {
                j.coeffs[index(d - jj, jj)] = f(d - jj, jj);
            }
        }
        j
    }

    /// Lifts a polynomial to its exact Taylor expansion at `base`.
    pub fn lift(p: &Poly2, base: [f64; 2], order: usize) -> Self {
        let [u0, v0] = base;
        let mut j = Self::zero(base, order);
        for (i, jexp, c) in p.terms() {
            for a in 0..=i.min(order as u32) {
                let cu = c * binomial(i, a) * u0.powi((i - a) as i32);
                for b in 0..=jexp.min(order as u32 - a) {
                    let cv = binomial(jexp, b) * v0.powi((jexp - b) as i32);
                    j.coeffs[index(a as usize, b as usize)] += cu * cv;
                }
            }
        }
        j
    }

    pub fn base(&self) -> [f64; 2] {
        self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `c_ij`, or zero beyond the jet order.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.order {
            0.0
        } else {
            self.coeffs[index(i, j)]
        }
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `∂^{i+j} g / ∂u^i ∂v^j` at the base point.
    pub fn partial(&self, i: usize, j: usize) -> f64 {
        self.coeff(i, j) * factorial(i) * factorial(j)
    }

    /// Gradient `(g_u, g_v)` at the base point.
    pub fn gradient(&self) -> [f64; 2] {
        [self.partial(1, 0), self.partial(0, 1)]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            base: self.base,
            order,
            coeffs: self.coeffs[..coeff_count(order)].to_vec(),
        }
    }

    /// Evaluates the Taylor polynomial at `base + (du, dv)`.
    pub fn eval_offset(&self, du: f64, dv: f64) -> f64 {
        let mut s = 0.0;
        for d in 0..=self.order {
            for j in 0..=d {
                let i = d - j;
                s += self.coeffs[index(i, j)] * du.powi(i as i32) * dv.powi(j as i32);
            }
        }
        s
    }

    fn assert_same_base(&self, other: &Self) {
        assert!(
            self.base == other.base,
            "jets at different base points: {:?} vs {:?}",
            self.base,
            other.base
        );
    }

    /// Partial derivative in `u`; the result has order `k - 1`.
    ///
    /// # Panics
    ///
    /// Panics on an order-0 jet.
    pub fn du(&self) -> Self {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        Self::from_fn(self.base, self.order - 1, |i, j| {
            (i + 1) as f64 * self.coeffs[index(i + 1, j)]
        })
    }

    /// Partial derivative in `v`; the result has order `k - 1`.
    ///
    /// # Panics
    ///
    /// Panics on an order-0 jet.
    pub fn dv(&self) -> Self {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        Self::from_fn(self.base, self.order - 1, |i, j| {
            (j + 1) as f64 * self.coeffs[index(i, j + 1)]
        })
    }

    /// Directional derivative `a·∂u + b·∂v` with jet-valued coefficients.
    pub fn directional(&self, a: &Jet2, b: &Jet2) -> Self {
        &(a * &self.du()) + &(b * &self.dv())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            base: self.base,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_const(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        self.assert_same_base(other);
        let order = self.order.min(other.order);
        Self {
            base: self.base,
            order,
            coeffs: (0..coeff_count(order))
                .map(|n| f(self.coeffs[n], other.coeffs[n]))
                .collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul_jet(&self, other: &Self) -> Self {
        self.assert_same_base(other);
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.base, order);
        for d1 in 0..=order {
            for j1 in 0..=d1 {
                let a = self.coeffs[index(d1 - j1, j1)];
                if a == 0.0 {
                    continue;
                }
                for d2 in 0..=(order - d1) {
                    for j2 in 0..=d2 {
                        let i = d1 - j1 + d2 - j2;
                        out.coeffs[index(i, j1 + j2)] += a * other.coeffs[index(d2 - j2, j2)];
                    }
                }
            }
        }
        out
    }

    /// Quotient `self / other` by forward recurrence on `other · q = self`.
    pub fn div_jet(&self, other: &Self, tol: &Tolerances) -> Result<Self, JetError> {
        self.assert_same_base(other);
        let b0 = other.coeffs[0];
        if b0.abs() <= tol.div {
            return Err(JetError::DivisionNearZero { constant: b0 });
        }
        let order = self.order.min(other.order);
        let mut q = Self::zero(self.base, order);
        for d in 0..=order {
            for j in 0..=d {
                let i = d - j;
                let mut s = self.coeffs[index(i, j)];
                for p in 0..=i {
                    for r in 0..=j {
                        if p == 0 && r == 0 {
                            continue;
                        }
                        s -= other.coeffs[index(p, r)] * q.coeffs[index(i - p, j - r)];
                    }
                }
                q.coeffs[index(i, j)] = s / b0;
            }
        }
        Ok(q)
    }

    pub fn recip(&self, tol: &Tolerances) -> Result<Self, JetError> {
        Self::constant(self.base, self.order, 1.0).div_jet(self, tol)
    }

    /// Square root by the recurrence `s · s = self`.
    pub fn sqrt(&self, tol: &Tolerances) -> Result<Self, JetError> {
        let a0 = self.coeffs[0];
        if a0 <= tol.sqrt {
            return Err(JetError::SqrtOfNonpositive { constant: a0 });
        }
        let mut s = Self::zero(self.base, self.order);
        let s0 = a0.sqrt();
        s.coeffs[0] = s0;
        for d in 1..=self.order {
            for j in 0..=d {
                let i = d - j;
                let mut acc = self.coeffs[index(i, j)];
                for p in 0..=i {
                    for r in 0..=j {
                        if (p == 0 && r == 0) || (p == i && r == j) {
                            continue;
                        }
                        acc -= s.coeffs[index(p, r)] * s.coeffs[index(i - p, j - r)];
                    }
                }
                s.coeffs[index(i, j)] = acc / (2.0 * s0);
            }
        }
        Ok(s)
    }

    /// Exact division by `v` for a jet based on the `u`-axis.
    ///
    /// Requires every `c_i0` to vanish within `tol.divv`; the result has
    /// order `k - 1`.
    pub fn divide_by_v(&self, tol: &Tolerances) -> Result<Self, JetError> {
        assert!(
            self.base[1] == 0.0,
            "divide_by_v needs a base point on the u-axis"
        );
        assert!(self.order > 0, "cannot divide an order-0 jet by v");
        for i in 0..=self.order {
            let c = self.coeffs[index(i, 0)];
            if c.abs() > tol.divv {
                return Err(JetError::NotDivisibleByV { i, coeff: c });
            }
        }
        Ok(Self::from_fn(self.base, self.order - 1, |i, j| {
            self.coeffs[index(i, j + 1)]
        }))
    }

    /// Quotient by the coordinate `v`, on or off the `u`-axis.
    pub fn over_v(&self, tol: &Tolerances) -> Result<Self, JetError> {
        if self.base[1] == 0.0 {
            self.divide_by_v(tol)
        } else {
            let v = Self::var_v(self.base, self.order);
            Ok(self.div_jet(&v, tol)?.truncate(self.order - 1))
        }
    }

    /// Largest absolute coefficient difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = coeff_count(self.order.min(other.order));
        (0..n)
            .map(|k| (self.coeffs[k] - other.coeffs[k]).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Add for &Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &Jet2) -> Jet2 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &Jet2) -> Jet2 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: &Jet2) -> Jet2 {
        self.mul_jet(rhs)
    }
}

impl Neg for &Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        &self + &rhs
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        &self - &rhs
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        &self * &rhs
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

/// A 3-vector of jets at a common base point.
#[derive(Debug, Clone, PartialEq)]
pub struct JetVec3(pub [Jet2; 3]);

impl JetVec3 {
    pub fn lift(components: &[Poly2; 3], base: [f64; 2], order: usize) -> Self {
        Self(components.each_ref().map(|p| Jet2::lift(p, base, order)))
    }

    pub fn constant(base: [f64; 2], order: usize, c: [f64; 3]) -> Self {
        Self(c.map(|x| Jet2::constant(base, order, x)))
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(Jet2::order).min().unwrap_or(0)
    }

    pub fn base(&self) -> [f64; 2] {
        self.0[0].base()
    }

    pub fn value(&self) -> [f64; 3] {
        self.0.each_ref().map(Jet2::value)
    }

    pub fn map(&self, f: impl Fn(&Jet2) -> Jet2) -> Self {
        Self(self.0.each_ref().map(f))
    }

    pub fn try_map<E>(&self, f: impl Fn(&Jet2) -> Result<Jet2, E>) -> Result<Self, E> {
        let [a, b, c] = &self.0;
        Ok(Self([f(a)?, f(b)?, f(c)?]))
    }

    pub fn du(&self) -> Self {
        self.map(Jet2::du)
    }

    pub fn dv(&self) -> Self {
        self.map(Jet2::dv)
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.map(|j| j.truncate(order))
    }

    pub fn dot(&self, other: &Self) -> Jet2 {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &other.0;
        &(&(a0 * b0) + &(a1 * b1)) + &(a2 * b2)
    }

    pub fn cross(&self, other: &Self) -> Self {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &other.0;
        Self([
            &(a1 * b2) - &(a2 * b1),
            &(a2 * b0) - &(a0 * b2),
            &(a0 * b1) - &(a1 * b0),
        ])
    }

    pub fn norm_sq(&self) -> Jet2 {
        self.dot(self)
    }

    pub fn scale_by(&self, s: &Jet2) -> Self {
        self.map(|c| c * s)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|c| c.scale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &other.0;
        Self([a0 + b0, a1 + b1, a2 + b2])
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// `a·self_u + b·self_v`.
    pub fn directional(&self, a: &Jet2, b: &Jet2) -> Self {
        self.map(|c| c.directional(a, b))
    }

    /// Unit vector field `self / ‖self‖`.
    pub fn normalized(&self, tol: &Tolerances) -> Result<Self, JetError> {
        let inv = self.norm_sq().sqrt(tol)?.recip(tol)?;
        Ok(self.scale_by(&inv))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..3)
            .map(|k| self.0[k].max_abs_diff(&other.0[k]))
            .fold(0.0, f64::max)
    }
}

/// Determinant `det(a, b, c)` of three jet vectors.
pub fn det3(a: &JetVec3, b: &JetVec3, c: &JetVec3) -> Jet2 {
    a.cross(b).dot(c)
}
