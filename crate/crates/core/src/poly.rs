//! Sparse bivariate polynomials in `(u, v)` with `f64` coefficients.

use std::collections::BTreeMap;
use std::fmt;

/// A polynomial `Σ c·u^i·v^j`, keyed by `(i, j)`.
///
/// Zero coefficients are dropped on insertion, so two polynomials compare
/// equal exactly when their non-zero monomials agree.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), f64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn monomial(i: u32, j: u32, c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, f64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Adds `c·u^i·v^j`, summing with any existing term of the same exponents.
    pub fn add_term(&mut self, i: u32, j: u32, c: f64) {
        let entry = self.terms.entry((i, j)).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * u.powi(i as i32) * v.powi(j as i32))
            .sum()
    }

    pub fn du(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&(i, _, _)| i > 0)
                .map(|(i, j, c)| (i - 1, j, c * i as f64)),
        )
    }

    pub fn dv(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&(_, j, _)| j > 0)
                .map(|(i, j, c)| (i, j - 1, c * j as f64)),
        )
    }

    /// Exact quotient by `v`, or the first monomial with no `v` factor.
    pub fn div_v(&self) -> Result<Self, (u32, u32, f64)> {
        if let Some((i, j, c)) = self.terms().find(|&(_, j, _)| j == 0) {
            return Err((i, j, c));
        }
        Ok(Self::from_terms(
            self.terms().map(|(i, j, c)| (i, j - 1, c)),
        ))
    }

    /// `u^k · self`.
    pub fn shift_u(&self, k: u32) -> Self {
        Self::from_terms(self.terms().map(|(i, j, c)| (i + k, j, c)))
    }

    /// `u^a v^b · self`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        Self::from_terms(self.terms().map(|(i, j, c)| (i + a, j + b, c)))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.terms().map(|(i, j, c)| (i, j, c * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            for (k, l, d) in other.terms() {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, j, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            match i {
                0 => {}
                1 => write!(f, "·u")?,
                _ => write!(f, "·u^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "·v")?,
                _ => write!(f, "·v^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_terms_are_summed() {
        let p = Poly2::from_terms([(1, 0, 1.0), (1, 0, 1.0)]);
        assert_eq!(p.coeff(1, 0), 2.0);
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn cancelling_terms_vanish() {
        let p = Poly2::from_terms([(2, 1, 3.0), (2, 1, -3.0)]);
        assert!(p.is_zero());
    }

    #[test]
    fn derivatives_and_division() {
        // u^2 v^3 / 3
        let p = Poly2::monomial(2, 3, 1.0 / 3.0);
        assert_eq!(p.dv(), Poly2::monomial(2, 2, 1.0));
        assert_eq!(p.du(), Poly2::monomial(1, 3, 2.0 / 3.0));
        assert_eq!(p.div_v().unwrap(), Poly2::monomial(2, 2, 1.0 / 3.0));
        assert_eq!(Poly2::monomial(3, 0, 1.0).div_v(), Err((3, 0, 1.0)));
    }

    #[test]
    fn product_matches_pointwise() {
        let a = Poly2::from_terms([(1, 0, 1.0), (0, 2, -0.5)]);
        let b = Poly2::from_terms([(0, 0, 2.0), (1, 1, 3.0)]);
        let (u, v) = (0.3, -0.7);
        assert!((a.mul(&b).eval(u, v) - a.eval(u, v) * b.eval(u, v)).abs() < 1e-14);
    }
}
