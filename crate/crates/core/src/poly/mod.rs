//! Real polynomials stored in the shifted power basis `Σ c_l (x - base)^l`.

mod monotone;
mod roots;
mod squarefree;

pub use monotone::{certify_monotone, invert_monotone, MonotonicityCertificate, ZeroLocation};
pub use roots::real_roots_in;
pub use squarefree::{squarefree_decomposition, SquarefreeFactor};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{powi, Scalar};

/// Relative threshold under which trailing float coefficients are trimmed.
pub const TRIM_TOL: f64 = 1e-12;

/// A closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interval<T = f64> {
    a: T,
    b: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if a < b {
            Ok(Self { a, b })
        } else {
            Err(Error::InvalidInterval { a: a.to_f64(), b: b.to_f64() })
        }
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn length(&self) -> T {
        self.b.clone() - self.a.clone()
    }

    /// The point `a + k (b - a) / n`.
    pub fn equispaced(&self, k: usize, n: usize) -> T {
        self.a.clone() + self.length() * T::ratio(k as i64, n as i64)
    }

    pub fn to_f64(&self) -> Interval<f64> {
        Interval { a: self.a.to_f64(), b: self.b.to_f64() }
    }
}

impl Interval<f64> {
    pub fn unit() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// A real polynomial `Σ_{l=0}^{m} c_l (x - base)^l`.
///
/// The coefficient vector is trimmed on construction so that `c_m` is the
/// last coefficient that is not negligible; the zero polynomial is `[0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T = f64> {
    base: T,
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(base: T, coeffs: Vec<T>) -> Self {
        Self { base, coeffs: trim(coeffs) }
    }

    /// A polynomial given in the raw monomial basis (`base = 0`).
    pub fn monomial(coeffs: Vec<T>) -> Self {
        Self::new(T::zero(), coeffs)
    }

    pub fn zero() -> Self {
        Self::monomial(vec![T::zero()])
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(vec![c])
    }

    /// The identity `x`.
    pub fn identity() -> Self {
        Self::monomial(vec![T::zero(), T::one()])
    }

    /// `(x - t)^k`, expanded about `t`.
    pub fn shifted_power(t: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = T::one();
        Self::new(t, coeffs)
    }

    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Horner evaluation in the shifted variable `x - base`.
    pub fn evaluate(&self, x: &T) -> T {
        let y = x.clone() - self.base.clone();
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * y.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(self.base.clone(), vec![T::zero()]);
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(l, c)| c.clone() * T::from_i64(l as i64)).collect();
        Self::new(self.base.clone(), coeffs)
    }

    /// Re-expands the polynomial about `new_base` (Taylor shift).
    pub fn rebase(&self, new_base: &T) -> Self {
        if *new_base == self.base {
            return self.clone();
        }
        let shift = new_base.clone() - self.base.clone();
        let mut c = self.coeffs.clone();
        let m = c.len();
        // repeated synthetic division by (y - shift)
        for i in 0..m {
            for j in (i..m - 1).rev() {
                let next = c[j + 1].clone();
                c[j] = c[j].clone() + shift.clone() * next;
            }
        }
        Self::new(new_base.clone(), c)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.base.clone(), self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Sum, expressed about `self`'s base.
    pub fn add(&self, other: &Self) -> Self {
        let other = other.rebase(&self.base);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let x = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let y = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                x + y
            })
            .collect();
        Self::new(self.base.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    /// Product, expressed about `self`'s base.
    pub fn mul(&self, other: &Self) -> Self {
        let other = other.rebase(&self.base);
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + x.clone() * y.clone();
            }
        }
        Self::new(self.base.clone(), coeffs)
    }

    /// The primitive vanishing at the base point.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = vec![T::zero()];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(l, c)| c.clone() / T::from_i64(l as i64 + 1)));
        Self::new(self.base.clone(), coeffs)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> T {
        max_abs(&self.coeffs)
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        Polynomial::new(self.base.to_f64(), self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    /// Value of `Σ |c_l| |x - base|^l`, a scale for rounding-error estimates.
    pub(crate) fn abs_evaluate(&self, x: &T) -> T {
        let y = (x.clone() - self.base.clone()).abs();
        self.coeffs.iter().enumerate().fold(T::zero(), |acc, (l, c)| acc + c.abs() * powi(&y, l))
    }
}

impl Polynomial<f64> {
    pub fn eval(&self, x: f64) -> f64 {
        self.evaluate(&x)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match l {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*(x - {})", self.base)?,
                _ => write!(f, "{c}*(x - {})^{l}", self.base)?,
            }
        }
        Ok(())
    }
}

pub(crate) fn max_abs<T: Scalar>(coeffs: &[T]) -> T {
    coeffs.iter().fold(T::zero(), |m, c| {
        let a = c.abs();
        if a > m {
            a
        } else {
            m
        }
    })
}

fn trim<T: Scalar>(mut coeffs: Vec<T>) -> Vec<T> {
    if coeffs.is_empty() {
        return vec![T::zero()];
    }
    let scale = max_abs(&coeffs);
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.negligible(&scale, TRIM_TOL)) {
        coeffs.pop();
    }
    coeffs
}
