use serde::Serialize;

use crate::bernstein::monomial_to_bernstein;
use crate::error::{Error, Result};
use crate::poly::{Interval, Polynomial};
use crate::scalar::{powi, Scalar};

/// How far the Bernstein coordinates `w_{n,k}` of `g` are from the samples
/// `g(a + k(b-a)/n)`, together with the a priori bounds.
///
/// With `L = b - a`, `M = max(L^2, L^m)` and `c_max = max_{l>=2} |c_l|`:
/// - `bound = m^3 c_max M / n` holds for every `k`;
/// - `endpoint_refined_bound = m^2 c_max M / (n (n - m))` holds for `k <= m`;
/// - `right_endpoint_bound = m^4 c_max M / (n (n - m))` holds for `k >= n - m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoordinateErrorReport<T = f64> {
    pub n: usize,
    pub degree: usize,
    pub per_k_error: Vec<T>,
    pub max_error: T,
    pub bound: T,
    pub c_max: T,
    pub m_factor: T,
    pub endpoint_refined_bound: T,
    pub right_endpoint_bound: T,
}

impl<T: Scalar> CoordinateErrorReport<T> {
    /// Every `k` satisfies the global bound.
    pub fn within_bound(&self) -> bool {
        self.max_error <= self.bound
    }

    /// Indices `k <= m` exceeding the left endpoint bound.
    pub fn left_endpoint_violations(&self) -> Vec<usize> {
        (0..=self.degree.min(self.n)).filter(|&k| self.per_k_error[k] > self.endpoint_refined_bound).collect()
    }

    /// Indices `k >= n - m` exceeding the right endpoint bound.
    pub fn right_endpoint_violations(&self) -> Vec<usize> {
        (self.n.saturating_sub(self.degree)..=self.n)
            .filter(|&k| self.per_k_error[k] > self.right_endpoint_bound)
            .collect()
    }

    pub fn to_f64(&self) -> CoordinateErrorReport<f64> {
        CoordinateErrorReport {
            n: self.n,
            degree: self.degree,
            per_k_error: self.per_k_error.iter().map(Scalar::to_f64).collect(),
            max_error: self.max_error.to_f64(),
            bound: self.bound.to_f64(),
            c_max: self.c_max.to_f64(),
            m_factor: self.m_factor.to_f64(),
            endpoint_refined_bound: self.endpoint_refined_bound.to_f64(),
            right_endpoint_bound: self.right_endpoint_bound.to_f64(),
        }
    }
}

pub fn coordinate_error_report<T: Scalar>(
    g: &Polynomial<T>,
    n: usize,
    iv: &Interval<T>,
) -> Result<CoordinateErrorReport<T>> {
    let g = g.rebase(iv.a());
    let m = g.degree();
    if n <= m {
        return Err(Error::DegreeTooHigh { n, degree: m });
    }
    let w = monomial_to_bernstein(&g, n, iv)?;
    let per_k_error: Vec<T> =
        w.coords().iter().enumerate().map(|(k, wk)| (g.evaluate(&iv.equispaced(k, n)) - wk.clone()).abs()).collect();
    let max_error = per_k_error.iter().fold(T::zero(), |acc, e| if *e > acc { e.clone() } else { acc });

    let c_max = g.coeffs().iter().skip(2).fold(T::zero(), |acc, c| if c.abs() > acc { c.abs() } else { acc });
    let len = iv.length();
    let (sq, top) = (powi(&len, 2), powi(&len, m));
    let m_factor = if sq > top { sq } else { top };
    let mt = T::from_i64(m as i64);
    let nt = T::from_i64(n as i64);
    let base = c_max.clone() * m_factor.clone();
    let bound = base.clone() * powi(&mt, 3) / nt.clone();
    let near = base.clone() / (nt.clone() * T::from_i64((n - m) as i64));
    Ok(CoordinateErrorReport {
        n,
        degree: m,
        per_k_error,
        max_error,
        bound,
        endpoint_refined_bound: near.clone() * powi(&mt, 2),
        right_endpoint_bound: near * powi(&mt, 4),
        c_max,
        m_factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn affine_has_no_error() {
        let g = Polynomial::monomial(vec![r(2, 3), r(-5, 7)]);
        let iv = Interval::new(r(-1, 2), r(3, 1)).unwrap();
        let rep = coordinate_error_report(&g, 9, &iv).unwrap();
        assert!(rep.per_k_error.iter().all(|e| *e == r(0, 1)));
        assert_eq!(rep.bound, r(0, 1));
    }

    #[test]
    fn square_midpoint_error() {
        let g = Polynomial::monomial(vec![r(0, 1), r(0, 1), r(1, 1)]);
        let iv = Interval::new(r(0, 1), r(1, 1)).unwrap();
        for n in [4usize, 10, 100] {
            let rep = coordinate_error_report(&g, n, &iv).unwrap();
            assert_eq!(rep.per_k_error[n / 2], r(1, 4 * n as i64 - 4));
            assert!(rep.within_bound());
        }
    }

    #[test]
    fn degree_guard() {
        let g = Polynomial::<f64>::shifted_power(0.0, 3);
        assert!(coordinate_error_report(&g, 3, &Interval::unit()).is_err());
    }

    #[test]
    fn float_matches_exact() {
        let c = [r(1, 3), r(-2, 5), r(7, 9), r(-1, 2), r(3, 4), r(-5, 6)];
        let g = Polynomial::monomial(c.to_vec());
        let iv = Interval::new(r(0, 1), r(3, 1)).unwrap();
        let exact = coordinate_error_report(&g, 50, &iv).unwrap();
        let float = coordinate_error_report(&g.to_f64(), 50, &iv.to_f64()).unwrap();
        for (e, f) in exact.per_k_error.iter().zip(&float.per_k_error) {
            assert!((e.to_f64() - f).abs() <= 1e-12 * exact.bound.to_f64());
        }
        assert!(exact.within_bound());
        assert!(exact.left_endpoint_violations().is_empty());
        assert!(exact.right_endpoint_violations().is_empty());
    }
}
