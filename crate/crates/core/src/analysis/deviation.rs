use serde::Serialize;

use crate::error::Result;
use crate::operator::{build_operator, GeneralizedOperator};
use crate::poly::{certify_monotone, Interval, Polynomial};
use crate::scalar::Scalar;

/// Zero structure of `f1'` and the resulting Hölder exponent `1/s` of
/// `f1^{-1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderReport {
    /// One more than the largest zero order of `f1'` on `[a, b]`.
    pub s: usize,
    pub s1: usize,
    pub s2: usize,
    pub interior_orders: Vec<usize>,
    pub predicted_exponent: f64,
}

pub fn holder_order<T: Scalar>(f1: &Polynomial<T>, iv: &Interval<T>) -> Result<HolderReport> {
    let cert = certify_monotone(&f1.rebase(iv.a()), iv)?;
    let s = 1 + cert.max_zero_order();
    let (s1, s2) = cert.endpoint_zero_orders;
    Ok(HolderReport {
        s,
        s1,
        s2,
        interior_orders: cert.interior_derivative_zeros.iter().map(|z| z.multiplicity).collect(),
        predicted_exponent: 1.0 / s as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeviationReport {
    pub n: usize,
    /// `max_k |t_k - (a + k(b-a)/n)|`.
    pub max_node_deviation: f64,
    /// `max_k |t_{k+1} - t_k|`.
    pub max_consecutive_gap: f64,
}

pub fn node_deviation_report<T: Scalar>(op: &GeneralizedOperator<T>) -> Result<DeviationReport> {
    let values = op.sample(|t| t)?;
    let iv = op.interval_f64();
    let n = op.n();
    let max_node_deviation =
        values.iter().enumerate().map(|(k, t)| (t - iv.equispaced(k, n)).abs()).fold(0.0, f64::max);
    let max_consecutive_gap = values.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
    Ok(DeviationReport { n, max_node_deviation, max_consecutive_gap })
}

/// Log-log least-squares fit of the maximal node deviation against `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateFit {
    /// `None` when some fitted deviation is zero or fewer than two points remain.
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    /// The `n` values used in the regression.
    pub fitted_n: Vec<usize>,
    pub reports: Vec<DeviationReport>,
}

/// Builds the operator at every `n`, drops the smallest quarter of the `n`
/// values and regresses `ln(max deviation)` on `ln(n)`.
pub fn rate_fit<T: Scalar>(f1: &Polynomial<T>, iv: &Interval<T>, n_grid: &[usize], tol: f64) -> Result<RateFit> {
    let mut ns = n_grid.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let reports =
        ns.iter().map(|&n| node_deviation_report(&build_operator(f1, n, iv, tol)?)).collect::<Result<Vec<_>>>()?;
    let fitted = &reports[ns.len() / 4..];
    let fitted_n = fitted.iter().map(|r| r.n).collect();
    let line = if fitted.len() >= 2 && fitted.iter().all(|r| r.max_node_deviation > 0.0) {
        let pts: Vec<(f64, f64)> = fitted.iter().map(|r| ((r.n as f64).ln(), r.max_node_deviation.ln())).collect();
        least_squares(&pts)
    } else {
        None
    };
    Ok(RateFit { slope: line.map(|l| l.0), intercept: line.map(|l| l.1), fitted_n, reports })
}

/// Ordinary least squares `y = slope x + intercept`.
pub(crate) fn least_squares(pts: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// A deviation table with empirically fitted constants for the `1/n` and
/// `n^{-1/s}` laws.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationStudy {
    pub s: usize,
    pub reports: Vec<DeviationReport>,
    /// `max_n n * deviation`: the smallest `K` with deviation `<= K/n` on the grid.
    pub fitted_k_linear: f64,
    /// `max_n n^{1/s} * deviation`.
    pub fitted_k_holder: f64,
}

impl DeviationStudy {
    pub fn bound_linear(&self, n: usize) -> f64 {
        self.fitted_k_linear / n as f64
    }

    pub fn bound_holder(&self, n: usize) -> f64 {
        self.fitted_k_holder / (n as f64).powf(1.0 / self.s as f64)
    }
}

pub fn deviation_study<T: Scalar>(
    f1: &Polynomial<T>,
    iv: &Interval<T>,
    n_grid: &[usize],
    tol: f64,
) -> Result<DeviationStudy> {
    let s = holder_order(f1, iv)?.s;
    let reports =
        n_grid.iter().map(|&n| node_deviation_report(&build_operator(f1, n, iv, tol)?)).collect::<Result<Vec<_>>>()?;
    let fit = |p: f64| reports.iter().map(|r| (r.n as f64).powf(p) * r.max_node_deviation).fold(0.0, f64::max);
    Ok(DeviationStudy { s, fitted_k_linear: fit(1.0), fitted_k_holder: fit(1.0 / s as f64), reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::DEFAULT_TOL;
    use crate::scalar::Rational;

    #[test]
    fn holder_examples() {
        let unit = Interval::unit();
        assert_eq!(holder_order(&Polynomial::<f64>::identity(), &unit).unwrap().s, 1);
        let half = Polynomial::shifted_power(Rational::ratio(1, 2), 3);
        let iv = Interval::new(Rational::from_i64(0), Rational::from_i64(1)).unwrap();
        let rep = holder_order(&half, &iv).unwrap();
        assert_eq!(rep.s, 3);
        assert_eq!(rep.interior_orders, vec![2]);
        let sym = Interval::new(-1.0, 1.0).unwrap();
        for k in 1..4 {
            let p = Polynomial::<f64>::shifted_power(0.0, 2 * k + 1);
            assert_eq!(holder_order(&p, &sym).unwrap().s, 2 * k + 1);
        }
    }

    #[test]
    fn identity_deviation() {
        let iv = Interval::new(0.0, 2.0).unwrap();
        let op = build_operator(&Polynomial::identity(), 8, &iv, DEFAULT_TOL).unwrap();
        let rep = node_deviation_report(&op).unwrap();
        assert!(rep.max_node_deviation < 1e-13);
        assert!((rep.max_consecutive_gap - 0.25).abs() < 1e-13);
    }

    #[test]
    fn identity_rate_is_flagged() {
        let fit = rate_fit(&Polynomial::<f64>::identity(), &Interval::unit(), &[8, 16, 32, 64], DEFAULT_TOL).unwrap();
        assert_eq!(fit.slope, None);
        assert_eq!(fit.fitted_n, vec![16, 32, 64]);
    }

    #[test]
    fn line_fit() {
        let (m, c) = least_squares(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]).unwrap();
        assert!((m - 2.0).abs() < 1e-15 && (c - 1.0).abs() < 1e-15);
        assert!(least_squares(&[(1.0, 1.0), (1.0, 2.0)]).is_none());
    }
}
