use std::collections::VecDeque;

use serde::Serialize;

use super::deviation::node_deviation_report;
use crate::error::{Error, Result};
use crate::operator::{classical_operator, GeneralizedOperator};
use crate::poly::Interval;
use crate::scalar::Scalar;

/// Default number of uniform grid points for sup norms and moduli.
pub const DEFAULT_GRID: usize = 4097;

/// Chebyshev points used to refine a grid maximum.
const REFINE_POINTS: usize = 33;

/// The constant `c` in `|B_n f - f| <= c ω(f, n^{-1/2})` on `[0, 1]`.
pub fn classical_error_constant() -> f64 {
    (4306.0 + 837.0 * 6f64.sqrt()) / 5832.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusEstimate {
    pub delta: f64,
    pub omega: f64,
    pub grid_size: usize,
}

/// Lower estimate of `ω(f, δ) = sup_{|x-y| <= δ} |f(x) - f(y)|`.
///
/// Uses the uniform grid together with every grid point shifted right by
/// `δ`, so pairs at distance exactly `δ` are seen. After sorting, a window
/// of width `δ` slides over the points while monotone deques track its
/// maximum and minimum, which keeps the cost linear after the sort.
pub fn modulus_of_continuity<F: Fn(f64) -> f64>(
    f: F,
    iv: &Interval<f64>,
    delta: f64,
    grid_size: usize,
) -> Result<ModulusEstimate> {
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::InvalidArgument(format!("delta must be nonnegative, got {delta}")));
    }
    if grid_size < 2 {
        return Err(Error::InvalidArgument("grid_size must be at least 2".into()));
    }
    let (a, b) = (*iv.a(), *iv.b());
    let grid: Vec<f64> = (0..grid_size).map(|i| uniform(a, b, i, grid_size)).collect();
    let mut pts: Vec<(f64, f64)> = grid.iter().map(|&x| (x, f(x))).collect();
    let mut omega: f64 = 0.0;
    for i in 0..grid_size {
        let y = grid[i] + delta;
        if y > b {
            break;
        }
        let fy = f(y);
        omega = omega.max((fy - pts[i].1).abs());
        pts.push((y, fy));
    }
    pts.sort_by(|p, q| p.0.total_cmp(&q.0));

    let mut hi: VecDeque<usize> = VecDeque::new();
    let mut lo: VecDeque<usize> = VecDeque::new();
    let mut left = 0;
    for j in 0..pts.len() {
        while pts[j].0 - pts[left].0 > delta {
            left += 1;
        }
        while hi.back().is_some_and(|&i| pts[i].1 <= pts[j].1) {
            hi.pop_back();
        }
        hi.push_back(j);
        while lo.back().is_some_and(|&i| pts[i].1 >= pts[j].1) {
            lo.pop_back();
        }
        lo.push_back(j);
        while hi.front().is_some_and(|&i| i < left) {
            hi.pop_front();
        }
        while lo.front().is_some_and(|&i| i < left) {
            lo.pop_front();
        }
        omega = omega.max(pts[hi[0]].1 - pts[lo[0]].1);
    }
    Ok(ModulusEstimate { delta, omega, grid_size })
}

fn uniform(a: f64, b: f64, i: usize, size: usize) -> f64 {
    if i + 1 == size {
        b
    } else {
        a + (b - a) * i as f64 / (size - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSup {
    pub value: f64,
    pub argmax: f64,
}

/// `max |g|` on a uniform grid, refined with Chebyshev points between the
/// neighbours of the best grid point. A lower bound on the true supremum.
pub fn grid_sup<G: Fn(f64) -> f64>(g: G, iv: &Interval<f64>, grid_size: usize) -> GridSup {
    let (a, b) = (*iv.a(), *iv.b());
    let size = grid_size.max(2);
    let mut best = GridSup { value: f64::NEG_INFINITY, argmax: a };
    let mut best_i = 0;
    for i in 0..size {
        let x = uniform(a, b, i, size);
        let v = g(x).abs();
        if v > best.value {
            best = GridSup { value: v, argmax: x };
            best_i = i;
        }
    }
    let lo = uniform(a, b, best_i.saturating_sub(1), size);
    let hi = uniform(a, b, (best_i + 1).min(size - 1), size);
    for j in 0..REFINE_POINTS {
        let theta = std::f64::consts::PI * j as f64 / (REFINE_POINTS - 1) as f64;
        let x = 0.5 * (lo + hi) - 0.5 * (hi - lo) * theta.cos();
        let v = g(x).abs();
        if v > best.value {
            best = GridSup { value: v, argmax: x };
        }
    }
    best
}

/// Grid sup of `|B_n^{f1} f - B_n f|`, where `B_n` is the classical
/// operator of the same dimension.
pub fn operator_distance<T: Scalar, F: Fn(f64) -> f64>(
    op: &GeneralizedOperator<T>,
    f: F,
    grid_size: usize,
) -> Result<f64> {
    let ours = op.sample(&f)?;
    let classical = classical_operator(op.n(), op.interval_f64())?;
    let theirs = classical.sample(&f)?;
    Ok(grid_sup(|x| op.combine(&ours, x) - classical.combine(&theirs, x), op.interval_f64(), grid_size).value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorBudget {
    /// Grid sup of `|B_n^{f1} f - f|`.
    pub sup_error: f64,
    /// Grid sup of `|B_n f - f|`.
    pub classical_sup_error: f64,
    /// `c ω(f, (b-a)/√n) + ω(f, max node deviation)`.
    pub budget: f64,
    pub omega_classical: f64,
    pub omega_nodes: f64,
    pub max_node_deviation: f64,
}

pub fn error_budget<T: Scalar, F: Fn(f64) -> f64>(
    op: &GeneralizedOperator<T>,
    f: F,
    grid_size: usize,
) -> Result<ErrorBudget> {
    let iv = op.interval_f64();
    let ours = op.sample(&f)?;
    let classical = classical_operator(op.n(), iv)?;
    let theirs = classical.sample(&f)?;
    let sup_error = grid_sup(|x| op.combine(&ours, x) - f(x), iv, grid_size).value;
    let classical_sup_error = grid_sup(|x| classical.combine(&theirs, x) - f(x), iv, grid_size).value;
    let dev = node_deviation_report(op)?.max_node_deviation;
    let h = iv.length() / (op.n() as f64).sqrt();
    let omega_classical = modulus_of_continuity(&f, iv, h, grid_size)?.omega;
    let omega_nodes = modulus_of_continuity(&f, iv, dev, grid_size)?.omega;
    Ok(ErrorBudget {
        sup_error,
        classical_sup_error,
        budget: classical_error_constant() * omega_classical + omega_nodes,
        omega_classical,
        omega_nodes,
        max_node_deviation: dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{build_operator, DEFAULT_TOL};
    use crate::poly::Polynomial;

    #[test]
    fn constant() {
        assert!((classical_error_constant() - 1.08988).abs() < 1e-5);
    }

    #[test]
    fn modulus_examples() {
        let unit = Interval::unit();
        let id = modulus_of_continuity(|x| x, &unit, 0.2, 101).unwrap();
        assert!((id.omega - 0.2).abs() < 1e-15);
        assert_eq!(modulus_of_continuity(|_| 4.0, &unit, 0.3, 50).unwrap().omega, 0.0);
        assert_eq!(modulus_of_continuity(|x| x.sin(), &unit, 0.0, 50).unwrap().omega, 0.0);
        let root = modulus_of_continuity(f64::sqrt, &unit, 0.01, 4097).unwrap();
        assert!((root.omega - 0.1).abs() <= 0.002, "{}", root.omega);
        assert!(modulus_of_continuity(|x| x, &unit, -1.0, 10).is_err());
    }

    #[test]
    fn modulus_is_monotone_in_delta_for_monotone_f() {
        let iv = Interval::new(-1.0, 2.0).unwrap();
        let f = |x: f64| x.powi(3) + (x + 1.0).sqrt();
        let mut last = 0.0;
        for i in 0..30 {
            let w = modulus_of_continuity(f, &iv, i as f64 * 0.0371, 513).unwrap().omega;
            assert!(w >= last);
            last = w;
        }
    }

    #[test]
    fn sup_finds_interior_peak() {
        let s = grid_sup(|x| 1.0 - (x - 0.123456).powi(2), &Interval::unit(), 65);
        assert!((s.value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn classical_square_error() {
        for n in [4usize, 16, 64] {
            let op = classical_operator(n, &Interval::unit()).unwrap();
            let eb = error_budget(&op, |x| x * x, DEFAULT_GRID).unwrap();
            assert!((eb.classical_sup_error - 0.25 / n as f64).abs() < 1e-14);
            assert!((eb.sup_error - eb.classical_sup_error).abs() < 1e-14);
        }
    }

    #[test]
    fn distance_is_zero_for_constants() {
        let f1 = Polynomial::monomial(vec![0.0, 0.375, -0.5, 1.0 / 3.0]);
        let op = build_operator(&f1, 12, &Interval::unit(), DEFAULT_TOL).unwrap();
        assert!(operator_distance(&op, |_| 1.0, 257).unwrap() < 1e-14);
    }
}
