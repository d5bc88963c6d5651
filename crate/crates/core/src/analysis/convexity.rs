use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{invert_monotone, Interval, Polynomial};

/// Determinants below `-WITNESS_TOL * scale` count as violations.
pub const WITNESS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvexityWitness {
    pub triple: (f64, f64, f64),
    pub det_value: f64,
}

/// `det [[f0(x_i)], [f1(x_i)], [f(x_i)]]` over the columns `x0 < x1 < x2`.
pub fn convexity_determinant<F0, F1, F>(f0: F0, f1: F1, f: F, x0: f64, x1: f64, x2: f64) -> Result<f64>
where
    F0: Fn(f64) -> f64,
    F1: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    if !(x0 < x1 && x1 < x2) {
        return Err(Error::NotOrdered { x0, x1, x2 });
    }
    let col = |x: f64| [f0(x), f1(x), f(x)];
    Ok(det3(col(x0), col(x1), col(x2)))
}

fn det3(u: [f64; 3], v: [f64; 3], w: [f64; 3]) -> f64 {
    u[0] * (v[1] * w[2] - w[1] * v[2]) - v[0] * (u[1] * w[2] - w[1] * u[2]) + w[0] * (u[1] * v[2] - v[1] * u[2])
}

/// Scans every ordered triple of a uniform grid and returns the most
/// negative determinant, if it is below `-WITNESS_TOL * scale` with
/// `scale = max|f0| · max|f1| · max|f|` on the grid.
pub fn convexity_scan<F0, F1, F>(
    f0: F0,
    f1: F1,
    f: F,
    iv: &Interval<f64>,
    grid_size: usize,
) -> Result<Option<ConvexityWitness>>
where
    F0: Fn(f64) -> f64,
    F1: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    if grid_size < 3 {
        return Err(Error::InvalidArgument("convexity scan needs at least 3 grid points".into()));
    }
    let (a, b) = (*iv.a(), *iv.b());
    let xs: Vec<f64> = (0..grid_size).map(|i| a + (b - a) * i as f64 / (grid_size - 1) as f64).collect();
    let cols: Vec<[f64; 3]> = xs.iter().map(|&x| [f0(x), f1(x), f(x)]).collect();
    let max_abs = |r: usize| cols.iter().map(|c| c[r].abs()).fold(0.0, f64::max);
    let scale = max_abs(0) * max_abs(1) * max_abs(2);

    let mut worst = 0.0;
    let mut at = (0, 0, 0);
    for i in 0..grid_size {
        for j in i + 1..grid_size {
            let (u, v) = (cols[i], cols[j]);
            // expand along the third column
            let m0 = u[1] * v[2] - v[1] * u[2];
            let m1 = u[0] * v[2] - v[0] * u[2];
            let m2 = u[0] * v[1] - v[0] * u[1];
            for (k, w) in cols.iter().enumerate().skip(j + 1) {
                let d = w[0] * m0 - w[1] * m1 + w[2] * m2;
                if d < worst {
                    worst = d;
                    at = (i, j, k);
                }
            }
        }
    }
    Ok((worst < -WITNESS_TOL * scale)
        .then(|| ConvexityWitness { triple: (xs[at.0], xs[at.1], xs[at.2]), det_value: worst }))
}

/// Ordinary-convexity check of `f ∘ f1^{-1}` by second differences on a
/// uniform grid of `[f1(a), f1(b)]`. Returns `(y, Δ²)` for the most negative
/// second difference below `-WITNESS_TOL · max|f ∘ f1^{-1}|`.
pub fn composition_concavity<F: Fn(f64) -> f64>(
    f1: &Polynomial<f64>,
    iv: &Interval<f64>,
    f: F,
    grid_size: usize,
) -> Result<Option<(f64, f64)>> {
    if grid_size < 3 {
        return Err(Error::InvalidArgument("second differences need at least 3 grid points".into()));
    }
    let (lo, hi) = (f1.eval(*iv.a()), f1.eval(*iv.b()));
    let ys: Vec<f64> = (0..grid_size).map(|i| lo + (hi - lo) * i as f64 / (grid_size - 1) as f64).collect();
    let g =
        ys.iter().map(|&y| Ok(f(invert_monotone(f1, iv, y.clamp(lo, hi), 1e-15)?))).collect::<Result<Vec<f64>>>()?;
    let scale = g.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut worst: Option<(f64, f64)> = None;
    for i in 1..grid_size - 1 {
        let d2 = g[i - 1] - 2.0 * g[i] + g[i + 1];
        if d2 < -WITNESS_TOL * scale && worst.is_none_or(|w| d2 < w.1) {
            worst = Some((ys[i], d2));
        }
    }
    Ok(worst)
}
