use serde::Serialize;

use super::squarefree::{squarefree_decomposition, GCD_TOL};
use super::{real_roots_in, Interval, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Roots closer than this (relative to `b - a`) are merged in float mode.
const CLUSTER_TOL: f64 = 1e-6;

/// Maximum number of iterations of [`invert_monotone`].
pub const MAX_INVERSION_ITERATIONS: usize = 200;

/// A zero of the derivative and its multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroLocation {
    pub location: f64,
    pub multiplicity: usize,
}

/// Sign structure of `p'` on `[a, b]` for a polynomial with `p' >= 0`.
///
/// `strictly_increasing_on_open` means `p' > 0` on `(a, b)`;
/// `strictly_increasing_on_closed` means `p' > 0` on `[a, b]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityCertificate {
    pub strictly_increasing_on_closed: bool,
    pub strictly_increasing_on_open: bool,
    pub interior_derivative_zeros: Vec<ZeroLocation>,
    /// Orders `(s1, s2)` of the zeros of `p'` at `a` and at `b` (0 if none).
    pub endpoint_zero_orders: (usize, usize),
}

impl MonotonicityCertificate {
    /// Largest order of any zero of `p'` on the closed interval.
    pub fn max_zero_order(&self) -> usize {
        let (s1, s2) = self.endpoint_zero_orders;
        self.interior_derivative_zeros.iter().map(|z| z.multiplicity).chain([s1, s2]).max().unwrap_or(0)
    }

    pub fn has_interior_zeros(&self) -> bool {
        !self.interior_derivative_zeros.is_empty()
    }
}

/// Checks `p' >= 0` on `[a, b]` and locates the zeros of `p'` there.
///
/// Multiplicities come from the square-free decomposition of `p'` (exact for
/// rationals, tolerance-based for floats); locations are refined in double
/// precision. Fails with [`Error::NotIncreasing`] when `p'` is negative
/// somewhere, including when an interior zero has odd multiplicity.
pub fn certify_monotone<T: Scalar>(p: &Polynomial<T>, iv: &Interval<T>) -> Result<MonotonicityCertificate> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let a = iv.a().clone();
    let b = iv.b().clone();
    let (af, bf) = (a.to_f64(), b.to_f64());
    let len = bf - af;
    let dp = p.rebase(&a).derivative();

    let (mut s1, mut s2) = (0usize, 0usize);
    let mut interior: Vec<ZeroLocation> = Vec::new();
    for sf in squarefree_decomposition(&dp) {
        let mult = sf.multiplicity;
        let mut q = sf.factor;
        let scale = q.max_abs_coeff();
        if q.coeffs()[0].negligible(&scale, GCD_TOL) {
            s1 = s1.max(mult);
            q = Polynomial::new(a.clone(), q.coeffs()[1..].to_vec());
        }
        let at_b = q.evaluate(&b);
        if q.degree() > 0 && at_b.negligible(&q.abs_evaluate(&b), GCD_TOL) {
            s2 = s2.max(mult);
            q = deflate(&q, &(b.clone() - a.clone()));
        }
        for x in real_roots_in(&q.to_f64(), af, bf) {
            if !T::EXACT && x - af <= CLUSTER_TOL * len {
                s1 = s1.max(mult);
            } else if !T::EXACT && bf - x <= CLUSTER_TOL * len {
                s2 = s2.max(mult);
            } else if af < x && x < bf {
                interior.push(ZeroLocation { location: x, multiplicity: mult });
            }
        }
    }
    interior.sort_by(|u, v| u.location.total_cmp(&v.location));
    if !T::EXACT {
        interior = cluster(interior, CLUSTER_TOL * len);
    }

    if let Some(z) = interior.iter().find(|z| z.multiplicity % 2 == 1) {
        let value = dp.to_f64().eval(z.location + 1e-3 * len);
        let value = value.min(dp.to_f64().eval(z.location - 1e-3 * len));
        return Err(Error::NotIncreasing { at: z.location, value });
    }
    let mut pts = vec![af];
    pts.extend(interior.iter().map(|z| z.location));
    pts.push(bf);
    for w in pts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let x = T::from_f64(mid);
        let value = dp.evaluate(&x);
        if value < T::zero() && !value.negligible(&dp.abs_evaluate(&x), 1e-12) {
            return Err(Error::NotIncreasing { at: mid, value: value.to_f64() });
        }
    }

    let open = interior.is_empty();
    Ok(MonotonicityCertificate {
        strictly_increasing_on_closed: open && s1 == 0 && s2 == 0,
        strictly_increasing_on_open: open,
        interior_derivative_zeros: interior,
        endpoint_zero_orders: (s1, s2),
    })
}

/// Divides `q` (expanded about its base) by `(y - shift)`, dropping the remainder.
fn deflate<T: Scalar>(q: &Polynomial<T>, shift: &T) -> Polynomial<T> {
    let c = q.coeffs();
    let m = c.len() - 1;
    let mut out = vec![T::zero(); m];
    let mut carry = T::zero();
    for l in (1..=m).rev() {
        carry = carry * shift.clone() + c[l].clone();
        out[l - 1] = carry.clone();
    }
    Polynomial::new(q.base().clone(), out)
}

fn cluster(zeros: Vec<ZeroLocation>, tol: f64) -> Vec<ZeroLocation> {
    let mut out: Vec<ZeroLocation> = Vec::with_capacity(zeros.len());
    for z in zeros {
        match out.last_mut() {
            Some(prev) if z.location - prev.location <= tol => {
                prev.location = 0.5 * (prev.location + z.location);
                prev.multiplicity += z.multiplicity;
            }
            _ => out.push(z),
        }
    }
    out
}

/// Solves `p(x) = y` on `[a, b]` for a polynomial with `p' >= 0` there.
///
/// Bracketing bisection with Newton steps that are accepted only when they
/// stay inside the bracket and at least halve the previous step. Stops once
/// the bracket is narrower than `tol * (b - a)`, on an exact hit, or after
/// [`MAX_INVERSION_ITERATIONS`].
pub fn invert_monotone(p: &Polynomial<f64>, iv: &Interval<f64>, y: f64, tol: f64) -> Result<f64> {
    let (a, b) = (*iv.a(), *iv.b());
    let (pa, pb) = (p.eval(a), p.eval(b));
    if !(pa <= y && y <= pb) {
        return Err(Error::OutOfRange { y, lo: pa, hi: pb });
    }
    if y == pa {
        return Ok(a);
    }
    if y == pb {
        return Ok(b);
    }
    let dp = p.derivative();
    let width_tol = tol * (b - a);
    let (mut lo, mut hi) = (a, b);
    let mut best = (f64::INFINITY, 0.5 * (a + b));
    let mut x = 0.5 * (a + b);
    let mut last_step = b - a;

    let mut update = |x: f64, lo: &mut f64, hi: &mut f64| -> f64 {
        let fx = p.eval(x) - y;
        if fx.abs() < best.0 {
            best = (fx.abs(), x);
        }
        if fx < 0.0 {
            *lo = x;
        } else if fx > 0.0 {
            *hi = x;
        }
        fx
    };

    for _ in 0..MAX_INVERSION_ITERATIONS {
        let fx = update(x, &mut lo, &mut hi);
        if fx == 0.0 {
            return Ok(x);
        }
        if hi - lo <= width_tol {
            break;
        }
        let slope = dp.eval(x);
        let step = if slope > 0.0 { fx / slope } else { f64::NAN };
        let candidate = x - step;
        if candidate > lo && candidate < hi && step.abs() <= 0.5 * last_step {
            last_step = step.abs();
            x = candidate;
            if step.abs() < width_tol {
                // converged from one side: probe just past the iterate to close the bracket
                let fc = update(x, &mut lo, &mut hi);
                if fc == 0.0 {
                    return Ok(x);
                }
                let probe = if fc < 0.0 { x + 0.5 * width_tol } else { x - 0.5 * width_tol };
                if probe > lo && probe < hi {
                    x = probe;
                }
            }
        } else {
            last_step = 0.5 * (hi - lo);
            x = lo + last_step;
        }
    }
    Ok(best.1.clamp(lo, hi))
}
