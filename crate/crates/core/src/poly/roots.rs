use super::Polynomial;

/// Real roots of `p` in `[lo, hi]`, ascending.
///
/// The critical points (roots of `p'`, found recursively) split the interval
/// into pieces on which `p` is monotone; each piece holds at most one root,
/// located by bisection on a sign change. Roots of even multiplicity that do
/// not change sign are only found when they fall exactly on a critical point,
/// so callers should pass square-free input.
pub fn real_roots_in(p: &Polynomial<f64>, lo: f64, hi: f64) -> Vec<f64> {
    if p.is_zero() || p.degree() == 0 || lo > hi {
        return Vec::new();
    }
    if p.degree() == 1 {
        let c = p.coeffs();
        let x = p.base() - c[0] / c[1];
        return if lo <= x && x <= hi { vec![x] } else { Vec::new() };
    }
    let mut pts = vec![lo];
    pts.extend(real_roots_in(&p.derivative(), lo, hi));
    pts.push(hi);
    pts.dedup();

    let mut roots = Vec::new();
    for w in pts.windows(2) {
        let (u, v) = (w[0], w[1]);
        let (fu, fv) = (p.eval(u), p.eval(v));
        if fu == 0.0 {
            roots.push(u);
        } else if fv != 0.0 && (fu < 0.0) != (fv < 0.0) {
            roots.push(bisect(p, u, v, fu));
        }
    }
    if p.eval(hi) == 0.0 {
        roots.push(hi);
    }
    roots.dedup();
    roots
}

fn bisect(p: &Polynomial<f64>, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let neg_lo = f_lo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = p.eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_all_simple_roots() {
        // (x - 0.1)(x - 0.5)(x - 0.9)
        let p = Polynomial::<f64>::shifted_power(0.1, 1)
            .mul(&Polynomial::shifted_power(0.5, 1))
            .mul(&Polynomial::shifted_power(0.9, 1));
        let roots = real_roots_in(&p, 0.0, 1.0);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([0.1, 0.5, 0.9]) {
            assert!((r - e).abs() < 1e-14);
        }
        assert_eq!(real_roots_in(&p, 0.2, 0.8).len(), 1);
    }

    #[test]
    fn no_roots_for_positive_quadratic() {
        let p = Polynomial::monomial(vec![0.375, -1.0, 1.0]);
        assert!(real_roots_in(&p, 0.0, 1.0).is_empty());
    }

    #[test]
    fn endpoint_roots_are_reported() {
        let p = Polynomial::monomial(vec![0.0, 1.0, -1.0]); // x(1 - x)
        assert_eq!(real_roots_in(&p, 0.0, 1.0), vec![0.0, 1.0]);
    }
}
