//! Square-free decomposition by Yun's algorithm.
//!
//! Works on the coefficient vector in the shifted variable `y = x - base`;
//! the shift is a ring isomorphism so multiplicities are unaffected. With the
//! float backend, remainders below `GCD_TOL` (relative) are treated as zero.

use super::{max_abs, Polynomial};
use crate::scalar::Scalar;

/// Relative coefficient tolerance for the float GCD.
pub const GCD_TOL: f64 = 1e-10;

/// A square-free factor together with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct SquarefreeFactor<T = f64> {
    /// Monic, square-free, expressed about the same base as the input.
    pub factor: Polynomial<T>,
    pub multiplicity: usize,
}

/// Writes `p = lc · Π q_i^i` and returns the nonconstant `q_i`.
///
/// Constant input yields an empty list.
pub fn squarefree_decomposition<T: Scalar>(p: &Polynomial<T>) -> Vec<SquarefreeFactor<T>> {
    let base = p.base().clone();
    let f = monic(p.coeffs().to_vec());
    if degree(&f) == 0 {
        return Vec::new();
    }
    let df = derivative(&f);
    let g = gcd(&f, &df);
    let mut c = quotient(&f, &g);
    let mut d = sub(&quotient(&df, &g), &derivative(&c));
    let mut out = Vec::new();
    let mut multiplicity = 1;
    while degree(&c) > 0 && multiplicity <= f.len() {
        let a = gcd(&c, &d);
        c = quotient(&c, &a);
        d = sub(&quotient(&d, &a), &derivative(&c));
        if degree(&a) > 0 {
            out.push(SquarefreeFactor { factor: Polynomial::new(base.clone(), a), multiplicity });
        }
        multiplicity += 1;
    }
    out
}

fn degree<T: Scalar>(v: &[T]) -> usize {
    v.len().saturating_sub(1)
}

fn is_zero<T: Scalar>(v: &[T]) -> bool {
    v.len() == 1 && v[0].is_zero()
}

fn trim_against<T: Scalar>(mut v: Vec<T>, scale: &T) -> Vec<T> {
    while v.len() > 1 && v.last().is_some_and(|c| c.negligible(scale, GCD_TOL)) {
        v.pop();
    }
    if v.len() == 1 && v[0].negligible(scale, GCD_TOL) {
        v[0] = T::zero();
    }
    if v.is_empty() {
        v.push(T::zero());
    }
    v
}

fn monic<T: Scalar>(v: Vec<T>) -> Vec<T> {
    let scale = max_abs(&v);
    let v = trim_against(v, &scale);
    if is_zero(&v) {
        return v;
    }
    let lead = v.last().cloned().expect("nonempty");
    v.into_iter().map(|c| c / lead.clone()).collect()
}

fn derivative<T: Scalar>(v: &[T]) -> Vec<T> {
    if v.len() <= 1 {
        return vec![T::zero()];
    }
    v.iter().enumerate().skip(1).map(|(l, c)| c.clone() * T::from_i64(l as i64)).collect()
}

fn sub<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    let len = x.len().max(y.len());
    let out: Vec<T> = (0..len)
        .map(|i| {
            let a = x.get(i).cloned().unwrap_or_else(T::zero);
            let b = y.get(i).cloned().unwrap_or_else(T::zero);
            a - b
        })
        .collect();
    let scale = {
        let (sx, sy) = (max_abs(x), max_abs(y));
        if sx > sy {
            sx
        } else {
            sy
        }
    };
    trim_against(out, &scale)
}

/// Long division; returns (quotient, remainder) with the remainder trimmed
/// against the dividend's scale.
fn div_rem<T: Scalar>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    assert!(!is_zero(b), "division by the zero polynomial");
    let scale = max_abs(a);
    let mut rem = a.to_vec();
    let db = degree(b);
    if degree(a) < db {
        return (vec![T::zero()], trim_against(rem, &scale));
    }
    let lead = b[db].clone();
    let mut quot = vec![T::zero(); degree(a) - db + 1];
    for i in (0..quot.len()).rev() {
        let q = rem[i + db].clone() / lead.clone();
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] = rem[i + j].clone() - q.clone() * bj.clone();
        }
        quot[i] = q;
    }
    rem.truncate(db.max(1));
    (quot, trim_against(rem, &scale))
}

fn quotient<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    div_rem(a, b).0
}

fn gcd<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut x = monic(a.to_vec());
    let mut y = monic(b.to_vec());
    if is_zero(&x) {
        return y;
    }
    while !is_zero(&y) {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = monic(r);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn product<T: Scalar>(factors: &[Polynomial<T>]) -> Polynomial<T> {
        factors.iter().fold(Polynomial::constant(T::one()), |acc, f| acc.mul(f))
    }

    #[test]
    fn exact_multiplicities() {
        // (x - 1/2)^2 (x - 1/3)^3 (x + 1)
        let p = product(&[
            Polynomial::shifted_power(r(1, 2), 2),
            Polynomial::shifted_power(r(1, 3), 3),
            Polynomial::shifted_power(r(-1, 1), 1),
        ])
        .rebase(&r(0, 1));
        let dec = squarefree_decomposition(&p);
        let mults: Vec<_> = dec.iter().map(|f| (f.factor.degree(), f.multiplicity)).collect();
        assert_eq!(mults, vec![(1, 1), (1, 2), (1, 3)]);
        assert_eq!(dec[1].factor.evaluate(&r(1, 2)), r(0, 1));
        assert_eq!(dec[2].factor.evaluate(&r(1, 3)), r(0, 1));
    }

    #[test]
    fn float_double_root_is_detected() {
        let p = Polynomial::<f64>::shifted_power(0.5, 2).scale(&3.0).rebase(&0.0);
        let dec = squarefree_decomposition(&p);
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].multiplicity, 2);
        assert!(dec[0].factor.eval(0.5).abs() < 1e-12);
    }

    #[test]
    fn squarefree_input_is_single_factor() {
        let p = Polynomial::monomial(vec![r(3, 8), r(-1, 1), r(1, 1)]);
        let dec = squarefree_decomposition(&p);
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].multiplicity, 1);
        assert_eq!(dec[0].factor.degree(), 2);
    }

    #[test]
    fn constant_has_no_factors() {
        assert!(squarefree_decomposition(&Polynomial::constant(2.0)).is_empty());
    }
}
