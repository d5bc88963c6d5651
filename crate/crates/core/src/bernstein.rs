//! Bernstein basis on `[a, b]`, conversion from the shifted power basis,
//! degree elevation and the derivative-coordinate identity.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Interval, Polynomial};
use crate::scalar::{powi, Scalar};

/// Above this dimension `C(n, k)` can overflow a double, so basis values are
/// computed in log space.
pub const LOG_SPACE_THRESHOLD: usize = 1029;

/// Coordinates of a polynomial of degree `<= n` in the basis `p_{n,0..n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinForm<T = f64> {
    n: usize,
    iv: Interval<T>,
    coords: Vec<T>,
}

impl<T: Scalar> BernsteinForm<T> {
    pub fn new(iv: Interval<T>, coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a Bernstein form needs at least one coordinate".into()));
        }
        Ok(Self { n: coords.len() - 1, iv, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn interval(&self) -> &Interval<T> {
        &self.iv
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    /// de Casteljau evaluation.
    pub fn evaluate(&self, x: &T) -> T {
        let u = (x.clone() - self.iv.a().clone()) / self.iv.length();
        let v = T::one() - u.clone();
        let mut work = self.coords.clone();
        for level in (1..=self.n).rev() {
            for j in 0..level {
                work[j] = v.clone() * work[j].clone() + u.clone() * work[j + 1].clone();
            }
        }
        work.swap_remove(0)
    }

    /// Coordinates `w_{0..n-1}` of the derivative in dimension `n - 1`:
    /// `w_{k-1} = n (γ_k - γ_{k-1}) / (b - a)`.
    pub fn derivative_coordinates(&self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("derivative coordinates need n >= 1".into()));
        }
        let factor = T::from_i64(self.n as i64) / self.iv.length();
        let coords = self.coords.windows(2).map(|w| factor.clone() * (w[1].clone() - w[0].clone())).collect();
        Ok(Self { n: self.n - 1, iv: self.iv.clone(), coords })
    }

    /// The same function written in dimension `n + 1`.
    pub fn degree_elevate(&self) -> Self {
        let n1 = self.n + 1;
        let mut coords = Vec::with_capacity(n1 + 1);
        coords.push(self.coords[0].clone());
        for k in 1..n1 {
            let t = T::ratio(k as i64, n1 as i64);
            coords.push(t.clone() * self.coords[k - 1].clone() + (T::one() - t) * self.coords[k].clone());
        }
        coords.push(self.coords[self.n].clone());
        Self { n: n1, iv: self.iv.clone(), coords }
    }

    /// `{"n", "a", "b", "coords"}`; exact forms add `coords_exact`.
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "n": self.n,
            "a": self.iv.a().to_f64(),
            "b": self.iv.b().to_f64(),
            "coords": self.coords.iter().map(Scalar::to_f64).collect::<Vec<_>>(),
        });
        if T::EXACT {
            out["coords_exact"] = self.coords.iter().map(Scalar::render).collect();
        }
        out
    }

    pub fn to_f64(&self) -> BernsteinForm<f64> {
        BernsteinForm { n: self.n, iv: self.iv.to_f64(), coords: self.coords.iter().map(Scalar::to_f64).collect() }
    }
}

impl BernsteinForm<f64> {
    pub fn eval(&self, x: f64) -> f64 {
        self.evaluate(&x)
    }
}

/// Bernstein coordinates of `p` in dimension `n` on `iv`:
///
/// `w_{n,k} = Σ_{l=0}^{min(k,m)} c_l · k!(n-l)! / (n!(k-l)!) · (b-a)^l`,
///
/// with the factorial ratio accumulated as `Π_{i<l} (k-i)/(n-i)`.
/// `p` is re-expanded about `a` first if needed.
pub fn monomial_to_bernstein<T: Scalar>(p: &Polynomial<T>, n: usize, iv: &Interval<T>) -> Result<BernsteinForm<T>> {
    let m = p.degree();
    if n < m {
        return Err(Error::DegreeTooHigh { n, degree: m });
    }
    let p = p.rebase(iv.a());
    let c = p.coeffs();
    let len = iv.length();
    let scaled: Vec<T> = c.iter().enumerate().map(|(l, cl)| cl.clone() * powi(&len, l)).collect();
    let coords = (0..=n)
        .map(|k| {
            let mut acc = scaled[0].clone();
            let mut ratio = T::one();
            for (l, sl) in scaled.iter().enumerate().take(k.min(m) + 1).skip(1) {
                ratio = ratio * T::ratio((k - l + 1) as i64, (n - l + 1) as i64);
                acc = acc + sl.clone() * ratio.clone();
            }
            acc
        })
        .collect();
    Ok(BernsteinForm { n, iv: iv.clone(), coords })
}

/// `p_{n,k}(x) = C(n,k) (x-a)^k (b-x)^{n-k} / (b-a)^n`.
pub fn basis_eval(n: usize, k: usize, x: f64, iv: &Interval<f64>) -> Result<f64> {
    if k > n {
        return Err(Error::IndexOutOfRange { k, n });
    }
    let len = iv.length();
    let u = ((x - iv.a()) / len).clamp(0.0, 1.0);
    let v = ((iv.b() - x) / len).clamp(0.0, 1.0);
    Ok(basis_unit(n, k, u, v))
}

fn basis_unit(n: usize, k: usize, u: f64, v: f64) -> f64 {
    if u == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if v == 0.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    if n > LOG_SPACE_THRESHOLD {
        let log = ln_binomial(n, k) + k as f64 * u.ln() + (n - k) as f64 * v.ln();
        return log.exp();
    }
    let j = k.min(n - k);
    // Divide before multiplying: near n = LOG_SPACE_THRESHOLD the product alone overflows.
    let binom = (1..=j).fold(1.0_f64, |acc, i| acc * ((n - j + i) as f64 / i as f64));
    binom * u.powi(k as i32) * v.powi((n - k) as i32)
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
}

/// All basis values `p_{n,0..n}(x)`.
///
/// Starts from the largest value (at `k ≈ n u`) and walks outward with the
/// ratio recurrence, so nothing overflows and only negligible tails underflow.
pub fn basis_values(n: usize, x: f64, iv: &Interval<f64>) -> Vec<f64> {
    let len = iv.length();
    let u = ((x - iv.a()) / len).clamp(0.0, 1.0);
    let v = ((iv.b() - x) / len).clamp(0.0, 1.0);
    let mut out = vec![0.0; n + 1];
    if u == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if v == 0.0 {
        out[n] = 1.0;
        return out;
    }
    let peak = (((n + 1) as f64 * u).floor() as usize).min(n);
    out[peak] = basis_unit(n, peak, u, v);
    let up = u / v;
    for k in peak..n {
        let next = out[k] * (n - k) as f64 / (k + 1) as f64 * up;
        if next == 0.0 {
            break;
        }
        out[k + 1] = next;
    }
    let down = v / u;
    for k in (1..=peak).rev() {
        let next = out[k] * k as f64 / (n - k + 1) as f64 * down;
        if next == 0.0 {
            break;
        }
        out[k - 1] = next;
    }
    // The peak value carries the only sizeable error (log-gamma above the
    // threshold); rescaling restores the partition of unity.
    let total: f64 = out.iter().sum();
    out.iter_mut().for_each(|p| *p /= total);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn iv_r(a: i64, b: i64) -> Interval<Rational> {
        Interval::new(Rational::from_i64(a), Rational::from_i64(b)).unwrap()
    }

    #[test]
    fn basis_examples() {
        let iv = Interval::unit();
        assert_eq!(basis_eval(7, 0, 0.0, &iv).unwrap(), 1.0);
        assert_eq!(basis_eval(2, 1, 0.5, &iv).unwrap(), 0.5);
        assert_eq!(basis_eval(3, 4, 0.5, &iv), Err(Error::IndexOutOfRange { k: 4, n: 3 }));
    }

    #[test]
    fn partition_of_unity() {
        let iv = Interval::new(-1.0, 2.0).unwrap();
        for n in [1usize, 5, 50, 500, 1024, 1029, 1030] {
            for i in 0..100 {
                let x = -1.0 + 3.0 * ((i as f64 * 0.6180339887) % 1.0);
                let s: f64 = (0..=n).map(|k| basis_eval(n, k, x, &iv).unwrap()).sum();
                assert!((s - 1.0).abs() <= n as f64 * 1e-14, "n={n} x={x} s={s}");
                let s2: f64 = basis_values(n, x, &iv).iter().sum();
                assert!((s2 - 1.0).abs() <= n as f64 * 1e-14, "n={n} x={x} s2={s2}");
            }
        }
    }

    #[test]
    fn log_space_agrees_with_recurrence() {
        let iv = Interval::unit();
        let n = 2000;
        let vals = basis_values(n, 0.37, &iv);
        for k in [600, 740, 800] {
            let direct = basis_eval(n, k, 0.37, &iv).unwrap();
            assert!((direct - vals[k]).abs() <= 1e-11 * direct.max(1e-300), "{direct} {}", vals[k]);
        }
        let s: f64 = vals.iter().sum();
        assert!((s - 1.0).abs() < 1e-10);
    }

    #[test]
    fn constant_coordinates_evaluate_to_constant() {
        let f = BernsteinForm::new(Interval::new(-2.0, 3.0).unwrap(), vec![1.5; 9]).unwrap();
        for x in [-2.0, -0.3, 1.0, 3.0] {
            assert!((f.eval(x) - 1.5).abs() < 1e-14);
        }
    }

    #[test]
    fn cube_on_symmetric_interval() {
        let p = Polynomial::monomial(vec![r(0, 1), r(0, 1), r(0, 1), r(1, 1)]);
        let f = monomial_to_bernstein(&p, 4, &iv_r(-1, 1)).unwrap();
        assert_eq!(f.coords(), &[r(-1, 1), r(1, 2), r(0, 1), r(-1, 2), r(1, 1)]);
        assert_eq!(f.evaluate(&r(0, 1)), r(0, 1));
        assert_eq!(f.to_f64().eval(0.0), 0.0);
    }

    #[test]
    fn identity_gives_equispaced_coordinates() {
        let f = monomial_to_bernstein(&Polynomial::<Rational>::identity(), 7, &iv_r(0, 1)).unwrap();
        for (k, c) in f.coords().iter().enumerate() {
            assert_eq!(*c, r(k as i64, 7));
        }
        let w = f.derivative_coordinates().unwrap();
        assert!(w.coords().iter().all(|c| *c == r(1, 1)));
    }

    #[test]
    fn cubic_coordinates_and_derivative_coordinates() {
        let p = Polynomial::monomial(vec![r(0, 1), r(3, 8), r(-1, 2), r(1, 3)]);
        let f = monomial_to_bernstein(&p, 3, &iv_r(0, 1)).unwrap();
        assert_eq!(f.coords(), &[r(0, 1), r(1, 8), r(1, 12), r(5, 24)]);
        assert_eq!(f.evaluate(&r(1, 1)), r(5, 24));
        let w = f.derivative_coordinates().unwrap();
        assert_eq!(w.coords(), &[r(3, 8), r(-1, 8), r(3, 8)]);
        assert_eq!(w.n(), 2);
    }

    #[test]
    fn shifted_cube_closed_forms() {
        let unit = iv_r(0, 1);
        let half_cube = Polynomial::shifted_power(r(1, 2), 3);
        for big_n in [4i64, 10, 50] {
            let f = monomial_to_bernstein(&half_cube, 2 * big_n as usize, &unit).unwrap();
            assert_eq!(f.coords()[big_n as usize], r(0, 1));
            assert_eq!(f.coords()[big_n as usize + 1], r(-3, 16 * big_n * big_n - 8 * big_n));
        }
        for big_n in [3i64, 8, 20] {
            let p = Polynomial::shifted_power(r(1, big_n), 3);
            let f = monomial_to_bernstein(&p, big_n as usize, &unit).unwrap();
            let n3 = big_n.pow(3);
            assert_eq!(f.coords()[2], r(5, n3) - r(6, n3 - big_n * big_n));
        }
    }

    #[test]
    fn degree_too_high() {
        let p = Polynomial::<f64>::shifted_power(0.0, 3);
        assert_eq!(monomial_to_bernstein(&p, 2, &Interval::unit()), Err(Error::DegreeTooHigh { n: 2, degree: 3 }));
    }

    #[test]
    fn elevation_examples() {
        let c = BernsteinForm::new(iv_r(0, 1), vec![r(2, 3); 4]).unwrap();
        assert!(c.degree_elevate().coords().iter().all(|x| *x == r(2, 3)));

        let p = Polynomial::shifted_power(r(1, 2), 3);
        let f3 = monomial_to_bernstein(&p, 3, &iv_r(0, 1)).unwrap();
        let f4 = monomial_to_bernstein(&p, 4, &iv_r(0, 1)).unwrap();
        assert_eq!(f3.degree_elevate(), f4);
    }

    #[test]
    fn elevation_preserves_nonnegativity() {
        let mut f = BernsteinForm::new(Interval::unit(), vec![0.0, 3.0, 0.0, 0.5, 0.0]).unwrap();
        for _ in 0..50 {
            f = f.degree_elevate();
            assert!(f.coords().iter().all(|c| *c >= 0.0));
        }
        assert_eq!(f.n(), 54);
    }
}
