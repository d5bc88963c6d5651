//! Reference values with known exact or closed-form answers, run as one
//! suite. Exact values are checked in rational arithmetic.

use serde::Serialize;

use crate::analysis::{
    classical_error_constant, convexity_scan, coordinate_error_report, holder_order, node_deviation_report,
};
use crate::bernstein::monomial_to_bernstein;
use crate::error::Result;
use crate::operator::{build_operator, min_existence_n, node_ordering, Existence, DEFAULT_TOL};
use crate::poly::{Interval, Polynomial};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

fn r(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn interval(a: i64, b: i64) -> Interval<Rational> {
    Interval::new(Rational::from_i64(a), Rational::from_i64(b)).expect("a < b")
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::render).collect();
    format!("({})", parts.join(", "))
}

struct Suite(Vec<FixtureOutcome>);

impl Suite {
    fn check(&mut self, name: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>, passed: bool) {
        self.0.push(FixtureOutcome { name: name.into(), expected: expected.into(), actual: actual.into(), passed });
    }

    fn exact(&mut self, name: impl Into<String>, expected: &[Rational], actual: &[Rational]) {
        self.check(name, show(expected), show(actual), expected == actual);
    }

    fn close(&mut self, name: impl Into<String>, expected: f64, actual: f64, tol: f64) {
        let ok = (expected - actual).abs() <= tol;
        self.check(name, format!("{expected:.15e}"), format!("{actual:.15e}"), ok);
    }

    fn run(&mut self, name: &str, body: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = body(self) {
            self.check(name, "no error", format!("error: {e}"), false);
        }
    }
}

/// The four-term cubic with `f1' = (x - 1/2)^2 + 1/8` on `[0, 1]`.
pub fn positive_derivative_cubic() -> Polynomial<Rational> {
    Polynomial::monomial(vec![r(0, 1), r(3, 8), r(-1, 2), r(1, 3)])
}

/// `B_4 e_4` for `f1 = x^3` on `[-1, 1]` in closed form.
pub fn cube_quartic_closed_form(x: f64) -> f64 {
    let c = 0.5f64.powf(4.0 / 3.0);
    (1.0 - x).powi(4) / 16.0
        + c * ((1.0 - x).powi(3) * (1.0 + x) + (1.0 - x) * (1.0 + x).powi(3)) / 4.0
        + (1.0 + x).powi(4) / 16.0
}

pub fn run_fixtures() -> Vec<FixtureOutcome> {
    let mut s = Suite(Vec::new());
    let unit = interval(0, 1);
    let sym = interval(-1, 1);

    s.run("cube on [-1,1]", |s| {
        let g = monomial_to_bernstein(&Polynomial::shifted_power(r(0, 1), 3), 4, &sym)?;
        s.exact("cube on [-1,1], n = 4: coordinates", &[r(-1, 1), r(1, 2), r(0, 1), r(-1, 2), r(1, 1)], g.coords());
        Ok(())
    });

    s.run("centered cube", |s| {
        let half = Polynomial::shifted_power(r(1, 2), 3);
        s.exact("centered cube about 0", &[r(-1, 8), r(3, 4), r(-3, 2), r(1, 1)], half.rebase(&r(0, 1)).coeffs());
        for big_n in [4i64, 10, 50] {
            let g = monomial_to_bernstein(&half, 2 * big_n as usize, &unit)?;
            let k = big_n as usize;
            s.exact(
                format!("centered cube, n = {}: coordinates {k} and {}", 2 * big_n, k + 1),
                &[r(0, 1), r(-3, 16 * big_n * big_n - 8 * big_n)],
                &g.coords()[k..k + 2],
            );
            let op = build_operator(&half, 2 * k, &unit, DEFAULT_TOL)?;
            let gap = (op.nodes()[k + 1] - op.nodes()[k]).abs();
            let expected = (3.0 / (16.0 * (big_n * big_n) as f64 - 8.0 * big_n as f64)).cbrt();
            s.close(
                format!("centered cube, n = {}: gap between nodes {k} and {}", 2 * big_n, k + 1),
                expected,
                gap,
                1e-10,
            );
        }
        let rep = holder_order(&half, &unit)?;
        s.check("centered cube: s", "3", rep.s.to_string(), rep.s == 3);
        let ordering = node_ordering(&build_operator(&half.to_f64(), 40, &Interval::unit(), DEFAULT_TOL)?)?;
        s.check(
            "centered cube, n = 40: node reversals",
            "HasReversals",
            format!("{:?}", ordering.classification),
            !ordering.reversal_indices.is_empty(),
        );
        for big_n in [12usize, 48, 108] {
            let op = build_operator(&half.to_f64(), big_n, &Interval::unit(), DEFAULT_TOL)?;
            let k = big_n / 2 + ((big_n / 3) as f64).sqrt().round() as usize;
            let dev = (op.nodes()[k] - k as f64 / big_n as f64).abs();
            let lower = 1.0 / (3.0 * big_n as f64).sqrt();
            s.check(
                format!("centered cube, n = {big_n}: deviation of node {k}"),
                format!(">= {lower:.6e}"),
                format!("{dev:.6e}"),
                dev >= lower,
            );
        }
        Ok(())
    });

    s.run("steep cube", |s| {
        for big_n in [3i64, 8, 20] {
            let f1 = Polynomial::shifted_power(r(1, big_n), 3);
            let n3 = big_n.pow(3);
            let op = build_operator(&f1, big_n as usize, &unit, DEFAULT_TOL)?;
            s.exact(
                format!("(x - 1/{big_n})^3, n = {big_n}: coordinate 2"),
                &[r(5, n3) - r(6, n3 - big_n * big_n)],
                &op.gamma().coords()[2..3],
            );
            let offending = match op.status() {
                Existence::NotDefined { offending } => offending.clone(),
                Existence::Exists => Vec::new(),
            };
            s.check(
                format!("(x - 1/{big_n})^3, n = {big_n}: not defined"),
                "offending index 2",
                format!("{offending:?}"),
                offending.contains(&2),
            );
        }
        for t in [4i64, 8, 16, 32] {
            let f1 = Polynomial::shifted_power(r(1, t), 3);
            let found = min_existence_n(&f1, &unit, 40 * t as usize)?.n_exist;
            s.check(
                format!("(x - 1/{t})^3: smallest n with an operator"),
                format!("> {t}"),
                format!("{found:?}"),
                found.is_some_and(|n| n > t as usize),
            );
        }
        Ok(())
    });

    s.run("positive-derivative cubic", |s| {
        let f1 = positive_derivative_cubic();
        s.exact("cubic: value at 0 and 1", &[r(0, 1), r(5, 24)], &[f1.evaluate(&r(0, 1)), f1.evaluate(&r(1, 1))]);
        let d = f1.derivative().rebase(&r(1, 2));
        s.exact("cubic: derivative about 1/2", &[r(1, 8), r(0, 1), r(1, 1)], d.coeffs());
        let g = monomial_to_bernstein(&f1, 3, &unit)?;
        s.exact("cubic, n = 3: coordinates", &[r(0, 1), r(1, 8), r(1, 12), r(5, 24)], g.coords());
        let w = g.derivative_coordinates()?;
        s.exact("cubic, n = 3: derivative coordinates", &[r(3, 8), r(-1, 8), r(3, 8)], w.coords());
        let op = build_operator(&f1.to_f64(), 3, &Interval::unit(), DEFAULT_TOL)?;
        let t = op.nodes();
        let ordered = t[0] == 0.0 && t[0] < t[2] && t[2] < t[1] && t[1] < t[3] && t[3] == 1.0;
        s.check("cubic, n = 3: node order", "0 = t0 < t2 < t1 < t3 = 1", format!("{t:?}"), ordered);
        let found = min_existence_n(&f1, &unit, 60)?;
        s.check(
            "cubic: smallest n with an operator",
            "Some(3)",
            format!("{:?}", found.n_exist),
            found.n_exist == Some(3),
        );
        Ok(())
    });

    s.run("square", |s| {
        let sq = Polynomial::monomial(vec![r(0, 1), r(0, 1), r(1, 1)]);
        for n in [4usize, 10, 100] {
            let rep = coordinate_error_report(&sq, n, &unit)?;
            s.exact(
                format!("x^2, n = {n}: error at the midpoint"),
                &[r(1, 4 * n as i64 - 4)],
                &rep.per_k_error[n / 2..n / 2 + 1],
            );
        }
        Ok(())
    });

    s.run("cube and quartic", |s| {
        let cube = Polynomial::<f64>::shifted_power(0.0, 3);
        let iv = Interval::new(-1.0, 1.0)?;
        let op = build_operator(&cube, 4, &iv, DEFAULT_TOL)?;
        let values = op.sample(|x| x.powi(4))?;
        let worst = (0..=100)
            .map(|i| {
                let x = -1.0 + i as f64 / 50.0;
                (op.combine(&values, x) - cube_quartic_closed_form(x)).abs()
            })
            .fold(0.0, f64::max);
        s.close("cube, n = 4: operator on x^4 against its closed form", 0.0, worst, 1e-12);
        let plain = convexity_scan(|_| 1.0, |x| x.powi(3), |x| x.powi(4), &iv, 201)?;
        s.check("x^4 against (1, x^3): convexity witness", "none", format!("{plain:?}"), plain.is_none());
        let image = convexity_scan(|_| 1.0, |x| x.powi(3), |x| op.combine(&values, x), &iv, 201)?;
        s.check(
            "operator image of x^4 against (1, x^3): convexity witness",
            "det < -1e-6",
            format!("{image:?}"),
            image.is_some_and(|w| w.det_value < -1e-6),
        );
        Ok(())
    });

    s.run("identity", |s| {
        let op = build_operator(&Polynomial::<f64>::identity(), 10, &Interval::unit(), DEFAULT_TOL)?;
        let rep = node_deviation_report(&op)?;
        s.close("identity, n = 10: node deviation", 0.0, rep.max_node_deviation, 1e-15);
        Ok(())
    });

    s.close("classical error constant", 1.08988, classical_error_constant(), 1e-5);
    s.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_passes() {
        let out = run_fixtures();
        let failed: Vec<_> = out.iter().filter(|o| !o.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(out.len() > 30);
    }
}
