//! Named test functions for the operator studies.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A builtin real function.
///
/// Text forms: `one`, `identity` (or `x`), `e<j>` for `x^j`, `abs(c)` for
/// `|x - c|`, `hat(c,w)` for `max(0, 1 - |x - c|/w)`, `sqrt(c)` for
/// `sqrt|x - c|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    One,
    Identity,
    Power(u32),
    Abs { center: f64 },
    Hat { center: f64, half_width: f64 },
    Sqrt { center: f64 },
}

impl Builtin {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Self::One => 1.0,
            Self::Identity => x,
            Self::Power(j) => x.powi(j as i32),
            Self::Abs { center } => (x - center).abs(),
            Self::Hat { center, half_width } => (1.0 - (x - center).abs() / half_width).max(0.0),
            Self::Sqrt { center } => (x - center).abs().sqrt(),
        }
    }
}

fn args(s: &str, name: &str) -> Option<Result<Vec<f64>>> {
    let inner = s.strip_prefix(name)?.trim().strip_prefix('(')?.strip_suffix(')')?;
    Some(
        inner
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("bad argument {t:?} in {s:?}: {e}"))))
            .collect(),
    )
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let arity = |v: Vec<f64>, k: usize| {
            if v.len() == k {
                Ok(v)
            } else {
                Err(Error::Parse(format!("{s:?} takes {k} argument(s)")))
            }
        };
        match s {
            "one" | "1" | "e0" => return Ok(Self::One),
            "identity" | "x" | "e1" => return Ok(Self::Identity),
            _ => {}
        }
        if let Some(j) = s.strip_prefix('e') {
            if let Ok(j) = j.parse::<u32>() {
                return Ok(Self::Power(j));
            }
        }
        if let Some(v) = args(s, "abs") {
            let v = arity(v?, 1)?;
            return Ok(Self::Abs { center: v[0] });
        }
        if let Some(v) = args(s, "sqrt") {
            let v = arity(v?, 1)?;
            return Ok(Self::Sqrt { center: v[0] });
        }
        if let Some(v) = args(s, "hat") {
            let v = arity(v?, 2)?;
            if v[1].is_nan() || v[1] <= 0.0 {
                return Err(Error::Parse(format!("hat width must be positive in {s:?}")));
            }
            return Ok(Self::Hat { center: v[0], half_width: v[1] });
        }
        Err(Error::Parse(format!("unknown function {s:?} (expected one, identity, e<j>, abs(c), hat(c,w) or sqrt(c))")))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => write!(f, "one"),
            Self::Identity => write!(f, "identity"),
            Self::Power(j) => write!(f, "e{j}"),
            Self::Abs { center } => write!(f, "abs({center})"),
            Self::Hat { center, half_width } => write!(f, "hat({center},{half_width})"),
            Self::Sqrt { center } => write!(f, "sqrt({center})"),
        }
    }
}

/// Piecewise-linear interpolation of sampled values, constant outside the
/// sampled range.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SampleTable {
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::Parse("sample table contains non-finite values".into()));
        }
        points.sort_by(|p, q| p.0.total_cmp(&q.0));
        if points.is_empty() || points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse("sample table needs distinct abscissae".into()));
        }
        let (xs, ys) = points.into_iter().unzip();
        Ok(Self { xs, ys })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.xs.partition_point(|&t| t <= x);
        if i == 0 {
            return self.ys[0];
        }
        if i == self.xs.len() {
            return self.ys[i - 1];
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let u = (x - x0) / (x1 - x0);
        self.ys[i - 1] * (1.0 - u) + self.ys[i] * u
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let cases = [
            ("one", 0.3, 1.0),
            ("identity", 0.3, 0.3),
            ("e4", 0.5, 0.0625),
            ("abs(0.5)", 0.2, 0.3),
            ("hat(0.5, 0.25)", 0.625, 0.5),
            ("sqrt(0.25)", 0.5, 0.5),
        ];
        for (text, x, y) in cases {
            let f: Builtin = text.parse().unwrap();
            assert!((f.eval(x) - y).abs() < 1e-15, "{text}");
            assert_eq!(f.to_string().parse::<Builtin>().unwrap(), f);
        }
    }

    #[test]
    fn table_interpolates() {
        let t = SampleTable::new(vec![(1.0, 2.0), (0.0, 0.0), (2.0, 0.0)]).unwrap();
        assert_eq!(t.eval(0.5), 1.0);
        assert_eq!(t.eval(1.5), 1.0);
        assert_eq!(t.eval(-3.0), 0.0);
        assert_eq!(t.eval(1.0), 2.0);
        assert!(SampleTable::new(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "cos", "abs()", "hat(1)", "hat(0,-1)", "abs(1,2)", "ex"] {
            assert!(bad.parse::<Builtin>().is_err(), "{bad}");
        }
    }
}
