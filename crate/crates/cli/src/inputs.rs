use std::path::Path;

use anyhow::{bail, Context, Result};
use genbern::{parse_polynomial, parse_rational, Builtin, Interval, Polynomial, Rational, SampleTable, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Common, Mode, NGrid};

/// Largest dimension accepted in rational mode.
pub const RATIONAL_N_LIMIT: usize = 500;

/// A scalar type the commands can run in.
pub trait Backend: Scalar {
    fn lift(r: &Rational) -> Self;
}

impl Backend for f64 {
    fn lift(r: &Rational) -> Self {
        r.to_f64()
    }
}

impl Backend for Rational {
    fn lift(r: &Rational) -> Self {
        r.clone()
    }
}

/// f1 and the interval, both exact.
pub struct Problem {
    pub f1: Polynomial<Rational>,
    pub a: Rational,
    pub b: Rational,
}

impl Problem {
    pub fn load(c: &Common) -> Result<Self> {
        let (f1, from_json) = load_f1(&c.f1, c.seed)?;
        let (a, b) = match (&c.interval, from_json) {
            (Some(v), _) => {
                (parse_rational(&v[0]).context("--interval A")?, parse_rational(&v[1]).context("--interval B")?)
            }
            (None, Some(ab)) => ab,
            (None, None) => (Rational::from_i64(0), Rational::from_i64(1)),
        };
        Interval::new(a.clone(), b.clone()).context("--interval")?;
        Ok(Self { f1: f1.rebase(&a), a, b })
    }

    pub fn f1<T: Backend>(&self) -> Polynomial<T> {
        Polynomial::new(T::lift(self.f1.base()), self.f1.coeffs().iter().map(T::lift).collect())
    }

    pub fn interval<T: Backend>(&self) -> Interval<T> {
        Interval::new(T::lift(&self.a), T::lift(&self.b)).expect("validated on load")
    }
}

type Loaded = (Polynomial<Rational>, Option<(Rational, Rational)>);

fn load_f1(spec: &str, seed: u64) -> Result<Loaded> {
    if let Some(deg) = spec.strip_prefix("random:") {
        let deg: usize = deg.parse().context("--f1 random:<degree>")?;
        return Ok((random_increasing(deg, seed)?, None));
    }
    let text = if Path::new(spec).is_file() {
        std::fs::read_to_string(spec).with_context(|| format!("reading --f1 file {spec}"))?
    } else {
        spec.to_string()
    };
    let parsed = parse_polynomial(&text).context("--f1")?;
    Ok((parsed.poly, parsed.interval))
}

/// `f1` with `f1' = q^2 + c` on `[0, 1]` for a random `q` of degree
/// `(deg - 1) / 2` and a random `c > 0`; coefficients are multiples of 1/8.
pub fn random_increasing(deg: usize, seed: u64) -> Result<Polynomial<Rational>> {
    if deg.is_multiple_of(2) {
        bail!("--f1 random:<degree> needs an odd degree, got {deg}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q: Vec<Rational> = (0..=(deg - 1) / 2).map(|_| Rational::ratio(rng.gen_range(-8..=8), 8)).collect();
    if q.last().is_some_and(|c| *c == Rational::from_i64(0)) {
        *q.last_mut().expect("nonempty") = Rational::from_i64(1);
    }
    let q = Polynomial::monomial(q);
    let c = Rational::ratio(rng.gen_range(1..=8), 64);
    Ok(q.mul(&q).add(&Polynomial::constant(c)).antiderivative())
}

/// A real function given on the command line.
pub fn load_function(spec: &str, problem: &Problem) -> Result<Box<dyn Fn(f64) -> f64>> {
    if spec == "f1" {
        let p = problem.f1::<f64>();
        return Ok(Box::new(move |x| p.eval(x)));
    }
    if let Ok(b) = spec.parse::<Builtin>() {
        return Ok(Box::new(move |x| b.eval(x)));
    }
    if Path::new(spec).is_file() {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_path(spec)
            .with_context(|| format!("reading --f table {spec}"))?;
        let mut points = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let rec = rec.with_context(|| format!("--f table {spec}, record {}", i + 1))?;
            let (Some(x), Some(y)) = (rec.get(0), rec.get(1)) else {
                bail!("--f table {spec}, record {}: expected two columns x,y", i + 1);
            };
            match (x.parse::<f64>(), y.parse::<f64>()) {
                (Ok(x), Ok(y)) => points.push((x, y)),
                _ if i == 0 => continue, // header row
                _ => bail!("--f table {spec}, record {}: not numeric", i + 1),
            }
        }
        return Ok(Box::new({
            let table = SampleTable::new(points).context("--f")?;
            move |x| table.eval(x)
        }));
    }
    bail!("--f: unknown function {spec:?} (expected one, identity, e<j>, abs(c), hat(c,w), sqrt(c), f1 or a CSV file)")
}

pub fn guard_n(mode: Mode, n: usize, flag: &str) -> Result<()> {
    if mode == Mode::Rational && n > RATIONAL_N_LIMIT {
        bail!("{flag} {n} exceeds the rational-mode limit of {RATIONAL_N_LIMIT}");
    }
    Ok(())
}

pub fn expand_grid(g: &NGrid) -> Result<Vec<usize>> {
    let [start, stop, step] = g.n_grid[..] else {
        bail!("--n-grid needs START STOP STEP");
    };
    if start == 0 || stop < start {
        bail!("--n-grid: need 1 <= START <= STOP, got {start} {stop}");
    }
    if step == 0 || (g.geometric && step < 2) {
        bail!("--n-grid: STEP must be positive (at least 2 with --geometric)");
    }
    let mut out = Vec::new();
    let mut n = start;
    while n <= stop {
        out.push(n);
        n = if g.geometric { n * step } else { n + step };
    }
    Ok(out)
}
