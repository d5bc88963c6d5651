//! The operator `B_n^{f1} f = Σ f(t_k) p_{n,k}` with nodes
//! `t_k = f1^{-1}(γ_k)`, where `γ` are the Bernstein coordinates of `f1`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bernstein::{basis_values, monomial_to_bernstein, BernsteinForm};
use crate::error::{Error, Result};
use crate::poly::{certify_monotone, invert_monotone, Interval, MonotonicityCertificate, Polynomial};
use crate::scalar::{powi, Scalar};

/// Default relative tolerance for node inversion.
pub const DEFAULT_TOL: f64 = 1e-13;

/// Slack allowed when checking that the coordinates lie in `[f1(a), f1(b)]`
/// with floats, relative to the larger of `f1(b) - f1(a)` and the size of
/// the terms in the expansions of `f1`.
pub const EXISTENCE_TOL: f64 = 1e-13;

/// Derivative coordinates below `SIGN_TOL * max|w|` count as zero with floats.
pub const SIGN_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Float,
    Rational,
}

impl Arithmetic {
    pub fn of<T: Scalar>() -> Self {
        if T::EXACT {
            Self::Rational
        } else {
            Self::Float
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Existence {
    Exists,
    /// Some coordinates fall outside `[f1(a), f1(b)]`.
    NotDefined {
        offending: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeOrder {
    StrictlyIncreasing,
    NonDecreasing,
    HasReversals,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingReport {
    pub classification: NodeOrder,
    /// Indices `k` with `t_{k+1} < t_k`.
    pub reversal_indices: Vec<usize>,
    /// Number of initial nodes equal to `a`.
    pub leading_plateau: usize,
    /// Number of final nodes equal to `b`.
    pub trailing_plateau: usize,
}

/// A generalized Bernstein operator of dimension `n`.
///
/// Coordinates are kept in the arithmetic `T` the operator was built with;
/// nodes are always doubles.
#[derive(Debug, Clone)]
pub struct GeneralizedOperator<T = f64> {
    f1: Polynomial<T>,
    iv: Interval<T>,
    n: usize,
    gamma: BernsteinForm<T>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    status: Existence,
    tol: f64,
    f1_float: Polynomial<f64>,
    iv_float: Interval<f64>,
}

impl<T: Scalar> GeneralizedOperator<T> {
    pub fn f1(&self) -> &Polynomial<T> {
        &self.f1
    }

    pub fn f1_f64(&self) -> &Polynomial<f64> {
        &self.f1_float
    }

    pub fn interval(&self) -> &Interval<T> {
        &self.iv
    }

    pub fn interval_f64(&self) -> &Interval<f64> {
        &self.iv_float
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> &BernsteinForm<T> {
        &self.gamma
    }

    /// Empty unless the operator exists.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn status(&self) -> &Existence {
        &self.status
    }

    pub fn exists(&self) -> bool {
        self.status == Existence::Exists
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn arithmetic(&self) -> Arithmetic {
        Arithmetic::of::<T>()
    }

    fn require_exists(&self) -> Result<()> {
        match &self.status {
            Existence::Exists => Ok(()),
            Existence::NotDefined { offending } => {
                Err(Error::OperatorNotDefined { n: self.n, offending: offending.clone() })
            }
        }
    }

    /// `f` at every node. Runs of nodes sitting on an endpoint share one call.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Result<Vec<f64>> {
        self.require_exists()?;
        let (a, b) = (*self.iv_float.a(), *self.iv_float.b());
        let (mut fa, mut fb) = (None, None);
        Ok(self
            .nodes
            .iter()
            .map(|&t| {
                if t == a {
                    *fa.get_or_insert_with(|| f(a))
                } else if t == b {
                    *fb.get_or_insert_with(|| f(b))
                } else {
                    f(t)
                }
            })
            .collect())
    }

    /// `Σ values_k p_{n,k}(x)` for values already sampled at the nodes.
    pub fn combine(&self, values: &[f64], x: f64) -> f64 {
        basis_values(self.n, x, &self.iv_float).iter().zip(values).map(|(p, v)| p * v).sum()
    }

    /// The operator dump as JSON. Exact builds add `gamma_exact`.
    pub fn to_json(&self) -> Value {
        let (status, offending) = match &self.status {
            Existence::Exists => ("exists", Vec::new()),
            Existence::NotDefined { offending } => ("not_defined", offending.clone()),
        };
        let mut out = json!({
            "n": self.n,
            "interval": [self.iv_float.a(), self.iv_float.b()],
            "gamma": self.gamma.coords().iter().map(Scalar::to_f64).collect::<Vec<_>>(),
            "nodes": self.nodes,
            "status": status,
            "offending_indices": offending,
        });
        if T::EXACT {
            out["gamma_exact"] = self.gamma.coords().iter().map(Scalar::render).collect();
        }
        out
    }
}

/// `f1(t) - f1(a)` and `f1(b) - f1(t)` at the nodes, computed without the
/// constant term so that coordinates close to an endpoint keep their
/// relative accuracy.
struct EndpointGaps<T> {
    above_left: Vec<T>,
    below_right: Vec<T>,
}

impl<T: Scalar> EndpointGaps<T> {
    fn new(f1: &Polynomial<T>, n: usize, iv: &Interval<T>) -> Self {
        let len = iv.length();
        let from_a = scaled_tail(&f1.rebase(iv.a()), &len);
        let from_b = scaled_tail(&f1.rebase(iv.b()), &-len.clone());
        let above_left = (0..=n).map(|k| tail_sum(&from_a, k, n)).collect();
        let below_right = (0..=n).map(|k| -tail_sum(&from_b, n - k, n)).collect();
        Self { above_left, below_right }
    }
}

/// `c_l h^l` for the coefficients of `p` about its base.
fn scaled_tail<T: Scalar>(p: &Polynomial<T>, h: &T) -> Vec<T> {
    p.coeffs().iter().enumerate().map(|(l, c)| c.clone() * powi(h, l)).collect()
}

/// `Σ_{l=1}^{min(j,m)} s_l Π_{i<l} (j-i)/(n-i)` for `s_l = c_l h^l`.
fn tail_sum<T: Scalar>(scaled: &[T], j: usize, n: usize) -> T {
    let mut acc = T::zero();
    let mut ratio = T::one();
    for (l, sl) in scaled.iter().enumerate().take(j + 1).skip(1) {
        ratio = ratio * T::ratio((j - l + 1) as i64, (n - l + 1) as i64);
        acc = acc + sl.clone() * ratio.clone();
    }
    acc
}

fn below_tolerance<T: Scalar>(x: &T, scale: &T) -> bool {
    *x < T::zero() && !x.negligible(scale, EXISTENCE_TOL)
}

/// `Σ_{l>=1} |c_l| r^l` with `r` the farthest reach from the base into `iv`:
/// the size of the terms met when evaluating `p` on `iv`.
fn term_magnitude<T: Scalar>(p: &Polynomial<T>, iv: &Interval<T>) -> T {
    let (da, db) = ((iv.a().clone() - p.base().clone()).abs(), (iv.b().clone() - p.base().clone()).abs());
    let reach = if da > db { da } else { db };
    let mut acc = T::zero();
    let mut power = T::one();
    for c in &p.coeffs()[1..] {
        power = power * reach.clone();
        acc = acc + c.abs() * power.clone();
    }
    acc
}

/// Scale for float tolerances on coordinates: the range of `f1`, raised to
/// the term magnitudes of the input and of its expansion about `a`, since
/// cancellation among those terms is what float coordinates lose.
fn coordinate_scale<T: Scalar>(input: &Polynomial<T>, at_a: &Polynomial<T>, iv: &Interval<T>) -> T {
    let range = at_a.evaluate(iv.b()) - at_a.evaluate(iv.a());
    [term_magnitude(input, iv), term_magnitude(at_a, iv)].into_iter().fold(range, |m, t| if t > m { t } else { m })
}

/// Builds `B_n^{f1}` on `iv`.
///
/// Existence is decided on the coordinates; nodes are then obtained by
/// monotone inversion. Nodes inside the endpoint plateaus predicted by the
/// zero orders of `f1'` are set to the endpoint exactly.
pub fn build_operator<T: Scalar>(
    f1: &Polynomial<T>,
    n: usize,
    iv: &Interval<T>,
    tol: f64,
) -> Result<GeneralizedOperator<T>> {
    let input = f1;
    let f1 = f1.rebase(iv.a());
    if n < f1.degree() {
        return Err(Error::DegreeTooHigh { n, degree: f1.degree() });
    }
    let cert = certify_monotone(&f1, iv)?;
    let gamma = monomial_to_bernstein(&f1, n, iv)?;
    let gaps = EndpointGaps::new(&f1, n, iv);
    let scale = coordinate_scale(input, &f1, iv);
    let offending: Vec<usize> = (0..=n)
        .filter(|&k| below_tolerance(&gaps.above_left[k], &scale) || below_tolerance(&gaps.below_right[k], &scale))
        .collect();

    let f1_float = f1.to_f64();
    let iv_float = iv.to_f64();
    let (status, nodes) = if offending.is_empty() {
        (Existence::Exists, compute_nodes(&f1, iv, gamma.coords(), &gaps, &cert, &scale, tol)?)
    } else {
        (Existence::NotDefined { offending }, Vec::new())
    };
    Ok(GeneralizedOperator {
        f1,
        iv: iv.clone(),
        n,
        gamma,
        weights: vec![1.0; n + 1],
        nodes,
        status,
        tol,
        f1_float,
        iv_float,
    })
}

/// `f1(x) - f1(p)` expanded about `p`, in doubles, with its range on `[a, b]`.
struct Anchor {
    shifted: Polynomial<f64>,
    lo: f64,
    hi: f64,
}

impl Anchor {
    fn new<T: Scalar>(f1: &Polynomial<T>, p: &T, iv: &Interval<f64>) -> Self {
        let mut c: Vec<f64> = f1.rebase(p).coeffs().iter().map(Scalar::to_f64).collect();
        c[0] = 0.0;
        let shifted = Polynomial::new(p.to_f64(), c);
        let (lo, hi) = (shifted.eval(*iv.a()), shifted.eval(*iv.b()));
        Self { shifted, lo, hi }
    }

    fn invert(&self, iv: &Interval<f64>, y: f64, tol: f64) -> Result<f64> {
        invert_monotone(&self.shifted, iv, y.clamp(self.lo, self.hi), tol)
    }
}

/// Each node is inverted about whichever of `a`, `b` or an interior zero of
/// `f1'` is closest in value, so the target is a small offset known to
/// (nearly) full relative precision. Near a zero of order `s - 1` the node
/// is only as accurate as the `s`-th root of the offset error.
fn compute_nodes<T: Scalar>(
    f1: &Polynomial<T>,
    iv: &Interval<T>,
    gamma: &[T],
    gaps: &EndpointGaps<T>,
    cert: &MonotonicityCertificate,
    scale: &T,
    tol: f64,
) -> Result<Vec<f64>> {
    let iv_f = iv.to_f64();
    let (a, b) = (*iv_f.a(), *iv_f.b());
    let n = gamma.len() - 1;
    let (s1, s2) = cert.endpoint_zero_orders;
    let left = Anchor::new(f1, iv.a(), &iv_f);
    let right = Anchor::new(f1, iv.b(), &iv_f);
    let interior: Vec<(T, Anchor)> = cert
        .interior_derivative_zeros
        .iter()
        .map(|z| {
            let p = T::from_f64(z.location);
            (f1.evaluate(&p), Anchor::new(f1, &p, &iv_f))
        })
        .collect();

    let mut nodes = (0..=n)
        .map(|k| {
            let up = gaps.above_left[k].to_f64();
            let down = gaps.below_right[k].to_f64();
            if k <= s1 || up <= 0.0 {
                return Ok(a);
            }
            if k + s2 >= n || down <= 0.0 {
                return Ok(b);
            }
            let (mut y, mut anchor) = if up <= down { (up, &left) } else { (-down, &right) };
            for (value, inner) in &interior {
                let offset = (gamma[k].clone() - value.clone()).to_f64();
                if offset.abs() < y.abs() {
                    (y, anchor) = (offset, inner);
                }
            }
            anchor.invert(&iv_f, y, tol)
        })
        .collect::<Result<Vec<f64>>>()?;
    // Coordinates that agree to within round-off share a node, so a tie in
    // float arithmetic cannot invert into a spurious reversal.
    for k in 1..n.saturating_sub(s2) {
        let step = gamma[k].clone() - gamma[k - 1].clone();
        if step.negligible(scale, SIGN_TOL) {
            nodes[k] = nodes[k - 1];
        }
    }
    Ok(nodes)
}

/// The classical operator: `f1 = x` and equispaced nodes, no inversion.
pub fn classical_operator<T: Scalar>(n: usize, iv: &Interval<T>) -> Result<GeneralizedOperator<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("the classical operator needs n >= 1".into()));
    }
    let f1 = Polynomial::<T>::identity().rebase(iv.a());
    let coords: Vec<T> = (0..=n).map(|k| iv.equispaced(k, n)).collect();
    let iv_float = iv.to_f64();
    let nodes = coords.iter().map(Scalar::to_f64).collect();
    Ok(GeneralizedOperator {
        f1_float: f1.to_f64(),
        f1,
        iv: iv.clone(),
        n,
        gamma: BernsteinForm::new(iv.clone(), coords)?,
        nodes,
        weights: vec![1.0; n + 1],
        status: Existence::Exists,
        tol: 0.0,
        iv_float,
    })
}

/// `B_n^{f1} f (x)`.
pub fn evaluate_operator<T: Scalar, F: Fn(f64) -> f64>(op: &GeneralizedOperator<T>, f: F, x: f64) -> Result<f64> {
    let values = op.sample(f)?;
    Ok(op.combine(&values, x))
}

/// Monotonicity of the node sequence and the endpoint plateaus.
pub fn node_ordering<T: Scalar>(op: &GeneralizedOperator<T>) -> Result<OrderingReport> {
    op.require_exists()?;
    let t = &op.nodes;
    let reversal_indices: Vec<usize> = (0..op.n).filter(|&k| t[k + 1] < t[k]).collect();
    let classification = if !reversal_indices.is_empty() {
        NodeOrder::HasReversals
    } else if t.windows(2).all(|w| w[1] > w[0]) {
        NodeOrder::StrictlyIncreasing
    } else {
        NodeOrder::NonDecreasing
    };
    let (a, b) = (*op.iv_float.a(), *op.iv_float.b());
    Ok(OrderingReport {
        classification,
        reversal_indices,
        leading_plateau: t.iter().take_while(|&&x| x == a).count(),
        trailing_plateau: t.iter().rev().take_while(|&&x| x == b).count(),
    })
}

/// Classifies a coordinate vector by sign: all positive, all nonnegative,
/// or some negative. Floats treat `|w| <= SIGN_TOL * max|w|` as zero.
pub fn sign_class<T: Scalar>(w: &[T]) -> NodeOrder {
    let scale = w.iter().fold(T::zero(), |m, x| if x.abs() > m { x.abs() } else { m });
    let mut zero = false;
    for x in w {
        if x.negligible(&scale, SIGN_TOL) {
            zero = true;
        } else if *x < T::zero() {
            return NodeOrder::HasReversals;
        }
    }
    if zero {
        NodeOrder::NonDecreasing
    } else {
        NodeOrder::StrictlyIncreasing
    }
}

/// Whether every `γ_{n,k}` lies in `[f1(a), f1(b)]`, without computing nodes.
pub fn operator_exists<T: Scalar>(f1: &Polynomial<T>, n: usize, iv: &Interval<T>) -> Result<bool> {
    let input = f1;
    let f1 = f1.rebase(iv.a());
    if n < f1.degree() {
        return Err(Error::DegreeTooHigh { n, degree: f1.degree() });
    }
    let gaps = EndpointGaps::new(&f1, n, iv);
    let scale = coordinate_scale(input, &f1, iv);
    Ok(gaps.above_left.iter().chain(&gaps.below_right).all(|g| !below_tolerance(g, &scale)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinimalN {
    /// Smallest `n` for which the operator exists.
    pub n_exist: Option<usize>,
    /// Smallest `n` with all derivative coordinates `w_{n-1,k} >= 0`.
    pub n_monotone: Option<usize>,
}

/// Scans `n = max(deg f1, 1) ..= n_max`.
///
/// Nonnegativity of the derivative coordinates persists under degree
/// elevation, so the first monotone `n` is reported. When `f1'` vanishes
/// inside the interval no `n` can be monotone and only `n_exist` is sought.
pub fn min_existence_n<T: Scalar>(f1: &Polynomial<T>, iv: &Interval<T>, n_max: usize) -> Result<MinimalN> {
    let f1 = f1.rebase(iv.a());
    let cert = certify_monotone(&f1, iv)?;
    let df = f1.derivative();
    let mut out = MinimalN { n_exist: None, n_monotone: None };
    for n in f1.degree().max(1)..=n_max {
        if out.n_exist.is_none() && operator_exists(&f1, n, iv)? {
            out.n_exist = Some(n);
        }
        if out.n_monotone.is_none() && !cert.has_interior_zeros() {
            let w = monomial_to_bernstein(&df, n - 1, iv)?;
            if sign_class(w.coords()) != NodeOrder::HasReversals {
                out.n_monotone = Some(n);
            }
        }
        if out.n_exist.is_some() && (out.n_monotone.is_some() || cert.has_interior_zeros()) {
            break;
        }
    }
    Ok(out)
}
