use anyhow::{bail, Context, Result};
use genbern::analysis::{
    composition_concavity, convexity_scan, error_budget, holder_order, node_deviation_report, ConvexityWitness,
    DeviationReport,
};
use genbern::{
    build_operator, min_existence_n, node_ordering, run_fixtures, Arithmetic, Existence, GeneralizedOperator, Interval,
    Rational,
};
use serde_json::{json, Value};

use crate::inputs::{expand_grid, guard_n, load_function, Backend, Problem};
use crate::{
    output, BuildArgs, Command, ConvexityArgs, ErrorStudyArgs, EvalArgs, FixtureArgs, Mode, ScanArgs, StudyArgs,
};

const NOT_DEFINED: u8 = 2;
const FIXTURE_FAILED: u8 = 3;

pub fn run(command: Command) -> Result<u8> {
    match command {
        Command::Build(a) => by_mode(a.common.mode, || build::<f64>(&a), || build::<Rational>(&a)),
        Command::Eval(a) => by_mode(a.common.mode, || eval::<f64>(&a), || eval::<Rational>(&a)),
        Command::ScanN(a) => by_mode(a.common.mode, || scan::<f64>(&a), || scan::<Rational>(&a)),
        Command::DeviationStudy(a) => by_mode(a.common.mode, || deviation::<f64>(&a), || deviation::<Rational>(&a)),
        Command::ErrorStudy(a) => by_mode(a.common.mode, || errors::<f64>(&a), || errors::<Rational>(&a)),
        Command::Convexity(a) => by_mode(a.common.mode, || convexity::<f64>(&a), || convexity::<Rational>(&a)),
        Command::PaperExamples(a) => fixtures(&a),
    }
}

fn by_mode(mode: Mode, float: impl FnOnce() -> Result<u8>, exact: impl FnOnce() -> Result<u8>) -> Result<u8> {
    match mode {
        Mode::Float => float(),
        Mode::Rational => exact(),
    }
}

/// Shortest round-trip text; scientific outside `[1e-4, 1e16)`.
fn fmt(x: f64) -> String {
    if x != 0.0 && x.is_finite() && !(1e-4..1e16).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn arithmetic_name<T: Backend>() -> &'static str {
    match Arithmetic::of::<T>() {
        Arithmetic::Float => "float",
        Arithmetic::Rational => "rational",
    }
}

fn build_for<T: Backend>(p: &Problem, n: usize, tol: f64) -> Result<GeneralizedOperator<T>> {
    build_operator(&p.f1::<T>(), n, &p.interval::<T>(), tol)
        .with_context(|| format!("building the operator for --n {n}"))
}

fn report_not_defined<T: Backend>(op: &GeneralizedOperator<T>) {
    if let Existence::NotDefined { offending } = op.status() {
        eprintln!(
            "operator not defined for n = {}: coordinates outside [f1(a), f1(b)] at indices {offending:?}",
            op.n()
        );
    }
}

fn build<T: Backend>(a: &BuildArgs) -> Result<u8> {
    guard_n(a.common.mode, a.n, "--n")?;
    let p = Problem::load(&a.common)?;
    let op = build_for::<T>(&p, a.n, a.common.tol)?;
    let mut dump = op.to_json();
    dump["arithmetic"] = json!(arithmetic_name::<T>());
    dump["f1"] = genbern::polynomial_to_json(&p.f1);
    dump["ordering"] = if op.exists() { serde_json::to_value(node_ordering(&op)?)? } else { Value::Null };
    output::json(&dump, a.common.out.as_deref())?;
    if op.exists() {
        Ok(0)
    } else {
        report_not_defined(&op);
        Ok(NOT_DEFINED)
    }
}

fn eval<T: Backend>(a: &EvalArgs) -> Result<u8> {
    guard_n(a.common.mode, a.n, "--n")?;
    if a.grid < 2 {
        bail!("--grid must be at least 2, got {}", a.grid);
    }
    let p = Problem::load(&a.common)?;
    let f = load_function(&a.f, &p)?;
    let op = build_for::<T>(&p, a.n, a.common.tol)?;
    if !op.exists() {
        report_not_defined(&op);
        return Ok(NOT_DEFINED);
    }
    let values = op.sample(&f)?;
    let iv: &Interval<f64> = op.interval_f64();
    let rows: Vec<Vec<String>> = (0..a.grid)
        .map(|i| {
            let x = iv.a() + iv.length() * i as f64 / (a.grid - 1) as f64;
            let (approx, exact) = (op.combine(&values, x), f(x));
            vec![fmt(x), fmt(approx), fmt(exact), fmt((approx - exact).abs())]
        })
        .collect();
    output::csv(
        &["units: x in interval coordinates, values and errors in units of f".into()],
        &["x", "operator_value", "f_value", "abs_error"],
        &rows,
        a.common.out.as_deref(),
    )?;
    Ok(0)
}

fn scan<T: Backend>(a: &ScanArgs) -> Result<u8> {
    guard_n(a.common.mode, a.n_max, "--n-max")?;
    let p = Problem::load(&a.common)?;
    let found = min_existence_n(&p.f1::<T>(), &p.interval::<T>(), a.n_max)?;
    let out = json!({
        "n_max": a.n_max,
        "n_exist": found.n_exist,
        "n_monotone": found.n_monotone,
        "arithmetic": arithmetic_name::<T>(),
    });
    output::json(&out, a.common.out.as_deref())?;
    Ok(0)
}

fn deviation<T: Backend>(a: &StudyArgs) -> Result<u8> {
    let ns = expand_grid(&a.grid)?;
    guard_n(a.common.mode, *ns.last().expect("nonempty grid"), "--n-grid STOP")?;
    let p = Problem::load(&a.common)?;
    let s = holder_order(&p.f1::<T>(), &p.interval::<T>())?.s;
    let mut reports: Vec<Option<DeviationReport>> = Vec::with_capacity(ns.len());
    for &n in &ns {
        let op = build_for::<T>(&p, n, a.common.tol)?;
        reports.push(if op.exists() { Some(node_deviation_report(&op)?) } else { None });
    }
    // Smallest constants K with deviation <= K/n and <= K/n^{1/s} on the rows that exist.
    let fit =
        |e: f64| reports.iter().flatten().map(|r| (r.n as f64).powf(e) * r.max_node_deviation).fold(0.0, f64::max);
    let (k_lin, k_hol) = (fit(1.0), fit(1.0 / s as f64));
    let rows = ns
        .iter()
        .zip(&reports)
        .map(|(&n, r)| match r {
            Some(r) => vec![
                n.to_string(),
                "exists".into(),
                fmt(r.max_node_deviation),
                fmt(r.max_consecutive_gap),
                fmt(k_lin / n as f64),
                fmt(k_hol / (n as f64).powf(1.0 / s as f64)),
            ],
            None => {
                vec![n.to_string(), "not_defined".into(), String::new(), String::new(), String::new(), String::new()]
            }
        })
        .collect::<Vec<_>>();
    let notes = [
        format!("s = {s}; K_linear = {k_lin}; K_holder = {k_hol} (fitted on this grid)"),
        "units: deviations, gaps and bounds in interval coordinates".into(),
    ];
    output::csv(
        &notes,
        &["n", "status", "max_node_deviation", "max_consecutive_gap", "bound_1_over_n", "bound_1_over_n_pow_1_over_s"],
        &rows,
        a.common.out.as_deref(),
    )?;
    Ok(0)
}

fn errors<T: Backend>(a: &ErrorStudyArgs) -> Result<u8> {
    let ns = expand_grid(&a.n_grid)?;
    guard_n(a.common.mode, *ns.last().expect("nonempty grid"), "--n-grid STOP")?;
    let p = Problem::load(&a.common)?;
    let f = load_function(&a.f, &p)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in &ns {
        let op = build_for::<T>(&p, n, a.common.tol)?;
        if !op.exists() {
            let mut row = vec![n.to_string(), "not_defined".into()];
            row.resize(8, String::new());
            rows.push(row);
            continue;
        }
        let b = error_budget(&op, &f, a.grid)?;
        rows.push(vec![
            n.to_string(),
            "exists".into(),
            fmt(b.sup_error),
            fmt(b.classical_sup_error),
            fmt(b.budget),
            fmt(b.omega_classical),
            fmt(b.omega_nodes),
            fmt(b.max_node_deviation),
        ]);
    }
    output::csv(
        &[format!("grid = {}; units: errors and moduli in units of f, deviations in interval coordinates", a.grid)],
        &[
            "n",
            "status",
            "sup_error",
            "classical_sup_error",
            "budget",
            "omega_classical",
            "omega_nodes",
            "max_node_deviation",
        ],
        &rows,
        a.common.out.as_deref(),
    )?;
    Ok(0)
}

fn witness_json(w: Option<ConvexityWitness>) -> Value {
    match w {
        Some(w) => json!({ "triple": [w.triple.0, w.triple.1, w.triple.2], "det_value": w.det_value }),
        None => Value::Null,
    }
}

fn concavity_json(c: Option<(f64, f64)>) -> Value {
    match c {
        Some((y, d2)) => json!({ "y": y, "second_difference": d2 }),
        None => Value::Null,
    }
}

fn convexity<T: Backend>(a: &ConvexityArgs) -> Result<u8> {
    if let Some(n) = a.n {
        guard_n(a.common.mode, n, "--n")?;
    }
    let p = Problem::load(&a.common)?;
    let f = load_function(&a.f, &p)?;
    let f1 = p.f1::<f64>();
    let iv = p.interval::<f64>();
    let mut out = json!({
        "grid": a.grid,
        "f": {
            "witness": witness_json(convexity_scan(|_| 1.0, |x| f1.eval(x), &f, &iv, a.grid)?),
            "composition_concavity": concavity_json(composition_concavity(&f1, &iv, &f, a.grid)?),
        },
    });
    if let Some(n) = a.n {
        let op = build_for::<T>(&p, n, a.common.tol)?;
        out["n"] = json!(n);
        out["image"] = if op.exists() {
            let values = op.sample(&f)?;
            let image = |x: f64| op.combine(&values, x);
            json!({
                "witness": witness_json(convexity_scan(|_| 1.0, |x| f1.eval(x), image, &iv, a.grid)?),
                "composition_concavity": concavity_json(composition_concavity(&f1, &iv, image, a.grid)?),
            })
        } else {
            report_not_defined(&op);
            json!({ "status": "not_defined" })
        };
    }
    output::json(&out, a.common.out.as_deref())?;
    Ok(0)
}

fn fixtures(a: &FixtureArgs) -> Result<u8> {
    let outcomes = run_fixtures();
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag}  {}  expected {}  actual {}", o.name, o.expected, o.actual);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} fixtures, {failed} failed", outcomes.len());
    if let Some(path) = &a.out {
        output::json(&serde_json::to_value(&outcomes)?, Some(path))?;
    }
    Ok(if failed == 0 { 0 } else { FIXTURE_FAILED })
}
