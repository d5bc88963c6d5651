use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use genbern::analysis::{convexity_scan, modulus_of_continuity};
use genbern::{basis_values, build_operator, monomial_to_bernstein, Interval, Polynomial, Scalar, DEFAULT_TOL};
use genbern_bench::{centered_cube, cubic};

fn basis(c: &mut Criterion) {
    let iv = Interval::unit();
    let mut g = c.benchmark_group("basis_values");
    for n in [64usize, 1024, 4096] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| basis_values(n, black_box(0.37), &iv))
        });
    }
    g.finish();
}

fn coordinates(c: &mut Criterion) {
    let mut g = c.benchmark_group("monomial_to_bernstein");
    let (exact, float) = (cubic(), cubic().to_f64());
    let unit_r = Interval::new(genbern::Rational::from_i64(0), genbern::Rational::from_i64(1)).unwrap();
    for n in [16usize, 256] {
        g.bench_with_input(BenchmarkId::new("float", n), &n, |b, &n| {
            b.iter(|| monomial_to_bernstein(&float, n, &Interval::unit()).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("rational", n), &n, |b, &n| {
            b.iter(|| monomial_to_bernstein(&exact, n, &unit_r).unwrap())
        });
    }
    g.finish();
}

fn operators(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_operator");
    let iv = Interval::unit();
    for (name, f1) in [("cubic", cubic().to_f64()), ("centered_cube", centered_cube().to_f64())] {
        for n in [64usize, 1024] {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| build_operator(&f1, n, &iv, DEFAULT_TOL).unwrap())
            });
        }
    }
    g.finish();
}

fn analysis(c: &mut Criterion) {
    let iv = Interval::unit();
    c.bench_function("modulus_of_continuity/4097", |b| {
        b.iter(|| modulus_of_continuity(|x: f64| (x - 0.5).abs().sqrt(), &iv, black_box(0.01), 4097).unwrap())
    });
    let sym = Interval::new(-1.0, 1.0).unwrap();
    let cube = Polynomial::<f64>::shifted_power(0.0, 3);
    c.bench_function("convexity_scan/201", |b| {
        b.iter(|| convexity_scan(|_| 1.0, |x| cube.eval(x), |x: f64| x.powi(4), &sym, 201).unwrap())
    });
}

criterion_group!(benches, basis, coordinates, operators, analysis);
criterion_main!(benches);
