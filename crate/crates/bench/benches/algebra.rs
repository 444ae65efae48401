use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use paramkit::idealops::colon;
use paramkit::{buchberger, koszul_complex, limit_closure, CoeffMatrix, LimitOptions, MonomialOrder};
use paramkit_bench::{cone, dense_ideal, highpower, sequence};

// Groebner bases are cached per ring, so every iteration builds its ring afresh.

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("buchberger");
    for (label, p) in [("rationals", 0), ("f32003", 32003)] {
        g.bench_function(label, |b| {
            b.iter_batched(|| dense_ideal(p), |i| buchberger(&i, MonomialOrder::Grevlex).unwrap(), BatchSize::SmallInput)
        });
    }
    g.bench_function("colon", |b| {
        b.iter_batched(
            || {
                let r = highpower();
                (sequence(&r, &["a^3", "b^3"]).ideal(), r.parse_element("a*b + c").unwrap())
            },
            |(y, f)| colon(&y, &f).unwrap(),
            BatchSize::SmallInput,
        )
    });
    g.finish();
}

fn limits(c: &mut Criterion) {
    let mut g = c.benchmark_group("limit_closure");
    g.sample_size(20);
    g.bench_function("highpower", |b| {
        b.iter_batched(
            || sequence(&highpower(), &["a+c", "b+d"]),
            |x| limit_closure(&x, LimitOptions::default()).unwrap(),
            BatchSize::SmallInput,
        )
    });
    g.bench_function("cone-f7", |b| {
        b.iter_batched(
            || sequence(&cone(7), &["a", "c"]),
            |x| limit_closure(&x, LimitOptions::default()).unwrap(),
            BatchSize::SmallInput,
        )
    });
    g.finish();
}

fn koszul(c: &mut Criterion) {
    let mut g = c.benchmark_group("koszul");
    let r = highpower();
    let x = sequence(&r, &["a", "b", "c", "d", "a+b", "c+d"]);
    g.bench_function("complex-6", |b| b.iter(|| koszul_complex(&x).unwrap()));
    let m = CoeffMatrix::parse(
        &r,
        &[&["a", "b", "0", "1"], &["c", "a", "d", "0"], &["1", "0", "b", "c"], &["d", "1", "a", "b"]],
    )
    .unwrap();
    g.bench_function("determinant-4", |b| b.iter(|| m.determinant().unwrap()));
    g.finish();
}

criterion_group!(benches, groebner, limits, koszul);
criterion_main!(benches);
