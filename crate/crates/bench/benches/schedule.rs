use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use handlecalc::surface::b_word;
use handlecalc::{apply_monodromy, outer_first_chain, run_schedule, slide, FiberSurface, FiberedKnot, Piece};
use handlecalc_bench::{all_up_to, alternating};

fn slides(c: &mut Criterion) {
    let s = FiberSurface::new(4, 3).unwrap();
    let phi = outer_first_chain(&[1, -1, 1, 1, -1, -1, 1, -1]).unwrap();
    let b = b_word(3, &s).unwrap();
    let img = apply_monodromy(&phi, &b, &s).unwrap();
    c.bench_function("slide genus 4", |bch| bch.iter(|| slide(black_box(&img), black_box(&b))));
}

fn schedules(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_schedule");
    for k in 1..=4 {
        for n in [1u32, 3] {
            let knot = alternating(k);
            group.bench_with_input(BenchmarkId::new(format!("g{k}"), n), &n, |bch, &n| {
                bch.iter(|| run_schedule(&knot, n, Piece::X1).unwrap())
            });
        }
    }
    group.bench_function("stallings m=5 n=2", |bch| {
        bch.iter(|| run_schedule(&FiberedKnot::Stallings(5), 2, Piece::X1).unwrap())
    });
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let knots = all_up_to(3);
    c.bench_function("all knots genus <= 3, n = 1", |bch| {
        bch.iter(|| {
            for k in &knots {
                run_schedule(k, 1, Piece::X1).unwrap();
            }
        })
    });
}

criterion_group!(benches, slides, schedules, sweep);
criterion_main!(benches);
