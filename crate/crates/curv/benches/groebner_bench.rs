//! Compares the data-parallel Buchberger loop against the sequential one on
//! standard mid-size benchmark ideals.

use criterion::{criterion_group, criterion_main, Criterion};
use curv::groebner::{buchberger, buchberger_seq, Budget, GbOutcome, OrderKind, PolySystem};

/// The Katsura-n system: n+1 variables, one linear and n quadratic equations.
fn katsura(n: usize) -> PolySystem {
    let vars: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let mut sys = PolySystem::new(vars, OrderKind::Grevlex);
    let x = |k: i64| -> Option<String> {
        let k = k.unsigned_abs() as usize;
        (k <= n).then(|| format!("x{k}"))
    };
    let linear = (1..=n).fold("x0 - 1".to_string(), |acc, i| format!("{acc} + 2*x{i}"));
    let mut gens = vec![linear];
    for m in 0..n as i64 {
        let mut terms = Vec::new();
        for i in -(n as i64)..=(n as i64) {
            if let (Some(a), Some(b)) = (x(i), x(m - i)) {
                terms.push(format!("{a}*{b}"));
            }
        }
        gens.push(format!("{} - x{m}", terms.join(" + ")));
    }
    for g in gens {
        let p = sys.parse_poly(&g).expect("katsura generator");
        sys.generators.push(p);
    }
    sys
}

fn assert_complete(outcome: GbOutcome) {
    match outcome {
        GbOutcome::Complete(_) => {}
        GbOutcome::BudgetExceeded(_) => panic!("benchmark ideal exceeded its budget"),
    }
}

fn bench_buchberger(c: &mut Criterion) {
    let budget = Budget::seconds(600);
    for n in [4usize, 5] {
        let sys = katsura(n);
        let mut group = c.benchmark_group(format!("katsura-{n}"));
        group.sample_size(10);
        group.bench_function("parallel", |b| {
            b.iter(|| assert_complete(buchberger(&sys.generators, sys.order, &budget)))
        });
        group.bench_function("sequential", |b| {
            b.iter(|| assert_complete(buchberger_seq(&sys.generators, sys.order, &budget)))
        });
        group.finish();
    }
}

criterion_group!(benches, bench_buchberger);
criterion_main!(benches);
