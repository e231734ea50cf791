//! Parallel against sequential execution of the exact local connectedness
//! check over every functor between small sites.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use finitopos::classify::enumerate_categories;
use finitopos::exec::{map_ordered, map_sequential};
use finitopos::functor::enumerate_functors;
use finitopos::geom::{is_locally_connected_with, QuotientTable};
use finitopos::{FinCategory, FinFunctor, GeomMorphism};

struct Workload {
    tables: Vec<QuotientTable>,
    /// `(index of the codomain's table, functor)`
    functors: Vec<(usize, FinFunctor)>,
}

fn workload(max_arrows: usize) -> Workload {
    let sites: Vec<Arc<FinCategory>> = enumerate_categories(2, max_arrows).into_iter().map(Arc::new).collect();
    let tables = sites.iter().map(QuotientTable::new).collect();
    let mut functors = Vec::new();
    for (di, d) in sites.iter().enumerate() {
        for c in &sites {
            functors.extend(enumerate_functors(c, d).into_iter().map(|f| (di, f)));
        }
    }
    Workload { tables, functors }
}

fn decide(w: &Workload, (di, f): &(usize, FinFunctor)) -> bool {
    is_locally_connected_with(&GeomMorphism::new(f.clone()), &w.tables[*di]).holds
}

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("locally_connected");
    group.sample_size(10);
    for max_arrows in [3, 4] {
        let w = workload(max_arrows);
        let n = w.functors.len();
        group.bench_with_input(BenchmarkId::new("sequential", n), &w, |b, w| {
            b.iter(|| map_sequential(&w.functors, |i| decide(w, i)))
        });
        group.bench_with_input(BenchmarkId::new("map_ordered", n), &w, |b, w| {
            b.iter(|| map_ordered(&w.functors, |i| decide(w, i)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
