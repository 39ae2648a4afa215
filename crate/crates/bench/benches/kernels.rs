use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use sfnet_core::attacks::betweenness;
use sfnet_core::{
    price_generate, randomize_preserving_degrees, run_attack, shortest_loop_stats, AttackStrategy,
    BpParams, Graph, PriceParams, RngSeed,
};

fn network(n: usize, gamma: f64) -> Graph {
    let p = PriceParams::new(n, 2, gamma).unwrap();
    let g = price_generate(&p, RngSeed(1)).unwrap();
    randomize_preserving_degrees(&g, RngSeed(2)).unwrap()
}

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generation");
    for gamma in [2.1, 3.0] {
        let p = PriceParams::new(1000, 2, gamma).unwrap();
        group.bench_function(format!("price_n1000_g{gamma}"), |b| {
            b.iter(|| price_generate(&p, RngSeed(7)).unwrap())
        });
        let g = price_generate(&p, RngSeed(7)).unwrap();
        group.bench_function(format!("randomize_n1000_g{gamma}"), |b| {
            b.iter(|| randomize_preserving_degrees(&g, RngSeed(8)).unwrap())
        });
    }
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let g = network(1000, 2.5);
    c.bench_function("betweenness_n1000", |b| b.iter(|| betweenness(&g)));
    c.bench_function("shortest_loops_n1000", |b| {
        b.iter(|| shortest_loop_stats(&g))
    });
}

fn attacks(c: &mut Criterion) {
    let mut group = c.benchmark_group("attack_n300");
    group.sample_size(10);
    let g = network(300, 2.5);
    for (name, s) in [
        ("degree", AttackStrategy::Degree),
        ("betweenness", AttackStrategy::Betweenness),
        ("bp", AttackStrategy::BeliefPropagation(BpParams::default())),
    ] {
        group.bench_function(name, |b| {
            b.iter_batched(
                || g.clone(),
                |g| run_attack(&g, &s).unwrap(),
                BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, generation, metrics, attacks);
criterion_main!(benches);
