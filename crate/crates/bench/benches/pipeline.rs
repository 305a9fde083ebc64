use criterion::{criterion_group, criterion_main, Criterion};
use toricsub::cartier::{cartier_from_subdivision, ideal_from_cartier};
use toricsub::exactq::Int;
use toricsub::newton::verify_blowup;
use toricsub::pulling::pull;
use toricsub::{Cone, Fan};

fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn full_pipeline(c: &mut Criterion) {
    let sigma = Cone::orthant(3);
    let tau = Cone::from_rays(&[ivec(&[2, 1, 0]), ivec(&[0, 1, 2])]).unwrap();
    let delta = Fan::new(vec![sigma.clone()], 3).unwrap();

    c.bench_function("pull_rank3", |b| {
        b.iter(|| pull(&sigma, &tau).unwrap());
    });

    let sub = pull(&sigma, &tau).unwrap();
    c.bench_function("cartier_solver_rank3", |b| {
        b.iter(|| cartier_from_subdivision(&sub.fan, &delta).unwrap());
    });

    let cd = cartier_from_subdivision(&sub.fan, &delta).unwrap();
    let ideals = ideal_from_cartier(&cd, &delta).unwrap();
    c.bench_function("verify_blowup_rank3", |b| {
        b.iter(|| verify_blowup(&sub.fan, &delta, &ideals).unwrap());
    });
}

criterion_group!(benches, full_pipeline);
criterion_main!(benches);
