//! Microbenchmarks for the hot paths: canonical-form multiplication, the
//! Levi-Civita coefficient computation, the coboundary, and the bracket
//! suite sampling.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use rhocalc::model::Model;
use rhocalc::suites;

const PLANE: &str = r#"
algebra quantum_plane {
  parameter q;
  group Z^2;
  cocycle q ^ [[0, 1], [-1, 0]];
  generator x degree (1, 0) invertible;
  generator y degree (0, 1) invertible;
  phi { x -> x; y -> y; x^-1 -> x^-1; y^-1 -> y^-1; }
  phiA [[1, 0], [0, 1]];
  metric [[x^-2, q*x^-1*y^-1], [x^-1*y^-1, y^-2]];
  symplectic dy^dx;
}
"#;

fn bench_multiply(c: &mut Criterion) {
    let model = Model::from_source(PLANE).unwrap();
    let alg = &model.algebra;
    let f = rhocalc::parse::parse_element(alg, "x^2*y^-1 + q*x^-1*y^3 - 2*x*y").unwrap();
    let g = rhocalc::parse::parse_element(alg, "y^-2*x^3 - 1/(1-q^2)*x^-2*y").unwrap();
    c.bench_function("element_multiply", |b| {
        b.iter(|| alg.mul(black_box(&f), black_box(&g)).unwrap())
    });
}

fn bench_christoffel(c: &mut Criterion) {
    let model = Model::from_source(PLANE).unwrap();
    let alg = &model.algebra;
    let basis = model.require_basis().unwrap();
    let metric = model.require_metric().unwrap();
    c.bench_function("christoffel", |b| {
        b.iter(|| rhocalc::christoffel(black_box(alg), basis, metric).unwrap())
    });
}

fn bench_coboundary(c: &mut Criterion) {
    use rand::SeedableRng;
    let model = Model::from_source(PLANE).unwrap();
    let alg = &model.algebra;
    let basis = model.require_basis().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let alpha = rhocalc::sample::hom_cochain(alg, basis, &mut rng, 2).unwrap();
    c.bench_function("coboundary_arity2", |b| {
        b.iter(|| rhocalc::d_mu(black_box(alg), basis, black_box(&alpha)).unwrap())
    });
}

fn bench_poisson_suite(c: &mut Criterion) {
    let model = Model::from_source(PLANE).unwrap();
    let structure = model.poisson_structure().unwrap();
    c.bench_function("poisson_suite_10", |b| {
        b.iter(|| {
            suites::poisson_suite(
                black_box(&model.algebra),
                model.basis.as_ref(),
                &structure,
                10,
                17,
            )
        })
    });
}

criterion_group!(
    benches,
    bench_multiply,
    bench_christoffel,
    bench_coboundary,
    bench_poisson_suite
);
criterion_main!(benches);
