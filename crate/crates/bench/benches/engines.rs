//! Benchmarks of the hot paths: basis polynomial construction, cup and
//! K-products, and the duality scan at desk scale.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use schubert_core::cohomology::{cup, CohClass};
use schubert_core::ktheory::{chi_codim_poly, multiply, to_codim_poly, KClass};
use schubert_core::polyring::{grothendieck_poly_from_top, schubert_poly_from_top, Poly};
use schubert_core::weyl::Permutation;

fn bench_basis_polynomials(c: &mut Criterion) {
    // from_top avoids the process-wide memo, so the work is measured
    let w = Permutation::new(vec![3, 5, 1, 4, 2]).unwrap();
    c.bench_function("schubert_poly_s5_from_top", |b| {
        b.iter(|| schubert_poly_from_top(&w, 5).unwrap())
    });
    c.bench_function("grothendieck_poly_s5_from_top", |b| {
        b.iter(|| grothendieck_poly_from_top(&w, 5).unwrap())
    });
}

fn bench_products(c: &mut Criterion) {
    let n = 4;
    let perms = Permutation::all(n);
    c.bench_function("cup_table_s4", |b| {
        b.iter(|| {
            for v in &perms {
                for w in &perms {
                    let _ = cup(&CohClass::schubert(v), &CohClass::schubert(w)).unwrap();
                }
            }
        })
    });
    c.bench_function("kmul_table_s4", |b| {
        b.iter(|| {
            for v in &perms {
                for w in &perms {
                    let _ = multiply(&KClass::o_class(v), &KClass::o_class(w)).unwrap();
                }
            }
        })
    });
}

fn bench_duality_scan(c: &mut Criterion) {
    let n = 4;
    let perms = Permutation::all(n);
    let opolys: Vec<Poly> = perms
        .iter()
        .map(|w| to_codim_poly(&KClass::o_class(w)))
        .collect();
    let ipolys: Vec<Poly> = perms
        .iter()
        .map(|v| to_codim_poly(&KClass::i_opposite(v)))
        .collect();
    c.bench_function("duality_scan_s4", |b| {
        b.iter_batched(
            || (opolys.clone(), ipolys.clone()),
            |(os, is)| {
                for o in &os {
                    for i in &is {
                        let _ = chi_codim_poly(n, &o.mul(i)).unwrap();
                    }
                }
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_basis_polynomials,
    bench_products,
    bench_duality_scan
);
criterion_main!(benches);
