use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use matgen_core::census::{count_generating_bruteforce, count_via_complement};
use matgen_core::conjugacy::nonconjugate_all_primes;
use matgen_core::construct::{scalar_shift_generators, standard_family, table16_generators};
use matgen_core::generation::{closure_span, cross_sections};
use matgen_core::zverify::{verify_z_tuples, DEFAULT_PRIME_SAMPLE};
use matgen_core::CoeffDomain;
use num_rational::BigRational;

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for n in [3, 5, 8] {
        let fam = standard_family(n, &CoeffDomain::finite(5).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("standard_f5", n), &fam, |b, fam| {
            b.iter(|| {
                closure_span(black_box(fam.generators()), fam.shape(), fam.domain(), true).unwrap()
            })
        });
    }
    let ints = |v: &[i64]| {
        v.iter()
            .map(|&a| BigRational::from_integer(a.into()))
            .collect()
    };
    let blocks = [(2, ints(&[0, 1, 2])), (3, ints(&[0, 1]))];
    let fam = scalar_shift_generators(&blocks).unwrap();
    group.bench_function("scalar_shift_q", |b| {
        b.iter(|| {
            closure_span(black_box(fam.generators()), fam.shape(), fam.domain(), true).unwrap()
        })
    });
    group.finish();
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (q, m) in [(2, 2), (3, 2), (4, 2), (2, 3)] {
        group.bench_function(format!("brute_q{q}_m{m}"), |b| {
            b.iter(|| count_generating_bruteforce(q, 2, m, 1).unwrap())
        });
    }
    group.bench_function("complement_q3_m2", |b| {
        b.iter(|| count_via_complement(3, 2, 1).unwrap())
    });
    group.finish();
}

fn certificates(c: &mut Criterion) {
    let [a, b] = table16_generators();
    let sections = cross_sections(&[a, b]).unwrap();
    c.bench_function("certificate_pair", |bch| {
        bch.iter(|| {
            nonconjugate_all_primes(black_box(&sections[0]), black_box(&sections[1])).unwrap()
        })
    });
}

fn table16(c: &mut Criterion) {
    let gens = table16_generators();
    let mut group = c.benchmark_group("table16");
    group.sample_size(10);
    group.bench_function("verify", |b| {
        b.iter(|| verify_z_tuples(black_box(&gens), &DEFAULT_PRIME_SAMPLE, 1).unwrap())
    });
    group.finish();
}

criterion_group!(benches, closure, census, certificates, table16);
criterion_main!(benches);
