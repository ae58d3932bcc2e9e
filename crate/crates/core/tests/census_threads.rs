use matgen_core::census::{count_generating_bruteforce, count_via_complement, orbit_count};
use matgen_core::construct::table16_generators;
use matgen_core::zverify::{verify_z_tuples, DEFAULT_PRIME_SAMPLE};

#[test]
fn counts_do_not_depend_on_thread_count() {
    for (q, n, m) in [(2, 2, 2), (3, 2, 2), (2, 2, 3), (2, 1, 4), (2, 3, 1)] {
        let counts: Vec<u64> = [1, 2, 8]
            .iter()
            .map(|&t| {
                count_generating_bruteforce(q, n, m, t)
                    .unwrap()
                    .generating_count
            })
            .collect();
        assert!(
            counts.windows(2).all(|w| w[0] == w[1]),
            "{q} {n} {m}: {counts:?}"
        );
    }
    let orbits: Vec<u64> = [1, 2, 8]
        .iter()
        .map(|&t| orbit_count(2, 2, 2, t).unwrap())
        .collect();
    assert_eq!(orbits, [16, 16, 16]);
    let complement: Vec<u64> = [1, 2, 8]
        .iter()
        .map(|&t| count_via_complement(3, 2, t).unwrap())
        .collect();
    let brute = count_generating_bruteforce(3, 2, 2, 4)
        .unwrap()
        .generating_count;
    assert_eq!(complement, [brute; 3]);
}

#[test]
fn integer_verdict_does_not_depend_on_thread_count() {
    let gens = table16_generators();
    let runs: Vec<_> = [1, 2, 8]
        .iter()
        .map(|&t| verify_z_tuples(&gens, &DEFAULT_PRIME_SAMPLE, t).unwrap())
        .collect();
    assert!(runs.iter().all(|r| r == &runs[0] && r.overall));
}

#[test]
fn census_grid() {
    for (q, m, want) in [(2, 2, 16u64), (3, 2, 162), (4, 2, 768), (2, 3, 448)] {
        let r = count_generating_bruteforce(q, 2, m, 4).unwrap();
        assert_eq!(r.gen_value, want);
        assert_eq!(r.formula_value, Some(want));
    }
}
