use matgen_core::conjugacy::{conjugate_mod_p_bruteforce, nonconjugate_all_primes};
use matgen_core::primes::primes_up_to;
use matgen_core::{CoeffDomain, Mat, MatTuple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_mat(rng: &mut ChaCha8Rng, r: i64) -> Mat {
    let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-r..=r)).collect();
    Mat::from_i64_rows(&CoeffDomain::Integers, &[&e[0..2], &e[2..4]])
}

/// `adj(C)·A·C = det(C)·C⁻¹AC`, integral and conjugate to `det(C)·A` modulo
/// primes not dividing `det C`.
fn conjugated(a: &Mat, c: &Mat) -> Mat {
    let z = CoeffDomain::Integers;
    let mut adj = Mat::zero(&z, 2);
    adj.set(0, 0, c.get(1, 1).clone());
    adj.set(1, 1, c.get(0, 0).clone());
    adj.set(0, 1, z.neg(c.get(0, 1)));
    adj.set(1, 0, z.neg(c.get(1, 0)));
    &(&adj * a) * c
}

#[test]
fn certificate_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let primes = primes_up_to(31);
    let mut conjugate_somewhere = 0;
    let mut nowhere = 0;
    for case in 0..200 {
        let a = MatTuple::new(vec![random_mat(&mut rng, 2), random_mat(&mut rng, 2)]).unwrap();
        let b = match case % 4 {
            0 => MatTuple::new(vec![random_mat(&mut rng, 2), random_mat(&mut rng, 2)]).unwrap(),
            _ => {
                // scaled conjugates, sometimes perturbed by a multiple of a prime
                let c = random_mat(&mut rng, 2);
                let mut mats: Vec<Mat> = a.mats().iter().map(|m| conjugated(m, &c)).collect();
                if case % 4 == 3 {
                    let p = primes[rng.gen_range(0..primes.len())] as i64;
                    let bump = Mat::from_i64_rows(&CoeffDomain::Integers, &[&[p, 0], &[0, 0]]);
                    mats[1] = &mats[1] + &bump;
                }
                MatTuple::new(mats).unwrap()
            }
        };
        let cert = nonconjugate_all_primes(&a, &b).unwrap();
        let mut any = false;
        for &p in &primes {
            let brute = conjugate_mod_p_bruteforce(&a, &b, p).unwrap().is_some();
            assert_eq!(
                cert.conjugate_mod(p).unwrap(),
                brute,
                "case {case}, p = {p}: {a:?} vs {b:?}"
            );
            any |= brute;
        }
        if cert.overall {
            assert!(!any);
            nowhere += 1;
        } else {
            conjugate_somewhere += 1;
        }
    }
    assert!(
        conjugate_somewhere > 20 && nowhere > 20,
        "{conjugate_somewhere} / {nowhere}"
    );
}
