//! Counting generating tuples of `M_n(F_q)`: exhaustive census, orbit
//! counts, the subalgebra-complement count, sampling and closed forms.

pub mod formulas;
pub mod small;
pub mod subalg;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;

pub use formulas::*;
pub use small::SmallRing;
pub use subalg::{enumerate_maximal_subalgebras, LineStabilizer, SubalgebraCatalog};

/// Largest number of tuples an exhaustive census may visit.
pub const ENUMERATION_CAP: u64 = 1 << 26;

/// Largest field for the subalgebra-complement count.
pub const COMPLEMENT_MAX_Q: u64 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub q: u64,
    pub n: usize,
    pub m: u32,
    /// `q^{m n²}`.
    pub ambient_count: u64,
    pub generating_count: u64,
    pub pgl_order: u64,
    /// `generating_count / pgl_order`.
    pub gen_value: u64,
    /// Closed-form value for `n = 2, m ≥ 2`.
    pub formula_value: Option<u64>,
    pub threads: usize,
    #[serde(skip)]
    pub elapsed: std::time::Duration,
}

impl CensusResult {
    pub fn elapsed_ms(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1e3
    }
}

pub(crate) fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

fn ambient_size(ring: &SmallRing, m: u32, cap: u64) -> Result<u64> {
    let size = (ring.size() as u128).checked_pow(m).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            size,
            cap: cap as u128,
        });
    }
    Ok(size as u64)
}

/// Visits every `m`-tuple whose first component is `first`.
fn for_each_with_first(size: u64, m: usize, first: u64, mut f: impl FnMut(&[u64])) {
    let mut t = vec![0u64; m];
    t[0] = first;
    loop {
        f(&t);
        let Some(pos) = (1..m).find(|&i| t[i] + 1 < size) else {
            return;
        };
        t[pos] += 1;
        for x in &mut t[1..pos] {
            *x = 0;
        }
    }
}

/// Number of `m`-tuples satisfying `pred`, partitioned by the first component.
fn count_tuples<F>(ring: &SmallRing, m: u32, threads: usize, pred: F) -> Result<u64>
where
    F: Fn(&[u64]) -> bool + Sync,
{
    ambient_size(ring, m, ENUMERATION_CAP)?;
    if m == 0 {
        return Ok(0);
    }
    let size = ring.size();
    let pool = thread_pool(threads)?;
    Ok(pool.install(|| {
        (0..size)
            .into_par_iter()
            .map(|first| {
                let mut c = 0u64;
                for_each_with_first(size, m as usize, first, |t| c += pred(t) as u64);
                c
            })
            .sum()
    }))
}

/// Number of `m`-tuples generating `M_n(F_q)`, with or without the identity adjoined.
pub fn count_generating_with(
    q: u64,
    n: usize,
    m: u32,
    include_identity: bool,
    threads: usize,
) -> Result<u64> {
    let ring = SmallRing::new(q, n)?;
    count_tuples(&ring, m, threads, |t| ring.generates(t, include_identity))
}

fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("value fits in u64")
}

/// Exhaustive count of generating `m`-tuples of `M_n(F_q)`.
pub fn count_generating_bruteforce(
    q: u64,
    n: usize,
    m: u32,
    threads: usize,
) -> Result<CensusResult> {
    let start = Instant::now();
    let ring = SmallRing::new(q, n)?;
    let ambient_count = ambient_size(&ring, m, ENUMERATION_CAP)?;
    let generating_count = count_tuples(&ring, m, threads, |t| ring.generates(t, true))?;
    let pgl = to_u64(&pgl_order(q, n as u32));
    if generating_count % pgl != 0 {
        return Err(Error::VerificationFailed(format!(
            "{generating_count} generating tuples is not a multiple of #PGL = {pgl}"
        )));
    }
    let formula_value = (n == 2 && m >= 2)
        .then(|| formula_gen_m2(q, m))
        .transpose()?
        .map(|x| to_u64(&x));
    Ok(CensusResult {
        q,
        n,
        m,
        ambient_count,
        generating_count,
        pgl_order: pgl,
        gen_value: generating_count / pgl,
        formula_value,
        threads,
        elapsed: start.elapsed(),
    })
}

fn conjugate(ring: &SmallRing, t: &[u64], c: u64, ci: u64, out: &mut [u64]) {
    for (o, &x) in out.iter_mut().zip(t) {
        *o = ring.mul_idx(ring.mul_idx(ci, x), c);
    }
}

/// Number of `PGL_n`-orbits on generating `m`-tuples, counting tuples that
/// are the lexicographically least element of their orbit.
pub fn orbit_count(q: u64, n: usize, m: u32, threads: usize) -> Result<u64> {
    let ring = SmallRing::new(q, n)?;
    let gl = ring.general_linear();
    count_tuples(&ring, m, threads, |t| {
        if !ring.generates(t, true) {
            return false;
        }
        let mut buf = vec![0u64; t.len()];
        gl.iter().all(|&(c, ci)| {
            conjugate(&ring, t, c, ci, &mut buf);
            buf.as_slice() >= t
        })
    })
}

/// Size of the orbit of a tuple under simultaneous conjugation.
pub fn orbit_size(tuple: &[Mat]) -> Result<usize> {
    let Some(first) = tuple.first() else {
        return Ok(1);
    };
    let q = first
        .domain()
        .cardinality()
        .ok_or_else(|| Error::NotAField(first.domain().to_string()))?;
    let ring = SmallRing::new(q, first.n())?;
    let t: Vec<u64> = tuple
        .iter()
        .map(|m| ring.from_mat(m))
        .collect::<Result<_>>()?;
    let mut orbit = std::collections::BTreeSet::new();
    let mut buf = vec![0u64; t.len()];
    for (c, ci) in ring.general_linear() {
        conjugate(&ring, &t, c, ci, &mut buf);
        orbit.insert(buf.clone());
    }
    Ok(orbit.len())
}

/// Generating `m`-tuples of `M_2(F_q)` counted as the tuples lying in no
/// maximal subalgebra, by explicit membership tests.
pub fn count_via_complement(q: u64, m: u32, threads: usize) -> Result<u64> {
    if q > COMPLEMENT_MAX_Q {
        return Err(Error::CapExceeded {
            size: q as u128,
            cap: COMPLEMENT_MAX_Q as u128,
        });
    }
    let catalog = enumerate_maximal_subalgebras(q)?;
    let ring = SmallRing::new(q, 2)?;
    let masks: Vec<u32> = (0..ring.size())
        .map(|a| {
            let member = catalog.membership(&ring.to_mat(a))?;
            Ok(member
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &b)| acc | ((b as u32) << i)))
        })
        .collect::<Result<_>>()?;
    let all = masks[ring.identity_idx() as usize];
    count_tuples(&ring, m, threads, |t| {
        t.iter().fold(all, |acc, &x| acc & masks[x as usize]) == 0
    })
}

/// Fraction of `samples` uniformly drawn `m`-tuples that generate `M_n(F_q)`.
pub fn sample_generation_probability(
    q: u64,
    n: usize,
    m: u32,
    samples: u64,
    seed: u64,
) -> Result<BigRational> {
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    if m == 0 {
        return Ok(BigRational::zero());
    }
    let ring = SmallRing::new(q, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = vec![0u64; m as usize];
    let mut hits = 0u64;
    for _ in 0..samples {
        for x in t.iter_mut() {
            *x = rng.gen_range(0..ring.size());
        }
        hits += ring.generates(&t, true) as u64;
    }
    Ok(BigRational::new(hits.into(), samples.into()))
}

/// Exact generation probability from the exhaustive census.
pub fn exact_generation_probability(
    q: u64,
    n: usize,
    m: u32,
    threads: usize,
) -> Result<BigRational> {
    let r = count_generating_bruteforce(q, n, m, threads)?;
    if r.ambient_count == 0 || m == 0 {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(
        r.generating_count.into(),
        r.ambient_count.into(),
    ))
}

/// `n = 1` counts under the three conventions, side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct N1Row {
    pub q: u64,
    pub m: u32,
    /// Exhaustive count with the identity adjoined.
    pub unital_count: u64,
    /// Exhaustive count without the identity.
    pub nonunital_count: u64,
    pub unital_formula: u64,
    pub nonunital_formula: u64,
    pub projective_formula: u64,
}

impl N1Row {
    pub fn counts_match_formulas(&self) -> bool {
        self.unital_count == self.unital_formula && self.nonunital_count == self.nonunital_formula
    }
}

pub fn n1_report(cases: &[(u64, u32)], threads: usize) -> Result<Vec<N1Row>> {
    cases
        .iter()
        .map(|&(q, m)| {
            Ok(N1Row {
                q,
                m,
                unital_count: count_generating_with(q, 1, m, true, threads)?,
                nonunital_count: count_generating_with(q, 1, m, false, threads)?,
                unital_formula: to_u64(&formula_gen_m1(q, m, GenM1Convention::Unital)?),
                nonunital_formula: to_u64(&formula_gen_m1(q, m, GenM1Convention::Nonunital)?),
                projective_formula: to_u64(&formula_gen_m1(q, m, GenM1Convention::Projective)?),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_small_cases() {
        let r = count_generating_bruteforce(2, 2, 2, 1).unwrap();
        assert_eq!((r.generating_count, r.gen_value, r.pgl_order), (96, 16, 6));
        assert_eq!(r.formula_value, Some(16));
        let r = count_generating_bruteforce(3, 2, 2, 2).unwrap();
        assert_eq!(r.gen_value, 162);
        assert_eq!(
            count_generating_bruteforce(2, 2, 0, 1)
                .unwrap()
                .generating_count,
            0
        );
        assert!(count_generating_bruteforce(4, 2, 4, 1).is_err());
    }

    #[test]
    fn orbits() {
        assert_eq!(orbit_count(2, 2, 2, 1).unwrap(), 16);
        let d = crate::domain::CoeffDomain::finite(2).unwrap();
        let pair = [Mat::unit(&d, 2, 1, 2), Mat::unit(&d, 2, 2, 1)];
        assert_eq!(orbit_size(&pair).unwrap(), 6);
    }

    #[test]
    fn complement_matches() {
        assert_eq!(count_via_complement(2, 2, 1).unwrap(), 96);
        assert_eq!(count_via_complement(3, 2, 2).unwrap(), 3888);
        assert!(count_via_complement(7, 2, 1).is_err());
    }

    #[test]
    fn sampling() {
        let half = |x: &BigRational| x.to_f64().unwrap();
        let p2 = sample_generation_probability(2, 2, 2, 10_000, 7).unwrap();
        let p9 = sample_generation_probability(9, 2, 2, 10_000, 7).unwrap();
        assert!(half(&p9) > half(&p2));
        assert_eq!(
            p2,
            sample_generation_probability(2, 2, 2, 10_000, 7).unwrap()
        );
        assert_eq!(
            exact_generation_probability(2, 2, 2, 1).unwrap(),
            BigRational::new(3.into(), 8.into())
        );
        assert!(sample_generation_probability(2, 2, 0, 10, 1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn n1_counts() {
        let rows = n1_report(&[(2, 2), (2, 3), (3, 2)], 1).unwrap();
        for r in &rows {
            assert!(r.counts_match_formulas(), "{r:?}");
        }
        assert_eq!(rows[0].projective_formula, rows[0].nonunital_count);
        assert_eq!(
            (
                rows[2].unital_count,
                rows[2].nonunital_count,
                rows[2].projective_formula
            ),
            (9, 8, 4)
        );
    }
}
