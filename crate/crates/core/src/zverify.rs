//! Generation of direct sums of `M_2(Z)`, decided at every prime at once.
//!
//! A family of integer tuples generates `M_2(Z)^m` when each cross-section
//! generates `M_2(Z)` and no two cross-sections are simultaneously conjugate
//! modulo any prime. Both parts are decided exactly, and the direct sum is
//! also closed modulo a few small primes as an independent check.

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::census::formulas::{formula_gen_m2, min_generators_m2z};
use crate::census::thread_pool;
use crate::conjugacy::{nonconjugate_all_primes, NonConjCertificate};
use crate::domain::{CoeffDomain, Elem};
use crate::error::{Error, Result};
use crate::generation::{
    closure_generates, cross_sections, det_commutator, lattice_closure, lattice_generates_mnz,
    DirectSumShape, MatTuple, SumElem,
};
use crate::matrix::Mat;
use crate::primes::is_prime;

/// Primes at which the whole direct sum is closed directly.
pub const DEFAULT_PRIME_SAMPLE: [u64; 3] = [2, 3, 5];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossSectionCheck {
    pub index: usize,
    /// `det(AB − BA)` for two-element cross-sections.
    pub det_commutator: Option<String>,
    pub lattice_full: bool,
    /// Index of the generated lattice in `Z^4`, when it has full rank.
    pub lattice_index: Option<String>,
    pub generates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub certificate: NonConjCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModPCheck {
    pub p: u64,
    pub closure_dim: usize,
    pub ambient_dim: usize,
    pub generates: bool,
}

/// First reason a family fails to generate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZFailure {
    CrossSectionFails {
        index: usize,
    },
    /// `witness` intertwines cross-sections `i` and `j` and is invertible mod `p`.
    ConjugatePair {
        i: usize,
        j: usize,
        p: u64,
        witness: Mat,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZGenVerdict {
    pub n: usize,
    pub copies: usize,
    pub componentwise: Vec<CrossSectionCheck>,
    pub pairwise: Vec<PairCheck>,
    pub direct_modp: Vec<ModPCheck>,
    /// False when `n ≠ 2`: pairwise conjugacy was then only checked at the sampled primes.
    pub complete: bool,
    pub failure: Option<ZFailure>,
    pub overall: bool,
}

fn check_section(index: usize, cs: &MatTuple) -> Result<CrossSectionCheck> {
    let (lattice_full, lattice) = lattice_generates_mnz(cs.mats(), cs.n())?;
    let det = match cs.mats() {
        [a, b] if cs.n() == 2 => Some(det_commutator(a, b)?),
        _ => None,
    };
    if let Some(Elem::Int(d)) = &det {
        let unit = d.abs().is_one();
        if unit != lattice_full {
            return Err(Error::VerificationFailed(format!(
                "cross-section {index}: det[A,B] = {d} but lattice closure says {lattice_full}"
            )));
        }
    }
    Ok(CrossSectionCheck {
        index,
        det_commutator: det.map(|d| CoeffDomain::Integers.format(&d)),
        lattice_full,
        lattice_index: lattice.index().map(|x| x.to_string()),
        generates: lattice_full,
    })
}

fn pair_failure(
    i: usize,
    j: usize,
    a: &MatTuple,
    b: &MatTuple,
    cert: &NonConjCertificate,
) -> Option<ZFailure> {
    if cert.overall {
        return None;
    }
    if a == b {
        return Some(ZFailure::ConjugatePair {
            i,
            j,
            p: 2,
            witness: Mat::identity(&CoeffDomain::Integers, a.n()),
        });
    }
    if let (Some(w), Some(p)) = (&cert.witness_point, cert.witness_prime) {
        return Some(ZFailure::ConjugatePair {
            i,
            j,
            p,
            witness: w.clone(),
        });
    }
    cert.exceptional_primes
        .iter()
        .find(|v| v.invertible)
        .map(|v| ZFailure::ConjugatePair {
            i,
            j,
            p: v.p,
            witness: v
                .witness
                .clone()
                .expect("invertible verdicts carry a witness"),
        })
}

/// Brute-force fallback for `n ≠ 2`: conjugacy only at the sampled primes.
fn sampled_conjugacy(a: &MatTuple, b: &MatTuple, primes: &[u64]) -> Result<Option<(u64, Mat)>> {
    for &p in primes {
        let fp = CoeffDomain::prime_field(p)?;
        if let Some(c) =
            crate::conjugacy::simultaneously_conjugate(&a.map_into(&fp)?, &b.map_into(&fp)?)?
        {
            return Ok(Some((p, c)));
        }
    }
    Ok(None)
}

/// Decides whether `k` integer tuples of length `m` generate `M_n(Z)^m`.
///
/// For `n = 2` the answer covers every prime. Other sizes fall back to the
/// sampled primes and are flagged with `complete = false`.
pub fn verify_z_tuples(gens: &[MatTuple], primes: &[u64], threads: usize) -> Result<ZGenVerdict> {
    let sections = cross_sections(gens)?;
    let n = gens[0].n();
    if *gens[0].domain() != CoeffDomain::Integers {
        return Err(Error::DomainMismatch(
            "Z".into(),
            gens[0].domain().to_string(),
        ));
    }
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    let pool = thread_pool(threads.max(1))?;
    let componentwise = pool.install(|| {
        sections
            .par_iter()
            .enumerate()
            .map(|(i, cs)| check_section(i, cs))
            .collect::<Result<Vec<_>>>()
    })?;

    let pairs: Vec<(usize, usize)> = (0..sections.len())
        .flat_map(|i| (i + 1..sections.len()).map(move |j| (i, j)))
        .collect();
    let mut pairwise = Vec::new();
    let mut pair_failures = Vec::new();
    if n == 2 {
        let results = pool.install(|| {
            pairs
                .par_iter()
                .map(|&(i, j)| {
                    nonconjugate_all_primes(&sections[i], &sections[j]).map(|c| (i, j, c))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for (i, j, certificate) in results {
            if let Some(f) = pair_failure(i, j, &sections[i], &sections[j], &certificate) {
                pair_failures.push(f);
            }
            pairwise.push(PairCheck { i, j, certificate });
        }
    } else {
        let found = pool.install(|| {
            pairs
                .par_iter()
                .map(|&(i, j)| {
                    sampled_conjugacy(&sections[i], &sections[j], primes).map(|c| (i, j, c))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for (i, j, hit) in found {
            if let Some((p, witness)) = hit {
                pair_failures.push(ZFailure::ConjugatePair { i, j, p, witness });
            }
        }
    }

    let shape = DirectSumShape::uniform(n, sections.len())?;
    let elems: Vec<SumElem> = gens.iter().map(MatTuple::to_sum_elem).collect();
    let direct_modp = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| {
                let fp = CoeffDomain::prime_field(p)?;
                let reduced = elems
                    .iter()
                    .map(|e| e.map_into(&fp))
                    .collect::<Result<Vec<_>>>()?;
                let r = closure_generates(&reduced, &shape, &fp, true)?;
                Ok(ModPCheck {
                    p,
                    closure_dim: r.closure_dim,
                    ambient_dim: r.ambient_dim,
                    generates: r.verdict,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let failure = componentwise
        .iter()
        .find(|c| !c.generates)
        .map(|c| ZFailure::CrossSectionFails { index: c.index })
        .or_else(|| pair_failures.into_iter().next());
    let overall = failure.is_none();
    if overall && direct_modp.iter().any(|c| !c.generates) {
        return Err(Error::VerificationFailed(
            "generation certified but a direct closure modulo a sampled prime is proper".into(),
        ));
    }
    if n == 2 {
        // a full lattice for the whole sum implies generation everywhere
        let full = lattice_closure(&elems, &shape)?.0;
        if full != overall {
            return Err(Error::VerificationFailed(format!(
                "certificate says {overall}, lattice closure of the direct sum says {full}"
            )));
        }
    }
    Ok(ZGenVerdict {
        n,
        copies: sections.len(),
        componentwise,
        pairwise,
        direct_modp,
        complete: n == 2,
        failure,
        overall,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledCheck {
    pub p: u64,
    pub closure_dim: usize,
    pub generates: bool,
}

/// `{X, Y}` generates `M_2(Z)` while `{p0·X, p0·Y}` fails exactly at `p0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledSetReport {
    pub p0: u64,
    pub unscaled: Vec<ScaledCheck>,
    pub scaled: Vec<ScaledCheck>,
    pub scaled_lattice_index: Option<String>,
    /// The scaled set fails modulo `p0` and generates modulo every other tested prime.
    pub fails_exactly_at_p0: bool,
}

fn mod_p_checks(gens: &[Mat], primes: &[u64]) -> Result<Vec<ScaledCheck>> {
    let shape = DirectSumShape::uniform(gens[0].n(), 1)?;
    primes
        .iter()
        .map(|&p| {
            let fp = CoeffDomain::prime_field(p)?;
            let reduced = gens
                .iter()
                .map(|g| Ok(SumElem(vec![g.map_into(&fp)?])))
                .collect::<Result<Vec<_>>>()?;
            let r = closure_generates(&reduced, &shape, &fp, true)?;
            Ok(ScaledCheck {
                p,
                closure_dim: r.closure_dim,
                generates: r.verdict,
            })
        })
        .collect()
}

/// Shows that no prime can be skipped in the mod-`p` test: scaling the
/// standard pair by `p0` breaks generation at `p0` only.
pub fn scaled_set_counterexample(p0: u64, primes: &[u64]) -> Result<ScaledSetReport> {
    if !is_prime(p0) {
        return Err(Error::NotPrime(p0));
    }
    let z = CoeffDomain::Integers;
    let (x, y) = crate::construct::standard_xy(2, &z);
    let s = Elem::Int(p0.into());
    let scaled = [x.scale(&s), y.scale(&s)];
    let mut tested: Vec<u64> = primes.to_vec();
    if !tested.contains(&p0) {
        tested.push(p0);
    }
    tested.sort_unstable();
    let unscaled = mod_p_checks(&[x, y], &tested)?;
    let scaled_checks = mod_p_checks(&scaled, &tested)?;
    let (_, lattice) = lattice_generates_mnz(&scaled, 2)?;
    let fails_exactly_at_p0 = scaled_checks.iter().all(|c| c.generates == (c.p != p0));
    Ok(ScaledSetReport {
        p0,
        unscaled,
        scaled: scaled_checks,
        scaled_lattice_index: lattice.index().map(|i| i.to_string()),
        fails_exactly_at_p0,
    })
}

/// Primes used for the per-prime lower bounds.
pub const TABLE_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Generators over `Q` for any direct sum of copies of `M_2`.
pub const RATIONAL_GENERATORS: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Resolution {
    /// Some prime needs more than the rational count, so the maximum is the answer.
    Determined { r: u32 },
    /// Every prime allows the rational count; the answer is `r0` or `r0 + 1`.
    Ambiguous { candidates: [u32; 2] },
}

/// Lower bounds for the generator count of `M_2(Z)^k` from each `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeBoundTable {
    pub k: u64,
    pub r0: u32,
    /// `(p, r(p))` with `r(p)` the least `m` such that `gen_{m,2}(p) ≥ k`.
    pub by_prime: Vec<(u64, u32)>,
    pub resolution: Resolution,
    /// The least generator count from the closed form for `M_2(Z)`.
    pub closed_form: u32,
    pub max_attained_at_2: bool,
    pub non_increasing_in_p: bool,
}

/// Tabulates `r(p)` for small primes and combines them with `r0 = 2`.
pub fn prime_bound_table(k: u64) -> Result<PrimeBoundTable> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let target = num_bigint::BigInt::from(k);
    let mut by_prime = Vec::new();
    for p in TABLE_PRIMES {
        let mut m = 2;
        while formula_gen_m2(p, m)? < target {
            m += 1;
        }
        by_prime.push((p, m));
    }
    let max = by_prime.iter().map(|t| t.1).max().unwrap();
    let r0 = RATIONAL_GENERATORS;
    let resolution = if max > r0 {
        Resolution::Determined { r: max }
    } else {
        Resolution::Ambiguous {
            candidates: [r0, r0 + 1],
        }
    };
    Ok(PrimeBoundTable {
        k,
        r0,
        max_attained_at_2: by_prime[0].1 == max,
        non_increasing_in_p: by_prime.windows(2).all(|w| w[0].1 >= w[1].1),
        by_prime,
        resolution,
        closed_form: min_generators_m2z(k)?,
    })
}
