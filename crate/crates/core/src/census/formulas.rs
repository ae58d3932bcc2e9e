//! Closed-form counts and bounds for generating tuples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::prime_power;

fn big(q: u64) -> BigInt {
    BigInt::from(q)
}

fn require_prime_power(q: u64) -> Result<()> {
    prime_power(q)
        .map(|_| ())
        .ok_or(Error::InvalidInput(format!("{q} is not a prime power")))
}

/// `#PGL_n(F_q) = (q − 1)^{-1} Π_{i<n} (q^n − q^i)`.
pub fn pgl_order(q: u64, n: u32) -> BigInt {
    let qn = big(q).pow(n);
    let gl: BigInt = (0..n).map(|i| &qn - big(q).pow(i)).product();
    gl / (big(q) - 1)
}

/// Number of `m`-tuples generating `M_2(F_q)`:
/// `q^{4m} − q^m − (q+1)(q^{3m} − q^m) + q(q^{2m} − q^m)`.
pub fn formula_numerator_m2(q: u64, m: u32) -> BigInt {
    let (q1, qm) = (big(q), big(q).pow(m));
    big(q).pow(4 * m) - &qm - (&q1 + 1) * (big(q).pow(3 * m) - &qm)
        + &q1 * (big(q).pow(2 * m) - &qm)
}

/// The largest `k` with `M_2(F_q)^k` generated by `m` elements:
/// `(q^{4m−1} + q^{2m} − q^{3m} − q^{3m−1}) / (q² − 1)`.
pub fn formula_gen_m2(q: u64, m: u32) -> Result<BigInt> {
    require_prime_power(q)?;
    if m < 2 {
        return Err(Error::InvalidInput("closed form needs m >= 2".into()));
    }
    let num = big(q).pow(4 * m - 1) + big(q).pow(2 * m) - big(q).pow(3 * m) - big(q).pow(3 * m - 1);
    let den = big(q).pow(2) - 1;
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::VerificationFailed(format!(
            "closed form not integral at q={q}, m={m}"
        )));
    }
    Ok(quot)
}

/// Inclusion-exclusion over maximal subalgebras, kept in its two stages:
/// subtracting every subalgebra once, then adding back the pairwise overlaps
/// of the noncommutative ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionExclusionSteps {
    pub ambient_minus_scalars: BigInt,
    pub noncommutative: BigInt,
    pub commutative: BigInt,
    pub first_stage: BigInt,
    pub overlap_correction: BigInt,
    pub total: BigInt,
}

pub fn inclusion_exclusion_steps(q: u64, m: u32) -> InclusionExclusionSteps {
    let q1 = big(q);
    let qm = q1.pow(m);
    let ambient_minus_scalars = q1.pow(4 * m) - &qm;
    let noncommutative = (&q1 + 1) * (q1.pow(3 * m) - &qm);
    let commutative = (&q1 * &q1 - &q1) / 2 * (q1.pow(2 * m) - &qm);
    let first_stage = &ambient_minus_scalars - &noncommutative - &commutative;
    let overlap_correction = (&q1 + 1) * &q1 / 2 * (q1.pow(2 * m) - &qm);
    let total = &first_stage + &overlap_correction;
    InclusionExclusionSteps {
        ambient_minus_scalars,
        noncommutative,
        commutative,
        first_stage,
        overlap_correction,
        total,
    }
}

/// How tuples generating `F_q` (`n = 1`) are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenM1Convention {
    /// The identity is adjoined, so every tuple generates.
    Unital,
    /// No identity: a tuple generates iff some entry is nonzero.
    Nonunital,
    /// `(q^m − 1)/(q − 1)`, the number of points of `P^{m−1}(F_q)`.
    Projective,
}

pub fn formula_gen_m1(q: u64, m: u32, convention: GenM1Convention) -> Result<BigInt> {
    require_prime_power(q)?;
    let qm = big(q).pow(m);
    Ok(match convention {
        GenM1Convention::Unital => qm,
        GenM1Convention::Nonunital => qm - 1,
        GenM1Convention::Projective => (qm - 1) / (big(q) - 1),
    })
}

/// Upper bound `(q−1)·q^{(m−1)n²}·Π_{k=1..n} (1 − q^{−k})^{−1}` on the number
/// of copies of `M_n(F_q)` generated by `m` elements.
pub fn generation_upper_bound(q: u64, n: u32, m: u32) -> Result<BigRational> {
    require_prime_power(q)?;
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let qr = BigRational::from_integer(big(q));
    let mut b = BigRational::from_integer((big(q) - 1) * big(q).pow((m - 1) * n * n));
    for k in 1..=n as i32 {
        let factor = BigRational::one() - qr.pow(-k);
        b /= factor;
    }
    Ok(b)
}

/// Bracket `(lower, upper)` for `Π_{k≥1} (1 − x^k)` from the first `terms`
/// groups of the pentagonal-number series, for `0 ≤ x < 1`.
pub fn euler_partial(x: &BigRational, terms: u32) -> Result<(BigRational, BigRational)> {
    if x.is_negative() || *x >= BigRational::one() {
        return Err(Error::InvalidInput(format!("x = {x} outside [0, 1)")));
    }
    let group = |k: i64| -> BigRational {
        let a = (3 * k * k - k) / 2;
        let b = (3 * k * k + k) / 2;
        x.pow(a as i32) + x.pow(b as i32)
    };
    let mut s = BigRational::one();
    for k in 1..=terms as i64 {
        if k % 2 == 1 {
            s -= group(k);
        } else {
            s += group(k);
        }
    }
    // groups shrink and alternate in sign, so the next one bounds the tail
    let next = group(terms as i64 + 1);
    if terms % 2 == 1 {
        let upper = &s + &next;
        Ok((s, upper))
    } else {
        let lower = &s - &next;
        Ok((lower, s))
    }
}

/// Bracket for `Π_{k≥1} (1 − x^k)^{−1}`, the reciprocal of [`euler_partial`].
pub fn euler_reciprocal(x: &BigRational, terms: u32) -> Result<(BigRational, BigRational)> {
    let (lo, hi) = euler_partial(x, terms)?;
    if !lo.is_positive() {
        return Err(Error::InvalidInput(
            "lower bound not positive; use more terms".into(),
        ));
    }
    Ok((hi.recip(), lo.recip()))
}

/// Coefficients of `gen_{2,2}(q) / ((1 − q²z)(1 − q³z)(1 − q⁴z))` up to `z^{count−1}`.
pub fn genfun_coefficients(q: u64, count: usize) -> Vec<BigInt> {
    let (a, b, c) = (big(q).pow(2), big(q).pow(3), big(q).pow(4));
    let e1 = &a + &b + &c;
    let e2 = &a * &b + &a * &c + &b * &c;
    let e3 = &a * &b * &c;
    let c0 = big(q).pow(4) * (big(q) - 1);
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for j in 0..count {
        let at = |i: usize| -> BigInt {
            if j >= i {
                out[j - i].clone()
            } else {
                BigInt::zero()
            }
        };
        let mut v = &e1 * at(1) - &e2 * at(2) + &e3 * at(3);
        if j == 0 {
            v += &c0;
        }
        out.push(v);
    }
    out
}

/// Whether the series coefficient of `z^{m−2}` equals the closed form for `2 ≤ m ≤ upto_m`.
pub fn genfun_check(q: u64, upto_m: u32) -> Result<bool> {
    require_prime_power(q)?;
    if upto_m < 2 {
        return Ok(true);
    }
    let coeffs = genfun_coefficients(q, upto_m as usize - 1);
    for m in 2..=upto_m {
        if coeffs[m as usize - 2] != formula_gen_m2(q, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of copies of `M_2(Z)` generated by `m` elements: `(16^m − 3·8^m + 2·4^m)/6`.
pub fn max_copies_m2z(m: u32) -> BigInt {
    (BigInt::from(16).pow(m) - 3 * BigInt::from(8).pow(m) + 2 * BigInt::from(4).pow(m)) / 6
}

/// Least number of generators of the ring `M_2(Z)^k`.
pub fn min_generators_m2z(k: u64) -> Result<u32> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let k = BigInt::from(k);
    Ok((2..).find(|&m| max_copies_m2z(m) >= k).unwrap())
}

/// Least prime power greater than `q`.
pub fn next_prime_power(q: u64) -> u64 {
    (q + 1..).find(|&x| prime_power(x).is_some()).unwrap()
}

/// Checks `gen_{m+1,2}(q) ≥ 2·gen_{m,2}(q)`, strict growth in `m` for
/// `2 ≤ m ≤ m_max`, and strict growth from `q` to the next prime power.
pub fn gap_monotonicity_check(q: u64, n: u32, m_max: u32) -> Result<bool> {
    if n != 2 {
        return Err(Error::InvalidInput(
            "closed form only known for n = 2".into(),
        ));
    }
    let q_next = next_prime_power(q);
    for m in 2..=m_max {
        let g = formula_gen_m2(q, m)?;
        if g >= formula_gen_m2(q_next, m)? {
            return Ok(false);
        }
        if m < m_max {
            let g1 = formula_gen_m2(q, m + 1)?;
            if g1 < 2 * &g || g1 <= g {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pgl_orders() {
        assert_eq!(pgl_order(2, 2), 6.into());
        assert_eq!(pgl_order(3, 2), 24.into());
        assert_eq!(pgl_order(7, 1), 1.into());
        assert_eq!(pgl_order(2, 3), 168.into());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(formula_gen_m2(2, 2).unwrap(), 16.into());
        assert_eq!(formula_gen_m2(2, 3).unwrap(), 448.into());
        assert_eq!(formula_gen_m2(3, 2).unwrap(), 162.into());
        assert_eq!(formula_gen_m2(4, 2).unwrap(), 768.into());
        assert_eq!(formula_gen_m2(7, 2).unwrap(), 14406.into());
        assert!(formula_gen_m2(6, 2).is_err());
        assert_eq!(formula_numerator_m2(2, 2), 96.into());
        assert_eq!(formula_numerator_m2(3, 2), 3888.into());
        for q in [2, 3, 4, 5, 7, 8, 9] {
            for m in 2..=6 {
                assert_eq!(
                    formula_numerator_m2(q, m),
                    pgl_order(q, 2) * formula_gen_m2(q, m).unwrap()
                );
            }
            // gen_{2,2}(q) = q⁴(q − 1)
            assert_eq!(formula_gen_m2(q, 2).unwrap(), big(q).pow(4) * (big(q) - 1));
        }
    }

    #[test]
    fn inclusion_exclusion_stages() {
        let s = inclusion_exclusion_steps(2, 2);
        assert_eq!(s.ambient_minus_scalars, 252.into());
        assert_eq!(s.noncommutative, 180.into());
        assert_eq!(s.commutative, 12.into());
        assert_eq!(s.first_stage, 60.into());
        assert_eq!(s.overlap_correction, 36.into());
        assert_eq!(s.total, 96.into());
        for q in [2, 3, 4, 5, 7] {
            for m in 1..6 {
                assert_eq!(
                    inclusion_exclusion_steps(q, m).total,
                    formula_numerator_m2(q, m)
                );
            }
        }
    }

    #[test]
    fn n1_conventions() {
        use GenM1Convention::*;
        assert_eq!(formula_gen_m1(2, 3, Projective).unwrap(), 7.into());
        assert_eq!(formula_gen_m1(3, 2, Projective).unwrap(), 4.into());
        assert_eq!(formula_gen_m1(5, 1, Projective).unwrap(), 1.into());
        assert_eq!(formula_gen_m1(3, 2, Unital).unwrap(), 9.into());
        assert_eq!(formula_gen_m1(3, 2, Nonunital).unwrap(), 8.into());
    }

    #[test]
    fn upper_bound() {
        assert_eq!(generation_upper_bound(2, 2, 2).unwrap(), rat(128, 3));
        let mut last = BigRational::zero();
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
            let r = BigRational::from_integer(formula_gen_m2(q, 2).unwrap())
                / generation_upper_bound(q, 2, 2).unwrap();
            assert!(r > last && r < BigRational::one());
            last = r;
        }
    }

    #[test]
    fn euler_brackets() {
        let half = rat(1, 2);
        let (lo, hi) = euler_partial(&half, 3).unwrap();
        assert!(&hi - &lo <= rat(1, 1_000_000));
        let (_, rhi) = euler_reciprocal(&half, 3).unwrap();
        assert!(rhi < rat(3463, 1000));
        // the true product 0.28878809508... lies inside
        assert!(lo < rat(2_887_880_950, 10_000_000_000) && rat(2_887_880_951, 10_000_000_000) < hi);
        let (lo, hi) = euler_partial(&BigRational::zero(), 3).unwrap();
        assert_eq!((lo, hi), (BigRational::one(), BigRational::one()));
        for terms in 1..6 {
            let (lo, hi) = euler_partial(&rat(1, 3), terms).unwrap();
            let (lo2, hi2) = euler_partial(&rat(1, 3), terms + 1).unwrap();
            assert!(lo <= lo2 && hi2 <= hi);
        }
        assert!(euler_partial(&BigRational::one(), 3).is_err());
    }

    #[test]
    fn series() {
        assert!(genfun_check(2, 6).unwrap());
        assert!(genfun_check(3, 5).unwrap());
        assert!(genfun_check(3, 6).unwrap());
        assert_eq!(genfun_coefficients(5, 1)[0], big(5).pow(4) * 4);
    }

    #[test]
    fn m2z_thresholds() {
        assert_eq!(max_copies_m2z(2), 16.into());
        assert_eq!(max_copies_m2z(3), 448.into());
        assert_eq!(max_copies_m2z(4), 8960.into());
        for m in 2..8 {
            assert_eq!(max_copies_m2z(m), formula_gen_m2(2, m).unwrap());
        }
        assert_eq!(min_generators_m2z(1).unwrap(), 2);
        assert_eq!(min_generators_m2z(16).unwrap(), 2);
        assert_eq!(min_generators_m2z(17).unwrap(), 3);
        assert_eq!(min_generators_m2z(448).unwrap(), 3);
        assert_eq!(min_generators_m2z(449).unwrap(), 4);
    }

    #[test]
    fn monotonicity() {
        assert!(gap_monotonicity_check(2, 2, 6).unwrap());
        assert!(gap_monotonicity_check(3, 2, 5).unwrap());
        assert_eq!(next_prime_power(5), 7);
        assert_eq!(next_prime_power(7), 8);
    }
}
