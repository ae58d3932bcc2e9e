//! Simultaneous conjugacy of matrix tuples, and certificates that two integer
//! 2×2 tuples are not conjugate modulo any prime.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::domain::{CoeffDomain, Elem};
use crate::error::{Error, Result};
use crate::generation::MatTuple;
use crate::intlat::{integer_kernel, snf, IntMatrix};
use crate::linalg::kernel_basis;
use crate::matrix::Mat;
use crate::primes::{is_prime, prime_divisors, smallest_prime_not_dividing};

/// Largest `q^dim` for which an intertwiner space is searched exhaustively.
pub const ENUMERATION_CAP: u128 = 4096;

/// Largest `|GL_n(F_p)|` accepted by [`conjugate_mod_p_bruteforce`].
pub const BRUTEFORCE_GROUP_CAP: u128 = 1_000_000;

/// Solutions `C` of `C·A_i = B_i·C` for all `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwinerSpace {
    pub n: usize,
    pub basis: Vec<Mat>,
}

impl IntertwinerSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn check_pair(a: &MatTuple, b: &MatTuple) -> Result<()> {
    if a.len() != b.len() || a.n() != b.n() {
        return Err(Error::ShapeMismatch(format!(
            "tuples of length {} and {}, sizes {} and {}",
            a.len(),
            b.len(),
            a.n(),
            b.n()
        )));
    }
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(
            a.domain().to_string(),
            b.domain().to_string(),
        ));
    }
    Ok(())
}

/// The `n²·m × n²` system `C ↦ (C·A_i − B_i·C)_i` in row-major coordinates of `C`.
pub fn stacked_system(a: &MatTuple, b: &MatTuple) -> Result<Vec<Vec<Elem>>> {
    check_pair(a, b)?;
    let d = a.domain();
    let n = a.n();
    let mut rows = Vec::with_capacity(n * n * a.len());
    for (ai, bi) in a.mats().iter().zip(b.mats()) {
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![d.zero(); n * n];
                // (C A)_{rc} = Σ_t C_{rt} A_{tc}
                for t in 0..n {
                    row[r * n + t] = d.add(&row[r * n + t], ai.get(t, c));
                }
                // (B C)_{rc} = Σ_t B_{rt} C_{tc}
                for t in 0..n {
                    row[t * n + c] = d.sub(&row[t * n + c], bi.get(r, t));
                }
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

fn intertwines(c: &Mat, a: &MatTuple, b: &MatTuple) -> bool {
    a.mats()
        .iter()
        .zip(b.mats())
        .all(|(ai, bi)| c * ai == bi * c)
}

fn to_int_matrix(rows: &[Vec<Elem>]) -> IntMatrix {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|e| match e {
                    Elem::Int(x) => x.clone(),
                    _ => unreachable!("integer system expected"),
                })
                .collect()
        })
        .collect()
}

/// Intertwiner space over a field, or a saturated integer basis over `Z`.
pub fn intertwiners(a: &MatTuple, b: &MatTuple) -> Result<IntertwinerSpace> {
    let rows = stacked_system(a, b)?;
    let d = a.domain();
    let n = a.n();
    let vectors: Vec<Vec<Elem>> = match d {
        CoeffDomain::Integers => integer_kernel(&to_int_matrix(&rows), n * n)
            .into_iter()
            .map(|v| v.into_iter().map(Elem::Int).collect())
            .collect(),
        _ => kernel_basis(d, &rows, n * n)?,
    };
    let basis: Vec<Mat> = vectors.iter().map(|v| Mat::from_vector(d, n, v)).collect();
    for c in &basis {
        if !intertwines(c, a, b) {
            return Err(Error::VerificationFailed(
                "kernel vector does not intertwine".into(),
            ));
        }
    }
    Ok(IntertwinerSpace { n, basis })
}

fn combine(d: &CoeffDomain, n: usize, basis: &[Mat], coeffs: &[Elem]) -> Mat {
    let mut acc = Mat::zero(d, n);
    for (b, c) in basis.iter().zip(coeffs) {
        if !d.is_zero(c) {
            acc = &acc + &b.scale(c);
        }
    }
    acc
}

/// `det` restricted to a 2×2 intertwiner space, written as the quadratic form
/// `Σ t_i² det(b_i) + Σ_{i<j} t_i t_j B(b_i, b_j)` with
/// `B(x, y) = det(x + y) − det(x) − det(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub diag: Vec<Elem>,
    /// `(i, j, B(b_i, b_j))` for `i < j`.
    pub cross: Vec<(usize, usize, Elem)>,
}

impl Polarization {
    pub fn of(d: &CoeffDomain, basis: &[Mat]) -> Self {
        let diag: Vec<Elem> = basis.iter().map(Mat::det).collect();
        let mut cross = Vec::new();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = (&basis[i] + &basis[j]).det();
                let bij = d.sub(&d.sub(&s, &diag[i]), &diag[j]);
                cross.push((i, j, bij));
            }
        }
        Polarization { diag, cross }
    }

    pub fn vanishes(&self, d: &CoeffDomain) -> bool {
        self.diag.iter().all(|x| d.is_zero(x)) && self.cross.iter().all(|(_, _, x)| d.is_zero(x))
    }

    /// An element of the space with nonzero determinant, if the form is nonzero.
    pub fn nonvanishing_point(&self, d: &CoeffDomain, basis: &[Mat]) -> Option<Mat> {
        if let Some(i) = self.diag.iter().position(|x| !d.is_zero(x)) {
            return Some(basis[i].clone());
        }
        // every det(b_i) is zero, so det(b_i + b_j) = B(b_i, b_j)
        self.cross
            .iter()
            .find(|(_, _, x)| !d.is_zero(x))
            .map(|&(i, j, _)| &basis[i] + &basis[j])
    }
}

fn enumerate_invertible(d: &CoeffDomain, n: usize, basis: &[Mat]) -> Option<Mat> {
    let q = d.cardinality().expect("finite field") as usize;
    let mut digits = vec![0usize; basis.len()];
    loop {
        let pos = digits.iter().position(|&x| x + 1 < q);
        // advance the odometer first so the zero combination is skipped
        let pos = pos?;
        digits[pos] += 1;
        for x in &mut digits[..pos] {
            *x = 0;
        }
        // packed residues run over 0..q
        let coeffs: Vec<Elem> = digits.iter().map(|&x| Elem::Fq(x as u32)).collect();
        let c = combine(d, n, basis, &coeffs);
        if !d.is_zero(&c.det()) {
            return Some(c);
        }
    }
}

fn finish(c: Mat, a: &MatTuple, b: &MatTuple) -> Result<Option<Mat>> {
    if a.domain().is_zero(&c.det()) || !intertwines(&c, a, b) {
        return Err(Error::VerificationFailed(
            "invalid conjugating matrix".into(),
        ));
    }
    Ok(Some(c))
}

/// An invertible `C` with `C·A_i = B_i·C` for all `i`, over a field.
///
/// Small spaces are enumerated. Otherwise the 2×2 case is settled by the
/// polarization of `det`; larger sizes return [`Error::Undecidable`].
pub fn simultaneously_conjugate(a: &MatTuple, b: &MatTuple) -> Result<Option<Mat>> {
    check_pair(a, b)?;
    let d = a.domain();
    d.require_field()?;
    let n = a.n();
    let identity = Mat::identity(d, n);
    if intertwines(&identity, a, b) {
        return Ok(Some(identity));
    }
    let space = intertwiners(a, b)?;
    let basis = &space.basis;
    match basis.len() {
        0 => return Ok(None),
        1 => {
            let c = basis[0].clone();
            return if d.is_zero(&c.det()) {
                Ok(None)
            } else {
                finish(c, a, b)
            };
        }
        _ => {}
    }
    if let Some(q) = d.cardinality() {
        let size = (q as u128).checked_pow(basis.len() as u32);
        if size.is_some_and(|s| s <= ENUMERATION_CAP) {
            return match enumerate_invertible(d, n, basis) {
                Some(c) => finish(c, a, b),
                None => Ok(None),
            };
        }
    }
    if n == 2 {
        let pol = Polarization::of(d, basis);
        return match pol.nonvanishing_point(d, basis) {
            Some(c) => finish(c, a, b),
            None => Ok(None),
        };
    }
    Err(Error::Undecidable(format!(
        "{n}×{n} intertwiner space of dimension {} over {d} is too large to enumerate",
        basis.len()
    )))
}

/// Verdict of the mod-`p` check at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeVerdict {
    pub p: u64,
    pub kernel_dim: usize,
    /// Whether the mod-`p` intertwiner space contains an invertible matrix.
    pub invertible: bool,
    pub witness: Option<Mat>,
}

/// Proof that two integer 2×2 tuples are (or are not) simultaneously
/// conjugate modulo some prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonConjCertificate {
    pub rational_kernel_dim: usize,
    /// Saturated integer basis of the intertwiner lattice.
    pub kernel_basis: Vec<Mat>,
    /// `det(b_i)` for each basis element.
    pub det_values: Vec<String>,
    /// `(i, j, B(b_i, b_j))` for `i < j`.
    pub polarization: Vec<(usize, usize, String)>,
    pub det_vanishes_on_kernel: bool,
    /// Nonzero elementary divisors of the stacked integer system.
    pub elementary_divisors: Vec<String>,
    /// Prime divisors of the elementary divisors, together with 2.
    pub exceptional_primes: Vec<PrimeVerdict>,
    /// When det does not vanish: a kernel point with nonzero det and a prime
    /// at which it stays invertible.
    pub witness_point: Option<Mat>,
    pub witness_prime: Option<u64>,
    /// True iff no prime admits an invertible mod-`p` intertwiner.
    pub overall: bool,
    #[serde(skip)]
    diag: Vec<BigInt>,
    #[serde(skip)]
    cross: Vec<BigInt>,
}

impl NonConjCertificate {
    /// Whether the two tuples are simultaneously conjugate modulo `p`, as
    /// predicted by the certificate alone.
    pub fn conjugate_mod(&self, p: u64) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let Some(v) = self.exceptional_primes.iter().find(|v| v.p == p) {
            return Ok(v.invertible);
        }
        // outside the exceptional set the mod-p space is the reduction of the
        // integer kernel, so only the form coefficients mod p matter
        let bp = BigInt::from(p);
        Ok(self
            .diag
            .iter()
            .chain(&self.cross)
            .any(|x| !(x % &bp).is_zero()))
    }
}

fn int_of(e: &Elem) -> BigInt {
    match e {
        Elem::Int(x) => x.clone(),
        _ => unreachable!("integer element expected"),
    }
}

fn check_mod_p(a: &MatTuple, b: &MatTuple, p: u64) -> Result<PrimeVerdict> {
    let fp = CoeffDomain::prime_field(p)?;
    let (ap, bp) = (a.map_into(&fp)?, b.map_into(&fp)?);
    let kernel_dim = intertwiners(&ap, &bp)?.dim();
    let witness = simultaneously_conjugate(&ap, &bp)?;
    Ok(PrimeVerdict {
        p,
        kernel_dim,
        invertible: witness.is_some(),
        witness,
    })
}

/// Decides, for every prime at once, whether two integer 2×2 tuples are
/// simultaneously conjugate modulo that prime.
pub fn nonconjugate_all_primes(a: &MatTuple, b: &MatTuple) -> Result<NonConjCertificate> {
    check_pair(a, b)?;
    if a.n() != 2 {
        return Err(Error::InvalidInput(
            "all-primes certificate needs n = 2".into(),
        ));
    }
    if *a.domain() != CoeffDomain::Integers {
        return Err(Error::DomainMismatch("Z".into(), a.domain().to_string()));
    }
    let z = CoeffDomain::Integers;
    let space = intertwiners(a, b)?;
    let basis = space.basis;
    let pol = Polarization::of(&z, &basis);
    let diag: Vec<BigInt> = pol.diag.iter().map(int_of).collect();
    let cross: Vec<BigInt> = pol.cross.iter().map(|(_, _, x)| int_of(x)).collect();
    let vanishes = pol.vanishes(&z);

    let system = to_int_matrix(&stacked_system(a, b)?);
    let divisors: Vec<BigInt> = snf(&system).into_iter().filter(|x| !x.is_zero()).collect();
    let mut primes: Vec<u64> = vec![2];
    for dv in &divisors {
        for p in prime_divisors(dv) {
            let p = p
                .to_u64()
                .filter(|&p| p <= u32::MAX as u64)
                .ok_or_else(|| {
                    Error::InvalidInput(format!("exceptional prime {p} out of range"))
                })?;
            primes.push(p);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let exceptional = primes
        .into_iter()
        .map(|p| check_mod_p(a, b, p))
        .collect::<Result<Vec<_>>>()?;

    let (witness_point, witness_prime) = match pol.nonvanishing_point(&z, &basis) {
        Some(v) => {
            let p = smallest_prime_not_dividing(&[int_of(&v.det())]);
            let fp = CoeffDomain::prime_field(p)?;
            let c = v.map_into(&fp)?;
            if !intertwines(&c, &a.map_into(&fp)?, &b.map_into(&fp)?) || fp.is_zero(&c.det()) {
                return Err(Error::VerificationFailed(format!(
                    "witness fails modulo {p}"
                )));
            }
            (Some(v), Some(p))
        }
        None => (None, None),
    };
    let overall = vanishes && exceptional.iter().all(|v| !v.invertible);
    Ok(NonConjCertificate {
        rational_kernel_dim: basis.len(),
        det_values: diag.iter().map(BigInt::to_string).collect(),
        polarization: pol
            .cross
            .iter()
            .map(|(i, j, x)| (*i, *j, z.format(x)))
            .collect(),
        kernel_basis: basis,
        det_vanishes_on_kernel: vanishes,
        elementary_divisors: divisors.iter().map(BigInt::to_string).collect(),
        exceptional_primes: exceptional,
        witness_point,
        witness_prime,
        overall,
        diag,
        cross,
    })
}

fn gl_order(p: u128, n: u32) -> Option<u128> {
    let pn = p.checked_pow(n)?;
    (0..n).try_fold(1u128, |acc, i| acc.checked_mul(pn - p.pow(i)))
}

fn det_mod(m: &mut [u64], n: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r * n + col] != 0) else {
            return 0;
        };
        if piv != col {
            for k in 0..n {
                m.swap(piv * n + k, col * n + k);
            }
            det = (p - det) % p;
        }
        let x = m[col * n + col];
        det = det * x % p;
        let inv = pow_mod(x, p - 2, p);
        for r in col + 1..n {
            let f = m[r * n + col] * inv % p;
            if f == 0 {
                continue;
            }
            for k in col..n {
                m[r * n + k] = (m[r * n + k] + p * p - f * m[col * n + k]) % p;
            }
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Exhaustive search of `GL_n(F_p)` for a simultaneous conjugator of integer tuples.
///
/// An independent oracle for the certificate: plain residues, no linear algebra.
pub fn conjugate_mod_p_bruteforce(a: &MatTuple, b: &MatTuple, p: u64) -> Result<Option<Mat>> {
    check_pair(a, b)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = a.n();
    match gl_order(p as u128, n as u32) {
        Some(size) if size <= BRUTEFORCE_GROUP_CAP => {}
        size => {
            return Err(Error::CapExceeded {
                size: size.unwrap_or(u128::MAX),
                cap: BRUTEFORCE_GROUP_CAP,
            })
        }
    }
    let residues = |t: &MatTuple| -> Result<Vec<Vec<u64>>> {
        t.mats()
            .iter()
            .map(|m| {
                m.entries()
                    .iter()
                    .map(|e| match e {
                        Elem::Int(x) => {
                            let r = x % BigInt::from(p);
                            Ok(((r + BigInt::from(p)) % BigInt::from(p)).to_u64().unwrap())
                        }
                        _ => Err(Error::DomainMismatch("Z".into(), t.domain().to_string())),
                    })
                    .collect()
            })
            .collect()
    };
    let (ra, rb) = (residues(a)?, residues(b)?);
    let nn = n * n;
    let mut c = vec![0u64; nn];
    let mut scratch = vec![0u64; nn];
    loop {
        let ok = ra.iter().zip(&rb).all(|(ai, bi)| {
            (0..n).all(|r| {
                (0..n).all(|col| {
                    let mut lhs = 0;
                    let mut rhs = 0;
                    for t in 0..n {
                        lhs += c[r * n + t] * ai[t * n + col];
                        rhs += bi[r * n + t] * c[t * n + col];
                    }
                    lhs % p == rhs % p
                })
            })
        });
        if ok {
            scratch.copy_from_slice(&c);
            if det_mod(&mut scratch, n, p) != 0 {
                let fp = CoeffDomain::prime_field(p)?;
                let v: Vec<Elem> = c.iter().map(|&x| fp.from_i64(x as i64)).collect();
                return Ok(Some(Mat::from_vector(&fp, n, &v)));
            }
        }
        let Some(pos) = c.iter().position(|&x| x + 1 < p) else {
            return Ok(None);
        };
        c[pos] += 1;
        for x in &mut c[..pos] {
            *x = 0;
        }
    }
}
