//! Finite fields `F_q`, `q = p^k`, and their quadratic extensions.
//!
//! Elements of `F_q` are packed as integers in `[0, q)`: the coefficient
//! vector `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` (lowest degree first) is read
//! as base-`p` digits, so the prime field sits inside as `0..p`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Largest field order for which full multiplication tables are cached.
const TABLE_LIMIT: u32 = 256;

#[derive(Debug)]
struct Tables {
    mul: Vec<u32>,
    add: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, lowest degree first, length `k + 1`.
    modulus: Vec<u32>,
    tables: Option<Arc<Tables>>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}[{:?}]", self.p, self.k, self.modulus)
        }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}", self.q)
        }
    }
}

fn check_prime(p: u64) -> Result<u32> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64 % p64).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for (i, &mc) in m[..dm].iter().enumerate() {
            let sub = lead * mc as u64 % p64;
            r[shift + i] = (r[shift + i] + p64 - sub) % p64;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `index`.
fn monic_from_index(mut index: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        out.push((index % p as u64) as u32);
        index /= p as u64;
    }
    out.push(1);
    out
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() as u32 - 1;
    if m.last() != Some(&1) || m.iter().any(|&c| c >= p) {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let f = monic_from_index(idx, d, p);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        let p = check_prime(p)?;
        Ok(Self::build(p, vec![0, 1]))
    }

    /// `F_{p^k}` with the least monic irreducible modulus of degree `k`.
    ///
    /// Polynomials are ordered by their coefficient vectors read from the
    /// `x^{k-1}` coefficient down to the constant term.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let p = check_prime(p)?;
        if !(1..=4).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        if k == 1 {
            return Ok(Self::build(p, vec![0, 1]));
        }
        let count = (p as u64).pow(k);
        for idx in 0..count {
            let m = monic_from_index(idx, k, p);
            if is_irreducible(&m, p) {
                return Ok(Self::build(p, m));
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    /// `F_p[x]/(modulus)` for a caller-supplied monic modulus (lowest degree first).
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Self> {
        let p = check_prime(p)?;
        let k = modulus.len().saturating_sub(1) as u32;
        if !(1..=4).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(modulus));
        }
        if k == 1 {
            return Ok(Self::build(p, vec![0, 1]));
        }
        Ok(Self::build(p, modulus))
    }

    fn build(p: u32, modulus: Vec<u32>) -> Self {
        let k = modulus.len() as u32 - 1;
        let q = p.checked_pow(k).expect("field order fits in u32");
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            tables: None,
        };
        if k > 1 && q <= TABLE_LIMIT {
            let n = q as usize;
            let mut mul = vec![0; n * n];
            let mut add = vec![0; n * n];
            for a in 0..q {
                for b in 0..q {
                    mul[a as usize * n + b as usize] = field.mul_slow(a, b);
                    add[a as usize * n + b as usize] = field.add_slow(a, b);
                }
            }
            let mut inv = vec![0; n];
            for a in 1..q {
                inv[a as usize] = (1..q)
                    .find(|&b| mul[a as usize * n + b as usize] == 1)
                    .unwrap();
            }
            field.tables = Some(Arc::new(Tables { mul, add, inv }));
        }
        field
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.p + d % self.p)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(a);
        let db = self.digits(b);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&s)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * self.k as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % self.p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.from_digits(&r)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            let s = a as u64 + b as u64;
            return (s % self.p as u64) as u32;
        }
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize],
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let d: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        self.from_digits(&d)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a as u64 * b as u64 % self.p as u64) as u32;
        }
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize],
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.inv[a as usize]);
        }
        // a^(q-2) = a^-1 in the multiplicative group of order q-1
        Some(self.pow(a, self.q as u64 - 2))
    }

    /// Canonical text form: a decimal residue for prime fields, otherwise the
    /// coefficient list lowest degree first, comma separated.
    pub fn format(&self, a: u32) -> String {
        if self.k == 1 {
            a.to_string()
        } else {
            self.digits(a)
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn parse(&self, text: &str) -> Option<u32> {
        let text = text.trim();
        if self.k == 1 {
            let v: i64 = text.parse().ok()?;
            return Some(self.from_i64(v));
        }
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != self.k as usize {
            return None;
        }
        let mut digits = Vec::with_capacity(parts.len());
        for part in parts {
            let v: i64 = part.parse().ok()?;
            digits.push(v.rem_euclid(self.p as i64) as u32);
        }
        Some(self.from_digits(&digits))
    }

    /// Roots of `t^2 + b t + c` in this field, by exhaustive search.
    pub fn quadratic_roots(&self, b: u32, c: u32) -> Vec<u32> {
        self.elements()
            .filter(|&t| self.add(self.add(self.mul(t, t), self.mul(b, t)), c) == 0)
            .collect()
    }
}

/// `F_{q^2} = F_q[θ]/(θ^2 + c1 θ + c0)` for the least irreducible quadratic over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    base: FiniteField,
    c0: u32,
    c1: u32,
}

/// Element `re + im·θ` of a [`QuadExt`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct QElem {
    pub re: u32,
    pub im: u32,
}

impl QuadExt {
    pub fn new(base: &FiniteField) -> Self {
        for c1 in base.elements() {
            for c0 in base.elements() {
                if base.quadratic_roots(c1, c0).is_empty() {
                    return QuadExt {
                        base: base.clone(),
                        c0,
                        c1,
                    };
                }
            }
        }
        unreachable!("every finite field has an irreducible quadratic")
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn zero(&self) -> QElem {
        QElem { re: 0, im: 0 }
    }

    pub fn embed(&self, a: u32) -> QElem {
        QElem { re: a, im: 0 }
    }

    pub fn theta(&self) -> QElem {
        QElem { re: 0, im: 1 }
    }

    pub fn elements(&self) -> impl Iterator<Item = QElem> + '_ {
        self.base
            .elements()
            .flat_map(move |im| self.base.elements().map(move |re| QElem { re, im }))
    }

    pub fn add(&self, x: QElem, y: QElem) -> QElem {
        QElem {
            re: self.base.add(x.re, y.re),
            im: self.base.add(x.im, y.im),
        }
    }

    pub fn sub(&self, x: QElem, y: QElem) -> QElem {
        QElem {
            re: self.base.sub(x.re, y.re),
            im: self.base.sub(x.im, y.im),
        }
    }

    pub fn mul(&self, x: QElem, y: QElem) -> QElem {
        let f = &self.base;
        let rr = f.mul(x.re, y.re);
        let cross = f.add(f.mul(x.re, y.im), f.mul(x.im, y.re));
        let ii = f.mul(x.im, y.im);
        // θ^2 = -c1 θ - c0
        QElem {
            re: f.sub(rr, f.mul(ii, self.c0)),
            im: f.sub(cross, f.mul(ii, self.c1)),
        }
    }

    pub fn is_zero(&self, x: QElem) -> bool {
        x.re == 0 && x.im == 0
    }

    pub fn pow(&self, x: QElem, mut e: u64) -> QElem {
        let mut base = x;
        let mut acc = self.embed(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: QElem) -> Option<QElem> {
        if self.is_zero(x) {
            return None;
        }
        let q = self.base.order() as u64;
        Some(self.pow(x, q * q - 2))
    }

    /// Roots of `t^2 + b t + c` (coefficients in the base field) in `F_{q^2}`.
    pub fn roots_of_base_quadratic(&self, b: u32, c: u32) -> Vec<QElem> {
        let (b, c) = (self.embed(b), self.embed(c));
        self.elements()
            .filter(|&t| {
                let v = self.add(self.add(self.mul(t, t), self.mul(b, t)), c);
                self.is_zero(v)
            })
            .collect()
    }

    pub fn format(&self, x: QElem) -> String {
        format!("{}+{}θ", self.base.format(x.re), self.base.format(x.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_is_prime_field() {
        let f = FiniteField::new(2, 1).unwrap();
        assert!(f.is_prime_field());
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn least_moduli() {
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        // 0, 1, 2 are not roots of x^2 + 1 over F_3
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FiniteField::new(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(FiniteField::new(2, 5), Err(Error::UnsupportedDegree(5)));
        assert!(matches!(
            FiniteField::with_modulus(2, vec![1, 0, 1]),
            Err(Error::ReducibleModulus(_))
        ));
    }

    #[test]
    fn inverses_exhaustive() {
        for (p, k) in [
            (2, 1),
            (2, 2),
            (3, 1),
            (2, 3),
            (3, 2),
            (5, 1),
            (2, 4),
            (7, 1),
            (3, 4),
        ] {
            let f = FiniteField::new(p, k).unwrap();
            assert!(f.order() <= 81);
            for a in 1..f.order() {
                let b = f.inv(a).unwrap();
                assert_eq!(f.mul(a, b), 1, "{f:?} a={a}");
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn inverses_large_prime() {
        let f = FiniteField::prime(10007).unwrap();
        for a in [1, 2, 17, 5000, 10006] {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn ring_axioms_f9() {
        let f = FiniteField::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn format_round_trip() {
        let f = FiniteField::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse(&f.format(a)), Some(a));
        }
        assert_eq!(f.format(5), "2,1");
        assert_eq!(f.parse("1"), None);
    }

    #[test]
    fn quadratic_extension_roots() {
        let f2 = FiniteField::prime(2).unwrap();
        let ext = QuadExt::new(&f2);
        // λ^2 + λ + 1 has no roots over F_2 but two in F_4
        assert!(f2.quadratic_roots(1, 1).is_empty());
        let roots = ext.roots_of_base_quadratic(1, 1);
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert_ne!(r.im, 0);
        }
    }

    #[test]
    fn quadratic_extension_is_field() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let ext = QuadExt::new(&f4);
        let elems: Vec<_> = ext.elements().collect();
        assert_eq!(elems.len(), 16);
        for &x in &elems[1..] {
            assert_eq!(
                elems
                    .iter()
                    .filter(|&&y| ext.mul(x, y) == ext.embed(1))
                    .count(),
                1
            );
        }
    }
}
