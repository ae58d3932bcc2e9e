//! Coefficient domains and their elements.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::FiniteField;

/// The coefficient ring in play: a finite field, `Z`, or `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffDomain {
    /// `F_q`; a prime field when the degree is 1.
    Finite(FiniteField),
    Integers,
    Rationals,
}

/// A canonical element of some [`CoeffDomain`].
///
/// Finite-field values are packed residues (see [`FiniteField`]), integers are
/// arbitrary precision and rationals are kept reduced with positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Fq(u32),
    Int(BigInt),
    Rat(BigRational),
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Finite(field) => write!(f, "{field}"),
            CoeffDomain::Integers => f.write_str("Z"),
            CoeffDomain::Rationals => f.write_str("Q"),
        }
    }
}

/// `build_ext_field`: `F_{p^k}` with a deterministic modulus (`k = 1` gives `F_p`).
pub fn build_ext_field(p: u64, k: u32) -> Result<CoeffDomain> {
    Ok(CoeffDomain::Finite(FiniteField::new(p, k)?))
}

impl CoeffDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(CoeffDomain::Finite(FiniteField::prime(p)?))
    }

    /// The field with `q` elements, `q` a prime power `p^k` with `k <= 4`.
    pub fn finite(q: u64) -> Result<Self> {
        let (p, k) = crate::primes::prime_power(q).ok_or(Error::NotPrime(q))?;
        build_ext_field(p, k)
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffDomain::Integers)
    }

    pub fn finite_field(&self) -> Option<&FiniteField> {
        match self {
            CoeffDomain::Finite(f) => Some(f),
            _ => None,
        }
    }

    /// Field cardinality, `None` for infinite domains.
    pub fn cardinality(&self) -> Option<u64> {
        self.finite_field().map(|f| f.order() as u64)
    }

    pub fn require_field(&self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.to_string()))
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CoeffDomain::Finite(f) if f.is_prime_field() => "prime_field",
            CoeffDomain::Finite(_) => "ext_field",
            CoeffDomain::Integers => "integers",
            CoeffDomain::Rationals => "rationals",
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            CoeffDomain::Finite(_) => Elem::Fq(0),
            CoeffDomain::Integers => Elem::Int(BigInt::zero()),
            CoeffDomain::Rationals => Elem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            CoeffDomain::Finite(f) => Elem::Fq(f.from_i64(v)),
            CoeffDomain::Integers => Elem::Int(BigInt::from(v)),
            CoeffDomain::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match self {
            CoeffDomain::Finite(f) => {
                let p = BigInt::from(f.characteristic());
                let r = v.mod_floor(&p);
                Elem::Fq(u32::try_from(r).expect("residue below p"))
            }
            CoeffDomain::Integers => Elem::Int(v.clone()),
            CoeffDomain::Rationals => Elem::Rat(BigRational::from_integer(v.clone())),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fq(x) => *x == 0,
            Elem::Int(x) => x.is_zero(),
            Elem::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Fq(x) => *x == 1,
            Elem::Int(x) => x.is_one(),
            Elem::Rat(x) => x.is_one(),
        }
    }

    /// Whether `a` is a unit of the domain (for `Z`: `±1`).
    pub fn is_unit(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => x.abs().is_one(),
            other => !self.is_zero(other),
        }
    }

    fn fq(&self) -> &FiniteField {
        match self {
            CoeffDomain::Finite(f) => f,
            _ => unreachable!("finite-field element outside a finite domain"),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fq(x), Elem::Fq(y)) => Elem::Fq(self.fq().add(*x, *y)),
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => panic!("mixed element kinds in {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fq(x), Elem::Fq(y)) => Elem::Fq(self.fq().sub(*x, *y)),
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x - y),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            _ => panic!("mixed element kinds in {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Fq(x) => Elem::Fq(self.fq().neg(*x)),
            Elem::Int(x) => Elem::Int(-x),
            Elem::Rat(x) => Elem::Rat(-x),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fq(x), Elem::Fq(y)) => Elem::Fq(self.fq().mul(*x, *y)),
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ => panic!("mixed element kinds in {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero and for non-units of `Z`.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        match a {
            Elem::Fq(x) => self.fq().inv(*x).map(Elem::Fq),
            Elem::Int(x) if x.abs().is_one() => Some(Elem::Int(x.clone())),
            Elem::Int(_) => None,
            Elem::Rat(x) if x.is_zero() => None,
            Elem::Rat(x) => Some(Elem::Rat(x.recip())),
        }
    }

    /// Exact quotient `a / b`; over `Z` the division must be exact.
    pub fn exact_div(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => {
                let (q, r) = x.div_rem(y);
                debug_assert!(r.is_zero(), "inexact integer division");
                Elem::Int(q)
            }
            _ => self.mul(a, &self.inv(b).expect("division by zero")),
        }
    }

    /// Reduction `Z -> F_p` (or `Z -> Q` inclusion) of an integer element.
    pub fn reduce(&self, a: &Elem) -> Result<Elem> {
        match a {
            Elem::Int(x) => Ok(self.from_bigint(x)),
            Elem::Fq(_) if matches!(self, CoeffDomain::Finite(_)) => Ok(a.clone()),
            Elem::Rat(_) if matches!(self, CoeffDomain::Rationals) => Ok(a.clone()),
            _ => Err(Error::InvalidInput(format!("cannot map {a:?} into {self}"))),
        }
    }

    /// Canonical string encoding of an element.
    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Fq(x) => self.fq().format(*x),
            Elem::Int(x) => x.to_string(),
            Elem::Rat(x) if x.denom().is_one() => x.numer().to_string(),
            Elem::Rat(x) => format!("{}/{}", x.numer(), x.denom()),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Elem> {
        let err = || Error::ParseElem {
            text: text.to_string(),
            domain: self.to_string(),
        };
        let t = text.trim();
        match self {
            CoeffDomain::Finite(f) => f.parse(t).map(Elem::Fq).ok_or_else(err),
            CoeffDomain::Integers => t.parse::<BigInt>().map(Elem::Int).map_err(|_| err()),
            CoeffDomain::Rationals => {
                let value = match t.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.trim().parse().map_err(|_| err())?;
                        let d: BigInt = d.trim().parse().map_err(|_| err())?;
                        if d.is_zero() {
                            return Err(err());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(t.parse().map_err(|_| err())?),
                };
                Ok(Elem::Rat(value))
            }
        }
    }

    /// The integer value of an element of `Z`.
    pub fn as_int<'a>(&self, a: &'a Elem) -> Option<&'a BigInt> {
        match a {
            Elem::Int(x) => Some(x),
            _ => None,
        }
    }
}
