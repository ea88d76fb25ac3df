//! Arbitrary-precision integer primitives: gcd, pairwise coprimality,
//! Chinese-remainder combination and exact rationals.
//!
//! Nothing in here touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Natural;

/// Greatest common divisor by Euclid's algorithm.
///
/// `gcd(0, 0)` is rejected: nothing in this crate produces it legitimately.
pub fn gcd(a: &Natural, b: &Natural) -> Result<Natural> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    Ok(euclid(a.clone(), b.clone()))
}

fn euclid(mut a: Natural, mut b: Natural) -> Natural {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// `true` iff every pair of entries has gcd 1. A single entry is vacuously
/// coprime.
pub fn pairwise_coprime(xs: &[Natural]) -> Result<bool> {
    if xs.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(first_common_factor(xs).is_none())
}

/// Indices `(i, j)`, `i < j`, of the first pair (in lexicographic order)
/// whose gcd exceeds 1.
pub fn first_common_factor(xs: &[Natural]) -> Option<(usize, usize)> {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if !euclid(xs[i].clone(), xs[j].clone()).is_one() {
                return Some((i, j));
            }
        }
    }
    None
}

/// A congruence `x ≡ residue (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResiduePair {
    residue: Natural,
    modulus: Natural,
}

impl ResiduePair {
    pub fn new(residue: impl Into<Natural>, modulus: impl Into<Natural>) -> Result<Self> {
        let (residue, modulus) = (residue.into(), modulus.into());
        if modulus < BigUint::from(2u32) {
            return Err(Error::InvalidResiduePair(format!(
                "modulus must be at least 2, got {modulus}"
            )));
        }
        if residue >= modulus {
            return Err(Error::InvalidResiduePair(format!(
                "residue must be below the modulus {modulus}"
            )));
        }
        Ok(ResiduePair { residue, modulus })
    }

    pub fn residue(&self) -> &Natural {
        &self.residue
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }
}

impl fmt::Display for ResiduePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

/// Extended Euclid over signed integers: returns `(g, s, t)` with
/// `s*a + t*b = g`.
fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    (old_r, old_s, old_t)
}

/// Combines congruences with pairwise coprime moduli into the single
/// congruence modulo their product.
///
/// Congruences are folded in one at a time. When a modulus shares a factor
/// with the running product, the error names the first earlier modulus it
/// collides with.
pub fn crt_combine(pairs: &[ResiduePair]) -> Result<ResiduePair> {
    let (first, rest) = pairs.split_first().ok_or(Error::EmptyInput)?;
    let mut residue = BigInt::from(first.residue.clone());
    let mut modulus = BigInt::from(first.modulus.clone());

    for (pos, pair) in rest.iter().enumerate() {
        let next_mod = BigInt::from(pair.modulus.clone());
        let (g, inv, _) = extended_gcd(&modulus, &next_mod);
        if !g.is_one() {
            let clash = pairs[..=pos]
                .iter()
                .find(|p| !euclid(p.modulus.clone(), pair.modulus.clone()).is_one())
                .map(|p| p.modulus.clone())
                .unwrap_or_else(|| to_natural(&modulus));
            return Err(Error::ModuliNotCoprime(clash, pair.modulus.clone()));
        }
        // x = r + m * ((a - r) * m^-1 mod n)
        let delta = (BigInt::from(pair.residue.clone()) - &residue) * inv;
        let lift = delta.mod_floor_pos(&next_mod);
        residue += &modulus * lift;
        modulus *= next_mod;
    }

    Ok(ResiduePair {
        residue: to_natural(&residue),
        modulus: to_natural(&modulus),
    })
}

trait ModFloorPos {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt;
}

impl ModFloorPos for BigInt {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

fn to_natural(x: &BigInt) -> Natural {
    x.to_biguint().expect("non-negative by construction")
}

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<Natural>) -> Result<Self> {
        to_rational(numerator.into(), &denominator.into())
    }

    pub fn from_natural(n: &Natural) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n.clone())))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> Natural {
        to_natural(self.0.denom())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Largest integer not above this value.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Compares against an integer without building a second rational.
    pub fn cmp_natural(&self, n: &Natural) -> Ordering {
        let lhs = self.0.numer();
        let rhs = BigInt::from(n.clone()) * self.0.denom();
        lhs.cmp(&rhs)
    }
}

/// Builds `num/den` in lowest terms; the sign lives on the numerator.
pub fn to_rational(num: BigInt, den: &Natural) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational(BigRational::new(
        num,
        BigInt::from_biguint(Sign::Plus, den.clone()),
    )))
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);
