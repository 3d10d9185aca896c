//! Exact integer and rational arithmetic, Bernoulli numbers and the orders
//! of the groups `bP_n` of homotopy spheres bounding parallelizable manifolds.
//!
//! Bernoulli numbers use the Kervaire–Milnor indexing: `B_1 = 1/6`,
//! `B_2 = 1/30`, `B_3 = 1/42`, ... which is `|B_{2m}|` in the modern
//! convention. With this indexing `|bP_8| = 28`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::domain("rational with zero denominator"));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::domain(format!("invalid rational '{s}'")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;

    /// Panics on division by zero.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

/// Greatest common divisor of a nonempty list, at least one entry nonzero.
pub fn gcd_many(xs: &[u64]) -> Result<u64> {
    if xs.iter().all(|&x| x == 0) {
        return Err(Error::domain("gcd of an empty or all-zero list"));
    }
    Ok(xs.iter().fold(0u64, |g, &x| g.gcd(&x)))
}

/// Least common multiple of a nonempty list of positive integers, without overflow.
pub fn lcm_many(xs: &[u64]) -> Result<BigUint> {
    if xs.is_empty() || xs.contains(&0) {
        return Err(Error::domain(
            "lcm needs a nonempty list of positive integers",
        ));
    }
    Ok(xs
        .iter()
        .fold(BigUint::one(), |l, &x| l.lcm(&BigUint::from(x))))
}

/// `lcm_many` when the result is known to fit a machine word.
pub fn lcm_u64(xs: &[u64]) -> Result<u64> {
    lcm_many(xs)?
        .to_u64()
        .ok_or_else(|| Error::Resource(format!("lcm of {xs:?} exceeds 64 bits")))
}

/// Modern Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`) from
/// `sum_{k=0}^{j} C(j+1, k) B_k = 0`.
fn modern_bernoulli_table(n: usize) -> Vec<Rational> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(Rational::one());
    for j in 1..=n {
        // binomial row C(j+1, k) built incrementally
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            acc = acc + Rational::from_integer(binom.clone()) * b.clone();
            binom = binom * BigInt::from(j + 1 - k) / BigInt::from(k + 1);
        }
        let next = -(acc / Rational::from_integer(j as i64 + 1));
        table.push(next);
    }
    table
}

/// `B_m` in Kervaire–Milnor indexing, i.e. `|B_{2m}|` in the modern one.
pub fn bernoulli(m: u32) -> Result<Rational> {
    if m == 0 {
        return Err(Error::domain("Bernoulli index must be at least 1"));
    }
    let table = modern_bernoulli_table(2 * m as usize);
    Ok(table[2 * m as usize].abs())
}

/// Order of the cyclic group `bP_{4m}`, `m >= 2`:
/// `2^{2m-2} (2^{2m-1} - 1) numerator(4 B_m / m)`.
pub fn bp_order_4m(m: u32) -> Result<BigUint> {
    if m < 2 {
        return Err(Error::domain(format!(
            "bP_4m order formula needs m >= 2, got m = {m}"
        )));
    }
    let b = bernoulli(m)?;
    let q = Rational::from_integer(4) * b / Rational::from_integer(m as i64);
    let numer = q
        .numer()
        .to_biguint()
        .ok_or_else(|| Error::consistency("negative numerator of 4B_m/m"))?;
    let two = BigUint::from(2u32);
    let front = two.pow(2 * m - 2);
    let mersenne = two.pow(2 * m - 1) - BigUint::one();
    Ok(front * mersenne * numer)
}

/// What is known about `bP_{4m+2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BpGroupStatus {
    Cyclic(BigUint),
    Trivial,
    Z2,
    ZeroOrZ2Unknown,
}

/// Status of `bP_{4m+2}`: `Z_2` unless `4m+2 = 2^i - 2`; trivial for
/// `m in {1, 3, 7, 15}`; otherwise undecided here.
pub fn bp_status_4m2(m: u32) -> Result<BpGroupStatus> {
    if m == 0 {
        return Err(Error::domain("bP_{4m+2} needs m >= 1"));
    }
    if matches!(m, 1 | 3 | 7 | 15) {
        return Ok(BpGroupStatus::Trivial);
    }
    // 4m + 2 = 2^i - 2  <=>  m + 1 = 2^{i-2}
    if (m as u64 + 1).is_power_of_two() {
        Ok(BpGroupStatus::ZeroOrZ2Unknown)
    } else {
        Ok(BpGroupStatus::Z2)
    }
}

/// `bP_n` for any subscript `n >= 5`: trivial for odd `n`, the cyclic
/// order for `n = 4m`, the `bP_{4m+2}` status otherwise.
pub fn bp_group(n: u32) -> Result<BpGroupStatus> {
    if n < 5 {
        return Err(Error::domain(format!(
            "bP_n is only tabulated for n >= 5, got {n}"
        )));
    }
    match n % 4 {
        0 => Ok(BpGroupStatus::Cyclic(bp_order_4m(n / 4)?)),
        2 => bp_status_4m2((n - 2) / 4),
        _ => Ok(BpGroupStatus::Trivial),
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some(p)` when `n = p^k` for a prime `p` and `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut r = n;
            while r % p == 0 {
                r /= p;
            }
            return (r == 1).then_some(p);
        }
        p += 1;
    }
    Some(n)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_many(&[6, 10, 15]).unwrap(), 1);
        assert_eq!(gcd_many(&[2296, 101]).unwrap(), 1);
        assert_eq!(gcd_many(&[3532, 17660]).unwrap(), 3532);
        assert_eq!(gcd_many(&[0, 12]).unwrap(), 12);
        assert!(gcd_many(&[0, 0]).is_err());
        assert!(gcd_many(&[]).is_err());
    }

    #[test]
    fn lcm_does_not_overflow() {
        let big = lcm_many(&[u64::MAX, u64::MAX - 1]).unwrap();
        assert_eq!(big, BigUint::from(u64::MAX) * BigUint::from(u64::MAX - 1));
        assert!(lcm_u64(&[u64::MAX, u64::MAX - 1]).is_err());
        assert_eq!(lcm_u64(&[5, 3, 2, 2, 2]).unwrap(), 30);
        assert!(lcm_many(&[0, 3]).is_err());
    }

    #[test]
    fn rationals_are_reduced() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert!(Rational::new(1, 0).is_err());
        assert_eq!("10/4".parse::<Rational>().unwrap(), q(5, 2));
        assert_eq!("-7".parse::<Rational>().unwrap(), Rational::from(-7));
    }

    #[test]
    fn bernoulli_small() {
        assert_eq!(bernoulli(1).unwrap(), q(1, 6));
        assert_eq!(bernoulli(2).unwrap(), q(1, 30));
        assert_eq!(bernoulli(3).unwrap(), q(1, 42));
        assert_eq!(bernoulli(4).unwrap(), q(1, 30));
        assert_eq!(bernoulli(5).unwrap(), q(5, 66));
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn bp_orders() {
        assert_eq!(bp_order_4m(2).unwrap(), BigUint::from(28u32));
        assert_eq!(bp_order_4m(3).unwrap(), BigUint::from(992u32));
        assert_eq!(bp_order_4m(4).unwrap(), BigUint::from(8128u32));
        assert!(bp_order_4m(1).is_err());
    }

    #[test]
    fn bp_4m2_status() {
        assert_eq!(bp_status_4m2(2).unwrap(), BpGroupStatus::Z2);
        assert_eq!(bp_status_4m2(1).unwrap(), BpGroupStatus::Trivial);
        for m in [3, 7, 15] {
            assert_eq!(bp_status_4m2(m).unwrap(), BpGroupStatus::Trivial);
        }
        assert_eq!(bp_status_4m2(31).unwrap(), BpGroupStatus::ZeroOrZ2Unknown);
        assert_eq!(bp_status_4m2(63).unwrap(), BpGroupStatus::ZeroOrZ2Unknown);
        assert_eq!(bp_status_4m2(4).unwrap(), BpGroupStatus::Z2);
    }

    #[test]
    fn bp_group_by_subscript() {
        assert_eq!(
            bp_group(8).unwrap(),
            BpGroupStatus::Cyclic(BigUint::from(28u32))
        );
        assert_eq!(bp_group(10).unwrap(), BpGroupStatus::Z2);
        assert_eq!(bp_group(6).unwrap(), BpGroupStatus::Trivial);
        assert_eq!(bp_group(9).unwrap(), BpGroupStatus::Trivial);
        assert!(bp_group(4).is_err());
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
        assert_eq!(prime_power_base(97), Some(97));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert!(is_prime(883) && !is_prime(2296));
    }
}
