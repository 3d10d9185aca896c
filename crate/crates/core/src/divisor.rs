//! The formal divisor ring of Milnor and Orlik.
//!
//! `Λ_j` stands for the divisor of `t^j - 1`, i.e. the formal sum of all
//! `j`-th roots of unity. Products obey `Λ_a Λ_b = gcd(a, b) Λ_{lcm(a, b)}`,
//! and `Λ_1` is the multiplicative identity, so the constant term of a
//! divisor is stored as the coefficient of `Λ_1`.
//!
//! A divisor `Σ c_j Λ_j` with integer coefficients describes the rational
//! function `∏ (t^j - 1)^{c_j} = ∏_m Φ_m(t)^{e_m}` with `e_m = Σ_{m | j} c_j`.
//! Values at `t = ±1` are read off the cyclotomic exponents directly, so the
//! polynomial is never expanded on the main path.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, prime_power_base, Rational};
use crate::error::{Error, Result};

/// Element `Σ c_j Λ_j` of the divisor ring, with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DivisorExpr {
    terms: BTreeMap<u64, Rational>,
}

impl DivisorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(1, c)
    }

    /// `Λ_j`.
    pub fn lambda(j: u64) -> Self {
        Self::term(j, Rational::one())
    }

    /// `c · Λ_j`; panics on `j = 0`.
    pub fn term(j: u64, c: Rational) -> Self {
        assert!(j > 0, "divisor index must be positive");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(j, c);
        }
        DivisorExpr { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut out = DivisorExpr::zero();
        for (j, c) in terms {
            out.add_term(j, c);
        }
        out
    }

    fn add_term(&mut self, j: u64, c: Rational) {
        assert!(j > 0, "divisor index must be positive");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(j).or_insert_with(Rational::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&j);
        }
    }

    /// Nonzero terms in ascending index order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&j, c)| (j, c))
    }

    pub fn coeff(&self, j: u64) -> Rational {
        self.terms.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `Λ_1`.
    pub fn constant_term(&self) -> Rational {
        self.coeff(1)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DivisorExpr::from_terms(self.terms().map(|(j, x)| (j, x * c)))
    }

    /// Product under `Λ_a Λ_b = gcd(a, b) Λ_{lcm(a, b)}`; fails only if an index overflows.
    pub fn try_mul(&self, other: &DivisorExpr) -> Result<DivisorExpr> {
        let mut out = DivisorExpr::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let g = a.gcd(&b);
                let l = (a / g)
                    .checked_mul(b)
                    .ok_or_else(|| Error::Resource(format!("lcm({a}, {b}) exceeds 64 bits")))?;
                out.add_term(l, &(ca * cb) * &Rational::from_integer(g));
            }
        }
        Ok(out)
    }

    /// Integer coefficients as `i64`, or an error naming the first bad one.
    pub fn integer_terms(&self) -> Result<Vec<(u64, i64)>> {
        self.terms()
            .map(|(j, c)| {
                c.to_i64().map(|c| (j, c)).ok_or_else(|| {
                    Error::NonLinkDivisor(format!(
                        "coefficient {c} of L{j} is not a machine integer"
                    ))
                })
            })
            .collect()
    }
}

impl Add for DivisorExpr {
    type Output = DivisorExpr;
    fn add(mut self, rhs: DivisorExpr) -> DivisorExpr {
        for (j, c) in rhs.terms {
            self.add_term(j, c);
        }
        self
    }
}

impl Neg for DivisorExpr {
    type Output = DivisorExpr;
    fn neg(self) -> DivisorExpr {
        DivisorExpr {
            terms: self.terms.into_iter().map(|(j, c)| (j, -c)).collect(),
        }
    }
}

impl Sub for DivisorExpr {
    type Output = DivisorExpr;
    fn sub(self, rhs: DivisorExpr) -> DivisorExpr {
        self + (-rhs)
    }
}

impl Mul for &DivisorExpr {
    type Output = DivisorExpr;

    /// Panics if an lcm index overflows `u64`; use [`DivisorExpr::try_mul`] otherwise.
    fn mul(self, rhs: &DivisorExpr) -> DivisorExpr {
        self.try_mul(rhs).expect("divisor index overflow")
    }
}

impl Mul for DivisorExpr {
    type Output = DivisorExpr;
    fn mul(self, rhs: DivisorExpr) -> DivisorExpr {
        &self * &rhs
    }
}

/// Canonical text form, highest index first, constant last: `L6 - L3 - L2 + 1`.
impl fmt::Display for DivisorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, (&j, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (pos, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if j == 1 {
                write!(f, "{mag}")?;
            } else if mag == Rational::one() {
                write!(f, "L{j}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}L{j}")?;
            } else {
                write!(f, "({mag})L{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorExpr({self})")
    }
}

impl FromStr for DivisorExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("cannot parse divisor '{s}'"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        if compact == "0" {
            return Ok(DivisorExpr::zero());
        }
        // split into signed chunks, keeping '/' and parentheses inside a chunk
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        let mut depth = 0usize;
        for ch in compact.chars() {
            match ch {
                '+' | '-' if depth == 0 => {
                    if !current.is_empty() {
                        chunks.push((negative, std::mem::take(&mut current)));
                    } else if !chunks.is_empty() || negative {
                        return Err(bad());
                    }
                    negative = ch == '-';
                }
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(bad)?;
                    current.push(ch);
                }
                _ => current.push(ch),
            }
        }
        if current.is_empty() || depth != 0 {
            return Err(bad());
        }
        chunks.push((negative, current));

        let mut out = DivisorExpr::zero();
        for (negative, chunk) in chunks {
            let (coeff_text, index) = match chunk.split_once('L') {
                Some((c, j)) => (c, j.parse::<u64>().map_err(|_| bad())?),
                None => (chunk.as_str(), 1),
            };
            if index == 0 {
                return Err(bad());
            }
            let coeff_text = coeff_text
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .unwrap_or(coeff_text);
            let c = if coeff_text.is_empty() {
                if index == 1 {
                    return Err(bad());
                }
                Rational::one()
            } else {
                coeff_text.parse::<Rational>().map_err(|_| bad())?
            };
            out.add_term(index, if negative { -c } else { c });
        }
        Ok(out)
    }
}

impl Serialize for DivisorExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DivisorExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `∏ (Λ_{u_i} / v_i - 1)`, the divisor of the characteristic polynomial of a
/// weighted homogeneous link whose ratios `d / w_i` reduce to `u_i / v_i`.
///
/// Intermediate coefficients may be fractional; the final product must be
/// integral, otherwise the ratios cannot come from an isolated singularity.
pub fn milnor_orlik_divisor(ratios: &[(u64, u64)]) -> Result<DivisorExpr> {
    let mut acc = DivisorExpr::one();
    for &(u, v) in ratios {
        if u == 0 || v == 0 {
            return Err(Error::domain(format!("ratio {u}/{v} must be positive")));
        }
        if u.gcd(&v) != 1 {
            return Err(Error::domain(format!(
                "ratio {u}/{v} is not in lowest terms"
            )));
        }
        let factor = DivisorExpr::term(u, Rational::new(1, v)?) - DivisorExpr::one();
        acc = acc.try_mul(&factor)?;
    }
    if let Some((j, c)) = acc.terms().find(|(_, c)| !c.is_integer()) {
        return Err(Error::NonLinkDivisor(format!(
            "coefficient {c} of L{j} in {acc} is not an integer"
        )));
    }
    Ok(acc)
}

/// Exponents `e_m` in `Δ(t) = ∏ Φ_m(t)^{e_m}`; absent entries are zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, Serialize, Deserialize)]
pub struct CyclotomicExponents {
    exps: BTreeMap<u64, u64>,
}

impl CyclotomicExponents {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut exps = BTreeMap::new();
        for (m, e) in pairs {
            assert!(m > 0, "cyclotomic index must be positive");
            if e > 0 {
                *exps.entry(m).or_insert(0) += e;
            }
        }
        CyclotomicExponents { exps }
    }

    pub fn get(&self, m: u64) -> u64 {
        self.exps.get(&m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.exps.iter().map(|(&m, &e)| (m, e))
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Degree `Σ e_m φ(m)` of the polynomial.
    pub fn degree(&self) -> u128 {
        self.iter()
            .map(|(m, e)| euler_phi(m) as u128 * e as u128)
            .sum()
    }
}

/// Cyclotomic exponents of an integral divisor via `t^j - 1 = ∏_{m | j} Φ_m(t)`.
pub fn to_cyclotomic(d: &DivisorExpr) -> Result<CyclotomicExponents> {
    let terms = d.integer_terms()?;
    let mut sums: BTreeMap<u64, i64> = BTreeMap::new();
    for &(j, c) in &terms {
        for m in divisors(j) {
            *sums.entry(m).or_insert(0) += c;
        }
    }
    let mut exps = BTreeMap::new();
    for (m, e) in sums {
        match e {
            e if e < 0 => {
                return Err(Error::NotPolynomial {
                    index: m,
                    exponent: e,
                })
            }
            0 => {}
            e => {
                exps.insert(m, e as u64);
            }
        }
    }
    Ok(CyclotomicExponents { exps })
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Inverse of [`to_cyclotomic`]: `c_j = Σ_{j | k} μ(k / j) e_k`.
pub fn from_cyclotomic(e: &CyclotomicExponents) -> DivisorExpr {
    let mut out = DivisorExpr::zero();
    for (k, ek) in e.iter() {
        for j in divisors(k) {
            let mu = mobius(k / j);
            if mu != 0 {
                out.add_term(j, Rational::from_integer(mu * ek as i64));
            }
        }
    }
    out
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `Φ_m(1)`: 0 for `m = 1`, `p` for `m = p^k`, 1 otherwise.
pub fn phi_at_one(m: u64) -> u64 {
    match m {
        0 => panic!("cyclotomic index must be positive"),
        1 => 0,
        m => prime_power_base(m).unwrap_or(1),
    }
}

/// `Φ_m(-1)`: −2 for `m = 1`, 0 for `m = 2`, 2 for `m = 2^k` (`k >= 2`),
/// `p` for `m = 2p^k` with `p` an odd prime, 1 otherwise.
pub fn phi_at_minus_one(m: u64) -> i64 {
    match m {
        0 => panic!("cyclotomic index must be positive"),
        1 => -2,
        2 => 0,
        m if m.is_power_of_two() => 2,
        m if m % 2 == 0 && (m / 2) % 2 == 1 => prime_power_base(m / 2).unwrap_or(1) as i64,
        _ => 1,
    }
}

/// `|Δ(1)|`; zero exactly when `Φ_1` divides `Δ`.
pub fn eval_at_one(e: &CyclotomicExponents) -> BigUint {
    let mut acc = BigUint::one();
    for (m, k) in e.iter() {
        let v = phi_at_one(m);
        if v == 0 {
            return BigUint::zero();
        }
        if v != 1 {
            acc *= BigUint::from(v).pow(k as u32);
        }
    }
    acc
}

/// `Δ(-1)` with its sign; zero exactly when `Φ_2` divides `Δ`.
pub fn eval_at_minus_one(e: &CyclotomicExponents) -> BigInt {
    let mut acc = BigInt::one();
    for (m, k) in e.iter() {
        let v = phi_at_minus_one(m);
        if v == 0 {
            return BigInt::zero();
        }
        if v != 1 {
            acc *= BigInt::from(v).pow(k as u32);
        }
    }
    acc
}

/// Middle Betti number `(-1)^n + Σ_{j > 1} c_j` of the link of an `n`-variable
/// singularity, cross-checked against the multiplicity of `Φ_1` in `Δ`.
pub fn betti_from_divisor(d: &DivisorExpr, n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("variable count must be positive"));
    }
    let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
    let terms = d.integer_terms()?;
    let sum: i64 = sign
        + terms
            .iter()
            .filter(|(j, _)| *j > 1)
            .map(|(_, c)| c)
            .sum::<i64>();
    let e1 = to_cyclotomic(d)?.get(1) as i64;
    if sum != e1 {
        return Err(Error::consistency(format!(
            "Betti sum {sum} for {d} with n = {n} disagrees with the Phi_1 exponent {e1}"
        )));
    }
    Ok(e1 as u64)
}

fn mul_by_binomial(poly: &mut Vec<BigInt>, d: usize) {
    // poly * (t^d - 1)
    let old = std::mem::take(poly);
    let mut out = vec![BigInt::zero(); old.len() + d];
    for (i, c) in old.into_iter().enumerate() {
        out[i] -= &c;
        out[i + d] += c;
    }
    *poly = out;
}

fn div_by_binomial(poly: &mut Vec<BigInt>, d: usize) {
    // exact division by (t^d - 1): q_i = q_{i-d} - p_i, from the bottom up
    let n = poly.len() - d;
    let mut q = vec![BigInt::zero(); n];
    for i in 0..n {
        let mut v = -poly[i].clone();
        if i >= d {
            v += &q[i - d];
        }
        q[i] = v;
    }
    debug_assert!((n..poly.len()).all(|i| {
        let from_q = if i >= d {
            q[i - d].clone()
        } else {
            BigInt::zero()
        };
        let from_low = if i < n { -q[i].clone() } else { BigInt::zero() };
        from_q + from_low == poly[i]
    }));
    *poly = q;
}

/// Coefficients of `Φ_m`, constant term first, from `Φ_m = ∏_{d | m} (t^d - 1)^{μ(m/d)}`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m > 0, "cyclotomic index must be positive");
    let mut poly = vec![BigInt::one()];
    let divs = divisors(m);
    for &d in &divs {
        if mobius(m / d) == 1 {
            mul_by_binomial(&mut poly, d as usize);
        }
    }
    for &d in &divs {
        if mobius(m / d) == -1 {
            div_by_binomial(&mut poly, d as usize);
        }
    }
    poly
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Dense expansion of `∏ Φ_m^{e_m}`, constant term first.
pub fn expand_polynomial(e: &CyclotomicExponents, max_degree: u64) -> Result<Vec<BigInt>> {
    let degree = e.degree();
    if degree > max_degree as u128 {
        return Err(Error::Resource(format!(
            "polynomial degree {degree} exceeds the bound {max_degree}"
        )));
    }
    let mut poly = vec![BigInt::one()];
    for (m, k) in e.iter() {
        let phi = cyclotomic_polynomial(m);
        for _ in 0..k {
            poly = poly_mul(&poly, &phi);
        }
    }
    Ok(poly)
}

/// Evaluate an integer polynomial (constant term first) at an integer point.
pub fn eval_poly(coeffs: &[BigInt], t: i64) -> BigInt {
    let t = BigInt::from(t);
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * &t + c)
}

/// `|Δ(1)|` as `u64` when it fits, for reporting.
pub fn torsion_u64(e: &CyclotomicExponents) -> Option<u64> {
    eval_at_one(e).to_u64()
}

pub(crate) fn abs_mod(v: &BigInt, m: u64) -> u64 {
    (v.abs() % BigInt::from(m))
        .to_u64()
        .expect("residue fits u64")
}
