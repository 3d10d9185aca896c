//! Links of weighted homogeneous singularities.
//!
//! A Brieskorn–Pham link is cut out by `z_0^{a_0} + ... + z_n^{a_n} = 0` on
//! the unit sphere of `C^{n+1}`. More general links only carry their weights
//! and degree here: quasi-smoothness of the underlying polynomial is not
//! checked, so callers vouch for it.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_many, lcm_u64, Rational};
use crate::divisor::{milnor_orlik_divisor, DivisorExpr};
use crate::error::{Error, Result};

/// Default cap on the number of lattice points the signature count may visit.
pub const DEFAULT_SIGNATURE_BUDGET: u64 = 10_000_000;

/// Parse a comma-separated list of positive decimal integers, preserving order.
pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| Error::domain(format!("'{t}' is not a nonnegative integer in '{s}'")))
        })
        .collect()
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Brieskorn–Pham exponents, each at least 2, at least three of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.len() < 3 {
            return Err(Error::domain(format!(
                "need at least 3 exponents, got {}",
                a.len()
            )));
        }
        if let Some(&bad) = a.iter().find(|&&x| x < 2) {
            return Err(Error::domain(format!("exponent {bad} is below 2")));
        }
        Ok(ExponentVector(a))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `∏ (a_i - 1)`.
    pub fn milnor_number(&self) -> u128 {
        self.0.iter().map(|&a| (a - 1) as u128).product()
    }
}

impl TryFrom<Vec<u64>> for ExponentVector {
    type Error = Error;
    fn try_from(a: Vec<u64>) -> Result<Self> {
        ExponentVector::new(a)
    }
}

impl From<ExponentVector> for Vec<u64> {
    fn from(a: ExponentVector) -> Vec<u64> {
        a.0
    }
}

impl FromStr for ExponentVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ExponentVector::new(parse_list(s)?)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

/// Weights, degree and reduced ratios `d / w_i = u_i / v_i` of a link.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinkDescriptor {
    weights: Vec<u64>,
    degree: u64,
    ratios: Vec<(u64, u64)>,
}

impl LinkDescriptor {
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn ratios(&self) -> &[(u64, u64)] {
        &self.ratios
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// Real dimension `2 nvars - 3` of the link.
    pub fn link_dim(&self) -> u64 {
        2 * self.nvars() as u64 - 3
    }

    /// Divisor of the characteristic polynomial of the monodromy.
    pub fn divisor(&self) -> Result<DivisorExpr> {
        milnor_orlik_divisor(&self.ratios)
    }
}

/// `d = lcm(a_i)`, `w_i = d / a_i`, ratios `(a_i, 1)`.
pub fn link_from_exponents(a: &ExponentVector) -> Result<LinkDescriptor> {
    let degree = lcm_u64(a.as_slice())?;
    Ok(LinkDescriptor {
        weights: a.as_slice().iter().map(|&x| degree / x).collect(),
        degree,
        ratios: a.as_slice().iter().map(|&x| (x, 1)).collect(),
    })
}

/// Link data from weights and degree. Weights must be jointly coprime and
/// each strictly below the degree.
pub fn link_from_weights(w: &[u64], d: u64) -> Result<LinkDescriptor> {
    if w.len() < 3 {
        return Err(Error::domain(format!(
            "need at least 3 weights, got {}",
            w.len()
        )));
    }
    if d == 0 || w.contains(&0) {
        return Err(Error::domain("weights and degree must be positive"));
    }
    let g = gcd_many(w)?;
    if g != 1 {
        return Err(Error::domain(format!(
            "weights ({}) are not reduced: common factor {g}",
            join(w)
        )));
    }
    if let Some(&big) = w.iter().find(|&&x| x >= d) {
        return Err(Error::domain(format!(
            "weight {big} is not below the degree {d}"
        )));
    }
    let ratios = w
        .iter()
        .map(|&x| {
            let g = d.gcd(&x);
            (d / g, x / g)
        })
        .collect();
    Ok(LinkDescriptor {
        weights: w.to_vec(),
        degree: d,
        ratios,
    })
}

/// Milnor number `∏ (d - w_i) / w_i`, which must be an integer.
pub fn milnor_number(l: &LinkDescriptor) -> Result<u128> {
    let mut mu = Rational::one();
    for &w in l.weights() {
        mu = mu * Rational::new(l.degree() as i64 - w as i64, w as i64)?;
    }
    mu.to_integer()
        .and_then(|n| u128::try_from(n).ok())
        .ok_or_else(|| {
            Error::domain(format!(
                "inconsistent weighted-homogeneous data: Milnor number {mu} for weights ({}) degree {}",
                join(l.weights()),
                l.degree()
            ))
        })
}

/// The link is `(nvars - 2)`-connected.
pub fn connectivity(l: &LinkDescriptor) -> usize {
    l.nvars() - 2
}

/// Brieskorn's graph on the exponents: `a_i` and `a_j` are joined iff `gcd(a_i, a_j) > 1`.
#[derive(Clone, Debug)]
pub struct BrieskornGraph {
    labels: Vec<u64>,
    component: Vec<usize>,
}

impl BrieskornGraph {
    pub fn new(a: &ExponentVector) -> Self {
        let labels = a.as_slice().to_vec();
        let n = labels.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            let mut i = i;
            while parent[i] != r {
                let next = parent[i];
                parent[i] = r;
                i = next;
            }
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                if labels[i].gcd(&labels[j]) > 1 {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let component = (0..n).map(|i| find(&mut parent, i)).collect();
        BrieskornGraph { labels, component }
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        (0..self.labels.len()).all(|j| j == i || self.labels[i].gcd(&self.labels[j]) == 1)
    }

    pub fn isolated(&self) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&i| self.is_isolated(i))
            .collect()
    }

    /// Vertices of the component holding the even labels, empty if none is even.
    pub fn even_component(&self) -> Vec<usize> {
        match self.labels.iter().position(|x| x % 2 == 0) {
            None => Vec::new(),
            Some(e) => (0..self.labels.len())
                .filter(|&i| self.component[i] == self.component[e])
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereCriterion {
    /// At least two isolated vertices.
    Condition1,
    /// One isolated vertex and an even component, apart from it, with an odd
    /// number of vertices whose pairwise gcds are all 2.
    Condition2,
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySphereTest {
    pub holds: bool,
    pub reason: SphereCriterion,
}

/// Brieskorn's graph criterion for `L(a)` to be an integral homology sphere.
///
/// In the second condition the even component must not be the isolated
/// vertex itself: `(2,3,3,3)` has the isolated vertex 2 and `|Δ(1)| = 4`.
pub fn integral_homology_sphere(a: &ExponentVector) -> HomologySphereTest {
    let g = BrieskornGraph::new(a);
    let isolated = g.isolated();
    let verdict = |reason| HomologySphereTest {
        holds: reason != SphereCriterion::Fails,
        reason,
    };
    if isolated.len() >= 2 {
        return verdict(SphereCriterion::Condition1);
    }
    if isolated.len() == 1 {
        let ev = g.even_component();
        let labels = a.as_slice();
        let ok = !ev.is_empty()
            && !ev.contains(&isolated[0])
            && ev.len() % 2 == 1
            && ev
                .iter()
                .enumerate()
                .all(|(k, &i)| ev[k + 1..].iter().all(|&j| labels[i].gcd(&labels[j]) == 2));
        if ok {
            return verdict(SphereCriterion::Condition2);
        }
    }
    verdict(SphereCriterion::Fails)
}

/// Signature `σ₊ - σ₋` of the Milnor fibre of a Brieskorn–Pham singularity,
/// by counting lattice points `0 < x_i < a_i` according to whether
/// `Σ x_i / a_i mod 2` lies in `(0, 1)` or `(1, 2)`.
///
/// Only defined when the link dimension is `3 mod 4`; the count visits
/// `∏ (a_i - 1)` points and fails if that exceeds `budget`.
pub fn signature(a: &ExponentVector, budget: u64) -> Result<i64> {
    let n = a.len();
    if (2 * n - 3) % 4 != 3 {
        return Err(Error::domain(format!(
            "signature needs link dimension 3 mod 4, got {} for {n} variables",
            2 * n - 3
        )));
    }
    let mu = a.milnor_number();
    if mu > budget as u128 {
        return Err(Error::BudgetExceeded { needed: mu, budget });
    }
    // scale by D = lcm(a): the sum becomes an integer S, compared with D and 2D
    let d = lcm_u64(a.as_slice())? as u128;
    let steps: Vec<u128> = a.as_slice().iter().map(|&x| d / x as u128).collect();
    let period = 2 * d;
    let mut digits = vec![1u64; n];
    let mut sum: u128 = steps.iter().sum::<u128>() % period;
    let mut plus = 0i64;
    let mut minus = 0i64;
    loop {
        if sum % d == 0 {
            return Err(Error::domain(format!(
                "lattice point {digits:?} of ({a}) sits on an integer boundary; the link is not a rational homology sphere"
            )));
        }
        if sum < d {
            plus += 1;
        } else {
            minus += 1;
        }
        // mixed-radix odometer over 1..a_i
        let mut i = 0;
        loop {
            if i == n {
                return Ok(plus - minus);
            }
            let a_i = a.as_slice()[i];
            if digits[i] + 1 < a_i {
                digits[i] += 1;
                sum = (sum + steps[i]) % period;
                break;
            }
            let back = steps[i] * (a_i as u128 - 2) % period;
            sum = (sum + period - back) % period;
            digits[i] = 1;
            i += 1;
        }
    }
}
