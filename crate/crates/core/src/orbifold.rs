//! Weighted projective spaces and the hypersurface orbifolds of links.
//!
//! For weights `w`, `d_i` is the gcd of all weights but `w_i`. The orbifold
//! Picard group of `P(w)` is generated by `O(a_w)` with `a_w = lcm(d_i)`; the
//! ordinary Picard group by `O(υ_w)` with `υ_w = lcm(w_i)`. Normalization
//! divides out the `d_i` until the space is well-formed.

use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{divisors, gcd_many, lcm_u64};
use crate::error::{Error, Result};
use crate::links::{link_from_exponents, ExponentVector};

/// Largest coordinate count handled by the stratum enumeration.
pub const MAX_STRATA_VARS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(w: Vec<u64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::domain("weight vector is empty"));
        }
        if w.contains(&0) {
            return Err(Error::domain("weights must be positive"));
        }
        Ok(WeightVector(w))
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

    /// `|w| = Σ w_i`.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_reduced(&self) -> bool {
        gcd_many(&self.0) == Ok(1)
    }

    /// Divide out the common factor of all weights.
    pub fn reduced(&self) -> WeightVector {
        let g = gcd_many(&self.0).expect("weights are positive");
        WeightVector(self.0.iter().map(|&x| x / g).collect())
    }

    /// `d_i = gcd(w_0, ..., ŵ_i, ..., w_n)`; for a single weight, `d_0 = 0`.
    pub fn complementary_gcds(&self) -> Vec<u64> {
        (0..self.0.len())
            .map(|i| {
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(0u64, |g, (_, &x)| g.gcd(&x))
            })
            .collect()
    }

    pub fn is_well_formed(&self) -> bool {
        self.complementary_gcds().iter().all(|&d| d == 1)
    }
}

/// Well-formed model of `P(w)`: while some `q = d_i > 1`, divide every weight
/// except `w_i` by `q`. The input is reduced first.
pub fn normalize_weights(w: &WeightVector) -> WeightVector {
    let mut cur = w.reduced().0;
    if cur.len() < 2 {
        return WeightVector(cur);
    }
    loop {
        let mut changed = false;
        for i in 0..cur.len() {
            let q = cur
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(0u64, |g, (_, &x)| g.gcd(&x));
            if q > 1 {
                for (j, x) in cur.iter_mut().enumerate() {
                    if j != i {
                        *x /= q;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            return WeightVector(cur);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldProfile {
    pub weights: Vec<u64>,
    pub reduced: Vec<u64>,
    pub normalized: Vec<u64>,
    pub d_i: Vec<u64>,
    pub a_w: u64,
    pub upsilon_w: u64,
    pub well_formed: bool,
    /// Orbifold Fano index `|w̄|` of `P(w)`.
    pub fano_index: u64,
    pub degree: Option<u64>,
    /// `d - |w|`, the twist of the dualizing sheaf of a degree-`d` hypersurface.
    pub canonical_degree: Option<i64>,
    /// Whether `υ_w` divides `d`, which bounds the hypersurface order and
    /// makes the hypersurface Cartier so `d - |w|` applies.
    pub adjunction_safe: Option<bool>,
}

pub fn profile(w: &WeightVector, d: Option<u64>) -> Result<OrbifoldProfile> {
    if d == Some(0) {
        return Err(Error::domain("degree must be positive"));
    }
    let reduced = w.reduced();
    let d_i = reduced.complementary_gcds();
    let a_w = lcm_u64(&d_i.iter().map(|&x| x.max(1)).collect::<Vec<_>>())?;
    let upsilon_w = lcm_u64(reduced.as_slice())?;
    let normalized = normalize_weights(&reduced);
    Ok(OrbifoldProfile {
        weights: w.as_slice().to_vec(),
        reduced: reduced.as_slice().to_vec(),
        fano_index: normalized.total(),
        normalized: normalized.0,
        well_formed: d_i.iter().all(|&x| x == 1),
        d_i,
        a_w,
        upsilon_w,
        degree: d,
        canonical_degree: d.map(|d| d as i64 - reduced.total() as i64),
        adjunction_safe: d.map(|d| d % upsilon_w == 0),
    })
}

impl OrbifoldProfile {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("profile serializes")
    }
}

/// Fano index of the branched cover `z_0^p + f = 0` over a hypersurface of
/// degree `d` in `P(w)`, together with the weights of the weighted projective
/// space it is isomorphic to as a variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchedFano {
    pub index: u64,
    pub variety_weights: Vec<u64>,
}

pub fn fano_index_branched(base_w: &WeightVector, base_d: u64, p: u64) -> Result<BranchedFano> {
    if p == 0 || base_d == 0 {
        return Err(Error::domain("p and the degree must be positive"));
    }
    let g = p.gcd(&base_d);
    if g != 1 {
        return Err(Error::NotCoprime {
            p,
            modulus: base_d,
            gcd: g,
            position: None,
        });
    }
    if !base_w.is_reduced() {
        return Err(Error::domain("base weights must be reduced"));
    }
    let normalized = normalize_weights(base_w);
    Ok(BranchedFano {
        index: normalized.total(),
        variety_weights: normalized.0,
    })
}

/// Coordinate stratum `{z_i = 0 for i outside support}` with nontrivial isotropy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumRecord {
    pub support: Vec<usize>,
    pub isotropy_order: u64,
    pub meets_link: bool,
}

/// Orbifold order of the hypersurface of a Brieskorn–Pham link and its
/// singular strata.
///
/// Every coordinate support `S` with `g = gcd{w_i : i in S} > 1` carries
/// isotropy `Z_g`; the diagonal equation restricted to `S` has nonzero
/// solutions exactly when `|S| >= 2`. Strata are reported once per closed
/// support `S = {i : g | w_i}`, largest support first.
pub fn bp_orbifold_order(a: &ExponentVector) -> Result<(u64, Vec<StratumRecord>)> {
    if a.len() > MAX_STRATA_VARS {
        return Err(Error::Resource(format!(
            "stratum enumeration handles at most {MAX_STRATA_VARS} coordinates, got {}",
            a.len()
        )));
    }
    let w = link_from_exponents(a)?.weights().to_vec();
    let mut candidates: Vec<u64> = w
        .iter()
        .flat_map(|&x| divisors(x))
        .filter(|&g| g > 1)
        .collect();
    candidates.sort_unstable();
    candidates.dedup();

    let mut strata = Vec::new();
    let mut order = 1u64;
    for g in candidates {
        let support: Vec<usize> = (0..w.len()).filter(|&i| w[i] % g == 0).collect();
        let closure_gcd = support.iter().fold(0u64, |acc, &i| acc.gcd(&w[i]));
        if closure_gcd != g || support.len() < 2 {
            continue;
        }
        order = order.lcm(&g);
        strata.push(StratumRecord {
            support,
            isotropy_order: g,
            meets_link: true,
        });
    }
    strata.sort_by(|x, y| {
        y.support
            .len()
            .cmp(&x.support.len())
            .then_with(|| x.support.cmp(&y.support))
    });
    Ok((order, strata))
}

pub fn strata_json(order: u64, strata: &[StratumRecord]) -> Value {
    json!({ "orbifold_order": order, "strata": strata })
}
