//! Diffeomorphism classification of homotopy spheres arising as links.
//!
//! In dimension `4m - 1` the class in `bP_{4m}` is read off the signature
//! of the Milnor fibre: `τ / 8` up to the sign `(-1)^m`, modulo `|bP_{4m}|`.
//! The generator convention follows the `(6k-1, 3, 2, ..., 2)` family, whose
//! `k`-th member is reported as class `k mod |bP_{4m}|`.
//!
//! In dimension `4m + 1` Levine's rule decides between the standard sphere
//! (`Δ(-1) ≡ ±1 mod 8`) and the Kervaire sphere (`Δ(-1) ≡ ±3 mod 8`).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{bp_order_4m, bp_status_4m2, BpGroupStatus, Rational};
use crate::divisor::{abs_mod, betti_from_divisor, eval_at_one, to_cyclotomic};
use crate::error::{Error, Result};
use crate::json::big_uint;
use crate::links::{integral_homology_sphere, link_from_exponents, signature, ExponentVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exotic {
    Yes,
    No,
    Unknown,
}

impl Exotic {
    pub fn as_str(self) -> &'static str {
        match self {
            Exotic::Yes => "yes",
            Exotic::No => "no",
            Exotic::Unknown => "unknown",
        }
    }
}

/// Verdict in dimension `4m + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KervaireVerdict {
    Standard,
    /// The Kervaire sphere; `exotic` says whether it differs from the standard one.
    Kervaire {
        exotic: Exotic,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SphereDetail {
    /// Class `k` in the cyclic group `bP_{4m}` of order `bp_order`; standard iff `k = 0`.
    BpClass {
        bp_order: BigUint,
        class: BigUint,
    },
    Kervaire(KervaireVerdict),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SphereClass {
    NotHomologySphere {
        dimension: u64,
        middle_betti: u64,
        /// `|Δ(1)|`, the order of the middle homology, when it is finite.
        torsion_order: Option<BigUint>,
    },
    HomotopySphere {
        dimension: u64,
        detail: SphereDetail,
    },
}

impl SphereClass {
    pub fn dimension(&self) -> u64 {
        match self {
            SphereClass::NotHomologySphere { dimension, .. }
            | SphereClass::HomotopySphere { dimension, .. } => *dimension,
        }
    }

    pub fn is_standard(&self) -> bool {
        match self {
            SphereClass::HomotopySphere { detail, .. } => match detail {
                SphereDetail::BpClass { class, .. } => class.is_zero(),
                SphereDetail::Kervaire(KervaireVerdict::Standard) => true,
                SphereDetail::Kervaire(KervaireVerdict::Kervaire { exotic }) => {
                    *exotic == Exotic::No
                }
            },
            SphereClass::NotHomologySphere { .. } => false,
        }
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            SphereClass::NotHomologySphere {
                middle_betti: 0, ..
            } => "rational-homology-sphere",
            SphereClass::NotHomologySphere { .. } => "not-a-sphere",
            SphereClass::HomotopySphere { detail, .. } => match detail {
                SphereDetail::BpClass { class, .. } if class.is_zero() => "standard",
                SphereDetail::BpClass { .. } => "exotic",
                SphereDetail::Kervaire(KervaireVerdict::Standard) => "standard",
                SphereDetail::Kervaire(KervaireVerdict::Kervaire { .. }) => "kervaire",
            },
        }
    }

    /// `{dimension, verdict, bp_group_order, class, kervaire, exotic}` plus
    /// Betti and torsion data for non-spheres.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "dimension": self.dimension(),
            "verdict": self.verdict(),
            "bp_group_order": Value::Null,
            "class": Value::Null,
            "kervaire": Value::Null,
            "exotic": Value::Null,
        });
        match self {
            SphereClass::NotHomologySphere {
                middle_betti,
                torsion_order,
                ..
            } => {
                v["middle_betti"] = json!(middle_betti);
                v["torsion_order"] = torsion_order.as_ref().map(big_uint).unwrap_or(Value::Null);
            }
            SphereClass::HomotopySphere { detail, .. } => match detail {
                SphereDetail::BpClass { bp_order, class } => {
                    v["bp_group_order"] = big_uint(bp_order);
                    v["class"] = big_uint(class);
                    v["exotic"] = json!(if class.is_zero() { "no" } else { "yes" });
                }
                SphereDetail::Kervaire(verdict) => {
                    let exotic = match verdict {
                        KervaireVerdict::Standard => Exotic::No,
                        KervaireVerdict::Kervaire { exotic } => *exotic,
                    };
                    v["kervaire"] = json!(matches!(verdict, KervaireVerdict::Kervaire { .. }));
                    v["exotic"] = json!(exotic.as_str());
                }
            },
        }
        v
    }
}

/// Class of a Brieskorn–Pham homotopy `(4m - 1)`-sphere in `bP_{4m}`, `m >= 2`.
pub fn classify_4m_minus_1(a: &ExponentVector, budget: u64) -> Result<SphereClass> {
    let nvars = a.len() as u64;
    let dimension = 2 * nvars - 3;
    if dimension % 4 != 3 || dimension < 7 {
        return Err(Error::domain(format!(
            "expected link dimension 4m - 1 with m >= 2, got {dimension}"
        )));
    }
    let m = (dimension + 1) / 4;
    let link = link_from_exponents(a)?;
    let divisor = link.divisor()?;
    let cyclo = to_cyclotomic(&divisor)?;
    let torsion = eval_at_one(&cyclo);
    let criterion = integral_homology_sphere(a);
    if criterion.holds != torsion.is_one() {
        return Err(Error::consistency(format!(
            "graph criterion ({:?}) disagrees with |Delta(1)| = {torsion} for ({a})",
            criterion.reason
        )));
    }
    if !criterion.holds {
        let middle_betti = betti_from_divisor(&divisor, a.len())?;
        return Ok(SphereClass::NotHomologySphere {
            dimension,
            middle_betti,
            torsion_order: (middle_betti == 0).then_some(torsion),
        });
    }
    let tau = signature(a, budget)?;
    if tau % 8 != 0 {
        return Err(Error::consistency(format!(
            "signature {tau} of homotopy sphere ({a}) is not divisible by 8"
        )));
    }
    let order = bp_order_4m(m as u32)?;
    let signed = if m % 2 == 0 { tau / 8 } else { -tau / 8 };
    let class = BigInt::from(signed)
        .mod_floor(&BigInt::from(order.clone()))
        .to_biguint()
        .expect("floor modulus is nonnegative");
    Ok(SphereClass::HomotopySphere {
        dimension,
        detail: SphereDetail::BpClass {
            bp_order: order,
            class,
        },
    })
}

/// Levine's rule for a homotopy `(4m + 1)`-sphere with the given `Δ(-1)`.
pub fn classify_4m_plus_1(delta_at_minus_one: &BigInt, m: u32) -> Result<KervaireVerdict> {
    if delta_at_minus_one.is_even() {
        return Err(Error::domain(format!(
            "Delta(-1) = {delta_at_minus_one} is even, so the link is not a homotopy sphere"
        )));
    }
    match abs_mod(delta_at_minus_one, 8) {
        1 | 7 => Ok(KervaireVerdict::Standard),
        _ => {
            let exotic = match bp_status_4m2(m)? {
                BpGroupStatus::Z2 => Exotic::Yes,
                BpGroupStatus::Trivial => Exotic::No,
                BpGroupStatus::ZeroOrZ2Unknown | BpGroupStatus::Cyclic(_) => Exotic::Unknown,
            };
            Ok(KervaireVerdict::Kervaire { exotic })
        }
    }
}

/// Group `π_{2n-1}(SO(2n)/U(n))` of almost contact structures on a homotopy `(2n-1)`-sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Z,
    ZPlusZ2,
    /// `Z / order`; order 1 is the trivial group.
    Cyclic(BigUint),
}

impl GroupDescriptor {
    pub fn to_json(&self) -> Value {
        match self {
            GroupDescriptor::Z => json!({"presentation": "Z", "order": Value::Null}),
            GroupDescriptor::ZPlusZ2 => json!({"presentation": "Z+Z2", "order": Value::Null}),
            GroupDescriptor::Cyclic(n) => json!({"presentation": "cyclic", "order": big_uint(n)}),
        }
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn almost_contact_group(n: u32) -> Result<GroupDescriptor> {
    if n < 3 {
        return Err(Error::domain(format!(
            "almost contact group needs n >= 3, got {n}"
        )));
    }
    Ok(match n % 4 {
        0 => GroupDescriptor::ZPlusZ2,
        1 => GroupDescriptor::Cyclic(factorial(n - 1)),
        2 => GroupDescriptor::Z,
        _ => GroupDescriptor::Cyclic(factorial(n - 1) / BigUint::from(2u32)),
    })
}

/// Morita's invariant `μ / 2` of a Brieskorn homotopy `(4m + 1)`-sphere.
pub fn morita_invariant_4m_plus_1(mu: u64) -> Rational {
    Rational::new(mu as i64, 2).expect("nonzero denominator")
}
