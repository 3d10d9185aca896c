//! Full invariant report for a single link.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde_json::{json, Value};

use crate::classify::{classify_4m_minus_1, classify_4m_plus_1, SphereClass, SphereDetail};
use crate::divisor::{
    betti_from_divisor, eval_at_minus_one, eval_at_one, to_cyclotomic, CyclotomicExponents,
    DivisorExpr,
};
use crate::error::Result;
use crate::json::{big_int, big_uint, u128_value};
use crate::links::{
    connectivity, integral_homology_sphere, link_from_exponents, milnor_number, signature,
    ExponentVector, LinkDescriptor, SphereCriterion,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkAnalysis {
    pub link: LinkDescriptor,
    /// Brieskorn–Pham exponents, given or recovered from weights dividing the degree.
    pub exponents: Option<ExponentVector>,
    pub milnor_number: u128,
    pub divisor: DivisorExpr,
    pub cyclotomic: CyclotomicExponents,
    pub middle_betti: u64,
    pub torsion_order: Option<BigUint>,
    pub delta_at_minus_one: BigInt,
    pub graph_criterion: Option<SphereCriterion>,
    /// `None` for three-variable links, whose fundamental group is not
    /// controlled by the homology computation.
    pub homotopy_sphere: Option<bool>,
    pub signature: Option<i64>,
    pub classification: Option<SphereClass>,
    pub warnings: Vec<String>,
}

/// Exponents `d / w_i` when every weight divides the degree.
pub fn exponents_of(link: &LinkDescriptor) -> Option<ExponentVector> {
    let ratios = link.ratios();
    if ratios.iter().all(|&(_, v)| v == 1) {
        ExponentVector::new(ratios.iter().map(|&(u, _)| u).collect()).ok()
    } else {
        None
    }
}

pub fn analyze_link(link: &LinkDescriptor, budget: u64) -> Result<LinkAnalysis> {
    let exponents = exponents_of(link);
    let mu = milnor_number(link)?;
    let divisor = link.divisor()?;
    let cyclotomic = to_cyclotomic(&divisor)?;
    let middle_betti = betti_from_divisor(&divisor, link.nvars())?;
    let torsion_order = (middle_betti == 0).then(|| eval_at_one(&cyclotomic));
    let delta_at_minus_one = eval_at_minus_one(&cyclotomic);
    let graph_criterion = exponents
        .as_ref()
        .map(|a| integral_homology_sphere(a).reason);
    let homology_sphere = torsion_order.as_ref().is_some_and(|t| t.is_one());
    let homotopy_sphere = (link.nvars() >= 4).then_some(homology_sphere);
    let dim = link.link_dim();
    let mut warnings = Vec::new();

    let signature = match &exponents {
        Some(a) if dim % 4 == 3 => Some(signature(a, budget)?),
        _ => None,
    };

    let classification = if !homology_sphere {
        Some(SphereClass::NotHomologySphere {
            dimension: dim,
            middle_betti,
            torsion_order: torsion_order.clone(),
        })
    } else if homotopy_sphere != Some(true) {
        warnings.push("three-variable link: homotopy type not decided".to_string());
        None
    } else if dim % 4 == 3 {
        match &exponents {
            Some(a) => Some(classify_4m_minus_1(a, budget)?),
            None => {
                warnings
                    .push("bP class needs weights dividing the degree; not computed".to_string());
                None
            }
        }
    } else {
        let m = ((dim - 1) / 4) as u32;
        let verdict = classify_4m_plus_1(&delta_at_minus_one, m)?;
        Some(SphereClass::HomotopySphere {
            dimension: dim,
            detail: SphereDetail::Kervaire(verdict),
        })
    };

    Ok(LinkAnalysis {
        link: link.clone(),
        exponents,
        milnor_number: mu,
        divisor,
        cyclotomic,
        middle_betti,
        torsion_order,
        delta_at_minus_one,
        graph_criterion,
        homotopy_sphere,
        signature,
        classification,
        warnings,
    })
}

pub fn analyze_exponents(a: &ExponentVector, budget: u64) -> Result<LinkAnalysis> {
    analyze_link(&link_from_exponents(a)?, budget)
}

impl LinkAnalysis {
    /// `"k of N"` for a homotopy `(4m - 1)`-sphere.
    pub fn bp_class(&self) -> Option<String> {
        match &self.classification {
            Some(SphereClass::HomotopySphere {
                detail: SphereDetail::BpClass { bp_order, class },
                ..
            }) => Some(format!("{class} of {bp_order}")),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let cyclotomic: Vec<Value> = self.cyclotomic.iter().map(|(m, e)| json!([m, e])).collect();
        json!({
            "weights": self.link.weights(),
            "degree": self.link.degree(),
            "exponents": self.exponents.as_ref().map(|a| a.as_slice().to_vec()),
            "dim": self.link.link_dim(),
            "connectivity": connectivity(&self.link),
            "milnor_number": u128_value(self.milnor_number),
            "divisor": self.divisor.to_string(),
            "cyclotomic_exponents": cyclotomic,
            "middle_betti": self.middle_betti,
            "torsion_order": self.torsion_order.as_ref().map(big_uint),
            "delta_at_minus_one": big_int(&self.delta_at_minus_one),
            "rational_homology_sphere": self.middle_betti == 0,
            "graph_criterion": self.graph_criterion,
            "homotopy_sphere": self.homotopy_sphere,
            "signature": self.signature,
            "bp_class": self.bp_class(),
            "classification": self.classification.as_ref().map(SphereClass::to_json),
        })
    }
}
