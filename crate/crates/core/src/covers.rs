//! Cyclic branched covers `g = z_0^p + f(z_1, ..., z_n)` of spheres branched
//! along the link of `f`.
//!
//! With `gcd(p, d) = 1` the cover has weights `(d, p w)` and degree `p d`,
//! its divisor is `(Λ_p - 1) div Δ_f`, it is always a rational homology
//! sphere, and it is a homotopy sphere exactly when the base is a rational
//! homology sphere.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::Rational;
use crate::classify::{classify_4m_plus_1, KervaireVerdict, SphereClass, SphereDetail};
use crate::divisor::{
    betti_from_divisor, eval_at_minus_one, eval_at_one, to_cyclotomic, DivisorExpr,
};
use crate::error::{Error, Result};
use crate::json::{big_int, big_uint};
use crate::links::{link_from_weights, LinkDescriptor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    base: LinkDescriptor,
    p: u64,
}

impl CoverSpec {
    pub fn base(&self) -> &LinkDescriptor {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The cover's link: weights `(d, p w_1, ..., p w_n)`, degree `p d`.
    pub fn cover_link(&self) -> Result<LinkDescriptor> {
        let d = self.base.degree();
        let overflow = || Error::Resource("cover weights exceed 64 bits".into());
        let mut weights = vec![d];
        for &w in self.base.weights() {
            weights.push(w.checked_mul(self.p).ok_or_else(overflow)?);
        }
        let degree = d.checked_mul(self.p).ok_or_else(overflow)?;
        link_from_weights(&weights, degree)
    }
}

/// Cover of the link with weights `base_w` and degree `base_d` by `z_0^p`.
pub fn make_cover(base_w: &[u64], base_d: u64, p: u64) -> Result<CoverSpec> {
    if p < 2 {
        return Err(Error::domain(format!(
            "branching order p must be at least 2, got {p}"
        )));
    }
    let base = link_from_weights(base_w, base_d)?;
    let g = p.gcd(&base_d);
    if g != 1 {
        return Err(Error::NotCoprime {
            p,
            modulus: base_d,
            gcd: g,
            position: None,
        });
    }
    Ok(CoverSpec { base, p })
}

/// Shape of the divisor of a rational homology 7-sphere base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseType {
    /// `div Δ = Λ_d - 1`.
    Type1,
    /// `div Δ = n Λ_d + Λ_{m3} - n Λ_{m2} - 1` with `d = m2 m3`, `gcd(m2, m3) = 1`;
    /// `torsion_order = m3^{n + 1}`.
    Type2 {
        n_w: u64,
        m2: u64,
        m3: u64,
        torsion_order: BigUint,
    },
    Other,
}

impl BaseType {
    pub fn label(&self) -> &'static str {
        match self {
            BaseType::Type1 => "1",
            BaseType::Type2 { .. } => "2",
            BaseType::Other => "other",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            BaseType::Type2 {
                n_w,
                m2,
                m3,
                torsion_order,
            } => json!({
                "type": "2", "n_w": n_w, "m2": m2, "m3": m3,
                "torsion_order": big_uint(torsion_order),
            }),
            other => json!({ "type": other.label() }),
        }
    }
}

pub fn base_type(base_divisor: &DivisorExpr, d: u64) -> BaseType {
    let one = Rational::one();
    let minus_one = -Rational::one();
    if base_divisor.constant_term() != minus_one {
        return BaseType::Other;
    }
    if base_divisor.len() == 2 && base_divisor.coeff(d) == one {
        return BaseType::Type1;
    }
    if base_divisor.len() != 4 {
        return BaseType::Other;
    }
    let n_w = match base_divisor.coeff(d).to_i64() {
        Some(n) if n > 0 => n as u64,
        _ => return BaseType::Other,
    };
    let mut m2 = None;
    let mut m3 = None;
    for (j, c) in base_divisor.terms() {
        if j == 1 || j == d {
            continue;
        }
        match c.to_i64() {
            Some(1) => m3 = Some(j),
            Some(c) if c == -(n_w as i64) => m2 = Some(j),
            _ => return BaseType::Other,
        }
    }
    match (m2, m3) {
        (Some(m2), Some(m3)) if m2.checked_mul(m3) == Some(d) && m2.gcd(&m3) == 1 => {
            BaseType::Type2 {
                n_w,
                m2,
                m3,
                torsion_order: BigUint::from(m3).pow(n_w as u32 + 1),
            }
        }
        _ => BaseType::Other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub p: u64,
    pub base_link: LinkDescriptor,
    pub cover_link: LinkDescriptor,
    pub base_divisor: DivisorExpr,
    pub cover_divisor: DivisorExpr,
    pub base_middle_betti: u64,
    /// `|Δ_f(1)|` when the base is a rational homology sphere.
    pub base_torsion_order: Option<BigUint>,
    pub cover_middle_betti: u64,
    pub is_rational_homology_sphere: bool,
    pub is_homotopy_sphere: bool,
    pub delta_g_at_one: BigUint,
    pub delta_g_at_minus_one: BigInt,
    pub sphere_class: Option<SphereClass>,
}

impl CoverReport {
    pub fn dimension(&self) -> u64 {
        self.cover_link.link_dim()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "base": {
                "weights": self.base_link.weights(),
                "degree": self.base_link.degree(),
                "divisor": self.base_divisor.to_string(),
                "middle_betti": self.base_middle_betti,
                "torsion_order": self.base_torsion_order.as_ref().map(big_uint),
                "type": base_type(&self.base_divisor, self.base_link.degree()).to_json(),
            },
            "cover": {
                "weights": self.cover_link.weights(),
                "degree": self.cover_link.degree(),
                "dim": self.dimension(),
                "divisor": self.cover_divisor.to_string(),
                "middle_betti": self.cover_middle_betti,
                "rational_homology_sphere": self.is_rational_homology_sphere,
                "homotopy_sphere": self.is_homotopy_sphere,
                "delta_at_one": big_uint(&self.delta_g_at_one),
                "delta_at_minus_one": big_int(&self.delta_g_at_minus_one),
            },
            "classification": self.sphere_class.as_ref().map(SphereClass::to_json),
        })
    }
}

pub fn analyze_cover(spec: &CoverSpec) -> Result<CoverReport> {
    let p = spec.p();
    let base = spec.base();
    for (i, &(u, _)) in base.ratios().iter().enumerate() {
        let g = p.gcd(&u);
        if g != 1 {
            return Err(Error::NotCoprime {
                p,
                modulus: u,
                gcd: g,
                position: Some(i + 1),
            });
        }
    }
    let cover_link = spec.cover_link()?;
    let base_divisor = base.divisor()?;
    let cover_divisor = (DivisorExpr::lambda(p) - DivisorExpr::one()).try_mul(&base_divisor)?;
    let direct = cover_link.divisor()?;
    if direct != cover_divisor {
        return Err(Error::consistency(format!(
            "cover divisor {direct} differs from (L{p} - 1)({base_divisor})"
        )));
    }

    let base_middle_betti = betti_from_divisor(&base_divisor, base.nvars())?;
    let base_cyclo = to_cyclotomic(&base_divisor)?;
    let base_torsion_order = (base_middle_betti == 0).then(|| eval_at_one(&base_cyclo));

    let cover_middle_betti = betti_from_divisor(&cover_divisor, cover_link.nvars())?;
    if cover_middle_betti != 0 {
        return Err(Error::consistency(format!(
            "cover with p = {p} has middle Betti number {cover_middle_betti}"
        )));
    }
    let cover_cyclo = to_cyclotomic(&cover_divisor)?;
    let delta_g_at_one = eval_at_one(&cover_cyclo);
    let delta_g_at_minus_one = eval_at_minus_one(&cover_cyclo);

    // |Δ_g(1)| = p^{b(L_f)}
    let expected = BigUint::from(p).pow(base_middle_betti as u32);
    if delta_g_at_one != expected {
        return Err(Error::consistency(format!(
            "|Delta_g(1)| = {delta_g_at_one}, expected {p}^{base_middle_betti}"
        )));
    }
    let is_homotopy_sphere = delta_g_at_one.is_one() && cover_link.nvars() >= 4;

    let dimension = cover_link.link_dim();
    let sphere_class = if is_homotopy_sphere && dimension % 4 == 1 {
        let m = ((dimension - 1) / 4) as u32;
        Some(SphereClass::HomotopySphere {
            dimension,
            detail: SphereDetail::Kervaire(classify_4m_plus_1(&delta_g_at_minus_one, m)?),
        })
    } else {
        None
    };

    Ok(CoverReport {
        p,
        base_link: base.clone(),
        cover_link,
        base_divisor,
        cover_divisor,
        base_middle_betti,
        base_torsion_order,
        cover_middle_betti,
        is_rational_homology_sphere: true,
        is_homotopy_sphere,
        delta_g_at_one,
        delta_g_at_minus_one,
        sphere_class,
    })
}

/// `Δ_g(-1)` from the parity case analysis: 1 if `p` and `d` are odd,
/// `p^{Σ_{j even} a_j}` if `p` is odd and `d` even, `|Δ_f(1)|` if `p` is even.
pub fn case_formula_delta_minus_one(report: &CoverReport) -> Result<BigUint> {
    let p = report.p;
    let d = report.base_link.degree();
    match (p % 2, d % 2) {
        (1, 1) => Ok(BigUint::one()),
        (1, 0) => {
            let even_sum: i64 = report
                .base_divisor
                .integer_terms()?
                .into_iter()
                .filter(|(j, _)| j % 2 == 0)
                .map(|(_, c)| c)
                .sum();
            let e = u32::try_from(even_sum).map_err(|_| {
                Error::consistency(format!("negative even-index exponent sum {even_sum}"))
            })?;
            Ok(BigUint::from(p).pow(e))
        }
        (0, 1) => report
            .base_torsion_order
            .clone()
            .ok_or_else(|| Error::domain("base is not a rational homology sphere")),
        _ => Err(Error::NotCoprime {
            p,
            modulus: d,
            gcd: p.gcd(&d),
            position: None,
        }),
    }
}

/// Even-index exponent sum `Σ_{j even} a_j` of the base divisor.
pub fn even_exponent_sum(base_divisor: &DivisorExpr) -> Result<i64> {
    Ok(base_divisor
        .integer_terms()?
        .into_iter()
        .filter(|(j, _)| j % 2 == 0)
        .map(|(_, c)| c)
        .sum())
}

/// Classification of a homotopy 9-sphere cover, checked against the case formulas.
pub fn classify_cover_9sphere(report: &CoverReport) -> Result<KervaireVerdict> {
    if report.dimension() != 9 {
        return Err(Error::domain(format!(
            "expected a 9-dimensional cover, got dimension {}",
            report.dimension()
        )));
    }
    if !report.is_homotopy_sphere {
        return Err(Error::domain("cover is not a homotopy sphere"));
    }
    let generic = classify_4m_plus_1(&report.delta_g_at_minus_one, 2)?;
    let by_cases = case_formula_delta_minus_one(report)?;
    let magnitude = report.delta_g_at_minus_one.magnitude().clone();
    if magnitude != by_cases || report.delta_g_at_minus_one.is_zero() {
        return Err(Error::consistency(format!(
            "Delta_g(-1) = {} but the case formula gives {by_cases}",
            report.delta_g_at_minus_one
        )));
    }
    Ok(generic)
}
