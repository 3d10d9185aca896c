//! Exact invariants of links of weighted homogeneous hypersurface
//! singularities: Milnor–Orlik divisors and Alexander polynomials,
//! homology and homotopy sphere detection, classification in the groups
//! `bP_n`, cyclic branched covers, and orbifold data of the associated
//! weighted projective hypersurfaces.
//!
//! All arithmetic is exact.

pub mod analysis;
pub mod arith;
pub mod catalog;
pub mod classify;
pub mod covers;
pub mod divisor;
pub mod error;
pub mod json;
pub mod links;
pub mod orbifold;

pub use analysis::{analyze_exponents, analyze_link, LinkAnalysis};
pub use arith::{
    bernoulli, bp_group, bp_order_4m, bp_status_4m2, gcd_many, lcm_many, BpGroupStatus, Rational,
};
pub use classify::{
    almost_contact_group, classify_4m_minus_1, classify_4m_plus_1, morita_invariant_4m_plus_1,
    Exotic, GroupDescriptor, KervaireVerdict, SphereClass, SphereDetail,
};
pub use covers::{
    analyze_cover, base_type, classify_cover_9sphere, make_cover, BaseType, CoverReport, CoverSpec,
};
pub use divisor::{
    betti_from_divisor, eval_at_minus_one, eval_at_one, expand_polynomial, milnor_orlik_divisor,
    to_cyclotomic, CyclotomicExponents, DivisorExpr,
};
pub use error::{Error, ErrorKind, Result};
pub use links::{
    connectivity, integral_homology_sphere, link_from_exponents, link_from_weights, milnor_number,
    signature, ExponentVector, LinkDescriptor,
};
pub use orbifold::{
    bp_orbifold_order, fano_index_branched, normalize_weights, profile, OrbifoldProfile,
    WeightVector,
};
