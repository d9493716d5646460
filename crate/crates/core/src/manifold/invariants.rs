use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::realization::{unrealizable, Realization, Source};
use super::torsion::{certify_realization, verify_torsion_free_affine, TorsionCertificate};
use super::ManifoldError;
use crate::coxeter::{
    elliptic_subsets, geometric_type, has_finite_covolume, ideal_vertex_subsets, CoxeterError, CoxeterMatrix,
    GeometricType, Geometry, TypeLabel,
};
use crate::exchange::{canonical_form, classify_mutation_type, Diagram, ExchangeMatrix, MutationType};
use crate::group::{todd_coxeter, GroupOrderResult};
use crate::presentation::{build_presentation, coxeter_data};
use crate::Caps;

/// `Σ (−1)^{|T|} / |W_T|` over the elliptic subsets `T`, the empty one
/// included.
pub fn orbifold_euler(c: &CoxeterMatrix) -> Result<BigRational, CoxeterError> {
    Ok(elliptic_subsets(c)?.into_iter().fold(BigRational::zero(), |acc, s| {
        let term = BigRational::new(BigInt::one(), BigInt::from(s.order));
        if s.vertices.len().is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        }
    }))
}

/// One orbit type of cusps: an ideal vertex of the fundamental polytope and
/// the number of cusps of the manifold lying over it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspClass {
    #[serde(serialize_with = "crate::serde_util::one_based")]
    pub subset: Vec<usize>,
    pub components: Vec<TypeLabel>,
    /// Order of the image of the affine parabolic subgroup in `W`.
    #[serde(serialize_with = "crate::serde_util::biguint")]
    pub stabilizer_order: BigUint,
    #[serde(serialize_with = "crate::serde_util::biguint")]
    pub cusps: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspCensus {
    pub classes: Vec<CuspClass>,
    #[serde(serialize_with = "crate::serde_util::biguint")]
    pub total: BigUint,
}

/// Counts cusps over each ideal vertex as `|W| / |image of W_T|`. The
/// manifold's cusps over an ideal vertex are the `W_C`-orbits on its
/// `W₀`-orbit; since `W_C` is normal these correspond to the cosets of the
/// image of the vertex stabilizer `W_T` in `W = W₀/W_C`.
pub fn count_cusps(g: &Diagram, r: &Realization) -> Result<CuspCensus, ManifoldError> {
    let c = coxeter_data(g)?;
    let geo = geometric_type(&c)?;
    let weyl = r.weyl_order();
    let mut classes = Vec::new();
    for ideal in ideal_vertex_subsets(&c, geo.dimension)? {
        let stabilizer_order = r.subgroup_order(&ideal.vertices)?;
        let (cusps, rem) = weyl.div_rem(&stabilizer_order);
        if !rem.is_zero() {
            return Err(ManifoldError::NotDivisible { subset: ideal.vertices, order: stabilizer_order });
        }
        classes.push(CuspClass { subset: ideal.vertices, components: ideal.components, stabilizer_order, cusps });
    }
    let total = classes.iter().map(|c| &c.cusps).sum();
    Ok(CuspCensus { classes, total })
}

/// `coeff · π^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Volume {
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub coeff_num: BigInt,
    #[serde(serialize_with = "crate::serde_util::bigint")]
    pub coeff_den: BigInt,
    pub pi_power: u32,
}

impl Volume {
    /// Gauss–Bonnet: `vol = (−1)^{d/2} · 2^{d/2} π^{d/2} / (d − 1)!! · χ`
    /// for even `d`.
    pub fn from_euler(chi: &BigRational, dimension: usize) -> Option<Volume> {
        if dimension == 0 || !dimension.is_multiple_of(2) {
            return None;
        }
        let half = dimension / 2;
        let double_factorial: BigInt = (1..dimension).step_by(2).map(BigInt::from).product();
        let sign = if half.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        let coeff = chi * BigRational::new(sign * (BigInt::one() << half), double_factorial);
        Some(Volume { coeff_num: coeff.numer().clone(), coeff_den: coeff.denom().clone(), pi_power: half as u32 })
    }

    pub fn approx(&self) -> f64 {
        let coeff = self.coeff_num.to_f64().unwrap() / self.coeff_den.to_f64().unwrap();
        coeff * std::f64::consts::PI.powi(self.pi_power as i32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldReport {
    pub canonical_key: String,
    pub diagram: Diagram,
    /// Type of `W = W(g)`.
    pub group: TypeLabel,
    /// Geometry of `W₀(g)`.
    pub geometry: Geometry,
    pub dimension: usize,
    /// Whether the fundamental polytope has finite volume; `None` outside
    /// the hyperbolic case.
    pub finite_covolume: Option<bool>,
    pub compact: bool,
    #[serde(serialize_with = "crate::serde_util::opt_biguint")]
    pub group_order: Option<BigUint>,
    #[serde(serialize_with = "crate::serde_util::opt_rational")]
    pub chi_orb: Option<BigRational>,
    /// `|W| · χ_orb`, reported once torsion-freeness is certified.
    #[serde(rename = "chi_X", serialize_with = "crate::serde_util::opt_bigint")]
    pub chi_x: Option<BigInt>,
    #[serde(serialize_with = "crate::serde_util::opt_biguint")]
    pub cusps: Option<BigUint>,
    pub cusp_census: Option<Vec<CuspClass>>,
    pub volume: Option<Volume>,
    /// Genus of the orientable surface with Euler characteristic `chi_X`.
    #[serde(serialize_with = "crate::serde_util::opt_bigint")]
    pub genus: Option<BigInt>,
    /// Order of the group defined by the presentation with its extra
    /// relators, for realizations given by roots.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_order: Option<GroupOrderResult>,
    pub torsion: TorsionCertificate,
}

struct Shape {
    geometry: Geometry,
    finite_covolume: Option<bool>,
    chi_orb: Option<BigRational>,
}

fn shape(c: &CoxeterMatrix) -> Result<Shape, ManifoldError> {
    let geometry = geometric_type(c)?;
    let finite_covolume = match geometry.kind {
        GeometricType::Hyperbolic => Some(has_finite_covolume(c, geometry.dimension)?),
        GeometricType::Other { signature } => {
            return Err(ManifoldError::UnsupportedGeometry(format!(
                "W₀ is neither spherical, Euclidean nor hyperbolic (signature +{} 0{} −{})",
                signature.positive, signature.zero, signature.negative
            )))
        }
        _ => None,
    };
    Ok(Shape { geometry, finite_covolume, chi_orb: Some(orbifold_euler(c)?) })
}

/// Invariants of the manifold attached to `g` and a realization of its group.
pub fn manifold_report(g: &Diagram, r: &Realization, caps: &Caps) -> Result<ManifoldReport, ManifoldError> {
    let c = coxeter_data(g)?;
    let Shape { geometry, finite_covolume, chi_orb } = shape(&c)?;
    let torsion = certify_realization(g, r)?;
    let weyl = BigInt::from(r.weyl_order().clone());
    let hyperbolic = geometry.kind == GeometricType::Hyperbolic;
    let census = if hyperbolic { Some(count_cusps(g, r)?) } else { None };
    let euler = chi_orb.as_ref().map(|x| x * BigRational::from_integer(weyl));
    let chi_x = match (&euler, torsion.torsion_free) {
        (Some(e), Some(true)) if e.is_integer() => Some(e.to_integer()),
        _ => None,
    };
    let volume = match (&euler, hyperbolic && finite_covolume == Some(true)) {
        (Some(e), true) => Volume::from_euler(e, geometry.dimension),
        _ => None,
    };
    let genus = match (&chi_x, hyperbolic && geometry.dimension == 2) {
        (Some(x), true) if x.is_even() => Some((BigInt::from(2) - x) / 2),
        _ => None,
    };
    let compact = match &census {
        Some(census) => census.classes.is_empty() && finite_covolume == Some(true),
        None => true,
    };
    let quotient_order = match r.source() {
        Source::Roots(_) => {
            let p = build_presentation(g, r.extra_relators().to_vec())?;
            Some(todd_coxeter(&p, caps.cosets))
        }
        Source::Evolved { .. } => None,
    };
    Ok(ManifoldReport {
        canonical_key: canonical_form(g).to_hex(),
        diagram: g.clone(),
        group: r.label(),
        dimension: geometry.dimension,
        geometry,
        finite_covolume,
        compact,
        group_order: Some(r.weyl_order().clone()),
        chi_orb,
        chi_x,
        cusps: census.as_ref().map(|c| c.total.clone()),
        cusp_census: census.map(|c| c.classes),
        volume,
        genus,
        quotient_order,
        torsion,
    })
}

/// Full analysis of a diagram of finite or affine mutation type.
pub fn manifold_invariants(m: &ExchangeMatrix, caps: &Caps) -> Result<ManifoldReport, ManifoldError> {
    let g = Diagram::from_matrix(m);
    match classify_mutation_type(m, caps)? {
        MutationType::FiniteType { .. } => manifold_report(&g, &Realization::for_matrix(m, caps)?, caps),
        MutationType::AffineType { label, .. } => {
            let c = coxeter_data(&g)?;
            let Shape { geometry, finite_covolume, chi_orb } = shape(&c)?;
            let torsion = verify_torsion_free_affine(m, caps)?;
            Ok(ManifoldReport {
                canonical_key: canonical_form(&g).to_hex(),
                diagram: g,
                group: label,
                dimension: geometry.dimension,
                geometry,
                finite_covolume,
                compact: geometry.kind != GeometricType::Hyperbolic,
                group_order: None,
                chi_orb,
                chi_x: None,
                cusps: None,
                cusp_census: None,
                volume: None,
                genus: None,
                quotient_order: None,
                torsion,
            })
        }
        other => Err(unrealizable(&other)),
    }
}
