use num_bigint::BigUint;
use serde::Serialize;

use super::realization::{type_name, unrealizable, Realization};
use super::ManifoldError;
use crate::coxeter::{elliptic_subsets, identify, CoxeterMatrix, TypeLabel};
use crate::exchange::{
    canonical_form, classify_mutation_type, Diagram, ExchangeMatrix, InfiniteCertificate, MutationType,
};
use crate::group::{bounded_closure_order, AffineElement, AffineRep, GroupOrderResult};
use crate::presentation::{coxeter_data, evolve_generators};
use crate::Caps;

/// Comparison of one finite parabolic subgroup of `W₀` with the subgroup of
/// `W` generated by the images of the same generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionEntry {
    #[serde(serialize_with = "crate::serde_util::one_based")]
    pub subset: Vec<usize>,
    #[serde(serialize_with = "crate::serde_util::biguint")]
    pub parabolic_order: BigUint,
    pub image_order: GroupOrderResult,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub canonical_key: String,
    /// Type of the group the images live in.
    pub group: TypeLabel,
    /// Number of nonempty elliptic subsets of the diagram's Coxeter data.
    pub elliptic_subsets: usize,
    pub entries: Vec<TorsionEntry>,
    /// `None` when some image order could not be computed within the caps.
    pub torsion_free: Option<bool>,
}

impl TorsionCertificate {
    fn assemble(g: &Diagram, group: TypeLabel, entries: Vec<TorsionEntry>) -> Self {
        let inconclusive = entries.iter().any(|e| e.image_order.exact().is_none());
        let torsion_free = (!inconclusive).then(|| entries.iter().all(|e| e.equal));
        TorsionCertificate {
            canonical_key: canonical_form(g).to_hex(),
            group,
            elliptic_subsets: entries.len(),
            entries,
            torsion_free,
        }
    }
}

fn nonempty_elliptic(c: &CoxeterMatrix) -> Result<Vec<(Vec<usize>, BigUint)>, ManifoldError> {
    Ok(elliptic_subsets(c)?
        .into_iter()
        .filter(|s| !s.vertices.is_empty())
        .map(|s| (s.vertices, s.order))
        .collect())
}

/// Checks every finite parabolic subgroup of `W₀(g)` against its image under
/// the realization.
pub fn certify_realization(g: &Diagram, r: &Realization) -> Result<TorsionCertificate, ManifoldError> {
    let c = coxeter_data(g)?;
    if r.images().generators().len() != g.rank() {
        return Err(ManifoldError::NoRealization(format!(
            "{} generator images for a diagram of rank {}",
            r.images().generators().len(),
            g.rank()
        )));
    }
    let entries = nonempty_elliptic(&c)?
        .into_iter()
        .map(|(subset, parabolic_order)| {
            let image = r.subgroup_order(&subset)?;
            Ok(TorsionEntry {
                equal: image == parabolic_order,
                subset,
                parabolic_order,
                image_order: image.into(),
            })
        })
        .collect::<Result<Vec<_>, ManifoldError>>()?;
    Ok(TorsionCertificate::assemble(g, r.label(), entries))
}

/// Torsion certificate for a diagram of finite mutation type.
pub fn verify_torsion_free(m: &ExchangeMatrix, caps: &Caps) -> Result<TorsionCertificate, ManifoldError> {
    let r = Realization::for_matrix(m, caps)?;
    certify_realization(&Diagram::from_matrix(m), &r)
}

/// Torsion certificate for a diagram of affine mutation type, with image
/// orders computed by closure in the affine Weyl group.
pub fn verify_torsion_free_affine(
    m: &ExchangeMatrix,
    caps: &Caps,
) -> Result<TorsionCertificate, ManifoldError> {
    let (label, witness) = match classify_mutation_type(m, caps)? {
        MutationType::AffineType { label, witness } => (label, witness),
        t @ MutationType::MutationInfinite { certificate: InfiniteCertificate::CapReached { .. } } => {
            return Err(unrealizable(&t))
        }
        other => {
            return Err(ManifoldError::WrongType { expected: "AffineType".into(), found: type_name(&other).into() })
        }
    };
    let target = m.mutate_along(&witness)?;
    let (found, node_map) = identify(&coxeter_data(&Diagram::from_matrix(&target))?)
        .ok_or_else(|| ManifoldError::NoRealization("unidentified affine diagram".into()))?;
    debug_assert_eq!(found, label);
    let rep = AffineRep::new(label)?;
    let dim = rep.root_system().rank();
    let target_gens: Vec<&AffineElement> = node_map.iter().map(|&v| &rep.generators()[v]).collect();
    let back: Vec<usize> = witness.iter().rev().copied().collect();
    let words = evolve_generators(&target, &back)?;
    let images: Vec<AffineElement> = words
        .words()
        .iter()
        .map(|w| w.letters().iter().fold(AffineElement::identity(dim), |acc, &x| acc.then(target_gens[x])))
        .collect();
    let g = Diagram::from_matrix(m);
    let entries = nonempty_elliptic(&coxeter_data(&g)?)?
        .into_iter()
        .map(|(subset, parabolic_order)| {
            let gens: Vec<AffineElement> = subset.iter().map(|&v| images[v].clone()).collect();
            let image_order = bounded_closure_order(dim, &gens, caps.closure);
            TorsionEntry {
                equal: image_order.exact() == Some(&parabolic_order),
                subset,
                parabolic_order,
                image_order,
            }
        })
        .collect();
    Ok(TorsionCertificate::assemble(&g, label, entries))
}
