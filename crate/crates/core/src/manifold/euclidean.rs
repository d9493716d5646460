use num_bigint::BigUint;
use serde::Serialize;

use super::realization::type_name;
use super::ManifoldError;
use crate::coxeter::{identify, Family, TypeLabel};
use crate::exchange::{canonical_form, classify_mutation_type, Diagram, ExchangeMatrix, MutationType};
use crate::group::{todd_coxeter, AffineElement, AffineRep, GroupOrderResult};
use crate::presentation::{build_presentation, coxeter_data, cycle_word};
use crate::Caps;

/// The square of one rotation of the cycle word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleTranslation {
    pub rotation: usize,
    pub is_translation: bool,
    pub vector: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EuclideanQuotientReport {
    pub canonical_key: String,
    pub affine_type: TypeLabel,
    pub dimension: usize,
    #[serde(serialize_with = "crate::serde_util::one_based")]
    pub cycle: Vec<usize>,
    pub translations: Vec<CycleTranslation>,
    pub commute: bool,
    pub lattice_rank: usize,
    pub quotient_order: GroupOrderResult,
    pub weyl_group: Option<TypeLabel>,
    #[serde(serialize_with = "crate::serde_util::opt_biguint")]
    pub weyl_order: Option<BigUint>,
    /// All squares are translations, they commute, span a full lattice and
    /// the presentation defines a group of order `|W|`.
    pub certified: bool,
}

/// Rank of a list of integer vectors, by fraction-free elimination.
pub fn integer_rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<i128>> = vectors.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        for r in (rank + 1)..rows.len() {
            let (a, b) = (rows[rank][col], rows[r][col]);
            if b == 0 {
                continue;
            }
            let pivot = rows[rank].clone();
            let row = &mut rows[r];
            let mut g = 0i128;
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = a * *x - b * y;
                g = num_integer::gcd(g, *x);
            }
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Checks that an oriented cycle gives a flat torus: the squared cycle words
/// act on the plane of `Ã_{n−1}` as commuting translations spanning a
/// lattice of rank `n − 1`, and the presentation of `W(g)` is finite of the
/// expected order.
pub fn euclidean_quotient_report(
    m: &ExchangeMatrix,
    caps: &Caps,
) -> Result<EuclideanQuotientReport, ManifoldError> {
    let g = Diagram::from_matrix(m);
    let c = coxeter_data(&g)?;
    let wrong = |found: String| ManifoldError::WrongType { expected: "oriented cycle of type ~A".into(), found };
    let (affine_type, node_map) = identify(&c).ok_or_else(|| wrong("an unidentified diagram".into()))?;
    if !(affine_type.affine && affine_type.family == Family::A) {
        return Err(wrong(affine_type.to_string()));
    }
    let n = g.rank();
    let cycle = match g.chordless_oriented_cycles().as_slice() {
        [cyc] if cyc.len() == n => cyc.clone(),
        _ => return Err(wrong(format!("{affine_type} without an oriented cycle"))),
    };
    let rep = AffineRep::new(affine_type)?;
    let dim = rep.root_system().rank();
    let gens: Vec<&AffineElement> = node_map.iter().map(|&v| &rep.generators()[v]).collect();
    let elements: Vec<AffineElement> = (0..n)
        .map(|l| {
            let w = cycle_word(&cycle, l).power(2);
            w.letters().iter().fold(AffineElement::identity(dim), |acc, &x| acc.then(gens[x]))
        })
        .collect();
    let translations: Vec<CycleTranslation> = elements
        .iter()
        .enumerate()
        .map(|(rotation, t)| CycleTranslation {
            rotation,
            is_translation: t.has_identity_matrix(),
            vector: t.translation().to_vec(),
        })
        .collect();
    let commute = elements.iter().all(|a| elements.iter().all(|b| a.then(b) == b.then(a)));
    let vectors: Vec<Vec<i64>> = translations.iter().map(|t| t.vector.clone()).collect();
    let lattice_rank = integer_rank(&vectors);
    let quotient_order = todd_coxeter(&build_presentation(&g, Vec::new())?, caps.cosets);
    let weyl_group = match classify_mutation_type(m, caps)? {
        MutationType::FiniteType { label, .. } => Some(label),
        other => return Err(wrong(format!("mutation type {}", type_name(&other)))),
    };
    let weyl_order = weyl_group.and_then(|l| l.order());
    let certified = translations.iter().all(|t| t.is_translation)
        && commute
        && lattice_rank == n - 1
        && weyl_order.is_some()
        && quotient_order.exact() == weyl_order.as_ref();
    Ok(EuclideanQuotientReport {
        canonical_key: canonical_form(&g).to_hex(),
        affine_type,
        dimension: n - 1,
        cycle,
        translations,
        commute,
        lattice_rank,
        quotient_order,
        weyl_group,
        weyl_order,
        certified,
    })
}
