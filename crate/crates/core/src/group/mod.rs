//! Concrete models of Weyl groups and order computations.

pub mod affine;
mod perm;
pub mod roots;
pub mod todd_coxeter;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

pub use affine::{bounded_closure_order, AffineElement, AffineRep};
pub use perm::{group_order, Perm, StabilizerChain};
pub use roots::{PermutationRep, RootSystem};
pub use todd_coxeter::{todd_coxeter, CosetTable};

use crate::presentation::{GeneratorWords, Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("no crystallographic realization for {0}")]
    NotCrystallographic(String),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("generator {index} is out of range for {generators} generators")]
    GeneratorOutOfRange { index: usize, generators: usize },
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum GroupOrderResult {
    Exact {
        #[serde(serialize_with = "crate::serde_util::biguint")]
        order: BigUint,
    },
    ExceedsCap { cap: usize },
}

impl GroupOrderResult {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            GroupOrderResult::Exact { order } => Some(order),
            GroupOrderResult::ExceedsCap { .. } => None,
        }
    }
}

impl From<BigUint> for GroupOrderResult {
    fn from(order: BigUint) -> Self {
        GroupOrderResult::Exact { order }
    }
}

/// A relator whose image under a representation is not the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorFailure {
    /// The relator written in the presentation's generators.
    pub relator: Word,
    /// Order of its image.
    pub image_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorReport {
    pub checked: usize,
    pub failures: Vec<RelatorFailure>,
}

impl RelatorReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `words` in `rep` and checks every relator of `p`, including the
/// squares of the generators, on the resulting elements.
pub fn verify_relators(
    rep: &PermutationRep,
    words: &GeneratorWords,
    p: &Presentation,
) -> Result<RelatorReport, GroupError> {
    if words.len() != p.generators() {
        return Err(GroupError::Unsupported(format!(
            "{} generator words for a presentation on {} generators",
            words.len(),
            p.generators()
        )));
    }
    let images = rep.pullback(words.words())?;
    let squares = (0..p.generators()).map(|i| Word::new(vec![i, i]));
    let relators: Vec<Word> = squares.chain(p.relator_words()).collect();
    let mut failures = Vec::new();
    for relator in &relators {
        let g = images.evaluate(relator)?;
        if !g.is_identity() {
            failures.push(RelatorFailure { relator: relator.clone(), image_order: g.order() });
        }
    }
    Ok(RelatorReport { checked: relators.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::TypeLabel;
    use crate::exchange::{dynkin, Diagram};
    use crate::presentation::{build_presentation, evolve_generators, PowerRelator};

    fn a_rep(n: usize) -> PermutationRep {
        RootSystem::new(TypeLabel::parse(&format!("A{n}")).unwrap()).unwrap().permutation_rep()
    }

    #[test]
    fn empty_word_is_identity() {
        assert!(a_rep(3).evaluate(&Word::identity()).unwrap().is_identity());
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let rep = a_rep(4);
        let u = Word::new(vec![0, 2, 3, 1]);
        let v = Word::new(vec![3, 3, 2, 0, 1]);
        let uv = rep.evaluate(&u.concat(&v)).unwrap();
        assert_eq!(uv, rep.evaluate(&u).unwrap().then(&rep.evaluate(&v).unwrap()));
    }

    #[test]
    fn out_of_range_letters_are_errors() {
        assert!(matches!(
            a_rep(2).evaluate(&Word::new(vec![2])),
            Err(GroupError::GeneratorOutOfRange { index: 2, generators: 2 })
        ));
    }

    #[test]
    fn full_generator_set_gives_the_group() {
        let rep = a_rep(4);
        let words: Vec<Word> = (0..4).map(Word::generator).collect();
        assert_eq!(rep.subgroup_order(&words).unwrap(), BigUint::from(120u32));
    }

    #[test]
    fn triangle_words_satisfy_the_mutated_presentation() {
        let path = dynkin::a(3);
        let words = evolve_generators(&path, &[1]).unwrap();
        let tri = path.mutate(1).unwrap();
        let p = build_presentation(&Diagram::from_matrix(&tri), vec![]).unwrap();
        assert_eq!(p.cycle_relators().len(), 1);
        let report = verify_relators(&a_rep(3), &words, &p).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn identity_words_satisfy_the_dynkin_presentation() {
        let p = build_presentation(&Diagram::from_matrix(&dynkin::d(5)), vec![]).unwrap();
        let rep = RootSystem::new(TypeLabel::parse("D5").unwrap()).unwrap().permutation_rep();
        assert!(verify_relators(&rep, &GeneratorWords::identity(5), &p).unwrap().all_pass());
    }

    #[test]
    fn wrong_exponent_is_reported() {
        let p = Presentation::new(2, vec![PowerRelator { i: 0, j: 1, m: 2 }], vec![], vec![]);
        let report = verify_relators(&a_rep(2), &GeneratorWords::identity(2), &p).unwrap();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].image_order, 3);
    }
}
