use num_bigint::BigUint;

use super::ManifoldError;
use crate::coxeter::{classify_components, TypeLabel};
use crate::exchange::{classify_mutation_type, Diagram, ExchangeMatrix, InfiniteCertificate, MutationType};
use crate::group::{PermutationRep, RootSystem};
use crate::presentation::{coxeter_data, evolve_generators, ExtraRelator, GeneratorWords, Word};
use crate::Caps;

/// Where the generator images of a realization come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Words in the generators of an acyclic Dynkin orientation `q`,
    /// evolved along `sequence` with `μ_sequence(q)` the diagram at hand.
    /// `node_map[v]` is the catalogue node of the Dynkin vertex `v`.
    Evolved { dynkin: ExchangeMatrix, sequence: Vec<usize>, words: GeneratorWords, node_map: Vec<usize> },
    /// Reflections in user-supplied roots.
    Roots(Vec<Vec<i64>>),
}

/// The finite Weyl group `W` as a permutation group on its roots, together
/// with the images of the generators of a diagram's group.
#[derive(Clone, Debug)]
pub struct Realization {
    label: TypeLabel,
    roots: RootSystem,
    images: PermutationRep,
    order: BigUint,
    extra: Vec<ExtraRelator>,
    source: Source,
}

impl Realization {
    /// Realizes `μ_sequence(dynkin)` for an acyclic `dynkin` of finite type.
    pub fn from_dynkin(dynkin: &ExchangeMatrix, sequence: &[usize]) -> Result<Self, ManifoldError> {
        let c = coxeter_data(&Diagram::from_matrix(dynkin))?;
        let cls = classify_components(&c);
        let (label, node_map) = match cls.components.as_slice() {
            [only] if dynkin.is_acyclic() => match only.label {
                Some(label) if !label.affine => (label, only.node_map.clone()),
                _ => return Err(ManifoldError::NoRealization("not of finite type".into())),
            },
            _ => return Err(ManifoldError::NoRealization("not a connected Dynkin orientation".into())),
        };
        let roots = RootSystem::new(label)?;
        let simple: Vec<Word> = node_map.iter().map(|&v| Word::generator(v)).collect();
        let dynkin_rep = roots.permutation_rep().pullback(&simple)?;
        let words = evolve_generators(dynkin, sequence)?;
        let images = dynkin_rep.pullback(words.words())?;
        let order = label.order().expect("finite type");
        Ok(Realization {
            label,
            roots,
            images,
            order,
            extra: Vec::new(),
            source: Source::Evolved { dynkin: dynkin.clone(), sequence: sequence.to_vec(), words, node_map },
        })
    }

    /// Realizes a diagram of finite mutation type through the witness found
    /// by [`classify_mutation_type`].
    pub fn for_matrix(m: &ExchangeMatrix, caps: &Caps) -> Result<Self, ManifoldError> {
        match classify_mutation_type(m, caps)? {
            MutationType::FiniteType { witness, .. } => {
                let dynkin = m.mutate_along(&witness)?;
                let back: Vec<usize> = witness.iter().rev().copied().collect();
                Self::from_dynkin(&dynkin, &back)
            }
            other => Err(unrealizable(&other)),
        }
    }

    /// Generators act as the reflections in `roots` of the root system of
    /// `label`; `extra` lists the relators added to the diagram's
    /// presentation.
    pub fn from_roots(
        label: TypeLabel,
        roots: Vec<Vec<i64>>,
        extra: Vec<ExtraRelator>,
    ) -> Result<Self, ManifoldError> {
        let system = RootSystem::new(label)?;
        if let Some(bad) = roots.iter().find(|r| r.len() != system.rank()) {
            return Err(ManifoldError::NoRealization(format!("root {bad:?} has the wrong length")));
        }
        let images = system.reflection_rep(&roots)?;
        let order = label.order().expect("finite type");
        Ok(Realization { label, roots: system, images, order, extra, source: Source::Roots(roots) })
    }

    /// Type of the Weyl group `W`.
    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    /// The images of the diagram's generators.
    pub fn images(&self) -> &PermutationRep {
        &self.images
    }

    pub fn weyl_order(&self) -> &BigUint {
        &self.order
    }

    pub fn extra_relators(&self) -> &[ExtraRelator] {
        &self.extra
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    /// Order of the subgroup generated by the images of `subset`.
    pub fn subgroup_order(&self, subset: &[usize]) -> Result<BigUint, ManifoldError> {
        let words: Vec<Word> = subset.iter().map(|&v| Word::generator(v)).collect();
        Ok(self.images.subgroup_order(&words)?)
    }
}

/// The error for a diagram without a finite Weyl group realization, telling
/// an exhausted class search apart from a genuine answer.
pub(crate) fn unrealizable(t: &MutationType) -> ManifoldError {
    match t {
        MutationType::MutationInfinite { certificate: InfiniteCertificate::CapReached { explored } } => {
            ManifoldError::CapExceeded(format!("mutation class search stopped after {explored} members"))
        }
        other => ManifoldError::NoRealization(format!("mutation type is {}", type_name(other))),
    }
}

pub(crate) fn type_name(t: &MutationType) -> &'static str {
    match t {
        MutationType::FiniteType { .. } => "FiniteType",
        MutationType::AffineType { .. } => "AffineType",
        MutationType::OtherMutationFinite { .. } => "OtherMutationFinite",
        MutationType::MutationInfinite { .. } => "MutationInfinite",
    }
}
