//! Affine Weyl groups acting on the simple-root coordinate space of their
//! finite part.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;

use super::roots::{orientable_edges, RootSystem};
use super::{GroupError, GroupOrderResult};
use crate::coxeter::{catalogue_matrix, classify::coxeter_isomorphism, CoxeterMatrix, Family, TypeLabel};
use crate::presentation::Word;

/// The map `x ↦ Ax + v` on integer vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    matrix: Vec<Vec<i64>>,
    translation: Vec<i64>,
}

impl AffineElement {
    pub fn new(matrix: Vec<Vec<i64>>, translation: Vec<i64>) -> Self {
        AffineElement { matrix, translation }
    }

    pub fn identity(dim: usize) -> Self {
        let matrix = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
        AffineElement { matrix, translation: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.translation)
            .map(|(row, v)| row.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() + v)
            .collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &AffineElement) -> AffineElement {
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| other.matrix[i][k] * self.matrix[k][j]).sum()).collect())
            .collect();
        AffineElement { matrix, translation: other.apply(&self.translation) }
    }

    pub fn has_identity_matrix(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &a)| a == i64::from(i == j)))
    }

    pub fn is_identity(&self) -> bool {
        self.has_identity_matrix() && self.translation.iter().all(|&v| v == 0)
    }

    /// Smallest `k ≤ limit` with `self^k = 1`.
    pub fn order_up_to(&self, limit: u32) -> Option<u32> {
        let mut power = self.clone();
        for k in 1..=limit {
            if power.is_identity() {
                return Some(k);
            }
            power = power.then(self);
        }
        None
    }
}

/// Affine Weyl group generators indexed by the catalogue nodes of an affine
/// type.
#[derive(Clone, Debug)]
pub struct AffineRep {
    label: TypeLabel,
    finite: RootSystem,
    generators: Vec<AffineElement>,
}

fn pair_coxeter_matrix(gens: &[AffineElement]) -> CoxeterMatrix {
    CoxeterMatrix::from_fn(gens.len(), |i, j| {
        gens[i].then(&gens[j]).order_up_to(6).unwrap_or(CoxeterMatrix::INF)
    })
    .expect("products of distinct reflections have order at least 2")
}

impl AffineRep {
    /// Realizes `label` by the finite reflections in the simple roots and the
    /// affine reflection `x ↦ x − (⟨x, θ^∨⟩ − 1) θ` for a suitable root `θ`.
    pub fn new(label: TypeLabel) -> Result<Self, GroupError> {
        let unsupported = || GroupError::NotCrystallographic(label.to_string());
        if !label.affine {
            return Err(GroupError::Unsupported(format!("{label} is not an affine type")));
        }
        let target = catalogue_matrix(&label).ok_or_else(unsupported)?;
        let family = if label.family == Family::C { Family::B } else { label.family };
        let finite_label = TypeLabel::finite(family, label.rank);
        let finite_matrix = catalogue_matrix(&finite_label).ok_or_else(unsupported)?;
        for flips in 0..1u32 << orientable_edges(&finite_matrix) {
            let finite = RootSystem::with_orientation(finite_label, flips)?;
            let n = finite.rank();
            let simple: Vec<AffineElement> = (0..n)
                .map(|i| AffineElement::new(finite.reflection_matrix(&finite.simple_root(i)), vec![0; n]))
                .collect();
            let mut thetas = vec![finite.highest_root(), finite.highest_short_root()];
            thetas.dedup();
            for theta in thetas {
                let mut gens = simple.clone();
                gens.push(AffineElement::new(finite.reflection_matrix(&theta), theta));
                let Some(map) = coxeter_isomorphism(&pair_coxeter_matrix(&gens), &target) else {
                    continue;
                };
                let mut generators = vec![AffineElement::identity(n); gens.len()];
                for (v, g) in gens.into_iter().enumerate() {
                    generators[map[v]] = g;
                }
                return Ok(AffineRep { label, finite, generators });
            }
        }
        Err(unsupported())
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    /// The finite root system whose coordinates the group acts on.
    pub fn root_system(&self) -> &RootSystem {
        &self.finite
    }

    pub fn generators(&self) -> &[AffineElement] {
        &self.generators
    }

    pub fn evaluate(&self, w: &Word) -> Result<AffineElement, GroupError> {
        let mut g = AffineElement::identity(self.finite.rank());
        for &x in w.letters() {
            let s = self.generators.get(x).ok_or(GroupError::GeneratorOutOfRange {
                index: x,
                generators: self.generators.len(),
            })?;
            g = g.then(s);
        }
        Ok(g)
    }

    pub fn pullback(&self, words: &[Word]) -> Result<Vec<AffineElement>, GroupError> {
        words.iter().map(|w| self.evaluate(w)).collect()
    }
}

/// Order of the group generated by `gens`, by breadth-first closure, or
/// `ExceedsCap` once more than `cap` elements have been found.
pub fn bounded_closure_order(dim: usize, gens: &[AffineElement], cap: usize) -> GroupOrderResult {
    let identity = AffineElement::identity(dim);
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return GroupOrderResult::ExceedsCap { cap };
                }
                queue.push_back(y);
            }
        }
    }
    if seen.len() > cap {
        return GroupOrderResult::ExceedsCap { cap };
    }
    BigUint::from(seen.len()).into()
}
