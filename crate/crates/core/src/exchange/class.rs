use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{canonical_form, CanonicalKey, Diagram, ExchangeError, ExchangeMatrix, MutationSequence};
use crate::coxeter::{classify_components, TypeLabel};
use crate::presentation::coxeter_data;
use crate::Caps;

/// One representative of an isomorphism class inside a mutation class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    /// The matrix actually reached by `sequence` (not a relabeled copy).
    pub matrix: ExchangeMatrix,
    pub sequence: MutationSequence,
    pub key: CanonicalKey,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum ClassStatus {
    Complete,
    SizeExceeded { cap: usize },
    /// A member has an edge heavier than the weight cap in a connected
    /// component of rank at least 3.
    WeightExceeded { member: usize, label: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEnumeration {
    pub members: Vec<ClassMember>,
    pub status: ClassStatus,
}

impl ClassEnumeration {
    pub fn is_complete(&self) -> bool {
        self.status == ClassStatus::Complete
    }
}

/// Largest label on an edge whose component has at least three vertices.
fn heavy_label(m: &ExchangeMatrix) -> u64 {
    let g = Diagram::from_matrix(m);
    m.components()
        .iter()
        .filter(|c| c.len() >= 3)
        .flat_map(|c| c.iter().flat_map(move |&i| c.iter().map(move |&j| (i, j))))
        .map(|(i, j)| g.label(i, j))
        .max()
        .unwrap_or(0)
}

/// Breadth-first search over the mutation class, visiting members in order
/// of discovery. `visit` may stop the search early by returning `true`.
fn explore(
    start: &ExchangeMatrix,
    caps: &Caps,
    mut visit: impl FnMut(&ClassMember) -> bool,
) -> ClassEnumeration {
    let mut seen = HashSet::new();
    let mut members = Vec::new();
    let mut queue = VecDeque::new();
    let first = ClassMember {
        matrix: start.clone(),
        sequence: Vec::new(),
        key: canonical_form(&Diagram::from_matrix(start)),
    };
    seen.insert(first.key.clone());
    queue.push_back(0);
    members.push(first);
    let check = |members: &Vec<ClassMember>| -> Option<ClassStatus> {
        let idx = members.len() - 1;
        let label = heavy_label(&members[idx].matrix);
        (label > caps.max_weight).then_some(ClassStatus::WeightExceeded { member: idx, label })
    };
    if let Some(status) = check(&members) {
        return ClassEnumeration { members, status };
    }
    if visit(&members[0]) {
        return ClassEnumeration { members, status: ClassStatus::Complete };
    }
    while let Some(idx) = queue.pop_front() {
        for k in 0..start.rank() {
            let next = members[idx].matrix.mutate(k).expect("k is in range");
            let key = canonical_form(&Diagram::from_matrix(&next));
            if !seen.insert(key.clone()) {
                continue;
            }
            if members.len() >= caps.max_size {
                return ClassEnumeration {
                    members,
                    status: ClassStatus::SizeExceeded { cap: caps.max_size },
                };
            }
            let mut sequence = members[idx].sequence.clone();
            sequence.push(k);
            members.push(ClassMember { matrix: next, sequence, key });
            if let Some(status) = check(&members) {
                return ClassEnumeration { members, status };
            }
            if visit(members.last().unwrap()) {
                return ClassEnumeration { members, status: ClassStatus::Complete };
            }
            queue.push_back(members.len() - 1);
        }
    }
    ClassEnumeration { members, status: ClassStatus::Complete }
}

/// All isomorphism classes of diagrams mutation-equivalent to `m`, each with
/// a witness sequence from `m`.
pub fn mutation_class(m: &ExchangeMatrix, caps: &Caps) -> ClassEnumeration {
    explore(m, caps, |_| false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum InfiniteCertificate {
    /// `sequence` leads to a matrix with an edge of label `label`.
    HeavyEdge {
        #[serde(serialize_with = "crate::serde_util::one_based")]
        sequence: MutationSequence,
        label: u64,
    },
    CapReached { explored: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum MutationType {
    /// `witness` mutates the input into an orientation of the Dynkin diagram.
    FiniteType {
        label: TypeLabel,
        #[serde(serialize_with = "crate::serde_util::one_based")]
        witness: MutationSequence,
    },
    /// `witness` mutates the input into an acyclic orientation of the affine
    /// diagram.
    AffineType {
        label: TypeLabel,
        #[serde(serialize_with = "crate::serde_util::one_based")]
        witness: MutationSequence,
    },
    OtherMutationFinite { class_size: usize },
    MutationInfinite { certificate: InfiniteCertificate },
}

impl MutationType {
    pub fn label(&self) -> Option<TypeLabel> {
        match self {
            MutationType::FiniteType { label, .. } | MutationType::AffineType { label, .. } => {
                Some(*label)
            }
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&MutationSequence> {
        match self {
            MutationType::FiniteType { witness, .. } | MutationType::AffineType { witness, .. } => {
                Some(witness)
            }
            _ => None,
        }
    }
}

/// Label of an acyclic diagram whose Coxeter diagram is a single finite or
/// affine catalogue entry.
fn acyclic_label(m: &ExchangeMatrix) -> Option<TypeLabel> {
    if !m.is_acyclic() {
        return None;
    }
    let c = coxeter_data(&Diagram::from_matrix(m)).ok()?;
    let cls = classify_components(&c);
    match cls.components.as_slice() {
        [only] => only.label,
        _ => None,
    }
}

/// Determines the mutation type by searching the class for an acyclic member
/// of finite or affine Coxeter type.
pub fn classify_mutation_type(
    m: &ExchangeMatrix,
    caps: &Caps,
) -> Result<MutationType, ExchangeError> {
    if !m.is_connected() {
        return Err(ExchangeError::Disconnected);
    }
    let mut found = None;
    let class = explore(m, caps, |member| match acyclic_label(&member.matrix) {
        Some(label) => {
            found = Some((label, member.sequence.clone()));
            true
        }
        None => false,
    });
    if let Some((label, witness)) = found {
        return Ok(if label.affine {
            MutationType::AffineType { label, witness }
        } else {
            MutationType::FiniteType { label, witness }
        });
    }
    Ok(match class.status {
        ClassStatus::Complete => MutationType::OtherMutationFinite { class_size: class.members.len() },
        ClassStatus::WeightExceeded { member, label } => MutationType::MutationInfinite {
            certificate: InfiniteCertificate::HeavyEdge {
                sequence: class.members[member].sequence.clone(),
                label,
            },
        },
        ClassStatus::SizeExceeded { .. } => MutationType::MutationInfinite {
            certificate: InfiniteCertificate::CapReached { explored: class.members.len() },
        },
    })
}
