//! Enumeration of elliptic (finite parabolic) and ideal (affine parabolic)
//! vertex subsets of a Coxeter diagram.

use num_bigint::BigUint;
use serde::Serialize;

use super::classify::{classify_subset, TypeLabel};
use super::matrix::{gram_matrix, GeometricType, Signature};
use super::{geometric_type, CoxeterError, CoxeterMatrix};

/// Subset enumeration is exhaustive, so ranks are bounded.
pub const MAX_SUBSET_RANK: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticSubset {
    pub vertices: Vec<usize>,
    #[serde(serialize_with = "crate::serde_util::biguint")]
    pub order: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSubset {
    pub vertices: Vec<usize>,
    /// Affine type of each component, in component order.
    pub components: Vec<TypeLabel>,
}

/// Gram signature of every vertex subset, indexed by bitmask.
pub(crate) struct SubsetTable<'a> {
    coxeter: &'a CoxeterMatrix,
    signatures: Vec<Signature>,
}

fn members(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

impl<'a> SubsetTable<'a> {
    pub(crate) fn new(c: &'a CoxeterMatrix) -> Result<Self, CoxeterError> {
        let n = c.rank();
        if n > MAX_SUBSET_RANK {
            return Err(CoxeterError::TooLarge { rank: n, max: MAX_SUBSET_RANK });
        }
        let gram = gram_matrix(c)?;
        let signatures = (0..1usize << n)
            .map(|mask| gram.restrict(&members(mask, n)).signature())
            .collect();
        Ok(SubsetTable { coxeter: c, signatures })
    }

    fn n(&self) -> usize {
        self.coxeter.rank()
    }

    pub(crate) fn is_elliptic(&self, mask: usize) -> bool {
        self.signatures[mask].positive == mask.count_ones() as usize
    }

    /// Positive semidefinite with every component singular, i.e. affine.
    pub(crate) fn is_parabolic(&self, mask: usize) -> bool {
        if mask == 0 || self.signatures[mask].negative != 0 {
            return false;
        }
        let verts = members(mask, self.n());
        self.coxeter.components_of(&verts).iter().all(|comp| {
            let m: usize = comp.iter().map(|&v| 1 << v).sum();
            self.signatures[m].zero == 1
        })
    }

    pub(crate) fn rank_of(&self, mask: usize) -> usize {
        self.signatures[mask].rank()
    }

    pub(crate) fn masks(&self) -> std::ops::Range<usize> {
        0..1usize << self.n()
    }
}

/// All subsets (including the empty one) spanning a finite parabolic
/// subgroup, with its order, in increasing bitmask order.
pub fn elliptic_subsets(c: &CoxeterMatrix) -> Result<Vec<EllipticSubset>, CoxeterError> {
    let table = SubsetTable::new(c)?;
    table
        .masks()
        .filter(|&m| table.is_elliptic(m))
        .map(|m| {
            let vertices = members(m, c.rank());
            let order = classify_subset(c, &vertices)
                .order
                .ok_or_else(|| CoxeterError::Unclassified(vertices.clone()))?;
            Ok(EllipticSubset { vertices, order })
        })
        .collect()
}

fn expect_hyperbolic(c: &CoxeterMatrix, dimension: usize) -> Result<(), CoxeterError> {
    let geo = geometric_type(c)?;
    if geo.kind != GeometricType::Hyperbolic || geo.dimension != dimension {
        return Err(CoxeterError::WrongGeometry {
            expected: format!("hyperbolic of dimension {dimension}"),
            found: format!("{:?} of dimension {}", geo.kind, geo.dimension),
        });
    }
    Ok(())
}

/// Subsets whose Gram submatrix is positive semidefinite of rank
/// `dimension − 1` with only affine components. Each one stands for an ideal
/// vertex of the fundamental polytope.
pub fn ideal_vertex_subsets(
    c: &CoxeterMatrix,
    dimension: usize,
) -> Result<Vec<IdealSubset>, CoxeterError> {
    expect_hyperbolic(c, dimension)?;
    let table = SubsetTable::new(c)?;
    let out = table
        .masks()
        .filter(|&m| table.is_parabolic(m) && table.rank_of(m) + 1 == dimension)
        .map(|m| {
            let vertices = members(m, c.rank());
            let components = classify_subset(c, &vertices)
                .components
                .into_iter()
                .map(|comp| comp.label.ok_or(CoxeterError::Unclassified(comp.vertices)))
                .collect::<Result<_, _>>()?;
            Ok(IdealSubset { vertices, components })
        })
        .collect::<Result<Vec<_>, CoxeterError>>()?;
    Ok(out)
}

/// Finite-volume test for the hyperbolic polytope: every elliptic subset of
/// size `dimension − 1` (an edge) must extend in exactly two ways, either to
/// an elliptic subset of size `dimension` (a finite vertex) or to a parabolic
/// subset of rank `dimension − 1` (an ideal vertex).
pub fn has_finite_covolume(c: &CoxeterMatrix, dimension: usize) -> Result<bool, CoxeterError> {
    expect_hyperbolic(c, dimension)?;
    if dimension < 2 {
        return Ok(false);
    }
    let table = SubsetTable::new(c)?;
    let ends: Vec<usize> = table
        .masks()
        .filter(|&m| {
            let size = m.count_ones() as usize;
            (size == dimension && table.is_elliptic(m))
                || (table.is_parabolic(m) && table.rank_of(m) + 1 == dimension)
        })
        .collect();
    let mut edges = 0;
    for m in table.masks() {
        if m.count_ones() as usize != dimension - 1 || !table.is_elliptic(m) {
            continue;
        }
        edges += 1;
        if ends.iter().filter(|&&e| e & m == m).count() != 2 {
            return Ok(false);
        }
    }
    Ok(edges > 0)
}
