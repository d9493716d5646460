use serde::Serialize;

use super::{CoxeterError, QuadField};

/// Symmetric table of Coxeter exponents; `m_ii = 1` and `INF` encodes `m_ij = ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    m: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub const INF: u32 = u32::MAX;

    pub fn new(m: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = m.len();
        for i in 0..n {
            if m[i].len() != n {
                return Err(CoxeterError::Invalid(format!("row {} has wrong length", i + 1)));
            }
            if m[i][i] != 1 {
                return Err(CoxeterError::Invalid(format!("m_{0}{0} must be 1", i + 1)));
            }
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(CoxeterError::Invalid(format!(
                        "m_{}{} != m_{}{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if i != j && m[i][j] < 2 {
                    return Err(CoxeterError::Invalid(format!(
                        "m_{}{} = {} is below 2",
                        i + 1,
                        j + 1,
                        m[i][j]
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { m })
    }

    /// Builds the matrix from `f(i, j)` evaluated on pairs with `i < j`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u32) -> Result<Self, CoxeterError> {
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 } else { f(i.min(j), i.max(j)) }).collect())
            .collect();
        Self::new(m)
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.m
    }

    /// Whether `i` and `j` are joined in the Coxeter diagram (`m_ij ≠ 2`).
    pub fn joined(&self, i: usize, j: usize) -> bool {
        i != j && self.m[i][j] != 2
    }

    pub fn restrict(&self, vertices: &[usize]) -> CoxeterMatrix {
        CoxeterMatrix {
            m: vertices.iter().map(|&i| vertices.iter().map(|&j| self.m[i][j]).collect()).collect(),
        }
    }

    /// Connected components of the Coxeter diagram, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_of(&(0..self.rank()).collect::<Vec<_>>())
    }

    /// Components of the subdiagram spanned by `vertices`.
    pub fn components_of(&self, vertices: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.rank()];
        let mut out = Vec::new();
        for &s in vertices {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut idx = 0;
            while idx < comp.len() {
                let v = comp[idx];
                idx += 1;
                for &w in vertices {
                    if !seen[w] && self.joined(v, w) {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.rank() > 0 && self.components().len() == 1
    }
}

/// The cosine matrix with entries `-cos(π/m_ij)`, or `-1` for `m_ij = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    g: Vec<Vec<QuadField>>,
}

fn cosine_entry(m: u32) -> Result<QuadField, CoxeterError> {
    Ok(match m {
        1 => QuadField::one(),
        2 => QuadField::zero(),
        3 => QuadField::rational(-1, 2),
        4 => QuadField::sqrt2(-1, 2),
        6 => QuadField::sqrt3(-1, 2),
        CoxeterMatrix::INF => QuadField::rational(-1, 1),
        other => return Err(CoxeterError::UnsupportedExponent(other)),
    })
}

pub fn gram_matrix(c: &CoxeterMatrix) -> Result<GramMatrix, CoxeterError> {
    let g = c
        .rows()
        .iter()
        .map(|row| row.iter().map(|&m| cosine_entry(m)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GramMatrix { g })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Signature {
    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

impl GramMatrix {
    pub fn rank(&self) -> usize {
        self.g.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &QuadField {
        &self.g[i][j]
    }

    pub fn restrict(&self, vertices: &[usize]) -> GramMatrix {
        GramMatrix {
            g: vertices
                .iter()
                .map(|&i| vertices.iter().map(|&j| self.g[i][j].clone()).collect())
                .collect(),
        }
    }

    pub fn signature(&self) -> Signature {
        let order: Vec<usize> = (0..self.rank()).collect();
        self.signature_with_pivots(&order)
    }

    /// Symmetric congruence reduction; `preference` fixes the order in which
    /// pivots are tried. By Sylvester's law the result does not depend on it.
    pub fn signature_with_pivots(&self, preference: &[usize]) -> Signature {
        let n = self.rank();
        let mut a = self.g.clone();
        let mut active: Vec<usize> = preference.to_vec();
        let (mut pos, mut neg) = (0, 0);
        while !active.is_empty() {
            let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
                Some(p) => p,
                None => {
                    let pair = active.iter().enumerate().find_map(|(x, &i)| {
                        active.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (x, j))
                    });
                    let Some((x, j)) = pair else { break };
                    let i = active[x];
                    // row_i += row_j, col_i += col_j: a_ii becomes 2 a_ij ≠ 0
                    for k in 0..n {
                        let v = &a[i][k] + &a[j][k];
                        a[i][k] = v;
                    }
                    for k in 0..n {
                        let v = &a[k][i] + &a[k][j];
                        a[k][i] = v;
                    }
                    x
                }
            };
            let i = active.remove(pivot);
            let p = a[i][i].clone();
            match p.signum() {
                1 => pos += 1,
                -1 => neg += 1,
                _ => unreachable!("pivot is nonzero"),
            }
            let inv = p.inverse().expect("nonzero pivot");
            for &k in &active {
                if a[k][i].is_zero() {
                    continue;
                }
                let f = &a[k][i] * &inv;
                for &l in &active {
                    if a[i][l].is_zero() {
                        continue;
                    }
                    let v = &a[k][l] - &(&f * &a[i][l]);
                    a[k][l] = v;
                }
            }
            for &k in &active {
                a[k][i] = QuadField::zero();
                a[i][k] = QuadField::zero();
            }
        }
        Signature { positive: pos, zero: n - pos - neg, negative: neg }
    }
}

/// How `W₀` acts: on a sphere, Euclidean space, or hyperbolic space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeometricType {
    Spherical,
    Euclidean,
    Hyperbolic,
    Other { signature: Signature },
}

impl GeometricType {
    pub fn name(&self) -> &'static str {
        match self {
            GeometricType::Spherical => "Spherical",
            GeometricType::Euclidean => "Euclidean",
            GeometricType::Hyperbolic => "Hyperbolic",
            GeometricType::Other { .. } => "Other",
        }
    }
}

/// Serialized by name; the signature is carried by [`Geometry`].
impl Serialize for GeometricType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Geometric type together with the dimension of the space acted on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Geometry {
    pub kind: GeometricType,
    pub dimension: usize,
    pub signature: Signature,
}

/// Spherical when positive definite; Euclidean when indecomposable with a
/// one-dimensional kernel and no negative direction; hyperbolic when
/// indecomposable with exactly one negative direction. The hyperbolic
/// dimension is the number of positive directions, which is `n − 1` when the
/// matrix is nondegenerate and smaller when the vectors are dependent
/// (e.g. pyramids with `n = d + 2` facets).
pub fn geometric_type(c: &CoxeterMatrix) -> Result<Geometry, CoxeterError> {
    let sig = gram_matrix(c)?.signature();
    let n = c.rank();
    let connected = c.is_connected();
    let (kind, dimension) = if sig.positive == n {
        (GeometricType::Spherical, n.saturating_sub(1))
    } else if connected && sig.negative == 0 && sig.zero == 1 {
        (GeometricType::Euclidean, n - 1)
    } else if connected && sig.negative == 1 {
        (GeometricType::Hyperbolic, sig.positive)
    } else {
        (GeometricType::Other { signature: sig }, n.saturating_sub(1))
    };
    Ok(Geometry { kind, dimension, signature: sig })
}
