//! Identification of connected Coxeter diagrams against the finite and affine
//! catalogues.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::CoxeterMatrix;

const INF: u32 = CoxeterMatrix::INF;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    /// Only used for the affine family `C̃_n`; finite `C_n` is stored as `B_n`.
    C,
    D,
    E,
    F,
    G,
    H,
    /// Dihedral `I₂(m)` for `m` not covered by `A₂`, `B₂`, `G₂`.
    I(u32),
}

/// A catalogue entry: finite `X_n` or affine `X̃_n` (written `~Xn`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
    pub affine: bool,
}

impl TypeLabel {
    pub const fn finite(family: Family, rank: usize) -> Self {
        TypeLabel { family, rank, affine: false }
    }

    pub const fn affine(family: Family, rank: usize) -> Self {
        TypeLabel { family, rank, affine: true }
    }

    /// Number of generators of the Coxeter group.
    pub fn generators(&self) -> usize {
        if self.affine {
            self.rank + 1
        } else {
            self.rank
        }
    }

    /// Order of the finite Coxeter group, `None` for affine labels.
    pub fn order(&self) -> Option<BigUint> {
        if self.affine {
            return None;
        }
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).fold(BigUint::one(), |acc, x| acc * x);
        let pow2 = |k: u64| BigUint::one() << k;
        Some(match self.family {
            Family::A => fact(n + 1),
            Family::B => pow2(n) * fact(n),
            Family::D => pow2(n - 1) * fact(n),
            Family::E => BigUint::from(match n {
                6 => 51_840u64,
                7 => 2_903_040,
                8 => 696_729_600,
                _ => unreachable!("E{n} is not a finite type"),
            }),
            Family::C => unreachable!("finite C_n is stored as B_n"),
            Family::F => BigUint::from(1152u32),
            Family::G => BigUint::from(12u32),
            Family::H => BigUint::from(if n == 3 { 120u32 } else { 14_400 }),
            Family::I(m) => BigUint::from(2 * m),
        })
    }

    /// Parses labels such as `A4`, `E8`, `B3`, `~A3`, `~G2`, `I2(5)`.
    pub fn parse(text: &str) -> Option<Self> {
        let t = text.trim();
        let (affine, t) = match t.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        if let Some(m) = t.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            return Some(TypeLabel { family: Family::I(m.parse().ok()?), rank: 2, affine });
        }
        let mut chars = t.chars();
        let family = match chars.next()?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' if affine => Family::C,
            'C' => Family::B,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            'H' => Family::H,
            _ => return None,
        };
        let rank: usize = chars.as_str().parse().ok()?;
        let label = TypeLabel { family, rank, affine };
        catalogue_matrix(&label).map(|_| label)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tilde = if self.affine { "~" } else { "" };
        match self.family {
            Family::I(m) => write!(f, "{tilde}I2({m})"),
            fam => write!(f, "{tilde}{:?}{}", fam, self.rank),
        }
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn path(n: usize) -> Vec<Vec<u32>> {
    let mut m = vec![vec![2; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for i in 0..n.saturating_sub(1) {
        m[i][i + 1] = 3;
        m[i + 1][i] = 3;
    }
    m
}

fn join(m: &mut [Vec<u32>], i: usize, j: usize, v: u32) {
    m[i][j] = v;
    m[j][i] = v;
}

/// Coxeter matrix of a catalogue entry with the standard node numbering, or
/// `None` when the label does not exist.
pub fn catalogue_matrix(label: &TypeLabel) -> Option<CoxeterMatrix> {
    let n = label.rank;
    let m = match (label.affine, label.family) {
        (false, Family::A) if n >= 1 => path(n),
        (false, Family::B) if n >= 2 => {
            let mut m = path(n);
            join(&mut m, n - 2, n - 1, 4);
            m
        }
        (false, Family::D) if n >= 4 => {
            let mut m = path(n - 1);
            for row in m.iter_mut() {
                row.push(2);
            }
            m.push(vec![2; n]);
            m[n - 1][n - 1] = 1;
            join(&mut m, n - 3, n - 1, 3);
            m
        }
        (false, Family::E) if (6..=8).contains(&n) => {
            let mut m = path(n - 1);
            for row in m.iter_mut() {
                row.push(2);
            }
            m.push(vec![2; n]);
            m[n - 1][n - 1] = 1;
            join(&mut m, 2, n - 1, 3);
            m
        }
        (false, Family::F) if n == 4 => {
            let mut m = path(4);
            join(&mut m, 1, 2, 4);
            m
        }
        (false, Family::G) if n == 2 => {
            let mut m = path(2);
            join(&mut m, 0, 1, 6);
            m
        }
        (false, Family::H) if n == 3 || n == 4 => {
            let mut m = path(n);
            join(&mut m, 0, 1, 5);
            m
        }
        (false, Family::I(k)) if n == 2 && k >= 2 && k != INF => {
            let mut m = path(2);
            join(&mut m, 0, 1, k);
            m
        }
        (true, Family::A) if n == 1 => {
            let mut m = path(2);
            join(&mut m, 0, 1, INF);
            m
        }
        (true, Family::A) if n >= 2 => {
            let mut m = path(n + 1);
            join(&mut m, 0, n, 3);
            m
        }
        (true, Family::B) if n >= 3 => {
            // fork {0, 1} at node 2, chain up to node n with a 4 at the end
            let mut m = path(n + 1);
            join(&mut m, 0, 1, 2);
            join(&mut m, 0, 2, 3);
            join(&mut m, n - 1, n, 4);
            m
        }
        (true, Family::C) if n >= 2 => {
            let mut m = path(n + 1);
            join(&mut m, 0, 1, 4);
            join(&mut m, n - 1, n, 4);
            m
        }
        (true, Family::D) if n >= 4 => {
            let mut m = path(n + 1);
            join(&mut m, 0, 1, 2);
            join(&mut m, 0, 2, 3);
            join(&mut m, n - 1, n, 2);
            join(&mut m, n - 2, n, 3);
            m
        }
        (true, Family::E) if (6..=8).contains(&n) => {
            // arms of lengths (2,2,2), (1,3,3), (1,2,5) around a centre
            let arms: [usize; 3] = match n {
                6 => [2, 2, 2],
                7 => [1, 3, 3],
                _ => [1, 2, 5],
            };
            let mut m = path(n + 1);
            for row in m.iter_mut() {
                row.iter_mut().filter(|x| **x == 3).for_each(|x| *x = 2);
            }
            let mut next = 1;
            for len in arms {
                let mut prev = 0;
                for _ in 0..len {
                    join(&mut m, prev, next, 3);
                    prev = next;
                    next += 1;
                }
            }
            m
        }
        (true, Family::F) if n == 4 => {
            let mut m = path(5);
            join(&mut m, 2, 3, 4);
            m
        }
        (true, Family::G) if n == 2 => {
            let mut m = path(3);
            join(&mut m, 1, 2, 6);
            m
        }
        _ => return None,
    };
    Some(CoxeterMatrix::new(m).expect("catalogue matrices are valid"))
}

/// Searches for a bijection `f` with `a[i][j] == b[f(i)][f(j)]`.
pub fn coxeter_isomorphism(a: &CoxeterMatrix, b: &CoxeterMatrix) -> Option<Vec<usize>> {
    let n = a.rank();
    if n != b.rank() {
        return None;
    }
    let profile = |c: &CoxeterMatrix, v: usize| {
        let mut p: Vec<u32> = (0..c.rank()).filter(|&w| w != v).map(|w| c.get(v, w)).collect();
        p.sort_unstable();
        p
    };
    let pa: Vec<_> = (0..n).map(|v| profile(a, v)).collect();
    let pb: Vec<_> = (0..n).map(|v| profile(b, v)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        a: &CoxeterMatrix,
        b: &CoxeterMatrix,
        pa: &[Vec<u32>],
        pb: &[Vec<u32>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = a.rank();
        if k == n {
            return true;
        }
        for t in 0..n {
            if used[t] || pa[k] != pb[t] {
                continue;
            }
            if (0..k).any(|i| a.get(i, k) != b.get(map[i], t)) {
                continue;
            }
            map[k] = t;
            used[t] = true;
            if go(k + 1, a, b, pa, pb, map, used) {
                return true;
            }
            used[t] = false;
        }
        false
    }
    go(0, a, b, &pa, &pb, &mut map, &mut used).then_some(map)
}

fn candidates(size: usize) -> Vec<TypeLabel> {
    use Family::*;
    let mut out = Vec::new();
    for fam in [A, B, D, E, F, G, H] {
        out.push(TypeLabel::finite(fam, size));
    }
    if size >= 2 {
        for fam in [A, B, C, D, E, F, G] {
            out.push(TypeLabel::affine(fam, size - 1));
        }
    }
    out
}

/// Identifies a connected Coxeter diagram. Returns the label and the map from
/// the diagram's vertices to catalogue nodes.
pub fn identify(c: &CoxeterMatrix) -> Option<(TypeLabel, Vec<usize>)> {
    let n = c.rank();
    if n == 2 {
        let m = c.get(0, 1);
        let label = match m {
            3 => TypeLabel::finite(Family::A, 2),
            4 => TypeLabel::finite(Family::B, 2),
            6 => TypeLabel::finite(Family::G, 2),
            INF => TypeLabel::affine(Family::A, 1),
            k => TypeLabel::finite(Family::I(k), 2),
        };
        return Some((label, vec![0, 1]));
    }
    candidates(n).into_iter().find_map(|label| {
        let cat = catalogue_matrix(&label)?;
        coxeter_isomorphism(c, &cat).map(|f| (label, f))
    })
}

/// One connected component and its identification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// `None` when the component matches neither catalogue.
    pub label: Option<TypeLabel>,
    /// `node_map[p]` is the catalogue node of `vertices[p]`.
    #[serde(skip)]
    pub node_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClassification {
    pub components: Vec<Component>,
    /// Product of component orders when every component is finite.
    #[serde(serialize_with = "crate::serde_util::opt_biguint")]
    pub order: Option<BigUint>,
}

impl ComponentClassification {
    pub fn all_finite(&self) -> bool {
        self.order.is_some()
    }

    pub fn all_affine(&self) -> bool {
        self.components.iter().all(|c| c.label.is_some_and(|l| l.affine))
    }
}

pub fn classify_components(c: &CoxeterMatrix) -> ComponentClassification {
    classify_subset(c, &(0..c.rank()).collect::<Vec<_>>())
}

/// Classification of the subdiagram spanned by `vertices` (ascending).
pub fn classify_subset(c: &CoxeterMatrix, vertices: &[usize]) -> ComponentClassification {
    let mut order = Some(BigUint::one());
    let components: Vec<Component> = c
        .components_of(vertices)
        .into_iter()
        .map(|verts| {
            let sub = c.restrict(&verts);
            let (label, node_map) = if verts.len() == 1 {
                (Some(TypeLabel::finite(Family::A, 1)), vec![0])
            } else {
                match identify(&sub) {
                    Some((l, f)) => (Some(l), f),
                    None => (None, Vec::new()),
                }
            };
            order = match (order.take(), label.and_then(|l| l.order())) {
                (Some(acc), Some(o)) => Some(acc * o),
                _ => None,
            };
            Component { vertices: verts, label, node_map }
        })
        .collect();
    ComponentClassification { components, order }
}
