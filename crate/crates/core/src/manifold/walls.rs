use serde::Serialize;

use super::realization::{Realization, Source};
use super::ManifoldError;
use crate::exchange::{ExchangeError, ExchangeMatrix};
use crate::presentation::Word;
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Side {
    fn flipped(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
        }
    }
}

/// The wall of the `i`-th generator after a mutation sequence: the image of
/// the original wall `α_i` under `conjugator`, with a chosen side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub conjugator: Word,
    pub side: Side,
}

impl Wall {
    /// The reflection in this wall, `c s_i c⁻¹`, as a reduced word.
    pub fn reflection(&self, i: usize) -> Word {
        self.conjugator.conjugate(&Word::generator(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallTracking {
    pub walls: Vec<Wall>,
}

/// Follows the walls of the fundamental domain through `seq`. At a step at
/// `k`, every `i` with an arrow `i → k` has its wall moved by the current
/// reflection `t_k`, and the wall of `k` changes side.
pub fn track_walls(m: &ExchangeMatrix, seq: &[usize]) -> Result<WallTracking, ExchangeError> {
    let n = m.rank();
    let mut walls = vec![Wall { conjugator: Word::identity(), side: Side::Positive }; n];
    let mut current = m.clone();
    for &k in seq {
        let next = current.mutate(k)?;
        let reflection_k = walls[k].reflection(k);
        for (i, wall) in walls.iter_mut().enumerate() {
            if current.entry(i, k) > 0 {
                wall.conjugator = reflection_k.concat(&wall.conjugator).reduced();
            }
        }
        walls[k].side = walls[k].side.flipped();
        current = next;
    }
    Ok(WallTracking { walls })
}

/// Roots of `W` whose reflections are the generator images of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompanionBasis {
    pub roots: Vec<Vec<i64>>,
}

/// The companion basis of a diagram of finite type: the `i`-th root is the
/// image of the simple root of the Dynkin generator conjugated by the
/// evolved word, made positive.
pub fn companion_basis(m: &ExchangeMatrix, caps: &Caps) -> Result<CompanionBasis, ManifoldError> {
    let r = Realization::for_matrix(m, caps)?;
    Ok(companion_basis_of(&r))
}

pub fn companion_basis_of(r: &Realization) -> CompanionBasis {
    let rs = r.root_system();
    let roots = match r.source() {
        Source::Roots(roots) => roots.iter().map(|x| rs.positive(x)).collect(),
        Source::Evolved { words, node_map, .. } => words
            .words()
            .iter()
            .map(|w| {
                let letters = w.letters();
                let mid = letters.len() / 2;
                // the word is an odd palindrome c s_v c⁻¹ and the root is c(α_v)
                let mut root = rs.simple_root(node_map[letters[mid]]);
                for &x in letters[..mid].iter().rev() {
                    root = rs.reflect(&root, &rs.simple_root(node_map[x]));
                }
                rs.positive(&root)
            })
            .collect(),
    };
    CompanionBasis { roots }
}
