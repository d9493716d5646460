//! Coxeter data, cycle relators and group presentations of diagrams, and the
//! change of generators under mutation.

mod text;
mod word;

use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::coxeter::CoxeterMatrix;
use crate::exchange::Diagram;

pub use text::{emit_presentation, parse_presentation, ParseError};
pub use word::{evolve_generators, GeneratorWords, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("edge {}->{} has label {label}; only labels 1 to 4 occur", from + 1, to + 1)]
    UnsupportedLabel { from: usize, to: usize, label: u64 },
    #[error("{0:?} is not a chordless oriented cycle")]
    NotACycle(Vec<usize>),
    #[error("cycle {cycle:?} has no rotation with t = 0 (values {values:?})")]
    NoCommutingRotation { cycle: Vec<usize>, values: Vec<u64> },
    #[error("label product along {0:?} is not a perfect square")]
    NotSquare(Vec<usize>),
}

/// Coxeter exponent attached to an edge label; label 4 gives `∞`.
pub fn exponent_for_label(label: u64) -> Option<u32> {
    match label {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        4 => Some(CoxeterMatrix::INF),
        _ => None,
    }
}

/// Coxeter matrix of the group generated by the vertices of `g` subject to
/// the involution and pair relations only.
pub fn coxeter_data(g: &Diagram) -> Result<CoxeterMatrix, PresentationError> {
    let n = g.rank();
    if let Some(e) = g.edges().into_iter().find(|e| e.label > 4) {
        return Err(PresentationError::UnsupportedLabel { from: e.from, to: e.to, label: e.label });
    }
    let m = CoxeterMatrix::from_fn(n, |i, j| exponent_for_label(g.label(i, j)).expect("label ≤ 4"))
        .expect("exponents are valid");
    Ok(m)
}

/// `(g_i g_j)^m = e` for a finite exponent `m`; indices satisfy `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PowerRelator {
    pub i: usize,
    pub j: usize,
    pub m: u32,
}

/// The relator of one chordless oriented cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleRelator {
    /// Vertices along the arrows, starting at the least one.
    pub cycle: Vec<usize>,
    /// Position in `cycle` at which the relator word starts.
    pub rotation: usize,
    pub t_value: u64,
    pub exponent: u32,
    /// The base word; the relator is `word^exponent`.
    pub word: Word,
}

/// Exponent `m(l)` for the rotation value `t(l)`.
pub fn exponent_for_t(t: u64) -> Option<u32> {
    match t {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

fn t_for_exponent(m: u32) -> Option<u64> {
    match m {
        2 => Some(0),
        3 => Some(1),
        4 => Some(2),
        6 => Some(3),
        _ => None,
    }
}

/// `s_{i_l} s_{i_{l+1}} … s_{i_{l+d−2}} s_{i_{l+d−1}} s_{i_{l+d−2}} … s_{i_{l+1}}`
pub fn cycle_word(cycle: &[usize], rotation: usize) -> Word {
    let d = cycle.len();
    let at = |p: usize| cycle[(rotation + p) % d];
    let mut letters: Vec<usize> = (0..d).map(at).collect();
    letters.extend((1..d - 1).rev().map(at));
    Word::new(letters)
}

impl CycleRelator {
    /// Builds the relator for `cycle` (listed along the arrows, any rotation)
    /// from the rotation `rotation` of the normalized cycle and the exponent.
    pub fn from_parts(cycle: &[usize], rotation: usize, exponent: u32) -> Option<Self> {
        let cycle = normalize_cycle(cycle);
        let t_value = t_for_exponent(exponent)?;
        (rotation < cycle.len()).then(|| CycleRelator {
            word: cycle_word(&cycle, rotation),
            cycle,
            rotation,
            t_value,
            exponent,
        })
    }

    /// The cycle listed from the chosen rotation onwards.
    pub fn rotated_cycle(&self) -> Vec<usize> {
        let d = self.cycle.len();
        (0..d).map(|p| self.cycle[(self.rotation + p) % d]).collect()
    }
}

fn normalize_cycle(cycle: &[usize]) -> Vec<usize> {
    let start = (0..cycle.len()).min_by_key(|&p| cycle[p]).unwrap_or(0);
    (0..cycle.len()).map(|p| cycle[(start + p) % cycle.len()]).collect()
}

/// `t(l)` for every rotation of an oriented cycle of `g`.
pub fn rotation_values(g: &Diagram, cycle: &[usize]) -> Result<Vec<u64>, PresentationError> {
    let d = cycle.len();
    if d < 3 || (0..d).any(|p| !g.has_arrow(cycle[p], cycle[(p + 1) % d])) {
        return Err(PresentationError::NotACycle(cycle.to_vec()));
    }
    let w: Vec<u64> = (0..d).map(|p| g.label(cycle[p], cycle[(p + 1) % d])).collect();
    let total: u64 = w.iter().product();
    let root = total.sqrt();
    if root * root != total {
        return Err(PresentationError::NotSquare(cycle.to_vec()));
    }
    Ok((0..d)
        .map(|l| {
            // closing edge runs from position l+d−1 back to l
            let closing = w[(l + d - 1) % d];
            let path = total / closing;
            path + closing - 2 * root
        })
        .collect())
}

/// The relator of a chordless oriented cycle for the least rotation with
/// `t(l) = 0`.
pub fn cycle_relator(g: &Diagram, cycle: &[usize]) -> Result<CycleRelator, PresentationError> {
    let cycle = normalize_cycle(cycle);
    let values = rotation_values(g, &cycle)?;
    let rotation = values
        .iter()
        .position(|&t| t == 0)
        .ok_or_else(|| PresentationError::NoCommutingRotation { cycle: cycle.clone(), values })?;
    Ok(CycleRelator::from_parts(&cycle, rotation, 2).expect("exponent 2 is valid"))
}

/// `(word)^exponent = e`, supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExtraRelator {
    pub word: Word,
    pub exponent: u32,
}

/// Involutive generators with power, cycle and extra relators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    generators: usize,
    power_relators: Vec<PowerRelator>,
    cycle_relators: Vec<CycleRelator>,
    extra_relators: Vec<ExtraRelator>,
}

impl Presentation {
    /// Power and cycle relators are stored sorted; extra relators keep their
    /// order.
    pub fn new(
        generators: usize,
        mut power_relators: Vec<PowerRelator>,
        mut cycle_relators: Vec<CycleRelator>,
        extra_relators: Vec<ExtraRelator>,
    ) -> Self {
        power_relators.sort();
        cycle_relators.sort();
        Presentation { generators, power_relators, cycle_relators, extra_relators }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn power_relators(&self) -> &[PowerRelator] {
        &self.power_relators
    }

    pub fn cycle_relators(&self) -> &[CycleRelator] {
        &self.cycle_relators
    }

    pub fn extra_relators(&self) -> &[ExtraRelator] {
        &self.extra_relators
    }

    /// Same generators and power relators, no cycle or extra relators.
    pub fn coxeter_part(&self) -> Presentation {
        Presentation::new(self.generators, self.power_relators.clone(), Vec::new(), Vec::new())
    }

    pub fn with_extra(mut self, extra: Vec<ExtraRelator>) -> Presentation {
        self.extra_relators.extend(extra);
        self
    }

    /// Every relator written out as a word, excluding the implicit squares of
    /// the generators.
    pub fn relator_words(&self) -> Vec<Word> {
        let pow = self
            .power_relators
            .iter()
            .map(|r| Word::new(vec![r.i, r.j]).power(r.m));
        let cyc = self.cycle_relators.iter().map(|r| r.word.power(r.exponent));
        let extra = self.extra_relators.iter().map(|r| r.word.power(r.exponent));
        pow.chain(cyc).chain(extra).collect()
    }
}

/// The presentation of `W(g)`: pair relators from the Coxeter data, one
/// relator per chordless oriented cycle, then `extra` verbatim.
pub fn build_presentation(
    g: &Diagram,
    extra: Vec<ExtraRelator>,
) -> Result<Presentation, PresentationError> {
    let c = coxeter_data(g)?;
    let n = g.rank();
    let mut power = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = c.get(i, j);
            if m != CoxeterMatrix::INF {
                power.push(PowerRelator { i, j, m });
            }
        }
    }
    let cycles = g
        .chordless_oriented_cycles()
        .iter()
        .map(|cyc| cycle_relator(g, cyc))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Presentation::new(n, power, cycles, extra))
}
