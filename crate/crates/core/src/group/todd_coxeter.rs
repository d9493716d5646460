//! Coset enumeration over the trivial subgroup for presentations whose
//! generators are involutions.
//!
//! The table has one column per generator and, since every generator is its
//! own inverse, `table[c][g] = d` always comes with `table[d][g] = c`.
//! Cosets are defined in HLT order; coincidences are merged with a
//! union-find forwarding array. When the table is full a lookahead pass
//! scans every relator without defining new cosets and the table is
//! compacted before enumeration resumes.

use num_bigint::BigUint;

use super::GroupOrderResult;
use crate::presentation::Presentation;

const NONE: u32 = u32::MAX;

/// A complete coset table: `image(c, g)` is the coset reached from `c` by
/// generator `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    table: Vec<u32>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.table.len() / self.generators.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn image(&self, coset: usize, generator: usize) -> usize {
        self.table[coset * self.generators + generator] as usize
    }
}

struct Full;

struct Enumerator<'a> {
    generators: usize,
    relators: &'a [Vec<usize>],
    cap: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    queue: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    fn new(generators: usize, relators: &'a [Vec<usize>], cap: usize) -> Self {
        Enumerator {
            generators,
            relators,
            cap,
            table: vec![NONE; generators],
            parent: vec![0],
            live: 1,
            queue: Vec::new(),
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, g: usize) -> u32 {
        self.table[c as usize * self.generators + g]
    }

    fn set(&mut self, c: u32, g: usize, d: u32) {
        self.table[c as usize * self.generators + g] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, g: usize) -> Result<u32, Full> {
        if self.rows() >= self.cap {
            return Err(Full);
        }
        let d = self.rows() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.generators));
        self.live += 1;
        self.set(c, g, d);
        self.set(d, g, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, dead) = (a.min(b), a.max(b));
        self.parent[dead as usize] = keep;
        self.live -= 1;
        self.queue.push(dead);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut next = 0;
        while next < self.queue.len() {
            let dead = self.queue[next];
            next += 1;
            for g in 0..self.generators {
                let f = self.get(dead, g);
                if f == NONE {
                    continue;
                }
                self.set(f, g, NONE);
                let (e1, f1) = (self.rep(dead), self.rep(f));
                let ee = self.get(e1, g);
                if ee != NONE {
                    self.merge(f1, ee);
                    continue;
                }
                let ff = self.get(f1, g);
                if ff != NONE {
                    self.merge(e1, ff);
                    continue;
                }
                self.set(e1, g, f1);
                self.set(f1, g, e1);
            }
        }
        self.queue.clear();
    }

    /// Traces `relator` from `c` in both directions. With `fill` the gap is
    /// closed by defining cosets; otherwise only deductions and coincidences
    /// are recorded.
    fn scan(&mut self, c: u32, relator: &[usize], fill: bool) -> Result<(), Full> {
        let (mut f, mut b) = (c, c);
        let mut lo = 0usize;
        let mut hi = relator.len();
        loop {
            while lo < hi && self.get(f, relator[lo]) != NONE {
                f = self.get(f, relator[lo]);
                lo += 1;
            }
            if lo == hi {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while hi > lo && self.get(b, relator[hi - 1]) != NONE {
                b = self.get(b, relator[hi - 1]);
                hi -= 1;
            }
            if lo == hi {
                self.coincidence(f, b);
                return Ok(());
            }
            if hi - lo == 1 {
                let g = relator[lo];
                self.set(f, g, b);
                self.set(b, g, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, relator[lo])?;
        }
    }

    /// Runs the lookahead pass, then renumbers live cosets in order. Returns
    /// the new index of the first live coset at or after `pointer`.
    fn lookahead_and_compact(&mut self, pointer: usize) -> usize {
        let mut c = 0;
        while c < self.rows() {
            for r in 0..self.relators.len() {
                if !self.is_live(c as u32) {
                    break;
                }
                let relators = self.relators;
                let _ = self.scan(c as u32, &relators[r], false);
            }
            c += 1;
        }
        let mut renumber = vec![NONE; self.rows()];
        let mut fresh = 0u32;
        let mut new_pointer = None;
        for c in 0..self.rows() {
            if c >= pointer && new_pointer.is_none() && self.is_live(c as u32) {
                new_pointer = Some(fresh as usize);
            }
            if self.is_live(c as u32) {
                renumber[c] = fresh;
                fresh += 1;
            }
        }
        let mut table = Vec::with_capacity(fresh as usize * self.generators);
        for c in 0..self.rows() {
            if renumber[c] == NONE {
                continue;
            }
            for g in 0..self.generators {
                let d = self.get(c as u32, g);
                table.push(if d == NONE { NONE } else { renumber[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..fresh).collect();
        self.live = fresh as usize;
        new_pointer.unwrap_or(fresh as usize)
    }

    fn run(mut self) -> Option<CosetTable> {
        let mut c = 0usize;
        while c < self.rows() {
            let step = (|| {
                for r in 0..self.relators.len() {
                    if !self.is_live(c as u32) {
                        return Ok(());
                    }
                    let relators = self.relators;
                    self.scan(c as u32, &relators[r], true)?;
                }
                for g in 0..self.generators {
                    if !self.is_live(c as u32) {
                        return Ok(());
                    }
                    if self.get(c as u32, g) == NONE {
                        self.define(c as u32, g)?;
                    }
                }
                Ok::<(), Full>(())
            })();
            match step {
                Ok(()) => c += 1,
                Err(Full) => {
                    c = self.lookahead_and_compact(c);
                    if self.rows() + self.cap / 8 >= self.cap {
                        return None;
                    }
                }
            }
        }
        let pointer = self.rows();
        self.lookahead_and_compact(pointer);
        Some(CosetTable { generators: self.generators, table: self.table })
    }
}

/// Enumerates the cosets of the trivial subgroup in the group with
/// involutive generators `0..generators` and the given relators. Returns
/// `None` once more than `cap` cosets would be needed.
pub fn enumerate_cosets(generators: usize, relators: &[Vec<usize>], cap: usize) -> Option<CosetTable> {
    let relators: Vec<Vec<usize>> = relators.iter().filter(|r| !r.is_empty()).cloned().collect();
    if generators == 0 {
        return Some(CosetTable { generators: 0, table: Vec::new() });
    }
    Enumerator::new(generators, &relators, cap.max(1)).run()
}

/// Order of the group defined by `p`.
pub fn todd_coxeter(p: &Presentation, cap: usize) -> GroupOrderResult {
    let relators: Vec<Vec<usize>> = p.relator_words().iter().map(|w| w.letters().to_vec()).collect();
    if p.generators() == 0 {
        return BigUint::from(1u32).into();
    }
    match enumerate_cosets(p.generators(), &relators, cap) {
        Some(table) => BigUint::from(table.len()).into(),
        None => GroupOrderResult::ExceedsCap { cap },
    }
}
