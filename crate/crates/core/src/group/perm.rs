use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Returns `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen.get_mut(x as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut order = 1u64;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// Stabilizer chain relative to the base `0, 1, …, degree − 1`.
///
/// Level `k` holds the stabilizer `G_k` of the points `0..k`; `reps[k][j]`
/// is an element of `G_k` mapping `k` to `j`, so `|G_k : G_{k+1}|` is the
/// number of stored representatives. The table is filled by Knuth's
/// deterministic variant of Schreier–Sims: every product of a representative
/// with a generator of its level is either a new representative or yields a
/// Schreier generator that is added one level down unless it already sifts.
pub struct StabilizerChain {
    degree: usize,
    gens: Vec<Vec<Perm>>,
    reps: Vec<Vec<Option<Perm>>>,
}

enum Task {
    /// Make sure the element (in `G_k`) lies in the group of level `k`.
    Add(usize, Perm),
    /// Record the coset of an element of `G_k` at level `k`.
    Coset(usize, Perm),
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Self {
        let mut chain = StabilizerChain { degree, gens: Vec::new(), reps: Vec::new() };
        let mut tasks: Vec<Task> = generators.iter().map(|g| Task::Add(0, g.clone())).collect();
        tasks.reverse();
        while let Some(task) = tasks.pop() {
            match task {
                Task::Add(k, g) => {
                    if chain.sift_from(k, g.clone()).is_none() {
                        continue;
                    }
                    chain.ensure_level(k);
                    chain.gens[k].push(g.clone());
                    for rep in chain.reps[k].iter().flatten() {
                        tasks.push(Task::Coset(k, rep.then(&g)));
                    }
                }
                Task::Coset(k, g) => {
                    let j = g.image(k);
                    match &chain.reps[k][j] {
                        None => {
                            for t in &chain.gens[k] {
                                tasks.push(Task::Coset(k, g.then(t)));
                            }
                            chain.reps[k][j] = Some(g);
                        }
                        Some(rep) => {
                            let h = g.then(&rep.inverse());
                            tasks.push(Task::Add(k + 1, h));
                        }
                    }
                }
            }
        }
        chain
    }

    fn ensure_level(&mut self, k: usize) {
        while self.reps.len() <= k {
            let level = self.reps.len();
            let mut reps = vec![None; self.degree];
            reps[level] = Some(Perm::identity(self.degree));
            self.reps.push(reps);
            self.gens.push(Vec::new());
        }
    }

    /// Strips `g` through the levels starting at `k`. Returns `None` when it
    /// sifts to the identity, otherwise the first level whose coset is
    /// missing together with the residue.
    fn sift_from(&self, mut k: usize, mut g: Perm) -> Option<(usize, Perm)> {
        loop {
            while k < self.degree && g.image(k) == k {
                k += 1;
            }
            if k >= self.degree {
                return None;
            }
            let j = g.image(k);
            match self.reps.get(k).and_then(|r| r[j].as_ref()) {
                Some(rep) => g = g.then(&rep.inverse()),
                None => return Some((k, g)),
            }
        }
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift_from(0, g.clone()).is_none()
    }

    pub fn order(&self) -> BigUint {
        self.reps.iter().fold(BigUint::one(), |acc, level| {
            acc * BigUint::from(level.iter().filter(|r| r.is_some()).count())
        })
    }
}

/// Order of the group generated by `generators`, all of degree `degree`.
pub fn group_order(degree: usize, generators: &[Perm]) -> BigUint {
    StabilizerChain::new(degree, generators).order()
}
