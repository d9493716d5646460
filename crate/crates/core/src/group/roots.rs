use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;

use super::perm::{group_order, Perm};
use super::GroupError;
use crate::coxeter::{catalogue_matrix, CoxeterMatrix, Family, TypeLabel};
use crate::presentation::Word;

/// Cartan matrix of a Coxeter tree with exponents in `{2, 3, 4, 6}`.
///
/// For an edge `i < j` with `m = 4` or `6` the default puts the long root at
/// `i` (`a_ij = −1`, `a_ji = −2` or `−3`); bit `e` of `flips` swaps the
/// orientation of the `e`-th such edge in row-major order.
pub fn cartan_from_coxeter(c: &CoxeterMatrix, flips: u32) -> Result<Vec<Vec<i64>>, GroupError> {
    let n = c.rank();
    let mut a = vec![vec![0i64; n]; n];
    let mut edge = 0;
    for i in 0..n {
        a[i][i] = 2;
        for j in (i + 1)..n {
            let (x, y) = match c.get(i, j) {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-1, -2),
                6 => (-1, -3),
                m => return Err(GroupError::NotCrystallographic(format!("m = {m}"))),
            };
            let (x, y) = if x != y {
                let flip = flips >> edge & 1 == 1;
                edge += 1;
                if flip {
                    (y, x)
                } else {
                    (x, y)
                }
            } else {
                (x, y)
            };
            a[i][j] = x;
            a[j][i] = y;
        }
    }
    Ok(a)
}

/// Number of edges whose orientation [`cartan_from_coxeter`] can flip.
pub fn orientable_edges(c: &CoxeterMatrix) -> usize {
    let n = c.rank();
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| matches!(c.get(i, j), 4 | 6))
        .count()
}

/// A finite crystallographic root system in simple-root coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    cartan: Vec<Vec<i64>>,
    /// Twice the invariant form on simple roots.
    form: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

/// Squared lengths of the simple roots (up to a common factor) making
/// `diag(len) · A` symmetric, scaled so the smallest is 1.
fn root_lengths(cartan: &[Vec<i64>]) -> Result<Vec<i64>, GroupError> {
    let n = cartan.len();
    let mut len = vec![0i64; n];
    for start in 0..n {
        if len[start] != 0 {
            continue;
        }
        len[start] = 6;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                // a_ij · len_i = a_ji · len_j
                let num = cartan[i][j] * len[i];
                if num % cartan[j][i] != 0 {
                    return Err(GroupError::NotCrystallographic("unsymmetrizable Cartan matrix".into()));
                }
                let lj = num / cartan[j][i];
                if len[j] == 0 {
                    len[j] = lj;
                    queue.push_back(j);
                } else if len[j] != lj {
                    return Err(GroupError::NotCrystallographic("unsymmetrizable Cartan matrix".into()));
                }
            }
        }
    }
    let g = len.iter().copied().fold(0, num_integer::gcd);
    Ok(len.into_iter().map(|x| x / g).collect())
}

impl RootSystem {
    /// Root system of a finite crystallographic catalogue label, with simple
    /// roots numbered like the catalogue nodes.
    pub fn new(label: TypeLabel) -> Result<Self, GroupError> {
        Self::with_orientation(label, 0)
    }

    pub fn with_orientation(label: TypeLabel, flips: u32) -> Result<Self, GroupError> {
        if label.affine || matches!(label.family, Family::H | Family::I(_)) {
            return Err(GroupError::NotCrystallographic(label.to_string()));
        }
        let c = catalogue_matrix(&label).ok_or_else(|| GroupError::NotCrystallographic(label.to_string()))?;
        Self::from_cartan(label, cartan_from_coxeter(&c, flips)?)
    }

    pub fn from_cartan(label: TypeLabel, cartan: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        let n = cartan.len();
        let len = root_lengths(&cartan)?;
        let form: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| cartan[i][j] * len[i]).collect()).collect();
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut index = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            index.insert(e.clone(), roots.len());
            roots.push(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                let mut image = beta.clone();
                image[i] -= pairing;
                if !index.contains_key(&image) {
                    index.insert(image.clone(), roots.len());
                    roots.push(image.clone());
                    queue.push_back(image);
                }
            }
            if roots.len() > 100_000 {
                return Err(GroupError::NotCrystallographic("root system is infinite".into()));
            }
        }
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        let index = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        Ok(RootSystem { label, cartan, form, roots, index })
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn index_of(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }

    /// Twice the invariant inner product.
    fn dot2(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| x[i] * self.form[i][j] * y[j]).sum::<i64>()).sum()
    }

    pub fn squared_length(&self, beta: &[i64]) -> i64 {
        self.dot2(beta, beta)
    }

    /// `⟨x, β^∨⟩ = 2(x, β)/(β, β)`; integral for roots `β` and lattice `x`.
    pub fn pairing(&self, x: &[i64], beta: &[i64]) -> i64 {
        let num = 2 * self.dot2(x, beta);
        let den = self.dot2(beta, beta);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// `s_β(x) = x − ⟨x, β^∨⟩ β`.
    pub fn reflect(&self, x: &[i64], beta: &[i64]) -> Vec<i64> {
        let p = self.pairing(x, beta);
        x.iter().zip(beta).map(|(a, b)| a - p * b).collect()
    }

    /// Matrix of `s_β` acting on column vectors of simple-root coordinates.
    pub fn reflection_matrix(&self, beta: &[i64]) -> Vec<Vec<i64>> {
        let n = self.rank();
        let cols: Vec<Vec<i64>> = (0..n).map(|j| self.reflect(&self.simple_root(j), beta)).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }

    /// Permutation of root indices induced by `s_β`.
    pub fn reflection_perm(&self, beta: &[i64]) -> Result<Perm, GroupError> {
        if !self.is_root(beta) {
            return Err(GroupError::NotARoot(beta.to_vec()));
        }
        let images = self
            .roots
            .iter()
            .map(|r| self.index[&self.reflect(r, beta)] as u32)
            .collect();
        Ok(Perm::from_images(images).expect("reflections permute roots"))
    }

    pub fn is_positive(&self, root: &[i64]) -> bool {
        root.iter().all(|&x| x >= 0)
    }

    /// The positive root of the pair `±root`.
    pub fn positive(&self, root: &[i64]) -> Vec<i64> {
        if self.is_positive(root) {
            root.to_vec()
        } else {
            root.iter().map(|x| -x).collect()
        }
    }

    pub fn highest_root(&self) -> Vec<i64> {
        self.roots.last().expect("nonempty").clone()
    }

    pub fn highest_short_root(&self) -> Vec<i64> {
        let short = self.roots.iter().map(|r| self.squared_length(r)).min().unwrap();
        self.roots.iter().rev().find(|r| self.squared_length(r) == short).unwrap().clone()
    }

    pub fn permutation_rep(&self) -> PermutationRep {
        let generators = (0..self.rank())
            .map(|i| self.reflection_perm(&self.simple_root(i)).expect("simple roots are roots"))
            .collect();
        PermutationRep { degree: self.roots.len(), generators }
    }

    /// Representation whose `i`-th generator is the reflection in `roots[i]`.
    pub fn reflection_rep(&self, roots: &[Vec<i64>]) -> Result<PermutationRep, GroupError> {
        let generators = roots.iter().map(|r| self.reflection_perm(r)).collect::<Result<_, _>>()?;
        Ok(PermutationRep { degree: self.roots.len(), generators })
    }
}

/// Involutive generators acting on a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationRep {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermutationRep {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        PermutationRep { degree, generators }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// The product of the word's letters, read left to right.
    pub fn evaluate(&self, w: &Word) -> Result<Perm, GroupError> {
        let mut g = Perm::identity(self.degree);
        for &x in w.letters() {
            let p = self.generators.get(x).ok_or(GroupError::GeneratorOutOfRange {
                index: x,
                generators: self.generators.len(),
            })?;
            g = g.then(p);
        }
        Ok(g)
    }

    pub fn order(&self) -> BigUint {
        group_order(self.degree, &self.generators)
    }

    /// Order of the subgroup generated by the images of `words`.
    pub fn subgroup_order(&self, words: &[Word]) -> Result<BigUint, GroupError> {
        let gens = words.iter().map(|w| self.evaluate(w)).collect::<Result<Vec<_>, _>>()?;
        Ok(group_order(self.degree, &gens))
    }

    /// The representation whose generators are the images of `words`.
    pub fn pullback(&self, words: &[Word]) -> Result<PermutationRep, GroupError> {
        let generators = words.iter().map(|w| self.evaluate(w)).collect::<Result<_, _>>()?;
        Ok(PermutationRep { degree: self.degree, generators })
    }
}
