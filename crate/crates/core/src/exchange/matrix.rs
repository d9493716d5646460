use serde::{Deserialize, Serialize};

use super::ExchangeError;

/// A skew-symmetrizable integer matrix `B` together with its symmetrizer `D`.
///
/// Vertices are 0-based internally. The JSON form (see [`ExchangeMatrix::from_json`])
/// uses the same indexing for rows but is otherwise independent of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeMatrix {
    b: Vec<Vec<i64>>,
    d: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    b: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<i64>>,
}

impl Serialize for ExchangeMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixFile {
            n: self.rank(),
            b: self.b.clone(),
            d: if self.is_skew_symmetric() { None } else { Some(self.d.clone()) },
        }
        .serialize(s)
    }
}

impl ExchangeMatrix {
    /// Builds a matrix with an all-ones symmetrizer (a quiver).
    pub fn skew_symmetric(b: Vec<Vec<i64>>) -> Result<Self, ExchangeError> {
        let n = b.len();
        Self::new(b, vec![1; n])
    }

    pub fn new(b: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self, ExchangeError> {
        let n = b.len();
        if n == 0 {
            return Err(ExchangeError::Invalid("rank must be positive".into()));
        }
        if let Some(i) = b.iter().position(|row| row.len() != n) {
            return Err(ExchangeError::Invalid(format!(
                "shape: row {} has length {}, expected {}",
                i + 1,
                b[i].len(),
                n
            )));
        }
        if d.len() != n {
            return Err(ExchangeError::Invalid(format!(
                "symmetrizer: length {} does not match rank {}",
                d.len(),
                n
            )));
        }
        if let Some(i) = d.iter().position(|&x| x <= 0) {
            return Err(ExchangeError::Invalid(format!(
                "symmetrizer: d_{} = {} is not positive",
                i + 1,
                d[i]
            )));
        }
        for i in 0..n {
            if b[i][i] != 0 {
                return Err(ExchangeError::Invalid(format!(
                    "zero diagonal: b_{0}{0} = {1}",
                    i + 1,
                    b[i][i]
                )));
            }
            for j in 0..n {
                if (b[i][j] == 0) != (b[j][i] == 0) {
                    return Err(ExchangeError::Invalid(format!(
                        "sign pattern: b_{}{} and b_{}{} must vanish together",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if b[i][j] * d[j] != -b[j][i] * d[i] {
                    return Err(ExchangeError::Invalid(format!(
                        "skew-symmetrizability: b_{0}{1}*d_{1} != -b_{1}{0}*d_{0}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(ExchangeMatrix { b, d })
    }

    /// Parses the diagram JSON file format `{"n": .., "b": [[..]], "d": [..]}`.
    pub fn from_json(text: &str) -> Result<Self, ExchangeError> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| ExchangeError::Invalid(format!("json: {e}")))?;
        if file.b.len() != file.n {
            return Err(ExchangeError::Invalid(format!(
                "shape: n = {} but b has {} rows",
                file.n,
                file.b.len()
            )));
        }
        let d = file.d.unwrap_or_else(|| vec![1; file.n]);
        Self::new(file.b, d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.d.iter().all(|&x| x == self.d[0])
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, ExchangeError> {
        let n = self.rank();
        if k >= n {
            return Err(ExchangeError::VertexOutOfRange { vertex: k, rank: n });
        }
        let b = &self.b;
        let mut out = b.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        Ok(ExchangeMatrix { b: out, d: self.d.clone() })
    }

    pub fn mutate_along(&self, seq: &MutationSequence) -> Result<Self, ExchangeError> {
        seq.iter().try_fold(self.clone(), |m, &k| m.mutate(k))
    }

    /// Applies a vertex relabeling: vertex `i` of `self` becomes vertex `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.rank();
        let mut b = vec![vec![0; n]; n];
        let mut d = vec![0; n];
        for i in 0..n {
            d[perm[i]] = self.d[i];
            for j in 0..n {
                b[perm[i]][perm[j]] = self.b[i][j];
            }
        }
        ExchangeMatrix { b, d }
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut idx = 0;
            while idx < comp.len() {
                let v = comp[idx];
                idx += 1;
                for w in 0..n {
                    if !seen[w] && self.b[v][w] != 0 {
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
        self.components().len() == 1
    }

    /// True when the diagram has no oriented cycle at all.
    pub fn is_acyclic(&self) -> bool {
        let n = self.rank();
        let mut indeg: Vec<usize> =
            (0..n).map(|j| (0..n).filter(|&i| self.b[i][j] > 0).count()).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for w in 0..n {
                if self.b[v][w] > 0 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        stack.push(w);
                    }
                }
            }
        }
        removed == n
    }
}

/// An ordered list of mutation directions (0-based).
pub type MutationSequence = Vec<usize>;

/// Standard acyclic orientations used as starting points.
pub mod dynkin {
    use super::ExchangeMatrix;

    fn path_matrix(n: usize) -> Vec<Vec<i64>> {
        let mut b = vec![vec![0; n]; n];
        for i in 0..n.saturating_sub(1) {
            b[i][i + 1] = 1;
            b[i + 1][i] = -1;
        }
        b
    }

    /// Linear orientation 1 → 2 → … → n.
    pub fn a(n: usize) -> ExchangeMatrix {
        ExchangeMatrix::skew_symmetric(path_matrix(n)).unwrap()
    }

    /// Path with the last arrow of label 2; `d = (1, …, 1, 2)`.
    pub fn b(n: usize) -> ExchangeMatrix {
        assert!(n >= 2);
        let mut b = path_matrix(n);
        b[n - 1][n - 2] = -2;
        let mut d = vec![1; n];
        d[n - 1] = 2;
        ExchangeMatrix::new(b, d).unwrap()
    }

    /// Path 1 → … → n−2 with vertices n−1 and n both attached to n−2.
    pub fn d(n: usize) -> ExchangeMatrix {
        assert!(n >= 4);
        let mut b = path_matrix(n - 1);
        for row in b.iter_mut() {
            row.push(0);
        }
        b.push(vec![0; n]);
        b[n - 3][n - 1] = 1;
        b[n - 1][n - 3] = -1;
        ExchangeMatrix::skew_symmetric(b).unwrap()
    }

    /// Chain 1 → … → n−1 with the branch vertex n attached to vertex 3.
    pub fn e(n: usize) -> ExchangeMatrix {
        assert!((6..=8).contains(&n));
        let mut b = path_matrix(n - 1);
        for row in b.iter_mut() {
            row.push(0);
        }
        b.push(vec![0; n]);
        b[2][n - 1] = 1;
        b[n - 1][2] = -1;
        ExchangeMatrix::skew_symmetric(b).unwrap()
    }

    pub fn f4() -> ExchangeMatrix {
        let mut b = path_matrix(4);
        b[2][1] = -2;
        ExchangeMatrix::new(b, vec![1, 1, 2, 2]).unwrap()
    }

    pub fn g2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 1], vec![-3, 0]], vec![1, 3]).unwrap()
    }

    /// Oriented cycle 1 → 2 → … → n → 1 with unit weights.
    pub fn oriented_cycle(n: usize) -> ExchangeMatrix {
        assert!(n >= 3);
        let mut b = vec![vec![0; n]; n];
        for i in 0..n {
            let j = (i + 1) % n;
            b[i][j] = 1;
            b[j][i] = -1;
        }
        ExchangeMatrix::skew_symmetric(b).unwrap()
    }

    /// Looks up a Dynkin orientation by family letter and rank.
    pub fn by_name(family: char, n: usize) -> Option<ExchangeMatrix> {
        match (family.to_ascii_uppercase(), n) {
            ('A', n) if n >= 1 => Some(a(n)),
            ('B', n) | ('C', n) if n >= 2 => Some(b(n)),
            ('D', n) if n >= 4 => Some(d(n)),
            ('E', 6..=8) => Some(e(n)),
            ('F', 4) => Some(f4()),
            ('G', 2) => Some(g2()),
            _ => None,
        }
    }
}
