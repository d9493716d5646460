use serde::Serialize;

use super::{ExchangeError, ExchangeMatrix};

/// A directed edge `from → to` carrying the label `|b_ij b_ji|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: u64,
}

/// Labeled directed graph underlying an exchange matrix.
///
/// Stored as a signed label table: `w[i][j] = +label` for an edge `i → j`,
/// `-label` for `j → i`, and `0` when the vertices are not joined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    w: Vec<Vec<i64>>,
}

impl Serialize for Diagram {
    /// `{"n": .., "edges": [{"from", "to", "label"}]}` with 1-based vertices.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            n: usize,
            edges: Vec<Edge>,
        }
        let edges = self
            .edges()
            .into_iter()
            .map(|e| Edge { from: e.from + 1, to: e.to + 1, label: e.label })
            .collect();
        View { n: self.rank(), edges }.serialize(s)
    }
}

impl Diagram {
    /// The diagram of `B`: an edge `i → j` labeled `|b_ij b_ji|` whenever `b_ij > 0`.
    pub fn from_matrix(m: &ExchangeMatrix) -> Self {
        let n = m.rank();
        let mut w = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let bij = m.entry(i, j);
                if bij != 0 {
                    let label = (bij * m.entry(j, i)).abs();
                    w[i][j] = bij.signum() * label;
                }
            }
        }
        Diagram { w }
    }

    /// Builds a diagram from an edge list, rejecting loops, zero labels and
    /// parallel or antiparallel edges.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, ExchangeError> {
        let mut w = vec![vec![0i64; n]; n];
        for e in edges {
            if e.from >= n || e.to >= n {
                return Err(ExchangeError::Invalid(format!(
                    "edge {}->{} out of range",
                    e.from + 1,
                    e.to + 1
                )));
            }
            if e.from == e.to {
                return Err(ExchangeError::Invalid(format!("loop at vertex {}", e.from + 1)));
            }
            if e.label == 0 {
                return Err(ExchangeError::Invalid("edge label must be positive".into()));
            }
            if w[e.from][e.to] != 0 {
                return Err(ExchangeError::Invalid(format!(
                    "two edges join vertices {} and {}",
                    e.from + 1,
                    e.to + 1
                )));
            }
            w[e.from][e.to] = e.label as i64;
            w[e.to][e.from] = -(e.label as i64);
        }
        Ok(Diagram { w })
    }

    pub fn rank(&self) -> usize {
        self.w.len()
    }

    /// Signed label of the pair `(i, j)`.
    pub fn signed(&self, i: usize, j: usize) -> i64 {
        self.w[i][j]
    }

    /// Label of the edge joining `i` and `j`, or 0.
    pub fn label(&self, i: usize, j: usize) -> u64 {
        self.w[i][j].unsigned_abs()
    }

    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.w[i][j] > 0
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.w[i][j] != 0
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.w[i][j] > 0 {
                    out.push(Edge { from: i, to: j, label: self.w[i][j] as u64 });
                }
            }
        }
        out
    }

    pub fn max_label(&self) -> u64 {
        self.w.iter().flatten().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_simply_laced(&self) -> bool {
        self.w.iter().flatten().all(|x| x.abs() <= 1)
    }

    /// All chordless cycles of the underlying undirected graph, each listed once,
    /// starting at its least vertex.
    pub fn chordless_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut out = Vec::new();
        for s in 0..n {
            let mut path = vec![s];
            self.extend_chordless(s, &mut path, &mut out);
        }
        out.sort();
        out
    }

    fn extend_chordless(&self, s: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for w in (s + 1)..self.rank() {
            if !self.adjacent(last, w) || path.contains(&w) {
                continue;
            }
            if path.len() >= 2 && path[1..path.len() - 1].iter().any(|&v| self.adjacent(v, w)) {
                continue;
            }
            if path.len() >= 2 && self.adjacent(s, w) {
                if path.len() >= 2 && path[1] < w {
                    let mut cyc = path.clone();
                    cyc.push(w);
                    out.push(cyc);
                }
                continue;
            }
            path.push(w);
            self.extend_chordless(s, path, out);
            path.pop();
        }
    }

    /// Chordless cycles whose edges are consistently oriented, listed in the
    /// direction of the arrows and rotated to start at their least vertex.
    pub fn chordless_oriented_cycles(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .chordless_cycles()
            .into_iter()
            .filter_map(|cyc| {
                let d = cyc.len();
                let forward = (0..d).all(|i| self.has_arrow(cyc[i], cyc[(i + 1) % d]));
                let backward = (0..d).all(|i| self.has_arrow(cyc[(i + 1) % d], cyc[i]));
                if forward {
                    Some(cyc)
                } else if backward {
                    let mut rev = cyc;
                    rev[1..].reverse();
                    Some(rev)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Checks that every chordless cycle has a perfect-square label product.
    pub fn has_square_cycle_products(&self) -> bool {
        self.chordless_cycles().iter().all(|cyc| {
            let d = cyc.len();
            let prod: u64 = (0..d).map(|i| self.label(cyc[i], cyc[(i + 1) % d])).product();
            let r = num_integer::Roots::sqrt(&prod);
            r * r == prod
        })
    }
}
