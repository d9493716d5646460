use std::fmt;

use super::Diagram;

/// Relabeling-invariant encoding of a [`Diagram`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl serde::Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Canonical form by colour refinement plus individualization.
///
/// Each leaf of the search tree yields a vertex order; the key is the
/// lexicographically least signed-label encoding over all leaves. Vertices in
/// a cell that are twins (swapping them is an automorphism) are branched on
/// only once.
pub fn canonical_form(g: &Diagram) -> CanonicalKey {
    canonical_labeling(g).0
}

/// The canonical key together with one canonical order: `order[p]` is the
/// vertex placed at position `p`.
pub fn canonical_labeling(g: &Diagram) -> (CanonicalKey, Vec<usize>) {
    let n = g.rank();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let colors = refine(g, vec![0; n]);
    search(g, colors, &mut best);
    let (bytes, order) = best.expect("search visits at least one leaf");
    (CanonicalKey(bytes), order)
}

fn search(g: &Diagram, colors: Vec<usize>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let n = g.rank();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        let mut order = vec![0; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c] = v;
        }
        let enc = encode(g, &order);
        if best.as_ref().is_none_or(|(b, _)| enc < *b) {
            *best = Some((enc, order));
        }
        return;
    };
    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        // v keeps the cell colour, its cell-mates move one step up
        let indiv: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| if c > target || (c == target && u != v) { c + 1 } else { c })
            .collect();
        search(g, refine(g, indiv), best);
    }
}

fn twins(g: &Diagram, u: usize, v: usize) -> bool {
    if g.adjacent(u, v) {
        return false;
    }
    (0..g.rank()).all(|x| x == u || x == v || g.signed(u, x) == g.signed(v, x))
}

/// Equitable refinement; colours are renumbered by sorted signature so the
/// result depends only on the isomorphism type of (graph, colouring).
fn refine(g: &Diagram, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.rank();
    let mut classes = count_distinct(&colors);
    loop {
        let sigs: Vec<(usize, Vec<(usize, i64)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, i64)> = (0..n)
                    .filter(|&u| g.adjacent(v, u))
                    .map(|u| (colors[u], g.signed(v, u)))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colors = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present"))
            .collect();
        let now = distinct.len();
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn encode(g: &Diagram, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(2 + n * n * 2);
    out.extend_from_slice(&(n as u16).to_be_bytes());
    for a in 0..n {
        for b in (a + 1)..n {
            // offset so that byte order agrees with numeric order
            let x = g.signed(order[a], order[b]) as i32 as u32 ^ 0x8000_0000;
            out.extend_from_slice(&x.to_be_bytes());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{dynkin, Edge, ExchangeMatrix};
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Brute-force isomorphism test over all vertex bijections.
    fn isomorphic(a: &Diagram, b: &Diagram) -> bool {
        let n = a.rank();
        n == b.rank()
            && permutations(n)
                .iter()
                .any(|p| (0..n).all(|i| (0..n).all(|j| a.signed(i, j) == b.signed(p[i], p[j]))))
    }

    fn path(mid_sink: bool) -> Diagram {
        let edges = if mid_sink {
            [Edge { from: 0, to: 1, label: 1 }, Edge { from: 2, to: 1, label: 1 }]
        } else {
            [Edge { from: 1, to: 0, label: 1 }, Edge { from: 1, to: 2, label: 1 }]
        };
        Diagram::from_edges(3, &edges).unwrap()
    }

    #[test]
    fn relabeling_invariant() {
        let m = dynkin::e(7).mutate(2).unwrap().mutate(5).unwrap();
        let g = Diagram::from_matrix(&m);
        let perm = [3, 6, 0, 1, 5, 4, 2];
        let h = Diagram::from_matrix(&m.relabel(&perm));
        assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn distinguishes_small_quivers() {
        let p = Diagram::from_matrix(&dynkin::a(3));
        let c = Diagram::from_matrix(&dynkin::oriented_cycle(3));
        assert_ne!(canonical_form(&p), canonical_form(&c));
        assert!(!isomorphic(&path(true), &path(false)));
        assert_ne!(canonical_form(&path(true)), canonical_form(&path(false)));
    }

    #[test]
    fn edgeless_is_cheap() {
        let m = ExchangeMatrix::skew_symmetric(vec![vec![0; 10]; 10]).unwrap();
        let g = Diagram::from_matrix(&m);
        assert_eq!(canonical_form(&g).as_bytes().len(), 2 + 45 * 4);
    }

    #[test]
    fn key_equality_matches_brute_force_isomorphism() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut sample = Vec::new();
        for _ in 0..120 {
            let n = rng.gen_range(2..6);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.5) {
                        let (from, to) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
                        edges.push(Edge { from, to, label: rng.gen_range(1..3) });
                    }
                }
            }
            sample.push(Diagram::from_edges(n, &edges).unwrap());
        }
        for a in &sample {
            for b in &sample {
                assert_eq!(canonical_form(a) == canonical_form(b), isomorphic(a, b));
            }
        }
    }
}
