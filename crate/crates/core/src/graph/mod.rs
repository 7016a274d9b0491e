//! Simple undirected graphs on at most 64 vertices, stored as one adjacency
//! word per vertex.

mod canon;
mod graph6;
mod mis;

use std::fmt;

pub use canon::{canonical_form, CanonicalForm};
pub use graph6::{encode_graph6, parse_graph6, GRAPH6_MAX_VERTICES};
pub use mis::{
    max_weight_independent_set, maximal_independent_sets, maximal_independent_sets_capped,
    DEFAULT_MIS_CAP,
};

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("unsupported vertex count {n} (supported range {min}..={max})")]
    UnsupportedSize { n: usize, min: usize, max: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("more than {cap} maximal independent sets")]
    TooManyIndependentSets { cap: usize },
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `0..n` as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone)]
pub struct BitIter(u64);

impl BitIter {
    pub fn new(bits: u64) -> Self {
        BitIter(bits)
    }
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for BitIter {}

/// Undirected simple graph. `adj[i]` holds the neighbours of `i` as bits;
/// rows at index `>= n` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::UnsupportedSize {
                n,
                min: 1,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, symmetrising and dropping bits `>= n`.
    pub fn from_rows(rows: &[u64]) -> Result<Self, GraphError> {
        let mut g = Graph::new(rows.len())?;
        let mask = g.vertex_mask();
        for (u, &row) in rows.iter().enumerate() {
            for v in BitIter(row & mask) {
                if u == v {
                    return Err(GraphError::SelfLoop(u));
                }
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        let mask = g.vertex_mask();
        for v in 0..n {
            g.adj[v] = mask & !(1u64 << v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::UnsupportedSize {
                n,
                min: 3,
                max: MAX_VERTICES,
            });
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mask with the low `n` bits set.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet(self.vertex_mask())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| BitIter(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Panics on out-of-range vertices or a self loop; use [`Graph::try_add_edge`]
    /// for unchecked input.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v);
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { v: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
    }

    /// No two distinct vertices share two or more neighbours, i.e. no 4-cycle
    /// subgraph.
    pub fn is_square_free(&self) -> bool {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if (self.adj[u] & self.adj[v]).count_ones() >= 2 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        let all = self.vertex_mask();
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == all
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (self.adj[v] | (1u64 << v)) & s.0 == s.0)
    }

    pub fn complement(&self) -> Graph {
        let mask = self.vertex_mask();
        let mut g = self.clone();
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & mask & !(1u64 << v);
        }
        g
    }

    /// Subgraph induced on `s`, relabelled to `0..|s|` in increasing order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph, GraphError> {
        let keep: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        if keep.len() != s.len() {
            let bad = s.iter().find(|&v| v >= self.n).unwrap_or(0);
            return Err(GraphError::VertexOutOfRange { v: bad, n: self.n });
        }
        let mut g = Graph::new(keep.len())?;
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Removes vertex `v`, shifting higher labels down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        let keep = self.vertex_mask() & !(1u64 << v);
        self.induced_subgraph(VertexSet(keep))
    }

    /// Adds a new vertex `n` adjacent to all existing vertices.
    pub fn cone(&self) -> Result<Graph, GraphError> {
        self.extend_with(self.vertex_mask())
    }

    /// Adds a new vertex `n` with the given neighbourhood.
    pub fn extend_with(&self, neighbourhood: u64) -> Result<Graph, GraphError> {
        if self.n >= MAX_VERTICES {
            return Err(GraphError::UnsupportedSize {
                n: self.n + 1,
                min: 1,
                max: MAX_VERTICES,
            });
        }
        let nb = neighbourhood & self.vertex_mask();
        let mut g = self.clone();
        let new = self.n;
        g.n += 1;
        g.adj[new] = nb;
        for v in BitIter(nb) {
            g.adj[v] |= 1u64 << new;
        }
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for u in 0..self.n {
            let mut row = 0u64;
            for v in BitIter(self.adj[u]) {
                row |= 1u64 << perm[v];
            }
            g.adj[perm[u]] = row;
        }
        g
    }

    /// Size of a maximum clique, with one witness.
    pub fn max_clique(&self) -> VertexSet {
        let mut best = 0u64;
        max_clique_rec(self, 0, self.vertex_mask(), &mut best);
        VertexSet(best)
    }

    pub fn clique_number(&self) -> usize {
        self.max_clique().len()
    }

    pub fn independence_number(&self) -> usize {
        self.complement().clique_number()
    }
}

fn max_clique_rec(g: &Graph, current: u64, mut cand: u64, best: &mut u64) {
    if cand == 0 {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    }
    while cand != 0 {
        if current.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        max_clique_rec(g, current | (1u64 << v), cand & g.adj[v], best);
    }
    if current.count_ones() > best.count_ones() {
        *best = current;
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_has_c4(g: &Graph) -> bool {
        let n = g.n();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let vs = [a, b, c, d];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
                        if distinct
                            && g.has_edge(a, b)
                            && g.has_edge(b, c)
                            && g.has_edge(c, d)
                            && g.has_edge(d, a)
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn square_free_small_cases() {
        assert!(!Graph::cycle(4).unwrap().is_square_free());
        assert!(Graph::cycle(5).unwrap().is_square_free());
        assert!(Graph::complete(3).unwrap().is_square_free());
        assert!(!Graph::complete(4).unwrap().is_square_free());
    }

    #[test]
    fn square_free_matches_brute_force_on_all_graphs_up_to_six() {
        for n in 1..=6 {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                assert_eq!(g.is_square_free(), !brute_has_c4(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn connectivity() {
        assert!(Graph::complete(2).unwrap().is_connected());
        assert!(!Graph::new(2).unwrap().is_connected());
        assert!(Graph::new(1).unwrap().is_connected());
        assert!(Graph::path(7).unwrap().is_connected());
    }

    #[test]
    fn cone_and_complement() {
        assert_eq!(
            Graph::new(1).unwrap().cone().unwrap(),
            Graph::complete(2).unwrap()
        );
        let wheel = Graph::cycle(5).unwrap().cone().unwrap();
        assert_eq!(wheel.n(), 6);
        assert_eq!(wheel.edge_count(), 10);
        assert_eq!(wheel.degree(5), 5);
        assert_eq!(
            Graph::complete(3).unwrap().complement(),
            Graph::new(3).unwrap()
        );
        let c7 = Graph::cycle(7).unwrap();
        assert_eq!(c7.complement().complement(), c7);
        let full = Graph::complete(64).unwrap();
        assert!(full.cone().is_err());
    }

    #[test]
    fn induced_subgraph_of_cycle_is_path() {
        let c5 = Graph::cycle(5).unwrap();
        let p3 = c5
            .induced_subgraph(VertexSet::from_vertices([0, 1, 2]))
            .unwrap();
        assert_eq!(p3, Graph::path(3).unwrap());
        assert!(c5
            .induced_subgraph(VertexSet::from_vertices([0, 9]))
            .is_err());
    }

    #[test]
    fn edge_validation() {
        let mut g = Graph::new(3).unwrap();
        assert_eq!(g.try_add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            g.try_add_edge(0, 3),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        ));
        assert!(Graph::new(0).is_err());
        assert!(Graph::new(65).is_err());
    }

    #[test]
    fn clique_and_independence_numbers() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.clique_number(), 2);
        assert_eq!(c5.independence_number(), 2);
        assert_eq!(Graph::complete(6).unwrap().clique_number(), 6);
        let w = c5.max_clique();
        assert!(c5.is_clique(w));
    }
}
