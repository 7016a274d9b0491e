//! Canonical labelling by individualisation and refinement.
//!
//! Every node of the search tree carries an ordered equitable partition. Leaves
//! (discrete partitions) are relabellings of the input; the canonical form is
//! the relabelled graph whose adjacency rows are lexicographically smallest.
//! Subtrees are skipped when a known automorphism fixing the current path maps
//! them onto an explored sibling.

use super::{BitIter, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// The canonically labelled graph; equal for isomorphic inputs.
    pub graph: Graph,
    /// `perm[v]` is the canonical label of input vertex `v`.
    pub perm: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    let mut search = Search {
        g,
        best: None,
        first: None,
        generators: twin_transpositions(g),
        prefix: Vec::with_capacity(n),
    };
    let mut cells = vec![g.vertex_mask()];
    refine(g, &mut cells);
    search.descend(cells);
    let (_, perm) = search.best.expect("search visits at least one leaf");
    CanonicalForm {
        graph: g.permuted(&perm),
        perm,
    }
}

/// Splits cells by neighbour counts into every other cell until stable.
/// Fragments are ordered by ascending count, so the result commutes with
/// relabelling.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let n = g.n();
    let mut counts = [0u32; 64];
    let mut scratch: Vec<u64> = Vec::with_capacity(n);
    let mut splitter = 0;
    while splitter < cells.len() {
        if cells.len() == n {
            return;
        }
        let w = cells[splitter];
        scratch.clear();
        let mut split = false;
        for &x in cells.iter() {
            if x.count_ones() == 1 {
                scratch.push(x);
                continue;
            }
            let mut lo = u32::MAX;
            let mut hi = 0;
            for v in BitIter::new(x) {
                let c = (g.neighbors(v) & w).count_ones();
                counts[v] = c;
                lo = lo.min(c);
                hi = hi.max(c);
            }
            if lo == hi {
                scratch.push(x);
                continue;
            }
            split = true;
            let mut remaining = x;
            let mut level = lo;
            while remaining != 0 {
                let mut part = 0u64;
                let mut next = u32::MAX;
                for v in BitIter::new(remaining) {
                    if counts[v] == level {
                        part |= 1u64 << v;
                    } else if counts[v] < next {
                        next = counts[v];
                    }
                }
                if part != 0 {
                    scratch.push(part);
                    remaining &= !part;
                }
                level = next;
            }
        }
        if split {
            std::mem::swap(cells, &mut scratch);
            splitter = 0;
        } else {
            splitter += 1;
        }
    }
}

/// Transpositions swapping twins (equal open or equal closed neighbourhoods),
/// chained along each twin class in increasing order.
fn twin_transpositions(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut gens = Vec::new();
    for closed in [false, true] {
        let key = |v: usize| {
            if closed {
                g.neighbors(v) | 1u64 << v
            } else {
                g.neighbors(v)
            }
        };
        let mut assigned = 0u64;
        for u in 0..n {
            if assigned >> u & 1 == 1 {
                continue;
            }
            let mut prev = u;
            for v in u + 1..n {
                if assigned >> v & 1 == 0 && key(u) == key(v) {
                    assigned |= 1u64 << v;
                    let mut t: Vec<usize> = (0..n).collect();
                    t.swap(prev, v);
                    gens.push(t);
                    prev = v;
                }
            }
        }
    }
    gens
}

struct Search<'a> {
    g: &'a Graph,
    /// Best leaf so far: relabelled adjacency rows and the labelling.
    best: Option<(Vec<u64>, Vec<usize>)>,
    first: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
    prefix: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u64>) {
        let n = self.g.n();
        if cells.len() == n {
            self.leaf(&cells);
            return;
        }
        let target = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let cell = cells[target];
        let mut explored: Vec<usize> = Vec::new();
        for v in BitIter::new(cell) {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u64 << v);
            child.push(cell & !(1u64 << v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.g, &mut child);
            self.prefix.push(v);
            self.descend(child);
            self.prefix.pop();
            explored.push(v);
        }
    }

    /// True when some known automorphism fixing the current path pointwise
    /// maps `v` into the orbit of an already explored sibling.
    fn equivalent_to_explored(&self, v: usize, explored: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.generators {
            if self.prefix.iter().any(|&u| gamma[u] != u) {
                continue;
            }
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }

    fn leaf(&mut self, cells: &[u64]) {
        let n = self.g.n();
        let mut perm = vec![0usize; n];
        for (pos, &c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = pos;
        }
        let cert = self.g.permuted(&perm).rows().to_vec();

        for slot in [&self.first, &self.best] {
            if let Some((c, p)) = slot {
                if *c == cert {
                    // v -> w where p[w] == perm[v]
                    let mut inv = vec![0usize; n];
                    for (w, &pw) in p.iter().enumerate() {
                        inv[pw] = w;
                    }
                    let gamma: Vec<usize> = perm.iter().map(|&pv| inv[pv]).collect();
                    if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                        self.generators.push(gamma);
                    }
                    return;
                }
            }
        }
        match &self.best {
            None => {
                self.first = Some((cert.clone(), perm.clone()));
                self.best = Some((cert, perm));
            }
            Some((c, _)) if cert < *c => self.best = Some((cert, perm)),
            _ => {}
        }
    }
}
