//! Isomorph-free generation of square-free graphs by vertex augmentation.
//!
//! A graph on `k + 1` vertices is accepted from its parent `P` only when the
//! new vertex is a legitimate "canonical deletion": among the vertices of
//! minimum `(degree, neighbour-degree sum)`, the one labelled last by the
//! canonical labelling must delete back to a graph isomorphic to `P`.
//! Because every parent is unique up to isomorphism, isomorphic children can
//! only arise from the same parent, and a per-parent set of canonical forms
//! removes the remaining duplicates. Square-freeness is hereditary, so
//! extensions that would create a 4-cycle are never built. Connectivity is a
//! filter on output only.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::coloring::{chromatic_number, fractional_chromatic_number, ColoringError};
use crate::exact::{int, Rational};
use crate::graph::{canonical_form, encode_graph6, BitIter, Graph};

/// Largest supported vertex bound.
pub const MAX_ENUMERATION_VERTICES: usize = 13;

#[derive(Debug, thiserror::Error)]
pub enum EnumerationError {
    #[error("vertex bound {0} outside 1..={MAX_ENUMERATION_VERTICES}")]
    BadBound(usize),
    #[error("brute-force enumeration is limited to n <= 7 (got {0})")]
    BruteForceTooLarge(usize),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub n_max: usize,
    /// Collect graphs with chromatic number strictly greater than this.
    pub chi_gt: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub n_max: usize,
    /// `counts[n - 1]`: square-free connected classes on exactly `n` vertices.
    pub counts: Vec<u64>,
    pub total: u64,
    pub chi_gt: Option<usize>,
    /// graph6 strings (canonical labelling) passing the chromatic filter, sorted.
    pub filtered: Vec<String>,
    pub elapsed: Duration,
}

/// Sum of neighbour degrees, the tie-breaker for choosing which vertex may
/// be deleted.
fn deletion_key(g: &Graph, v: usize) -> (u32, u32) {
    let nb = g.neighbors(v);
    let s = BitIter::new(nb).map(|u| g.degree(u) as u32).sum();
    (nb.count_ones(), s)
}

/// Canonically labelled children of a canonically labelled square-free parent.
pub fn square_free_children(parent: &Graph) -> Vec<Graph> {
    let k = parent.n();
    let min_deg = (0..k).map(|v| parent.degree(v)).min().unwrap_or(0);
    let mut seen: HashSet<Graph> = HashSet::new();
    let mut out = Vec::new();
    let mut on_set = |s: u64| {
        let child = parent.extend_with(s).expect("within vertex cap");
        let v = k;
        let keys: Vec<(u32, u32)> = (0..=k).map(|u| deletion_key(&child, u)).collect();
        let best = *keys.iter().min().expect("nonempty");
        if keys[v] != best {
            return;
        }
        let candidates: Vec<usize> = (0..=k).filter(|&u| keys[u] == best).collect();
        let cf = canonical_form(&child);
        if candidates.len() > 1 {
            let m = *candidates
                .iter()
                .max_by_key(|&&u| cf.perm[u])
                .expect("nonempty");
            if m != v {
                let reduced = child.delete_vertex(m).expect("k >= 1");
                if canonical_form(&reduced).graph != *parent {
                    return;
                }
            }
        }
        if seen.insert(cf.graph.clone()) {
            out.push(cf.graph);
        }
    };
    // S: no vertex of the parent may have two neighbours in S.
    fn rec(parent: &Graph, next: usize, set: u64, hit: u64, room: usize, f: &mut dyn FnMut(u64)) {
        f(set);
        if room == 0 {
            return;
        }
        for u in next..parent.n() {
            let nu = parent.neighbors(u);
            if nu & hit == 0 {
                rec(parent, u + 1, set | 1u64 << u, hit | nu, room - 1, f);
            }
        }
    }
    rec(parent, 0, 0, 0, min_deg + 1, &mut on_set);
    out
}

/// Streams one canonical representative of every square-free connected graph
/// with `1..=n_max` vertices to `sink` (possibly from several threads).
pub fn enumerate_square_free_connected<F>(
    opts: EnumerationOptions,
    sink: F,
) -> Result<EnumerationReport, EnumerationError>
where
    F: Fn(&Graph) + Sync,
{
    let n_max = opts.n_max;
    if n_max == 0 || n_max > MAX_ENUMERATION_VERTICES {
        return Err(EnumerationError::BadBound(n_max));
    }
    let start = Instant::now();
    let counts: Vec<AtomicU64> = (0..n_max).map(|_| AtomicU64::new(0)).collect();
    let filtered = Mutex::new(Vec::new());

    let visit = |g: &Graph| {
        if !g.is_connected() {
            return;
        }
        counts[g.n() - 1].fetch_add(1, Ordering::Relaxed);
        if let Some(d) = opts.chi_gt {
            if g.n() > d && chromatic_number(g).chi > d {
                let s = encode_graph6(g).expect("n <= 13");
                filtered.lock().expect("poisoned").push(s);
            }
        }
        sink(g);
    };

    let root = Graph::new(1).expect("one vertex");
    visit(&root);
    if n_max > 1 {
        expand(&root, n_max, &visit);
    }

    let counts: Vec<u64> = counts.into_iter().map(|c| c.into_inner()).collect();
    let mut filtered = filtered.into_inner().expect("poisoned");
    filtered.sort();
    Ok(EnumerationReport {
        n_max,
        total: counts.iter().sum(),
        counts,
        chi_gt: opts.chi_gt,
        filtered,
        elapsed: start.elapsed(),
    })
}

fn expand<V: Fn(&Graph) + Sync>(parent: &Graph, n_max: usize, visit: &V) {
    let children = square_free_children(parent);
    children.par_iter().for_each(|child| {
        visit(child);
        if child.n() < n_max {
            expand(child, n_max, visit);
        }
    });
}

/// Every isomorphism class of graphs on exactly `n` vertices, found by
/// canonicalising all labelled graphs. Sorted by graph6 string.
pub fn brute_force_enumerate(n: usize) -> Result<Vec<Graph>, EnumerationError> {
    if n > 7 {
        return Err(EnumerationError::BruteForceTooLarge(n));
    }
    if n == 0 {
        return Err(EnumerationError::BadBound(0));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let classes: HashSet<Graph> = (0u64..1 << pairs.len())
        .into_par_iter()
        .fold(HashSet::new, |mut acc, mask| {
            let mut g = Graph::new(n).expect("n <= 7");
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            acc.insert(canonical_form(&g).graph);
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut out: Vec<(String, Graph)> = classes
        .into_iter()
        .map(|g| (encode_graph6(&g).expect("small"), g))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

#[derive(Debug, Clone)]
pub struct ThirteenVertexCensus {
    /// Square-free connected 13-vertex graphs with chromatic number > 3.
    pub chi_gt3: Vec<String>,
    /// Those among them with fractional chromatic number > 3.
    pub chi_f_gt3: Vec<(String, Rational)>,
    pub report: EnumerationReport,
}

pub fn thirteen_vertex_census() -> Result<ThirteenVertexCensus, EnumerationError> {
    let report = enumerate_square_free_connected(
        EnumerationOptions {
            n_max: 13,
            chi_gt: Some(3),
        },
        |_| {},
    )?;
    let chi_gt3: Vec<String> = report
        .filtered
        .iter()
        .filter(|s| s.as_bytes()[0] == 13 + 63)
        .cloned()
        .collect();
    let mut chi_f_gt3 = Vec::new();
    for s in &chi_gt3 {
        let g = crate::graph::parse_graph6(s).expect("own output");
        let value = fractional_chromatic_number(&g)?.value;
        if value > int(3) {
            chi_f_gt3.push((s.clone(), value));
        }
    }
    Ok(ThirteenVertexCensus {
        chi_gt3,
        chi_f_gt3,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(n_max: usize) -> (EnumerationReport, Vec<Graph>) {
        let out = Mutex::new(Vec::new());
        let report = enumerate_square_free_connected(
            EnumerationOptions {
                n_max,
                chi_gt: None,
            },
            |g| out.lock().unwrap().push(g.clone()),
        )
        .unwrap();
        (report, out.into_inner().unwrap())
    }

    #[test]
    fn small_counts() {
        let (report, graphs) = collect(4);
        assert_eq!(report.counts, vec![1, 1, 2, 3]);
        assert_eq!(report.total, 7);
        assert_eq!(graphs.len(), 7);
    }

    #[test]
    fn brute_force_class_counts() {
        assert_eq!(brute_force_enumerate(3).unwrap().len(), 4);
        assert_eq!(brute_force_enumerate(4).unwrap().len(), 11);
        assert_eq!(brute_force_enumerate(5).unwrap().len(), 34);
        let sf: Vec<_> = brute_force_enumerate(4)
            .unwrap()
            .into_iter()
            .filter(|g| g.is_square_free() && g.is_connected())
            .collect();
        assert_eq!(sf.len(), 3);
        assert!(brute_force_enumerate(8).is_err());
    }

    #[test]
    fn generator_matches_oracle_up_to_seven() {
        let (report, graphs) = collect(7);
        let emitted: HashSet<Graph> = graphs.iter().cloned().collect();
        assert_eq!(emitted.len(), graphs.len(), "duplicates emitted");
        for n in 1..=7 {
            let oracle: HashSet<Graph> = brute_force_enumerate(n)
                .unwrap()
                .into_iter()
                .filter(|g| g.is_square_free() && g.is_connected())
                .collect();
            let ours: HashSet<Graph> = graphs.iter().filter(|g| g.n() == n).cloned().collect();
            assert_eq!(ours, oracle, "n = {n}");
            assert_eq!(report.counts[n - 1] as usize, oracle.len());
        }
    }

    #[test]
    fn deterministic_output() {
        let strings = |n| {
            let (_, gs) = collect(n);
            let mut s: Vec<String> = gs.iter().map(|g| encode_graph6(g).unwrap()).collect();
            s.sort();
            s
        };
        assert_eq!(strings(8), strings(8));
    }

    #[test]
    fn bound_checked() {
        assert!(enumerate_square_free_connected(
            EnumerationOptions {
                n_max: 14,
                chi_gt: None
            },
            |_| {}
        )
        .is_err());
        assert!(enumerate_square_free_connected(
            EnumerationOptions {
                n_max: 0,
                chi_gt: None
            },
            |_| {}
        )
        .is_err());
    }
}
