//! Independent-set machinery: maximal-set enumeration (pivoting Bron-Kerbosch
//! on the complement) and exact maximum-weight independent sets.

use std::ops::Add;

use num_traits::Zero;

use super::{BitIter, Graph, GraphError, VertexSet};

/// Default cap on the number of maximal independent sets materialised at once.
pub const DEFAULT_MIS_CAP: usize = 100_000;

/// All inclusion-maximal independent sets, sorted by bit mask.
pub fn maximal_independent_sets(g: &Graph) -> Vec<VertexSet> {
    maximal_independent_sets_capped(g, usize::MAX).expect("uncapped enumeration")
}

/// Like [`maximal_independent_sets`] but fails once more than `cap` sets exist.
pub fn maximal_independent_sets_capped(
    g: &Graph,
    cap: usize,
) -> Result<Vec<VertexSet>, GraphError> {
    let comp = g.complement();
    let mut out = Vec::new();
    bron_kerbosch(&comp, 0, comp.vertex_mask(), 0, cap, &mut out)?;
    out.sort_unstable();
    Ok(out.into_iter().map(VertexSet::from_bits).collect())
}

/// Reports maximal cliques of `h` (independent sets of its complement).
fn bron_kerbosch(
    h: &Graph,
    r: u64,
    mut p: u64,
    mut x: u64,
    cap: usize,
    out: &mut Vec<u64>,
) -> Result<(), GraphError> {
    if p == 0 {
        if x == 0 {
            if out.len() >= cap {
                return Err(GraphError::TooManyIndependentSets { cap });
            }
            out.push(r);
        }
        return Ok(());
    }
    // Pivot: the vertex of P with the most neighbours inside P, lowest index on ties.
    let mut pivot = 0;
    let mut pivot_deg = -1i32;
    for u in BitIter::new(p) {
        let d = (h.neighbors(u) & p).count_ones() as i32;
        if d > pivot_deg {
            pivot = u;
            pivot_deg = d;
        }
    }
    for v in BitIter::new(p & !h.neighbors(pivot)) {
        let nv = h.neighbors(v);
        bron_kerbosch(h, r | 1u64 << v, p & nv, x & nv, cap, out)?;
        p &= !(1u64 << v);
        x |= 1u64 << v;
    }
    Ok(())
}

/// Exact maximum of `sum(weights[v] for v in I)` over independent sets `I`.
/// Vertices with non-positive weight are never chosen.
pub fn max_weight_independent_set<T>(g: &Graph, weights: &[T]) -> (T, VertexSet)
where
    T: Clone + PartialOrd + Zero + Add<Output = T>,
{
    assert_eq!(weights.len(), g.n(), "one weight per vertex");
    let positive = BitIter::new(g.vertex_mask())
        .filter(|&v| weights[v] > T::zero())
        .fold(0u64, |m, v| m | 1u64 << v);
    let mut best = (T::zero(), 0u64);
    mwis_rec(g, weights, positive, T::zero(), 0, &mut best);
    (best.0, VertexSet::from_bits(best.1))
}

/// Greedy clique cover of `cand`; each clique contributes its heaviest vertex.
fn clique_cover_bound<T>(g: &Graph, weights: &[T], mut cand: u64) -> T
where
    T: Clone + PartialOrd + Zero + Add<Output = T>,
{
    let mut total = T::zero();
    while cand != 0 {
        let u = cand.trailing_zeros() as usize;
        let mut clique_mask = g.neighbors(u) & cand;
        cand &= !(1u64 << u);
        let mut heaviest = weights[u].clone();
        while clique_mask != 0 {
            let v = clique_mask.trailing_zeros() as usize;
            clique_mask &= g.neighbors(v);
            cand &= !(1u64 << v);
            if weights[v] > heaviest {
                heaviest = weights[v].clone();
            }
        }
        total = total + heaviest;
    }
    total
}

fn mwis_rec<T>(g: &Graph, weights: &[T], cand: u64, current: T, set: u64, best: &mut (T, u64))
where
    T: Clone + PartialOrd + Zero + Add<Output = T>,
{
    if cand == 0 {
        if current > best.0 {
            *best = (current, set);
        }
        return;
    }
    let bound = current.clone() + clique_cover_bound(g, weights, cand);
    if bound <= best.0 {
        return;
    }
    // Isolated candidates are always taken.
    let isolated = BitIter::new(cand)
        .filter(|&v| g.neighbors(v) & cand == 0)
        .fold(0u64, |m, v| m | 1u64 << v);
    if isolated != 0 {
        let gain = BitIter::new(isolated).fold(T::zero(), |s, v| s + weights[v].clone());
        mwis_rec(
            g,
            weights,
            cand & !isolated,
            current + gain,
            set | isolated,
            best,
        );
        return;
    }
    let v = BitIter::new(cand)
        .max_by_key(|&v| ((g.neighbors(v) & cand).count_ones(), std::cmp::Reverse(v)))
        .expect("cand nonempty");
    mwis_rec(
        g,
        weights,
        cand & !g.neighbors(v) & !(1u64 << v),
        current.clone() + weights[v].clone(),
        set | 1u64 << v,
        best,
    );
    mwis_rec(g, weights, cand & !(1u64 << v), current, set, best);
}
