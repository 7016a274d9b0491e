//! Exact chromatic and fractional chromatic numbers, and the graph-level
//! necessary conditions for SIC sets built on them.

use num_traits::{One, Zero};

use crate::exact::{int, lp_solve_exact, ExactError, LinearProgram, LpStatus, Rational};
use crate::graph::{
    max_weight_independent_set, maximal_independent_sets_capped, BitIter, Graph, GraphError,
    VertexSet, DEFAULT_MIS_CAP,
};

#[derive(Debug, thiserror::Error)]
pub enum ColoringError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("fractional colouring LP ended with status {0:?}")]
    Lp(LpStatus),
    #[error("invalid ratio d/r with d = {d}, r = {r}")]
    BadRatio { d: usize, r: usize },
}

/// How the lower bound of a chromatic number was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBound {
    /// A clique of size `chi`.
    Clique(VertexSet),
    /// Exhaustive search found no colouring with `chi - 1` colours.
    SearchExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    /// `coloring[v]` in `0..chi`; proper.
    pub coloring: Vec<usize>,
    pub lower_bound: LowerBound,
}

/// Vertices by descending degree, ties by index.
fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn greedy_coloring(g: &Graph) -> Vec<usize> {
    let mut color = vec![usize::MAX; g.n()];
    for v in degree_order(g) {
        let used = BitIter::new(g.neighbors(v))
            .filter(|&u| color[u] != usize::MAX)
            .fold(0u64, |m, u| m | 1u64 << color[u]);
        color[v] = (!used).trailing_zeros() as usize;
    }
    color
}

pub fn is_proper_coloring(g: &Graph, coloring: &[usize]) -> bool {
    coloring.len() == g.n() && g.edges().all(|(u, v)| coloring[u] != coloring[v])
}

/// A proper colouring with at most `k` colours, if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if k == 0 {
        return None;
    }
    if k >= 64 || k >= n {
        return Some((0..n).collect());
    }
    let mut color = vec![usize::MAX; n];
    // forbidden[v]: colours already used by neighbours of v
    let mut forbidden = vec![0u64; n];
    let rank: Vec<usize> = {
        let mut r = vec![0; n];
        for (i, v) in degree_order(g).into_iter().enumerate() {
            r[v] = i;
        }
        r
    };
    if color_rec(g, k, 0, &mut color, &mut forbidden, &rank, 0) {
        Some(color)
    } else {
        None
    }
}

/// DSATUR-style backtracking: branch on the uncoloured vertex with the most
/// distinct neighbouring colours; a fresh colour is only tried once.
fn color_rec(
    g: &Graph,
    k: usize,
    colored: u64,
    color: &mut [usize],
    forbidden: &mut [u64],
    rank: &[usize],
    used: usize,
) -> bool {
    let n = g.n();
    let uncolored = g.vertex_mask() & !colored;
    if uncolored == 0 {
        return true;
    }
    let v = BitIter::new(uncolored)
        .min_by_key(|&v| {
            (
                std::cmp::Reverse(forbidden[v].count_ones()),
                std::cmp::Reverse((g.neighbors(v) & uncolored).count_ones()),
                rank[v],
            )
        })
        .expect("nonempty");
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if forbidden[v] >> c & 1 == 1 {
            continue;
        }
        color[v] = c;
        let mut touched = 0u64;
        for u in BitIter::new(g.neighbors(v) & uncolored) {
            if forbidden[u] >> c & 1 == 0 {
                forbidden[u] |= 1u64 << c;
                touched |= 1u64 << u;
            }
        }
        let dead = BitIter::new(touched).any(|u| forbidden[u].count_ones() as usize >= k);
        if !dead
            && color_rec(
                g,
                k,
                colored | 1u64 << v,
                color,
                forbidden,
                rank,
                used.max(c + 1),
            )
        {
            return true;
        }
        for u in BitIter::new(touched) {
            forbidden[u] &= !(1u64 << c);
        }
        color[v] = usize::MAX;
        debug_assert!(v < n);
    }
    false
}

pub fn chromatic_number(g: &Graph) -> ChromaticResult {
    let clique = g.max_clique();
    let omega = clique.len();
    let greedy = greedy_coloring(g);
    let ub = greedy.iter().max().map_or(0, |&c| c + 1);
    if ub == omega {
        return ChromaticResult {
            chi: ub,
            coloring: greedy,
            lower_bound: LowerBound::Clique(clique),
        };
    }
    for k in omega..ub {
        if let Some(coloring) = k_coloring(g, k) {
            let lower_bound = if k == omega {
                LowerBound::Clique(clique)
            } else {
                LowerBound::SearchExhausted
            };
            return ChromaticResult {
                chi: k,
                coloring,
                lower_bound,
            };
        }
    }
    ChromaticResult {
        chi: ub,
        coloring: greedy,
        lower_bound: LowerBound::SearchExhausted,
    }
}

/// Optimum of the fractional clique LP
/// `max Σ w_v  s.t.  Σ_{v∈I} w_v <= 1 for every maximal independent set I, w >= 0`,
/// which equals the fractional chromatic number by duality.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalResult {
    pub value: Rational,
    /// Optimal fractional clique, one weight per vertex.
    pub weights: Vec<Rational>,
    /// Constraints holding with equality at the optimum.
    pub tight_sets: Vec<VertexSet>,
    /// Optimal fractional colouring: independent sets with positive weight,
    /// covering every vertex at least once, weights summing to `value`.
    pub cover: Vec<(VertexSet, Rational)>,
    /// Number of independent-set constraints in the final LP.
    pub constraints: usize,
    /// Whether lazy constraint generation was used.
    pub lazy: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct FractionalOptions {
    /// Enumerate all maximal independent sets up to this many; beyond it,
    /// generate constraints lazily.
    pub mis_cap: usize,
}

impl Default for FractionalOptions {
    fn default() -> Self {
        FractionalOptions {
            mis_cap: DEFAULT_MIS_CAP,
        }
    }
}

pub fn fractional_chromatic_number(g: &Graph) -> Result<FractionalResult, ColoringError> {
    fractional_chromatic_number_with(g, FractionalOptions::default())
}

pub fn fractional_chromatic_number_with(
    g: &Graph,
    opts: FractionalOptions,
) -> Result<FractionalResult, ColoringError> {
    match maximal_independent_sets_capped(g, opts.mis_cap) {
        Ok(sets) => solve_clique_lp(g, &sets, false),
        Err(GraphError::TooManyIndependentSets { .. }) => lazy_fractional(g),
        Err(e) => Err(e.into()),
    }
}

fn solve_clique_lp(
    g: &Graph,
    sets: &[VertexSet],
    lazy: bool,
) -> Result<FractionalResult, ColoringError> {
    let n = g.n();
    let mut lp = LinearProgram::new(vec![Rational::one(); n]);
    for s in sets {
        lp.add_row(
            (0..n).map(|v| int(s.contains(v) as i64)).collect(),
            Rational::one(),
        );
    }
    let sol = lp_solve_exact(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(ColoringError::Lp(sol.status));
    }
    lp.check_certificate(&sol)?;
    let tight_sets = sets
        .iter()
        .filter(|s| {
            s.iter()
                .map(|v| &sol.solution[v])
                .sum::<Rational>()
                .is_one()
        })
        .copied()
        .collect();
    let cover = sets
        .iter()
        .zip(&sol.dual)
        .filter(|(_, y)| !y.is_zero())
        .map(|(s, y)| (*s, y.clone()))
        .collect();
    Ok(FractionalResult {
        value: sol.value,
        weights: sol.solution,
        tight_sets,
        cover,
        constraints: sets.len(),
        lazy,
    })
}

/// Greedily grows `seed` to a maximal independent set, adding vertices in
/// index order.
fn extend_to_maximal(g: &Graph, seed: VertexSet) -> VertexSet {
    let mut s = seed.bits();
    let mut blocked = BitIter::new(s).fold(s, |m, v| m | g.neighbors(v));
    for v in 0..g.n() {
        if blocked >> v & 1 == 0 {
            s |= 1u64 << v;
            blocked |= 1u64 << v | g.neighbors(v);
        }
    }
    VertexSet::from_bits(s)
}

/// Constraint generation with an exact maximum-weight independent set oracle.
fn lazy_fractional(g: &Graph) -> Result<FractionalResult, ColoringError> {
    let mut sets: Vec<VertexSet> = Vec::new();
    let mut covered = 0u64;
    for v in 0..g.n() {
        if covered >> v & 1 == 0 {
            let s = extend_to_maximal(g, VertexSet::from_vertices([v]));
            covered |= s.bits();
            sets.push(s);
        }
    }
    loop {
        let res = solve_clique_lp(g, &sets, true)?;
        let (weight, set) = max_weight_independent_set(g, &res.weights);
        if weight <= Rational::one() {
            return Ok(res);
        }
        let s = extend_to_maximal(g, set);
        debug_assert!(!sets.contains(&s));
        sets.push(s);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryConditions {
    pub chi: usize,
    pub chi_f: Rational,
    /// `chi > d`
    pub chi_ok: bool,
    /// `chi_f > d`
    pub chi_f_ok: bool,
}

/// Both graph-level necessary conditions for a rank-one SIC set in dimension `d`.
pub fn sic_necessary_conditions(g: &Graph, d: usize) -> Result<NecessaryConditions, ColoringError> {
    let chi = chromatic_number(g).chi;
    let chi_f = fractional_chromatic_number(g)?.value;
    let bound = int(d as i64);
    Ok(NecessaryConditions {
        chi,
        chi_ok: chi > d,
        chi_f_ok: chi_f > bound,
        chi_f,
    })
}

/// `chi_f(g) > d / r`, compared exactly.
pub fn rh_sic_graph_test(g: &Graph, d: usize, r: usize) -> Result<bool, ColoringError> {
    if r == 0 || d < r {
        return Err(ColoringError::BadRatio { d, r });
    }
    let chi_f = fractional_chromatic_number(g)?.value;
    Ok(chi_f > Rational::new((d as i64).into(), (r as i64).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::graph::parse_graph6;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const YU_OH: &str = "L?AB?vOLDPHa`o";

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Smallest k such that some assignment in k^n is proper.
    fn brute_chromatic(g: &Graph) -> usize {
        let n = g.n();
        for k in 1..=n {
            let mut c = vec![0usize; n];
            loop {
                if is_proper_coloring(g, &c) {
                    return k;
                }
                let mut i = 0;
                while i < n && c[i] == k - 1 {
                    c[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                c[i] += 1;
            }
        }
        n
    }

    fn check(g: &Graph) -> ChromaticResult {
        let r = chromatic_number(g);
        assert!(is_proper_coloring(g, &r.coloring));
        assert_eq!(r.coloring.iter().max().map_or(0, |c| c + 1), r.chi);
        if let LowerBound::Clique(c) = &r.lower_bound {
            assert!(g.is_clique(*c));
            assert_eq!(c.len(), r.chi);
        }
        r
    }

    #[test]
    fn chromatic_named_graphs() {
        assert_eq!(check(&Graph::complete(4).unwrap()).chi, 4);
        let c5 = check(&Graph::cycle(5).unwrap());
        assert_eq!(c5.chi, 3);
        assert_eq!(c5.lower_bound, LowerBound::SearchExhausted);
        let yo = check(&parse_graph6(YU_OH).unwrap());
        assert_eq!(yo.chi, 4);
        assert_eq!(check(&Graph::new(5).unwrap()).chi, 1);
    }

    #[test]
    fn chromatic_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for round in 0..120 {
            let n = 1 + round % 8;
            let g = random_graph(&mut rng, n, [0.3, 0.5, 0.7][round % 3]);
            assert_eq!(check(&g).chi, brute_chromatic(&g), "{g:?}");
        }
    }

    #[test]
    fn fractional_named_graphs() {
        assert_eq!(
            fractional_chromatic_number(&Graph::cycle(5).unwrap())
                .unwrap()
                .value,
            rat(5, 2)
        );
        assert_eq!(
            fractional_chromatic_number(&Graph::cycle(7).unwrap())
                .unwrap()
                .value,
            rat(7, 3)
        );
        assert_eq!(
            fractional_chromatic_number(&Graph::complete(3).unwrap())
                .unwrap()
                .value,
            int(3)
        );
        let yo = fractional_chromatic_number(&parse_graph6(YU_OH).unwrap()).unwrap();
        assert_eq!(yo.value, rat(35, 11));
        assert_eq!(
            fractional_chromatic_number(&parse_graph6("L?`D@bCUCbDgWc").unwrap())
                .unwrap()
                .value,
            rat(13, 4)
        );
    }

    #[test]
    fn fractional_result_invariants() {
        let g = parse_graph6(YU_OH).unwrap();
        let r = fractional_chromatic_number(&g).unwrap();
        assert!(r.weights.iter().all(|w| *w >= Rational::zero()));
        assert_eq!(r.weights.iter().sum::<Rational>(), r.value);
        for s in crate::graph::maximal_independent_sets(&g) {
            assert!(s.iter().map(|v| &r.weights[v]).sum::<Rational>() <= Rational::one());
        }
        // the cover is a fractional colouring of the same total weight
        assert_eq!(r.cover.iter().map(|(_, y)| y).sum::<Rational>(), r.value);
        for v in 0..g.n() {
            let c: Rational = r
                .cover
                .iter()
                .filter(|(s, _)| s.contains(v))
                .map(|(_, y)| y)
                .sum();
            assert!(c >= Rational::one());
        }
        assert!(!r.tight_sets.is_empty());
    }

    #[test]
    fn lazy_generation_agrees_with_full_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for round in 0..30 {
            let g = random_graph(&mut rng, 4 + round % 9, 0.4);
            let full = fractional_chromatic_number(&g).unwrap();
            let lazy =
                fractional_chromatic_number_with(&g, FractionalOptions { mis_cap: 0 }).unwrap();
            assert!(lazy.lazy && !full.lazy);
            assert_eq!(full.value, lazy.value);
        }
        let g = parse_graph6(YU_OH).unwrap();
        let lazy = fractional_chromatic_number_with(&g, FractionalOptions { mis_cap: 0 }).unwrap();
        assert_eq!(lazy.value, rat(35, 11));
    }

    #[test]
    fn sandwich_and_independence_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for round in 0..40 {
            let n = 2 + round % 11;
            let g = random_graph(&mut rng, n, 0.45);
            let chi_f = fractional_chromatic_number(&g).unwrap().value;
            let chi = chromatic_number(&g).chi;
            assert!(int(g.clique_number() as i64) <= chi_f);
            assert!(chi_f <= int(chi as i64));
            assert!(chi <= n);
            let alpha = g.independence_number();
            assert!(chi_f >= rat(n as i64, alpha as i64));
        }
    }

    #[test]
    fn cone_shifts_both_numbers_by_one() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::cycle(7).unwrap(),
            parse_graph6(YU_OH).unwrap(),
            Graph::path(4).unwrap(),
        ] {
            let c = g.cone().unwrap();
            assert_eq!(
                fractional_chromatic_number(&c).unwrap().value,
                fractional_chromatic_number(&g).unwrap().value + int(1)
            );
            assert_eq!(chromatic_number(&c).chi, chromatic_number(&g).chi + 1);
        }
    }

    #[test]
    fn necessary_conditions_and_rh_test() {
        let yo = parse_graph6(YU_OH).unwrap();
        let nc = sic_necessary_conditions(&yo, 3).unwrap();
        assert!(nc.chi_ok && nc.chi_f_ok);
        let nc = sic_necessary_conditions(&Graph::cycle(5).unwrap(), 3).unwrap();
        assert!(!nc.chi_ok && !nc.chi_f_ok);

        assert!(rh_sic_graph_test(&yo, 3, 1).unwrap());
        assert!(rh_sic_graph_test(&yo.cone().unwrap(), 4, 1).unwrap());
        assert!(!rh_sic_graph_test(&Graph::complete(3).unwrap(), 3, 1).unwrap());
        assert!(rh_sic_graph_test(&yo, 3, 0).is_err());
        assert!(rh_sic_graph_test(&yo, 1, 2).is_err());
    }
}
