//! Numerical search for orthogonal representations: unit vectors in `C^d`
//! (or `R^d`), one per vertex, with adjacent vertices orthogonal.
//!
//! The search minimizes
//!
//! ```text
//! f(v) = Σ_{ij ∈ E} |⟨v_i, v_j⟩|² / (|v_i|² |v_j|²)
//! ```
//!
//! over unnormalized vectors with L-BFGS from seeded random starts. A zero of
//! `f` is only a realization when non-adjacent vertices stay distinct rays;
//! otherwise it is reported as degenerate.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::certify::{inner_exact, inner_f64, Vectors};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RealizeError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("expected {expected} vectors of length {d}, found one of length {got}")]
    Shape {
        expected: usize,
        d: usize,
        got: usize,
    },
    #[error("expected {expected} vectors, got {got}")]
    Count { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RealizationStatus {
    Found,
    Degenerate,
    Failed,
}

impl std::fmt::Display for RealizationStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RealizationStatus::Found => "found",
            RealizationStatus::Degenerate => "degenerate",
            RealizationStatus::Failed => "failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizationResult {
    pub status: RealizationStatus,
    /// Unit vectors, one per vertex.
    pub vectors: Vec<Vec<Complex64>>,
    pub residual: f64,
    /// Minimum of `1 − |⟨v_i, v_j⟩|` over non-adjacent pairs (1 if none).
    pub min_pairwise_distinctness: f64,
    /// Index of the restart that produced this result.
    pub restart: usize,
    /// Smallest residual reached by any restart.
    pub best_residual: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RealizeOptions {
    pub d: usize,
    pub field: Field,
    pub restarts: usize,
    pub tol: f64,
    pub delta: f64,
    pub seed: u64,
    pub max_iterations: usize,
}

impl RealizeOptions {
    pub fn new(d: usize, field: Field) -> Self {
        RealizeOptions {
            d,
            field,
            restarts: 50,
            tol: 1e-12,
            delta: 1e-6,
            seed: 0,
            max_iterations: 5000,
        }
    }
}

/// Number of real coordinates per vector entry.
fn width(field: Field) -> usize {
    match field {
        Field::Real => 1,
        Field::Complex => 2,
    }
}

/// Unpacks the flat coordinate vector into complex vectors.
pub fn unpack(x: &[f64], n: usize, d: usize, field: Field) -> Vec<Vec<Complex64>> {
    let w = width(field);
    assert_eq!(x.len(), n * d * w, "coordinate count");
    (0..n)
        .map(|i| {
            (0..d)
                .map(|k| {
                    let at = (i * d + k) * w;
                    match field {
                        Field::Real => Complex64::new(x[at], 0.0),
                        Field::Complex => Complex64::new(x[at], x[at + 1]),
                    }
                })
                .collect()
        })
        .collect()
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `f` and its gradient with respect to the flat real coordinates.
pub fn objective_and_gradient(
    g: &Graph,
    x: &[f64],
    d: usize,
    field: Field,
    grad: &mut [f64],
) -> f64 {
    let n = g.n();
    let vs = unpack(x, n, d, field);
    let norms: Vec<f64> = vs.iter().map(|v| norm_sqr(v)).collect();
    let mut gc = vec![vec![Complex64::new(0.0, 0.0); d]; n];
    let mut f = 0.0;
    for (i, j) in g.edges() {
        let (a, b) = (&vs[i], &vs[j]);
        let (na, nb) = (norms[i], norms[j]);
        let p = inner_f64(a, b);
        let p2 = p.norm_sqr();
        f += p2 / (na * nb);
        // gradients written as ∂/∂Re + i ∂/∂Im
        for k in 0..d {
            gc[i][k] += 2.0 * p.conj() * b[k] / (na * nb) - 2.0 * p2 * a[k] / (na * na * nb);
            gc[j][k] += 2.0 * p * a[k] / (na * nb) - 2.0 * p2 * b[k] / (na * nb * nb);
        }
    }
    let w = width(field);
    for i in 0..n {
        for k in 0..d {
            let at = (i * d + k) * w;
            grad[at] = gc[i][k].re;
            if field == Field::Complex {
                grad[at + 1] = gc[i][k].im;
            }
        }
    }
    f
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Limited-memory BFGS with backtracking Armijo line search. Stops once the
/// value drops to `target`.
fn lbfgs<F>(mut eval: F, mut x: Vec<f64>, max_iter: usize, target: f64) -> (Vec<f64>, f64)
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    const MEMORY: usize = 10;
    let dim = x.len();
    let mut g = vec![0.0; dim];
    let mut fx = eval(&x, &mut g);
    let mut hist: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::new();
    let mut x_new = vec![0.0; dim];
    let mut g_new = vec![0.0; dim];
    for _ in 0..max_iter {
        if fx <= target {
            break;
        }
        let mut q: Vec<f64> = g.clone();
        let mut alphas = Vec::with_capacity(hist.len());
        for (s, y, rho) in hist.iter().rev() {
            let a = rho * dot(s, &q);
            q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
            alphas.push(a);
        }
        if let Some((s, y, _)) = hist.last() {
            let gamma = dot(s, y) / dot(y, y);
            q.iter_mut().for_each(|qi| *qi *= gamma);
        } else {
            let gn = dot(&g, &g).sqrt();
            if gn == 0.0 {
                break;
            }
            q.iter_mut().for_each(|qi| *qi /= gn.max(1.0));
        }
        for ((s, y, rho), a) in hist.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &q);
            q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
        }
        let mut dir: Vec<f64> = q.into_iter().map(|v| -v).collect();
        let mut slope = dot(&dir, &g);
        if slope >= 0.0 {
            hist.clear();
            dir = g.iter().map(|v| -v).collect();
            slope = -dot(&g, &g);
        }
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            for k in 0..dim {
                x_new[k] = x[k] + step * dir[k];
            }
            let f_new = eval(&x_new, &mut g_new);
            if f_new <= fx + 1e-4 * step * slope {
                let s: Vec<f64> = (0..dim).map(|k| x_new[k] - x[k]).collect();
                let y: Vec<f64> = (0..dim).map(|k| g_new[k] - g[k]).collect();
                let sy = dot(&s, &y);
                if sy > 1e-20 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
                    if hist.len() == MEMORY {
                        hist.remove(0);
                    }
                    hist.push((s, y, 1.0 / sy));
                }
                std::mem::swap(&mut x, &mut x_new);
                std::mem::swap(&mut g, &mut g_new);
                fx = f_new;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            if hist.is_empty() {
                break;
            }
            hist.clear();
        }
    }
    (x, fx)
}

/// Residual and distinctness of normalized vectors.
fn measure(g: &Graph, units: &[Vec<Complex64>]) -> (f64, f64) {
    let n = g.n();
    let mut residual = 0.0;
    let mut distinct: f64 = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            let overlap = inner_f64(&units[i], &units[j]).norm();
            if g.has_edge(i, j) {
                residual += overlap * overlap;
            } else {
                distinct = distinct.min(1.0 - overlap);
            }
        }
    }
    (residual, distinct)
}

fn normalize(v: &[Complex64]) -> Vec<Complex64> {
    let norm = norm_sqr(v).sqrt();
    v.iter().map(|z| z / norm).collect()
}

/// Residual `Σ_{ij∈E} |⟨v̂_i, v̂_j⟩|²` of arbitrary nonzero vectors.
pub fn residual(g: &Graph, vectors: &[Vec<Complex64>]) -> f64 {
    let units: Vec<Vec<Complex64>> = vectors.iter().map(|v| normalize(v)).collect();
    measure(g, &units).0
}

fn classify(residual: f64, distinct: f64, opts: &RealizeOptions) -> RealizationStatus {
    if residual > opts.tol {
        RealizationStatus::Failed
    } else if distinct >= opts.delta {
        RealizationStatus::Found
    } else {
        RealizationStatus::Degenerate
    }
}

fn single_run(g: &Graph, opts: &RealizeOptions, restart: usize) -> RealizationResult {
    let n = g.n();
    let dim = n * opts.d * width(opts.field);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(restart as u64));
    let x0: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
    let (x, _) = lbfgs(
        |x, grad| objective_and_gradient(g, x, opts.d, opts.field, grad),
        x0,
        opts.max_iterations,
        opts.tol * 1e-6,
    );
    let vectors: Vec<Vec<Complex64>> = unpack(&x, n, opts.d, opts.field)
        .iter()
        .map(|v| normalize(v))
        .collect();
    let (residual, distinct) = measure(g, &vectors);
    RealizationResult {
        status: classify(residual, distinct, opts),
        vectors,
        residual,
        min_pairwise_distinctness: distinct,
        restart,
        best_residual: residual,
    }
}

fn check_options(opts: &RealizeOptions) -> Result<(), RealizeError> {
    if opts.d < 2 {
        return Err(RealizeError::Parameter(format!("dimension {} < 2", opts.d)));
    }
    if opts.restarts == 0 {
        return Err(RealizeError::Parameter(
            "restarts must be at least 1".into(),
        ));
    }
    if !(opts.tol > 0.0) || !(opts.delta > 0.0) {
        return Err(RealizeError::Parameter(
            "tol and delta must be positive".into(),
        ));
    }
    Ok(())
}

/// Every restart's outcome, in restart order.
pub fn realization_runs(
    g: &Graph,
    opts: &RealizeOptions,
) -> Result<Vec<RealizationResult>, RealizeError> {
    check_options(opts)?;
    let mut runs: Vec<RealizationResult> = (0..opts.restarts)
        .into_par_iter()
        .map(|k| single_run(g, opts, k))
        .collect();
    let best_residual = runs
        .iter()
        .map(|r| r.residual)
        .fold(f64::INFINITY, f64::min);
    runs.iter_mut()
        .for_each(|r| r.best_residual = best_residual);
    Ok(runs)
}

/// Runs every restart in parallel and reports the best by status (found,
/// then degenerate, then failed), then residual, then restart index.
pub fn find_realization(
    g: &Graph,
    opts: &RealizeOptions,
) -> Result<RealizationResult, RealizeError> {
    let runs = realization_runs(g, opts)?;
    Ok(runs
        .into_iter()
        .min_by(|a, b| {
            a.status
                .cmp(&b.status)
                .then(a.residual.total_cmp(&b.residual))
                .then(a.restart.cmp(&b.restart))
        })
        .expect("at least one restart"))
}

/// Adjacent vectors orthogonal and non-adjacent ones non-parallel. Exact
/// vectors are checked exactly; numeric ones need squared overlap `<= tol`
/// on edges and `1 − |overlap| >= delta` elsewhere.
pub fn verify_realization(
    g: &Graph,
    vectors: &Vectors,
    tol: f64,
    delta: f64,
) -> Result<bool, RealizeError> {
    let n = g.n();
    let shapes: Vec<usize> = match vectors {
        Vectors::Exact(vs) => vs.iter().map(Vec::len).collect(),
        Vectors::Numeric(vs) => vs.iter().map(Vec::len).collect(),
    };
    if shapes.len() != n {
        return Err(RealizeError::Count {
            expected: n,
            got: shapes.len(),
        });
    }
    let d = shapes.first().copied().unwrap_or(0);
    if let Some(&bad) = shapes.iter().find(|&&len| len != d || len == 0) {
        return Err(RealizeError::Shape {
            expected: n,
            d,
            got: bad,
        });
    }
    match vectors {
        Vectors::Exact(vs) => {
            let norms: Vec<_> = vs
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|z| z.norm_sqr())
                        .sum::<crate::exact::Rational>()
                })
                .collect();
            if norms.iter().any(num_traits::Zero::is_zero) {
                return Ok(false);
            }
            for i in 0..n {
                for j in i + 1..n {
                    let ip = inner_exact(&vs[i], &vs[j]);
                    let ok = if g.has_edge(i, j) {
                        num_traits::Zero::is_zero(&ip)
                    } else {
                        ip.norm_sqr() != &norms[i] * &norms[j]
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Vectors::Numeric(vs) => {
            if vs.iter().any(|v| norm_sqr(v) == 0.0) {
                return Ok(false);
            }
            let units: Vec<Vec<Complex64>> = vs.iter().map(|v| normalize(v)).collect();
            for i in 0..n {
                for j in i + 1..n {
                    let overlap = inner_f64(&units[i], &units[j]).norm();
                    let ok = if g.has_edge(i, j) {
                        overlap * overlap <= tol
                    } else {
                        1.0 - overlap >= delta
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}
