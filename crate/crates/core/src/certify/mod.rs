//! Deciding whether a set of rank-one projectors is a state-independent
//! contextuality set.
//!
//! A set `{Π_i}` is SIC exactly when there are weights `w >= 0` and `y < 1`
//! with
//!
//! ```text
//! Σ_{j∈I} w_j <= y   for every independent set I of the orthogonality graph
//! Σ_i w_i Π_i  ⪰ 𝟙
//! ```
//!
//! [`certify_sic`] looks for such a pair with a floating-point cutting-plane
//! loop and accepts it only after both conditions hold in exact arithmetic.
//! Infeasibility is reported only through explicit obstructions: an
//! independent set `I` and a state orthogonal to every projector outside `I`.

mod inequality;
mod vectors;

use std::fmt::{self, Write as _};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

pub use inequality::{emit_inequality, noncontextual_bound, Inequality};
pub use vectors::{
    inner_exact, inner_f64, parse_vector_file, write_vector_file, Mode, ProjectorSet, Vectors,
};

use crate::exact::{
    nullspace, psd_check_exact, quadratic_form, rationalize, to_f64, ExactError, GaussianRational,
    LdlFactorization, LinearProgram, LpStatus, Pq, PqComplex, PsdVerdict, Rational,
};
use crate::graph::{
    max_weight_independent_set, maximal_independent_sets, maximal_independent_sets_capped, Graph,
    GraphError, VertexSet, DEFAULT_MIS_CAP,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CertifyError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("vectors {i} and {j} define the same projector")]
    DuplicateProjector { i: usize, j: usize },
    #[error(
        "overlap {value:e} of vectors {i} and {j} is neither clearly zero nor clearly nonzero"
    )]
    AmbiguousOrthogonality { i: usize, j: usize, value: f64 },
    #[error("tolerance must be positive in numeric mode")]
    BadTolerance,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("certificate status is {0}, not SIC")]
    NotSic(SicStatus),
    #[error("certificate rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SicStatus {
    Sic,
    NotSic,
    Undecided,
}

impl fmt::Display for SicStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SicStatus::Sic => "SIC",
            SicStatus::NotSic => "NOT_SIC",
            SicStatus::Undecided => "UNDECIDED",
        })
    }
}

/// An independent set `I` and a nonzero vector orthogonal to every projector
/// outside `I`. Any `w` with `Σ w_i Π_i ⪰ 𝟙` then has `Σ_{i∈I} w_i >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstruction {
    pub independent_set: VertexSet,
    /// Not normalized; the state is `state / |state|`.
    pub state: Vec<GaussianRational>,
}

impl Obstruction {
    /// Lower bound forced on `Σ_{i∈I} w_i`.
    pub fn bound(&self) -> Rational {
        Rational::one()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SicCertificate {
    pub status: SicStatus,
    /// Exact weights; all zero unless the status is SIC.
    pub w: Vec<Rational>,
    pub y: Rational,
    /// Factorization of `Σ w_i Π_i − 𝟙` when SIC.
    pub psd_witness: Option<LdlFactorization>,
    pub obstruction: Option<Obstruction>,
    pub rounds: usize,
    pub diagnostics: Vec<String>,
    pub graph: Graph,
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub max_rounds: usize,
    /// Orthogonality tolerance for numeric vectors.
    pub tol: f64,
    /// Enumerate maximal independent sets up to this many; past it, they
    /// are generated on demand.
    pub mis_cap: usize,
    /// How many maximal independent sets the obstruction search inspects.
    pub obstruction_limit: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            max_rounds: 500,
            tol: 1e-9,
            mis_cap: DEFAULT_MIS_CAP,
            obstruction_limit: 10_000,
        }
    }
}

const CONVERGENCE: f64 = 1e-9;
const LADDER: [u64; 3] = [1_000, 1_000_000, 1_000_000_000];

/// Edge `{i, j}` iff the vectors are orthogonal.
pub fn orthogonality_graph(s: &ProjectorSet, tol: f64) -> Result<Graph, CertifyError> {
    let n = s.len();
    let mut g = Graph::new(n)?;
    match s.vectors() {
        Vectors::Exact(vs) => {
            let norms: Vec<Rational> = vs
                .iter()
                .map(|v| v.iter().map(|z| z.norm_sqr()).sum())
                .collect();
            for i in 0..n {
                for j in i + 1..n {
                    let ip = inner_exact(&vs[i], &vs[j]);
                    if ip.is_zero() {
                        g.add_edge(i, j);
                    } else if ip.norm_sqr() == &norms[i] * &norms[j] {
                        return Err(CertifyError::DuplicateProjector { i, j });
                    }
                }
            }
        }
        Vectors::Numeric(_) => {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CertifyError::BadTolerance);
            }
            let units: Vec<Vec<Complex64>> = (0..n).map(|i| s.unit_vector(i)).collect();
            for i in 0..n {
                for j in i + 1..n {
                    let overlap = inner_f64(&units[i], &units[j]).norm();
                    if overlap <= tol {
                        g.add_edge(i, j);
                    } else if overlap < 10.0 * tol {
                        return Err(CertifyError::AmbiguousOrthogonality {
                            i,
                            j,
                            value: overlap,
                        });
                    } else if 1.0 - overlap <= tol {
                        return Err(CertifyError::DuplicateProjector { i, j });
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Smallest eigenvalue and a unit eigenvector of a Hermitian matrix.
fn min_eigenpair(m: DMatrix<Complex64>) -> (f64, Vec<Complex64>) {
    let eig = m.symmetric_eigen();
    let (k, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    (lambda, eig.eigenvectors.column(k).iter().copied().collect())
}

/// `min_ρ tr(ρ Σ w_i Π_i)`: the smallest eigenvalue of the weighted sum.
pub fn min_quantum_value(s: &ProjectorSet, w: &[f64]) -> Result<f64, CertifyError> {
    check_len(s.len(), w.len())?;
    Ok(min_eigenpair(s.weighted_sum_f64(w)).0)
}

#[derive(Debug, Clone)]
pub enum State {
    Pure(Vec<Complex64>),
    Density(DMatrix<Complex64>),
}

fn check_len(expected: usize, got: usize) -> Result<(), CertifyError> {
    if expected == got {
        Ok(())
    } else {
        Err(CertifyError::LengthMismatch { expected, got })
    }
}

/// `tr(ρ Σ w_i Π_i)`. Every cross term `⟨Π_i Π_j⟩` of the inequality
/// vanishes on orthogonal projectors, so this is its quantum value.
pub fn quantum_value(s: &ProjectorSet, w: &[f64], state: &State) -> Result<f64, CertifyError> {
    check_len(s.len(), w.len())?;
    let m = s.weighted_sum_f64(w);
    match state {
        State::Pure(x) => {
            check_len(s.d(), x.len())?;
            let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>();
            if (norm - 1.0).abs() > 1e-9 {
                return Err(CertifyError::NotNormalized(norm.sqrt()));
            }
            let v = nalgebra::DVector::from_column_slice(x);
            Ok((v.adjoint() * m * v)[(0, 0)].re)
        }
        State::Density(rho) => {
            if rho.nrows() != s.d() || rho.ncols() != s.d() {
                return Err(CertifyError::LengthMismatch {
                    expected: s.d(),
                    got: rho.nrows(),
                });
            }
            let trace = rho.trace();
            if (trace.re - 1.0).abs() > 1e-9 || trace.im.abs() > 1e-9 {
                return Err(CertifyError::NotNormalized(trace.norm()));
            }
            let herm_err = (rho - rho.adjoint())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            if herm_err > 1e-9 || min_eigenpair(rho.clone()).0 < -1e-9 {
                return Err(CertifyError::Input(
                    "density matrix is not PSD Hermitian".into(),
                ));
            }
            Ok((rho * m).trace().re)
        }
    }
}

/// `x† (Σ w_i Π_i) x / x† x`, exactly.
pub fn quantum_value_exact(
    s: &ProjectorSet,
    w: &[Rational],
    x: &[GaussianRational],
) -> Result<Rational, CertifyError> {
    check_len(s.len(), w.len())?;
    check_len(s.d(), x.len())?;
    let m = s
        .weighted_sum_exact(w)
        .ok_or_else(|| CertifyError::Input("exact value needs exact vectors".into()))?;
    let norm: Rational = x.iter().map(|z| z.norm_sqr()).sum();
    if norm.is_zero() {
        return Err(CertifyError::Input("zero state".into()));
    }
    Ok(quadratic_form(&m, x).re / norm)
}

pub fn certify_sic(s: &ProjectorSet, max_rounds: usize) -> Result<SicCertificate, CertifyError> {
    certify_sic_with(
        s,
        &CertifyOptions {
            max_rounds,
            ..CertifyOptions::default()
        },
    )
}

pub fn certify_sic_with(
    s: &ProjectorSet,
    opts: &CertifyOptions,
) -> Result<SicCertificate, CertifyError> {
    let g = orthogonality_graph(s, opts.tol)?;
    let n = s.len();
    let mut cert = SicCertificate {
        status: SicStatus::Undecided,
        w: vec![Rational::zero(); n],
        y: Rational::zero(),
        psd_witness: None,
        obstruction: None,
        rounds: 0,
        diagnostics: Vec::new(),
        graph: g.clone(),
    };

    let sets = match maximal_independent_sets_capped(&g, opts.mis_cap) {
        Ok(sets) => Some(sets),
        Err(GraphError::TooManyIndependentSets { cap }) => {
            cert.diagnostics.push(format!(
                "more than {cap} maximal independent sets; generating lazily"
            ));
            None
        }
        Err(e) => return Err(e.into()),
    };

    if s.mode() == Mode::Exact {
        if let Some(obs) = find_obstruction(s, &g, sets.as_deref(), opts.obstruction_limit) {
            cert.status = SicStatus::NotSic;
            cert.diagnostics.push(format!(
                "state orthogonal to every projector outside independent set {}",
                obs.independent_set
            ));
            cert.obstruction = Some(obs);
            return Ok(cert);
        }
    }

    let phase1 = cutting_planes(s, &g, sets, opts.max_rounds);
    cert.rounds = phase1.rounds;
    cert.diagnostics.extend(phase1.notes);
    let Some((w, t)) = phase1.converged else {
        cert.diagnostics.push(format!(
            "cutting planes did not converge in {} rounds",
            opts.max_rounds
        ));
        return Ok(cert);
    };
    cert.diagnostics
        .push(format!("numeric optimum y ≈ {:.12}", 1.0 / t));
    if t <= 1.0 + 1e-12 {
        cert.diagnostics
            .push("numeric optimum has y >= 1; no certificate expected".into());
        return Ok(cert);
    }
    if s.mode() == Mode::Numeric {
        cert.diagnostics
            .push("numeric vectors: conditions cannot be verified exactly".into());
        return Ok(cert);
    }
    match exact_phase(s, &g, &w, &mut cert.diagnostics)? {
        Some((w, y, ldl)) => {
            cert.status = SicStatus::Sic;
            cert.w = w;
            cert.y = y;
            cert.psd_witness = Some(ldl);
        }
        None => cert
            .diagnostics
            .push("exact verification failed on every rationalization".into()),
    }
    Ok(cert)
}

/// Kernel of the projectors outside `set`, if nontrivial.
fn kernel_outside(s: &ProjectorSet, set: VertexSet) -> Option<Vec<GaussianRational>> {
    let Vectors::Exact(vs) = s.vectors() else {
        return None;
    };
    let rows: Vec<Vec<GaussianRational>> = (0..s.len())
        .filter(|&j| !set.contains(j))
        .map(|j| vs[j].iter().map(|z| z.conj()).collect())
        .collect();
    nullspace(&rows, s.d()).into_iter().next()
}

/// Tries the empty set (vectors not spanning the space), then singleton
/// maximal independent sets, then the remaining ones up to `limit`.
fn find_obstruction(
    s: &ProjectorSet,
    g: &Graph,
    sets: Option<&[VertexSet]>,
    limit: usize,
) -> Option<Obstruction> {
    let mut candidates = vec![VertexSet::EMPTY];
    candidates.extend(
        (0..g.n())
            .filter(|&v| g.neighbors(v) == g.vertex_mask() & !(1u64 << v))
            .map(|v| VertexSet::from_vertices([v])),
    );
    if let Some(sets) = sets {
        candidates.extend(sets.iter().filter(|i| i.len() > 1).take(limit).copied());
    }
    candidates.into_iter().find_map(|set| {
        kernel_outside(s, set).map(|state| Obstruction {
            independent_set: set,
            state,
        })
    })
}

struct Phase1 {
    rounds: usize,
    converged: Option<(Vec<f64>, f64)>,
    notes: Vec<String>,
}

/// Greedy maximal extension in index order.
fn extend_to_maximal(g: &Graph, seed: VertexSet) -> VertexSet {
    let mut s = seed.bits();
    let mut blocked = seed.iter().fold(s, |m, v| m | g.neighbors(v));
    for v in 0..g.n() {
        if blocked >> v & 1 == 0 {
            s |= 1u64 << v;
            blocked |= 1u64 << v | g.neighbors(v);
        }
    }
    VertexSet::from_bits(s)
}

/// Floating-point cutting planes on the scaled problem
///
/// ```text
/// maximize t  s.t.  Σ_{j∈I} w_j <= 1,  t − Σ_i w_i |⟨x, v̂_i⟩|² <= 0 for each cut x
/// ```
///
/// whose optimum is `1/y`. The first cut is the maximally mixed state.
fn cutting_planes(
    s: &ProjectorSet,
    g: &Graph,
    sets: Option<Vec<VertexSet>>,
    max_rounds: usize,
) -> Phase1 {
    let n = s.len();
    let d = s.d();
    let mut notes = Vec::new();
    let mut objective = vec![0.0; n + 1];
    objective[n] = 1.0;
    let mut lp = LinearProgram::new(objective);
    let set_row = |set: VertexSet| -> Vec<f64> {
        let mut row: Vec<f64> = (0..n)
            .map(|v| if set.contains(v) { 1.0 } else { 0.0 })
            .collect();
        row.push(0.0);
        row
    };
    let sets = sets.unwrap_or_else(|| {
        let mut cover = Vec::new();
        let mut covered = 0u64;
        for v in 0..n {
            if covered >> v & 1 == 0 {
                let set = extend_to_maximal(g, VertexSet::from_vertices([v]));
                covered |= set.bits();
                cover.push(set);
            }
        }
        cover
    });
    for &set in &sets {
        lp.add_row(set_row(set), 1.0);
    }
    let units: Vec<Vec<Complex64>> = (0..n).map(|i| s.unit_vector(i)).collect();
    let add_cut = |lp: &mut LinearProgram<f64>, overlaps: Vec<f64>| {
        let mut row: Vec<f64> = overlaps.into_iter().map(|c| -c).collect();
        row.push(1.0);
        lp.add_row(row, 0.0);
    };
    add_cut(&mut lp, vec![1.0 / d as f64; n]);

    for round in 1..=max_rounds {
        let sol = match lp.solve() {
            Ok(sol) if sol.status == LpStatus::Optimal => sol,
            Ok(sol) => {
                notes.push(format!("round {round}: LP status {:?}", sol.status));
                return Phase1 {
                    rounds: round,
                    converged: None,
                    notes,
                };
            }
            Err(e) => {
                notes.push(format!("round {round}: {e}"));
                return Phase1 {
                    rounds: round,
                    converged: None,
                    notes,
                };
            }
        };
        let w: Vec<f64> = sol.solution[..n].iter().map(|&x| x.max(0.0)).collect();
        let t = sol.solution[n];
        let (heaviest, set) = max_weight_independent_set(g, &w);
        if heaviest > 1.0 + CONVERGENCE {
            lp.add_row(set_row(extend_to_maximal(g, set)), 1.0);
            continue;
        }
        let (lambda, x) = min_eigenpair(s.weighted_sum_f64(&w));
        if lambda >= t * (1.0 - CONVERGENCE) {
            return Phase1 {
                rounds: round,
                converged: Some((w, t)),
                notes,
            };
        }
        add_cut(
            &mut lp,
            units.iter().map(|u| inner_f64(&x, u).norm_sqr()).collect(),
        );
    }
    Phase1 {
        rounds: max_rounds,
        converged: None,
        notes,
    }
}

type Verified = (Vec<Rational>, Rational, LdlFactorization);

/// Rationalizes the numeric weights with growing denominators and looks for
/// a shift `μ > y_q` with `Σ q_i Π_i − μ𝟙 ⪰ 0`; then `w = q/μ`, `y = y_q/μ`.
fn exact_phase(
    s: &ProjectorSet,
    g: &Graph,
    w: &[f64],
    notes: &mut Vec<String>,
) -> Result<Option<Verified>, CertifyError> {
    let d = s.d();
    for den in LADDER {
        let q = w
            .iter()
            .map(|&x| rationalize(x.max(0.0), den))
            .collect::<Result<Vec<Rational>, _>>()?;
        let (y_q, _) = max_weight_independent_set(g, &q);
        let qf: Vec<f64> = q.iter().map(to_f64).collect();
        let (lambda, _) = min_eigenpair(s.weighted_sum_f64(&qf));
        let gap = lambda - to_f64(&y_q);
        if gap <= 0.0 {
            notes.push(format!("denominator {den}: no numeric gap ({gap:e})"));
            continue;
        }
        let m = s.weighted_sum_exact(&q).expect("exact mode");
        let mut shifts: Vec<Rational> = Vec::new();
        for target in [lambda, lambda - gap * 1e-3, lambda - gap / 2.0] {
            let mu = rationalize(target, den)?;
            if mu > y_q && !shifts.contains(&mu) {
                shifts.push(mu);
            }
        }
        for mu in shifts {
            let mut shifted = m.clone();
            for (k, row) in shifted.iter_mut().enumerate() {
                row[k] -= GaussianRational::from(mu.clone());
            }
            if !psd_check_exact(&shifted)?.is_psd() {
                continue;
            }
            let w: Vec<Rational> = q.iter().map(|x| x / &mu).collect();
            let y = &y_q / &mu;
            let mut residual = s.weighted_sum_exact(&w).expect("exact mode");
            for (k, row) in residual.iter_mut().enumerate().take(d) {
                row[k] -= GaussianRational::one();
            }
            let PsdVerdict::Psd(ldl) = psd_check_exact(&residual)? else {
                unreachable!("positive rescaling preserves semidefiniteness");
            };
            notes.push(format!(
                "verified with denominator {den}, shift {}",
                Pq(&mu)
            ));
            return Ok(Some((w, y, ldl)));
        }
        notes.push(format!("denominator {den}: no verified shift"));
    }
    Ok(None)
}

/// Re-checks a certificate from the vectors alone, in exact arithmetic.
pub fn verify_certificate(s: &ProjectorSet, cert: &SicCertificate) -> Result<(), CertifyError> {
    let reject = |m: String| Err(CertifyError::Rejected(m));
    let g = orthogonality_graph(s, 1e-9)?;
    if g != cert.graph {
        return reject("orthogonality graph differs".into());
    }
    match cert.status {
        SicStatus::Sic => {
            check_len(s.len(), cert.w.len())?;
            if cert.w.iter().any(|x| x.is_negative()) {
                return reject("negative weight".into());
            }
            if cert.y.is_negative() || cert.y >= Rational::one() {
                return reject(format!("y = {} is not in [0, 1)", Pq(&cert.y)));
            }
            for set in maximal_independent_sets(&g) {
                let total: Rational = set.iter().map(|v| &cert.w[v]).sum();
                if total > cert.y {
                    return reject(format!("independent set {set} has weight {}", Pq(&total)));
                }
            }
            let mut m = s
                .weighted_sum_exact(&cert.w)
                .ok_or_else(|| CertifyError::Rejected("SIC needs exact vectors".into()))?;
            for (k, row) in m.iter_mut().enumerate() {
                row[k] -= GaussianRational::one();
            }
            match psd_check_exact(&m)? {
                PsdVerdict::Psd(_) => Ok(()),
                PsdVerdict::NotPsd { value, .. } => reject(format!(
                    "weighted sum minus identity has direction of value {}",
                    Pq(&value)
                )),
            }
        }
        SicStatus::NotSic => {
            let Some(obs) = &cert.obstruction else {
                return reject("NOT_SIC without obstruction".into());
            };
            let Vectors::Exact(vs) = s.vectors() else {
                return reject("obstruction needs exact vectors".into());
            };
            check_len(s.d(), obs.state.len())?;
            if obs.state.iter().all(|z| z.is_zero()) {
                return reject("zero obstruction state".into());
            }
            if !g.is_independent(obs.independent_set) {
                return reject(format!("{} is not independent", obs.independent_set));
            }
            for (j, v) in vs.iter().enumerate() {
                if !obs.independent_set.contains(j) && !inner_exact(v, &obs.state).is_zero() {
                    return reject(format!("state overlaps projector {j}"));
                }
            }
            Ok(())
        }
        SicStatus::Undecided => Ok(()),
    }
}

impl SicCertificate {
    /// Plain-text transcript with exact rationals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "status {}", self.status);
        let _ = writeln!(out, "vertices {}", self.graph.n());
        let _ = writeln!(out, "edges {}", self.graph.edge_count());
        let _ = writeln!(out, "rounds {}", self.rounds);
        if self.status == SicStatus::Sic {
            let w: Vec<String> = self.w.iter().map(|x| Pq(x).to_string()).collect();
            let _ = writeln!(out, "w {}", w.join(" "));
            let _ = writeln!(out, "y {}", Pq(&self.y));
            let sum: Rational = self.w.iter().sum();
            let _ = writeln!(out, "sum_w {}", Pq(&sum));
        }
        if let Some(ldl) = &self.psd_witness {
            let order: Vec<String> = ldl.order.iter().map(|k| k.to_string()).collect();
            let diag: Vec<String> = ldl.d.iter().map(|x| Pq(x).to_string()).collect();
            let _ = writeln!(out, "ldl_order {}", order.join(" "));
            let _ = writeln!(out, "ldl_diag {}", diag.join(" "));
            for row in &ldl.l {
                let r: Vec<String> = row.iter().map(|z| PqComplex(z).to_string()).collect();
                let _ = writeln!(out, "ldl_row {}", r.join(" "));
            }
        }
        if let Some(obs) = &self.obstruction {
            let x: Vec<String> = obs.state.iter().map(|z| PqComplex(z).to_string()).collect();
            let _ = writeln!(out, "obstruction_set {}", obs.independent_set);
            let _ = writeln!(out, "obstruction_state {}", x.join(" "));
            let _ = writeln!(out, "obstruction_bound {}", Pq(&obs.bound()));
        }
        for note in &self.diagnostics {
            let _ = writeln!(out, "# {note}");
        }
        out
    }
}

/// Both conditions for a given `(w, y)`, exactly.
pub fn check_conditions(
    s: &ProjectorSet,
    w: &[Rational],
    y: &Rational,
) -> Result<bool, CertifyError> {
    let g = orthogonality_graph(s, 1e-9)?;
    check_len(s.len(), w.len())?;
    if w.iter().any(|x| x.is_negative()) {
        return Ok(false);
    }
    if noncontextual_bound(&g, w)? > *y {
        return Ok(false);
    }
    let mut m = s
        .weighted_sum_exact(w)
        .ok_or_else(|| CertifyError::Input("exact check needs exact vectors".into()))?;
    for (k, row) in m.iter_mut().enumerate() {
        row[k] -= GaussianRational::one();
    }
    Ok(psd_check_exact(&m)?.is_psd())
}
