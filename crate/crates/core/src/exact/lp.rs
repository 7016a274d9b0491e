//! Dictionary-form simplex method for
//!
//! ```text
//! maximize  c·x   subject to  A x <= b,  x >= 0
//! ```
//!
//! generic over the scalar field. Over [`Rational`] every pivot is exact and
//! Bland's rule guarantees termination; over `f64` the same code runs with an
//! absolute tolerance. Rows with negative right-hand side go through a phase
//! with one auxiliary variable first.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational};

/// Scalars the simplex can pivot over.
pub trait LpScalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_zero_ish(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

impl LpScalar for Rational {
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

/// Tolerance used by the floating-point instantiation.
pub const F64_TOLERANCE: f64 = 1e-11;

impl LpScalar for f64 {
    fn is_pos(&self) -> bool {
        *self > F64_TOLERANCE
    }
    fn is_neg(&self) -> bool {
        *self < -F64_TOLERANCE
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub rows: Vec<Vec<T>>,
    pub rhs: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

/// Solver output. `solution` and `dual` are empty unless `status` is optimal.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub value: T,
    pub solution: Vec<T>,
    /// One multiplier per row: `y >= 0`, `Aᵀy >= c`, `b·y = value`.
    pub dual: Vec<T>,
    pub pivots: usize,
}

impl<T: LpScalar> LinearProgram<T> {
    pub fn new(objective: Vec<T>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, row: Vec<T>, rhs: T) {
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    fn validate(&self) -> Result<(), ExactError> {
        if self.rows.len() != self.rhs.len() {
            return Err(ExactError::MalformedLp(format!(
                "{} rows but {} right-hand sides",
                self.rows.len(),
                self.rhs.len()
            )));
        }
        let n = self.num_vars();
        if let Some((k, r)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(ExactError::MalformedLp(format!(
                "row {k} has {} coefficients, expected {n}",
                r.len()
            )));
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<LpSolution<T>, ExactError> {
        self.validate()?;
        Ok(Dictionary::solve(self))
    }

    /// Checks primal feasibility, dual feasibility and equal objectives by
    /// substitution. Meaningful for exact scalars.
    pub fn check_certificate(&self, sol: &LpSolution<T>) -> Result<(), ExactError> {
        let fail = |m: String| Err(ExactError::Certificate(m));
        if sol.status != LpStatus::Optimal {
            return fail(format!("status {:?}", sol.status));
        }
        let n = self.num_vars();
        if sol.solution.len() != n || sol.dual.len() != self.rows.len() {
            return fail("dimension mismatch".into());
        }
        if sol.solution.iter().any(|x| x.is_neg()) {
            return fail("negative primal variable".into());
        }
        for (k, row) in self.rows.iter().enumerate() {
            if (dot(row, &sol.solution) - self.rhs[k].clone()).is_pos() {
                return fail(format!("row {k} violated"));
            }
        }
        if sol.dual.iter().any(|y| y.is_neg()) {
            return fail("negative dual multiplier".into());
        }
        for j in 0..n {
            let col = self
                .rows
                .iter()
                .zip(&sol.dual)
                .fold(T::zero(), |s, (r, y)| s + r[j].clone() * y.clone());
            if (col - self.objective[j].clone()).is_neg() {
                return fail(format!("dual constraint {j} violated"));
            }
        }
        let primal = dot(&self.objective, &sol.solution);
        let dual = dot(&self.rhs, &sol.dual);
        if !(primal.clone() - sol.value.clone()).is_zero_ish()
            || !(dual - sol.value.clone()).is_zero_ish()
        {
            return fail("objective values differ".into());
        }
        Ok(())
    }
}

/// Exact solve over rationals.
pub fn lp_solve_exact(lp: &LinearProgram<Rational>) -> Result<LpSolution<Rational>, ExactError> {
    lp.solve()
}

fn dot<T: LpScalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |s, (x, y)| s + x.clone() * y.clone())
}

/// `basic[i] = b[i] - Σ_j a[i][j] · nonbasic[j]`, `z = z0 + Σ_j c[j] · nonbasic[j]`.
/// Variable labels: `0..n` structural, `n..n+m` slacks, `n+m` auxiliary.
struct Dictionary<T> {
    a: Vec<Vec<T>>,
    b: Vec<T>,
    c: Vec<T>,
    z: T,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl<T: LpScalar> Dictionary<T> {
    fn solve(lp: &LinearProgram<T>) -> LpSolution<T> {
        let n = lp.num_vars();
        let m = lp.rows.len();
        let mut d = Dictionary {
            a: lp.rows.clone(),
            b: lp.rhs.clone(),
            c: lp.objective.clone(),
            z: T::zero(),
            basic: (n..n + m).collect(),
            nonbasic: (0..n).collect(),
            pivots: 0,
        };
        let empty = |status| LpSolution {
            status,
            value: T::zero(),
            solution: Vec::new(),
            dual: Vec::new(),
            pivots: 0,
        };

        if d.b.iter().any(|x| x.is_neg()) && !d.phase_one(n, m, &lp.objective) {
            return empty(LpStatus::Infeasible);
        }
        match d.run() {
            Outcome::Unbounded => LpSolution {
                pivots: d.pivots,
                ..empty(LpStatus::Unbounded)
            },
            Outcome::Optimal => {
                let mut x = vec![T::zero(); n];
                for (i, &lab) in d.basic.iter().enumerate() {
                    if lab < n {
                        x[lab] = d.b[i].clone();
                    }
                }
                let mut y = vec![T::zero(); m];
                for (j, &lab) in d.nonbasic.iter().enumerate() {
                    if (n..n + m).contains(&lab) {
                        y[lab - n] = -d.c[j].clone();
                    }
                }
                LpSolution {
                    status: LpStatus::Optimal,
                    value: d.z.clone(),
                    solution: x,
                    dual: y,
                    pivots: d.pivots,
                }
            }
        }
    }

    /// Drives the dictionary to a feasible basis; false when none exists.
    fn phase_one(&mut self, n: usize, m: usize, objective: &[T]) -> bool {
        let aux = n + m;
        for row in &mut self.a {
            row.push(-T::one());
        }
        self.nonbasic.push(aux);
        let k = self.nonbasic.len();
        self.c = vec![T::zero(); k];
        self.c[k - 1] = -T::one();
        self.z = T::zero();

        let mut leave = 0;
        for i in 1..self.b.len() {
            if self.b[i] < self.b[leave] {
                leave = i;
            }
        }
        self.pivot(leave, k - 1);
        match self.run() {
            Outcome::Unbounded => unreachable!("auxiliary objective is bounded by zero"),
            Outcome::Optimal => {}
        }
        if self.z.is_neg() {
            return false;
        }
        if let Some(i) = self.basic.iter().position(|&l| l == aux) {
            let j = (0..self.nonbasic.len())
                .filter(|&j| !self.a[i][j].is_zero_ish())
                .min_by_key(|&j| self.nonbasic[j]);
            match j {
                Some(j) => self.pivot(i, j),
                // the row reads aux = 0 with no other dependence
                None => {
                    self.a.remove(i);
                    self.b.remove(i);
                    self.basic.remove(i);
                }
            }
        }
        let col = self
            .nonbasic
            .iter()
            .position(|&l| l == aux)
            .expect("auxiliary variable is nonbasic");
        for row in &mut self.a {
            row.remove(col);
        }
        self.nonbasic.remove(col);

        // Re-express the true objective in terms of the current nonbasics.
        let cost = |lab: usize| {
            if lab < n {
                objective[lab].clone()
            } else {
                T::zero()
            }
        };
        self.z = T::zero();
        self.c = self.nonbasic.iter().map(|&l| cost(l)).collect();
        for (i, &lab) in self.basic.iter().enumerate() {
            let cb = cost(lab);
            if cb.is_zero_ish() {
                continue;
            }
            self.z = self.z.clone() + cb.clone() * self.b[i].clone();
            for j in 0..self.c.len() {
                self.c[j] = self.c[j].clone() - cb.clone() * self.a[i][j].clone();
            }
        }
        true
    }

    /// Bland's rule: smallest entering label, then smallest leaving label on ratio ties.
    fn run(&mut self) -> Outcome {
        loop {
            let entering = (0..self.nonbasic.len())
                .filter(|&j| self.c[j].is_pos())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(s) = entering else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.b.len() {
                if !self.a[i][s].is_pos() {
                    continue;
                }
                let ratio = self.b[i].clone() / self.a[i][s].clone();
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        let diff = ratio.clone() - best.clone();
                        diff.is_neg() || (diff.is_zero_ish() && self.basic[i] < self.basic[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Outcome::Unbounded;
            };
            self.pivot(r, s);
        }
    }

    fn pivot(&mut self, r: usize, s: usize) {
        self.pivots += 1;
        let k = self.nonbasic.len();
        let inv = T::one() / self.a[r][s].clone();
        let br = self.b[r].clone() * inv.clone();
        let mut row_r: Vec<T> = self.a[r].iter().map(|x| x.clone() * inv.clone()).collect();
        row_r[s] = inv.clone();

        for i in 0..self.b.len() {
            if i == r {
                continue;
            }
            let f = self.a[i][s].clone();
            if f.is_zero() {
                continue;
            }
            self.b[i] = self.b[i].clone() - f.clone() * br.clone();
            for j in 0..k {
                if j == s {
                    self.a[i][j] = -(f.clone() * inv.clone());
                } else if !row_r[j].is_zero() {
                    self.a[i][j] = self.a[i][j].clone() - f.clone() * row_r[j].clone();
                }
            }
        }
        let cs = self.c[s].clone();
        if !cs.is_zero() {
            self.z = self.z.clone() + cs.clone() * br.clone();
            for j in 0..k {
                if j == s {
                    self.c[j] = -(cs.clone() * inv.clone());
                } else if !row_r[j].is_zero() {
                    self.c[j] = self.c[j].clone() - cs.clone() * row_r[j].clone();
                }
            }
        }
        self.a[r] = row_r;
        self.b[r] = br;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[s]);
    }
}
