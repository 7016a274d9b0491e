//! Exact arithmetic: rationals, a simplex solver with duality certificates and
//! an exact PSD test.

mod linalg;
mod lp;
mod psd;
mod rational;

pub use linalg::{nullspace, rank};
pub use lp::{lp_solve_exact, LinearProgram, LpScalar, LpSolution, LpStatus, F64_TOLERANCE};
pub use psd::{
    check_hermitian, psd_check_exact, psd_check_real_embedding, quadratic_form, ExactMatrix,
    LdlFactorization, PsdVerdict,
};
pub use rational::{
    gauss, int, limit_denominator, parse_rational, rat, rationalize, to_f64, GaussianRational, Pq,
    PqComplex, Rational,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExactError {
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("malformed linear program: {0}")]
    MalformedLp(String),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("matrix is not square (row {row})")]
    NotSquare { row: usize },
    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
}
