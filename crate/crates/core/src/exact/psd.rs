//! Exact positive-semidefiniteness for Hermitian matrices over the Gaussian
//! rationals, via symmetric elimination with diagonal pivoting.

use num_traits::{Signed, Zero};

use super::{ExactError, GaussianRational, Rational};

/// Dense square matrix, row-major.
pub type ExactMatrix = Vec<Vec<GaussianRational>>;

/// `M[order][:, order] = L · diag(d) · L†` with `L` unit lower triangular.
#[derive(Debug, Clone, PartialEq)]
pub struct LdlFactorization {
    pub order: Vec<usize>,
    pub l: ExactMatrix,
    pub d: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PsdVerdict {
    Psd(LdlFactorization),
    /// `witness† M witness = value < 0`.
    NotPsd {
        witness: Vec<GaussianRational>,
        value: Rational,
    },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd(_))
    }
}

pub fn check_hermitian(m: &ExactMatrix) -> Result<(), ExactError> {
    let n = m.len();
    if let Some(r) = m.iter().position(|row| row.len() != n) {
        return Err(ExactError::NotSquare { row: r });
    }
    for i in 0..n {
        for j in i..n {
            if m[i][j] != m[j][i].conj() {
                return Err(ExactError::NotHermitian { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// `x† M x`, exactly.
pub fn quadratic_form(m: &ExactMatrix, x: &[GaussianRational]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (i, row) in m.iter().enumerate() {
        let mut s = GaussianRational::zero();
        for (a, xj) in row.iter().zip(x) {
            s += a * xj;
        }
        acc += x[i].conj() * s;
    }
    acc
}

pub fn psd_check_exact(m: &ExactMatrix) -> Result<PsdVerdict, ExactError> {
    check_hermitian(m)?;
    let n = m.len();
    let mut a = m.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut steps: Vec<Step> = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut d = Vec::with_capacity(n);
    let mut lcols: Vec<Vec<(usize, GaussianRational)>> = Vec::new();

    while !remaining.is_empty() {
        if let Some(&p) = remaining.iter().find(|&&p| a[p][p].re.is_negative()) {
            let mut z = vec![GaussianRational::zero(); n];
            z[p] = GaussianRational::from(Rational::from_integer(1.into()));
            return Ok(lift_witness(m, &steps, z));
        }
        // largest positive diagonal, lowest index on ties
        let mut pivot: Option<usize> = None;
        for &p in &remaining {
            if a[p][p].re.is_positive() && pivot.is_none_or(|q| a[p][p].re > a[q][q].re) {
                pivot = Some(p);
            }
        }
        let Some(p) = pivot else {
            // all remaining diagonals vanish: the block must be zero
            for &k in &remaining {
                for &l in &remaining {
                    if !a[k][l].is_zero() {
                        let mut z = vec![GaussianRational::zero(); n];
                        z[k] = GaussianRational::from(Rational::from_integer(1.into()));
                        z[l] = -a[k][l].conj();
                        return Ok(lift_witness(m, &steps, z));
                    }
                }
            }
            for &k in &remaining {
                order.push(k);
                d.push(Rational::zero());
                lcols.push(Vec::new());
            }
            break;
        };
        remaining.retain(|&r| r != p);
        let app = a[p][p].re.clone();
        let prow: Vec<(usize, GaussianRational)> =
            remaining.iter().map(|&s| (s, a[p][s].clone())).collect();
        let col: Vec<(usize, GaussianRational)> = remaining
            .iter()
            .map(|&r| (r, &a[r][p] / &GaussianRational::from(app.clone())))
            .collect();
        for (r, lr) in &col {
            if lr.is_zero() {
                continue;
            }
            for (s, aps) in &prow {
                let upd = lr * aps;
                a[*r][*s] -= upd;
            }
        }
        steps.push(Step {
            pivot: p,
            value: app.clone(),
            row: prow,
        });
        order.push(p);
        d.push(app);
        lcols.push(col);
    }

    // Assemble L in pivot order.
    let pos: Vec<usize> = {
        let mut pos = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        pos
    };
    let mut l = vec![vec![GaussianRational::zero(); n]; n];
    for k in 0..n {
        l[k][k] = GaussianRational::from(Rational::from_integer(1.into()));
        for (r, lr) in &lcols[k] {
            l[pos[*r]][k] = lr.clone();
        }
    }
    Ok(PsdVerdict::Psd(LdlFactorization { order, l, d }))
}

/// One elimination: the pivot, its diagonal value, and its row restricted to
/// the indices still active at that point.
struct Step {
    pivot: usize,
    value: Rational,
    row: Vec<(usize, GaussianRational)>,
}

/// Extends a witness on the trailing Schur complement back through the
/// recorded elimination steps: `x_p = -(Σ_s A_ps z_s) / A_pp` keeps
/// `x† M x` equal to the Schur-complement value.
fn lift_witness(m: &ExactMatrix, steps: &[Step], mut z: Vec<GaussianRational>) -> PsdVerdict {
    for step in steps.iter().rev() {
        let mut s = GaussianRational::zero();
        for (j, apj) in &step.row {
            s += apj * &z[*j];
        }
        z[step.pivot] = -(s / GaussianRational::from(step.value.clone()));
    }
    let value = quadratic_form(m, &z).re;
    debug_assert!(value.is_negative());
    PsdVerdict::NotPsd { witness: z, value }
}

/// Same verdict computed on the real symmetric embedding `[[Re, -Im], [Im, Re]]`.
pub fn psd_check_real_embedding(m: &ExactMatrix) -> Result<bool, ExactError> {
    check_hermitian(m)?;
    let n = m.len();
    let mut e = vec![vec![GaussianRational::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let (re, im) = (&m[i][j].re, &m[i][j].im);
            e[i][j] = GaussianRational::from(re.clone());
            e[i][j + n] = GaussianRational::from(-im.clone());
            e[i + n][j] = GaussianRational::from(im.clone());
            e[i + n][j + n] = GaussianRational::from(re.clone());
        }
    }
    Ok(psd_check_exact(&e)?.is_psd())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gauss, int, rat};
    use nalgebra::DMatrix;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn real(x: i64) -> GaussianRational {
        GaussianRational::from(int(x))
    }

    fn diag(v: &[i64]) -> ExactMatrix {
        let n = v.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| real(if i == j { v[i] } else { 0 }))
                    .collect()
            })
            .collect()
    }

    fn reconstruct(f: &LdlFactorization) -> ExactMatrix {
        let n = f.d.len();
        let mut out = vec![vec![GaussianRational::zero(); n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for k in 0..n {
                    *cell += &f.l[i][k] * GaussianRational::from(f.d[k].clone()) * f.l[j][k].conj();
                }
            }
        }
        out
    }

    fn assert_valid(m: &ExactMatrix, verdict: &PsdVerdict) {
        match verdict {
            PsdVerdict::Psd(f) => {
                assert!(f.d.iter().all(|x| !x.is_negative()));
                let rebuilt = reconstruct(f);
                for i in 0..m.len() {
                    for j in 0..m.len() {
                        assert_eq!(rebuilt[i][j], m[f.order[i]][f.order[j]]);
                    }
                }
            }
            PsdVerdict::NotPsd { witness, value } => {
                assert!(value.is_negative());
                assert_eq!(quadratic_form(m, witness).re, *value);
            }
        }
    }

    fn random_gauss(rng: &mut ChaCha8Rng, range: i64) -> GaussianRational {
        gauss(
            rat(rng.random_range(-range..=range), rng.random_range(1..4)),
            rat(rng.random_range(-range..=range), rng.random_range(1..4)),
        )
    }

    /// `A† A` for a random `k × n` matrix `A`.
    fn gram(rows: &[Vec<GaussianRational>], n: usize) -> ExactMatrix {
        let mut m = vec![vec![GaussianRational::zero(); n]; n];
        for row in rows {
            for i in 0..n {
                for j in 0..n {
                    m[i][j] += row[i].conj() * &row[j];
                }
            }
        }
        m
    }

    #[test]
    fn identity_and_indefinite_diagonal() {
        let id = diag(&[1, 1, 1]);
        let v = psd_check_exact(&id).unwrap();
        assert!(v.is_psd());
        assert_valid(&id, &v);

        let m = diag(&[1, -1]);
        match psd_check_exact(&m).unwrap() {
            PsdVerdict::NotPsd { witness, value } => {
                assert_eq!(witness, vec![real(0), real(1)]);
                assert_eq!(value, int(-1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_pivot_with_nonzero_row_is_rejected() {
        // [[0, 1], [1, 0]] has eigenvalues ±1 but zero diagonal
        let m = vec![vec![real(0), real(1)], vec![real(1), real(0)]];
        let v = psd_check_exact(&m).unwrap();
        assert!(!v.is_psd());
        assert_valid(&m, &v);

        // [[1, 1, 0], [1, 1, 0], [0, 0, 0]] is PSD with two zero pivots
        let m = vec![
            vec![real(1), real(1), real(0)],
            vec![real(1), real(1), real(0)],
            vec![real(0), real(0), real(0)],
        ];
        let v = psd_check_exact(&m).unwrap();
        assert!(v.is_psd());
        assert_valid(&m, &v);
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = vec![vec![real(1), real(2)], vec![real(3), real(1)]];
        assert_eq!(
            psd_check_exact(&m),
            Err(ExactError::NotHermitian { row: 0, col: 1 })
        );
        let m = vec![vec![gauss(int(0), int(1))]];
        assert!(psd_check_exact(&m).is_err());
        let m = vec![vec![real(1), real(0)]];
        assert!(matches!(
            psd_check_exact(&m),
            Err(ExactError::NotSquare { .. })
        ));
    }

    #[test]
    fn gram_matrices_are_psd_and_broken_ones_are_not() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for round in 0..40 {
            let n: usize = 1 + round % 6;
            // direction to kill
            let x: Vec<GaussianRational> = (0..n).map(|_| random_gauss(&mut rng, 3)).collect();
            let xx = x
                .iter()
                .fold(GaussianRational::zero(), |s, v| s + v.conj() * v);
            if xx.is_zero() {
                continue;
            }
            // rows orthogonal to x, so x spans part of the kernel of A†A
            let rows: Vec<Vec<GaussianRational>> = (0..n.saturating_sub(1))
                .map(|_| {
                    let r: Vec<GaussianRational> =
                        (0..n).map(|_| random_gauss(&mut rng, 4)).collect();
                    let rx = r
                        .iter()
                        .zip(&x)
                        .fold(GaussianRational::zero(), |s, (a, b)| s + a * b);
                    (0..n).map(|k| &r[k] * &xx - &rx * x[k].conj()).collect()
                })
                .collect();
            let m = gram(&rows, n);
            let v = psd_check_exact(&m).unwrap();
            assert!(v.is_psd());
            assert_valid(&m, &v);
            assert!(psd_check_real_embedding(&m).unwrap());

            let eps = GaussianRational::from(rat(1, 1000));
            let broken: ExactMatrix = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| &m[i][j] - &eps * &x[i] * x[j].conj())
                        .collect()
                })
                .collect();
            let v = psd_check_exact(&broken).unwrap();
            assert!(!v.is_psd(), "round {round}");
            assert_valid(&broken, &v);
            assert!(!psd_check_real_embedding(&broken).unwrap());
        }
    }

    #[test]
    fn agrees_with_float_eigenvalues_on_random_hermitian_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 1000 {
            let n = rng.random_range(1..=8);
            let mut m = vec![vec![GaussianRational::zero(); n]; n];
            for i in 0..n {
                m[i][i] =
                    GaussianRational::from(rat(rng.random_range(-2..12), rng.random_range(1..4)));
                for j in i + 1..n {
                    let z = random_gauss(&mut rng, 2);
                    m[j][i] = z.conj();
                    m[i][j] = z;
                }
            }
            let f = DMatrix::from_fn(n, n, |i, j| {
                Complex64::new(
                    crate::exact::to_f64(&m[i][j].re),
                    crate::exact::to_f64(&m[i][j].im),
                )
            });
            let eig = f.symmetric_eigenvalues();
            let lo = eig.iter().cloned().fold(f64::INFINITY, f64::min);
            if lo.abs() < 1e-6 {
                continue;
            }
            let v = psd_check_exact(&m).unwrap();
            assert_eq!(v.is_psd(), lo > 0.0);
            assert_eq!(psd_check_real_embedding(&m).unwrap(), lo > 0.0);
            assert_valid(&m, &v);
            checked += 1;
        }
    }
}
