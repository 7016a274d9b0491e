use num_traits::{One, Zero};

use super::GaussianRational;

/// Basis of `{x : rows · x = 0}` over the Gaussian rationals, by reduction to
/// row echelon form. Each basis vector has a 1 in its free coordinate.
pub fn nullspace(rows: &[Vec<GaussianRational>], cols: usize) -> Vec<Vec<GaussianRational>> {
    let mut a: Vec<Vec<GaussianRational>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = GaussianRational::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![GaussianRational::zero(); cols];
            x[f] = GaussianRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[row][f].clone();
            }
            x
        })
        .collect()
}

/// Rank of the row set.
pub fn rank(rows: &[Vec<GaussianRational>], cols: usize) -> usize {
    cols - nullspace(rows, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gauss, int};

    fn g(x: i64) -> GaussianRational {
        GaussianRational::from(int(x))
    }

    #[test]
    fn kernel_of_two_basis_rows() {
        let rows = vec![vec![g(1), g(0), g(0)], vec![g(0), g(1), g(0)]];
        assert_eq!(nullspace(&rows, 3), vec![vec![g(0), g(0), g(1)]]);
        assert_eq!(rank(&rows, 3), 2);
    }

    #[test]
    fn kernel_vectors_annihilate_rows() {
        let rows = vec![
            vec![g(1), gauss(int(2), int(-1)), g(3), g(0)],
            vec![g(2), gauss(int(4), int(-2)), g(6), g(0)],
            vec![g(0), g(1), gauss(int(0), int(1)), g(1)],
        ];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for x in ns {
            for r in &rows {
                let s = r
                    .iter()
                    .zip(&x)
                    .fold(GaussianRational::zero(), |s, (a, b)| s + a * b);
                assert!(s.is_zero());
            }
        }
        assert!(nullspace(&[], 2).len() == 2);
    }
}
