use super::RealMatrix;
use crate::error::{Error, Result};

/// Relative pivot threshold: a pivot below `PIVOT_THRESHOLD * max|M|` marks the
/// matrix as singular for solves.
pub const PIVOT_THRESHOLD: f64 = 1e-14;

/// LU factorization with partial (row) pivoting, `P M = L U`.
#[derive(Debug, Clone)]
pub struct LuDecomposition {
    lu: RealMatrix,
    perm: Vec<usize>,
    sign: f64,
    scale: f64,
}

impl LuDecomposition {
    pub fn factor(m: &RealMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidArgument(format!(
                "LU of non-square {}x{} matrix",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let (p, _) = (k..n).fold((k, -1.0), |(bi, bv), i| {
                let v = lu[(i, k)].abs();
                if v > bv {
                    (i, v)
                } else {
                    (bi, bv)
                }
            });
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor != 0.0 {
                    for j in k + 1..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] -= factor * u;
                    }
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            sign,
            scale: m.max_abs(),
        })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Product of the pivots with the permutation sign.
    ///
    /// Never fails: near-singular matrices give a small determinant, which is
    /// exactly what a root search on `det M(λ)` needs.
    pub fn determinant(&self) -> f64 {
        (0..self.len()).fold(self.sign, |d, i| d * self.lu[(i, i)])
    }

    /// Checks every pivot against the scale-invariant singularity threshold.
    pub fn check_nonsingular(&self) -> Result<()> {
        let threshold = PIVOT_THRESHOLD * self.scale;
        for i in 0..self.len() {
            let pivot = self.lu[(i, i)];
            if !(pivot.abs() > threshold) {
                return Err(Error::SingularMatrix {
                    column: i,
                    pivot,
                    threshold,
                });
            }
        }
        Ok(())
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        if rhs.len() != n {
            return Err(Error::InvalidArgument(format!(
                "right-hand side of length {} for {n} unknowns",
                rhs.len()
            )));
        }
        self.check_nonsingular()?;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        Ok(x)
    }

    /// Solves for every column of `rhs`.
    pub fn solve_matrix(&self, rhs: &RealMatrix) -> Result<RealMatrix> {
        let mut out = RealMatrix::zeros(rhs.rows(), rhs.cols());
        for j in 0..rhs.cols() {
            let col: Vec<f64> = (0..rhs.rows()).map(|i| rhs[(i, j)]).collect();
            let x = self.solve(&col)?;
            for (i, v) in x.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }
}

/// Solves `M x = rhs` by partial-pivot LU.
pub fn solve_dense(m: &RealMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    LuDecomposition::factor(m)?.solve(rhs)
}

pub fn determinant(m: &RealMatrix) -> Result<f64> {
    Ok(LuDecomposition::factor(m)?.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let x = solve_dense(&RealMatrix::identity(3), &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(x, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn two_by_two_determinant() {
        let m = RealMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert!((determinant(&m).unwrap() + 2.0).abs() < 1e-14);
        let d = RealMatrix::from_diagonal(&[2.0, 5.0]);
        assert!((determinant(&d).unwrap() - 10.0).abs() < 1e-14);
    }

    #[test]
    fn singular_solve_is_reported() {
        let m = RealMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        let err = solve_dense(&m, &[1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::SingularMatrix { .. }));
        assert_eq!(determinant(&m).unwrap(), 0.0);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let m = RealMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let x = solve_dense(&m, &[2.0, 3.0]).unwrap();
        assert_eq!(x, vec![3.0, 2.0]);
        assert!((determinant(&m).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn solve_residual_small_on_dense_system() {
        let m = RealMatrix::from_fn(8, 8, |i, j| {
            1.0 / (1.0 + i as f64 + j as f64) + if i == j { 2.0 } else { 0.0 }
        });
        let b: Vec<f64> = (0..8).map(|i| (i as f64).sin()).collect();
        let x = solve_dense(&m, &b).unwrap();
        let r = m.matvec(&x).unwrap();
        for (ri, bi) in r.iter().zip(&b) {
            assert!((ri - bi).abs() < 1e-13);
        }
    }
}
