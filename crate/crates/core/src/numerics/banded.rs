//! Banded LU with partial pivoting and shifted inverse iteration.

use crate::error::{Error, Result};

/// Square matrix with `kl` sub- and `ku` super-diagonals. Storage reserves
/// `kl` extra super-diagonals for pivoting fill-in.
#[derive(Debug, Clone)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if j + self.kl < i || j > i + self.kl + self.ku {
            None
        } else {
            Some(i * self.width + (j + self.kl - i))
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.data[s])
    }

    /// Stores an entry inside the declared band.
    pub fn set(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        if i >= self.n || j >= self.n || j + self.kl < i || j > i + self.ku {
            return Err(Error::InvalidArgument(format!(
                "entry ({i}, {j}) outside band kl={} ku={}",
                self.kl, self.ku
            )));
        }
        let s = self.slot(i, j).expect("inside band");
        self.data[s] = value;
        Ok(())
    }

    pub fn add_to_diagonal(&mut self, shift: f64) {
        for i in 0..self.n {
            let s = self.slot(i, i).expect("diagonal");
            self.data[s] += shift;
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn factor(&self) -> Result<BandedLu> {
        let n = self.n;
        let mut a = self.clone();
        let mut pivots = vec![0usize; n];
        let threshold = super::lu::PIVOT_THRESHOLD * self.max_abs();
        let reach = self.kl + self.ku;
        for k in 0..n {
            let last_row = (k + self.kl).min(n - 1);
            let mut p = k;
            let mut best = a.get(k, k).abs();
            for i in k + 1..=last_row {
                let v = a.get(i, k).abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            pivots[k] = p;
            let last_col = (k + reach).min(n - 1);
            if p != k {
                for j in k..=last_col {
                    let sk = a.slot(k, j).expect("band");
                    let sp = a.slot(p, j).expect("band");
                    a.data.swap(sk, sp);
                }
            }
            let pivot = a.get(k, k);
            if !(pivot.abs() > threshold) {
                return Err(Error::SingularMatrix {
                    column: k,
                    pivot,
                    threshold,
                });
            }
            for i in k + 1..=last_row {
                let si = a.slot(i, k).expect("band");
                let f = a.data[si] / pivot;
                a.data[si] = f;
                if f == 0.0 {
                    continue;
                }
                for j in k + 1..=last_col {
                    let u = a.get(k, j);
                    let s = a.slot(i, j).expect("band");
                    a.data[s] -= f * u;
                }
            }
        }
        Ok(BandedLu { a, pivots })
    }
}

#[derive(Debug, Clone)]
pub struct BandedLu {
    a: BandedMatrix,
    pivots: Vec<usize>,
}

impl BandedLu {
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.a.n;
        let kl = self.a.kl;
        let reach = self.a.kl + self.a.ku;
        let mut b = rhs.to_vec();
        for k in 0..n {
            b.swap(k, self.pivots[k]);
            let bk = b[k];
            for i in k + 1..=(k + kl).min(n - 1) {
                b[i] -= self.a.get(i, k) * bk;
            }
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in i + 1..=(i + reach).min(n - 1) {
                s -= self.a.get(i, j) * b[j];
            }
            b[i] = s / self.a.get(i, i);
        }
        b
    }
}

/// Refines a real eigenvalue of `m` near `shift` by inverse iteration with
/// shift updates. Returns the eigenvalue and a unit eigenvector.
///
/// Stops once the shift update falls below `tol·|μ|`. On very fine meshes
/// rounding can keep the update above that floor, so after `max_iter`
/// sweeps the best iterate is accepted if its residual is below
/// `1e-8·max|m|`.
pub fn inverse_iteration(m: &BandedMatrix, shift: f64, tol: f64, max_iter: usize) -> Result<(f64, Vec<f64>)> {
    let n = m.len();
    let scale = m.max_abs().max(1.0);
    let residual = |mu: f64, x: &[f64]| {
        let ax = m.matvec(x);
        ax.iter().zip(x).map(|(a, b)| (a - mu * b).powi(2)).sum::<f64>().sqrt()
    };
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i % 7) as f64)).collect();
    normalize(&mut x);
    let mut mu = shift;
    let mut best: Option<(f64, f64, Vec<f64>)> = None;
    for _ in 0..max_iter {
        let mut shifted = m.clone();
        shifted.add_to_diagonal(-mu);
        let lu = match shifted.factor() {
            Ok(lu) => lu,
            // landed on the eigenvalue to working precision
            Err(Error::SingularMatrix { .. }) => return Ok((mu, x)),
            Err(e) => return Err(e),
        };
        let y = lu.solve(&x);
        let theta: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        if theta == 0.0 || !theta.is_finite() {
            break;
        }
        let next = mu + 1.0 / theta;
        x = y;
        normalize(&mut x);
        let step = (next - mu).abs();
        mu = next;
        let res = residual(mu, &x);
        if step <= tol * mu.abs().max(1.0) && res <= 1e-6 * scale {
            return Ok((mu, x));
        }
        if best.as_ref().is_none_or(|b| res < b.0) {
            best = Some((res, mu, x.clone()));
        }
    }
    match best {
        Some((res, mu, x)) if res <= 1e-8 * scale => Ok((mu, x)),
        _ => Err(Error::Convergence {
            lo: 0,
            hi: n,
            iterations: max_iter,
        }),
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}
