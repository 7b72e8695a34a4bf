//! Eigenvalues of dense nonsymmetric real matrices.
//!
//! Pipeline: diagonal balancing, Householder reduction to upper Hessenberg
//! form, then Francis double-shift QR restricted to the active window. Only
//! eigenvalues are produced; Schur vectors are not accumulated.

use num_complex::Complex64;

use super::RealMatrix;
use crate::error::{Error, Result};

/// Sweep budget per matrix row.
pub const SWEEPS_PER_ROW: usize = 30;

const RADIX: f64 = 2.0;

/// All eigenvalues of a square real matrix. Complex eigenvalues come out as
/// adjacent conjugate pairs, positive imaginary part first.
pub fn schur_eigenvalues(m: &RealMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::InvalidArgument(format!(
            "eigenvalues of non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let mut a = m.clone();
    balance(&mut a);
    reduce_to_hessenberg(&mut a);
    hessenberg_qr(&mut a)
}

/// Parlett–Reinsch balancing by powers of the radix (no permutations).
pub fn balance(a: &mut RealMatrix) {
    let n = a.rows();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for v in a.row_mut(i) {
                    *v *= inv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// In-place orthogonal similarity reduction to upper Hessenberg form.
pub fn reduce_to_hessenberg(a: &mut RealMatrix) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let mut u = vec![0.0; n];
    let mut w = vec![0.0; n];
    for m in 1..n - 1 {
        let scale: f64 = (m..n).map(|i| a[(i, m - 1)].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut h = 0.0;
        for i in m..n {
            u[i] = a[(i, m - 1)] / scale;
            h += u[i] * u[i];
        }
        let g = -h.sqrt().copysign(u[m]);
        h -= u[m] * g;
        u[m] -= g;

        // left: rows m..n of A <- (I - u u^T / h) A, columns m-1..n
        w[m - 1..n].iter_mut().for_each(|x| *x = 0.0);
        for i in m..n {
            let ui = u[i];
            if ui == 0.0 {
                continue;
            }
            let row = &a.row(i)[m - 1..n];
            for (wj, &aij) in w[m - 1..n].iter_mut().zip(row) {
                *wj += ui * aij;
            }
        }
        for i in m..n {
            let f = u[i] / h;
            if f == 0.0 {
                continue;
            }
            let row = &mut a.row_mut(i)[m - 1..n];
            for (aij, &wj) in row.iter_mut().zip(&w[m - 1..n]) {
                *aij -= f * wj;
            }
        }

        // right: A <- A (I - u u^T / h), columns m..n
        for i in 0..n {
            let row = &mut a.row_mut(i)[m..n];
            let dot: f64 = row.iter().zip(&u[m..n]).map(|(x, y)| x * y).sum();
            let f = dot / h;
            if f == 0.0 {
                continue;
            }
            for (aij, &uj) in row.iter_mut().zip(&u[m..n]) {
                *aij -= f * uj;
            }
        }

        a[(m, m - 1)] = scale * g;
        for i in m + 1..n {
            a[(i, m - 1)] = 0.0;
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (destroyed).
pub fn hessenberg_qr(a: &mut RealMatrix) -> Result<Vec<Complex64>> {
    let n = a.rows();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let eps = f64::EPSILON;
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    let budget = SWEEPS_PER_ROW * n;
    let mut total = 0usize;
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0usize;
        loop {
            let hi = nn as usize;
            // look for a small subdiagonal element
            let mut l = hi;
            while l > 0 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() <= eps * s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(hi, hi)];
            if l == hi {
                eig[hi] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let mut y = a[(hi - 1, hi - 1)];
            let mut w = a[(hi, hi - 1)] * a[(hi - 1, hi)];
            if l + 1 == hi {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    let mut lo = x + z;
                    let hi_val = x + z;
                    if z != 0.0 {
                        lo = x - w / z;
                    }
                    eig[hi - 1] = Complex64::new(hi_val, 0.0);
                    eig[hi] = Complex64::new(lo, 0.0);
                } else {
                    eig[hi - 1] = Complex64::new(x + p, z);
                    eig[hi] = Complex64::new(x + p, -z);
                }
                nn -= 2;
                break;
            }
            if total >= budget {
                return Err(Error::Convergence {
                    lo: l,
                    hi,
                    iterations: total,
                });
            }
            if its > 0 && its.is_multiple_of(10) {
                // exceptional shift
                t += x;
                for i in 0..=hi {
                    a[(i, i)] -= x;
                }
                let s = a[(hi, hi - 1)].abs() + a[(hi - 1, hi - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total += 1;

            // find two consecutive small subdiagonal elements
            let mut m = hi - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - rr - ss;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m..hi - 1 {
                a[(i + 2, i)] = 0.0;
                if i != m {
                    a[(i + 2, i - 1)] = 0.0;
                }
            }

            // double QR step on rows l..=hi, columns m..=hi
            let mut xk = 0.0;
            for k in m..hi {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k + 1 != hi { a[(k + 2, k - 1)] } else { 0.0 };
                    xk = p.abs() + q.abs() + r.abs();
                    if xk != 0.0 {
                        p /= xk;
                        q /= xk;
                        r /= xk;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * xk;
                }
                p += s;
                let xs = p / s;
                let ys = q / s;
                let zs = r / s;
                q /= p;
                r /= p;
                for j in k..=hi {
                    let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                    if k + 1 != hi {
                        pp += r * a[(k + 2, j)];
                        a[(k + 2, j)] -= pp * zs;
                    }
                    a[(k + 1, j)] -= pp * ys;
                    a[(k, j)] -= pp * xs;
                }
                let mmin = if hi < k + 3 { hi } else { k + 3 };
                for i in l..=mmin {
                    let mut pp = xs * a[(i, k)] + ys * a[(i, k + 1)];
                    if k + 1 != hi {
                        pp += zs * a[(i, k + 2)];
                        a[(i, k + 2)] -= pp * r;
                    }
                    a[(i, k + 1)] -= pp * q;
                    a[(i, k)] -= pp;
                }
            }
            if l + 1 >= hi {
                break;
            }
        }
    }
    Ok(eig)
}

/// Sorts eigenvalues by descending real part, then descending imaginary part.
pub fn sort_by_real_desc(values: &mut [Complex64]) {
    values.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.im.partial_cmp(&a.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}
