use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;

/// Brent's bracketing root finder.
///
/// Requires a sign change on `[a, b]`. Returns once the bracket has shrunk to
/// `tol` (plus a few ulps of the root) or `f` hits zero exactly.
pub fn brent_root(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.signum() * fb.signum() < 0.0) {
        return Err(Error::Bracket { a, b, fa, fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic / secant step
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
    }
    Ok(b)
}

/// Scans `[lo, hi]` with `steps` equal sub-intervals and refines every sign
/// change with [`brent_root`].
pub fn bracketed_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize, tol: f64) -> Result<Vec<f64>> {
    let steps = steps.max(1);
    let h = (hi - lo) / steps as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=steps {
        let x1 = if i == steps { hi } else { lo + h * i as f64 };
        let f1 = f(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0.signum() * f1.signum() < 0.0 {
            roots.push(brent_root(&f, x0, x1, tol)?);
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 {
        roots.push(x0);
    }
    Ok(roots)
}
