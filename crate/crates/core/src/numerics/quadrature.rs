use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the three-term Legendre recurrence, seeded with
    /// Chebyshev-like estimates of the roots.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("Gauss-Legendre needs n >= 1".into()));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        let nf = n as f64;
        for i in 0..half {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // roots come out in decreasing order; store ascending
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let x = self.nodes.iter().map(|t| mid + half * t).collect();
        let w = self.weights.iter().map(|w| half * w).collect();
        (x, w)
    }

    /// Composite rule with `panels` equal sub-intervals of `[a, b]`.
    pub fn composite(&self, a: f64, b: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        let mut xs = Vec::with_capacity(panels * self.len());
        let mut ws = Vec::with_capacity(panels * self.len());
        for p in 0..panels {
            let lo = a + width * p as f64;
            let hi = if p + 1 == panels { b } else { lo + width };
            let (x, w) = self.on_interval(lo, hi);
            xs.extend(x);
            ws.extend(w);
        }
        (xs, ws)
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (x, w) = self.on_interval(a, b);
        x.iter().zip(&w).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// P_n(x) and P_n'(x) from the Bonnet recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `n`-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("Gauss-Legendre interval [{a}, {b}] is empty")));
    }
    Ok(GaussLegendre::new(n)?.on_interval(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn midpoint_rule() {
        let (x, w) = gauss_legendre(1, 0.0, 1.0).unwrap();
        assert_eq!(x, vec![0.5]);
        assert!((w[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_rule() {
        // roots of P_2 = (3x^2 - 1)/2
        let (x, w) = gauss_legendre(2, -1.0, 1.0).unwrap();
        let r = (1.0_f64 / 3.0).sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
        assert!((x[1] - 0.5773502692).abs() < 1e-10);
    }

    #[test]
    fn three_points_integrate_quintic() {
        let (x, w) = gauss_legendre(3, 0.0, 1.0).unwrap();
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(5)).sum();
        assert!((s - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_arguments() {
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
        assert!(gauss_legendre(3, 1.0, 1.0).is_err());
        assert!(gauss_legendre(3, 2.0, 1.0).is_err());
    }

    #[test]
    fn monomials_exact_up_to_degree_2n_minus_1() {
        for n in 1..=32 {
            let (x, w) = gauss_legendre(n, 0.0, 1.0).unwrap();
            assert!(x.windows(2).all(|p| p[0] < p[1]), "n={n} nodes not increasing");
            assert!(w.iter().all(|&w| w > 0.0));
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-13);
            for k in 0..2 * n {
                let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                let exact = 1.0 / (k as f64 + 1.0);
                assert!((s - exact).abs() < 1e-12, "n={n} k={k} err={}", s - exact);
            }
        }
    }

    #[test]
    fn composite_matches_single_panel_on_smooth_integrand() {
        let rule = GaussLegendre::new(64).unwrap();
        let (x, w) = rule.composite(0.0, 3.0, 7);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.sin()).sum();
        assert!((s - (1.0 - 3.0_f64.cos())).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn weights_sum_to_interval_length(n in 1usize..40, a in -5.0f64..5.0, len in 0.01f64..10.0) {
            let (_, w) = gauss_legendre(n, a, a + len).unwrap();
            prop_assert!((w.iter().sum::<f64>() - len).abs() < 1e-12 * len.max(1.0));
        }
    }
}
