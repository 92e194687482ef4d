use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights normalized to the interval `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// n-point Gauss–Legendre rule on `[0, 1]`, exact for polynomials of degree `2n − 1`.
///
/// Roots of `P_n` are found by Newton iteration from the Tricomi initial guess;
/// only the upper half is computed and mirrored so the rule is symmetric about 1/2.
pub fn gauss_legendre_rule(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::invalid("quadrature order must be at least 1"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..half {
        // i-th largest root of P_n on [-1, 1]
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        if n % 2 == 1 && i == half - 1 {
            x = 0.0;
        }
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
        if d.is_finite() {
            dp = d;
        }
        let w = 1.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] → [0, 1]: t = (1 ± x)/2, weight halves
        let hi = n - 1 - i;
        nodes[hi] = 0.5 + 0.5 * x;
        nodes[i] = 0.5 - 0.5 * x;
        weights[hi] = w;
        weights[i] = w;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// `Σ wᵢ·f(tᵢ)`, summed left to right over the nodes.
pub fn integrate(mut f: impl FnMut(f64) -> f64, rule: &QuadratureRule) -> Result<f64> {
    try_integrate(|t| Ok(f(t)), rule)
}

/// As [`integrate`] for integrands that can fail.
pub fn try_integrate(mut f: impl FnMut(f64) -> Result<f64>, rule: &QuadratureRule) -> Result<f64> {
    let mut acc = 0.0;
    for (i, (&t, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let v = f(t)?;
        if !v.is_finite() {
            return Err(Error::domain(v, format!("quadrature node {i} (t = {t})")));
        }
        acc += w * v;
    }
    Ok(acc)
}
