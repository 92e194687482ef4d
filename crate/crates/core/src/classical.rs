//! Geometry of the cone of positive measures `M₊ = {p ∈ ℝⁿ : pᵢ > 0}`.
//!
//! Tangent vectors are written in the canonical basis of `ℝⁿ`. The Fisher metric is
//! `g_p(X, Y) = Σ XᵢYᵢ/pᵢ` and the α-connection has the single correction term
//! `−((1+α)/2)·XᵢYᵢ/pᵢ`, so `α = −1` (mixture) is flat in these coordinates and every
//! α-connection is flat in the α-embedding `lα(p) = (2/(1−α))·p^((1−α)/2)`.
//!
//! α-geodesics are straight lines in the α-embedding:
//!
//! ```text
//! γᵢ(t) = mᵢ(t)^(2/(1−α)),   mᵢ(t) = (1−t)·pᵢ^((1−α)/2) + t·qᵢ^((1−α)/2)
//! ```
//!
//! All powers go through `exp`/`ln` of positive reals, and chord differences
//! `qᵢ^r − pᵢ^r` through `expm1` so the limits α → ±1 stay accurate.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::alpha::AlphaParam;
use crate::error::{check_dims, Error, Result};
use crate::numkit::{try_integrate, QuadratureRule};
use crate::tensor::Tensor3;

/// A point of `M₊`: strictly positive, finite weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PositiveMeasure(Vec<f64>);

impl PositiveMeasure {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("a measure needs at least one weight"));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::invalid(format!(
                "measure weights must be finite and > 0; weight {i} is {w}"
            )));
        }
        Ok(Self(weights))
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total_mass(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<f64>> for PositiveMeasure {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PositiveMeasure> for Vec<f64> {
    fn from(p: PositiveMeasure) -> Vec<f64> {
        p.0
    }
}

/// Tangent vector at a point of `M₊`, in the canonical basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangentVec(pub Vec<f64>);

impl TangentVec {
    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

fn check_pair(p: &PositiveMeasure, q: &PositiveMeasure) -> Result<()> {
    check_dims(p.dim(), q.dim())
}

fn check_time(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "curve parameter must lie in [0, 1], got {t}"
        )))
    }
}

/// Fisher metric `Σ XᵢYᵢ/pᵢ`.
pub fn fisher_metric(p: &PositiveMeasure, x: &TangentVec, y: &TangentVec) -> Result<f64> {
    check_dims(p.dim(), x.dim())?;
    check_dims(p.dim(), y.dim())?;
    Ok(p.0
        .iter()
        .zip(&x.0)
        .zip(&y.0)
        .map(|((pi, xi), yi)| xi * yi / pi)
        .sum())
}

/// Fisher metric as the matrix `diag(1/pᵢ)`.
pub fn fisher_matrix(p: &PositiveMeasure) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        p.dim(),
        p.0.iter().map(|w| 1.0 / w),
    ))
}

/// Christoffel symbols `Γᵏᵢⱼ = −((1+α)/2)·δᵢⱼδⱼₖ/pᵢ` of the α-connection,
/// indexed `[(k, i, j)]`.
pub fn alpha_christoffel(p: &PositiveMeasure, alpha: AlphaParam) -> Tensor3 {
    let c = -alpha.dual_exponent();
    Tensor3::from_fn(
        p.dim(),
        |k, i, j| {
            if i == j && j == k {
                c / p.0[i]
            } else {
                0.0
            }
        },
    )
}

/// Per-coordinate data of the α-geodesic from `p` to `q`.
struct Chord {
    /// (1 − α)/2
    r: f64,
    /// (1 + α)/2
    b: f64,
    alpha: f64,
    log_p: Vec<f64>,
    /// `expm1(r·(ln qᵢ − ln pᵢ))`, so `qᵢ^r = pᵢ^r·(1 + growth)`.
    growth: Vec<f64>,
}

impl Chord {
    fn new(p: &PositiveMeasure, q: &PositiveMeasure, alpha: AlphaParam) -> Result<Self> {
        check_pair(p, q)?;
        let alpha = alpha.require_below_one()?;
        let r = alpha.embedding_exponent();
        let log_p: Vec<f64> = p.0.iter().map(|v| v.ln()).collect();
        let growth =
            q.0.iter()
                .zip(&log_p)
                .map(|(qi, lp)| (r * (qi.ln() - lp)).exp_m1())
                .collect();
        Ok(Self {
            r,
            b: alpha.dual_exponent(),
            alpha: alpha.value(),
            log_p,
            growth,
        })
    }

    fn dim(&self) -> usize {
        self.log_p.len()
    }

    /// `ln mᵢ(t)`.
    fn log_m(&self, i: usize, t: f64) -> f64 {
        self.r * self.log_p[i] + (t * self.growth[i]).ln_1p()
    }

    /// `(qᵢ^r − pᵢ^r)/r`.
    fn scaled_delta(&self, i: usize) -> f64 {
        (self.r * self.log_p[i]).exp() * self.growth[i] / self.r
    }

    fn position(&self, i: usize, t: f64) -> f64 {
        (self.log_m(i, t) / self.r).exp()
    }

    /// `γ̇ᵢ = (2/(1−α))·m^((1+α)/(1−α))·(qᵢ^r − pᵢ^r)`.
    fn velocity(&self, i: usize, t: f64) -> f64 {
        (self.b / self.r * self.log_m(i, t)).exp() * self.scaled_delta(i)
    }

    /// `γ̈ᵢ = (2(1+α)/(1−α)²)·m^(2α/(1−α))·(qᵢ^r − pᵢ^r)²`.
    fn acceleration(&self, i: usize, t: f64) -> f64 {
        let d = self.scaled_delta(i);
        self.b * (self.alpha / self.r * self.log_m(i, t)).exp() * d * d
    }

    /// `γ̇ᵢ²/γᵢ = (4/(1−α)²)·m^(2α/(1−α))·(qᵢ^r − pᵢ^r)²`.
    fn fisher_density(&self, i: usize, t: f64) -> f64 {
        let d = self.scaled_delta(i);
        (self.alpha / self.r * self.log_m(i, t)).exp() * d * d
    }

    fn fisher_speed_sq(&self, t: f64) -> f64 {
        (0..self.dim()).map(|i| self.fisher_density(i, t)).sum()
    }
}

/// Point `γ(t)` of the α-geodesic with `γ(0) = p`, `γ(1) = q` (endpoints returned exactly).
pub fn alpha_geodesic(
    p: &PositiveMeasure,
    q: &PositiveMeasure,
    alpha: AlphaParam,
    t: f64,
) -> Result<PositiveMeasure> {
    check_time(t)?;
    let chord = Chord::new(p, q, alpha)?;
    if t == 0.0 {
        return Ok(p.clone());
    }
    if t == 1.0 {
        return Ok(q.clone());
    }
    PositiveMeasure::new((0..chord.dim()).map(|i| chord.position(i, t)).collect())
}

/// Velocity `γ̇(t)` of the α-geodesic from `p` to `q`.
pub fn geodesic_velocity(
    p: &PositiveMeasure,
    q: &PositiveMeasure,
    alpha: AlphaParam,
    t: f64,
) -> Result<TangentVec> {
    check_time(t)?;
    let chord = Chord::new(p, q, alpha)?;
    Ok(TangentVec(
        (0..chord.dim()).map(|i| chord.velocity(i, t)).collect(),
    ))
}

/// Acceleration `γ̈(t)` of the α-geodesic from `p` to `q`.
pub fn geodesic_acceleration(
    p: &PositiveMeasure,
    q: &PositiveMeasure,
    alpha: AlphaParam,
    t: f64,
) -> Result<TangentVec> {
    check_time(t)?;
    let chord = Chord::new(p, q, alpha)?;
    Ok(TangentVec(
        (0..chord.dim()).map(|i| chord.acceleration(i, t)).collect(),
    ))
}

/// `maxᵢ |γ̈ᵢ − ((1+α)/2)·γ̇ᵢ²/γᵢ|` for an arbitrary curve sample.
pub fn alpha_ode_residual(
    point: &PositiveMeasure,
    velocity: &TangentVec,
    acceleration: &TangentVec,
    alpha: AlphaParam,
) -> Result<f64> {
    check_dims(point.dim(), velocity.dim())?;
    check_dims(point.dim(), acceleration.dim())?;
    let c = alpha.dual_exponent();
    Ok((0..point.dim()).fold(0.0, |m, i| {
        let v = velocity.0[i];
        m.max((acceleration.0[i] - c * v * v / point.0[i]).abs())
    }))
}

/// Residual of the α-geodesic equations along the closed-form geodesic at `t ∈ (0, 1)`.
pub fn geodesic_ode_residual(
    p: &PositiveMeasure,
    q: &PositiveMeasure,
    alpha: AlphaParam,
    t: f64,
) -> Result<f64> {
    let chord = Chord::new(p, q, alpha)?;
    check_time(t)?;
    let c = alpha.dual_exponent();
    Ok((0..chord.dim()).fold(0.0, |m, i| {
        let g = chord.position(i, t);
        let v = chord.velocity(i, t);
        m.max((chord.acceleration(i, t) - c * v * v / g).abs())
    }))
}

/// `exp_p⁻¹(q) = γ̇(0)`.
pub fn inverse_exponential(
    p: &PositiveMeasure,
    q: &PositiveMeasure,
    alpha: AlphaParam,
) -> Result<TangentVec> {
    geodesic_velocity(p, q, alpha, 0.0)
}

/// α-embedding `lα(p)ᵢ = (2/(1−α))·pᵢ^((1−α)/2)`.
pub fn alpha_embedding(p: &PositiveMeasure, alpha: AlphaParam) -> Result<Vec<f64>> {
    let r = alpha.require_below_one()?.embedding_exponent();
    Ok(p.0.iter().map(|v| (r * v.ln()).exp() / r).collect())
}

/// α-representation `X⁽ᵅ⁾ᵢ = pᵢ^(−(1+α)/2)·Xᵢ`, the pushforward of `X` by `lα`.
pub fn alpha_representation(
    p: &PositiveMeasure,
    x: &TangentVec,
    alpha: AlphaParam,
) -> Result<Vec<f64>> {
    check_dims(p.dim(), x.dim())?;
    let b = alpha.require_below_one()?.dual_exponent();
    Ok(p.0
        .iter()
        .zip(&x.0)
        .map(|(pi, xi)| (-b * pi.ln()).exp() * xi)
        .collect())
}

/// Canonical divergence `∫₀¹ t·‖γ̇(t)‖²_F dt` along the α-geodesic from `p` to `q`,
/// by quadrature. Equals `D⁽ᵅ⁾(p, q)`.
pub fn canonical_divergence_numeric(
    p: &PositiveMeasure,
    q: &PositiveMeasure,
    alpha: AlphaParam,
    rule: &QuadratureRule,
) -> Result<f64> {
    let alpha = alpha.require_interior()?;
    let chord = Chord::new(p, q, alpha)?;
    try_integrate(|t| Ok(t * chord.fisher_speed_sq(t)), rule)
}

/// Dual canonical divergence: the same integral along the (−α)-geodesic from `p` to
/// `q`. Equals the canonical divergence with the arguments swapped.
pub fn dual_canonical_divergence(
    p: &PositiveMeasure,
    q: &PositiveMeasure,
    alpha: AlphaParam,
    rule: &QuadratureRule,
) -> Result<f64> {
    canonical_divergence_numeric(p, q, alpha.dual(), rule)
}

/// `(b·y + a·x − x^a·y^b)/(a·b)` with `a + b = 1`, arranged so the smaller of
/// `a, b` multiplies an `expm1` instead of cancelling.
pub(crate) fn alpha_summand(x: f64, y: f64, a: f64, b: f64) -> f64 {
    let log_ratio = y.ln() - x.ln();
    let num = if b <= a {
        b * (y - x) - x * (b * log_ratio).exp_m1()
    } else {
        a * (x - y) - y * (-a * log_ratio).exp_m1()
    };
    num / (a * b)
}

/// Closed-form α-divergence
/// `Σ (2/(1−α))qᵢ + (2/(1+α))pᵢ − (4/(1−α²))·qᵢ^((1+α)/2)·pᵢ^((1−α)/2)`.
pub fn alpha_divergence_closed(
    p: &PositiveMeasure,
    q: &PositiveMeasure,
    alpha: AlphaParam,
) -> Result<f64> {
    check_pair(p, q)?;
    let alpha = alpha.require_interior()?;
    let a = alpha.embedding_exponent();
    let b = alpha.dual_exponent();
    Ok(p.0
        .iter()
        .zip(&q.0)
        .map(|(&pi, &qi)| alpha_summand(pi, qi, a, b))
        .sum())
}

/// Extended Kullback–Leibler divergence `Σ qᵢ − pᵢ − pᵢ·ln(qᵢ/pᵢ)`, the α → −1 limit.
pub fn kl_extended(p: &PositiveMeasure, q: &PositiveMeasure) -> Result<f64> {
    check_pair(p, q)?;
    Ok(p.0
        .iter()
        .zip(&q.0)
        .map(|(&pi, &qi)| qi - pi - pi * (qi.ln() - pi.ln()))
        .sum())
}

/// `Σ pᵢ − qᵢ − qᵢ·ln(pᵢ/qᵢ)`, the α → +1 limit; equals `kl_extended(q, p)`.
pub fn kl_extended_reversed(p: &PositiveMeasure, q: &PositiveMeasure) -> Result<f64> {
    kl_extended(q, p)
}

/// Tsallis q-divergence `(1/(1−q))·Σ q·pᵢ + (1−q)·qᵢ − pᵢ^q·qᵢ^(1−q)`, `0 < q < 1`.
pub fn tsallis_q_divergence(p: &PositiveMeasure, q: &PositiveMeasure, qparam: f64) -> Result<f64> {
    check_pair(p, q)?;
    if !(qparam > 0.0 && qparam < 1.0) {
        return Err(Error::invalid(format!(
            "q must lie in (0, 1), got {qparam}"
        )));
    }
    let s: f64 =
        p.0.iter()
            .zip(&q.0)
            .map(|(&pi, &qi)| {
                // qp + (1−q)y − p·(y/p)^(1−q), expanded so that it vanishes exactly at p = y
                let log_ratio = qi.ln() - pi.ln();
                (1.0 - qparam) * (qi - pi) - pi * ((1.0 - qparam) * log_ratio).exp_m1()
            })
            .sum();
    Ok(s / (1.0 - qparam))
}
