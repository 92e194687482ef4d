//! Recover the dualistic structure `(g, ∇, ∇*)` of a divergence `D(p, q)` from its
//! mixed partials on the diagonal:
//!
//! ```text
//! g_ij   = −∂_i ∂′_j D |_{p=q}
//! Γ_ij,k = −∂_i ∂_j ∂′_k D |_{p=q}
//! Γ*_ij,k = −∂′_i ∂′_j ∂_k D |_{p=q}
//! ```
//!
//! and check the two structural facts a flat divergence must satisfy: the duality
//! identity `∂_k g_ij = Γ_ki,j + Γ*_kj,i` and vanishing curvature of both connections.

use nalgebra::DMatrix;

use crate::alpha::AlphaParam;
use crate::classical::{self, PositiveMeasure};
use crate::error::{Error, Result};
use crate::numkit::{second_mixed, third_mixed, FdConfig, QuadratureRule, ThirdPattern};
use crate::tensor::Tensor3;

/// Largest coordinate count for which [`curvature_max`] is offered.
pub const CURVATURE_MAX_COORDS: usize = 4;

/// Metric and connection coefficients recovered at one point. `christoffel[(i, j, k)]`
/// is `Γ_ij,k` (lowered with the metric on the last index).
#[derive(Clone, Debug, PartialEq)]
pub struct RecoveredStructure {
    pub point: Vec<f64>,
    pub step: f64,
    pub metric: DMatrix<f64>,
    pub christoffel: Tensor3,
    pub christoffel_dual: Tensor3,
}

impl RecoveredStructure {
    pub fn dim(&self) -> usize {
        self.point.len()
    }

    /// `Γᵏᵢⱼ = g^{km}·Γ_ij,m`, indexed `[(k, i, j)]`.
    pub fn christoffel_second_kind(&self) -> Result<Tensor3> {
        raise(&self.metric, &self.christoffel)
    }

    pub fn christoffel_dual_second_kind(&self) -> Result<Tensor3> {
        raise(&self.metric, &self.christoffel_dual)
    }
}

fn raise(metric: &DMatrix<f64>, lowered: &Tensor3) -> Result<Tensor3> {
    let inv = metric
        .clone()
        .try_inverse()
        .ok_or(Error::DegenerateMetric {
            min_eigenvalue: 0.0,
        })?;
    let n = lowered.dim();
    Ok(Tensor3::from_fn(n, |k, i, j| {
        (0..n).map(|m| inv[(k, m)] * lowered[(i, j, m)]).sum()
    }))
}

fn symmetric_min_eigenvalue(g: &DMatrix<f64>) -> Result<f64> {
    let c = crate::numkit::CMatrix::from_fn(g.nrows(), g.ncols(), |i, j| {
        crate::numkit::Complex64::new(0.5 * (g[(i, j)] + g[(j, i)]), 0.0)
    });
    Ok(crate::numkit::hermitian_eig(&c)?.min_eigenvalue())
}

/// `g_ij = −∂_i∂′_j D` at `(p, p)`, rejected if it is not positive definite at the
/// resolution of the stencil.
pub fn recover_metric<D>(d: &D, p: &[f64], cfg: &FdConfig) -> Result<DMatrix<f64>>
where
    D: Fn(&[f64], &[f64]) -> Result<f64>,
{
    let g = -second_mixed(d, p, p, cfg)?;
    let scale = g.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let min_eig = symmetric_min_eigenvalue(&g)?;
    // a degenerate divergence still produces O(h²) stencil noise; anything at or
    // below that level is not a metric
    if min_eig <= 100.0 * cfg.step * cfg.step * scale {
        return Err(Error::DegenerateMetric {
            min_eigenvalue: min_eig,
        });
    }
    Ok(g)
}

/// Recover `(g, Γ, Γ*)` of `d` at the diagonal point `(p, p)`.
///
/// Second-order partials use `cfg`; third-order ones use [`FdConfig::third_order`].
pub fn recover_structure<D>(d: &D, p: &[f64], cfg: &FdConfig) -> Result<RecoveredStructure>
where
    D: Fn(&[f64], &[f64]) -> Result<f64>,
{
    cfg.validate()?;
    let at_diagonal = d(p, p)?;
    if at_diagonal.is_nan() || at_diagonal.abs() > 1e-12 {
        return Err(Error::invalid(format!(
            "not a divergence: D(p, p) = {at_diagonal:e}"
        )));
    }
    let metric = recover_metric(d, p, cfg)?;
    let third = cfg.third_order();
    let mut christoffel = third_mixed(d, p, p, ThirdPattern::FirstFirstSecond, &third)?;
    let mut christoffel_dual = third_mixed(d, p, p, ThirdPattern::SecondSecondFirst, &third)?;
    negate(&mut christoffel);
    negate(&mut christoffel_dual);
    Ok(RecoveredStructure {
        point: p.to_vec(),
        step: cfg.step,
        metric,
        christoffel,
        christoffel_dual,
    })
}

fn negate(t: &mut Tensor3) {
    let n = t.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t[(i, j, k)] = -t[(i, j, k)];
            }
        }
    }
}

fn shifted(p: &[f64], k: usize, h: f64) -> Vec<f64> {
    let mut x = p.to_vec();
    x[k] += h;
    x
}

/// Central difference `(f(h) − f(−h))/(2h)` of a coordinate shift, Richardson
/// extrapolated against `2h` when `order = 4`.
fn shift_derivative<T, F>(f: F, h: f64, order: u8) -> Result<T>
where
    T: std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
    F: Fn(f64) -> Result<T>,
{
    let near = (f(h)? - f(-h)?) * (0.5 / h);
    if order == 4 {
        let wide = (f(2.0 * h)? - f(-2.0 * h)?) * (0.25 / h);
        Ok(near * (4.0 / 3.0) - wide * (1.0 / 3.0))
    } else {
        Ok(near)
    }
}

/// `max_{ijk} |∂_k g_ij − Γ_ki,j − Γ*_kj,i|`, with `∂_k g` by central differences of
/// metrics recovered at `p ± h·e_k`.
pub fn duality_defect<D>(s: &RecoveredStructure, d: &D, cfg: &FdConfig) -> Result<f64>
where
    D: Fn(&[f64], &[f64]) -> Result<f64>,
{
    let n = s.dim();
    let h = cfg.third_order().step;
    let mut defect = 0.0f64;
    for k in 0..n {
        let dg = shift_derivative(
            |t| recover_metric(d, &shifted(&s.point, k, t), cfg),
            h,
            cfg.order,
        )?;
        for i in 0..n {
            for j in 0..n {
                let v = dg[(i, j)] - s.christoffel[(k, i, j)] - s.christoffel_dual[(k, j, i)];
                defect = defect.max(v.abs());
            }
        }
    }
    Ok(defect)
}

/// `R^l_ijk = ∂_iΓ^l_jk − ∂_jΓ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik` from second-kind
/// symbols at the centre and their coordinate derivatives `∂_i Γ`.
fn curvature_of(center: &Tensor3, derivs: &[Tensor3]) -> f64 {
    let n = center.dim();
    let mut worst = 0.0f64;
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d_i = derivs[i][(l, j, k)];
                    let d_j = derivs[j][(l, i, k)];
                    let quad: f64 = (0..n)
                        .map(|m| {
                            center[(l, i, m)] * center[(m, j, k)]
                                - center[(l, j, m)] * center[(m, i, k)]
                        })
                        .sum();
                    worst = worst.max((d_i - d_j + quad).abs());
                }
            }
        }
    }
    worst
}

/// Largest component of the curvature tensors of both recovered connections at `p`.
/// Offered for at most [`CURVATURE_MAX_COORDS`] coordinates.
pub fn curvature_max<D>(d: &D, p: &[f64], cfg: &FdConfig) -> Result<f64>
where
    D: Fn(&[f64], &[f64]) -> Result<f64>,
{
    let n = p.len();
    if n > CURVATURE_MAX_COORDS {
        return Err(Error::invalid(format!(
            "curvature check is limited to {CURVATURE_MAX_COORDS} coordinates, got {n}"
        )));
    }
    let h = cfg.third_order().step;
    let center = recover_structure(d, p, cfg)?;
    let mut derivs = Vec::with_capacity(n);
    let mut derivs_dual = Vec::with_capacity(n);
    for i in 0..n {
        let pair = |t: f64| -> Result<TensorPair> {
            let s = recover_structure(d, &shifted(p, i, t), cfg)?;
            Ok(TensorPair(
                s.christoffel_second_kind()?,
                s.christoffel_dual_second_kind()?,
            ))
        };
        let TensorPair(g, g_dual) = shift_derivative(pair, h, cfg.order)?;
        derivs.push(g);
        derivs_dual.push(g_dual);
    }
    let r = curvature_of(&center.christoffel_second_kind()?, &derivs);
    let r_dual = curvature_of(&center.christoffel_dual_second_kind()?, &derivs_dual);
    Ok(r.max(r_dual))
}

struct TensorPair(Tensor3, Tensor3);

impl std::ops::Sub for TensorPair {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        TensorPair(self.0 - rhs.0, self.1 - rhs.1)
    }
}

impl std::ops::Mul<f64> for TensorPair {
    type Output = Self;
    fn mul(self, c: f64) -> Self {
        TensorPair(self.0 * c, self.1 * c)
    }
}

/// Half squared Euclidean distance, the self-dual flat reference divergence.
pub fn euclidean_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    crate::error::check_dims(p.len(), q.len())?;
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
}

/// Classical α-divergence on raw coordinates.
pub fn classical_alpha_divergence(alpha: AlphaParam) -> impl Fn(&[f64], &[f64]) -> Result<f64> {
    move |p, q| {
        classical::alpha_divergence_closed(
            &PositiveMeasure::new(p.to_vec())?,
            &PositiveMeasure::new(q.to_vec())?,
            alpha,
        )
    }
}

/// Classical canonical divergence by quadrature on raw coordinates.
pub fn classical_canonical_divergence(
    alpha: AlphaParam,
    rule: QuadratureRule,
) -> impl Fn(&[f64], &[f64]) -> Result<f64> {
    move |p, q| {
        classical::canonical_divergence_numeric(
            &PositiveMeasure::new(p.to_vec())?,
            &PositiveMeasure::new(q.to_vec())?,
            alpha,
            &rule,
        )
    }
}

/// Analytic lowered Christoffel symbols of the α-connection on `M₊`:
/// `Γ_ij,k = −((1+α)/2)·δ_ijk/pᵢ²`.
pub fn classical_alpha_christoffel_lowered(p: &[f64], alpha: AlphaParam) -> Tensor3 {
    let c = -alpha.dual_exponent();
    Tensor3::from_fn(p.len(), |i, j, k| {
        if i == j && j == k {
            c / (p[i] * p[i])
        } else {
            0.0
        }
    })
}
