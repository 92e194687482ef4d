use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::tensor::Tensor3;

/// Step and accuracy order for the product-stencil finite differences.
///
/// `order = 2` is the plain central product stencil (`2^k` evaluations for a
/// k-th order mixed partial, error `O(h²)`); `order = 4` adds one Richardson
/// extrapolation against step `2h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdConfig {
    pub step: f64,
    pub order: u8,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self {
            step: 1e-3,
            order: 2,
        }
    }
}

impl FdConfig {
    pub fn new(step: f64, order: u8) -> Result<Self> {
        let cfg = Self { step, order };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1e-6..=1e-1).contains(&self.step) {
            return Err(Error::invalid(format!(
                "finite-difference step must lie in [1e-6, 1e-1], got {}",
                self.step
            )));
        }
        if self.order != 2 && self.order != 4 {
            return Err(Error::invalid(format!(
                "finite-difference order must be 2 or 4, got {}",
                self.order
            )));
        }
        Ok(())
    }

    /// Configuration for third-order partials: ten times the step, capped at 0.1.
    /// Roundoff there scales like ε/h³, so the second-order step is too small.
    pub fn third_order(&self) -> Self {
        Self {
            step: (10.0 * self.step).min(1e-1),
            order: self.order,
        }
    }
}

/// Which argument and coordinate a partial derivative acts on: `First(i)` is
/// `∂_i` on the first argument, `Second(i)` is `∂′_i` on the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    First(usize),
    Second(usize),
}

/// Third-order mixed patterns used for connection recovery.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThirdPattern {
    /// `∂_i ∂_j ∂′_k`
    FirstFirstSecond,
    /// `∂′_i ∂′_j ∂_k`
    SecondSecondFirst,
}

/// Central product-stencil estimate of `∂_{slots} F(p, q)`.
///
/// Each slot contributes a `±h` shift of its coordinate; the `2^k` shifted values
/// are summed with the product of signs and divided by `(2h)^k`.
pub fn mixed_partial<F>(f: &F, p: &[f64], q: &[f64], slots: &[Slot], cfg: &FdConfig) -> Result<f64>
where
    F: Fn(&[f64], &[f64]) -> Result<f64>,
{
    cfg.validate()?;
    for s in slots {
        let (idx, len) = match *s {
            Slot::First(i) => (i, p.len()),
            Slot::Second(i) => (i, q.len()),
        };
        if idx >= len {
            return Err(Error::invalid(format!(
                "partial index {idx} out of range for {len} coordinates"
            )));
        }
    }
    let coarse = product_stencil(f, p, q, slots, cfg.step)?;
    if cfg.order == 4 {
        let wide = product_stencil(f, p, q, slots, 2.0 * cfg.step)?;
        Ok((4.0 * coarse - wide) / 3.0)
    } else {
        Ok(coarse)
    }
}

fn product_stencil<F>(f: &F, p: &[f64], q: &[f64], slots: &[Slot], h: f64) -> Result<f64>
where
    F: Fn(&[f64], &[f64]) -> Result<f64>,
{
    let k = slots.len();
    let mut x = p.to_vec();
    let mut y = q.to_vec();
    let mut acc = 0.0;
    for mask in 0..(1u32 << k) {
        x.copy_from_slice(p);
        y.copy_from_slice(q);
        let mut sign = 1.0;
        for (bit, s) in slots.iter().enumerate() {
            let delta = if mask & (1 << bit) == 0 {
                h
            } else {
                sign = -sign;
                -h
            };
            match *s {
                Slot::First(i) => x[i] += delta,
                Slot::Second(i) => y[i] += delta,
            }
        }
        let v = f(&x, &y)?;
        if !v.is_finite() {
            return Err(Error::domain(
                v,
                format!("finite-difference stencil point ({x:?}, {y:?})"),
            ));
        }
        acc += sign * v;
    }
    Ok(acc / (2.0 * h).powi(k as i32))
}

/// Matrix of `∂_i ∂′_j F(p, q)`.
pub fn second_mixed<F>(f: &F, p: &[f64], q: &[f64], cfg: &FdConfig) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64], &[f64]) -> Result<f64>,
{
    let n = p.len();
    let m = q.len();
    let mut out = DMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            out[(i, j)] = mixed_partial(f, p, q, &[Slot::First(i), Slot::Second(j)], cfg)?;
        }
    }
    Ok(out)
}

/// Tensor of third-order mixed partials; the two repeated slots commute, so only
/// `i ≤ j` is evaluated and mirrored.
pub fn third_mixed<F>(
    f: &F,
    p: &[f64],
    q: &[f64],
    pattern: ThirdPattern,
    cfg: &FdConfig,
) -> Result<Tensor3>
where
    F: Fn(&[f64], &[f64]) -> Result<f64>,
{
    let n = p.len();
    if q.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: q.len(),
        });
    }
    let mut t = Tensor3::zeros(n);
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let slots = match pattern {
                    ThirdPattern::FirstFirstSecond => {
                        [Slot::First(i), Slot::First(j), Slot::Second(k)]
                    }
                    ThirdPattern::SecondSecondFirst => {
                        [Slot::Second(i), Slot::Second(j), Slot::First(k)]
                    }
                };
                let v = mixed_partial(f, p, q, &slots, cfg)?;
                t[(i, j, k)] = v;
                t[(j, i, k)] = v;
            }
        }
    }
    Ok(t)
}
