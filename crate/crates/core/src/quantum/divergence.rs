use crate::alpha::AlphaParam;
use crate::error::{check_dims, Error, Result};
use crate::numkit::{trace_product, try_integrate, QuadratureRule};

use super::geometry::{representation_weights, OperatorChord};
use super::operator::{real_trace, DensityOperator, PositiveOperator};

/// Which relative entropy to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelativeEntropyForm {
    /// `Tr ρ₁(log ρ₁ − log ρ₂)`
    Standard,
    /// `Tr(ρ₂ − ρ₁ + ρ₁ log ρ₁ − ρ₁ log ρ₂)`, the α → −1 limit of the quantum
    /// α-divergence on the full cone
    Extended,
}

/// Canonical divergence `∫₀¹ t·Tr(V⁽ᵅ⁾(t)·V⁽⁻ᵅ⁾(t)) dt` along the α-geodesic from
/// `ρ₁` to `ρ₂`, by quadrature.
///
/// With `D = B − A` expressed in the eigenbasis of `M(t)` the integrand is
/// `t/r² · Σ_kl |D̃_kl|²·w_kl`, `w` the divided differences of `λ ↦ λ^s/s` at the
/// spectrum of `M(t)`, `s = (1+α)/(1−α)`: real and nonnegative term by term.
pub fn canonical_divergence_numeric_q(
    rho1: &PositiveOperator,
    rho2: &PositiveOperator,
    alpha: AlphaParam,
    rule: &QuadratureRule,
) -> Result<f64> {
    let alpha = alpha.require_interior()?;
    let chord = OperatorChord::new(rho1, rho2, alpha)?;
    let d = chord.direction();
    let s = alpha.dual_exponent() / chord.r;
    let scale = 1.0 / (chord.r * chord.r);
    try_integrate(
        |t| {
            let m = chord.midpoint(t)?;
            let w = representation_weights(m.spectrum(), s)?;
            let dt = m.spectrum().to_eigenbasis(&d);
            let n = dt.nrows();
            let mut acc = 0.0;
            for k in 0..n {
                for l in 0..n {
                    acc += dt[(k, l)].norm_sqr() * w[(k, l)];
                }
            }
            Ok(t * scale * acc)
        },
        rule,
    )
}

/// Identical arguments: every divergence here vanishes, and returning 0 avoids the
/// O(ε·Tr ρ) residue of the spectral evaluation.
fn coincide(rho1: &PositiveOperator, rho2: &PositiveOperator) -> bool {
    rho1.matrix() == rho2.matrix()
}

/// `Tr(a·ρ₁ + b·ρ₂ − ρ₁^a·ρ₂^b)` for `a + b = 1`, split so that the smaller
/// exponent only enters through `expm1` and nothing cancels as it goes to 0.
fn alpha_trace_gap(
    rho1: &PositiveOperator,
    rho2: &PositiveOperator,
    a: f64,
    b: f64,
) -> Result<f64> {
    if coincide(rho1, rho2) {
        return Ok(0.0);
    }
    if b <= a {
        // ρ₁^a = ρ₁ + P, ρ₂^b = I + E
        let lam = rho1.spectrum().eigenvalues();
        let tr_p: f64 = lam.iter().map(|l| l * (-b * l.ln()).exp_m1()).sum();
        let e = rho2.spectrum().map(|m| (b * m.ln()).exp_m1());
        let cross = real_trace(trace_product(rho1.power(a).matrix(), &e))?;
        Ok(b * (rho2.trace() - rho1.trace()) - tr_p - cross)
    } else {
        // ρ₂^b = ρ₂ + Q, ρ₁^a = I + F
        let mu = rho2.spectrum().eigenvalues();
        let tr_q: f64 = mu.iter().map(|m| m * (-a * m.ln()).exp_m1()).sum();
        let f = rho1.spectrum().map(|l| (a * l.ln()).exp_m1());
        let cross = real_trace(trace_product(&f, rho2.power(b).matrix()))?;
        Ok(a * (rho1.trace() - rho2.trace()) - tr_q - cross)
    }
}

/// Quantum α-divergence
/// `(4/(1−α²))·Tr(((1−α)/2)ρ₁ + ((1+α)/2)ρ₂ − ρ₁^((1−α)/2)·ρ₂^((1+α)/2))`.
pub fn quantum_alpha_divergence_closed(
    rho1: &PositiveOperator,
    rho2: &PositiveOperator,
    alpha: AlphaParam,
) -> Result<f64> {
    check_dims(rho1.dim(), rho2.dim())?;
    let alpha = alpha.require_interior()?;
    let a = alpha.embedding_exponent();
    let b = alpha.dual_exponent();
    Ok(alpha_trace_gap(rho1, rho2, a, b)? / (a * b))
}

/// Quantum relative entropy by spectral logarithms.
pub fn quantum_relative_entropy(
    rho1: &PositiveOperator,
    rho2: &PositiveOperator,
    form: RelativeEntropyForm,
) -> Result<f64> {
    check_dims(rho1.dim(), rho2.dim())?;
    if coincide(rho1, rho2) {
        return Ok(0.0);
    }
    let self_term: f64 = rho1
        .spectrum()
        .eigenvalues()
        .iter()
        .map(|l| l * l.ln())
        .sum();
    let cross = rho1.operator().trace_with(&rho2.log())?;
    let standard = self_term - cross;
    Ok(match form {
        RelativeEntropyForm::Standard => standard,
        RelativeEntropyForm::Extended => rho2.trace() - rho1.trace() + standard,
    })
}

fn check_q(qparam: f64, allow_zero: bool) -> Result<()> {
    let ok = if allow_zero {
        (0.0..1.0).contains(&qparam)
    } else {
        qparam > 0.0 && qparam < 1.0
    };
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "q must lie in {}0, 1), got {qparam}",
            if allow_zero { "[" } else { "(" }
        )))
    }
}

/// `Tr(ρ₁^q·ρ₂^(1−q))`.
fn power_pair_trace(rho1: &PositiveOperator, rho2: &PositiveOperator, qparam: f64) -> Result<f64> {
    rho1.power(qparam).trace_with(&rho2.power(1.0 - qparam))
}

/// Quantum q-divergence `(1/(1−q))·Tr(q·ρ₁ + (1−q)·ρ₂ − ρ₁^q·ρ₂^(1−q))`, `0 < q < 1`.
pub fn quantum_q_divergence(
    rho1: &PositiveOperator,
    rho2: &PositiveOperator,
    qparam: f64,
) -> Result<f64> {
    check_dims(rho1.dim(), rho2.dim())?;
    check_q(qparam, false)?;
    Ok(alpha_trace_gap(rho1, rho2, qparam, 1.0 - qparam)? / (1.0 - qparam))
}

/// Furuichi's q-divergence `(Tr ρ₁ − Tr ρ₁^q·ρ₂^(1−q))/(1−q)`, `0 ≤ q < 1`.
pub fn furuichi_q_divergence(
    rho1: &PositiveOperator,
    rho2: &PositiveOperator,
    qparam: f64,
) -> Result<f64> {
    check_dims(rho1.dim(), rho2.dim())?;
    check_q(qparam, true)?;
    if coincide(rho1, rho2) {
        return Ok(0.0);
    }
    let cross = power_pair_trace(rho1, rho2, qparam)?;
    Ok((rho1.trace() - cross) / (1.0 - qparam))
}

/// Quantum α-divergence restricted to density operators,
/// `(4/(1−α²))·(1 − Tr ρ₁^((1−α)/2)·ρ₂^((1+α)/2))`.
pub fn density_alpha_divergence(
    rho1: &DensityOperator,
    rho2: &DensityOperator,
    alpha: AlphaParam,
) -> Result<f64> {
    let (r1, r2) = (rho1.operator(), rho2.operator());
    check_dims(r1.dim(), r2.dim())?;
    let alpha = alpha.require_interior()?;
    if coincide(r1, r2) {
        return Ok(0.0);
    }
    let a = alpha.embedding_exponent();
    let cross = r1.power(a).trace_with(&r2.power(1.0 - a))?;
    Ok((1.0 - cross) / (a * (1.0 - a)))
}
