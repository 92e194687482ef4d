use nalgebra::DMatrix;

use super::{hermitian_eig, CMatrix, SpectralDecomposition};
use crate::error::{Error, Result};

/// Relative eigenvalue gap below which a divided difference switches to the
/// derivative at the midpoint.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// A positive operator needs `λ_min > POSITIVITY_TOL · λ_max`.
pub const POSITIVITY_TOL: f64 = 1e-12;

/// First divided difference of `λ ↦ λ^s` at `(x, y)`, both positive.
///
/// The secant is evaluated as `y^s·expm1(s·ln(x/y))/(x − y)` so small exponents do
/// not cancel; nearly equal arguments use `s·m^(s−1)` at the mean `m`.
pub fn power_divided_difference(x: f64, y: f64, s: f64) -> f64 {
    if (x - y).abs() > DEGENERACY_TOL * x.max(y) {
        (s * y.ln()).exp() * (s * (x.ln() - y.ln())).exp_m1() / (x - y)
    } else {
        let m = 0.5 * (x + y);
        s * ((s - 1.0) * m.ln()).exp()
    }
}

impl SpectralDecomposition {
    /// Fails unless every eigenvalue exceeds `POSITIVITY_TOL · λ_max`.
    pub fn check_positive(&self) -> Result<()> {
        let lo = self.min_eigenvalue();
        let hi = self.max_eigenvalue();
        if self.dim() == 0 || hi <= 0.0 || lo <= POSITIVITY_TOL * hi {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: lo,
                max_eigenvalue: hi,
            });
        }
        Ok(())
    }

    /// `ρ^s` for a positive-definite `ρ`; `s = 0` gives the identity exactly.
    pub fn power(&self, s: f64) -> Result<CMatrix> {
        self.check_positive()?;
        if s == 0.0 {
            return Ok(CMatrix::identity(self.dim(), self.dim()));
        }
        Ok(self.map(|l| (s * l.ln()).exp()))
    }

    pub fn log(&self) -> Result<CMatrix> {
        self.check_positive()?;
        Ok(self.map(f64::ln))
    }

    /// Matrix of divided differences `Δᵢⱼ = [λᵢ, λⱼ]` of `λ ↦ λ^s`.
    pub fn power_divided_differences(&self, s: f64) -> Result<DMatrix<f64>> {
        self.check_positive()?;
        let l = &self.eigenvalues();
        let n = self.dim();
        Ok(DMatrix::from_fn(n, n, |i, j| {
            power_divided_difference(l[i], l[j], s)
        }))
    }

    /// Daleckii–Krein derivative of `ρ ↦ ρ^s` at this operator in direction `X`:
    /// `U·(U†XU ∘ Δ)·U†`.
    pub fn frechet_power(&self, s: f64, x: &CMatrix) -> Result<CMatrix> {
        crate::error::check_dims(self.dim(), x.nrows())?;
        let dd = self.power_divided_differences(s)?;
        Ok(self.schur_multiply(x, &dd))
    }
}

/// `ρ^s` by spectral decomposition.
pub fn matrix_power(rho: &CMatrix, s: f64) -> Result<CMatrix> {
    hermitian_eig(rho)?.power(s)
}

/// Directional derivative of `ρ ↦ ρ^s` at `ρ` along the Hermitian `X`.
pub fn frechet_power(rho: &CMatrix, s: f64, x: &CMatrix) -> Result<CMatrix> {
    hermitian_eig(rho)?.frechet_power(s, x)
}
