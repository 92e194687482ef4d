use crate::alpha::AlphaParam;
use crate::error::{check_dims, Error, Result};
use crate::numkit::{hermitian_eig, trace_product, CMatrix, Complex64};

use super::divergence::quantum_alpha_divergence_closed;
use super::geometry::alpha_embedding;
use super::operator::{HermitianOperator, PositiveOperator};

/// Orthonormal basis of the `n²`-dimensional real space of `n×n` Hermitian
/// matrices under `⟨A, B⟩ = Tr(AB)`: `I/√n` first, then for each `j < k` the
/// symmetric and antisymmetric generalized Gell-Mann matrices, then the diagonal
/// ones.
pub fn hermitian_basis(n: usize) -> Vec<CMatrix> {
    let mut basis = Vec::with_capacity(n * n);
    let one = Complex64::new(1.0, 0.0);
    let s2 = std::f64::consts::FRAC_1_SQRT_2;

    basis.push(CMatrix::identity(n, n) * Complex64::new(1.0 / (n as f64).sqrt(), 0.0));
    for j in 0..n {
        for k in (j + 1)..n {
            let mut sym = CMatrix::zeros(n, n);
            sym[(j, k)] = one * s2;
            sym[(k, j)] = one * s2;
            basis.push(sym);
            let mut anti = CMatrix::zeros(n, n);
            anti[(j, k)] = Complex64::new(0.0, -s2);
            anti[(k, j)] = Complex64::new(0.0, s2);
            basis.push(anti);
        }
    }
    for l in 1..n {
        let lf = l as f64;
        let c = 1.0 / (lf * (lf + 1.0)).sqrt();
        let mut d = CMatrix::zeros(n, n);
        for m in 0..l {
            d[(m, m)] = one * c;
        }
        d[(l, l)] = one * (-lf * c);
        basis.push(d);
    }
    basis
}

/// Real coordinates `θ` on the operator cone with `lα(ρ) = Σᵢ θⁱ·Aᵢ` for the
/// basis of [`hermitian_basis`]; the α-connection is affine in this chart.
#[derive(Clone, Debug)]
pub struct ThetaChart {
    dim: usize,
    alpha: AlphaParam,
    basis: Vec<CMatrix>,
}

impl ThetaChart {
    pub fn new(dim: usize, alpha: AlphaParam) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("chart dimension must be positive"));
        }
        Ok(Self {
            dim,
            alpha: alpha.require_below_one()?,
            basis: hermitian_basis(dim),
        })
    }

    pub fn alpha(&self) -> AlphaParam {
        self.alpha
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    /// Number of real coordinates, `n²`.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn coordinates(&self, rho: &PositiveOperator) -> Result<Vec<f64>> {
        check_dims(self.dim, rho.dim())?;
        let l = alpha_embedding(rho, self.alpha)?;
        Ok(self
            .basis
            .iter()
            .map(|a| trace_product(a, l.matrix()).re)
            .collect())
    }

    /// The operator `ρ` with `lα(ρ) = Σ θⁱAᵢ`; fails outside the cone.
    pub fn point(&self, theta: &[f64]) -> Result<PositiveOperator> {
        check_dims(self.len(), theta.len())?;
        let mut l = CMatrix::zeros(self.dim, self.dim);
        for (a, th) in self.basis.iter().zip(theta) {
            l += a * Complex64::new(*th, 0.0);
        }
        let l = HermitianOperator::symmetrized(l);
        let spec = hermitian_eig(l.matrix())?;
        spec.check_positive()?;
        let r = self.alpha.embedding_exponent();
        let m = spec.map(|v| ((r * v).ln() / r).exp());
        PositiveOperator::new(HermitianOperator::symmetrized(m))
    }

    /// Quantum α-divergence between the chart points `θ₁` and `θ₂`.
    pub fn divergence(&self, theta1: &[f64], theta2: &[f64]) -> Result<f64> {
        quantum_alpha_divergence_closed(&self.point(theta1)?, &self.point(theta2)?, self.alpha)
    }
}
