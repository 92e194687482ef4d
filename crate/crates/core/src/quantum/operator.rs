use crate::error::{check_dims, Error, Result};
use crate::numkit::{frobenius, hermitian_eig, CMatrix, Complex64, SpectralDecomposition};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const IMAGINARY_TOL: f64 = 1e-10;

/// Real part of a trace, rejecting an imaginary part above `1e-10·(1 + |re|)`.
pub fn real_trace(z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_TOL * (1.0 + z.re.abs()) {
        return Err(Error::ImaginaryResidue {
            real: z.re,
            imag: z.im,
        });
    }
    Ok(z.re)
}

/// Self-adjoint complex matrix, symmetrized on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator(CMatrix);

/// Tangent vectors of the operator cone are Hermitian operators; the base point is
/// passed alongside.
pub type QTangent = HermitianOperator;

impl HermitianOperator {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::invalid(format!(
                "operator must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(Error::invalid("operator must have dimension at least 1"));
        }
        if let Some(z) = m.iter().find(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::invalid(format!("non-finite operator entry {z}")));
        }
        let norm = frobenius(&m);
        let asymmetry = frobenius(&(&m - m.adjoint()));
        if asymmetry > HERMITIAN_TOL * norm.max(1.0) {
            return Err(Error::NotHermitian { asymmetry, norm });
        }
        Ok(Self::symmetrized(m))
    }

    /// `(M + M†)/2` without a tolerance check; for matrices Hermitian by construction.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let mut h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        for i in 0..h.nrows() {
            h[(i, i)].im = 0.0;
        }
        Self(h)
    }

    /// Real symmetric operator from row-major entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        check_dims(n * n, entries.len())?;
        Self::new(CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(entries[i * n + j], 0.0)
        }))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        Self::new(CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(if i == j { values[i] } else { 0.0 }, 0.0)
        }))
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n, n))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.0[(i, i)].re).sum()
    }

    pub fn frobenius(&self) -> f64 {
        frobenius(&self.0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self(&self.0 * Complex64::new(c, 0.0))
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// `Tr(self·other)`, real for Hermitian factors.
    pub fn trace_with(&self, other: &Self) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        real_trace(crate::numkit::trace_product(&self.0, &other.0))
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.0[(i, j)].norm() == 0.0))
    }
}

/// Positive-definite Hermitian operator with its spectral decomposition cached.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveOperator {
    op: HermitianOperator,
    spectrum: SpectralDecomposition,
}

impl PositiveOperator {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let spectrum = hermitian_eig(op.matrix())?;
        spectrum.check_positive()?;
        Ok(Self { op, spectrum })
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianOperator::new(m)?)
    }

    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_real(n, entries)?)
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::diagonal(values)?)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(HermitianOperator::identity(n)).expect("identity is positive")
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn trace(&self) -> f64 {
        self.op.trace()
    }

    pub fn power(&self, s: f64) -> HermitianOperator {
        HermitianOperator::symmetrized(
            self.spectrum
                .power(s)
                .expect("positivity checked at construction"),
        )
    }

    pub fn log(&self) -> HermitianOperator {
        HermitianOperator::symmetrized(
            self.spectrum
                .log()
                .expect("positivity checked at construction"),
        )
    }
}

/// Positive operator with unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator(PositiveOperator);

impl DensityOperator {
    pub fn new(op: PositiveOperator) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::invalid(format!(
                "density operator must have unit trace, got {tr}"
            )));
        }
        Ok(Self(op))
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(PositiveOperator::from_matrix(m)?)
    }

    pub fn operator(&self) -> &PositiveOperator {
        &self.0
    }
}

impl AsRef<PositiveOperator> for DensityOperator {
    fn as_ref(&self) -> &PositiveOperator {
        &self.0
    }
}
