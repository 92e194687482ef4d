//! Numerical kernels shared by both geometries: Gauss–Legendre quadrature on
//! `[0, 1]`, a cyclic Jacobi eigensolver for small Hermitian matrices, spectral
//! matrix functions with their Daleckii–Krein Fréchet derivatives, and
//! product-stencil finite differences for mixed partials of two-point functions.

mod eig;
mod fd;
mod matfun;
mod quadrature;

pub use eig::{hermitian_eig, SpectralDecomposition};
pub use fd::{mixed_partial, second_mixed, third_mixed, FdConfig, Slot, ThirdPattern};
pub use matfun::{
    frechet_power, matrix_power, power_divided_difference, DEGENERACY_TOL, POSITIVITY_TOL,
};
pub use quadrature::{gauss_legendre_rule, integrate, try_integrate, QuadratureRule};

pub use num_complex::Complex64;

/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<Complex64>;

/// Frobenius norm of a complex matrix.
pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `Tr(A·B) = Σᵢⱼ Aᵢⱼ·Bⱼᵢ` without forming the product; fixed summation order.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}
