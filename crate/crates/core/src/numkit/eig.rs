use nalgebra::DMatrix;

use super::{frobenius, CMatrix, Complex64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues (ascending) and the unitary matrix of column eigenvectors of a
/// Hermitian matrix, `H = U·diag(λ)·U†`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `U·diag(f(λᵢ))·U†`.
    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> CMatrix {
        let diag: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let u = &self.eigenvectors;
        let n = self.dim();
        CMatrix::from_fn(n, n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, d) in diag.iter().enumerate() {
                acc += u[(i, k)] * d * u[(j, k)].conj();
            }
            acc
        })
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(|l| l)
    }

    /// `U†·X·U`: `X` expressed in the eigenbasis.
    pub fn to_eigenbasis(&self, x: &CMatrix) -> CMatrix {
        self.eigenvectors.adjoint() * x * &self.eigenvectors
    }

    /// `U·Y·U†`: back from the eigenbasis.
    pub fn from_eigenbasis(&self, y: &CMatrix) -> CMatrix {
        &self.eigenvectors * y * self.eigenvectors.adjoint()
    }

    /// `U·(X̃ ∘ W)·U†` with `X̃ = U†XU` and `W` a real multiplier (Schur product).
    pub fn schur_multiply(&self, x: &CMatrix, weights: &DMatrix<f64>) -> CMatrix {
        let mut xt = self.to_eigenbasis(x);
        for (z, w) in xt.iter_mut().zip(weights.iter()) {
            *z *= *w;
        }
        self.from_eigenbasis(&xt)
    }

    /// Inverse of [`schur_multiply`](Self::schur_multiply); `W` must have no zero entries.
    pub fn schur_divide(&self, x: &CMatrix, weights: &DMatrix<f64>) -> CMatrix {
        let mut xt = self.to_eigenbasis(x);
        for (z, w) in xt.iter_mut().zip(weights.iter()) {
            *z /= *w;
        }
        self.from_eigenbasis(&xt)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is checked against `‖H − H†‖_F ≤ 1e-12·‖H‖_F` and then symmetrized.
/// Output is deterministic for a given input: the sweep order is fixed and ties in
/// the eigenvalue sort keep their Jacobi order.
pub fn hermitian_eig(h: &CMatrix) -> Result<SpectralDecomposition> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::invalid(format!(
            "matrix must be square, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    if let Some(z) = h.iter().find(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::domain(
            if z.re.is_finite() { z.im } else { z.re },
            "matrix entry",
        ));
    }
    let norm = frobenius(h);
    let asymmetry = frobenius(&(h - h.adjoint()));
    if asymmetry > HERMITIAN_TOL * norm {
        return Err(Error::NotHermitian { asymmetry, norm });
    }

    let mut a = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let mut v = CMatrix::identity(n, n);

    let mut converged = n <= 1;
    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // after a few sweeps, entries below the diagonal resolution are dropped
                if sweep > 3
                    && app.abs() + 100.0 * r == app.abs()
                    && aqq.abs() + 100.0 * r == aqq.abs()
                {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotate(&mut a, &mut v, p, q, apq / r, r, app, aqq);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Applies `A ← J†AJ`, `V ← VJ` with the unitary `J = Φ·R` that annihilates `A[p,q]`:
/// `Φ = diag(…, e*, …)` at index `q` makes the pivot real, `R` is the real rotation.
#[allow(clippy::too_many_arguments)]
fn rotate(
    a: &mut CMatrix,
    v: &mut CMatrix,
    p: usize,
    q: usize,
    phase: Complex64,
    r: f64,
    app: f64,
    aqq: f64,
) {
    let n = a.nrows();
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let e = phase.conj();
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = e * -s;
    let jqq = e * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}
