//! Seeded random test objects: measures, Hermitian matrices, Haar-like unitaries
//! and positive operators with a prescribed spectral range.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::classical::PositiveMeasure;
use crate::numkit::{CMatrix, Complex64};
use crate::quantum::{DensityOperator, PositiveOperator};

pub type TrialRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Measure with independent entries uniform in `[lo, hi]`.
pub fn random_measure<R: Rng>(rng: &mut R, dim: usize, lo: f64, hi: f64) -> PositiveMeasure {
    let w = (0..dim).map(|_| rng.random_range(lo..=hi)).collect();
    PositiveMeasure::new(w).expect("entries drawn from a positive range")
}

/// Hermitian matrix with real and imaginary parts of every entry uniform in `[−1, 1]`.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.random_range(-1.0..=1.0), 0.0);
        for j in (i + 1)..n {
            let z = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Unitary from the QR factorization of a complex Gaussian matrix, with the
/// phases of `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, k)] *= phase;
        }
    }
    q
}

/// `U·diag(λ)·U†` with `λ` uniform in `[lo, hi]` and `U` from [`random_unitary`].
pub fn random_positive_matrix<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> CMatrix {
    let u = random_unitary(rng, n);
    let spectrum: Vec<f64> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
    let m = CMatrix::from_fn(n, n, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, l) in spectrum.iter().enumerate() {
            acc += u[(i, k)] * *l * u[(j, k)].conj();
        }
        acc
    });
    // exact Hermitian symmetry
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn random_positive_operator<R: Rng>(
    rng: &mut R,
    n: usize,
    lo: f64,
    hi: f64,
) -> PositiveOperator {
    PositiveOperator::from_matrix(random_positive_matrix(rng, n, lo, hi))
        .expect("spectrum drawn from a positive range")
}

/// Density operator: a random positive operator with spectrum in `[0.2, 4]`
/// divided by its trace.
pub fn random_density<R: Rng>(rng: &mut R, n: usize) -> DensityOperator {
    let m = random_positive_matrix(rng, n, 0.2, 4.0);
    let tr = m.trace().re;
    DensityOperator::from_matrix(m / Complex64::new(tr, 0.0)).expect("normalized positive matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::frobenius;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = seeded_rng(1);
        for n in 1..8 {
            let u = random_unitary(&mut rng, n);
            assert!(frobenius(&(u.adjoint() * &u - CMatrix::identity(n, n))) < 1e-13);
        }
    }

    #[test]
    fn seeded_streams_repeat() {
        let a = random_positive_matrix(&mut seeded_rng(9), 4, 0.2, 4.0);
        let b = random_positive_matrix(&mut seeded_rng(9), 4, 0.2, 4.0);
        assert_eq!(a, b);
    }

    #[test]
    fn spectrum_in_range() {
        let mut rng = seeded_rng(2);
        let rho = random_positive_operator(&mut rng, 5, 0.2, 4.0);
        assert!(rho.spectrum().min_eigenvalue() >= 0.2 - 1e-12);
        assert!(rho.spectrum().max_eigenvalue() <= 4.0 + 1e-12);
        let d = random_density(&mut rng, 3);
        assert!((d.operator().trace() - 1.0).abs() < 1e-12);
    }
}
