use nalgebra::DMatrix;

use crate::alpha::AlphaParam;
use crate::error::{check_dims, Result};
use crate::numkit::{
    power_divided_difference, trace_product, CMatrix, SpectralDecomposition, DEGENERACY_TOL,
};

use super::basis::hermitian_basis;
use super::operator::{real_trace, HermitianOperator, PositiveOperator, QTangent};

/// Divided differences of `λ ↦ λ^s/s`, with `s = 0` read as `ln λ`.
///
/// `(1/r)·Σ` of these against `X̃` is the α-representation with `r = (1−α)/2`; the
/// `s = 0` branch is the exponential (α = 1) representation.
pub(crate) fn representation_weights(spec: &SpectralDecomposition, s: f64) -> Result<DMatrix<f64>> {
    spec.check_positive()?;
    let l = spec.eigenvalues();
    let n = spec.dim();
    Ok(DMatrix::from_fn(n, n, |i, j| {
        if s == 0.0 {
            log_divided_difference(l[i], l[j])
        } else {
            power_divided_difference(l[i], l[j], s) / s
        }
    }))
}

fn log_divided_difference(x: f64, y: f64) -> f64 {
    if (x - y).abs() > DEGENERACY_TOL * x.max(y) {
        (x.ln() - y.ln()) / (x - y)
    } else {
        2.0 / (x + y)
    }
}

/// `lα(ρ) = (2/(1−α))·ρ^((1−α)/2)`; needs α < 1.
pub fn alpha_embedding(rho: &PositiveOperator, alpha: AlphaParam) -> Result<HermitianOperator> {
    let r = alpha.require_below_one()?.embedding_exponent();
    Ok(rho.power(r).scaled(1.0 / r))
}

/// α-representation `X⁽ᵅ⁾ = (d/dt) lα(ρ + tX)|₀ = (2/(1−α))·D(ρ^((1−α)/2))[X]`.
///
/// Defined for every α ∈ [−1, 1]; at α = 1 it is the derivative of `log ρ`.
pub fn alpha_representation(
    rho: &PositiveOperator,
    x: &QTangent,
    alpha: AlphaParam,
) -> Result<HermitianOperator> {
    check_dims(rho.dim(), x.dim())?;
    let w = representation_weights(rho.spectrum(), alpha.embedding_exponent())?;
    Ok(HermitianOperator::symmetrized(
        rho.spectrum().schur_multiply(x.matrix(), &w),
    ))
}

/// The tangent vector at `ρ` whose α-representation is `v`.
pub fn inverse_alpha_representation(
    rho: &PositiveOperator,
    v: &HermitianOperator,
    alpha: AlphaParam,
) -> Result<QTangent> {
    check_dims(rho.dim(), v.dim())?;
    let w = representation_weights(rho.spectrum(), alpha.embedding_exponent())?;
    Ok(HermitianOperator::symmetrized(
        rho.spectrum().schur_divide(v.matrix(), &w),
    ))
}

/// α-parallel transport of `X ∈ T_{ρ₁}` to `ρ₂`: the vector with the same
/// α-representation.
pub fn alpha_parallel_transport(
    rho1: &PositiveOperator,
    rho2: &PositiveOperator,
    x: &QTangent,
    alpha: AlphaParam,
) -> Result<QTangent> {
    check_dims(rho1.dim(), rho2.dim())?;
    let rep = alpha_representation(rho1, x, alpha)?;
    inverse_alpha_representation(rho2, &rep, alpha)
}

/// `(A, B, M(t))` with `A = ρ₁^r`, `B = ρ₂^r`, `M(t) = (1−t)A + tB`, `r = (1−α)/2`.
pub(crate) struct OperatorChord {
    pub r: f64,
    pub a: CMatrix,
    pub b: CMatrix,
}

impl OperatorChord {
    pub fn new(
        rho1: &PositiveOperator,
        rho2: &PositiveOperator,
        alpha: AlphaParam,
    ) -> Result<Self> {
        check_dims(rho1.dim(), rho2.dim())?;
        let r = alpha.require_below_one()?.embedding_exponent();
        Ok(Self {
            r,
            a: rho1.power(r).into_matrix(),
            b: rho2.power(r).into_matrix(),
        })
    }

    pub fn direction(&self) -> CMatrix {
        &self.b - &self.a
    }

    pub fn midpoint(&self, t: f64) -> Result<PositiveOperator> {
        let m = &self.a * num_complex::Complex64::new(1.0 - t, 0.0)
            + &self.b * num_complex::Complex64::new(t, 0.0);
        PositiveOperator::new(HermitianOperator::symmetrized(m))
    }
}

/// α-geodesic `((1−t)·ρ₁^((1−α)/2) + t·ρ₂^((1−α)/2))^(2/(1−α))`, endpoints exact.
pub fn alpha_geodesic_q(
    rho1: &PositiveOperator,
    rho2: &PositiveOperator,
    alpha: AlphaParam,
    t: f64,
) -> Result<PositiveOperator> {
    if !(0.0..=1.0).contains(&t) {
        return Err(crate::Error::invalid(format!(
            "curve parameter must lie in [0, 1], got {t}"
        )));
    }
    let chord = OperatorChord::new(rho1, rho2, alpha)?;
    if t == 0.0 {
        return Ok(rho1.clone());
    }
    if t == 1.0 {
        return Ok(rho2.clone());
    }
    let m = chord.midpoint(t)?;
    let g = m.power(1.0 / chord.r);
    PositiveOperator::new(g)
}

/// The (α)- and (−α)-representations of the geodesic velocity `γ̇(t)`:
///
/// ```text
/// V⁽ᵅ⁾  = (d/dt) lα(γ(t))  = (2/(1−α))·(B − A)
/// V⁽⁻ᵅ⁾ = (d/dt) l₋α(γ(t)) = (2/(1+α))·D(M ↦ M^((1+α)/(1−α)))[B − A] at M(t)
/// ```
///
/// The second is a Daleckii–Krein derivative at `M(t)`; at α = −1 it is read as
/// the derivative of `log M^(1/r)`.
pub fn velocity_representations(
    rho1: &PositiveOperator,
    rho2: &PositiveOperator,
    alpha: AlphaParam,
    t: f64,
) -> Result<(HermitianOperator, HermitianOperator)> {
    let chord = OperatorChord::new(rho1, rho2, alpha)?;
    let d = chord.direction();
    let v_alpha = HermitianOperator::symmetrized(&d / num_complex::Complex64::new(chord.r, 0.0));
    let m = chord.midpoint(t)?;
    let s = alpha.dual_exponent() / chord.r;
    let w = representation_weights(m.spectrum(), s)?;
    let v_dual = m.spectrum().schur_multiply(&d, &w) / num_complex::Complex64::new(chord.r, 0.0);
    Ok((v_alpha, HermitianOperator::symmetrized(v_dual)))
}

/// Wigner–Yanase–Dyson metric `Tr(X⁽ᵅ⁾·Y⁽⁻ᵅ⁾)`.
pub fn wyd_metric(
    rho: &PositiveOperator,
    x: &QTangent,
    y: &QTangent,
    alpha: AlphaParam,
) -> Result<f64> {
    let xa = alpha_representation(rho, x, alpha)?;
    let ym = alpha_representation(rho, y, alpha.dual())?;
    xa.trace_with(&ym)
}

/// Components `g_ij = Tr(Aᵢ · Xⱼ⁽⁻ᵅ⁾)` of the WYD metric in the θ-chart, where `Xⱼ` is
/// the tangent vector with α-representation `Aⱼ` (`∂lα/∂θʲ = Aⱼ`).
///
/// In the eigenbasis of `ρ` this is `Σ_kl (Ãᵢ)_kl (Ãⱼ)_lk · w₋(k,l)/w₊(k,l)` with the
/// representation weights of exponents `(1±α)/2`; for commuting data it reduces to
/// `Tr(Aᵢ·λ^α·Aⱼ)`.
pub fn wyd_components_theta(rho: &PositiveOperator, alpha: AlphaParam) -> Result<DMatrix<f64>> {
    let alpha = alpha.require_below_one()?;
    let spec = rho.spectrum();
    let w_plus = representation_weights(spec, alpha.embedding_exponent())?;
    let w_minus = representation_weights(spec, alpha.dual_exponent())?;
    let ratio = w_minus.component_div(&w_plus);
    let basis: Vec<CMatrix> = hermitian_basis(rho.dim())
        .iter()
        .map(|a| spec.to_eigenbasis(a))
        .collect();
    let weighted: Vec<CMatrix> = basis
        .iter()
        .map(|a| {
            let mut w = a.clone();
            for (z, r) in w.iter_mut().zip(ratio.iter()) {
                *z *= *r;
            }
            w
        })
        .collect();
    let k = basis.len();
    let mut g = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = real_trace(trace_product(&basis[i], &weighted[j]))?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{alpha_geodesic, PositiveMeasure};
    use crate::sample::{random_hermitian, random_positive_operator, seeded_rng};
    use num_complex::Complex64;

    fn a(v: f64) -> AlphaParam {
        AlphaParam::new(v).unwrap()
    }

    fn herm(n: usize, entries: &[f64]) -> HermitianOperator {
        HermitianOperator::from_real(n, entries).unwrap()
    }

    fn pos(n: usize, entries: &[f64]) -> PositiveOperator {
        PositiveOperator::from_real(n, entries).unwrap()
    }

    fn diag_of(rho: &PositiveOperator) -> Vec<f64> {
        (0..rho.dim()).map(|i| rho.matrix()[(i, i)].re).collect()
    }

    #[test]
    fn embedding_examples() {
        let rho = PositiveOperator::diagonal(&[4.0, 9.0]).unwrap();
        let e = alpha_embedding(&rho, a(0.0)).unwrap();
        assert!(e.max_abs_diff(&HermitianOperator::diagonal(&[4.0, 6.0]).unwrap()) < 1e-14);
        let m = alpha_embedding(&rho, a(-1.0)).unwrap();
        assert!(m.max_abs_diff(rho.operator()) < 1e-14);
        assert!(alpha_embedding(&rho, a(1.0)).is_err());
    }

    #[test]
    fn representation_examples() {
        let x = herm(2, &[0.0, 1.0, 1.0, 0.0]);
        let rho = PositiveOperator::diagonal(&[1.0, 4.0]).unwrap();
        let rep = alpha_representation(&rho, &x, a(0.0)).unwrap();
        assert!(rep.max_abs_diff(&x.scaled(2.0 / 3.0)) < 1e-14);

        let id = PositiveOperator::identity(3);
        let mut rng = seeded_rng(3);
        let y = HermitianOperator::new(random_hermitian(&mut rng, 3)).unwrap();
        for al in [-0.7, 0.0, 0.4, 1.0] {
            assert!(
                alpha_representation(&id, &y, a(al))
                    .unwrap()
                    .max_abs_diff(&y)
                    < 1e-13
            );
        }
        let rho = random_positive_operator(&mut rng, 3, 0.2, 4.0);
        assert!(
            alpha_representation(&rho, &y, a(-1.0))
                .unwrap()
                .max_abs_diff(&y)
                < 1e-13
        );
    }

    #[test]
    fn representation_matches_derivative_of_embedding() {
        let mut rng = seeded_rng(8);
        let rho = random_positive_operator(&mut rng, 3, 0.5, 3.0);
        let x = HermitianOperator::new(random_hermitian(&mut rng, 3)).unwrap();
        let al = a(0.3);
        let h = 1e-5;
        let shift = |c: f64| {
            let m = rho.matrix() + x.matrix() * Complex64::new(c, 0.0);
            alpha_embedding(&PositiveOperator::from_matrix(m).unwrap(), al).unwrap()
        };
        let fd = (shift(h).into_matrix() - shift(-h).into_matrix()) / Complex64::new(2.0 * h, 0.0);
        let rep = alpha_representation(&rho, &x, al).unwrap();
        assert!((fd - rep.matrix()).camax() < 1e-8);
    }

    #[test]
    fn transport_examples() {
        let mut rng = seeded_rng(5);
        let r1 = random_positive_operator(&mut rng, 4, 0.2, 4.0);
        let r2 = random_positive_operator(&mut rng, 4, 0.2, 4.0);
        let r3 = random_positive_operator(&mut rng, 4, 0.2, 4.0);
        let x = HermitianOperator::new(random_hermitian(&mut rng, 4)).unwrap();
        for al in [-0.9, -0.2, 0.5, 0.9] {
            let al = a(al);
            let same = alpha_parallel_transport(&r1, &r1, &x, al).unwrap();
            assert!(same.max_abs_diff(&x) < 1e-12);
            let back = alpha_parallel_transport(
                &r3,
                &r1,
                &alpha_parallel_transport(
                    &r2,
                    &r3,
                    &alpha_parallel_transport(&r1, &r2, &x, al).unwrap(),
                    al,
                )
                .unwrap(),
                al,
            )
            .unwrap();
            assert!(back.max_abs_diff(&x) < 1e-10);
            let y = alpha_parallel_transport(&r1, &r2, &x, al).unwrap();
            let lhs = alpha_representation(&r2, &y, al).unwrap();
            assert!(lhs.max_abs_diff(&alpha_representation(&r1, &x, al).unwrap()) < 1e-11);
        }
    }

    #[test]
    fn diagonal_transport_scales_entries() {
        let (p1, p2) = ([1.0, 2.5, 0.4], [3.0, 0.7, 1.1]);
        let r1 = PositiveOperator::diagonal(&p1).unwrap();
        let r2 = PositiveOperator::diagonal(&p2).unwrap();
        let x = HermitianOperator::diagonal(&[0.3, -1.0, 2.0]).unwrap();
        let al = 0.4;
        let y = alpha_parallel_transport(&r1, &r2, &x, a(al)).unwrap();
        for i in 0..3 {
            let expect = [0.3, -1.0, 2.0][i] * (p2[i] / p1[i]).powf(0.5 * (1.0 + al));
            assert!((y.matrix()[(i, i)].re - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn geodesic_endpoints_and_mixture_line() {
        let r1 = pos(2, &[2.0, 1.0, 1.0, 2.0]);
        let r2 = pos(2, &[1.0, 0.3, 0.3, 1.5]);
        for al in [-1.0, -0.3, 0.6] {
            let g0 = alpha_geodesic_q(&r1, &r2, a(al), 0.0).unwrap();
            let g1 = alpha_geodesic_q(&r1, &r2, a(al), 1.0).unwrap();
            assert!(g0.operator().max_abs_diff(r1.operator()) < 1e-11);
            assert!(g1.operator().max_abs_diff(r2.operator()) < 1e-11);
        }
        let t = 0.35;
        let g = alpha_geodesic_q(&r1, &r2, a(-1.0), t).unwrap();
        let line =
            r1.matrix() * Complex64::new(1.0 - t, 0.0) + r2.matrix() * Complex64::new(t, 0.0);
        assert!((g.matrix() - line).camax() < 1e-13);
        assert!(alpha_geodesic_q(&r1, &r2, a(0.0), 1.5).is_err());
        assert!(alpha_geodesic_q(&r1, &r2, a(1.0), 0.5).is_err());
    }

    #[test]
    fn commuting_geodesic_reduces_to_classical() {
        let (p, q) = (vec![1.0, 2.0, 0.5], vec![3.0, 0.2, 1.0]);
        let (r1, r2) = (
            PositiveOperator::diagonal(&p).unwrap(),
            PositiveOperator::diagonal(&q).unwrap(),
        );
        let (mp, mq) = (
            PositiveMeasure::new(p).unwrap(),
            PositiveMeasure::new(q).unwrap(),
        );
        for al in [-0.5, 0.0, 0.7] {
            for t in [0.2, 0.5, 0.9] {
                let g = alpha_geodesic_q(&r1, &r2, a(al), t).unwrap();
                let c = alpha_geodesic(&mp, &mq, a(al), t).unwrap();
                for (x, y) in diag_of(&g).iter().zip(c.weights()) {
                    assert!((x - y).abs() < 1e-13 * (1.0 + y));
                }
            }
        }
    }

    #[test]
    fn velocity_examples() {
        let r1 = pos(2, &[2.0, 1.0, 1.0, 2.0]);
        let r2 = pos(2, &[1.0, 0.3, 0.3, 1.5]);
        let (v, _) = velocity_representations(&r1, &r1, a(0.2), 0.5).unwrap();
        assert!(v.frobenius() == 0.0);
        let diff = HermitianOperator::new(r2.matrix() - r1.matrix()).unwrap();
        for t in [0.0, 0.4, 1.0] {
            let (v, _) = velocity_representations(&r1, &r2, a(-1.0), t).unwrap();
            assert!(v.max_abs_diff(&diff) < 1e-14);
        }
    }

    #[test]
    fn velocity_pairing_on_diagonals() {
        let (p, q) = ([1.0, 2.0, 0.5], [3.0, 0.2, 1.0]);
        let (r1, r2) = (
            PositiveOperator::diagonal(&p).unwrap(),
            PositiveOperator::diagonal(&q).unwrap(),
        );
        for al in [-0.6, 0.0, 0.5] {
            let r = 0.5 * (1.0 - al);
            let t = 0.3;
            let (va, vm) = velocity_representations(&r1, &r2, a(al), t).unwrap();
            let pairing = va.trace_with(&vm).unwrap();
            let expect: f64 = (0..3)
                .map(|i| {
                    let (x, y) = (p[i].powf(r), q[i].powf(r));
                    let m = (1.0 - t) * x + t * y;
                    m.powf(al / r) * (y - x).powi(2) / (r * r)
                })
                .sum();
            assert!((pairing - expect).abs() < 1e-12 * (1.0 + expect));
        }
    }

    #[test]
    fn velocity_dual_is_derivative_along_curve() {
        // V⁽⁻ᵅ⁾ = d/dt l₋α(γ(t))
        let mut rng = seeded_rng(21);
        let r1 = random_positive_operator(&mut rng, 3, 0.3, 3.0);
        let r2 = random_positive_operator(&mut rng, 3, 0.3, 3.0);
        let al = a(0.4);
        let t = 0.45;
        let h = 1e-5;
        let dual_embed = |s: f64| {
            alpha_embedding(&alpha_geodesic_q(&r1, &r2, al, s).unwrap(), al.dual())
                .unwrap()
                .into_matrix()
        };
        let fd = (dual_embed(t + h) - dual_embed(t - h)) / Complex64::new(2.0 * h, 0.0);
        let (_, vm) = velocity_representations(&r1, &r2, al, t).unwrap();
        assert!((fd - vm.matrix()).camax() < 1e-7);
    }

    #[test]
    fn wyd_examples() {
        let mut rng = seeded_rng(13);
        let x = HermitianOperator::new(random_hermitian(&mut rng, 3)).unwrap();
        let y = HermitianOperator::new(random_hermitian(&mut rng, 3)).unwrap();
        let id = PositiveOperator::identity(3);
        let g = wyd_metric(&id, &x, &y, a(0.3)).unwrap();
        assert!((g - x.trace_with(&y).unwrap()).abs() < 1e-13);

        let rho = PositiveOperator::diagonal(&[0.5, 2.0, 3.0]).unwrap();
        let xd = HermitianOperator::diagonal(&[1.0, -2.0, 0.5]).unwrap();
        let fisher = 1.0 / 0.5 + 4.0 / 2.0 + 0.25 / 3.0;
        for al in [-0.8, 0.0, 0.6] {
            assert!((wyd_metric(&rho, &xd, &xd, a(al)).unwrap() - fisher).abs() < 1e-13);
        }

        let rho = random_positive_operator(&mut rng, 3, 0.2, 4.0);
        for al in [-0.9, -0.1, 0.5] {
            let gxy = wyd_metric(&rho, &x, &y, a(al)).unwrap();
            assert!((gxy - wyd_metric(&rho, &y, &x, a(al)).unwrap()).abs() < 1e-12);
            assert!((gxy - wyd_metric(&rho, &y, &x, a(-al)).unwrap()).abs() < 1e-12);
            assert!(wyd_metric(&rho, &x, &x, a(al)).unwrap() > 0.0);
        }
    }

    #[test]
    fn components_examples() {
        let g = wyd_components_theta(&PositiveOperator::identity(3), a(0.0)).unwrap();
        assert!((g - DMatrix::identity(9, 9)).camax() < 1e-13);

        let mut rng = seeded_rng(17);
        for n in 2..=4 {
            let rho = random_positive_operator(&mut rng, n, 0.2, 4.0);
            for al in [-0.8, 0.0, 0.7] {
                let g = wyd_components_theta(&rho, a(al)).unwrap();
                assert!((&g - g.transpose()).camax() < 1e-12);
                assert!(g.symmetric_eigenvalues().min() > 0.0);
            }
        }
    }

    #[test]
    fn components_commuting_reduction() {
        let lam = [0.5, 2.0, 1.3];
        let rho = PositiveOperator::diagonal(&lam).unwrap();
        let al = 0.4;
        let g = wyd_components_theta(&rho, a(al)).unwrap();
        let basis = hermitian_basis(3);
        let scaled = CMatrix::from_fn(3, 3, |i, j| {
            Complex64::new(if i == j { lam[i].powf(al) } else { 0.0 }, 0.0)
        });
        let is_diag =
            |m: &CMatrix| (0..3).all(|i| (0..3).all(|j| i == j || m[(i, j)].norm() == 0.0));
        let diagonal: Vec<usize> = (0..basis.len()).filter(|&i| is_diag(&basis[i])).collect();
        assert_eq!(diagonal.len(), 3);
        for &i in &diagonal {
            for &j in &diagonal {
                let expect = (&basis[i] * &scaled * &basis[j]).trace().re;
                assert!((g[(i, j)] - expect).abs() < 1e-13);
            }
        }
    }
}
