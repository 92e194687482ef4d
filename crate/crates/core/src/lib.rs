//! # canondiv
//!
//! Canonical divergence of the flat α-geometries on two cones:
//!
//! - the cone of strictly positive measures `M₊ ⊂ ℝⁿ` with the Fisher metric and
//!   the α-connections ([`classical`]);
//! - the cone of positive-definite Hermitian operators with the
//!   Wigner–Yanase–Dyson metric and the quantum α-connections ([`quantum`]).
//!
//! The canonical divergence is computed as the geodesic integral
//!
//! ```text
//! D(p, q) = ∫₀¹ t · ‖γ̇(t)‖²_{γ(t)} dt,   γ the α-geodesic with γ(0) = p, γ(1) = q,
//! ```
//!
//! by Gauss–Legendre quadrature, and compared against the closed-form α-divergences,
//! their Tsallis rescalings and the Kullback–Leibler / relative-entropy limits.
//! [`recovery`] goes the other way: it recovers the metric and the pair of dual
//! connections from any divergence by finite differences at the diagonal and checks
//! duality and flatness.
//!
//! ```rust
//! use canondiv::classical::{alpha_divergence_closed, canonical_divergence_numeric, PositiveMeasure};
//! use canondiv::numkit::gauss_legendre_rule;
//! use canondiv::AlphaParam;
//!
//! let p = PositiveMeasure::new(vec![1.0, 2.0]).unwrap();
//! let q = PositiveMeasure::new(vec![2.0, 1.0]).unwrap();
//! let alpha = AlphaParam::new(0.0).unwrap();
//! let rule = gauss_legendre_rule(64).unwrap();
//!
//! let numeric = canonical_divergence_numeric(&p, &q, alpha, &rule).unwrap();
//! let closed = alpha_divergence_closed(&p, &q, alpha).unwrap();
//! assert!((numeric - closed).abs() < 1e-12);
//! assert!((closed - (12.0 - 8.0 * 2f64.sqrt())).abs() < 1e-12);
//! ```

#![forbid(unsafe_code)]

mod alpha;
pub mod classical;
mod error;
pub mod numkit;
pub mod quantum;
pub mod recovery;
pub mod report;
pub mod sample;
mod tensor;
pub mod verify;

pub use alpha::AlphaParam;
pub use error::{Error, Result};
pub use numkit::{CMatrix, Complex64};
pub use tensor::Tensor3;

/// Default number of Gauss–Legendre nodes for divergence quadrature.
pub const DEFAULT_NODES: usize = 64;
