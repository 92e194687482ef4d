//! Geometry of the cone of positive-definite Hermitian operators.
//!
//! The α-embedding `lα(ρ) = (2/(1−α))·ρ^((1−α)/2)` maps the cone into the real
//! vector space of Hermitian operators; its pushforward is the α-representation,
//! α-geodesics are straight lines in its image, and the Wigner–Yanase–Dyson metric
//! pairs the (α)- and (−α)-representations by the trace. Derivatives of matrix
//! powers are evaluated with the Daleckii–Krein formula in the eigenbasis of the base
//! point, so nothing here assumes the operators commute.

mod basis;
mod divergence;
mod geometry;
mod operator;

pub use basis::{hermitian_basis, ThetaChart};
pub use divergence::{
    canonical_divergence_numeric_q, density_alpha_divergence, furuichi_q_divergence,
    quantum_alpha_divergence_closed, quantum_q_divergence, quantum_relative_entropy,
    RelativeEntropyForm,
};
pub use geometry::{
    alpha_embedding, alpha_geodesic_q, alpha_parallel_transport, alpha_representation,
    inverse_alpha_representation, velocity_representations, wyd_components_theta, wyd_metric,
};
pub use operator::{real_trace, DensityOperator, HermitianOperator, PositiveOperator, QTangent};
