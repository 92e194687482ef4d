use std::path::PathBuf;

use anyhow::Result;
use canondiv::numkit::{gauss_legendre_rule, FdConfig};
use canondiv::quantum::{canonical_divergence_numeric_q, ThetaChart};
use canondiv::recovery::{
    self, classical_alpha_divergence, classical_canonical_divergence, euclidean_divergence,
    CURVATURE_MAX_COORDS,
};
use canondiv::verify::{CURVATURE_TOLERANCE, RECOVERY_TOLERANCE};
use canondiv::{AlphaParam, DEFAULT_NODES};
use clap::ValueEnum;
use serde::Serialize;

use crate::input::{Document, Kind};
use crate::{usage, write_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Closed-form α-divergence.
    Alpha,
    /// Geodesic-quadrature canonical divergence.
    Canonical,
    /// Half squared Euclidean distance of the coordinates.
    Euclidean,
}

#[derive(clap::Args)]
pub struct Args {
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    alpha: f64,
    /// Name of the object to recover at.
    #[arg(long)]
    point: String,
    #[arg(long, value_enum, default_value = "alpha")]
    divergence: Source,
    /// Finite-difference step for second-order partials.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    /// Stencil order: 2, or 4 with Richardson extrapolation.
    #[arg(long, default_value_t = 4)]
    order: u8,
    #[arg(long, default_value_t = DEFAULT_NODES)]
    nodes: usize,
    /// Bound on the duality defect.
    #[arg(long, default_value_t = RECOVERY_TOLERANCE)]
    tolerance: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Bounds {
    duality_defect: f64,
    curvature_max: f64,
}

#[derive(Serialize)]
struct RecoveryReport {
    kind: &'static str,
    point: String,
    divergence: String,
    alpha: f64,
    step: f64,
    order: u8,
    coordinates: Vec<f64>,
    metric: Vec<Vec<f64>>,
    christoffel: Vec<Vec<Vec<f64>>>,
    christoffel_dual: Vec<Vec<Vec<f64>>>,
    duality_defect: f64,
    /// Absent above the coordinate count the curvature check supports.
    curvature_max: Option<f64>,
    bounds: Bounds,
    pass: bool,
}

type Divergence = Box<dyn Fn(&[f64], &[f64]) -> canondiv::Result<f64>>;

pub fn run(args: &Args) -> Result<bool> {
    let doc = Document::load(&args.input, args.kind)?;
    let cfg = FdConfig::new(args.step, args.order)?;
    let alpha = AlphaParam::new(args.alpha)?;
    if args.divergence != Source::Euclidean {
        alpha.require_interior()?;
    }
    if !(args.tolerance.is_finite() && args.tolerance >= 0.0) {
        return Err(usage(format!(
            "--tolerance must be a nonnegative number, got {}",
            args.tolerance
        )));
    }
    let (coordinates, d): (Vec<f64>, Divergence) = match doc.kind() {
        Kind::Classical => {
            let p = doc.measure(&args.point)?.weights().to_vec();
            let d: Divergence = match args.divergence {
                Source::Alpha => Box::new(classical_alpha_divergence(alpha)),
                Source::Canonical => Box::new(classical_canonical_divergence(
                    alpha,
                    gauss_legendre_rule(args.nodes)?,
                )),
                Source::Euclidean => Box::new(euclidean_divergence),
            };
            (p, d)
        }
        Kind::Quantum => {
            let rho = doc.operator(&args.point)?;
            let chart = ThetaChart::new(
                rho.dim(),
                if args.divergence == Source::Euclidean {
                    AlphaParam::new(0.0)?
                } else {
                    alpha
                },
            )?;
            let theta = chart.coordinates(rho)?;
            let d: Divergence = match args.divergence {
                Source::Alpha => Box::new(move |x: &[f64], y: &[f64]| chart.divergence(x, y)),
                Source::Canonical => {
                    let rule = gauss_legendre_rule(args.nodes)?;
                    Box::new(move |x: &[f64], y: &[f64]| {
                        canonical_divergence_numeric_q(
                            &chart.point(x)?,
                            &chart.point(y)?,
                            alpha,
                            &rule,
                        )
                    })
                }
                Source::Euclidean => Box::new(euclidean_divergence),
            };
            (theta, d)
        }
    };
    let s = recovery::recover_structure(&d, &coordinates, &cfg)?;
    let defect = recovery::duality_defect(&s, &d, &cfg)?;
    let curvature = if coordinates.len() <= CURVATURE_MAX_COORDS {
        Some(recovery::curvature_max(&d, &coordinates, &cfg)?)
    } else {
        None
    };
    let pass = defect <= args.tolerance && curvature.is_none_or(|c| c <= CURVATURE_TOLERANCE);
    let n = s.metric.nrows();
    let report = RecoveryReport {
        kind: doc.kind().as_str(),
        point: args.point.clone(),
        divergence: args
            .divergence
            .to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string(),
        alpha: args.alpha,
        step: args.step,
        order: args.order,
        metric: (0..n)
            .map(|i| (0..n).map(|j| s.metric[(i, j)]).collect())
            .collect(),
        christoffel: s.christoffel.to_nested(),
        christoffel_dual: s.christoffel_dual.to_nested(),
        coordinates,
        duality_defect: defect,
        curvature_max: curvature,
        bounds: Bounds {
            duality_defect: args.tolerance,
            curvature_max: CURVATURE_TOLERANCE,
        },
        pass,
    };
    write_json(&report, args.out.as_deref())?;
    Ok(pass)
}
