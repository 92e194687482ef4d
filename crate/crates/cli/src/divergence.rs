use std::path::PathBuf;

use anyhow::Result;
use canondiv::numkit::gauss_legendre_rule;
use canondiv::quantum::{self, DensityOperator, RelativeEntropyForm};
use canondiv::report::{Parameter, Record, Report};
use canondiv::{classical, AlphaParam, DEFAULT_NODES};
use clap::ValueEnum;

use crate::input::{parse_pair, Document, Kind};
use crate::{usage, write_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Geodesic integral; the closed form is the α-divergence.
    Canonical,
    /// Closed-form α-divergence; the quadrature path is the geodesic integral.
    Alpha,
    /// Extended Kullback–Leibler divergence (classical).
    Kl,
    /// Tsallis q-divergence (classical) or quantum q-divergence.
    Tsallis,
    /// Quantum relative entropy.
    RelativeEntropy,
    /// Furuichi's q-divergence (quantum).
    Furuichi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Quadrature,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EntropyForm {
    Standard,
    Extended,
}

#[derive(clap::Args)]
pub struct Args {
    /// Input document (JSON).
    input: PathBuf,
    /// Expected document kind.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, value_enum, default_value = "canonical")]
    family: Family,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Parameter of the tsallis and furuichi families.
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, value_enum, default_value = "closed")]
    method: Method,
    /// Gauss–Legendre nodes for the quadrature path.
    #[arg(long, default_value_t = DEFAULT_NODES)]
    nodes: usize,
    /// Comma-separated `name:name` pairs; all pairs in document order when omitted.
    #[arg(long)]
    pairs: Option<String>,
    /// Relative-entropy form for non-normalized operators.
    #[arg(long, value_enum, default_value = "extended")]
    form: EntropyForm,
    /// Tolerance on the quadrature/closed discrepancy with `--method both`.
    #[arg(long, default_value_t = canondiv::verify::QUADRATURE_TOLERANCE)]
    tolerance: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Param {
    Alpha(AlphaParam),
    Q(f64),
    None,
}

fn validate(args: &Args, kind: Kind) -> Result<Param> {
    use Family::*;
    let allowed = match args.family {
        Canonical | Alpha | Tsallis => true,
        Kl => kind == Kind::Classical,
        RelativeEntropy | Furuichi => kind == Kind::Quantum,
    };
    if !allowed {
        return Err(usage(format!(
            "family {:?} is not defined for {} objects",
            args.family,
            kind.as_str()
        )));
    }
    if !matches!(args.family, Canonical | Alpha) && args.method != Method::Closed {
        return Err(usage(format!(
            "family {:?} only has a closed form",
            args.family
        )));
    }
    let wants_q = matches!(args.family, Tsallis | Furuichi);
    let wants_alpha = matches!(args.family, Canonical | Alpha);
    if args.q.is_some() && !wants_q {
        return Err(usage(
            "--q applies only to the tsallis and furuichi families",
        ));
    }
    if args.alpha.is_some() && !wants_alpha {
        return Err(usage(
            "--alpha applies only to the canonical and alpha families",
        ));
    }
    if !(args.tolerance.is_finite() && args.tolerance >= 0.0) {
        return Err(usage(format!(
            "--tolerance must be a nonnegative number, got {}",
            args.tolerance
        )));
    }
    Ok(if wants_alpha {
        let a = args
            .alpha
            .ok_or_else(|| usage("--alpha is required for this family"))?;
        Param::Alpha(AlphaParam::new(a)?.require_interior()?)
    } else if wants_q {
        Param::Q(
            args.q
                .ok_or_else(|| usage("--q is required for this family"))?,
        )
    } else {
        Param::None
    })
}

fn pairs(args: &Args, doc: &Document) -> Result<Vec<(String, String)>> {
    match &args.pairs {
        Some(spec) => spec.split(',').map(|s| parse_pair(s.trim())).collect(),
        None => {
            let names = doc.names();
            let mut out = Vec::new();
            for i in 0..names.len() {
                for j in i + 1..names.len() {
                    out.push((names[i].to_string(), names[j].to_string()));
                }
            }
            if out.is_empty() {
                return Err(usage(
                    "the document needs at least two objects, or pass --pairs",
                ));
            }
            Ok(out)
        }
    }
}

/// `(quadrature, closed)` values as requested by the method.
type Values = (Option<f64>, Option<f64>);

fn evaluate(args: &Args, doc: &Document, param: &Param, a: &str, b: &str) -> Result<Values> {
    let want_quad = args.method != Method::Closed;
    let want_closed = args.method != Method::Quadrature;
    let rule = if want_quad {
        Some(gauss_legendre_rule(args.nodes)?)
    } else {
        None
    };
    let closed_only = |v: f64| (None, Some(v));
    Ok(match (doc.kind(), param) {
        (Kind::Classical, Param::Alpha(al)) => {
            let (p, q) = (doc.measure(a)?, doc.measure(b)?);
            let quad = rule
                .as_ref()
                .map(|r| classical::canonical_divergence_numeric(p, q, *al, r))
                .transpose()?;
            let closed = want_closed
                .then(|| classical::alpha_divergence_closed(p, q, *al))
                .transpose()?;
            (quad, closed)
        }
        (Kind::Quantum, Param::Alpha(al)) => {
            let (r1, r2) = (doc.operator(a)?, doc.operator(b)?);
            let quad = rule
                .as_ref()
                .map(|r| quantum::canonical_divergence_numeric_q(r1, r2, *al, r))
                .transpose()?;
            let closed = want_closed
                .then(|| quantum::quantum_alpha_divergence_closed(r1, r2, *al))
                .transpose()?;
            (quad, closed)
        }
        (Kind::Classical, Param::Q(q)) => closed_only(classical::tsallis_q_divergence(
            doc.measure(a)?,
            doc.measure(b)?,
            *q,
        )?),
        (Kind::Quantum, Param::Q(q)) => {
            let (r1, r2) = (doc.operator(a)?, doc.operator(b)?);
            closed_only(if args.family == Family::Furuichi {
                quantum::furuichi_q_divergence(r1, r2, *q)?
            } else {
                quantum::quantum_q_divergence(r1, r2, *q)?
            })
        }
        (Kind::Classical, Param::None) => {
            closed_only(classical::kl_extended(doc.measure(a)?, doc.measure(b)?)?)
        }
        (Kind::Quantum, Param::None) => {
            let (r1, r2) = (doc.operator(a)?, doc.operator(b)?);
            let form = match args.form {
                EntropyForm::Standard => {
                    // only a divergence between density operators
                    DensityOperator::new(r1.clone())?;
                    DensityOperator::new(r2.clone())?;
                    RelativeEntropyForm::Standard
                }
                EntropyForm::Extended => RelativeEntropyForm::Extended,
            };
            closed_only(quantum::quantum_relative_entropy(r1, r2, form)?)
        }
    })
}

pub fn run(args: &Args) -> Result<bool> {
    let doc = Document::load(&args.input, args.kind)?;
    let param = validate(args, doc.kind())?;
    let parameter = match param {
        Param::Alpha(a) => Some(Parameter::Alpha(a.value())),
        Param::Q(q) => Some(Parameter::Q(q)),
        Param::None => None,
    };
    let family = args
        .family
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let mut records = Vec::new();
    for (a, b) in pairs(args, &doc)? {
        let names = (a.clone(), b.clone());
        let record = match evaluate(args, &doc, &param, &a, &b)? {
            (Some(quad), Some(closed)) => Record::new(
                names,
                parameter,
                format!("{family}: quadrature vs closed"),
                quad,
                Some(closed),
                args.tolerance,
            ),
            (Some(v), None) => Record::new(
                names,
                parameter,
                format!("{family}: quadrature"),
                v,
                None,
                args.tolerance,
            ),
            (None, Some(v)) => Record::new(
                names,
                parameter,
                format!("{family}: closed"),
                v,
                None,
                args.tolerance,
            ),
            (None, None) => unreachable!("every method yields a value"),
        };
        records.push(record);
    }
    let report = Report::new(format!("{} divergence", doc.kind().as_str()), records);
    write_json(&report, args.out.as_deref())?;
    Ok(report.summary.pass)
}
