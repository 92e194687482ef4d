use std::path::PathBuf;

use anyhow::{Context, Result};
use canondiv::numkit::gauss_legendre_rule;
use canondiv::quantum::{self, RelativeEntropyForm};
use canondiv::{classical, AlphaParam, DEFAULT_NODES};

use crate::input::{parse_pair, Document, Kind};
use crate::usage;

#[derive(clap::Args)]
pub struct Args {
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// The pair `name:name`.
    #[arg(long)]
    pair: String,
    /// `start:stop:step`, or a comma-separated list of values.
    #[arg(long, allow_hyphen_values = true)]
    alphas: String,
    #[arg(long, default_value_t = DEFAULT_NODES)]
    nodes: usize,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
}

/// Parses `"a:b:step"` (inclusive of `b` up to rounding) or `"a,b,c"`; the result
/// is sorted and every value checked to lie in (−1, 1).
pub fn parse_alphas(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    let number = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("not a number in the alpha list: {s:?}")))
    };
    let mut values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [a, b, step] = parts[..] else {
            return Err(usage(format!(
                "alpha range must be start:stop:step, got {spec:?}"
            )));
        };
        let (a, b, step) = (number(a)?, number(b)?, number(step)?);
        if !(step > 0.0 && step.is_finite()) {
            return Err(usage(format!("alpha step must be positive, got {step}")));
        }
        if b < a {
            Vec::new()
        } else {
            let count = ((b - a) / step + 1e-9).floor() as usize;
            // snapped to 1e-12 so that decimal grids print as written
            (0..=count)
                .map(|k| ((a + k as f64 * step) * 1e12).round() / 1e12)
                .collect()
        }
    } else if spec.is_empty() {
        Vec::new()
    } else {
        spec.split(',').map(number).collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(usage("the alpha list is empty"));
    }
    for &a in &values {
        if !(a > -1.0 && a < 1.0) {
            return Err(usage(format!("alpha values must lie in (-1, 1), got {a}")));
        }
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub fn run(args: &Args) -> Result<bool> {
    let alphas = parse_alphas(&args.alphas)?;
    let doc = Document::load(&args.input, args.kind)?;
    let (a, b) = parse_pair(&args.pair)?;
    let rule = gauss_legendre_rule(args.nodes)?;

    let mut rows = Vec::with_capacity(alphas.len());
    let reference_column = match doc.kind() {
        Kind::Classical => {
            let (p, q) = (doc.measure(&a)?, doc.measure(&b)?);
            let kl = classical::kl_extended(p, q)?;
            for &al in &alphas {
                let al = AlphaParam::new(al)?;
                let numeric = classical::canonical_divergence_numeric(p, q, al, &rule)?;
                let closed = classical::alpha_divergence_closed(p, q, al)?;
                rows.push([al.value(), numeric, closed, kl, (numeric - kl).abs()]);
            }
            "kl_reference"
        }
        Kind::Quantum => {
            let (r1, r2) = (doc.operator(&a)?, doc.operator(&b)?);
            let re = quantum::quantum_relative_entropy(r1, r2, RelativeEntropyForm::Extended)?;
            for &al in &alphas {
                let al = AlphaParam::new(al)?;
                let numeric = quantum::canonical_divergence_numeric_q(r1, r2, al, &rule)?;
                let closed = quantum::quantum_alpha_divergence_closed(r1, r2, al)?;
                rows.push([al.value(), numeric, closed, re, (numeric - re).abs()]);
            }
            "relative_entropy_reference"
        }
    };

    // everything is computed before the file is created, so failures leave no output
    let mut w = csv::Writer::from_path(&args.out)
        .map_err(|e| usage(format!("cannot create {}: {e}", args.out.display())))?;
    w.write_record([
        "alpha",
        "canonical_numeric",
        "closed",
        reference_column,
        "abs_gap_to_limit",
    ])?;
    for row in rows {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    w.flush()
        .with_context(|| format!("writing {}", args.out.display()))?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_alphas("-0.5:0.5:0.5").unwrap(), vec![-0.5, 0.0, 0.5]);
        assert_eq!(parse_alphas("0.3, -0.2,0").unwrap(), vec![-0.2, 0.0, 0.3]);
        let r = parse_alphas("-0.99:0.99:0.01").unwrap();
        assert_eq!(r.len(), 199);
        assert_eq!(r[198], 0.99);
        assert_eq!(parse_alphas("-0.99:0.99:0.33").unwrap()[1], -0.66);
    }

    #[test]
    fn rejects_bad_lists() {
        for bad in ["", "0.5:0.1:0.1", "0:1:0.5", "a,b", "0:0.5:0", "-1", "0:1"] {
            assert!(parse_alphas(bad).is_err(), "{bad}");
        }
    }
}
