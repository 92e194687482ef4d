//! Acceptance checks, one line per criterion. Runs under `cargo test` with its own
//! harness and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use canondiv::classical::{self, PositiveMeasure};
use canondiv::numkit::{gauss_legendre_rule, QuadratureRule};
use canondiv::quantum::{self, DensityOperator, PositiveOperator, RelativeEntropyForm};
use canondiv::report::Report;
use canondiv::sample::{random_measure, random_positive_operator, seeded_rng};
use canondiv::verify::{self, limit_gaps, VerifyConfig, ALPHA_GRID};
use canondiv::AlphaParam;

const SEED: u64 = 20_240_601;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn alpha(v: f64) -> AlphaParam {
    AlphaParam::new(v).unwrap()
}

fn rule() -> QuadratureRule {
    gauss_legendre_rule(64).unwrap()
}

fn classical_theorem() -> Outcome {
    let rule = rule();
    let mut rng = seeded_rng(SEED);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let dim = 1 + trial % 6;
        let p = random_measure(&mut rng, dim, 0.1, 5.0);
        let q = random_measure(&mut rng, dim, 0.1, 5.0);
        for &a in &ALPHA_GRID {
            let numeric = classical::canonical_divergence_numeric(&p, &q, alpha(a), &rule).unwrap();
            let closed = classical::alpha_divergence_closed(&p, &q, alpha(a)).unwrap();
            worst = worst.max((numeric - closed).abs() / (1.0 + closed.abs()));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        name: "classical theorem (100 pairs, dims 1-6, 5 alphas)",
        pass: worst <= 1e-9 && secs < 5.0,
        detail: format!("max rel error {worst:.2e} (tol 1e-9), {secs:.2} s (limit 5 s)"),
    }
}

fn quantum_theorem() -> Outcome {
    let rule = rule();
    let mut rng = seeded_rng(SEED + 1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let dim = 2 + trial % 5;
        let r1 = random_positive_operator(&mut rng, dim, 0.2, 4.0);
        let r2 = random_positive_operator(&mut rng, dim, 0.2, 4.0);
        for &a in &ALPHA_GRID {
            let numeric =
                quantum::canonical_divergence_numeric_q(&r1, &r2, alpha(a), &rule).unwrap();
            let closed = quantum::quantum_alpha_divergence_closed(&r1, &r2, alpha(a)).unwrap();
            worst = worst.max((numeric - closed).abs() / (1.0 + closed.abs()));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        name: "quantum theorem (100 pairs, dims 2-6, 5 alphas)",
        pass: worst <= 1e-8 && secs < 30.0,
        detail: format!("max rel error {worst:.2e} (tol 1e-8), {secs:.2} s (limit 30 s)"),
    }
}

fn worked_constants() -> Outcome {
    let rule = rule();
    let a0 = alpha(0.0);
    let p = PositiveMeasure::new(vec![1.0, 2.0]).unwrap();
    let q = PositiveMeasure::new(vec![2.0, 1.0]).unwrap();
    let c_expect = 12.0 - 8.0 * 2f64.sqrt();
    let c_num = classical::canonical_divergence_numeric(&p, &q, a0, &rule).unwrap();
    let c_closed = classical::alpha_divergence_closed(&p, &q, a0).unwrap();

    let r1 = PositiveOperator::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
    let r2 = PositiveOperator::diagonal(&[1.0, 2.0]).unwrap();
    let q_expect = 4.0 * (3.5 - (3f64.sqrt() + 1.0) * (1.0 + 2f64.sqrt()) / 2.0);
    let q_num = quantum::canonical_divergence_numeric_q(&r1, &r2, a0, &rule).unwrap();
    let q_closed = quantum::quantum_alpha_divergence_closed(&r1, &r2, a0).unwrap();

    let errs = [
        (c_num - c_expect).abs(),
        (c_closed - c_expect).abs(),
        (q_num - q_expect).abs(),
        (q_closed - q_expect).abs(),
    ];
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    Outcome {
        name: "worked constants",
        pass: worst <= 1e-9 && (c_expect - 0.6862915).abs() < 1e-7 && (q_expect - 0.80845).abs() < 5e-5,
        detail: format!(
            "classical {c_num:.12} / {c_closed:.12} vs {c_expect:.12}; quantum {q_num:.12} / {q_closed:.12} vs {q_expect:.12}; max error {worst:.1e}"
        ),
    }
}

fn strictly_decreasing(g: &[f64]) -> bool {
    g.windows(2).all(|w| w[1] < w[0])
}

fn limits() -> Outcome {
    let rule = rule();
    let p = PositiveMeasure::new(vec![2.0, 1.0, 0.5]).unwrap();
    let q = PositiveMeasure::new(vec![1.0, 1.5, 2.5]).unwrap();
    let kl = classical::kl_extended(&p, &q).unwrap();
    let kl_rev = classical::kl_extended_reversed(&p, &q).unwrap();
    let canonical = |a| classical::canonical_divergence_numeric(&p, &q, a, &rule);
    let closed = |a| classical::alpha_divergence_closed(&p, &q, a);

    let r1 =
        PositiveOperator::from_real(3, &[2.0, 0.4, 0.1, 0.4, 1.0, -0.3, 0.1, -0.3, 0.8]).unwrap();
    let r2 =
        PositiveOperator::from_real(3, &[1.0, -0.2, 0.0, -0.2, 1.5, 0.5, 0.0, 0.5, 2.5]).unwrap();
    let re = quantum::quantum_relative_entropy(&r1, &r2, RelativeEntropyForm::Extended).unwrap();
    let re_rev =
        quantum::quantum_relative_entropy(&r2, &r1, RelativeEntropyForm::Extended).unwrap();
    let q_canonical = |a| quantum::canonical_divergence_numeric_q(&r1, &r2, a, &rule);
    let q_closed = |a| quantum::quantum_alpha_divergence_closed(&r1, &r2, a);

    let series = [
        (
            "classical canonical -1",
            limit_gaps(canonical, kl, false).unwrap(),
        ),
        (
            "classical canonical +1",
            limit_gaps(canonical, kl_rev, true).unwrap(),
        ),
        (
            "classical closed -1",
            limit_gaps(closed, kl, false).unwrap(),
        ),
        (
            "classical closed +1",
            limit_gaps(closed, kl_rev, true).unwrap(),
        ),
        (
            "quantum canonical -1",
            limit_gaps(q_canonical, re, false).unwrap(),
        ),
        (
            "quantum canonical +1",
            limit_gaps(q_canonical, re_rev, true).unwrap(),
        ),
        (
            "quantum closed -1",
            limit_gaps(q_closed, re, false).unwrap(),
        ),
        (
            "quantum closed +1",
            limit_gaps(q_closed, re_rev, true).unwrap(),
        ),
    ];
    let failing: Vec<&str> = series
        .iter()
        .filter(|(_, g)| !strictly_decreasing(g))
        .map(|(n, _)| *n)
        .collect();
    let last = series
        .iter()
        .map(|(_, g)| g[g.len() - 1])
        .fold(0.0, f64::max);
    Outcome {
        name: "limits at alpha = -1 and +1 (k = 2..6)",
        pass: failing.is_empty(),
        detail: if failing.is_empty() {
            format!("8 gap series strictly decreasing; largest gap at k = 6: {last:.2e}")
        } else {
            format!("non-monotone: {failing:?}")
        },
    }
}

fn scaling() -> Outcome {
    let mut rng = seeded_rng(SEED + 2);
    let mut c_worst = 0.0f64;
    let mut q_worst = 0.0f64;
    let qs = [0.05, 0.25, 0.5, 0.75, 0.95];
    for trial in 0..200 {
        let p = random_measure(&mut rng, 1 + trial % 6, 0.1, 5.0);
        let q = random_measure(&mut rng, 1 + trial % 6, 0.1, 5.0);
        let r1 = random_positive_operator(&mut rng, 2 + trial % 5, 0.2, 4.0);
        let r2 = random_positive_operator(&mut rng, 2 + trial % 5, 0.2, 4.0);
        for &qp in &qs {
            let al = alpha(1.0 - 2.0 * qp);
            let ts = classical::tsallis_q_divergence(&p, &q, qp).unwrap();
            let d = classical::alpha_divergence_closed(&p, &q, al).unwrap();
            c_worst = c_worst.max((ts - qp * d).abs());
            let tq = quantum::quantum_q_divergence(&r1, &r2, qp).unwrap();
            let dq = quantum::quantum_alpha_divergence_closed(&r1, &r2, al).unwrap();
            q_worst = q_worst.max((tq - qp * dq).abs());
        }
    }
    Outcome {
        name: "scaling relations D_q = ((1-alpha)/2) D^alpha",
        pass: c_worst <= 1e-13 && q_worst <= 1e-13,
        detail: format!(
            "classical {c_worst:.2e}, quantum {q_worst:.2e} (max abs error, tol 1e-13)"
        ),
    }
}

fn recovery() -> Outcome {
    let report: Report = verify::recovery_suite(&VerifyConfig::new(10, SEED)).unwrap();
    let max_of = |method: &str| {
        report
            .records
            .iter()
            .filter(|r| r.method == method)
            .map(|r| r.rel_error)
            .fold(0.0, f64::max)
    };
    let fisher = max_of("Fisher metric relative error");
    let gamma = max_of("Christoffel error");
    let defect = max_of("duality defect");
    let curvature = max_of("curvature max");
    Outcome {
        name: "structure recovery (10 points, dims 2-3, alpha in {-0.5, 0, 0.5})",
        pass: report.summary.pass && fisher <= 1e-5 && gamma <= 1e-4 && defect <= 1e-4 && curvature <= 1e-3,
        detail: format!(
            "Fisher {fisher:.2e} (1e-5), Christoffel {gamma:.2e} (1e-4), duality defect {defect:.2e} (1e-4), curvature {curvature:.2e} (1e-3)"
        ),
    }
}

struct AxiomTally {
    min_value: f64,
    max_at_coincidence: f64,
    min_off_coincidence: f64,
}

impl AxiomTally {
    fn new() -> Self {
        Self {
            min_value: f64::INFINITY,
            max_at_coincidence: 0.0,
            min_off_coincidence: f64::INFINITY,
        }
    }

    fn distinct(&mut self, v: f64) {
        self.min_value = self.min_value.min(v);
        self.min_off_coincidence = self.min_off_coincidence.min(v);
    }

    fn coincident(&mut self, v: f64) {
        self.min_value = self.min_value.min(v);
        self.max_at_coincidence = self.max_at_coincidence.max(v.abs());
    }

    fn passes(&self) -> bool {
        self.min_value >= -1e-12
            && self.max_at_coincidence < 1e-14
            && self.min_off_coincidence >= 1e-14
    }
}

fn axioms() -> Outcome {
    let rule = rule();
    let mut rng = seeded_rng(SEED + 3);
    let mut tallies: Vec<(&str, AxiomTally)> = [
        "alpha (closed)",
        "canonical (quadrature)",
        "dual canonical",
        "KL extended",
        "KL reversed",
        "Tsallis",
        "quantum alpha (closed)",
        "quantum canonical (quadrature)",
        "quantum relative entropy (extended)",
        "quantum relative entropy (densities)",
        "quantum q",
        "Furuichi (densities)",
        "density alpha",
    ]
    .into_iter()
    .map(|n| (n, AxiomTally::new()))
    .collect();

    for trial in 0..1000 {
        let dim = 1 + trial % 6;
        let p = random_measure(&mut rng, dim, 0.1, 5.0);
        let q = random_measure(&mut rng, dim, 0.1, 5.0);
        let r1 = random_positive_operator(&mut rng, dim, 0.2, 4.0);
        let r2 = random_positive_operator(&mut rng, dim, 0.2, 4.0);
        let d1 = DensityOperator::new(normalized(&r1)).unwrap();
        let d2 = DensityOperator::new(normalized(&r2)).unwrap();
        let a = alpha(ALPHA_GRID[trial % ALPHA_GRID.len()]);
        let qp = [0.1, 0.3, 0.5, 0.7, 0.9][trial % 5];

        let classical_values = |x: &PositiveMeasure, y: &PositiveMeasure| {
            [
                classical::alpha_divergence_closed(x, y, a).unwrap(),
                classical::canonical_divergence_numeric(x, y, a, &rule).unwrap(),
                classical::dual_canonical_divergence(x, y, a, &rule).unwrap(),
                classical::kl_extended(x, y).unwrap(),
                classical::kl_extended_reversed(x, y).unwrap(),
                classical::tsallis_q_divergence(x, y, qp).unwrap(),
            ]
        };
        let quantum_values = |x: &PositiveOperator,
                              y: &PositiveOperator,
                              dx: &DensityOperator,
                              dy: &DensityOperator| {
            [
                quantum::quantum_alpha_divergence_closed(x, y, a).unwrap(),
                quantum::canonical_divergence_numeric_q(x, y, a, &rule).unwrap(),
                quantum::quantum_relative_entropy(x, y, RelativeEntropyForm::Extended).unwrap(),
                quantum::quantum_relative_entropy(
                    dx.operator(),
                    dy.operator(),
                    RelativeEntropyForm::Standard,
                )
                .unwrap(),
                quantum::quantum_q_divergence(x, y, qp).unwrap(),
                quantum::furuichi_q_divergence(dx.operator(), dy.operator(), qp).unwrap(),
                quantum::density_alpha_divergence(dx, dy, a).unwrap(),
            ]
        };
        // in dimension 1 both density operators are [1] up to rounding
        let densities_equal = (d1.operator().matrix() - d2.operator().matrix()).norm() <= 1e-12;
        let mut equal = [false; 13];
        for i in [9, 11, 12] {
            equal[i] = densities_equal;
        }
        let pair_values = classical_values(&p, &q)
            .into_iter()
            .chain(quantum_values(&r1, &r2, &d1, &d2));
        let same = classical_values(&p, &p)
            .into_iter()
            .chain(quantum_values(&r1, &r1, &d1, &d1));
        for (((_, t), (v, w)), eq) in tallies.iter_mut().zip(pair_values.zip(same)).zip(equal) {
            if eq {
                t.coincident(v);
            } else {
                t.distinct(v);
            }
            t.coincident(w);
        }
    }
    let failing: Vec<String> = tallies
        .iter()
        .filter(|(_, t)| !t.passes())
        .map(|(n, t)| {
            format!(
                "{n}: min {:.2e}, max at coincidence {:.2e}, min off coincidence {:.2e}",
                t.min_value, t.max_at_coincidence, t.min_off_coincidence
            )
        })
        .collect();
    let worst_coincident = tallies
        .iter()
        .map(|(_, t)| t.max_at_coincidence)
        .fold(0.0, f64::max);
    let min_value = tallies
        .iter()
        .map(|(_, t)| t.min_value)
        .fold(f64::INFINITY, f64::min);
    Outcome {
        name: "divergence axioms (1000 pairs, 13 divergences)",
        pass: failing.is_empty(),
        detail: if failing.is_empty() {
            format!("min value {min_value:.2e} (>= -1e-12), max |D(x, x)| {worst_coincident:.2e} (< 1e-14)")
        } else {
            failing.join("; ")
        },
    }
}

fn normalized(r: &PositiveOperator) -> PositiveOperator {
    let tr = r.trace();
    PositiveOperator::new(r.operator().scaled(1.0 / tr)).unwrap()
}

fn spectral_reduction() -> Outcome {
    let rule = rule();
    let mut rng = seeded_rng(SEED + 4);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let dim = 1 + trial % 6;
        let p = random_measure(&mut rng, dim, 0.2, 4.0);
        let q = random_measure(&mut rng, dim, 0.2, 4.0);
        let r1 = PositiveOperator::diagonal(p.weights()).unwrap();
        let r2 = PositiveOperator::diagonal(q.weights()).unwrap();
        for &a in &ALPHA_GRID {
            let al = alpha(a);
            let qp = 0.5 * (1.0 - a);
            let pairs = [
                (
                    quantum::quantum_alpha_divergence_closed(&r1, &r2, al).unwrap(),
                    classical::alpha_divergence_closed(&p, &q, al).unwrap(),
                ),
                (
                    quantum::canonical_divergence_numeric_q(&r1, &r2, al, &rule).unwrap(),
                    classical::canonical_divergence_numeric(&p, &q, al, &rule).unwrap(),
                ),
                (
                    quantum::quantum_q_divergence(&r1, &r2, qp).unwrap(),
                    classical::tsallis_q_divergence(&p, &q, qp).unwrap(),
                ),
                (
                    quantum::furuichi_q_divergence(&r1, &r2, qp).unwrap(),
                    p.weights()
                        .iter()
                        .zip(q.weights())
                        .map(|(x, y)| x - x.powf(qp) * y.powf(1.0 - qp))
                        .sum::<f64>()
                        / (1.0 - qp),
                ),
            ];
            for (qv, cv) in pairs {
                worst = worst.max((qv - cv).abs());
            }
        }
        let kl = classical::kl_extended(&p, &q).unwrap();
        let ext =
            quantum::quantum_relative_entropy(&r1, &r2, RelativeEntropyForm::Extended).unwrap();
        let std =
            quantum::quantum_relative_entropy(&r1, &r2, RelativeEntropyForm::Standard).unwrap();
        worst = worst.max((ext - kl).abs());
        worst = worst.max((std - (kl - q.total_mass() + p.total_mass())).abs());
    }
    Outcome {
        name: "spectral reduction on diagonal operators",
        pass: worst <= 1e-12,
        detail: format!("max |quantum - classical| {worst:.2e} (tol 1e-12)"),
    }
}

fn main() -> ExitCode {
    let checks: [fn() -> Outcome; 8] = [
        classical_theorem,
        quantum_theorem,
        worked_constants,
        limits,
        scaling,
        recovery,
        axioms,
        spectral_reduction,
    ];
    let mut failures = 0;
    for check in checks {
        let o = check();
        if !o.pass {
            failures += 1;
        }
        println!(
            "{} {}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        checks.len() - failures,
        checks.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
