//! Fixed inputs shared by the criterion benchmarks.

use canondiv::classical::PositiveMeasure;
use canondiv::quantum::PositiveOperator;
use canondiv::sample::{random_measure, random_positive_operator, seeded_rng};

pub fn measure_pair(dim: usize, seed: u64) -> (PositiveMeasure, PositiveMeasure) {
    let mut rng = seeded_rng(seed);
    (
        random_measure(&mut rng, dim, 0.1, 5.0),
        random_measure(&mut rng, dim, 0.1, 5.0),
    )
}

pub fn operator_pair(dim: usize, seed: u64) -> (PositiveOperator, PositiveOperator) {
    let mut rng = seeded_rng(seed);
    (
        random_positive_operator(&mut rng, dim, 0.2, 4.0),
        random_positive_operator(&mut rng, dim, 0.2, 4.0),
    )
}
