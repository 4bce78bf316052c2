//! Fixtures shared by the criterion benchmarks.

use ks2d::harness::InitSpec;
use ks2d::{Grid, VectorField};

/// Random curl-free field with energy in modes `|ℓ| ≤ n/4`.
pub fn fixture(n: usize) -> VectorField {
    let grid = Grid::new(n).expect("benchmark grid");
    let init = InitSpec::RandomCurlFree {
        k_max: (n / 4) as f64,
        amplitude: 1.0,
        seed: 7,
    };
    ks2d::harness::build_initial(&init, grid).expect("benchmark initial field")
}
