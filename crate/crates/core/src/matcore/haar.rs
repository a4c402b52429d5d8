// Copyright 2026 The sqisw-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, UnitaryMatrix, C64};

/// Haar-random special unitary of dimension `dim`, deterministic per seed.
pub fn haar_random_unitary(dim: usize, seed: u64) -> UnitaryMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_random_unitary_with_rng(dim, &mut rng)
}

/// Ginibre matrix, QR, then the phases of `diag(R)` are moved into `Q` so
/// the result is Haar distributed. The determinant is normalised to one.
pub fn haar_random_unitary_with_rng<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitaryMatrix {
    assert!(dim >= 1, "dimension must be positive");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= ph;
        }
    }
    UnitaryMatrix::new_unchecked(q).to_special()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::error_metric;

    #[test]
    fn reproducible_and_unitary() {
        let a = haar_random_unitary(8, 42);
        let b = haar_random_unitary(8, 42);
        assert_eq!(a, b);
        assert!(a.unitarity_defect() <= 1e-12);
        assert!((a.determinant() - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn different_seeds_differ() {
        let a = haar_random_unitary(8, 1);
        let b = haar_random_unitary(8, 2);
        assert!(error_metric(&a, &b).unwrap() > 0.0);
    }

    #[test]
    fn first_entry_second_moment() {
        // For Haar U(d), |U_00|^2 ~ Beta(1, d-1): mean 1/d, variance (d-1)/(d^2 (d+1)).
        let d = 4.0f64;
        let n = 10_000;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mean = (0..n)
            .map(|_| haar_random_unitary_with_rng(4, &mut rng).entry(0, 0).norm_sqr())
            .sum::<f64>()
            / n as f64;
        let sigma = ((d - 1.0) / (d * d * (d + 1.0)) / n as f64).sqrt();
        assert!((mean - 0.25).abs() < 3.0 * sigma, "mean {mean}, sigma {sigma}");
    }
}
