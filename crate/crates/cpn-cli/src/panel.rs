//! Deterministic default sample panels for verification runs.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default spectral-parameter panel, kept away from the poles at ±1.
pub fn default_lambda_panel() -> Vec<Complex64> {
    vec![
        Complex64::new(2.0, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(-3.0, 1.0),
        Complex64::new(0.1, 0.0),
    ]
}

/// `count` reproducible sample points in the annulus 0.15 ≤ |ξ| ≤ 2,
/// mixing both hemispheres of the stereographic chart.
pub fn sample_points(count: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    (0..count)
        .map(|_| {
            let r = 0.15 + 1.85 * rng.gen::<f64>();
            let theta = core::f64::consts::TAU * rng.gen::<f64>();
            Complex64::new(r * theta.cos(), r * theta.sin())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panels_are_reproducible_and_bounded() {
        let a = sample_points(20);
        let b = sample_points(20);
        assert_eq!(a, b);
        for p in &a {
            let r = p.norm();
            assert!((0.15..=2.0).contains(&r));
        }
    }
}
