//! Reproducible Gaussian deviate streams.
//!
//! A ChaCha8 counter-based generator is keyed by a master seed; the
//! 64-bit stream index selects one of 2^64 statistically independent
//! substreams. Standard-normal deviates come from the Box-Muller
//! transform of uniforms in (0, 1], so a (seed, index) pair fixes the
//! whole sequence bit-for-bit regardless of who consumes it or on how
//! many threads.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic stream of standard-normal deviates.
#[derive(Debug, Clone)]
pub struct GaussianStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_index);
        GaussianStream { rng, spare: None }
    }

    /// Uniform in (0, 1] with 53-bit resolution.
    pub(crate) fn next_uniform(&mut self) -> f64 {
        (((self.rng.next_u64() >> 11) + 1) as f64) * (1.0 / 9007199254740992.0)
    }

    /// Next standard-normal deviate (Box-Muller pair, one cached).
    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.next_uniform();
        let u2 = self.next_uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn fill_normals(&mut self, out: &mut [f64]) {
        for slot in out.iter_mut() {
            *slot = self.next_normal();
        }
    }

    pub fn take_normals(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next_normal()).collect()
    }
}

impl Iterator for GaussianStream {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        Some(self.next_normal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let a: Vec<f64> = GaussianStream::new(42, 7).take(1000).collect();
        let b: Vec<f64> = GaussianStream::new(42, 7).take(1000).collect();
        assert_eq!(a, b);
        let c: Vec<f64> = GaussianStream::new(42, 8).take(1000).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn moments_within_clt_bounds() {
        let n = 1_000_000usize;
        let mut s = GaussianStream::new(20_240_601, 0);
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let z = s.next_normal();
            sum += z;
            sumsq += z * z;
        }
        let mean = sum / n as f64;
        let var = sumsq / n as f64 - mean * mean;
        // 3 sigma CLT bands: sd(mean)=1/sqrt(n), sd(var)~sqrt(2/n)
        assert!(mean.abs() < 0.004, "mean {mean}");
        assert!((var - 1.0).abs() < 0.005, "var {var}");
    }

    #[test]
    fn kolmogorov_smirnov_against_normal_cdf() {
        let n = 10_000usize;
        let mut draws: Vec<f64> = GaussianStream::new(7, 3).take(n).collect();
        draws.sort_by(f64::total_cmp);
        let mut d: f64 = 0.0;
        for (i, &x) in draws.iter().enumerate() {
            let cdf = 0.5 * (1.0 + crate::numerics::erf(x / std::f64::consts::SQRT_2));
            let lo = i as f64 / n as f64;
            let hi = (i + 1) as f64 / n as f64;
            d = d.max((cdf - lo).abs()).max((cdf - hi).abs());
        }
        // 0.999 quantile of the KS statistic: 1.9495/sqrt(n)
        assert!(d < 1.9495 / (n as f64).sqrt(), "KS statistic {d}");
    }
}
