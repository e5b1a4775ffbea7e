//! Monte Carlo estimators that independently verify every analytic
//! quantity in the crate: sampled coefficient vectors with exact
//! Sturm-chain root counts (or sign scans for non-polynomial bases),
//! simultaneous complex root finding, and real-eigenvalue counts through
//! characteristic polynomials.
//!
//! Determinism: sample i draws from the Gaussian substream with index
//! 4 i + attempt, so an estimate depends only on (master seed, sample
//! count), never on thread scheduling. Degenerate samples (Sturm chain
//! collapse, root-finder stalls) are retried on fresh substreams, at
//! most three times, and the retries are counted in the result.

mod aberth;
mod scan;
mod sturm;

pub use aberth::{aberth_roots, aberth_roots_complex};
pub use scan::sign_scan_count;
pub use sturm::sturm_count;

use crate::complex_zeros::VarianceGeneratingFunction;
use crate::error::{Error, Result};
use crate::kernel::{Basis, Ensemble};
use crate::matrices::{char_poly, SquareMatrix};
use crate::numerics::{GaussianStream, Interval, Poly};
use num_complex::Complex64;
use rayon::prelude::*;

/// Attempts per sample: the first draw plus three retries.
const ATTEMPTS: u64 = 4;

/// Grid size for sign-scan counting inside the samplers.
const SCAN_GRID: usize = 4096;

/// Monte Carlo run configuration.
#[derive(Debug, Clone, Copy)]
pub struct MCConfig {
    pub samples: usize,
    pub master_seed: u64,
    /// Thread count hint; 0 picks the default pool. The estimate itself
    /// is identical for every hint.
    pub workers_hint: usize,
}

impl MCConfig {
    pub fn new(samples: usize, master_seed: u64) -> Self {
        MCConfig {
            samples,
            master_seed,
            workers_hint: 0,
        }
    }
}

/// A Monte Carlo mean with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
    pub seed: u64,
    /// Number of degenerate draws that were replaced by retry substreams.
    pub resampled: usize,
}

impl MCEstimate {
    /// |mean - target| measured in standard errors.
    pub fn sigmas_from(&self, target: f64) -> f64 {
        if self.stderr == 0.0 {
            if self.mean == target {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - target).abs() / self.stderr
        }
    }
}

/// Run a per-sample evaluator over deterministic substreams, in parallel,
/// with order-fixed aggregation.
fn run_mc<F>(cfg: &MCConfig, eval: F) -> Result<MCEstimate>
where
    F: Fn(&mut GaussianStream) -> Result<f64> + Sync,
{
    if cfg.samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let body = || -> Result<Vec<(f64, usize)>> {
        (0..cfg.samples)
            .into_par_iter()
            .map(|i| {
                let mut last_err = None;
                for attempt in 0..ATTEMPTS {
                    let mut stream =
                        GaussianStream::new(cfg.master_seed, i as u64 * ATTEMPTS + attempt);
                    match eval(&mut stream) {
                        Ok(v) => return Ok((v, attempt as usize)),
                        Err(e) => last_err = Some(e),
                    }
                }
                Err(last_err.expect("at least one attempt ran"))
            })
            .collect()
    };
    let values = if cfg.workers_hint > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers_hint)
            .build()
            .map_err(|e| Error::Evaluation(format!("thread pool: {e}")))?
            .install(body)?
    } else {
        body()?
    };
    let n = values.len();
    let resampled = values.iter().map(|(_, a)| a).sum();
    let mean = values.iter().map(|(v, _)| v).sum::<f64>() / n as f64;
    let var = if n > 1 {
        values
            .iter()
            .map(|(v, _)| (v - mean) * (v - mean))
            .sum::<f64>()
            / ((n - 1) as f64)
    } else {
        0.0
    };
    Ok(MCEstimate {
        mean,
        stderr: (var / n as f64).sqrt(),
        n,
        seed: cfg.master_seed,
        resampled,
    })
}

/// Largest monomial degree the f64 Sturm chains count reliably.
const MAX_STURM_DEGREE: usize = 64;

/// Largest basis dimension the per-sample sign scan stays affordable at.
const MAX_SCAN_DIMENSION: usize = 256;

/// Empirical expected number of real zeros of the ensemble on the
/// interval. Monomial-basis samples are counted exactly by Sturm chains;
/// other bases fall back to a confirmed sign scan.
pub fn mc_real_zeros(e: &Ensemble, interval: Interval, cfg: &MCConfig) -> Result<MCEstimate> {
    if e.sampling_mean().is_none() {
        return Err(Error::Unsupported(
            "ensemble mean is not a coefficient vector; cannot sample".into(),
        ));
    }
    match e.basis() {
        Basis::Monomial { weights } if weights.len() > MAX_STURM_DEGREE + 1 => {
            return Err(Error::Unsupported(format!(
                "sample counting supports monomial degrees up to {MAX_STURM_DEGREE}, \
                 got {}; use a lower truncation",
                weights.len() - 1
            )));
        }
        b if !matches!(b, Basis::Monomial { .. }) && b.dimension() > MAX_SCAN_DIMENSION => {
            return Err(Error::Unsupported(format!(
                "sign-scan sampling supports basis dimensions up to {MAX_SCAN_DIMENSION}, \
                 got {}",
                b.dimension()
            )));
        }
        _ => {}
    }
    match e.basis() {
        Basis::Monomial { weights } => {
            let weights = weights.clone();
            run_mc(cfg, move |stream| {
                let a = e.sample_coefficients(stream)?;
                let coeffs: Vec<f64> =
                    a.iter().zip(&weights).map(|(ai, wi)| ai * wi).collect();
                let p = Poly::new(coeffs);
                Ok(sturm_count(&p, interval)? as f64)
            })
        }
        _ => run_mc(cfg, move |stream| {
            let a = e.sample_coefficients(stream)?;
            let f = |t: f64| {
                let jet = e.basis().eval_jet(t);
                // common rescalings of the jet are positive, so signs of
                // the sampled function are preserved
                jet.values.iter().zip(&a).map(|(v, ai)| v * ai).sum::<f64>()
            };
            Ok(sign_scan_count(f, interval, SCAN_GRID) as f64)
        }),
    }
}

/// Empirical expected number of fixed points of p(t)/q(t) for
/// independent degree-n binomial-variance polynomials p, q: real roots
/// of p(t) - t q(t), plus the point at infinity when the leading
/// coefficient cancels (a probability-zero event in exact arithmetic).
pub fn mc_fixed_points(n: usize, cfg: &MCConfig) -> Result<MCEstimate> {
    let weights = match Basis::binomial(n) {
        Basis::Monomial { weights } => weights,
        _ => unreachable!(),
    };
    run_mc(cfg, move |stream| {
        let p: Vec<f64> = weights.iter().map(|w| w * stream.next_normal()).collect();
        let q: Vec<f64> = weights.iter().map(|w| w * stream.next_normal()).collect();
        // h = p - t q
        let mut h = vec![0.0; n + 2];
        for (k, &pk) in p.iter().enumerate() {
            h[k] += pk;
        }
        for (k, &qk) in q.iter().enumerate() {
            h[k + 1] -= qk;
        }
        let scale = h.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let mut infinity_fixed = 0.0;
        if h[n + 1].abs() < 1e-12 * scale {
            // degree dropped: the rational map fixes the point at infinity
            h.pop();
            infinity_fixed = 1.0;
        }
        let count = sturm_count(&Poly::new(h), Interval::entire())? as f64;
        Ok(count + infinity_fixed)
    })
}

/// Empirical expected number of real eigenvalues of an n x n iid
/// standard normal matrix (n <= 8), counted through the characteristic
/// polynomial on (-R, R) with R = 1 + Frobenius norm.
pub fn mc_real_eigenvalues(n: usize, cfg: &MCConfig) -> Result<MCEstimate> {
    if n == 0 || n > 8 {
        return Err(Error::Domain(format!(
            "eigenvalue counter supports 1 <= n <= 8, got {n}"
        )));
    }
    run_mc(cfg, move |stream| {
        let a = SquareMatrix::new(n, stream.take_normals(n * n))?;
        let p = char_poly(&a)?;
        let r = 1.0 + a.frobenius_norm();
        Ok(sturm_count(&p, Interval::new(-r, r))? as f64)
    })
}

/// Empirical expected number of real eigenvalues of the matrix
/// polynomial A_0 + A_1 t + ... + A_n t^n with p x p iid standard normal
/// coefficient blocks (p <= 3, n <= 4): real roots of the expanded
/// determinant polynomial.
pub fn mc_matrix_poly(n: usize, p: usize, cfg: &MCConfig) -> Result<MCEstimate> {
    if p == 0 || p > 3 {
        return Err(Error::Domain(format!("block size must be 1..=3, got {p}")));
    }
    if n > 4 {
        return Err(Error::Domain(format!("degree must be <= 4, got {n}")));
    }
    run_mc(cfg, move |stream| {
        // entry (i, j) of the matrix polynomial as a degree-n polynomial
        let mut entries = vec![vec![Poly::zero(); p]; p];
        for k in 0..=n {
            for row in entries.iter_mut() {
                for slot in row.iter_mut() {
                    let mut c = vec![0.0; k + 1];
                    c[k] = stream.next_normal();
                    *slot = &*slot + &Poly::new(c);
                }
            }
        }
        let det = poly_matrix_det(&entries);
        Ok(sturm_count(&det, Interval::entire())? as f64)
    })
}

fn poly_matrix_det(m: &[Vec<Poly>]) -> Poly {
    match m.len() {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        3 => {
            let c0 = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
            let c1 = &(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]);
            let c2 = &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]);
            &(&(&m[0][0] * &c0) - &(&m[0][1] * &c1)) + &(&m[0][2] * &c2)
        }
        _ => unreachable!("guarded to p <= 3"),
    }
}

/// Empirical cumulative radial profile of complex zeros.
#[derive(Debug, Clone)]
pub struct McRadialProfile {
    pub radii: Vec<f64>,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
    pub n: usize,
    pub seed: u64,
    pub resampled: usize,
}

/// Sample complex-Gaussian coefficients for a finite-degree variance
/// family (degree <= 100), find all roots, and accumulate cumulative
/// counts per radius.
pub fn mc_complex_radial(
    vgf: &VarianceGeneratingFunction,
    radii: &[f64],
    cfg: &MCConfig,
) -> Result<McRadialProfile> {
    let variances = vgf.variances().ok_or_else(|| {
        Error::Unsupported("radial sampling needs a finite-degree variance list".into())
    })?;
    if variances.len() > 101 {
        return Err(Error::Domain(
            "radial sampling supports degree <= 100".into(),
        ));
    }
    let sigmas: Vec<f64> = variances.iter().map(|v| v.sqrt()).collect();
    if cfg.samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let eval = |stream: &mut GaussianStream| -> Result<Vec<f64>> {
        let jitter = 2.0 * std::f64::consts::PI * stream.next_uniform();
        let coeffs: Vec<Complex64> = sigmas
            .iter()
            .map(|s| Complex64::new(s * stream.next_normal(), s * stream.next_normal()))
            .collect();
        let roots = aberth_roots_complex(&coeffs, jitter)?;
        let mut counts = vec![0.0; radii.len()];
        for root in roots {
            let m = root.norm();
            for (slot, &r) in counts.iter_mut().zip(radii) {
                if m < r {
                    *slot += 1.0;
                }
            }
        }
        Ok(counts)
    };
    let body = || -> Result<Vec<(Vec<f64>, usize)>> {
        (0..cfg.samples)
            .into_par_iter()
            .map(|i| {
                let mut last_err = None;
                for attempt in 0..ATTEMPTS {
                    let mut stream =
                        GaussianStream::new(cfg.master_seed, i as u64 * ATTEMPTS + attempt);
                    match eval(&mut stream) {
                        Ok(v) => return Ok((v, attempt as usize)),
                        Err(e) => last_err = Some(e),
                    }
                }
                Err(last_err.expect("at least one attempt ran"))
            })
            .collect()
    };
    let rows = if cfg.workers_hint > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers_hint)
            .build()
            .map_err(|e| Error::Evaluation(format!("thread pool: {e}")))?
            .install(body)?
    } else {
        body()?
    };
    let n = rows.len();
    let resampled = rows.iter().map(|(_, a)| a).sum();
    let mut mean = vec![0.0; radii.len()];
    for (row, _) in &rows {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= n as f64;
    }
    let mut stderr = vec![0.0; radii.len()];
    if n > 1 {
        for (row, _) in &rows {
            for ((s, v), m) in stderr.iter_mut().zip(row).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        for s in stderr.iter_mut() {
            *s = (*s / ((n - 1) as f64) / n as f64).sqrt();
        }
    }
    Ok(McRadialProfile {
        radii: radii.to_vec(),
        mean,
        stderr,
        n,
        seed: cfg.master_seed,
        resampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{case1_mean, ClosedFormFamily};

    #[test]
    fn reproducible_across_worker_hints() {
        let e = Ensemble::iid_poly(5);
        let a = mc_real_zeros(
            &e,
            Interval::entire(),
            &MCConfig {
                samples: 500,
                master_seed: 42,
                workers_hint: 1,
            },
        )
        .unwrap();
        let b = mc_real_zeros(
            &e,
            Interval::entire(),
            &MCConfig {
                samples: 500,
                master_seed: 42,
                workers_hint: 3,
            },
        )
        .unwrap();
        let c = mc_real_zeros(&e, Interval::entire(), &MCConfig::new(500, 42)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn stderr_shrinks_with_sample_count() {
        let e = Ensemble::iid_poly(4);
        let small = mc_real_zeros(&e, Interval::entire(), &MCConfig::new(2_000, 7)).unwrap();
        let large = mc_real_zeros(&e, Interval::entire(), &MCConfig::new(8_000, 7)).unwrap();
        // quadrupling the sample count halves the standard error (within
        // sampling noise)
        let ratio = small.stderr / large.stderr;
        assert!((ratio - 2.0).abs() < 0.4, "ratio {ratio}");
    }

    #[test]
    fn binomial_variance_count_matches_sqrt_n() {
        let e = Ensemble::binomial_poly(9);
        let est = mc_real_zeros(&e, Interval::entire(), &MCConfig::new(20_000, 11)).unwrap();
        assert!(
            est.sigmas_from(3.0) < 3.0,
            "mean {} stderr {}",
            est.mean,
            est.stderr
        );
    }

    #[test]
    fn iid_count_matches_quadrature() {
        let target = crate::ensembles::kac_expected(5, 1e-10).unwrap();
        let e = Ensemble::iid_poly(5);
        let est = mc_real_zeros(&e, Interval::entire(), &MCConfig::new(20_000, 13)).unwrap();
        assert!(
            est.sigmas_from(target) < 3.0,
            "mean {} vs {target}",
            est.mean
        );
    }

    #[test]
    fn noncentral_shifted_quadratic() {
        // binomial n=2 with constant-projection mean m: analytic count
        // sqrt(2) e^{-m^2/2}
        let family = ClosedFormFamily::Kostlan { n: 2 };
        let m = 1.0;
        let e = Ensemble::binomial_poly(2)
            .with_mean(case1_mean(&family, m).unwrap())
            .unwrap();
        let target = std::f64::consts::SQRT_2 * (-0.5 * m * m).exp();
        let est = mc_real_zeros(&e, Interval::entire(), &MCConfig::new(20_000, 17)).unwrap();
        assert!(
            est.sigmas_from(target) < 3.0,
            "mean {} vs {target}",
            est.mean
        );
    }

    #[test]
    fn mixed_sin_exp_counts_match_quadrature() {
        // independent confirmation of the mixed-basis count through the
        // sampling path: scan-counted zeros on [-10, 10] against the
        // density quadrature on the same window
        let e = Ensemble::one_sin_expabs();
        let window = Interval::new(-10.0, 10.0);
        let target = e.expected_zeros(window, 1e-9).unwrap().value;
        let est = mc_real_zeros(&e, window, &MCConfig::new(6_000, 67)).unwrap();
        assert!(
            est.sigmas_from(target) < 3.0,
            "mean {} vs {target}",
            est.mean
        );
    }

    #[test]
    fn trig_ensemble_counts_by_sign_scan() {
        // zeros per unit length sqrt(5/2)/pi on [0, 2 pi]
        let e = Ensemble::trig_sum(vec![1.0, 1.0], vec![1.0, 2.0]).unwrap();
        let target = 2.0 * (5.0f64 / 2.0).sqrt();
        let est = mc_real_zeros(
            &e,
            Interval::new(0.0, 2.0 * std::f64::consts::PI),
            &MCConfig::new(4_000, 23),
        )
        .unwrap();
        assert!(
            est.sigmas_from(target) < 3.0,
            "mean {} vs {target}",
            est.mean
        );
    }

    #[test]
    fn fixed_points_of_degree_three_maps() {
        let est = mc_fixed_points(3, &MCConfig::new(20_000, 29)).unwrap();
        assert!(est.sigmas_from(2.0) < 3.0, "mean {}", est.mean);
        // the infinity branch is a measure-zero event
        assert_eq!(est.resampled, 0);
    }

    #[test]
    fn fixed_points_of_linear_maps() {
        let est = mc_fixed_points(1, &MCConfig::new(20_000, 31)).unwrap();
        assert!(
            est.sigmas_from(std::f64::consts::SQRT_2) < 3.0,
            "mean {}",
            est.mean
        );
    }

    #[test]
    fn real_eigenvalue_counts() {
        let est1 = mc_real_eigenvalues(1, &MCConfig::new(2_000, 37)).unwrap();
        assert_eq!(est1.mean, 1.0);
        assert_eq!(est1.stderr, 0.0);
        let est2 = mc_real_eigenvalues(2, &MCConfig::new(20_000, 41)).unwrap();
        assert!(
            est2.sigmas_from(std::f64::consts::SQRT_2) < 3.0,
            "mean {}",
            est2.mean
        );
        assert!(mc_real_eigenvalues(9, &MCConfig::new(10, 1)).is_err());
    }

    #[test]
    fn matrix_poly_reduces_to_scalar_at_p_1() {
        let target = crate::ensembles::kac_expected(2, 1e-9).unwrap();
        let est = mc_matrix_poly(2, 1, &MCConfig::new(20_000, 43)).unwrap();
        assert!(
            est.sigmas_from(target) < 3.0,
            "mean {} vs {target}",
            est.mean
        );
    }

    #[test]
    fn matrix_poly_factor_block_three() {
        // p=3, n=1: E_1 * factor(3) = 1 * 2
        let est = mc_matrix_poly(1, 3, &MCConfig::new(10_000, 47)).unwrap();
        assert!(est.sigmas_from(2.0) < 3.0, "mean {}", est.mean);
    }

    #[test]
    fn complex_radial_counts_match_analytic_profile() {
        let vgf = VarianceGeneratingFunction::KostlanComplex { n: 10 };
        let radii = [0.5, 1.0, 2.0];
        let profile = mc_complex_radial(&vgf, &radii, &MCConfig::new(2_000, 53)).unwrap();
        for (i, &r) in radii.iter().enumerate() {
            let target = vgf.radial_count(r).unwrap();
            let sig = (profile.mean[i] - target).abs() / profile.stderr[i];
            assert!(
                sig < 3.0,
                "r={r}: mean {} vs {target} ({sig} sigma)",
                profile.mean[i]
            );
        }
        // every sample captures all 10 roots in a huge disk
        let all = mc_complex_radial(&vgf, &[1e6], &MCConfig::new(200, 59)).unwrap();
        assert_eq!(all.mean[0], 10.0);
        assert_eq!(all.stderr[0], 0.0);
    }

    #[test]
    fn unit_variance_radial_counts() {
        let vgf = VarianceGeneratingFunction::KacComplex { n: 20 };
        let radii = [0.5, 0.9, 1.1, 2.0];
        let profile = mc_complex_radial(&vgf, &radii, &MCConfig::new(1_500, 61)).unwrap();
        for (i, &r) in radii.iter().enumerate() {
            let target = vgf.radial_count(r).unwrap();
            let sig = (profile.mean[i] - target).abs() / profile.stderr[i];
            assert!(sig < 3.0, "r={r}: {} vs {target}", profile.mean[i]);
        }
    }
}
