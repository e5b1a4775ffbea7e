//! The cross-validation suite: every analytic result checked against an
//! independent computation path (closed form vs engine, engine vs Monte
//! Carlo, quadrature vs asymptotics), with tolerances pinned in code.
//! The `acceptance` integration test and the `selftest` CLI subcommand
//! both run [`run_all`] and report one line per criterion.

use crate::complex_zeros::{dirichlet_strip_count, VarianceGeneratingFunction};
use crate::ensembles::{
    case1_mean, case2_mean, kac_asymptotic, kac_asymptotic_constant, kac_expected,
    spijker_length, ClosedFormFamily,
};
use crate::error::Result;
use crate::kernel::Ensemble;
use crate::matrices::{char_poly, kac_matrix, matrix_poly_factor, real_eigen_asymptotic,
    real_eigen_expected};
use crate::mc::{mc_complex_radial, mc_fixed_points, mc_matrix_poly, mc_real_eigenvalues,
    mc_real_zeros, sturm_count, MCConfig};
use crate::numerics::{erf, exp_integral_gamma0, GaussianStream, Interval, Poly};
use crate::systems::{
    entire_kernel, harmonic_kernel, harmonic_recurrence_residuals, hypercube_kernel,
    integrate_density_2d, kostlan_kernel, power_series_kernel, systems_density,
    systems_density_general, SystemFamily,
};
use std::f64::consts::{PI, SQRT_2};
use std::time::Instant;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "[{:>2}/14] {} {} - {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Run all fourteen criteria and collect their outcomes.
pub fn run_all() -> Vec<Criterion> {
    vec![
        c01_asymptotic_constant(),
        c02_asymptotic_error_bound(),
        c03_binomial_exactness(),
        c04_mixed_basis_example(),
        c05_engine_cross_validation(),
        c06_noncentral_closed_forms(),
        c07_mc_concordance(),
        c08_fixed_points(),
        c09_random_matrices(),
        c10_matrix_polynomials(),
        c11_systems(),
        c12_complex(),
        c13_buffon_and_curve_bound(),
        c14_integer_spectrum_matrix(),
    ]
}

fn fail(id: usize, name: &'static str, err: impl std::fmt::Display) -> Criterion {
    Criterion {
        id,
        name,
        passed: false,
        detail: format!("errored: {err}"),
    }
}

fn c01_asymptotic_constant() -> Criterion {
    let start = Instant::now();
    let c1 = kac_asymptotic_constant();
    let elapsed = start.elapsed().as_secs_f64();
    let target = 0.625_735_807_2;
    let diff = (c1 - target).abs();
    Criterion {
        id: 1,
        name: "asymptotic constant by quadrature",
        passed: diff <= 1e-8 && elapsed < 1.0,
        detail: format!("C1 = {c1:.11} (|diff| = {diff:.2e}, {elapsed:.2}s)"),
    }
}

fn c02_asymptotic_error_bound() -> Criterion {
    let name = "quadrature vs three-term asymptotic";
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for &n in &[100usize, 1000, 10_000] {
        let quad = match kac_expected(n, 1e-9) {
            Ok(v) => v,
            Err(e) => return fail(2, name, e),
        };
        let asym = kac_asymptotic(n).value;
        let diff = (quad - asym).abs();
        let bound = 5.0 / (n * n) as f64;
        ok &= diff <= bound;
        details.push(format!("n={n}: |diff|={diff:.2e} vs {bound:.2e}"));
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 10.0;
    Criterion {
        id: 2,
        name,
        passed: ok,
        detail: format!("{} ({elapsed:.2}s)", details.join("; ")),
    }
}

fn c03_binomial_exactness() -> Criterion {
    let name = "binomial-variance total is sqrt(n)";
    let mut worst = 0.0f64;
    for &n in &[1usize, 4, 9, 100] {
        let q = match Ensemble::binomial_poly(n).expected_zeros(Interval::entire(), 1e-10) {
            Ok(q) => q,
            Err(e) => return fail(3, name, e),
        };
        worst = worst.max((q.value - (n as f64).sqrt()).abs());
    }
    Criterion {
        id: 3,
        name,
        passed: worst <= 1e-8,
        detail: format!("worst |count - sqrt(n)| = {worst:.2e} over n in {{1,4,9,100}}"),
    }
}

// the stated target happens to be 2/pi to five digits; it is asserted
// verbatim
#[allow(clippy::approx_constant)]
fn c04_mixed_basis_example() -> Criterion {
    let name = "mixed {1, sin, e^|t|} example";
    let e = Ensemble::one_sin_expabs();
    let q = match e.expected_zeros(Interval::entire(), 1e-8) {
        Ok(q) => q,
        Err(e) => return fail(4, name, e),
    };
    let target = 0.63662;
    let diff = (q.value - target).abs();
    Criterion {
        id: 4,
        name,
        passed: diff <= 1e-4,
        detail: format!(
            "computed {:.7} vs stated {target} (|diff| = {diff:.2e}; three independent \
             computations agree on 0.6460663)",
            q.value
        ),
    }
}

fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(move |i| lo + step * i as f64)
}

fn c05_engine_cross_validation() -> Criterion {
    let name = "direct vs log-derivative vs closed forms";
    let cases: Vec<(ClosedFormFamily, f64, f64, f64)> = vec![
        (ClosedFormFamily::Kac { n: 8 }, -3.0, 3.0, 1e-4),
        (ClosedFormFamily::Kostlan { n: 9 }, -5.0, 5.0, 1e-4),
        (ClosedFormFamily::PowerSeries, -0.95, 0.95, 2e-5),
        (
            ClosedFormFamily::CorrelatedPowerSeries { r: 0.3 },
            -0.95,
            0.95,
            2e-5,
        ),
        (ClosedFormFamily::Entire, -3.0, 3.0, 1e-4),
        (
            ClosedFormFamily::TrigSum {
                sigmas: vec![1.0, 0.5],
                nus: vec![1.0, 3.0],
            },
            0.0,
            2.0 * PI,
            1e-4,
        ),
        (ClosedFormFamily::Dirichlet, 1.5, 3.0, 1e-4),
    ];
    let mut worst_paths = 0.0f64;
    let mut worst_closed = 0.0f64;
    for (family, lo, hi, h) in cases {
        let e = match family.ensemble() {
            Ok(e) => e,
            Err(err) => return fail(5, name, err),
        };
        for t in grid(lo, hi, 201) {
            let direct = match e.density_central(t) {
                Ok(v) => v,
                Err(err) => return fail(5, name, format!("{family:?} at {t}: {err}")),
            };
            let log = match e.density_central_logderiv(t, h) {
                Ok(v) => v,
                Err(err) => return fail(5, name, format!("{family:?} at {t}: {err}")),
            };
            let closed = match family.density(t) {
                Ok(v) => v,
                Err(err) => return fail(5, name, format!("{family:?} at {t}: {err}")),
            };
            worst_paths = worst_paths.max((direct - log).abs());
            worst_closed = worst_closed.max((direct - closed).abs());
        }
    }
    Criterion {
        id: 5,
        name,
        passed: worst_paths <= 1e-6 && worst_closed <= 1e-8,
        detail: format!(
            "worst |direct - logderiv| = {worst_paths:.2e} (tol 1e-6), \
             worst |engine - closed| = {worst_closed:.2e} (tol 1e-8), 201-point grids, 7 families"
        ),
    }
}

fn c06_noncentral_closed_forms() -> Criterion {
    let name = "non-central densities integrate to their closed forms";
    // shifted quadratic: total sqrt(2) e^{-m^2/2}
    let family = ClosedFormFamily::Kostlan { n: 2 };
    let mut worst1 = 0.0f64;
    for &m in &[0.0, 0.5, 1.0, 2.0] {
        let mean = match case1_mean(&family, m) {
            Ok(v) => v,
            Err(e) => return fail(6, name, e),
        };
        let e = match Ensemble::binomial_poly(2).with_mean(mean) {
            Ok(v) => v,
            Err(e) => return fail(6, name, e),
        };
        let q = match e.expected_zeros(Interval::entire(), 1e-9) {
            Ok(v) => v,
            Err(e) => return fail(6, name, e),
        };
        let target = SQRT_2 * (-0.5 * m * m).exp();
        worst1 = worst1.max((q.value - target).abs());
    }
    // tangent-matched power series on [0, 0.9]:
    // integral = [erf^2(m0/sqrt2)/4 - Gamma(0, m0^2)/(2 pi)] at the ends
    let m = 1.0;
    let ps = ClosedFormFamily::PowerSeries;
    let e = match ps
        .ensemble()
        .and_then(|e| e.with_mean(case2_mean(&ps, m, 0.0)?))
    {
        Ok(v) => v,
        Err(e) => return fail(6, name, e),
    };
    let q = match e.expected_zeros(Interval::new(0.0, 0.9), 1e-10) {
        Ok(v) => v,
        Err(e) => return fail(6, name, e),
    };
    let anti = |t: f64| -> Result<f64> {
        let m0 = m * ((1.0 + t) / (1.0 - t)).sqrt();
        Ok(0.25 * erf(m0 / SQRT_2).powi(2) - exp_integral_gamma0(m0 * m0)? / (2.0 * PI))
    };
    let closed = match (anti(0.9), anti(0.0)) {
        (Ok(b), Ok(a)) => b - a,
        (Err(e), _) | (_, Err(e)) => return fail(6, name, e),
    };
    let diff2 = (q.value - closed).abs();
    Criterion {
        id: 6,
        name,
        passed: worst1 <= 1e-6 && diff2 <= 1e-8,
        detail: format!(
            "constant-projection worst |diff| = {worst1:.2e} (tol 1e-6); \
             tangent-matched [0,0.9]: |{:.10} - {closed:.10}| = {diff2:.2e} (tol 1e-8)",
            q.value
        ),
    }
}

fn c07_mc_concordance() -> Criterion {
    let name = "Monte Carlo concordance at N = 1e5";
    let start = Instant::now();
    let n_samples = 100_000;
    let mut details = Vec::new();
    let mut ok = true;

    let kac_target = match kac_expected(5, 1e-10) {
        Ok(v) => v,
        Err(e) => return fail(7, name, e),
    };
    let run = |e: &Ensemble, seed: u64| -> Result<crate::mc::MCEstimate> {
        mc_real_zeros(e, Interval::entire(), &MCConfig::new(n_samples, seed))
    };
    let cases: Vec<(&str, Result<Ensemble>, f64, u64)> = vec![
        ("iid n=5", Ok(Ensemble::iid_poly(5)), kac_target, 42),
        ("binomial n=9", Ok(Ensemble::binomial_poly(9)), 3.0, 43),
        (
            "shifted quadratic m=1",
            case1_mean(&ClosedFormFamily::Kostlan { n: 2 }, 1.0)
                .and_then(|mean| Ensemble::binomial_poly(2).with_mean(mean)),
            SQRT_2 * (-0.5f64).exp(),
            44,
        ),
    ];
    for (label, ensemble, target, seed) in cases {
        let e = match ensemble {
            Ok(e) => e,
            Err(err) => return fail(7, name, err),
        };
        match run(&e, seed) {
            Ok(est) => {
                let sig = est.sigmas_from(target);
                ok &= sig <= 3.0;
                details.push(format!("{label}: {:.4} vs {target:.4} ({sig:.2} se)", est.mean));
            }
            Err(err) => return fail(7, name, err),
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 120.0;
    Criterion {
        id: 7,
        name,
        passed: ok,
        detail: format!("{} ({elapsed:.1}s)", details.join("; ")),
    }
}

fn c08_fixed_points() -> Criterion {
    let name = "fixed points of random rational maps";
    match mc_fixed_points(3, &MCConfig::new(100_000, 45)) {
        Ok(est) => {
            let sig = est.sigmas_from(2.0);
            Criterion {
                id: 8,
                name,
                passed: sig <= 3.0,
                detail: format!(
                    "n=3: {:.4} +- {:.4} vs 2 ({sig:.2} se, {} resampled)",
                    est.mean, est.stderr, est.resampled
                ),
            }
        }
        Err(e) => fail(8, name, e),
    }
}

fn c09_random_matrices() -> Criterion {
    let name = "real eigenvalues of Gaussian matrices";
    let mut ok = true;
    let mut details = Vec::new();
    let cases = [(2usize, SQRT_2, 46u64), (4, 11.0 * SQRT_2 / 8.0, 47)];
    for (n, target, seed) in cases {
        match mc_real_eigenvalues(n, &MCConfig::new(100_000, seed)) {
            Ok(est) => {
                let sig = est.sigmas_from(target);
                ok &= sig <= 3.0;
                details.push(format!("n={n}: {:.4} vs {target:.4} ({sig:.2} se)", est.mean));
            }
            Err(e) => return fail(9, name, e),
        }
    }
    let ratio = match real_eigen_expected(200) {
        Ok(v) => v / real_eigen_asymptotic(200),
        Err(e) => return fail(9, name, e),
    };
    let ratio_ok = (0.98..=1.02).contains(&ratio);
    ok &= ratio_ok;
    details.push(format!(
        "E(200)/sqrt(400/pi) = {ratio:.5} (window [0.98, 1.02]; the exact count \
         carries a +1/2 offset, entering the window only near n = 1000)"
    ));
    Criterion {
        id: 9,
        name,
        passed: ok,
        detail: details.join("; "),
    }
}

fn c10_matrix_polynomials() -> Criterion {
    let name = "matrix polynomial eigenvalue factor";
    let e2 = match kac_expected(2, 1e-10) {
        Ok(v) => v,
        Err(e) => return fail(10, name, e),
    };
    let factor = match matrix_poly_factor(2) {
        Ok(v) => v,
        Err(e) => return fail(10, name, e),
    };
    let target = e2 * factor;
    match mc_matrix_poly(2, 2, &MCConfig::new(10_000, 48)) {
        Ok(est) => {
            let sig = est.sigmas_from(target);
            Criterion {
                id: 10,
                name,
                passed: sig <= 3.0,
                detail: format!(
                    "p=2, n=2: {:.4} +- {:.4} vs E2*(pi/2) = {target:.4} ({sig:.2} se)",
                    est.mean, est.stderr
                ),
            }
        }
        Err(e) => fail(10, name, e),
    }
}

fn c11_systems() -> Criterion {
    let name = "systems of equations";
    let mut ok = true;
    let mut details = Vec::new();
    // integrating the m=2 multinomial density recovers d
    for &d in &[1usize, 4] {
        let f = SystemFamily::Kostlan {
            degrees: vec![d, d],
        };
        match integrate_density_2d(&f, Interval::entire(), Interval::entire(), 1e-6) {
            Ok(v) => {
                let diff = (v - d as f64).abs();
                ok &= diff <= 1e-4;
                details.push(format!("d={d}: 2D integral {v:.6} (|diff| {diff:.1e})"));
            }
            Err(e) => return fail(11, name, e),
        }
    }
    // finite-difference general density vs closed forms, 5 points each
    let pts = [
        [0.0, 0.0],
        [0.5, -0.3],
        [0.2, 0.2],
        [-0.4, 0.1],
        [0.3, 0.6],
    ];
    let mut worst = 0.0f64;
    let mut check = |label: &str,
                     kernel: &dyn Fn(&[f64], &[f64]) -> f64,
                     family: &SystemFamily|
     -> Result<()> {
        for t in &pts {
            let fd = systems_density_general(kernel, t)?;
            let cf = systems_density(family, t)?;
            let d = (fd - cf).abs();
            if d > worst {
                worst = d;
            }
            if d > 1e-5 {
                details.push(format!("{label} at {t:?}: fd {fd} vs closed {cf}"));
            }
        }
        Ok(())
    };
    let k4 = kostlan_kernel(4);
    let ek = entire_kernel();
    let pk = power_series_kernel();
    let hk = hypercube_kernel(2);
    let harmk = match harmonic_kernel(3, 2) {
        Ok(k) => k,
        Err(e) => return fail(11, name, e),
    };
    let checks: Vec<(&str, &dyn Fn(&[f64], &[f64]) -> f64, SystemFamily)> = vec![
        (
            "multinomial d=4",
            &k4,
            SystemFamily::Kostlan {
                degrees: vec![4, 4],
            },
        ),
        ("entire", &ek, SystemFamily::Entire { vars: 2 }),
        ("power series", &pk, SystemFamily::PowerSeries { vars: 2 }),
        (
            "hypercube d=2",
            &hk,
            SystemFamily::HypercubeKac { degree: 2, vars: 2 },
        ),
        (
            "harmonic d=3",
            &harmk,
            SystemFamily::Harmonic { degree: 3, vars: 2 },
        ),
    ];
    for (label, kernel, family) in checks {
        if let Err(e) = check(label, kernel, &family) {
            return fail(11, name, format!("{label}: {e}"));
        }
    }
    ok &= worst <= 1e-5;
    details.push(format!("worst fd-vs-closed density |diff| = {worst:.2e}"));
    // exact recurrence residuals
    let mut exact = true;
    for d in 1..=10 {
        for m in 1..=5 {
            match harmonic_recurrence_residuals(d, m) {
                Ok(res) => {
                    exact &= res.iter().all(|r| {
                        *r == num_rational::BigRational::from(num_bigint::BigInt::from(0))
                    })
                }
                Err(e) => return fail(11, name, e),
            }
        }
    }
    ok &= exact;
    details.push(format!(
        "harmonic recurrence residuals exact for d <= 10, m <= 5: {exact}"
    ));
    Criterion {
        id: 11,
        name,
        passed: ok,
        detail: details.join("; "),
    }
}

fn c12_complex() -> Criterion {
    let name = "complex zeros: radial profile and strip counts";
    let vgf = VarianceGeneratingFunction::KostlanComplex { n: 10 };
    let radii = [0.5, 1.0, 2.0];
    let mut ok = true;
    let mut details = Vec::new();
    match mc_complex_radial(&vgf, &radii, &MCConfig::new(10_000, 49)) {
        Ok(profile) => {
            for (i, &r) in radii.iter().enumerate() {
                let target = match vgf.radial_count(r) {
                    Ok(v) => v,
                    Err(e) => return fail(12, name, e),
                };
                let sig = (profile.mean[i] - target).abs()
                    / if profile.stderr[i] > 0.0 {
                        profile.stderr[i]
                    } else {
                        f64::MIN_POSITIVE
                    };
                ok &= sig <= 3.0;
                details.push(format!(
                    "r={r}: {:.4} vs {target:.4} ({sig:.2} se)",
                    profile.mean[i]
                ));
            }
        }
        Err(e) => return fail(12, name, e),
    }
    // strip counts positive and diverging toward the half line
    let mut prev = 0.0;
    for &x1 in &[0.6, 0.55, 0.51] {
        match dirichlet_strip_count(x1, 1.0, 0.0, 1.0) {
            Ok(c) => {
                ok &= c > prev;
                prev = c;
                details.push(format!("strip x1={x1}: {c:.4}"));
            }
            Err(e) => return fail(12, name, e),
        }
    }
    Criterion {
        id: 12,
        name,
        passed: ok,
        detail: details.join("; "),
    }
}

fn c13_buffon_and_curve_bound() -> Criterion {
    let name = "needle identity and stereographic length bound";
    let mut ok = true;
    let mut details = Vec::new();
    for (label, e) in [
        ("iid n=4", Ensemble::iid_poly(4)),
        ("binomial n=4", Ensemble::binomial_poly(4)),
    ] {
        let len = match e.projected_arclength(Interval::entire(), 1e-9) {
            Ok(v) => v,
            Err(err) => return fail(13, name, err),
        };
        let count = match e.expected_zeros(Interval::entire(), 1e-10) {
            Ok(q) => q.value,
            Err(err) => return fail(13, name, err),
        };
        let diff = (len - PI * count).abs();
        ok &= diff <= 1e-5;
        details.push(format!("{label}: |length - pi count| = {diff:.2e}"));
    }
    // random degree-3 rational maps stay within the 2 n pi bound
    let mut stream = GaussianStream::new(1789, 0);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = Poly::new(stream.take_normals(4));
        let b = Poly::new(stream.take_normals(4));
        let c = Poly::new(stream.take_normals(4));
        let d = Poly::new(stream.take_normals(4));
        match spijker_length(&a, &b, &c, &d) {
            Ok(len) => worst = worst.max(len),
            Err(e) => return fail(13, name, e),
        }
    }
    ok &= worst <= 6.0 * PI + 1e-6;
    details.push(format!(
        "longest of 100 degree-3 curves {worst:.4} <= 6 pi = {:.4}",
        6.0 * PI
    ));
    Criterion {
        id: 13,
        name,
        passed: ok,
        detail: details.join("; "),
    }
}

fn c14_integer_spectrum_matrix() -> Criterion {
    let name = "bidiagonal test matrix has spectrum {2k - n}";
    for n in 1..=10usize {
        let p = match char_poly(&kac_matrix(n)) {
            Ok(p) => p,
            Err(e) => return fail(14, name, e),
        };
        for k in 0..=n {
            let center = 2.0 * k as f64 - n as f64;
            let c = match sturm_count(&p, Interval::new(center - 0.5, center + 0.5)) {
                Ok(c) => c,
                Err(e) => return fail(14, name, format!("n={n}, k={k}: {e}")),
            };
            if c != 1 {
                return Criterion {
                    id: 14,
                    name,
                    passed: false,
                    detail: format!("n={n}: bracket around {center} holds {c} roots"),
                };
            }
        }
    }
    Criterion {
        id: 14,
        name,
        passed: true,
        detail: "unit-width brackets around every integer eigenvalue hold exactly one root, \
                 n <= 10"
            .to_string(),
    }
}
