//! Expected root counts and densities for square systems of random
//! equations: m Gaussian equations in m unknowns, with closed forms for
//! the hypercube-support, multihomogeneous, harmonic, power-series and
//! entire families, and a finite-difference evaluator for arbitrary
//! covariance kernels at small m.

use crate::error::{Error, Result};
use crate::numerics::{log_gamma, Interval};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::f64::consts::PI;

/// Built-in system families.
#[derive(Debug, Clone)]
pub enum SystemFamily {
    /// Every monomial with each exponent at most `degree` (the support is
    /// a hypercube), iid standard normal coefficients.
    HypercubeKac { degree: usize, vars: usize },
    /// Multinomial coefficient variances; per-equation degrees.
    Kostlan { degrees: Vec<usize> },
    /// Homogeneous harmonic polynomials of the given degree in vars+1
    /// variables, in the rotation-invariant Gaussian measure.
    Harmonic { degree: usize, vars: usize },
    /// Power series with iid coefficients in each variable.
    PowerSeries { vars: usize },
    /// Entire functions (inverse-factorial variances) in each variable.
    Entire { vars: usize },
}

/// pi^{-(m+1)/2} Gamma((m+1)/2), the projective normalization constant.
fn projective_constant(m: usize) -> f64 {
    let a = (m as f64 + 1.0) / 2.0;
    (log_gamma(a).expect("positive argument") - a * PI.ln()).exp()
}

/// Expected number of real roots of the system.
pub fn systems_expected(family: &SystemFamily) -> Result<f64> {
    match family {
        SystemFamily::HypercubeKac { degree, vars } => {
            let e1 = crate::ensembles::kac_expected(*degree, 1e-10)?;
            Ok(projective_constant(*vars) * (PI * e1).powi(*vars as i32))
        }
        SystemFamily::Kostlan { degrees } => {
            if degrees.is_empty() || degrees.iter().any(|&d| d == 0) {
                return Err(Error::Domain("degrees must be positive".into()));
            }
            let prod: f64 = degrees.iter().map(|&d| d as f64).product();
            Ok(prod.sqrt())
        }
        SystemFamily::Harmonic { degree, vars } => {
            let (d, m) = (*degree as f64, *vars as f64);
            if *degree == 0 || *vars == 0 {
                return Err(Error::Domain("degree and vars must be positive".into()));
            }
            Ok((d * (d + m - 1.0) / m).powf(m / 2.0))
        }
        SystemFamily::PowerSeries { .. } | SystemFamily::Entire { .. } => {
            Err(Error::Unsupported(
                "this family has no finite total count; integrate the density over a region"
                    .into(),
            ))
        }
    }
}

/// Closed-form density of real roots at the point t in R^m.
pub fn systems_density(family: &SystemFamily, t: &[f64]) -> Result<f64> {
    let m = t.len();
    if m == 0 {
        return Err(Error::Domain("need at least one variable".into()));
    }
    let c = projective_constant(m);
    match family {
        SystemFamily::HypercubeKac { degree, vars } => {
            check_vars(*vars, m)?;
            let kac = crate::ensembles::ClosedFormFamily::Kac { n: *degree };
            let mut prod = c;
            for &tk in t {
                prod *= PI * kac.density(tk)?;
            }
            Ok(prod)
        }
        SystemFamily::Kostlan { degrees } => {
            check_vars(degrees.len(), m)?;
            let d0 = degrees[0];
            if degrees.iter().any(|&d| d != d0) {
                return Err(Error::Unsupported(
                    "closed-form density needs equal degrees; only the total count is \
                     closed-form for mixed degrees"
                        .into(),
                ));
            }
            let tt: f64 = t.iter().map(|x| x * x).sum();
            Ok(c * (d0 as f64).powf(m as f64 / 2.0)
                / (1.0 + tt).powf((m as f64 + 1.0) / 2.0))
        }
        SystemFamily::Harmonic { degree, vars } => {
            check_vars(*vars, m)?;
            let (d, mf) = (*degree as f64, m as f64);
            let tt: f64 = t.iter().map(|x| x * x).sum();
            Ok(c * (d * (d + mf - 1.0) / mf).powf(mf / 2.0)
                / (1.0 + tt).powf((mf + 1.0) / 2.0))
        }
        SystemFamily::PowerSeries { vars } => {
            check_vars(*vars, m)?;
            let mut prod = c;
            for &tk in t {
                if tk.abs() >= 1.0 {
                    return Err(Error::Domain(format!(
                        "power series density needs |t_k| < 1, got {tk}"
                    )));
                }
                prod /= 1.0 - tk * tk;
            }
            Ok(prod)
        }
        SystemFamily::Entire { vars } => {
            check_vars(*vars, m)?;
            Ok(c)
        }
    }
}

fn check_vars(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Domain(format!(
            "family has {expected} variables but the point has {got}"
        )));
    }
    Ok(())
}

/// Density of real roots for an arbitrary covariance kernel
/// K(x, y) = v(x)^T C v(y): the projective constant times the square
/// root of det [ d^2/dx_i dy_j log K ] on the diagonal, with the mixed
/// partials taken by four-point central differences (step 1e-4, one
/// log-of-ratio per entry). Supported for m <= 3.
pub fn systems_density_general<F>(kernel: F, t: &[f64]) -> Result<f64>
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    let m = t.len();
    if m == 0 || m > 3 {
        return Err(Error::Domain(format!(
            "finite-difference density supports 1 <= m <= 3, got {m}"
        )));
    }
    let h = 1e-4;
    let mut hess = [[0.0f64; 3]; 3];
    let mut x = t.to_vec();
    let mut y = t.to_vec();
    for i in 0..m {
        for j in 0..m {
            let mut k_at = |si: f64, sj: f64| {
                x[i] = t[i] + si * h;
                y[j] = t[j] + sj * h;
                let v = kernel(&x, &y);
                x[i] = t[i];
                y[j] = t[j];
                v
            };
            let kpp = k_at(1.0, 1.0);
            let kmm = k_at(-1.0, -1.0);
            let kpm = k_at(1.0, -1.0);
            let kmp = k_at(-1.0, 1.0);
            if !(kpp > 0.0 && kmm > 0.0 && kpm > 0.0 && kmp > 0.0) {
                return Err(Error::Evaluation(
                    "kernel must be positive near the evaluation point".into(),
                ));
            }
            hess[i][j] = ((kpp / kpm) * (kmm / kmp)).ln() / (4.0 * h * h);
        }
    }
    // symmetrize and test positive definiteness through leading minors
    let mut s = [[0.0f64; 3]; 3];
    for i in 0..m {
        for j in 0..m {
            s[i][j] = 0.5 * (hess[i][j] + hess[j][i]);
        }
    }
    const SLACK: f64 = 1e-8;
    let det = match m {
        1 => s[0][0],
        2 => {
            if s[0][0] < -SLACK {
                return Err(non_pd(s[0][0]));
            }
            s[0][0] * s[1][1] - s[0][1] * s[0][1]
        }
        _ => {
            let minor1 = s[0][0];
            let minor2 = s[0][0] * s[1][1] - s[0][1] * s[0][1];
            if minor1 < -SLACK || minor2 < -SLACK {
                return Err(non_pd(minor1.min(minor2)));
            }
            s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1])
                - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
                + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0])
        }
    };
    if det < -SLACK {
        return Err(non_pd(det));
    }
    Ok(projective_constant(m) * det.max(0.0).sqrt())
}

fn non_pd(v: f64) -> Error {
    Error::Evaluation(format!(
        "log-kernel Hessian not positive definite (minor {v:e} beyond slack)"
    ))
}

/// Coefficients beta_k of the rotation-invariant kernel
/// sum_k beta_k (x.x)^k (y.y)^k (x.y)^{d-2k} of harmonic polynomials of
/// degree d in m+1 variables, normalized to beta_0 = 1.
#[derive(Debug, Clone)]
pub struct HarmonicCoeffs {
    pub beta: Vec<f64>,
}

/// beta_k from the closed-form double-factorial ratio, verified term by
/// term against the Laplacian recurrence
/// 2k(m + 2d - 2k - 1) beta_k + (d - 2k + 2)(d - 2k + 1) beta_{k-1} = 0
/// in exact rational arithmetic.
pub fn harmonic_coeffs(degree: usize, vars: usize) -> Result<HarmonicCoeffs> {
    if degree == 0 || vars == 0 {
        return Err(Error::Domain("degree and vars must be positive".into()));
    }
    let exact = harmonic_coeffs_exact(degree, vars)?;
    let beta = exact
        .iter()
        .map(|b| rational_to_f64(b))
        .collect::<Vec<f64>>();
    if beta.iter().any(|b| !b.is_finite()) {
        return Err(Error::Evaluation(format!(
            "harmonic coefficients overflow f64 at degree {degree}"
        )));
    }
    Ok(HarmonicCoeffs { beta })
}

/// Exact residuals of the defining recurrence; all zero by construction,
/// exposed so tests can assert exactness independently.
pub fn harmonic_recurrence_residuals(degree: usize, vars: usize) -> Result<Vec<BigRational>> {
    let beta = harmonic_coeffs_exact(degree, vars)?;
    let d = degree as i64;
    let m = vars as i64;
    let mut out = Vec::new();
    for k in 1..beta.len() as i64 {
        let lhs = BigRational::from(BigInt::from(2 * k * (m + 2 * d - 2 * k - 1)))
            * &beta[k as usize]
            + BigRational::from(BigInt::from((d - 2 * k + 2) * (d - 2 * k + 1)))
                * &beta[(k - 1) as usize];
        out.push(lhs);
    }
    Ok(out)
}

fn harmonic_coeffs_exact(degree: usize, vars: usize) -> Result<Vec<BigRational>> {
    let d = degree as i64;
    let m = vars as i64;
    let mut beta = Vec::with_capacity(degree / 2 + 1);
    for k in 0..=(d / 2) {
        // (-1)^k d! (m+2d-2k-3)!! / (2^k k! (d-2k)! (m+2d-3)!!)
        let num = factorial_big(d) * double_factorial_big(m + 2 * d - 2 * k - 3);
        let den = BigInt::from(2).pow(k as u32)
            * factorial_big(k)
            * factorial_big(d - 2 * k)
            * double_factorial_big(m + 2 * d - 3);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        beta.push(BigRational::new(num * BigInt::from(sign), den));
    }
    Ok(beta)
}

fn factorial_big(n: i64) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=n {
        acc *= i;
    }
    acc
}

fn double_factorial_big(n: i64) -> BigInt {
    // (-1)!! = 0!! = 1
    let mut acc = BigInt::from(1);
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // good enough for the magnitudes that fit in f64
    let num = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    num / den
}

/// The rotation-invariant harmonic covariance kernel as a closure over
/// affine-chart points x in R^m (homogeneous coordinates (1, x)).
pub fn harmonic_kernel(degree: usize, vars: usize) -> Result<impl Fn(&[f64], &[f64]) -> f64> {
    let beta = harmonic_coeffs(degree, vars)?.beta;
    let d = degree;
    Ok(move |x: &[f64], y: &[f64]| {
        let xx = 1.0 + dot(x, x);
        let yy = 1.0 + dot(y, y);
        let xy = 1.0 + dot(x, y);
        beta.iter()
            .enumerate()
            .map(|(k, b)| b * xx.powi(k as i32) * yy.powi(k as i32) * xy.powi((d - 2 * k) as i32))
            .sum()
    })
}

/// (1 + x.y)^d, the multinomial-variance kernel.
pub fn kostlan_kernel(degree: usize) -> impl Fn(&[f64], &[f64]) -> f64 {
    move |x, y| (1.0 + dot(x, y)).powi(degree as i32)
}

/// e^{x.y}, the entire-function kernel.
pub fn entire_kernel() -> impl Fn(&[f64], &[f64]) -> f64 {
    |x, y| dot(x, y).exp()
}

/// prod_k 1/(1 - x_k y_k), the power-series kernel.
pub fn power_series_kernel() -> impl Fn(&[f64], &[f64]) -> f64 {
    |x, y| {
        x.iter()
            .zip(y)
            .map(|(a, b)| 1.0 / (1.0 - a * b))
            .product()
    }
}

/// prod_i sum_{j<=d} (x_i y_i)^j, the hypercube-support kernel.
pub fn hypercube_kernel(degree: usize) -> impl Fn(&[f64], &[f64]) -> f64 {
    move |x, y| {
        x.iter()
            .zip(y)
            .map(|(a, b)| {
                let u = a * b;
                let mut s = 1.0;
                let mut p = 1.0;
                for _ in 0..degree {
                    p *= u;
                    s += p;
                }
                s
            })
            .product()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integral of the density over a rectangle by nested adaptive
/// quadrature (per-axis tolerance scaled from `tol`).
pub fn integrate_density_2d(
    family: &SystemFamily,
    x_range: Interval,
    y_range: Interval,
    tol: f64,
) -> Result<f64> {
    let failure = std::cell::RefCell::new(None);
    let outer = crate::numerics::integrate_adaptive(
        |x| {
            let inner = crate::numerics::integrate_adaptive(
                |y| match systems_density(family, &[x, y]) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        f64::NAN
                    }
                },
                y_range,
                tol / 100.0,
            );
            match inner {
                Ok(q) => q.value,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            }
        },
        x_range,
        tol,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(outer?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_zero(r: &BigRational) -> bool {
        *r == BigRational::from(BigInt::from(0))
    }

    #[test]
    fn expected_counts_reference_points() {
        // mixed-degree multihomogeneous: sqrt(4*9) = 6
        let f = SystemFamily::Kostlan {
            degrees: vec![4, 9],
        };
        assert!((systems_expected(&f).unwrap() - 6.0).abs() < 1e-13);
        // equal degrees: d^{m/2}
        let f = SystemFamily::Kostlan {
            degrees: vec![3, 3],
        };
        assert!((systems_expected(&f).unwrap() - 3.0).abs() < 1e-13);
        // harmonic d=2, m=1: (d(d+m-1)/m)^{m/2} = 2
        let f = SystemFamily::Harmonic { degree: 2, vars: 1 };
        assert!((systems_expected(&f).unwrap() - 2.0).abs() < 1e-13);
        // harmonic at d=1 is 1 for every m
        for m in 1..=5 {
            let f = SystemFamily::Harmonic { degree: 1, vars: m };
            assert!((systems_expected(&f).unwrap() - 1.0).abs() < 1e-13);
        }
        assert!(systems_expected(&SystemFamily::PowerSeries { vars: 2 }).is_err());
    }

    #[test]
    fn hypercube_expected_from_univariate_quadrature() {
        // pi^{-3/2} Gamma(3/2) (pi E_2)^2 with E_2 from quadrature
        let e2 = crate::ensembles::kac_expected(2, 1e-12).unwrap();
        let f = SystemFamily::HypercubeKac { degree: 2, vars: 2 };
        let got = systems_expected(&f).unwrap();
        let c = PI.powf(-1.5) * (PI.sqrt() / 2.0); // Gamma(3/2) = sqrt(pi)/2
        assert!((got - c * (PI * e2).powi(2)).abs() < 1e-10);
    }

    #[test]
    fn density_reference_points() {
        // entire m=2: 1/(2 pi) everywhere
        let f = SystemFamily::Entire { vars: 2 };
        for t in [[0.0, 0.0], [1.5, -2.0]] {
            assert!((systems_density(&f, &t).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-13);
        }
        // power series m=2 at the origin: same constant
        let f = SystemFamily::PowerSeries { vars: 2 };
        assert!(
            (systems_density(&f, &[0.0, 0.0]).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-13
        );
        assert!(systems_density(&f, &[1.0, 0.0]).is_err());
        // m=1 reduction of the multihomogeneous family: sqrt(d)/(pi(1+t^2))
        for d in [2usize, 5] {
            let f = SystemFamily::Kostlan { degrees: vec![d] };
            for &t in &[0.0, 0.7, -2.0] {
                let want = (d as f64).sqrt() / (PI * (1.0 + t * t));
                assert!((systems_density(&f, &[t]).unwrap() - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn m1_reductions_match_univariate_module() {
        // hypercube at m=1 is the plain iid polynomial density
        let f = SystemFamily::HypercubeKac { degree: 7, vars: 1 };
        let kac = crate::ensembles::ClosedFormFamily::Kac { n: 7 };
        for &t in &[0.0, 0.5, 0.9] {
            let a = systems_density(&f, &[t]).unwrap();
            let b = kac.density(t).unwrap();
            assert!((a - b).abs() < 1e-10, "t={t}");
        }
        // power series at m=1
        let f = SystemFamily::PowerSeries { vars: 1 };
        let ps = crate::ensembles::ClosedFormFamily::PowerSeries;
        for &t in &[0.0, 0.6] {
            assert!(
                (systems_density(&f, &[t]).unwrap() - ps.density(t).unwrap()).abs() < 1e-12
            );
        }
        // harmonic total at m=1 equals d
        for d in [1usize, 2, 6] {
            let f = SystemFamily::Harmonic { degree: d, vars: 1 };
            assert!((systems_expected(&f).unwrap() - d as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn general_fd_density_matches_closed_forms() {
        // multinomial kernel at the origin and off-origin, m=2
        let d = 4usize;
        let f = SystemFamily::Kostlan {
            degrees: vec![d, d],
        };
        for t in [[0.0, 0.0], [0.5, -0.3]] {
            let fd = systems_density_general(kostlan_kernel(d), &t).unwrap();
            let cf = systems_density(&f, &t).unwrap();
            assert!((fd - cf).abs() < 1e-5, "kostlan at {t:?}: {fd} vs {cf}");
        }
        // e^{x.y} kernel: constant 1/(2 pi) at any point
        for t in [[0.0, 0.0], [1.0, 2.0], [-0.7, 0.1]] {
            let fd = systems_density_general(entire_kernel(), &t).unwrap();
            assert!((fd - 1.0 / (2.0 * PI)).abs() < 1e-6, "entire at {t:?}");
        }
        // hypercube kernel factorizes into univariate densities
        let f = SystemFamily::HypercubeKac { degree: 2, vars: 2 };
        for t in [[0.0, 0.0], [0.4, 0.8]] {
            let fd = systems_density_general(hypercube_kernel(2), &t).unwrap();
            let cf = systems_density(&f, &t).unwrap();
            assert!((fd - cf).abs() < 1e-5, "hypercube at {t:?}: {fd} vs {cf}");
        }
        // power series kernel, m=2
        let f = SystemFamily::PowerSeries { vars: 2 };
        for t in [[0.0, 0.0], [0.3, -0.5]] {
            let fd = systems_density_general(power_series_kernel(), &t).unwrap();
            let cf = systems_density(&f, &t).unwrap();
            assert!((fd - cf).abs() < 1e-5, "power series at {t:?}");
        }
        // m=3 entire kernel: pi^{-2} Gamma(2) = 1/pi^2
        let fd = systems_density_general(entire_kernel(), &[0.1, 0.2, -0.3]).unwrap();
        assert!((fd - 1.0 / (PI * PI)).abs() < 1e-6);
        assert!(systems_density_general(entire_kernel(), &[0.0; 4]).is_err());
    }

    #[test]
    fn harmonic_kernel_matches_projective_closed_form() {
        for (d, m) in [(2usize, 2usize), (3, 2), (4, 2), (2, 3)] {
            let f = SystemFamily::Harmonic { degree: d, vars: m };
            let kernel = harmonic_kernel(d, m).unwrap();
            let pts: Vec<Vec<f64>> = if m == 2 {
                vec![vec![0.0, 0.0], vec![0.5, -0.2], vec![1.0, 1.0]]
            } else {
                vec![vec![0.0, 0.0, 0.0], vec![0.3, -0.1, 0.4]]
            };
            for t in pts {
                let fd = systems_density_general(&kernel, &t).unwrap();
                let cf = systems_density(&f, &t).unwrap();
                assert!(
                    (fd - cf).abs() < 1e-5,
                    "harmonic d={d} m={m} at {t:?}: {fd} vs {cf}"
                );
            }
        }
    }

    #[test]
    fn harmonic_coefficients_reference_values() {
        // d=2, m=2: beta_1 = -1/3
        let h = harmonic_coeffs(2, 2).unwrap();
        assert_eq!(h.beta[0], 1.0);
        assert!((h.beta[1] - (-1.0 / 3.0)).abs() < 1e-15);
        // normalization for any (d, m)
        for (d, m) in [(5usize, 3usize), (9, 1), (12, 4)] {
            assert_eq!(harmonic_coeffs(d, m).unwrap().beta[0], 1.0);
        }
    }

    #[test]
    fn harmonic_recurrence_is_exact() {
        for d in 1..=10 {
            for m in 1..=5 {
                for (k, r) in harmonic_recurrence_residuals(d, m)
                    .unwrap()
                    .iter()
                    .enumerate()
                {
                    assert!(is_zero(r), "residual at d={d} m={m} k={}", k + 1);
                }
            }
        }
        // stays exact well beyond desk scale thanks to big rationals
        for (k, r) in harmonic_recurrence_residuals(30, 3)
            .unwrap()
            .iter()
            .enumerate()
        {
            assert!(is_zero(r), "residual at d=30 k={}", k + 1);
        }
    }

    #[test]
    fn kostlan_density_integrates_to_total() {
        let f = SystemFamily::Kostlan {
            degrees: vec![1, 1],
        };
        let v = integrate_density_2d(&f, Interval::entire(), Interval::entire(), 1e-6).unwrap();
        assert!((v - 1.0).abs() < 1e-4, "integrated {v}");
    }
}
