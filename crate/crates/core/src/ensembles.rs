//! Closed-form zero densities, expected counts, and asymptotics for the
//! named random-function families, each an independent check on the
//! covariance-kernel engine, plus the special non-central mean
//! constructions and the stereographic-curve length bound.

use crate::error::{Error, Result};
use crate::kernel::{Ensemble, Mean};
use crate::numerics::{
    double_factorial_ratio, erf, euler_gamma, exp_integral_gamma0, integrate_adaptive,
    zeta_derivs, Interval, Poly,
};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Inside this window around |t| = 1 the rational forms for the
/// iid-coefficient polynomial are 0/0 and the direct-summation kernel
/// path takes over.
const KAC_SWITCH_WINDOW: f64 = 1e-3;

/// Families whose zero density has a closed form.
#[derive(Debug, Clone)]
pub enum ClosedFormFamily {
    /// Degree-n polynomial, iid standard normal coefficients.
    Kac { n: usize },
    /// Degree-n polynomial, binomial coefficient variances.
    Kostlan { n: usize },
    /// Power series with iid coefficients, |t| < 1.
    PowerSeries,
    /// Power series with neighbor correlation r, |r| <= 1/2.
    CorrelatedPowerSeries { r: f64 },
    /// Random entire function, coefficient variances 1/k!.
    Entire,
    /// Trigonometric sum with mode scales sigma_k and frequencies nu_k.
    TrigSum { sigmas: Vec<f64>, nus: Vec<f64> },
    /// Random Dirichlet series, t > 1/2.
    Dirichlet,
}

impl ClosedFormFamily {
    /// The closed-form density of real zeros at t.
    pub fn density(&self, t: f64) -> Result<f64> {
        match self {
            ClosedFormFamily::Kac { n } => kac_density(*n, t),
            ClosedFormFamily::Kostlan { n } => Ok((*n as f64).sqrt() / (PI * (1.0 + t * t))),
            ClosedFormFamily::PowerSeries => {
                if t.abs() >= 1.0 {
                    return Err(Error::Domain(format!(
                        "power series density needs |t| < 1, got {t}"
                    )));
                }
                Ok(1.0 / (PI * (1.0 - t * t)))
            }
            ClosedFormFamily::CorrelatedPowerSeries { r } => {
                if r.abs() > 0.5 {
                    return Err(Error::Domain(format!("|r| <= 1/2 required, got {r}")));
                }
                if t.abs() >= 1.0 {
                    return Err(Error::Domain(format!(
                        "correlated power series density needs |t| < 1, got {t}"
                    )));
                }
                let u = 1.0 / (1.0 - t * t);
                let w = r / (1.0 + 2.0 * r * t);
                Ok((u * u - w * w).max(0.0).sqrt() / PI)
            }
            ClosedFormFamily::Entire => Ok(1.0 / PI),
            ClosedFormFamily::TrigSum { sigmas, nus } => trig_density_constant(sigmas, nus),
            ClosedFormFamily::Dirichlet => {
                if t <= 0.5 {
                    return Err(Error::Domain(format!(
                        "Dirichlet density needs t > 1/2, got {t}"
                    )));
                }
                // (1/2pi) sqrt(d^2/dt^2 log zeta(2t))
                let s = 2.0 * t;
                let z = zeta_derivs(s, 0)?;
                let z1 = zeta_derivs(s, 1)?;
                let z2 = zeta_derivs(s, 2)?;
                let log_second = 4.0 * (z2 / z - (z1 / z) * (z1 / z));
                Ok(log_second.max(0.0).sqrt() / (2.0 * PI))
            }
        }
    }

    /// Closed-form expected count on an interval, for the families that
    /// integrate in closed form.
    pub fn expected(&self, interval: Interval) -> Result<f64> {
        match self {
            ClosedFormFamily::Kostlan { n } => {
                let root_n = (*n as f64).sqrt();
                Ok(root_n / PI * (interval.hi.atan() - interval.lo.atan()))
            }
            ClosedFormFamily::PowerSeries => {
                let (a, b) = (interval.lo, interval.hi);
                if a.abs() >= 1.0 || b.abs() >= 1.0 {
                    return Err(Error::Domain(
                        "power series count needs [a, b] inside (-1, 1)".into(),
                    ));
                }
                Ok(((1.0 - a) * (1.0 + b) / ((1.0 + a) * (1.0 - b))).ln() / (2.0 * PI))
            }
            ClosedFormFamily::TrigSum { sigmas, nus } => {
                if !interval.is_finite() {
                    return Err(Error::Domain(
                        "trig sum count needs a finite interval".into(),
                    ));
                }
                Ok((interval.hi - interval.lo) * trig_density_constant(sigmas, nus)?)
            }
            ClosedFormFamily::Entire => {
                if !interval.is_finite() {
                    return Err(Error::Domain(
                        "entire-function count needs a finite interval".into(),
                    ));
                }
                Ok((interval.hi - interval.lo) / PI)
            }
            _ => Err(Error::Unsupported(format!(
                "{self:?} has no closed-form expected count; integrate the density"
            ))),
        }
    }

    /// The kernel-engine counterpart of this family with its default
    /// truncation parameters; the engine cross-validates the closed forms.
    pub fn ensemble(&self) -> Result<Ensemble> {
        match self {
            ClosedFormFamily::Kac { n } => Ok(Ensemble::iid_poly(*n)),
            ClosedFormFamily::Kostlan { n } => Ok(Ensemble::binomial_poly(*n)),
            ClosedFormFamily::PowerSeries => Ensemble::power_series(1e-3),
            ClosedFormFamily::CorrelatedPowerSeries { r } => {
                Ensemble::correlated_power_series(*r, 1e-3)
            }
            ClosedFormFamily::Entire => Ensemble::entire(8.0),
            ClosedFormFamily::TrigSum { sigmas, nus } => {
                Ensemble::trig_sum(sigmas.clone(), nus.clone())
            }
            ClosedFormFamily::Dirichlet => Ensemble::dirichlet(100_000),
        }
    }
}

fn trig_density_constant(sigmas: &[f64], nus: &[f64]) -> Result<f64> {
    if sigmas.len() != nus.len() || sigmas.is_empty() {
        return Err(Error::Domain(
            "trig sum needs equal-length nonempty sigma and nu lists".into(),
        ));
    }
    let s2: f64 = sigmas.iter().map(|s| s * s).sum();
    let n2s2: f64 = sigmas.iter().zip(nus).map(|(s, n)| n * n * s * s).sum();
    if s2 == 0.0 {
        return Err(Error::Domain("all sigma are zero".into()));
    }
    Ok((n2s2 / s2).sqrt() / PI)
}

/// Density of real zeros of the degree-n iid-coefficient polynomial.
/// Rational closed form away from |t| = 1, direct kernel sums inside the
/// switch window, and the t -> 1/t inversion symmetry beyond |t| = 1.
fn kac_density(n: usize, t: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let at = t.abs();
    if (t * t - 1.0).abs() < KAC_SWITCH_WINDOW {
        return Ok(kac_density_direct(n, t));
    }
    if at > 1.0 {
        return Ok(kac_density(n, 1.0 / t)? / (t * t));
    }
    let np1 = (n + 1) as f64;
    let u = 1.0 / (1.0 - t * t);
    let tp = at.powi(n as i32); // |t|^n, safe: |t| < 1
    let denom = 1.0 - tp * tp * t * t; // 1 - t^{2n+2}
    let w = np1 * tp / denom;
    Ok((u * u - w * w).max(0.0).sqrt() / PI)
}

/// Direct compensated sums of the three kernel quadratic forms for unit
/// weights; stable across |t| = 1 where the rational form is 0/0.
fn kac_density_direct(n: usize, t: f64) -> f64 {
    let mut a = 0.0f64;
    let mut ac = 0.0;
    let mut b = 0.0f64;
    let mut bc = 0.0;
    let mut d = 0.0f64;
    let mut dc = 0.0;
    let mut pw = 1.0; // t^{2k}
    let mut prev = 0.0; // t^{2k-1}, zeroed at k=0 where the term vanishes
    let mut prev2 = 0.0; // t^{2k-2}, likewise
    for k in 0..=n {
        let kf = k as f64;
        kahan_add(&mut a, &mut ac, pw);
        kahan_add(&mut b, &mut bc, kf * prev);
        kahan_add(&mut d, &mut dc, kf * kf * prev2);
        prev2 = pw;
        prev = pw * t;
        pw = pw * t * t;
    }
    ((a * d - b * b).max(0.0)).sqrt() / (PI * a)
}

fn kahan_add(sum: &mut f64, comp: &mut f64, x: f64) {
    let y = x - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// Expected number of real zeros of the degree-n iid-coefficient
/// polynomial by quadrature of the closed-form density: four times the
/// integral over [0, 1] (the density is even and inversion symmetric).
pub fn kac_expected(n: usize, tol: f64) -> Result<f64> {
    let failure = std::cell::RefCell::new(None);
    let q = integrate_adaptive(
        |t| match kac_density(n, t) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        Interval::new(0.0, 1.0),
        tol / 4.0,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(4.0 * q?.value)
}

/// 1/x^2 - 1/sinh^2 x, rearranged through its Laurent series near the
/// origin where the direct subtraction cancels catastrophically.
pub(crate) fn inverse_square_sinh_defect(x: f64) -> f64 {
    if x.abs() < 0.2 {
        let x2 = x * x;
        1.0 / 3.0 - x2 / 15.0 + 2.0 * x2 * x2 / 189.0 - x2 * x2 * x2 / 675.0
            + 2.0 * x2 * x2 * x2 * x2 / 10395.0
            - 15202.0 * x2.powi(5) / 638_512_875.0
    } else {
        let s = x.sinh();
        1.0 / (x * x) - 1.0 / (s * s)
    }
}

/// The constant term of the asymptotic expansion of the iid-polynomial
/// zero count, computed once by quadrature of its defining integral
/// (2/pi) [ ln 2 + int_0^inf { sqrt(1/x^2 - 4e^{-2x}/(1-e^{-2x})^2) - 1/(x+1) } dx ];
/// 4e^{-2x}/(1-e^{-2x})^2 is 1/sinh^2 x.
pub fn kac_asymptotic_constant() -> f64 {
    static C1: OnceLock<f64> = OnceLock::new();
    *C1.get_or_init(|| {
        let q = integrate_adaptive(
            |x| inverse_square_sinh_defect(x).max(0.0).sqrt() - 1.0 / (x + 1.0),
            Interval::new(0.0, f64::INFINITY),
            1e-12,
        )
        .expect("the defining integral converges");
        2.0 / PI * (std::f64::consts::LN_2 + q.value)
    })
}

/// An asymptotic value together with its labelled terms.
#[derive(Debug, Clone)]
pub struct AsymptoticResult {
    pub value: f64,
    pub terms: Vec<(String, f64)>,
}

/// Three-term asymptotic expansion (2/pi) ln n + C1 + 2/(n pi) of the
/// expected real-zero count of the degree-n iid polynomial.
pub fn kac_asymptotic(n: usize) -> AsymptoticResult {
    let nf = n as f64;
    let terms = vec![
        ("(2/pi) ln n".to_string(), 2.0 / PI * nf.ln()),
        ("C1".to_string(), kac_asymptotic_constant()),
        ("2/(n pi)".to_string(), 2.0 / (nf * PI)),
    ];
    AsymptoticResult {
        value: terms.iter().map(|(_, v)| v).sum(),
        terms,
    }
}

/// Asymptotics for iid normal coefficients with common nonzero
/// mean-to-deviation ratio m: the total expected count and the expected
/// number of positive zeros.
pub fn noncentral_asymptotic(n: usize, m: f64) -> Result<(f64, f64)> {
    if m == 0.0 {
        return Err(Error::Domain(
            "m = 0 is the central case; use the central asymptotic".into(),
        ));
    }
    if n < 2 {
        return Err(Error::Domain("asymptotic needs n >= 2".into()));
    }
    let nf = n as f64;
    let total = nf.ln() / PI + 0.5 * kac_asymptotic_constant() + 0.5 - euler_gamma() / PI
        - 2.0 / PI * m.abs().ln();
    let e = erf(m.abs() / std::f64::consts::SQRT_2);
    let positive = 0.5 - 0.5 * e * e + exp_integral_gamma0(m * m)? / PI;
    Ok((total, positive))
}

/// Mean specification making the normal projection m0 constant (the
/// density then is e^{-m^2/2} times the central one). Supported where
/// the norm of the weighted curve lies in the function span.
pub fn case1_mean(family: &ClosedFormFamily, m: f64) -> Result<Mean> {
    match family {
        ClosedFormFamily::Kostlan { n } => {
            if n % 2 != 0 {
                return Err(Error::Unsupported(
                    "constant-projection mean needs even degree".into(),
                ));
            }
            // mu(t) = m (1+t^2)^{n/2}: coefficient on basis k = 2j is
            // m C(n/2, j) / sqrt(C(n, 2j))
            let half = n / 2;
            let mut coeffs = vec![0.0; n + 1];
            let mut ch = 1.0f64; // C(n/2, j)
            let mut cn = 1.0f64; // C(n, k) tracked over k
            let mut k = 0usize;
            for j in 0..=half {
                while k < 2 * j {
                    cn = cn * (n - k) as f64 / (k + 1) as f64;
                    k += 1;
                }
                coeffs[2 * j] = m * ch / cn.sqrt();
                ch = ch * (half - j) as f64 / (j + 1) as f64;
            }
            Ok(Mean::Coefficients(coeffs))
        }
        ClosedFormFamily::PowerSeries => {
            let dim = family.ensemble()?.dimension();
            // mu(t) = m (1-t^2)^{-1/2} = m sum (2j-1)!!/(2j)!! t^{2j}
            let mut coeffs = vec![0.0; dim];
            let mut c = 1.0;
            let mut j = 0usize;
            while 2 * j < dim {
                coeffs[2 * j] = m * c;
                c *= (2 * j + 1) as f64 / (2 * j + 2) as f64;
                j += 1;
            }
            Ok(Mean::Coefficients(coeffs))
        }
        ClosedFormFamily::Entire => {
            let dim = family.ensemble()?.dimension();
            // mu(t) = m e^{t^2/2}: coefficient on basis 2j is
            // m sqrt((2j)!)/(2^j j!)
            let mut coeffs = vec![0.0; dim];
            let mut c = 1.0;
            let mut j = 0usize;
            while 2 * j < dim {
                coeffs[2 * j] = m * c;
                c *= ((2 * j + 1) as f64 / (2 * j + 2) as f64).sqrt();
                j += 1;
            }
            Ok(Mean::Coefficients(coeffs))
        }
        ClosedFormFamily::Dirichlet => {
            let dim = family.ensemble()?.dimension();
            // mu(t) = m sqrt(zeta(2t)): nonzero only at square indices,
            // with double-factorial products over the halved exponents
            let mut coeffs = vec![0.0; dim];
            for j in 1usize.. {
                let k = j * j;
                if k > dim {
                    break;
                }
                let mut c = m;
                for (_, e) in factorize(j as u64) {
                    c *= double_factorial_ratio(2 * e as i64 - 1, 2 * e as i64)?;
                }
                coeffs[k - 1] = c;
            }
            Ok(Mean::Coefficients(coeffs))
        }
        ClosedFormFamily::TrigSum { .. } => Ok(Mean::ConstantProjection { scale: m }),
        _ => Err(Error::Unsupported(format!(
            "no constant-projection mean construction for {family:?}"
        ))),
    }
}

/// Mean specification making the tangential projection equal the normal
/// one (m1 = m0), which integrates the non-central density in closed
/// form. The anchor fixes where m0 equals m.
pub fn case2_mean(family: &ClosedFormFamily, m: f64, anchor: f64) -> Result<Mean> {
    match family {
        ClosedFormFamily::PowerSeries => {
            // speed 1/(1-t^2): shifting the anchor rescales m by
            // exp(-atanh(anchor)); mu(t) = m_eff/(1-t) has all-ones
            // coefficients
            if anchor.abs() >= 1.0 {
                return Err(Error::Domain("anchor must lie in (-1, 1)".into()));
            }
            let m_eff = m * (-anchor.atanh()).exp();
            let dim = family.ensemble()?.dimension();
            Ok(Mean::Coefficients(vec![m_eff; dim]))
        }
        ClosedFormFamily::Entire => {
            // speed 1: mu(t) = m e^{-anchor} e^{t + t^2/2}; coefficient on
            // basis k is that times I_k/sqrt(k!) with I_k the involution
            // numbers, built by a scaled recurrence
            let m_eff = m * (-anchor).exp();
            let dim = family.ensemble()?.dimension();
            let mut coeffs = vec![0.0; dim];
            let mut s_prev2 = 1.0; // I_0/sqrt(0!)
            let mut s_prev = 1.0; // I_1/sqrt(1!)
            coeffs[0] = m_eff * s_prev2;
            if dim > 1 {
                coeffs[1] = m_eff * s_prev;
            }
            for (k, slot) in coeffs.iter_mut().enumerate().skip(2) {
                let kf = k as f64;
                let s = s_prev / kf.sqrt() + s_prev2 * ((kf - 1.0) / kf).sqrt();
                *slot = m_eff * s;
                s_prev2 = s_prev;
                s_prev = s;
            }
            Ok(Mean::Coefficients(coeffs))
        }
        ClosedFormFamily::Dirichlet => {
            if anchor <= 0.5 {
                return Err(Error::Domain("anchor must exceed 1/2".into()));
            }
            Ok(Mean::TangentMatched { scale: m, anchor })
        }
        _ => Err(Error::Unsupported(format!(
            "no tangent-matched mean construction for {family:?}"
        ))),
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Length on the unit sphere of the stereographic image of the rational
/// curve (a + ib)/(c + id): pi times the expected real-zero count of the
/// central ensemble over {2(ac+bd), 2(bc-ad), a^2+b^2-c^2-d^2}. Bounded
/// by 2 n pi for degrees at most n.
pub fn spijker_length(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Result<f64> {
    let f0 = (&(a * c) + &(b * d)).scale(2.0);
    let f1 = (&(b * c) - &(a * d)).scale(2.0);
    let f2 = &(&(a * a) + &(b * b)) - &(&(c * c) + &(d * d));
    let ensemble = Ensemble::from_polys(&[f0, f1, f2])?;
    let q = ensemble.expected_zeros(Interval::entire(), 1e-9)?;
    Ok(PI * q.value)
}

/// Analytic expected number of fixed points of the ratio of two
/// independent degree-n binomial-variance polynomials.
pub fn rational_fixed_points_mc_target(n: usize) -> f64 {
    ((n + 1) as f64).sqrt()
}
