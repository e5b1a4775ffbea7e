//! Adaptive quadrature on finite and infinite intervals.
//!
//! A 15-point Gauss-Kronrod rule drives a globally adaptive bisection:
//! the panel with the worst error estimate is split until the summed
//! estimate drops under the requested tolerance or the evaluation budget
//! runs out. Infinite endpoints are mapped away with the tangent
//! substitution t = tan(theta).

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

/// A real interval; either endpoint may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Construct an interval. Panics unless lo < hi and neither bound is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan(), "interval bounds must not be NaN");
        assert!(lo < hi, "interval requires lo < hi, got [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// The whole real line.
    pub fn entire() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    /// True when `self` is contained in `other` up to slack for rounding.
    pub fn within(&self, other: &Interval) -> bool {
        let eps = 1e-12;
        self.lo >= other.lo - eps * (1.0 + other.lo.abs())
            && self.hi <= other.hi + eps * (1.0 + other.hi.abs())
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Default evaluation budget for [`integrate_adaptive`].
pub const DEFAULT_EVAL_BUDGET: usize = 1_000_000;

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK values).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_97,
    0.417_959_183_673_469_387_755_102_040_816_33,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// One Gauss-Kronrod pass over [a, b]: (kronrod value, error estimate).
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut fv = [0.0f64; 14];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        res_k += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs());
    }
    res_asc *= half.abs();
    let raw_err = ((res_k - res_g) * half).abs();
    let err = if res_asc != 0.0 && raw_err != 0.0 {
        res_asc * (200.0 * raw_err / res_asc).powf(1.5).min(1.0)
    } else {
        raw_err
    };
    (res_k * half, err)
}

struct Panel {
    err: f64,
    value: f64,
    a: f64,
    b: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == std::cmp::Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // NaN error estimates sort highest so they get subdivided first
        match (self.err.is_nan(), other.err.is_nan()) {
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            _ => self.err.total_cmp(&other.err),
        }
    }
}

/// Adaptive Gauss-Kronrod integration of `f` over `domain` with absolute
/// tolerance `tol` and the default evaluation budget.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    domain: Interval,
    tol: f64,
) -> Result<QuadResult> {
    integrate_adaptive_with_budget(f, domain, tol, DEFAULT_EVAL_BUDGET)
}

/// As [`integrate_adaptive`] with an explicit evaluation budget.
pub fn integrate_adaptive_with_budget<F: Fn(f64) -> f64>(
    f: F,
    domain: Interval,
    tol: f64,
    budget: usize,
) -> Result<QuadResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    let mut evals = 0usize;
    match (domain.lo.is_infinite(), domain.hi.is_infinite()) {
        (false, false) => adaptive_core(
            |t| {
                f(t)
            },
            domain.lo,
            domain.hi,
            tol,
            budget,
            &mut evals,
        ),
        (true, true) => adaptive_core(
            |th: f64| {
                let t = th.tan();
                let c = th.cos();
                f(t) / (c * c)
            },
            -std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_2,
            tol,
            budget,
            &mut evals,
        ),
        (false, true) => {
            let a = domain.lo;
            adaptive_core(
                |th: f64| {
                    let t = a + th.tan();
                    let c = th.cos();
                    f(t) / (c * c)
                },
                0.0,
                std::f64::consts::FRAC_PI_2,
                tol,
                budget,
                &mut evals,
            )
        }
        (true, false) => {
            let b = domain.hi;
            adaptive_core(
                |th: f64| {
                    let t = b + th.tan();
                    let c = th.cos();
                    f(t) / (c * c)
                },
                -std::f64::consts::FRAC_PI_2,
                0.0,
                tol,
                budget,
                &mut evals,
            )
        }
    }
}

fn adaptive_core<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    budget: usize,
    evals: &mut usize,
) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let (v, e) = gk15(&mut f, a, b);
    *evals += 15;
    heap.push(Panel {
        err: e,
        value: v,
        a,
        b,
    });
    let mut total_err = e;
    let mut since_refresh = 0usize;
    while total_err > tol || total_err.is_nan() {
        if *evals + 30 > budget {
            let (value, err) = finish(heap);
            return Err(Error::NonConvergence {
                detail: "evaluation budget exhausted".to_string(),
                value,
                err_estimate: err,
                evaluations: *evals,
            });
        }
        let worst = heap.pop().expect("heap never empty");
        if worst.err == 0.0 {
            // every panel is at zero estimated error; the running total
            // only holds rounding drift
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // panel too narrow to split; if its error is NaN the integrand
            // is unresolvable here
            if worst.err.is_nan() {
                return Err(Error::NonConvergence {
                    detail: format!(
                        "integrand not finite near {mid} at the smallest panel width"
                    ),
                    value: worst.value,
                    err_estimate: f64::NAN,
                    evaluations: *evals,
                });
            }
            // accept the panel as-is
            total_err -= worst.err;
            let frozen = Panel { err: 0.0, ..worst };
            heap.push(frozen);
            continue;
        }
        total_err -= worst.err;
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        *evals += 30;
        total_err += e1 + e2;
        heap.push(Panel {
            err: e1,
            value: v1,
            a: worst.a,
            b: mid,
        });
        heap.push(Panel {
            err: e2,
            value: v2,
            a: mid,
            b: worst.b,
        });
        since_refresh += 1;
        if total_err.is_nan() || since_refresh >= 256 {
            // resum to shed NaN transients and subtraction drift
            total_err = heap.iter().map(|p| p.err).sum();
            since_refresh = 0;
        }
    }
    let (value, err) = finish(heap);
    Ok(QuadResult {
        value,
        err_estimate: err,
        evaluations: *evals,
    })
}

fn finish(heap: BinaryHeap<Panel>) -> (f64, f64) {
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = crate::numerics::special::kahan_sum(panels.iter().map(|p| p.value));
    let err = panels.iter().map(|p| p.err).sum();
    (value, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_on_unit_interval() {
        let r = integrate_adaptive(|x| x * x, Interval::new(0.0, 1.0), 1e-12).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
        assert!(r.err_estimate >= 0.0);
    }

    #[test]
    fn gaussian_over_the_real_line() {
        let r = integrate_adaptive(|x: f64| (-x * x).exp(), Interval::entire(), 1e-10).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn semi_infinite_exponential() {
        let r =
            integrate_adaptive(|x: f64| (-x).exp(), Interval::new(0.0, f64::INFINITY), 1e-12)
                .unwrap();
        assert!((r.value - 1.0).abs() < 1e-11);
        let l = integrate_adaptive(
            |x: f64| x.exp(),
            Interval::new(f64::NEG_INFINITY, 0.0),
            1e-12,
        )
        .unwrap();
        assert!((l.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn splitting_is_consistent() {
        let f = |x: f64| (3.0 * x).sin() * (-0.5 * x * x).exp();
        let tol = 1e-10;
        let whole = integrate_adaptive(f, Interval::new(-2.0, 5.0), tol).unwrap();
        let left = integrate_adaptive(f, Interval::new(-2.0, 1.3), tol).unwrap();
        let right = integrate_adaptive(f, Interval::new(1.3, 5.0), tol).unwrap();
        assert!((whole.value - left.value - right.value).abs() < 2.0 * tol);
    }

    #[test]
    fn budget_exhaustion_reports_nonconvergence() {
        let res = integrate_adaptive_with_budget(
            |x: f64| (1e6 * x).sin().abs(),
            Interval::new(0.0, 1.0),
            1e-14,
            2_000,
        );
        match res {
            Err(Error::NonConvergence { evaluations, .. }) => assert!(evaluations <= 2_000),
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn sharp_peak_is_resolved() {
        // narrow Lorentzian, integral = atan scaled
        let w = 1e-4;
        let f = move |x: f64| w / (w * w + (x - 0.3) * (x - 0.3));
        let r = integrate_adaptive(f, Interval::new(0.0, 1.0), 1e-10).unwrap();
        let exact = ((1.0 - 0.3) / w).atan() + (0.3 / w).atan();
        assert!((r.value - exact).abs() < 1e-9);
    }
}
