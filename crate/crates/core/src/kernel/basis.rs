//! Basis curves v(t) = (f_0(t), ..., f_n(t)) and their first derivatives.
//!
//! Evaluators may return values rescaled by a common positive factor
//! lambda(t): every downstream quantity (zero density, projected speed,
//! mean projections) is invariant under such scalings, and the rescaling
//! is what keeps high-degree monomial and entire bases finite far from
//! the origin.

use crate::numerics::Poly;
use std::sync::Arc;

/// Basis values and first derivatives at one point, possibly rescaled by
/// a common positive factor.
#[derive(Debug, Clone)]
pub struct BasisJet {
    pub values: Vec<f64>,
    pub derivs: Vec<f64>,
}

type CustomEval = Arc<dyn Fn(f64) -> BasisJet + Send + Sync>;

/// The function family spanned by the random coefficients.
#[derive(Clone)]
pub enum Basis {
    /// f_k(t) = w_k t^k. Weights 1 give the iid-coefficient polynomial;
    /// square roots of binomial coefficients give the binomial-variance
    /// polynomial; length picks the truncation of a power series.
    Monomial { weights: Vec<f64> },
    /// Pairs f = (sigma_k cos(nu_k t), sigma_k sin(nu_k t)).
    Trig { sigmas: Vec<f64>, nus: Vec<f64> },
    /// f_k(t) = k^{-t}, k = 1..=terms.
    Dirichlet { log_k: Vec<f64> },
    /// f_k(t) = t^k / sqrt(k!), truncated; evaluated pre-scaled by
    /// e^{-t^2/2} so the squared norm is exactly one.
    Entire { half_log_factorials: Vec<f64> },
    /// Chebyshev polynomials of the first kind, orthonormalized on
    /// (-1, 1): weights 1, sqrt(2), sqrt(2), ...
    Chebyshev { n: usize },
    /// Arbitrary user evaluator returning values and derivatives.
    Custom { dim: usize, eval: CustomEval },
}

impl std::fmt::Debug for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Basis::Monomial { weights } => {
                write!(f, "Monomial(dim {})", weights.len())
            }
            Basis::Trig { sigmas, .. } => write!(f, "Trig({} modes)", sigmas.len()),
            Basis::Dirichlet { log_k } => write!(f, "Dirichlet({} terms)", log_k.len()),
            Basis::Entire { half_log_factorials } => {
                write!(f, "Entire({} terms)", half_log_factorials.len())
            }
            Basis::Chebyshev { n } => write!(f, "Chebyshev(n {n})"),
            Basis::Custom { dim, .. } => write!(f, "Custom(dim {dim})"),
        }
    }
}

impl Basis {
    pub fn monomial(n: usize) -> Basis {
        Basis::Monomial {
            weights: vec![1.0; n + 1],
        }
    }

    /// Monomial basis with per-degree coefficient variances folded into
    /// the basis functions as sqrt weights.
    pub fn weighted_monomial(variances: &[f64]) -> Basis {
        assert!(!variances.is_empty() && variances.iter().all(|&v| v >= 0.0));
        Basis::Monomial {
            weights: variances.iter().map(|v| v.sqrt()).collect(),
        }
    }

    /// sqrt-binomial weights; the classic n-th degree ensemble whose real
    /// zeros are Cauchy distributed.
    pub fn binomial(n: usize) -> Basis {
        let mut w = Vec::with_capacity(n + 1);
        let mut c = 1.0f64;
        for k in 0..=n {
            w.push(c.sqrt());
            c = c * (n - k) as f64 / (k + 1) as f64;
        }
        Basis::Monomial { weights: w }
    }

    pub fn trig(sigmas: Vec<f64>, nus: Vec<f64>) -> Basis {
        assert_eq!(sigmas.len(), nus.len());
        assert!(!sigmas.is_empty());
        Basis::Trig { sigmas, nus }
    }

    pub fn dirichlet(terms: usize) -> Basis {
        assert!(terms >= 1);
        Basis::Dirichlet {
            log_k: (1..=terms).map(|k| (k as f64).ln()).collect(),
        }
    }

    pub fn entire(terms: usize) -> Basis {
        assert!(terms >= 1);
        let mut hlf = Vec::with_capacity(terms);
        let mut acc = 0.0;
        for k in 0..terms {
            if k > 0 {
                acc += (k as f64).ln();
            }
            hlf.push(0.5 * acc);
        }
        Basis::Entire {
            half_log_factorials: hlf,
        }
    }

    pub fn chebyshev(n: usize) -> Basis {
        Basis::Chebyshev { n }
    }

    pub fn custom(
        dim: usize,
        eval: impl Fn(f64) -> BasisJet + Send + Sync + 'static,
    ) -> Basis {
        Basis::Custom {
            dim,
            eval: Arc::new(eval),
        }
    }

    /// A basis of polynomial coordinate functions.
    pub fn from_polys(polys: &[Poly]) -> Basis {
        let polys: Vec<Poly> = polys.to_vec();
        let dim = polys.len();
        Basis::custom(dim, move |t| {
            let mut values = Vec::with_capacity(polys.len());
            let mut derivs = Vec::with_capacity(polys.len());
            for p in &polys {
                let (v, d) = p.eval_with_deriv(t);
                values.push(v);
                derivs.push(d);
            }
            BasisJet { values, derivs }
        })
    }

    /// The three-function family {1, sin t, e^{|t|}}. The exponential is
    /// not differentiable at 0; integrate piecewise around that point.
    /// Rescaled by e^{-|t|} away from the origin.
    pub fn one_sin_expabs() -> Basis {
        Basis::custom(3, |t| {
            let s = if t < 0.0 { -1.0 } else { 1.0 };
            if t.abs() <= 1.0 {
                let e = t.abs().exp();
                BasisJet {
                    values: vec![1.0, t.sin(), e],
                    derivs: vec![0.0, t.cos(), s * e],
                }
            } else {
                let e = (-t.abs()).exp();
                BasisJet {
                    values: vec![e, e * t.sin(), 1.0],
                    derivs: vec![-s * e, e * (t.cos() - s * t.sin()), 0.0],
                }
            }
        })
    }

    pub fn dimension(&self) -> usize {
        match self {
            Basis::Monomial { weights } => weights.len(),
            Basis::Trig { sigmas, .. } => 2 * sigmas.len(),
            Basis::Dirichlet { log_k } => log_k.len(),
            Basis::Entire { half_log_factorials } => half_log_factorials.len(),
            Basis::Chebyshev { n } => n + 1,
            Basis::Custom { dim, .. } => *dim,
        }
    }

    /// Values and derivatives at t, rescaled where needed for stability.
    pub fn eval_jet(&self, t: f64) -> BasisJet {
        match self {
            Basis::Monomial { weights } => monomial_jet(weights, t),
            Basis::Trig { sigmas, nus } => {
                let mut values = Vec::with_capacity(2 * sigmas.len());
                let mut derivs = Vec::with_capacity(2 * sigmas.len());
                for (&s, &nu) in sigmas.iter().zip(nus) {
                    let (sin, cos) = (nu * t).sin_cos();
                    values.push(s * cos);
                    values.push(s * sin);
                    derivs.push(-s * nu * sin);
                    derivs.push(s * nu * cos);
                }
                BasisJet { values, derivs }
            }
            Basis::Dirichlet { log_k } => {
                let mut values = Vec::with_capacity(log_k.len());
                let mut derivs = Vec::with_capacity(log_k.len());
                for &lk in log_k {
                    let v = (-t * lk).exp();
                    values.push(v);
                    derivs.push(-lk * v);
                }
                BasisJet { values, derivs }
            }
            Basis::Entire { half_log_factorials } => entire_jet(half_log_factorials, t),
            Basis::Chebyshev { n } => chebyshev_jet(*n, t),
            Basis::Custom { eval, .. } => eval(t),
        }
    }
}

/// Monomial jet; for |t| > 1 every component is divided by |t|^n so the
/// largest magnitude stays near the weights themselves.
fn monomial_jet(weights: &[f64], t: f64) -> BasisJet {
    let n = weights.len() - 1;
    let mut values = vec![0.0; n + 1];
    let mut derivs = vec![0.0; n + 1];
    if t.abs() <= 1.0 {
        let mut pw = 1.0; // t^k
        let mut prev = 0.0; // t^{k-1}
        for k in 0..=n {
            values[k] = weights[k] * pw;
            derivs[k] = weights[k] * k as f64 * prev;
            prev = pw;
            pw *= t;
        }
    } else {
        // p_k = t^k / |t|^n, built downward so magnitudes only shrink
        let sign_n = if t < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        let mut p = sign_n;
        let mut k = n as isize;
        while k >= 0 {
            let ku = k as usize;
            values[ku] = weights[ku] * p;
            derivs[ku] = weights[ku] * (k as f64 - n as f64) * p / t;
            p /= t;
            k -= 1;
        }
    }
    BasisJet { values, derivs }
}

/// Entire-function jet, pre-scaled by e^{-t^2/2}: component k is
/// t^k e^{-t^2/2} / sqrt(k!), assembled in log space so no intermediate
/// over- or underflows for |t| up to ~35.
fn entire_jet(half_log_factorials: &[f64], t: f64) -> BasisJet {
    let n = half_log_factorials.len();
    let mut values = vec![0.0; n];
    let mut derivs = vec![0.0; n];
    if t == 0.0 {
        values[0] = 1.0;
        if n > 1 {
            derivs[1] = 1.0;
        }
        return BasisJet { values, derivs };
    }
    let l = t.abs().ln();
    let q = 0.5 * t * t;
    let neg = t < 0.0;
    for (k, &hlf) in half_log_factorials.iter().enumerate() {
        let kf = k as f64;
        let sign = if neg && k % 2 == 1 { -1.0 } else { 1.0 };
        let v = sign * (kf * l - q - hlf).exp();
        values[k] = v;
        derivs[k] = v * (kf - t * t) / t;
    }
    BasisJet { values, derivs }
}

/// Orthonormalized Chebyshev jet via the three-term recurrences.
fn chebyshev_jet(n: usize, t: f64) -> BasisJet {
    let mut values = Vec::with_capacity(n + 1);
    let mut derivs = Vec::with_capacity(n + 1);
    let (mut t0, mut t1) = (1.0, t);
    let (mut d0, mut d1) = (0.0, 1.0);
    let w = std::f64::consts::SQRT_2;
    for k in 0..=n {
        let wk = if k == 0 { 1.0 } else { w };
        values.push(wk * t0);
        derivs.push(wk * d0);
        let t2 = 2.0 * t * t1 - t0;
        let d2 = 2.0 * t1 + 2.0 * t * d1 - d0;
        t0 = t1;
        t1 = t2;
        d0 = d1;
        d1 = d2;
    }
    BasisJet { values, derivs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_jet_matches_direct_powers() {
        let b = Basis::monomial(4);
        let j = b.eval_jet(0.7);
        for k in 0..=4 {
            assert!((j.values[k] - 0.7f64.powi(k as i32)).abs() < 1e-15);
            let d = if k == 0 {
                0.0
            } else {
                k as f64 * 0.7f64.powi(k as i32 - 1)
            };
            assert!((j.derivs[k] - d).abs() < 1e-14);
        }
    }

    #[test]
    fn scaled_monomial_jet_is_consistent() {
        // outside the unit interval the jet is the raw jet divided by
        // |t|^n, with derivatives of the scaled functions
        let b = Basis::monomial(3);
        let t = -2.5f64;
        let j = b.eval_jet(t);
        let lam = t.abs().powi(3);
        for k in 0..=3usize {
            let raw = t.powi(k as i32);
            assert!((j.values[k] - raw / lam).abs() < 1e-14);
        }
        // d/dt [t^k/|t|^3] = (k-3) t^{k-1}/|t|^3
        for k in 0..=3usize {
            let expct = (k as f64 - 3.0) * t.powi(k as i32 - 1) / lam;
            assert!((j.derivs[k] - expct).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn entire_jet_norm_is_one() {
        let b = Basis::entire(80);
        for &t in &[0.0, 0.3, 2.0, -5.0] {
            let j = b.eval_jet(t);
            let a: f64 = j.values.iter().map(|v| v * v).sum();
            assert!((a - 1.0).abs() < 1e-12, "t={t}: {a}");
        }
    }

    #[test]
    fn entire_jet_survives_large_arguments() {
        let b = Basis::entire(1100);
        let j = b.eval_jet(30.0);
        let a: f64 = j.values.iter().map(|v| v * v).sum();
        assert!((a - 1.0).abs() < 1e-9);
        assert!(j.values.iter().all(|v| v.is_finite()));
        assert!(j.derivs.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn chebyshev_jet_recurrence_values() {
        let b = Basis::chebyshev(5);
        let t = 0.4f64;
        let j = b.eval_jet(t);
        // T_2 = 2t^2 - 1, T_3 = 4t^3 - 3t
        assert!((j.values[2] - std::f64::consts::SQRT_2 * (2.0 * t * t - 1.0)).abs() < 1e-14);
        assert!(
            (j.values[3] - std::f64::consts::SQRT_2 * (4.0 * t * t * t - 3.0 * t)).abs() < 1e-14
        );
        // T_3' = 12t^2 - 3
        assert!(
            (j.derivs[3] - std::f64::consts::SQRT_2 * (12.0 * t * t - 3.0)).abs() < 1e-13
        );
    }

    #[test]
    fn trig_jet_shapes() {
        let b = Basis::trig(vec![2.0, 1.0], vec![1.0, 3.0]);
        assert_eq!(b.dimension(), 4);
        let j = b.eval_jet(0.5);
        assert!((j.values[0] - 2.0 * 0.5f64.cos()).abs() < 1e-15);
        assert!((j.derivs[3] - 3.0 * 1.5f64.cos()).abs() < 1e-15);
    }
}
