//! Expected-real-zero densities for random functions
//! a_0 f_0(t) + ... + a_n f_n(t) with Gaussian coefficient vectors.
//!
//! The density at t is assembled from three quadratic forms against the
//! covariance: A = v.Cv, B = v'.Cv, D = v'.Cv'. For a central ensemble
//! it equals sqrt(A D - B^2) / (pi A); a non-central mean enters through
//! its projections onto the normalized curve and its unit tangent. A
//! second, independent path computes the same density from the mixed
//! second partial of log v(x)^T C v(y) on the diagonal; the two paths
//! cross-validate each other everywhere.

mod basis;
mod covariance;
mod mean;

pub use basis::{Basis, BasisJet};
pub use covariance::Covariance;
pub use mean::Mean;

use crate::error::{Error, Result};
use crate::numerics::special::{kahan_dot, kahan_sum};
use crate::numerics::{integrate_adaptive, Interval, Poly, QuadResult};
use std::f64::consts::PI;

/// Relative slack allowed on the Cauchy-Schwarz defect A D - B^2 before
/// a negative value is treated as an internal inconsistency.
const CAUCHY_SCHWARZ_SLACK: f64 = 1e-10;

/// The three quadratic forms of the covariance kernel at a point.
#[derive(Debug, Clone, Copy)]
pub struct KernelJet {
    /// v . C v (possibly rescaled by a common positive factor).
    pub a: f64,
    /// v' . C v (same rescaling).
    pub b: f64,
    /// v' . C v' (same rescaling).
    pub d: f64,
    pub t: f64,
}

impl KernelJet {
    /// ||gamma'(t)||^2 = (A D - B^2) / A^2, clamped at zero within the
    /// Cauchy-Schwarz slack.
    pub fn speed_squared(&self) -> Result<f64> {
        let defect = self.a * self.d - self.b * self.b;
        if defect < -CAUCHY_SCHWARZ_SLACK * (self.a * self.d).abs() {
            return Err(Error::Evaluation(format!(
                "Cauchy-Schwarz defect {defect:e} beyond slack at t = {}",
                self.t
            )));
        }
        Ok(defect.max(0.0) / (self.a * self.a))
    }

    pub fn speed(&self) -> Result<f64> {
        Ok(self.speed_squared()?.sqrt())
    }
}

/// Mean projections onto the normalized curve and its unit tangent.
#[derive(Debug, Clone, Copy)]
pub struct MeanProjection {
    pub m0: f64,
    pub m1: f64,
    pub gamma_speed: f64,
}

/// A random-function family: basis, covariance, mean, and the domain the
/// basis is valid on. Immutable after construction; all evaluations are
/// pure functions.
#[derive(Debug, Clone)]
pub struct Ensemble {
    basis: Basis,
    covariance: Covariance,
    mean: Mean,
    domain: Interval,
    /// Points where the basis is continuous but not differentiable;
    /// integrals split here.
    split_points: Vec<f64>,
}

impl Ensemble {
    pub fn new(basis: Basis, covariance: Covariance, mean: Mean, domain: Interval) -> Result<Self> {
        let dim = basis.dimension();
        if let Some(cd) = covariance.dimension() {
            if cd != dim {
                return Err(Error::Domain(format!(
                    "covariance dimension {cd} does not match basis dimension {dim}"
                )));
            }
        }
        if let Mean::Coefficients(m) = &mean {
            if m.len() != dim {
                return Err(Error::Domain(format!(
                    "mean vector length {} does not match basis dimension {dim}",
                    m.len()
                )));
            }
        }
        Ok(Ensemble {
            basis,
            covariance,
            mean,
            domain,
            split_points: Vec::new(),
        })
    }

    /// Degree-n polynomial with iid standard normal coefficients.
    pub fn iid_poly(n: usize) -> Ensemble {
        Ensemble::new(
            Basis::monomial(n),
            Covariance::identity(),
            Mean::Zero,
            Interval::entire(),
        )
        .expect("dimensions agree")
    }

    /// Degree-n polynomial with binomial coefficient variances.
    pub fn binomial_poly(n: usize) -> Ensemble {
        Ensemble::new(
            Basis::binomial(n),
            Covariance::identity(),
            Mean::Zero,
            Interval::entire(),
        )
        .expect("dimensions agree")
    }

    /// Power series with iid coefficients, truncated so the kernel tail
    /// is below 1e-14 relative on |t| <= 1 - delta.
    pub fn power_series(delta: f64) -> Result<Ensemble> {
        let n = power_series_truncation(delta)?;
        Ensemble::new(
            Basis::monomial(n),
            Covariance::identity(),
            Mean::Zero,
            Interval::new(-(1.0 - delta), 1.0 - delta),
        )
    }

    /// Power series whose neighboring coefficients have correlation r.
    pub fn correlated_power_series(r: f64, delta: f64) -> Result<Ensemble> {
        let n = power_series_truncation(delta)?;
        Ensemble::new(
            Basis::monomial(n),
            Covariance::tridiagonal_correlation(r, n + 1)?,
            Mean::Zero,
            Interval::new(-(1.0 - delta), 1.0 - delta),
        )
    }

    /// Random entire function (coefficient variances 1/k!), truncated for
    /// |t| <= t_max.
    pub fn entire(t_max: f64) -> Result<Ensemble> {
        if !(t_max > 0.0 && t_max <= 35.0) {
            return Err(Error::Domain(format!(
                "entire ensemble supports 0 < t_max <= 35, got {t_max}"
            )));
        }
        let lambda = t_max * t_max;
        let terms = (lambda + 12.0 * lambda.sqrt() + 30.0).ceil() as usize;
        Ensemble::new(
            Basis::entire(terms),
            Covariance::identity(),
            Mean::Zero,
            Interval::new(-t_max, t_max),
        )
    }

    /// Random trigonometric sum with mode scales sigma_k and frequencies
    /// nu_k.
    pub fn trig_sum(sigmas: Vec<f64>, nus: Vec<f64>) -> Result<Ensemble> {
        if sigmas.len() != nus.len() || sigmas.is_empty() {
            return Err(Error::Domain(
                "trig sum needs equal-length nonempty sigma and nu lists".into(),
            ));
        }
        Ensemble::new(
            Basis::trig(sigmas, nus),
            Covariance::identity(),
            Mean::Zero,
            Interval::entire(),
        )
    }

    /// Random Dirichlet series truncated to `terms` terms, valid for
    /// t > 1/2; accuracy of the truncation improves rapidly with t.
    pub fn dirichlet(terms: usize) -> Result<Ensemble> {
        if terms < 2 {
            return Err(Error::Domain("dirichlet ensemble needs >= 2 terms".into()));
        }
        Ensemble::new(
            Basis::dirichlet(terms),
            Covariance::identity(),
            Mean::Zero,
            Interval::new(0.5 + 1e-3, f64::INFINITY),
        )
    }

    /// Random sum of orthonormalized Chebyshev polynomials up to degree n.
    pub fn chebyshev(n: usize) -> Ensemble {
        Ensemble::new(
            Basis::chebyshev(n),
            Covariance::identity(),
            Mean::Zero,
            Interval::new(-1.0 + 1e-9, 1.0 - 1e-9),
        )
        .expect("dimensions agree")
    }

    /// The family {1, sin t, e^{|t|}} with iid standard normal
    /// coefficients; integrals split at the kink t = 0.
    pub fn one_sin_expabs() -> Ensemble {
        let mut e = Ensemble::new(
            Basis::one_sin_expabs(),
            Covariance::identity(),
            Mean::Zero,
            Interval::entire(),
        )
        .expect("dimensions agree");
        e.split_points = vec![0.0];
        e
    }

    /// Central ensemble over polynomial coordinate functions; errors if
    /// every polynomial is identically zero.
    pub fn from_polys(polys: &[Poly]) -> Result<Ensemble> {
        if polys.is_empty() || polys.iter().all(|p| p.is_zero()) {
            return Err(Error::Degenerate(
                "all coordinate polynomials are identically zero".into(),
            ));
        }
        Ensemble::new(
            Basis::from_polys(polys),
            Covariance::identity(),
            Mean::Zero,
            Interval::entire(),
        )
    }

    pub fn with_mean(mut self, mean: Mean) -> Result<Ensemble> {
        if let Mean::Coefficients(m) = &mean {
            if m.len() != self.basis.dimension() {
                return Err(Error::Domain(format!(
                    "mean vector length {} does not match basis dimension {}",
                    m.len(),
                    self.basis.dimension()
                )));
            }
        }
        self.mean = mean;
        Ok(self)
    }

    pub fn with_covariance(mut self, covariance: Covariance) -> Result<Ensemble> {
        if let Some(cd) = covariance.dimension() {
            if cd != self.basis.dimension() {
                return Err(Error::Domain(format!(
                    "covariance dimension {cd} does not match basis dimension {}",
                    self.basis.dimension()
                )));
            }
        }
        self.covariance = covariance;
        Ok(self)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn covariance(&self) -> &Covariance {
        &self.covariance
    }

    pub fn mean(&self) -> &Mean {
        &self.mean
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    fn check_in_domain(&self, t: f64) -> Result<()> {
        if !self.domain.contains(t) {
            return Err(Error::Domain(format!(
                "t = {t} outside the ensemble domain [{}, {}]",
                self.domain.lo, self.domain.hi
            )));
        }
        Ok(())
    }

    /// The quadratic forms A, B, D at t, by direct compensated summation
    /// against the covariance factor.
    pub fn kernel_jet(&self, t: f64) -> Result<KernelJet> {
        self.check_in_domain(t)?;
        let jet = self.basis.eval_jet(t);
        let p = self.covariance.apply_factor_transpose(&jet.values);
        let q = self.covariance.apply_factor_transpose(&jet.derivs);
        let a = kahan_dot(&p, &p);
        let b = kahan_dot(&q, &p);
        let d = kahan_dot(&q, &q);
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Evaluation(format!(
                "kernel norm A = {a} at t = {t}; basis values underflowed or overflowed"
            )));
        }
        Ok(KernelJet { a, b, d, t })
    }

    /// The covariance kernel v(x)^T C v(y), with each argument's basis
    /// values carrying their own stability rescaling. Any quantity formed
    /// from ratios K(x,.)K(.,y)/... is unaffected by the rescaling.
    pub fn kernel_value(&self, x: f64, y: f64) -> f64 {
        let p = self
            .covariance
            .apply_factor_transpose(&self.basis.eval_jet(x).values);
        let q = self
            .covariance
            .apply_factor_transpose(&self.basis.eval_jet(y).values);
        kahan_dot(&p, &q)
    }

    /// Density of real zeros for a central ensemble:
    /// sqrt(max(0, A D - B^2)) / (pi A).
    pub fn density_central(&self, t: f64) -> Result<f64> {
        if !self.mean.is_zero() {
            return Err(Error::Domain(
                "density_central requires a zero-mean ensemble".into(),
            ));
        }
        let jet = self.kernel_jet(t)?;
        Ok(jet.speed()? / PI)
    }

    /// The same density through the logarithmic-derivative identity:
    /// the mixed second partial of log K(x, y) on the diagonal by a
    /// four-point stencil of half-width h. Agrees with
    /// [`Self::density_central`] to O(h^2).
    ///
    /// The stencil is evaluated as a single log of a ratio of kernel
    /// values, which sidesteps the catastrophic cancellation of
    /// differencing four separate logarithms.
    pub fn density_central_logderiv(&self, t: f64, h: f64) -> Result<f64> {
        if !self.mean.is_zero() {
            return Err(Error::Domain(
                "density_central_logderiv requires a zero-mean ensemble".into(),
            ));
        }
        if !(h > 0.0) {
            return Err(Error::Domain("step h must be positive".into()));
        }
        self.check_in_domain(t)?;
        let kpp = self.kernel_value(t + h, t + h);
        let kmm = self.kernel_value(t - h, t - h);
        let kpm = self.kernel_value(t + h, t - h);
        if !(kpp > 0.0 && kmm > 0.0 && kpm != 0.0) {
            return Err(Error::Evaluation(format!(
                "kernel not positive near t = {t}"
            )));
        }
        let ratio = (kpp / kpm) * (kmm / kpm);
        let mixed = ratio.ln() / (4.0 * h * h);
        Ok(mixed.max(0.0).sqrt() / PI)
    }

    /// mu(t) in the same rescaled frame as the kernel jet, so the ratio
    /// mu/sqrt(A) is exact regardless of rescaling; `a` is the A produced
    /// by [`Self::kernel_jet`] at the same point.
    fn mean_component(&self, t: f64, values: &[f64], a: f64) -> Result<f64> {
        match &self.mean {
            Mean::Zero => Ok(0.0),
            Mean::Coefficients(m) => Ok(kahan_dot(m, values)),
            Mean::ConstantProjection { scale } => Ok(scale * a.sqrt()),
            Mean::TangentMatched { scale, anchor } => {
                let growth = self.tangent_matched_growth(t, *anchor)?;
                Ok(scale * a.sqrt() * growth)
            }
        }
    }

    /// exp(int_anchor^t ||gamma'||), the growth factor of the
    /// tangent-matched mean.
    fn tangent_matched_growth(&self, t: f64, anchor: f64) -> Result<f64> {
        if t == anchor {
            return Ok(1.0);
        }
        let (lo, hi, sign) = if t > anchor {
            (anchor, t, 1.0)
        } else {
            (t, anchor, -1.0)
        };
        let err = std::cell::Cell::new(false);
        let q = integrate_adaptive(
            |x| match self.kernel_jet(x).and_then(|j| j.speed()) {
                Ok(s) => s,
                Err(_) => {
                    err.set(true);
                    f64::NAN
                }
            },
            Interval::new(lo, hi),
            1e-11,
        )?;
        if err.get() {
            return Err(Error::Evaluation(
                "speed evaluation failed inside the mean growth integral".into(),
            ));
        }
        Ok((sign * q.value).exp())
    }

    /// m0(t) = mu(t)/||w(t)||.
    fn m_zero(&self, t: f64) -> Result<f64> {
        let jet = self.basis.eval_jet(t);
        let p = self.covariance.apply_factor_transpose(&jet.values);
        let a = kahan_dot(&p, &p);
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Evaluation(format!("kernel norm A = {a} at t = {t}")));
        }
        Ok(self.mean_component(t, &jet.values, a)? / a.sqrt())
    }

    /// Projections of the mean onto the normalized curve (m0) and its
    /// unit tangent (m1 = m0'/||gamma'||, by central differences with
    /// step max(1e-6, 1e-6 |t|)).
    pub fn mean_projection(&self, t: f64) -> Result<MeanProjection> {
        if self.mean.is_zero() {
            return Err(Error::Domain(
                "mean_projection requires a nonzero mean specification".into(),
            ));
        }
        self.check_in_domain(t)?;
        let jet = self.kernel_jet(t)?;
        let speed = jet.speed()?;
        if speed == 0.0 {
            return Err(Error::Evaluation(format!(
                "||gamma'({t})|| = 0; tangential mean projection undefined"
            )));
        }
        let m0 = self.m_zero(t)?;
        let h = 1e-6f64.max(1e-6 * t.abs());
        let m0p = self.m_zero(t + h)?;
        let m0m = self.m_zero(t - h)?;
        let m1 = (m0p - m0m) / (2.0 * h) / speed;
        Ok(MeanProjection {
            m0,
            m1,
            gamma_speed: speed,
        })
    }

    /// Density of real zeros for an arbitrary (possibly non-central)
    /// Gaussian coefficient vector. Reduces to the central density when
    /// the mean vanishes.
    pub fn density_noncentral(&self, t: f64) -> Result<f64> {
        if self.mean.is_zero() {
            let jet = self.kernel_jet(t)?;
            return Ok(jet.speed()? / PI);
        }
        let mp = self.mean_projection(t)?;
        let m0 = mp.m0;
        let m1 = mp.m1;
        let bracket = (-0.5 * m1 * m1).exp()
            + (PI / 2.0).sqrt() * m1 * crate::numerics::erf(m1 / std::f64::consts::SQRT_2);
        Ok(mp.gamma_speed / PI * (-0.5 * m0 * m0).exp() * bracket)
    }

    /// Density dispatched on the mean kind.
    pub fn density(&self, t: f64) -> Result<f64> {
        if self.mean.is_zero() {
            self.density_central(t)
        } else {
            self.density_noncentral(t)
        }
    }

    /// Expected number of real zeros on `interval` by adaptive quadrature
    /// of the density, splitting at the basis kinks.
    pub fn expected_zeros(&self, interval: Interval, tol: f64) -> Result<QuadResult> {
        if !interval.within(&self.domain) {
            return Err(Error::Domain(format!(
                "integration interval [{}, {}] not inside the ensemble domain [{}, {}]",
                interval.lo, interval.hi, self.domain.lo, self.domain.hi
            )));
        }
        let pieces = self.split(interval);
        let per_piece_tol = tol / pieces.len() as f64;
        let mut value = 0.0;
        let mut err = 0.0;
        let mut evals = 0;
        for piece in pieces {
            let failure = std::cell::RefCell::new(None);
            let q = integrate_adaptive(
                |t| match self.density(t) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        f64::NAN
                    }
                },
                piece,
                per_piece_tol,
            );
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            let q = q?;
            value += q.value;
            err += q.err_estimate;
            evals += q.evaluations;
        }
        Ok(QuadResult {
            value,
            err_estimate: err,
            evaluations: evals,
        })
    }

    fn split(&self, interval: Interval) -> Vec<Interval> {
        let mut cuts: Vec<f64> = self
            .split_points
            .iter()
            .copied()
            .filter(|&c| interval.lo < c && c < interval.hi)
            .collect();
        cuts.sort_by(f64::total_cmp);
        let mut pieces = Vec::with_capacity(cuts.len() + 1);
        let mut lo = interval.lo;
        for c in cuts {
            pieces.push(Interval::new(lo, c));
            lo = c;
        }
        pieces.push(Interval::new(lo, interval.hi));
        pieces
    }

    /// Length of the projected curve t -> w(t)/||w(t)|| over `interval`,
    /// with the speed taken from central differences of the normalized
    /// curve itself rather than from the kernel jet. Equals pi times the
    /// expected zero count.
    pub fn projected_arclength(&self, interval: Interval, tol: f64) -> Result<f64> {
        if !self.mean.is_zero() {
            return Err(Error::Domain(
                "projected_arclength is defined for central ensembles".into(),
            ));
        }
        if !interval.within(&self.domain) {
            return Err(Error::Domain(
                "arclength interval not inside the ensemble domain".into(),
            ));
        }
        let failure = std::cell::RefCell::new(None);
        let mut value = 0.0;
        for piece in self.split(interval) {
            let q = integrate_adaptive(
                |t| match self.normalized_curve_speed_fd(t) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        f64::NAN
                    }
                },
                piece,
                tol,
            );
            if let Some(e) = failure.borrow_mut().take() {
                return Err(e);
            }
            value += q?.value;
        }
        Ok(value)
    }

    /// ||d/dt w(t)/||w(t)|| || by symmetric differences.
    fn normalized_curve_speed_fd(&self, t: f64) -> Result<f64> {
        let h = 1e-6 * (1.0 + t.abs());
        let up = self.normalized_point(t + h)?;
        let dn = self.normalized_point(t - h)?;
        let diff2 = kahan_sum(up.iter().zip(&dn).map(|(u, d)| (u - d) * (u - d)));
        Ok(diff2.sqrt() / (2.0 * h))
    }

    fn normalized_point(&self, t: f64) -> Result<Vec<f64>> {
        let jet = self.basis.eval_jet(t);
        let mut p = self.covariance.apply_factor_transpose(&jet.values);
        let norm = kahan_dot(&p, &p).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Evaluation(format!(
                "cannot normalize curve point at t = {t} (norm {norm})"
            )));
        }
        for x in &mut p {
            *x /= norm;
        }
        Ok(p)
    }

    /// Coefficient-space mean for sampling, when one exists.
    pub fn sampling_mean(&self) -> Option<Vec<f64>> {
        match &self.mean {
            Mean::Zero => Some(vec![0.0; self.dimension()]),
            Mean::Coefficients(m) => Some(m.clone()),
            _ => None,
        }
    }

    /// Draw a coefficient vector mean + L z from a Gaussian stream.
    pub fn sample_coefficients(
        &self,
        stream: &mut crate::numerics::GaussianStream,
    ) -> Result<Vec<f64>> {
        let mean = self.sampling_mean().ok_or_else(|| {
            Error::Unsupported(
                "ensemble mean is not a coefficient vector; cannot sample".into(),
            )
        })?;
        let z = stream.take_normals(self.dimension());
        let mut a = self.covariance.apply_factor(&z);
        for (ai, mi) in a.iter_mut().zip(mean) {
            *ai += mi;
        }
        Ok(a)
    }
}

fn power_series_truncation(delta: f64) -> Result<usize> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!(
            "power series clip delta must lie in (0, 1), got {delta}"
        )));
    }
    // tail t^{2(N+1)} below 1e-14 relative at |t| = 1 - delta
    let n = (7.0 * std::f64::consts::LN_10 / -(1.0 - delta).ln()).ceil() as usize;
    Ok(n.max(8))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_values_for_line_and_parabola() {
        let e = Ensemble::iid_poly(1);
        let j = e.kernel_jet(0.0).unwrap();
        assert_eq!((j.a, j.b, j.d), (1.0, 0.0, 1.0));

        let e2 = Ensemble::iid_poly(2);
        let j2 = e2.kernel_jet(1.0).unwrap();
        assert_eq!((j2.a, j2.b, j2.d), (3.0, 3.0, 5.0));
    }

    #[test]
    fn jet_for_binomial_weights() {
        // oracle: direct sums of binom(2,k) t^{2k} and friends at t = 1
        let e = Ensemble::binomial_poly(2);
        let j = e.kernel_jet(1.0).unwrap();
        assert!((j.a - 4.0).abs() < 1e-12);
        assert!((j.b - 4.0).abs() < 1e-12);
        assert!((j.d - 6.0).abs() < 1e-12);
    }

    #[test]
    fn central_density_reference_points() {
        // degree 1: 1/(pi (1+t^2))
        let e = Ensemble::iid_poly(1);
        assert!((e.density_central(0.0).unwrap() - 1.0 / PI).abs() < 1e-14);
        // binomial weights: sqrt(n)/(pi (1+t^2)) at several points
        for n in [1usize, 4, 9, 25] {
            let e = Ensemble::binomial_poly(n);
            for &t in &[0.0, 0.5, -1.0, 3.0, -20.0] {
                let want = (n as f64).sqrt() / (PI * (1.0 + t * t));
                let got = e.density_central(t).unwrap();
                assert!((got - want).abs() < 1e-12 * want.max(1.0), "n={n} t={t}");
            }
        }
        // entire basis: constant 1/pi
        let e = Ensemble::entire(6.0).unwrap();
        for &t in &[0.0, 1.0, -4.5] {
            assert!((e.density_central(t).unwrap() - 1.0 / PI).abs() < 1e-10);
        }
    }

    #[test]
    fn density_scale_invariance() {
        // replacing C by lambda C leaves the density unchanged
        let n = 6;
        let e1 = Ensemble::iid_poly(n);
        let lam = 37.5;
        let e2 = Ensemble::new(
            Basis::monomial(n),
            Covariance::diagonal(&vec![lam; n + 1]).unwrap(),
            Mean::Zero,
            Interval::entire(),
        )
        .unwrap();
        for &t in &[0.0, 0.3, -0.9, 1.0, 2.5] {
            let a = e1.density_central(t).unwrap();
            let b = e2.density_central(t).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.max(1.0), "t={t}");
        }
    }

    #[test]
    fn density_symmetry_for_even_bases() {
        for e in [
            Ensemble::iid_poly(7),
            Ensemble::binomial_poly(6),
            Ensemble::entire(5.0).unwrap(),
        ] {
            for &t in &[0.1, 0.5, 0.9, 1.3, 3.0] {
                let p = e.density_central(t).unwrap();
                let m = e.density_central(-t).unwrap();
                assert!((p - m).abs() < 1e-12 * p.max(1.0));
            }
        }
    }

    #[test]
    fn kac_inversion_symmetry() {
        // density(t) = density(1/t)/t^2 for iid coefficients
        let e = Ensemble::iid_poly(9);
        for &t in &[0.2, 0.5, 0.8, 1.5, 4.0] {
            let lhs = e.density_central(t).unwrap();
            let rhs = e.density_central(1.0 / t).unwrap() / (t * t);
            assert!((lhs - rhs).abs() < 1e-10 * lhs.max(1.0), "t={t}");
        }
    }

    #[test]
    fn logderiv_path_matches_direct_path() {
        let cases: Vec<(Ensemble, Vec<f64>, f64)> = vec![
            (Ensemble::iid_poly(3), vec![0.5, -0.25, 1.2], 1e-4),
            (Ensemble::binomial_poly(4), vec![0.0, 1.0, -2.0], 1e-4),
            (Ensemble::entire(5.0).unwrap(), vec![0.0, 0.7, -3.0], 1e-4),
            (
                Ensemble::power_series(1e-3).unwrap(),
                vec![0.0, 0.5, -0.9],
                2e-5,
            ),
            (Ensemble::chebyshev(7), vec![0.0, 0.4, -0.8], 2e-5),
            (Ensemble::one_sin_expabs(), vec![0.3, -1.5, 4.0], 1e-4),
            (
                Ensemble::trig_sum(vec![1.0, 0.5], vec![1.0, 3.0]).unwrap(),
                vec![0.0, 1.0, 2.5],
                1e-4,
            ),
        ];
        for (e, ts, h) in cases {
            for t in ts {
                let direct = e.density_central(t).unwrap();
                let log = e.density_central_logderiv(t, h).unwrap();
                assert!(
                    (direct - log).abs() < 1e-6,
                    "{:?} t={t}: direct {direct} vs logderiv {log}",
                    e.basis
                );
            }
        }
    }

    #[test]
    fn logderiv_error_shrinks_quadratically() {
        let e = Ensemble::iid_poly(5);
        let t = 0.6;
        let exact = e.density_central(t).unwrap();
        let e1 = (e.density_central_logderiv(t, 1e-3).unwrap() - exact).abs();
        let e2 = (e.density_central_logderiv(t, 5e-4).unwrap() - exact).abs();
        // halving h should cut the error by about 4
        assert!(e2 < e1 / 2.5, "h^2 order violated: {e1} -> {e2}");
    }

    #[test]
    fn binomial_total_is_sqrt_n() {
        for n in [1usize, 4, 9, 100] {
            let e = Ensemble::binomial_poly(n);
            let q = e.expected_zeros(Interval::entire(), 1e-10).unwrap();
            assert!(
                (q.value - (n as f64).sqrt()).abs() < 1e-8,
                "n={n}: {}",
                q.value
            );
        }
    }

    #[test]
    fn iid_degree_one_total_is_one() {
        let e = Ensemble::iid_poly(1);
        let q = e.expected_zeros(Interval::entire(), 1e-10).unwrap();
        assert!((q.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn power_series_closed_interval_count() {
        // int_0^{1/2} dt/(pi(1-t^2)) = ln 3 / (2 pi)
        let e = Ensemble::power_series(1e-3).unwrap();
        let q = e.expected_zeros(Interval::new(0.0, 0.5), 1e-10).unwrap();
        let want = 3.0f64.ln() / (2.0 * PI);
        assert!((q.value - want).abs() < 1e-9, "{} vs {want}", q.value);
    }

    #[test]
    fn mixed_sin_exp_family_total() {
        // frozen from two independent quadratures and a 150k-sample Monte
        // Carlo sign scan, all agreeing at 0.6460663
        let e = Ensemble::one_sin_expabs();
        let q = e.expected_zeros(Interval::entire(), 1e-8).unwrap();
        assert!((q.value - 0.646_066_3).abs() < 1e-6, "{}", q.value);
    }

    #[test]
    fn constant_projection_mean_has_zero_tangent_component() {
        let e = Ensemble::binomial_poly(2)
            .with_mean(Mean::ConstantProjection { scale: 1.5 })
            .unwrap();
        for &t in &[0.0, 0.8, -2.0] {
            let mp = e.mean_projection(t).unwrap();
            assert!((mp.m0 - 1.5).abs() < 1e-12);
            assert!(mp.m1.abs() < 1e-8);
        }
    }

    #[test]
    fn mean_projection_rejects_zero_mean() {
        let e = Ensemble::iid_poly(2);
        assert!(e.mean_projection(0.0).is_err());
        let e2 = Ensemble::iid_poly(2)
            .with_mean(Mean::Coefficients(vec![0.0; 3]))
            .unwrap();
        assert!(e2.mean_projection(0.0).is_err());
    }

    #[test]
    fn vanishing_kernel_norm_is_reported() {
        // a basis whose values underflow to zero must fail loudly rather
        // than divide by zero
        let basis = Basis::custom(2, |t| {
            let s = if t.abs() > 1.0 { 0.0 } else { 1.0 };
            BasisJet {
                values: vec![s, s * t],
                derivs: vec![0.0, s],
            }
        });
        let e = Ensemble::new(
            basis,
            Covariance::identity(),
            Mean::Zero,
            Interval::entire(),
        )
        .unwrap();
        assert!(e.density_central(0.5).is_ok());
        assert!(matches!(
            e.density_central(2.0),
            Err(Error::Evaluation(_))
        ));
    }

    #[test]
    fn noncentral_density_reduces_to_central() {
        let e0 = Ensemble::binomial_poly(4);
        let e1 = Ensemble::binomial_poly(4)
            .with_mean(Mean::Coefficients(vec![0.0; 5]))
            .unwrap();
        let e2 = Ensemble::binomial_poly(4)
            .with_mean(Mean::ConstantProjection { scale: 1e-8 })
            .unwrap();
        for &t in &[0.0, 0.5, -1.2] {
            let c = e0.density_central(t).unwrap();
            assert_eq!(e1.density_noncentral(t).unwrap(), c);
            assert!((e2.density_noncentral(t).unwrap() - c).abs() < 1e-6);
        }
    }

    #[test]
    fn tangent_matched_mean_on_power_series() {
        // coefficient vector of all ones realizes mu(t) = m/(1-t):
        // m0(t) = m sqrt((1+t)/(1-t)) and m1 = m0
        let dim = Ensemble::power_series(1e-3).unwrap().dimension();
        let m = 0.7;
        let e = Ensemble::power_series(1e-3)
            .unwrap()
            .with_mean(Mean::Coefficients(vec![m; dim]))
            .unwrap();
        for &t in &[0.0, 0.3, 0.6, -0.4] {
            let mp = e.mean_projection(t).unwrap();
            let want = m * ((1.0 + t) / (1.0 - t)).sqrt();
            assert!((mp.m0 - want).abs() < 1e-9, "m0 at {t}");
            assert!((mp.m1 - mp.m0).abs() < 1e-6, "m1 = m0 at {t}");
        }
        // the TangentMatched evaluator agrees with the explicit vector
        let e2 = Ensemble::power_series(1e-3)
            .unwrap()
            .with_mean(Mean::TangentMatched {
                scale: m,
                anchor: 0.0,
            })
            .unwrap();
        for &t in &[0.2, 0.5] {
            let a = e.density_noncentral(t).unwrap();
            let b = e2.density_noncentral(t).unwrap();
            assert!((a - b).abs() < 1e-6, "t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn projected_arclength_matches_pi_times_count() {
        let e = Ensemble::binomial_poly(4);
        let len = e.projected_arclength(Interval::entire(), 1e-9).unwrap();
        assert!((len - 2.0 * PI).abs() < 1e-6, "{len}");

        let e1 = Ensemble::iid_poly(1);
        let len1 = e1.projected_arclength(Interval::entire(), 1e-9).unwrap();
        assert!((len1 - PI).abs() < 1e-6, "{len1}");

        let e2 = Ensemble::iid_poly(2);
        let len2 = e2.projected_arclength(Interval::entire(), 1e-9).unwrap();
        let count = e2.expected_zeros(Interval::entire(), 1e-10).unwrap().value;
        assert!((len2 - PI * count).abs() < 1e-5, "{len2} vs pi*{count}");
    }

    #[test]
    fn interval_outside_domain_is_rejected() {
        let e = Ensemble::power_series(1e-3).unwrap();
        assert!(e.expected_zeros(Interval::new(0.0, 2.0), 1e-8).is_err());
    }

    #[test]
    fn correlated_series_density_below_uncorrelated() {
        let e0 = Ensemble::power_series(1e-3).unwrap();
        let er = Ensemble::correlated_power_series(0.4, 1e-3).unwrap();
        for i in 1..10 {
            let t = 0.09 * i as f64;
            let d0 = e0.density_central(t).unwrap();
            let dr = er.density_central(t).unwrap();
            assert!(dr < d0, "t={t}: {dr} !< {d0}");
        }
    }
}
