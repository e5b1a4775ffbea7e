//! Radial distribution of complex zeros of random series with complex
//! Gaussian coefficients, growth-profile examples, and the strip count
//! for random Dirichlet series.
//!
//! For coefficient variances sigma_k^2 with generating function
//! phi(z) = sum sigma_k^2 z^k, the expected number of zeros in |z| < r
//! is n(r) = (r/2) d/dr log phi(r^2) = x phi'(x)/phi(x) at x = r^2.

use crate::error::{Error, Result};
use crate::numerics::zeta_derivs;
use std::f64::consts::PI;

/// Variance generating function of a complex-Gaussian random series.
#[derive(Debug, Clone)]
pub enum VarianceGeneratingFunction {
    /// Unit variances, degree n: phi(z) = 1 + z + ... + z^n.
    KacComplex { n: usize },
    /// Binomial variances, degree n: phi(z) = (1+z)^n.
    KostlanComplex { n: usize },
    /// phi(z) = e^{2 tau z^{rho/2}}, the profile of an entire function of
    /// the given order and type.
    EntireOrderType { order: f64, type_param: f64 },
    /// Explicit variance list sigma_k^2, k ascending.
    Custom { variances: Vec<f64> },
}

/// Cumulative radial profile: expected number of zeros with |z| < r for
/// each grid radius.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    pub radii: Vec<f64>,
    pub counts: Vec<f64>,
}

impl VarianceGeneratingFunction {
    /// The variance list when the family has finite degree (used by the
    /// Monte Carlo sampler).
    pub fn variances(&self) -> Option<Vec<f64>> {
        match self {
            VarianceGeneratingFunction::KacComplex { n } => Some(vec![1.0; n + 1]),
            VarianceGeneratingFunction::KostlanComplex { n } => {
                let mut v = Vec::with_capacity(n + 1);
                let mut c = 1.0f64;
                for k in 0..=*n {
                    v.push(c);
                    c = c * (*n - k) as f64 / (k + 1) as f64;
                }
                Some(v)
            }
            VarianceGeneratingFunction::Custom { variances } => Some(variances.clone()),
            VarianceGeneratingFunction::EntireOrderType { .. } => None,
        }
    }

    /// phi, phi', phi'' at x by direct summation (series families.)
    fn phi_jets(&self, x: f64) -> Result<(f64, f64, f64)> {
        let variances = self
            .variances()
            .ok_or_else(|| Error::Unsupported("no series representation".into()))?;
        let mut phi = 0.0;
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        let mut pw = 1.0; // x^k
        let mut pw1 = 0.0; // x^{k-1}
        let mut pw2 = 0.0; // x^{k-2}
        for (k, &v) in variances.iter().enumerate() {
            let kf = k as f64;
            phi += v * pw;
            d1 += v * kf * pw1;
            d2 += v * kf * (kf - 1.0) * pw2;
            pw2 = pw1;
            pw1 = pw;
            pw *= x;
        }
        if !(phi.is_finite() && d1.is_finite() && d2.is_finite()) {
            return Err(Error::Evaluation(format!(
                "variance generating function overflowed at x = {x}"
            )));
        }
        Ok((phi, d1, d2))
    }

    /// Index of the lowest nonzero variance: that many zeros sit at the
    /// origin with probability one.
    fn origin_order(&self) -> Result<usize> {
        match self.variances() {
            Some(v) => v
                .iter()
                .position(|&s| s > 0.0)
                .ok_or_else(|| Error::Domain("all variances are zero".into())),
            None => Ok(0),
        }
    }

    /// Expected number of zeros in the disk |z| < r.
    pub fn radial_count(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::Domain(format!("radius must be >= 0, got {r}")));
        }
        if r == 0.0 {
            return Ok(0.0);
        }
        match self {
            VarianceGeneratingFunction::EntireOrderType { order, type_param } => {
                Ok(type_param * order * r.powf(*order))
            }
            _ => {
                let k0 = self.origin_order()? as f64;
                let x = r * r;
                // factor x^{k0} out of phi: n(r) = k0 + x psi'/psi
                let (phi, d1, _) = self.phi_jets_shifted(x)?;
                Ok(k0 + x * d1 / phi)
            }
        }
    }

    /// d n(r) / dr, the density of the cumulative radial count.
    pub fn radial_density(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("radius must be > 0, got {r}")));
        }
        match self {
            VarianceGeneratingFunction::EntireOrderType { order, type_param } => {
                Ok(type_param * order * order * r.powf(*order - 1.0))
            }
            _ => {
                // d/dr [x psi'/psi] with x = r^2:
                // 2r [ (psi' + x psi'')/psi - x (psi'/psi)^2 ]
                let x = r * r;
                let (phi, d1, d2) = self.phi_jets_shifted(x)?;
                let ratio = d1 / phi;
                Ok((2.0 * r * ((d1 + x * d2) / phi - x * ratio * ratio)).max(0.0))
            }
        }
    }

    /// phi jets with any zero variances at the bottom factored out.
    fn phi_jets_shifted(&self, x: f64) -> Result<(f64, f64, f64)> {
        let k0 = self.origin_order()?;
        if k0 == 0 {
            return self.phi_jets(x);
        }
        let variances = self.variances().expect("series family");
        let shifted = VarianceGeneratingFunction::Custom {
            variances: variances[k0..].to_vec(),
        };
        shifted.phi_jets(x)
    }

    /// Cumulative counts over a radius grid.
    pub fn radial_profile(&self, radii: &[f64]) -> Result<RadialProfile> {
        let mut counts = Vec::with_capacity(radii.len());
        for &r in radii {
            counts.push(self.radial_count(r)?);
        }
        Ok(RadialProfile {
            radii: radii.to_vec(),
            counts,
        })
    }
}

/// Expected number of zeros of a random Dirichlet series in the
/// rectangle x1 < Re z < x2, y1 < Im z < y2 (with x1 > 1/2):
/// (1/2pi) [zeta'/zeta(2 x2) - zeta'/zeta(2 x1)] (y2 - y1).
pub fn dirichlet_strip_count(x1: f64, x2: f64, y1: f64, y2: f64) -> Result<f64> {
    if !(x1 > 0.5) {
        return Err(Error::Domain(format!(
            "strip must lie right of Re z = 1/2, got x1 = {x1}"
        )));
    }
    if x2 < x1 || y2 < y1 {
        return Err(Error::Domain("need x1 <= x2 and y1 <= y2".into()));
    }
    let ratio = |x: f64| -> Result<f64> { Ok(zeta_derivs(2.0 * x, 1)? / zeta_derivs(2.0 * x, 0)?) };
    Ok((ratio(x2)? - ratio(x1)?) * (y2 - y1) / (2.0 * PI))
}
