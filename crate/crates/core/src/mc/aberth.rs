//! Simultaneous polynomial root finding by the Aberth-Ehrlich iteration.

use crate::error::{Error, Result};
use crate::numerics::Poly;
use num_complex::Complex64;

const MAX_ITERATIONS: usize = 200;
const RESIDUAL_TOL: f64 = 1e-10;

/// All complex roots of a real-coefficient polynomial of degree >= 1.
pub fn aberth_roots(p: &Poly) -> Result<Vec<Complex64>> {
    let coeffs: Vec<Complex64> = p.coeffs().iter().map(|&c| Complex64::new(c, 0.0)).collect();
    aberth_roots_complex(&coeffs, 0.43)
}

/// All roots of a complex-coefficient polynomial. Initial guesses sit on
/// the Cauchy-bound circle at equally spaced angles offset by
/// `angle_offset` (callers inject jitter here to break symmetric
/// configurations). Convergence is declared when every residual
/// satisfies |p(z)| <= 1e-10 ||p||_1 max(1, |z|)^deg.
pub fn aberth_roots_complex(
    coeffs: &[Complex64],
    angle_offset: f64,
) -> Result<Vec<Complex64>> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() == 0.0 {
        c.pop();
    }
    let degree = c.len().saturating_sub(1);
    if degree == 0 {
        return Err(Error::Domain(
            "root finding needs degree >= 1 with a nonzero leading coefficient".into(),
        ));
    }
    let lead = *c.last().unwrap();
    let norm1: f64 = c.iter().map(|z| z.norm()).sum();
    // Cauchy bound: all roots inside 1 + max |c_k / c_n|
    let radius = 1.0
        + c[..degree]
            .iter()
            .map(|z| (z / lead).norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|j| {
            let th = 2.0 * std::f64::consts::PI * j as f64 / degree as f64 + angle_offset;
            Complex64::from_polar(radius, th)
        })
        .collect();
    let mut residuals = vec![f64::INFINITY; degree];
    for _ in 0..MAX_ITERATIONS {
        let mut all_ok = true;
        for j in 0..degree {
            let (pv, dv) = horner_with_deriv(&c, z[j]);
            residuals[j] = pv.norm();
            let bound = RESIDUAL_TOL * norm1 * z[j].norm().max(1.0).powi(degree as i32);
            if residuals[j] <= bound {
                continue;
            }
            all_ok = false;
            let newton = if dv.norm() == 0.0 {
                // nudge away from a critical point
                Complex64::new(1e-8 * (1.0 + z[j].norm()), 0.0)
            } else {
                pv / dv
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (i, zi) in z.iter().enumerate() {
                if i != j {
                    let diff = z[j] - zi;
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() < 1e-14 {
                newton
            } else {
                newton / denom
            };
            z[j] -= step;
        }
        if all_ok {
            return Ok(z);
        }
    }
    let worst = residuals.iter().cloned().fold(0.0f64, f64::max);
    Err(Error::NonConvergence {
        detail: format!("root iteration stalled; worst residual {worst:e}"),
        value: worst,
        err_estimate: worst,
        evaluations: MAX_ITERATIONS * degree,
    })
}

fn horner_with_deriv(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}
