//! Real-eigenvalue counts for Gaussian matrices, the matrix-polynomial
//! geometric factor, the bidiagonal test matrix with integer spectrum,
//! and characteristic polynomials for the Monte Carlo counters.

use crate::error::{Error, Result};
use crate::numerics::{double_factorial_ratio, log_gamma, Poly};

/// Row-major square matrix of f64 entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SquareMatrix {
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self> {
        if order == 0 || entries.len() != order * order {
            return Err(Error::Domain(format!(
                "need order >= 1 and {order}^2 entries, got {}",
                entries.len()
            )));
        }
        Ok(SquareMatrix { order, entries })
    }

    pub fn zeros(order: usize) -> Self {
        SquareMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = SquareMatrix::zeros(order);
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SquareMatrix::zeros(order);
        for i in 0..order {
            for j in 0..order {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.order + j] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn matmul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }
}

/// Expected number of real eigenvalues of an n x n matrix with iid
/// standard normal entries.
///
/// Even n: sqrt(2) sum_{k=0}^{n/2-1} (4k-1)!!/(4k)!!;
/// odd n: 1 + sqrt(2) sum_{k=1}^{(n-1)/2} (4k-3)!!/(4k-2)!!.
pub fn real_eigen_expected(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("matrix order must be >= 1".into()));
    }
    let root2 = std::f64::consts::SQRT_2;
    if n % 2 == 0 {
        let mut sum = 0.0;
        for k in 0..n / 2 {
            let k = k as i64;
            sum += double_factorial_ratio(4 * k - 1, 4 * k)?;
        }
        Ok(root2 * sum)
    } else {
        let mut sum = 0.0;
        for k in 1..=(n - 1) / 2 {
            let k = k as i64;
            sum += double_factorial_ratio(4 * k - 3, 4 * k - 2)?;
        }
        Ok(1.0 + root2 * sum)
    }
}

/// Large-n asymptotic sqrt(2n/pi) of the expected real-eigenvalue count.
pub fn real_eigen_asymptotic(n: usize) -> f64 {
    (2.0 * n as f64 / std::f64::consts::PI).sqrt()
}

/// The factor sqrt(pi) Gamma((p+1)/2) / Gamma(p/2) by which the expected
/// number of real eigenvalues of a p x p matrix polynomial exceeds the
/// scalar (p = 1) count.
pub fn matrix_poly_factor(p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::Domain("block size p must be >= 1".into()));
    }
    let pf = p as f64;
    let lg =
        0.5 * std::f64::consts::PI.ln() + log_gamma((pf + 1.0) / 2.0)? - log_gamma(pf / 2.0)?;
    Ok(lg.exp())
}

/// The (n+1) x (n+1) bidiagonal test matrix whose spectrum is exactly
/// the integers {2k - n : k = 0..n}: row k holds k on the subdiagonal
/// and n - k on the superdiagonal (node-counting convention of the
/// collapsed hypercube walk).
pub fn kac_matrix(n: usize) -> SquareMatrix {
    let size = n + 1;
    let mut m = SquareMatrix::zeros(size);
    for k in 0..size {
        if k > 0 {
            m.set(k, k - 1, k as f64);
        }
        if k < n {
            m.set(k, k + 1, (n - k) as f64);
        }
    }
    m
}

/// Monic characteristic polynomial det(lambda I - A) by the trace
/// recurrence. Guarded to order <= 12; beyond that the coefficients are
/// too ill-conditioned to be useful.
pub fn char_poly(a: &SquareMatrix) -> Result<Poly> {
    let n = a.order();
    if n > 12 {
        return Err(Error::Domain(format!(
            "characteristic polynomial limited to order <= 12, got {n}"
        )));
    }
    // m_1 = A, c_{n-1} = -tr m_1;
    // m_k = A (m_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(m_k)/k
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = a.clone();
    coeffs[n - 1] = -m.trace();
    for k in 2..=n {
        for i in 0..n {
            let idx = i * n + i;
            m.entries[idx] += coeffs[n - k + 1];
        }
        m = a.matmul(&m);
        coeffs[n - k] = -m.trace() / k as f64;
    }
    Ok(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn real_eigen_small_orders() {
        assert_eq!(real_eigen_expected(1).unwrap(), 1.0);
        assert!((real_eigen_expected(2).unwrap() - std::f64::consts::SQRT_2).abs() < 1e-14);
        // n=4: sqrt(2)(1 + 3/8)
        let want = 11.0 * std::f64::consts::SQRT_2 / 8.0;
        assert!((real_eigen_expected(4).unwrap() - want).abs() < 1e-13);
        // n=3: 1 + sqrt(2)/2
        let want3 = 1.0 + std::f64::consts::SQRT_2 / 2.0;
        assert!((real_eigen_expected(3).unwrap() - want3).abs() < 1e-13);
    }

    #[test]
    fn real_eigen_growth_matches_asymptotic() {
        assert!((real_eigen_asymptotic(50) - (100.0 / PI).sqrt()).abs() < 1e-12);
        assert!((real_eigen_asymptotic(1) - (2.0 / PI).sqrt()).abs() < 1e-15);
        // frozen from an exact-rational oracle: E(200) = 11.762628...;
        // the count exceeds sqrt(2n/pi) by an offset approaching 1/2, so
        // the ratio decays to 1 like sqrt(pi/(8n))
        let e200 = real_eigen_expected(200).unwrap();
        assert!((e200 - 11.762_628).abs() < 1e-5, "E(200) = {e200}");
        let ratio200 = e200 / real_eigen_asymptotic(200);
        assert!((ratio200 - 1.042_44).abs() < 1e-4, "ratio {ratio200}");
        let ratio1000 = real_eigen_expected(1000).unwrap() / real_eigen_asymptotic(1000);
        assert!(ratio1000 < ratio200 && (ratio1000 - 1.0).abs() < 0.02);
        let offset = real_eigen_expected(2000).unwrap() - real_eigen_asymptotic(2000);
        assert!((offset - 0.5).abs() < 0.01, "offset {offset}");
        // monotone growth of the even/odd ladders
        for n in 1..=30 {
            let step = real_eigen_expected(n + 2).unwrap() - real_eigen_expected(n).unwrap();
            assert!(step > 0.0);
        }
        // increments approach the asymptotic increments
        let n = 400;
        let inc = real_eigen_expected(n + 2).unwrap() - real_eigen_expected(n).unwrap();
        let asym_inc = real_eigen_asymptotic(n + 2) - real_eigen_asymptotic(n);
        assert!((inc / asym_inc - 1.0).abs() < 0.02, "{inc} vs {asym_inc}");
    }

    #[test]
    fn matrix_poly_factor_reference_points() {
        assert!((matrix_poly_factor(1).unwrap() - 1.0).abs() < 1e-14);
        assert!((matrix_poly_factor(2).unwrap() - PI / 2.0).abs() < 1e-13);
        assert!((matrix_poly_factor(3).unwrap() - 2.0).abs() < 1e-13);
        // factor(p)^2 ~ (pi/2) p for large p
        let p = 100;
        let f = matrix_poly_factor(p).unwrap();
        assert!((f * f / (PI / 2.0 * p as f64) - 1.0).abs() < 0.01);
    }

    #[test]
    fn char_poly_reference_cases() {
        let p = char_poly(&SquareMatrix::identity(2)).unwrap();
        assert_eq!(p.coeffs(), &[1.0, -2.0, 1.0]);

        let d = SquareMatrix::from_fn(3, |i, j| if i == j { (i + 1) as f64 } else { 0.0 });
        let p = char_poly(&d).unwrap();
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let want = [-6.0, 11.0, -6.0, 1.0];
        for (c, w) in p.coeffs().iter().zip(want) {
            assert!((c - w).abs() < 1e-10);
        }
        assert!(char_poly(&SquareMatrix::zeros(13)).is_err());
    }

    #[test]
    fn char_poly_constant_term_is_signed_determinant() {
        // 5x5 samples: c_0 = (-1)^5 det(A), determinant by elimination
        let mut stream = crate::numerics::GaussianStream::new(3141, 0);
        for _ in 0..5 {
            let entries = stream.take_normals(25);
            let a = SquareMatrix::new(5, entries.clone()).unwrap();
            let p = char_poly(&a).unwrap();
            let det = elimination_det(5, entries);
            let norm = a.frobenius_norm().powi(5);
            assert!(
                (p.coeffs()[0] - -det).abs() < 1e-8 * norm.max(1.0),
                "{} vs {}",
                p.coeffs()[0],
                -det
            );
        }
    }

    fn elimination_det(n: usize, mut a: Vec<f64>) -> f64 {
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
                .unwrap();
            if a[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            det *= a[col * n + col];
            for i in col + 1..n {
                let f = a[i * n + col] / a[col * n + col];
                for j in col..n {
                    a[i * n + j] -= f * a[col * n + j];
                }
            }
        }
        det
    }

    #[test]
    fn char_poly_trace_identity() {
        let mut stream = crate::numerics::GaussianStream::new(99, 1);
        let a = SquareMatrix::new(6, stream.take_normals(36)).unwrap();
        let p = char_poly(&a).unwrap();
        assert!((p.coeffs()[5] - -a.trace()).abs() < 1e-12 * a.trace().abs().max(1.0));
    }

    #[test]
    fn kac_matrix_structure_and_spectrum_sum() {
        let m = kac_matrix(3);
        // spectrum symmetric about zero, so the trace vanishes; bidiagonal
        // counting pattern
        assert_eq!(m.trace(), 0.0);
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 1.0);
        assert_eq!(m.get(1, 2), 2.0);
        assert_eq!(m.get(3, 2), 3.0);
        // char poly of n=1: lambda^2 - 1, roots {-1, 1}
        let p = char_poly(&kac_matrix(1)).unwrap();
        assert_eq!(p.coeffs(), &[-1.0, 0.0, 1.0]);
    }
}
