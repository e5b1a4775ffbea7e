//! Coefficient covariance structures with their triangular square roots.

use crate::error::{Error, Result};

/// Covariance of the Gaussian coefficient vector. Every variant stores
/// (or implies) a lower-triangular factor L with L L^T = C, computed at
/// construction.
#[derive(Debug, Clone)]
pub enum Covariance {
    Identity,
    /// Diagonal C; stored as the square roots of the variances.
    Diagonal { sqrt_variances: Vec<f64> },
    /// Unit diagonal with constant correlation r on the first off-
    /// diagonals; |r| <= 1/2 keeps it positive definite at any size.
    /// The factor is lower bidiagonal.
    TridiagonalCorrelation {
        r: f64,
        l_diag: Vec<f64>,
        l_sub: Vec<f64>,
    },
    /// Dense symmetric positive definite matrix with its Cholesky factor,
    /// both row-major.
    Dense {
        dim: usize,
        matrix: Vec<f64>,
        factor: Vec<f64>,
    },
}

impl Covariance {
    pub fn identity() -> Covariance {
        Covariance::Identity
    }

    pub fn diagonal(variances: &[f64]) -> Result<Covariance> {
        if variances.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::Domain("variances must be nonnegative".into()));
        }
        Ok(Covariance::Diagonal {
            sqrt_variances: variances.iter().map(|v| v.sqrt()).collect(),
        })
    }

    pub fn tridiagonal_correlation(r: f64, dim: usize) -> Result<Covariance> {
        if !(r.abs() <= 0.5) {
            return Err(Error::Domain(format!(
                "tridiagonal correlation requires |r| <= 1/2, got {r}"
            )));
        }
        let mut l_diag = Vec::with_capacity(dim);
        let mut l_sub = vec![0.0; dim];
        let mut d = 1.0f64;
        for j in 0..dim {
            if j > 0 {
                l_sub[j] = r / l_diag[j - 1];
                d = 1.0 - l_sub[j] * l_sub[j];
                if d <= 0.0 {
                    return Err(Error::Domain(
                        "tridiagonal correlation matrix is not positive definite".into(),
                    ));
                }
            }
            l_diag.push(d.sqrt());
        }
        Ok(Covariance::TridiagonalCorrelation { r, l_diag, l_sub })
    }

    /// Dense SPD covariance; fails if the Cholesky factorization breaks
    /// down or the reconstruction drifts past 1e-12 relative.
    pub fn dense_spd(matrix: Vec<f64>, dim: usize) -> Result<Covariance> {
        if matrix.len() != dim * dim {
            return Err(Error::Domain("covariance matrix shape mismatch".into()));
        }
        for i in 0..dim {
            for j in 0..i {
                if (matrix[i * dim + j] - matrix[j * dim + i]).abs()
                    > 1e-12 * (1.0 + matrix[i * dim + i].abs())
                {
                    return Err(Error::Domain("covariance matrix is not symmetric".into()));
                }
            }
        }
        let factor = cholesky(&matrix, dim)?;
        // invariant: L L^T reproduces C
        let scale = matrix.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..dim {
            for j in 0..=i {
                let mut s = 0.0;
                for k in 0..=j {
                    s += factor[i * dim + k] * factor[j * dim + k];
                }
                if (s - matrix[i * dim + j]).abs() > 1e-12 * scale.max(1.0) {
                    return Err(Error::Evaluation(
                        "Cholesky reconstruction drifted beyond 1e-12".into(),
                    ));
                }
            }
        }
        Ok(Covariance::Dense {
            dim,
            matrix,
            factor,
        })
    }

    /// L^T x, the map sending basis values to the quadratic-form frame.
    pub fn apply_factor_transpose(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Covariance::Identity => x.to_vec(),
            Covariance::Diagonal { sqrt_variances } => {
                debug_assert_eq!(sqrt_variances.len(), x.len());
                x.iter().zip(sqrt_variances).map(|(v, s)| v * s).collect()
            }
            Covariance::TridiagonalCorrelation { l_diag, l_sub, .. } => {
                let n = x.len();
                let mut out = vec![0.0; n];
                for i in 0..n {
                    out[i] = l_diag[i] * x[i];
                    if i + 1 < n {
                        out[i] += l_sub[i + 1] * x[i + 1];
                    }
                }
                out
            }
            Covariance::Dense { dim, factor, .. } => {
                let mut out = vec![0.0; *dim];
                for i in 0..*dim {
                    let mut s = 0.0;
                    for k in i..*dim {
                        s += factor[k * dim + i] * x[k];
                    }
                    out[i] = s;
                }
                out
            }
        }
    }

    /// L z, the map sending iid standard normals to correlated
    /// coefficients for sampling.
    pub fn apply_factor(&self, z: &[f64]) -> Vec<f64> {
        match self {
            Covariance::Identity => z.to_vec(),
            Covariance::Diagonal { sqrt_variances } => {
                z.iter().zip(sqrt_variances).map(|(v, s)| v * s).collect()
            }
            Covariance::TridiagonalCorrelation { l_diag, l_sub, .. } => {
                let n = z.len();
                let mut out = vec![0.0; n];
                for i in 0..n {
                    out[i] = l_diag[i] * z[i];
                    if i > 0 {
                        out[i] += l_sub[i] * z[i - 1];
                    }
                }
                out
            }
            Covariance::Dense { dim, factor, .. } => {
                let mut out = vec![0.0; *dim];
                for i in 0..*dim {
                    let mut s = 0.0;
                    for k in 0..=i {
                        s += factor[i * dim + k] * z[k];
                    }
                    out[i] = s;
                }
                out
            }
        }
    }

    /// Dimension constraint implied by the variant, if any.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            Covariance::Identity => None,
            Covariance::Diagonal { sqrt_variances } => Some(sqrt_variances.len()),
            Covariance::TridiagonalCorrelation { l_diag, .. } => Some(l_diag.len()),
            Covariance::Dense { dim, .. } => Some(*dim),
        }
    }
}

fn cholesky(matrix: &[f64], dim: usize) -> Result<Vec<f64>> {
    let mut l = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..=i {
            let mut s = matrix[i * dim + j];
            for k in 0..j {
                s -= l[i * dim + k] * l[j * dim + k];
            }
            if i == j {
                if s <= 0.0 {
                    return Err(Error::Domain(
                        "covariance matrix is not positive definite".into(),
                    ));
                }
                l[i * dim + j] = s.sqrt();
            } else {
                l[i * dim + j] = s / l[j * dim + j];
            }
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_factor_reconstructs() {
        let n = 40;
        let r = 0.5;
        let c = Covariance::tridiagonal_correlation(r, n).unwrap();
        // (L L^T)_{ij} against the tridiagonal pattern
        if let Covariance::TridiagonalCorrelation { l_diag, l_sub, .. } = &c {
            for i in 0..n {
                let diag = l_diag[i] * l_diag[i] + l_sub[i] * l_sub[i];
                assert!((diag - 1.0).abs() < 1e-12);
                if i + 1 < n {
                    let off = l_diag[i] * l_sub[i + 1];
                    assert!((off - r).abs() < 1e-12);
                }
            }
        } else {
            unreachable!()
        }
    }

    #[test]
    fn tridiagonal_rejects_large_r() {
        assert!(Covariance::tridiagonal_correlation(0.51, 5).is_err());
    }

    #[test]
    fn dense_cholesky_round_trip() {
        // C = M M^T + I for a fixed M is SPD
        let dim = 4;
        let m = [
            0.3, -1.2, 0.5, 0.0, 2.0, 0.1, -0.7, 1.1, 0.4, 0.4, 0.9, -0.2, -1.0, 0.6, 0.0, 0.8,
        ];
        let mut c = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c[i * dim + j] += m[i * dim + k] * m[j * dim + k];
                }
            }
            c[i * dim + i] += 1.0;
        }
        let cov = Covariance::dense_spd(c.clone(), dim).unwrap();
        // quadratic form through the factor equals x^T C x
        let x = [1.0, -2.0, 0.5, 3.0];
        let lx = cov.apply_factor_transpose(&x);
        let quad: f64 = lx.iter().map(|v| v * v).sum();
        let mut direct = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                direct += x[i] * c[i * dim + j] * x[j];
            }
        }
        assert!((quad - direct).abs() < 1e-10 * direct.abs());
    }

    #[test]
    fn transpose_map_gives_the_quadratic_form() {
        let cov = Covariance::tridiagonal_correlation(0.3, 6).unwrap();
        let z = [0.5, -1.0, 2.0, 0.0, 1.0, -0.5];
        // ||L^T z||^2 = z^T (L L^T) z = z^T C z
        let ltz = cov.apply_factor_transpose(&z);
        let mut direct = 0.0;
        for i in 0..6 {
            direct += z[i] * z[i];
            if i + 1 < 6 {
                direct += 2.0 * 0.3 * z[i] * z[i + 1];
            }
        }
        let b: f64 = ltz.iter().map(|v| v * v).sum();
        assert!((b - direct).abs() < 1e-12);
    }

    #[test]
    fn sampling_map_matches_dense_factor() {
        let n = 6;
        let cov = Covariance::tridiagonal_correlation(0.4, n).unwrap();
        let (l_diag, l_sub) = match &cov {
            Covariance::TridiagonalCorrelation { l_diag, l_sub, .. } => {
                (l_diag.clone(), l_sub.clone())
            }
            _ => unreachable!(),
        };
        let z = [0.5, -1.0, 2.0, 0.0, 1.0, -0.5];
        let lz = cov.apply_factor(&z);
        for i in 0..n {
            let mut want = l_diag[i] * z[i];
            if i > 0 {
                want += l_sub[i] * z[i - 1];
            }
            assert!((lz[i] - want).abs() < 1e-15);
        }
    }
}
