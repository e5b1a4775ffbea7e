//! Coefficient mean specifications.

/// Mean of the Gaussian coefficient vector.
#[derive(Debug, Clone)]
pub enum Mean {
    /// Central ensemble.
    Zero,
    /// Explicit coefficient-space mean m, so the mean function is
    /// mu(t) = sum m_k f_k(t). The only kind the Monte Carlo samplers
    /// accept besides `Zero`.
    Coefficients(Vec<f64>),
    /// Mean function mu(t) = scale * ||w(t)||: the projection of the mean
    /// onto the normalized curve is the constant `scale` and the
    /// tangential component vanishes.
    ConstantProjection { scale: f64 },
    /// Mean function mu(t) = scale * ||w(t)|| * exp(int_anchor^t speed),
    /// which makes the tangential projection equal the normal one at
    /// every point.
    TangentMatched { scale: f64, anchor: f64 },
}

impl Mean {
    pub fn is_zero(&self) -> bool {
        match self {
            Mean::Zero => true,
            Mean::Coefficients(m) => m.iter().all(|&x| x == 0.0),
            Mean::ConstantProjection { scale } => *scale == 0.0,
            Mean::TangentMatched { scale, .. } => *scale == 0.0,
        }
    }

    /// The coefficient vector when the mean lives in coefficient space.
    pub fn coefficient_vector(&self) -> Option<&[f64]> {
        match self {
            Mean::Coefficients(m) => Some(m),
            _ => None,
        }
    }
}
