use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::program::digits;
use crate::{CircuitError, Result};

/// Rotation by `angle` in the (mode_a, mode_b) plane: identity except
/// [[cos, −sin], [sin, cos]] on rows and columns a, b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Givens {
    pub mode_a: usize,
    pub mode_b: usize,
    #[serde(with = "digits::real")]
    pub angle: f64,
}

/// M = G₁·G₂·…·G_k·diag(signs).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GivensSequence {
    pub rotations: Vec<Givens>,
    #[serde(with = "digits::vector")]
    pub signs: Vec<f64>,
}

fn orthogonality_error(m: &DMatrix<f64>) -> f64 {
    (m.transpose() * m - DMatrix::identity(m.nrows(), m.nrows())).amax()
}

/// Factors an orthogonal matrix into nearest-neighbour rotations and sign flips.
///
/// Entries below the diagonal are eliminated column by column from the
/// bottom up, giving at most V(V−1)/2 rotations.
pub fn givens_decompose(m: &DMatrix<f64>) -> Result<GivensSequence> {
    if !m.is_square() {
        return Err(CircuitError::InvalidArgument(format!("{}×{} matrix is not square", m.nrows(), m.ncols())));
    }
    let err = orthogonality_error(m);
    if !(err <= 1e-8) {
        return Err(CircuitError::NotOrthogonal(err));
    }
    let v = m.nrows();
    let mut a = m.clone();
    let mut rotations = Vec::new();
    for j in 0..v {
        for i in (j + 1..v).rev() {
            let (x, y) = (a[(i - 1, j)], a[(i, j)]);
            if y.abs() <= 1e-15 {
                continue;
            }
            let angle = y.atan2(x);
            let (s, c) = angle.sin_cos();
            for col in j..v {
                let (p, q) = (a[(i - 1, col)], a[(i, col)]);
                a[(i - 1, col)] = c * p + s * q;
                a[(i, col)] = c * q - s * p;
            }
            rotations.push(Givens { mode_a: i - 1, mode_b: i, angle });
        }
    }
    let signs = (0..v).map(|i| if a[(i, i)] < 0.0 { -1.0 } else { 1.0 }).collect();
    Ok(GivensSequence { rotations, signs })
}

/// Rebuilds the V×V matrix G₁·…·G_k·diag(signs).
pub fn compose_givens(seq: &GivensSequence) -> Result<DMatrix<f64>> {
    let v = seq.signs.len();
    let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(seq.signs.clone()));
    for g in seq.rotations.iter().rev() {
        if g.mode_a >= v || g.mode_b >= v || g.mode_a == g.mode_b {
            return Err(CircuitError::Malformed(format!("rotation on modes ({}, {}) of {v}", g.mode_a, g.mode_b)));
        }
        let (s, c) = g.angle.sin_cos();
        for col in 0..v {
            let (p, q) = (m[(g.mode_a, col)], m[(g.mode_b, col)]);
            m[(g.mode_a, col)] = c * p - s * q;
            m[(g.mode_b, col)] = s * p + c * q;
        }
    }
    Ok(m)
}
