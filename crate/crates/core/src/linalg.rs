//! 2×2 symmetric matrices for information and covariance.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[f64; 2]; 2]);

impl Matrix2 {
    pub fn new(a00: f64, a01: f64, a10: f64, a11: f64) -> Self {
        Self([[a00, a01], [a10, a11]])
    }

    pub fn symmetric(a00: f64, a01: f64, a11: f64) -> Self {
        Self([[a00, a01], [a01, a11]])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn determinant(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn is_symmetric(&self) -> bool {
        self.0[0][1] == self.0[1][0]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.0[0][0] > 0.0 && self.determinant() > 0.0 && self.0[1][1] > 0.0
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        let scale = self.0[0][0].abs().max(self.0[1][1].abs());
        let slack = 1e-12 * scale * scale;
        self.0[0][0] >= 0.0 && self.0[1][1] >= 0.0 && self.determinant() >= -slack
    }

    pub fn scale(&self, s: f64) -> Self {
        let m = self.0;
        Self([[s * m[0][0], s * m[0][1]], [s * m[1][0], s * m[1][1]]])
    }

    /// Inverse of a positive definite matrix.
    pub fn inverse_spd(&self) -> Result<Self> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let det = self.determinant();
        let m = self.0;
        Ok(Self::symmetric(m[1][1] / det, -0.5 * (m[0][1] + m[1][0]) / det, m[0][0] / det))
    }

    /// `J M Jᵀ` for a diagonal Jacobian `J = diag(d)`.
    pub fn congruence_diag(&self, d: [f64; 2]) -> Self {
        let m = self.0;
        Self([
            [d[0] * d[0] * m[0][0], d[0] * d[1] * m[0][1]],
            [d[1] * d[0] * m[1][0], d[1] * d[1] * m[1][1]],
        ])
    }

    pub fn diagonal_sqrt(&self) -> [f64; 2] {
        [self.0[0][0].max(0.0).sqrt(), self.0[1][1].max(0.0).sqrt()]
    }
}
