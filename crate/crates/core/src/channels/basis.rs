use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::matrix::{ComplexMatrix, C64, ONE, ZERO};

/// Orthonormal eigenbasis of a nondegenerate observable.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    label: String,
    vectors: Vec<Vec<C64>>,
}

impl Basis {
    /// Checks orthonormality to 1e-12 (Gram matrix against the identity).
    pub fn new(label: impl Into<String>, vectors: Vec<Vec<C64>>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 {
            return Err(Error::InvalidArgument("empty basis".into()));
        }
        if vectors.iter().any(|v| v.len() != d) {
            return Err(Error::Dimension(format!(
                "basis of {d} vectors needs vectors of length {d}"
            )));
        }
        let b = Self {
            label: label.into(),
            vectors,
        };
        let defect = b.gram().max_abs_diff(&ComplexMatrix::identity(d));
        if defect > 1e-12 {
            return Err(Error::NotNormalized {
                what: format!("basis '{}'", b.label),
                residual: defect,
            });
        }
        Ok(b)
    }

    /// Columns of a unitary matrix.
    pub fn from_unitary(label: impl Into<String>, u: &ComplexMatrix) -> Result<Self> {
        Self::new(label, (0..u.cols()).map(|c| u.col(c)).collect())
    }

    pub fn computational(d: usize) -> Self {
        let vectors = (0..d)
            .map(|z| (0..d).map(|k| if k == z { ONE } else { ZERO }).collect())
            .collect();
        Self {
            label: format!("Z{d}"),
            vectors,
        }
    }

    /// `φ_x = d^{-1/2} Σ_z ω^{xz} θ_z`, `ω = exp(2πi/d)`.
    pub fn fourier(d: usize) -> Self {
        let norm = 1.0 / (d as f64).sqrt();
        let vectors = (0..d)
            .map(|x| {
                (0..d)
                    .map(|z| C64::from_polar(norm, 2.0 * PI * ((x * z) % d) as f64 / d as f64))
                    .collect()
            })
            .collect();
        Self {
            label: format!("X{d}"),
            vectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vector(&self, k: usize) -> &[C64] {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn projector(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::projector(&self.vectors[k])
    }

    /// Matrix whose columns are the basis vectors.
    pub fn unitary(&self) -> ComplexMatrix {
        let d = self.dim();
        ComplexMatrix::from_fn(d, d, |r, c| self.vectors[c][r])
    }

    pub fn gram(&self) -> ComplexMatrix {
        let d = self.dim();
        ComplexMatrix::from_fn(d, d, |r, c| inner(&self.vectors[r], &self.vectors[c]))
    }

    /// `|<self_x|other_z>|^2` indexed `[x][z]`.
    pub fn overlaps(&self, other: &Basis) -> Vec<Vec<f64>> {
        self.vectors
            .iter()
            .map(|u| other.vectors.iter().map(|v| inner(u, v).norm_sqr()).collect())
            .collect()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// `<u|v>`.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// The pair (θ, φ): computational basis and its Fourier conjugate.
pub fn conjugate_basis(d: usize) -> Result<(Basis, Basis)> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "conjugate bases need d >= 2, got {d}"
        )));
    }
    Ok((Basis::computational(d), Basis::fourier(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_fourier_is_hadamard() {
        let (_, phi) = conjugate_basis(2).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((phi.vector(0)[0] - C64::new(h, 0.0)).norm() < 1e-15);
        assert!((phi.vector(0)[1] - C64::new(h, 0.0)).norm() < 1e-15);
        assert!((phi.vector(1)[1] - C64::new(-h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn qutrit_overlaps_are_flat() {
        let (theta, phi) = conjugate_basis(3).unwrap();
        for row in phi.overlaps(&theta) {
            for o in row {
                assert!((o - 1.0 / 3.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ququart_fourier_orthonormal() {
        let (_, phi) = conjugate_basis(4).unwrap();
        assert!(phi.gram().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn rejects_non_orthonormal() {
        let v = vec![vec![ONE, ZERO], vec![ONE, ONE]];
        assert!(Basis::new("bad", v).is_err());
        assert!(conjugate_basis(1).is_err());
    }
}
