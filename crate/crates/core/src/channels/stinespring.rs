use crate::channels::choi::{kraus_choi, ChoiOperator};
use crate::error::{Error, Result};
use crate::numerics::eig::{hermitian_eig, isometry_defect};
use crate::numerics::matrix::{ComplexMatrix, ZERO};
use crate::numerics::tolerance::Tolerances;

/// Isometry `V: A -> B ⊗ E`, rows indexed `(b, k)` with the output factor first.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    matrix: ComplexMatrix,
    dim_in: usize,
    dim_out: usize,
    dim_env: usize,
}

impl Isometry {
    pub fn new(matrix: ComplexMatrix, dim_out: usize, dim_env: usize) -> Result<Self> {
        let dim_in = matrix.cols();
        if matrix.rows() != dim_out * dim_env {
            return Err(Error::Dimension(format!(
                "isometry has {} rows, expected {dim_out}x{dim_env}",
                matrix.rows()
            )));
        }
        let defect = isometry_defect(&matrix);
        if defect > Tolerances::DEFAULT.normalization {
            return Err(Error::NotNormalized {
                what: "isometry V^dag V".into(),
                residual: defect,
            });
        }
        Ok(Self {
            matrix,
            dim_in,
            dim_out,
            dim_env,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn dim_env(&self) -> usize {
        self.dim_env
    }

    pub fn defect(&self) -> f64 {
        isometry_defect(&self.matrix)
    }

    /// Kraus operators `K_k[b, i] = V[(b, k), i]`.
    pub fn kraus(&self) -> Vec<ComplexMatrix> {
        (0..self.dim_env)
            .map(|k| {
                ComplexMatrix::from_fn(self.dim_out, self.dim_in, |b, i| {
                    self.matrix[(b * self.dim_env + k, i)]
                })
            })
            .collect()
    }

    /// Kraus operators of the complementary channel, one per output index `b`.
    pub fn complement_kraus(&self) -> Vec<ComplexMatrix> {
        (0..self.dim_out)
            .map(|b| {
                ComplexMatrix::from_fn(self.dim_env, self.dim_in, |k, i| {
                    self.matrix[(b * self.dim_env + k, i)]
                })
            })
            .collect()
    }

    pub fn channel(&self) -> ChoiOperator {
        let m = kraus_choi(self.dim_in, self.dim_out, &self.kraus()).expect("shapes agree");
        ChoiOperator::unchecked(self.dim_in, self.dim_out, m).expect("shapes agree")
    }

    pub fn complement(&self) -> ChoiOperator {
        let m = kraus_choi(self.dim_in, self.dim_env, &self.complement_kraus()).expect("shapes agree");
        ChoiOperator::unchecked(self.dim_in, self.dim_env, m).expect("shapes agree")
    }

    /// Embed the environment into a larger one, padding with zero rows.
    pub fn pad_environment(&self, dim_env: usize) -> Result<Self> {
        if dim_env < self.dim_env {
            return Err(Error::Dimension(format!(
                "cannot shrink environment from {} to {dim_env}",
                self.dim_env
            )));
        }
        let mut m = ComplexMatrix::zeros(self.dim_out * dim_env, self.dim_in);
        for b in 0..self.dim_out {
            for k in 0..self.dim_env {
                for i in 0..self.dim_in {
                    m[(b * dim_env + k, i)] = self.matrix[(b * self.dim_env + k, i)];
                }
            }
        }
        Ok(Self {
            matrix: m,
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            dim_env,
        })
    }
}

/// Canonical Kraus operators from the spectral decomposition of the Choi matrix.
pub fn kraus_operators(e: &ChoiOperator) -> Result<Vec<ComplexMatrix>> {
    let clip = Tolerances::DEFAULT.psd_clip;
    let eig = hermitian_eig(e.matrix())?;
    if eig.min() < -clip {
        return Err(Error::NotPositive {
            what: "Choi operator".into(),
            min_eigenvalue: eig.min(),
        });
    }
    let (din, dout) = (e.dim_in(), e.dim_out());
    let keep = 1e-12 * eig.max().max(1.0);
    let mut out = Vec::new();
    for k in (0..eig.values.len()).rev() {
        let lambda = eig.values[k];
        if lambda <= keep {
            continue;
        }
        let s = lambda.sqrt();
        out.push(ComplexMatrix::from_fn(dout, din, |b, i| {
            eig.vectors[(b * din + i, k)] * s
        }));
    }
    if out.is_empty() {
        out.push(ComplexMatrix::zeros(dout, din));
    }
    Ok(out)
}

/// Stinespring dilation and complementary channel.
pub fn stinespring(e: &ChoiOperator) -> Result<(Isometry, ChoiOperator)> {
    let kraus = kraus_operators(e)?;
    let (din, dout, denv) = (e.dim_in(), e.dim_out(), kraus.len());
    let mut v = ComplexMatrix::zeros(dout * denv, din);
    for (k, kk) in kraus.iter().enumerate() {
        for b in 0..dout {
            for i in 0..din {
                v[(b * denv + k, i)] = kk[(b, i)];
            }
        }
    }
    let iso = Isometry::new(v, dout, denv)?;
    let comp = iso.complement();
    Ok((iso, comp))
}

/// Unused-index check for padded dilations.
pub fn environment_support(iso: &Isometry) -> Vec<bool> {
    (0..iso.dim_env)
        .map(|k| {
            (0..iso.dim_out).any(|b| (0..iso.dim_in).any(|i| iso.matrix[(b * iso.dim_env + k, i)] != ZERO))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::basis::conjugate_basis;
    use crate::channels::constructions::pinching;

    #[test]
    fn unitary_channel_has_trivial_environment() {
        let h = 1.0 / 2f64.sqrt();
        let u = ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap();
        let ch = ChoiOperator::from_kraus(2, 2, &[u]).unwrap();
        let (iso, comp) = stinespring(&ch).unwrap();
        assert_eq!(iso.dim_env(), 1);
        assert!(iso.defect() < 1e-10);
        assert!(comp.matrix().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn dilation_reproduces_channel() {
        let (theta, _) = conjugate_basis(3).unwrap();
        let pin = pinching(&theta);
        let (iso, _) = stinespring(&pin).unwrap();
        assert!(iso.channel().matrix().max_abs_diff(pin.matrix()) < 1e-12);
        let padded = iso.pad_environment(9).unwrap();
        assert!(padded.defect() < 1e-10);
        assert!(padded.channel().matrix().max_abs_diff(pin.matrix()) < 1e-12);
        assert_eq!(environment_support(&padded).iter().filter(|&&s| s).count(), 3);
    }

    #[test]
    fn pinching_complement_is_dephased() {
        let (theta, _) = conjugate_basis(2).unwrap();
        let (_, comp) = stinespring(&pinching(&theta)).unwrap();
        // outputs on the basis states are orthogonal pure states
        let a = comp.apply(&theta.projector(0)).unwrap();
        let b = comp.apply(&theta.projector(1)).unwrap();
        assert!((&a * &b).max_abs() < 1e-12);
        assert!(((&a * &a).trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_choi() {
        let bad = ChoiOperator::unchecked(1, 2, ComplexMatrix::diag_real(&[1.5, -0.5])).unwrap();
        assert!(matches!(stinespring(&bad), Err(Error::NotPositive { .. })));
    }
}
