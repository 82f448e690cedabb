//! Error, disturbance and distinguishability measures as semidefinite programs.

pub mod distance;
pub mod radius;
pub mod recovery;
pub mod template;

pub use distance::{diamond_distance, diamond_distance_with, unentangled_distinguishability};
pub use radius::{constant_radius, constant_radius_with, radius_of_states};
pub use recovery::{
    best_measurement_error, best_measurement_error_with, epsilon, epsilon_with, eta, eta_hat,
    eta_hat_with, eta_tilde, eta_tilde_with, eta_with, nu, nu_with,
};
pub use template::MeasureResult;

use crate::channels::basis::Basis;
use crate::channels::constructions::ideal_measurement;
use crate::error::{Error, Result};
use crate::numerics::tolerance::Tolerances;

/// Complementarity of two bases: the disturbances `(c_M, c_P, ĉ_P)` caused
/// on `z` by the ideal `x` measurement.
#[derive(Debug, Clone)]
pub struct Complementarity {
    pub c_m: MeasureResult,
    pub c_p: MeasureResult,
    pub c_p_hat: MeasureResult,
}

pub fn complementarity(x: &Basis, z: &Basis) -> Result<Complementarity> {
    complementarity_with(x, z, &Tolerances::DEFAULT)
}

pub fn complementarity_with(x: &Basis, z: &Basis, tol: &Tolerances) -> Result<Complementarity> {
    if x.dim() != z.dim() {
        return Err(Error::Dimension(format!(
            "bases of dimension {} and {}",
            x.dim(),
            z.dim()
        )));
    }
    let qx = ideal_measurement(x, false);
    Ok(Complementarity {
        c_m: nu_with(&qx, z, tol)?,
        c_p: eta_with(&qx, z, tol)?,
        c_p_hat: eta_hat_with(&qx, z, tol)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::basis::conjugate_basis;
    use crate::channels::choi::{ChoiOperator, Device, Instrument};
    use crate::channels::constructions::mz_apparatus;
    use crate::numerics::matrix::ComplexMatrix;
    use std::f64::consts::PI;

    const THETAS: [f64; 5] = [0.0, PI / 6.0, PI / 4.0, PI / 3.0, PI / 2.0];

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn mz_error_closed_form() {
        let (_, x) = conjugate_basis(2).unwrap();
        for th in THETAS {
            let r = epsilon(&mz_apparatus(th).unwrap(), &x).unwrap();
            close(r.value, 0.5 * (1.0 - th.cos()), 1e-6);
            assert!(r.gap <= 1e-6);
        }
    }

    #[test]
    fn mz_error_at_small_angles() {
        // optimum sits near the solver tolerance
        let (_, x) = conjugate_basis(2).unwrap();
        for th in [1e-2, 1e-3, 2.76e-4, 1e-5] {
            let r = epsilon(&mz_apparatus(th).unwrap(), &x).unwrap();
            close(r.value, 0.5 * (1.0 - th.cos()), 1e-6);
        }
    }

    #[test]
    fn mz_disturbances_closed_form() {
        let (z, _) = conjugate_basis(2).unwrap();
        for th in THETAS {
            let e = mz_apparatus(th).unwrap();
            let want = 0.5 * (1.0 - th.sin());
            close(nu(&e, &z).unwrap().value, want, 1e-6);
            close(eta(&e, &z).unwrap().value, want, 1e-6);
            close(eta_hat(&e, &z).unwrap().value, want, 1e-6);
            close(eta_tilde(&e, &z).unwrap().value, want, 1e-6);
        }
    }

    #[test]
    fn identity_instrument_is_undisturbing() {
        let (z, x) = conjugate_basis(3).unwrap();
        let id = ChoiOperator::identity(3).as_instrument();
        for b in [&z, &x] {
            close(nu(&id, b).unwrap().value, 0.0, 1e-7);
            close(eta(&id, b).unwrap().value, 0.0, 1e-7);
        }
        let qx = ideal_measurement(&x, true);
        close(epsilon(&qx, &x).unwrap().value, 0.0, 1e-7);
    }

    #[test]
    fn qubit_complementarity() {
        let (z, x) = conjugate_basis(2).unwrap();
        let c = complementarity(&x, &z).unwrap();
        for v in [&c.c_m, &c.c_p, &c.c_p_hat] {
            close(v.value, 0.5, 1e-6);
        }
        let same = complementarity(&z, &z).unwrap();
        for v in [&same.c_m, &same.c_p, &same.c_p_hat] {
            close(v.value, 0.0, 1e-7);
        }
    }

    #[test]
    fn diamond_of_equal_devices_vanishes() {
        let e = Device::from(mz_apparatus(0.4).unwrap());
        close(diamond_distance(&e, &e).unwrap().value, 0.0, 1e-7);
    }

    #[test]
    fn diamond_of_orthogonal_unitaries() {
        // identity vs Pauli X channel: perfectly distinguishable
        let x = crate::numerics::matrix::pauli_x();
        let a = Device::from(ChoiOperator::identity(2));
        let b = Device::from(ChoiOperator::from_kraus(2, 2, &[x]).unwrap());
        close(diamond_distance(&a, &b).unwrap().value, 1.0, 1e-6);
    }

    #[test]
    fn unentangled_identical_is_zero() {
        let (z, _) = conjugate_basis(2).unwrap();
        let q = ideal_measurement(&z, false);
        close(unentangled_distinguishability(&q, &q).unwrap(), 0.0, 1e-15);
    }

    #[test]
    fn radius_of_orthogonal_pure_states() {
        let s = [ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)];
        let r = radius_of_states(&s, &Tolerances::DEFAULT).unwrap();
        close(r.value, 0.5, 1e-6);
    }

    #[test]
    fn constant_channel_is_blind() {
        let (z, x) = conjugate_basis(2).unwrap();
        let c = ChoiOperator::constant(2, &ComplexMatrix::unit(2, 0, 0)).unwrap();
        close(best_measurement_error(&c, &x).unwrap().value, 0.5, 1e-6);
        let _ = z;
        let id = ChoiOperator::identity(2);
        close(best_measurement_error(&id, &x).unwrap().value, 0.0, 1e-7);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let (z3, _) = conjugate_basis(3).unwrap();
        let e: Instrument = mz_apparatus(0.1).unwrap();
        assert!(matches!(epsilon(&e, &z3), Err(Error::Dimension(_))));
    }
}
