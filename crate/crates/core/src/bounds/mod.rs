//! Closed-form complementarity bounds and checks of the uncertainty relations.

pub mod gaussian;

pub use gaussian::{
    gaussian_bound, gaussian_overlap, optimal_sigma_f, uglydiff, GaussianKind, GaussianParams,
};

use crate::channels::basis::Basis;
use crate::channels::choi::{ChoiOperator, Instrument};
use crate::channels::constructions::ideal_measurement;
use crate::channels::stinespring::stinespring;
use crate::error::{Error, Result};
use crate::measures::{self, radius_of_states};
use crate::numerics::tolerance::Tolerances;

fn same_dim(x: &Basis, z: &Basis) -> Result<usize> {
    if x.dim() != z.dim() {
        return Err(Error::Dimension(format!(
            "bases of dimension {} and {}",
            x.dim(),
            z.dim()
        )));
    }
    Ok(x.dim())
}

/// `1 - (1/d) Σ_x max_z |<φ_x|θ_z>|²`, a lower bound on `c_M` and `c_P`.
pub fn overlap_bound(x: &Basis, z: &Basis) -> Result<f64> {
    let d = same_dim(x, z)?;
    let ov = x.overlaps(z);
    let s: f64 = ov
        .iter()
        .map(|row| row.iter().copied().fold(0.0, f64::max))
        .sum();
    Ok(1.0 - s / d as f64)
}

/// Choice of the constant output distribution in [`demerit_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemeritVariant {
    /// Uniform distribution.
    Uniform,
    /// The `x` distribution of the best single `z` input.
    RowP,
}

/// Lower bound on `ĉ_P` from a fixed constant channel.
pub fn demerit_bound(x: &Basis, z: &Basis, variant: DemeritVariant) -> Result<f64> {
    let d = same_dim(x, z)?;
    let ov = x.overlaps(z);
    let shift = (d as f64 - 1.0) / d as f64;
    // distance of the x distribution for input z from `p`
    let dist = |zz: usize, p: &dyn Fn(usize) -> f64| -> f64 {
        0.5 * (0..d).map(|xi| (p(xi) - ov[xi][zz]).abs()).sum::<f64>()
    };
    let worst = |p: &dyn Fn(usize) -> f64| (0..d).map(|zz| dist(zz, p)).fold(0.0, f64::max);
    let r = match variant {
        DemeritVariant::Uniform => worst(&|_| 1.0 / d as f64),
        DemeritVariant::RowP => (0..d)
            .map(|zp| worst(&|xi| ov[xi][zp]))
            .fold(f64::INFINITY, f64::min),
    };
    Ok(shift - r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `lhs >= rhs`
    AtLeast,
    /// `lhs <= rhs`
    AtMost,
}

/// Numerical check of one inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    /// Margin by which the inequality holds (negative when violated).
    pub slack: f64,
    pub satisfied: bool,
    pub components: Vec<(String, f64)>,
}

impl BoundReport {
    pub fn new(
        name: impl Into<String>,
        relation: Relation,
        lhs: f64,
        rhs: f64,
        components: Vec<(String, f64)>,
        tol: f64,
    ) -> Self {
        let slack = match relation {
            Relation::AtLeast => lhs - rhs,
            Relation::AtMost => rhs - lhs,
        };
        Self {
            name: name.into(),
            relation,
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tol,
            components,
        }
    }

    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

fn root2(eps: f64) -> f64 {
    (2.0 * eps.max(0.0)).sqrt()
}

fn c(name: &str, v: f64) -> (String, f64) {
    (name.to_string(), v)
}

/// Error versus measurement disturbance:
/// `√(2ε_X) + ν_Z ≥ c_M(X,Z)` and `ε_X + √(2ν_Z) ≥ c_M(Z,X)`.
pub fn check_theorem1(e: &Instrument, x: &Basis, z: &Basis) -> Result<(BoundReport, BoundReport)> {
    check_theorem1_with(e, x, z, &Tolerances::DEFAULT)
}

pub fn check_theorem1_with(
    e: &Instrument,
    x: &Basis,
    z: &Basis,
    tol: &Tolerances,
) -> Result<(BoundReport, BoundReport)> {
    same_dim(x, z)?;
    let eps = measures::epsilon_with(e, x, tol)?;
    let nu = measures::nu_with(e, z, tol)?;
    let c_xz = measures::nu_with(&ideal_measurement(x, false), z, tol)?;
    let c_zx = measures::nu_with(&ideal_measurement(z, false), x, tol)?;
    let first = BoundReport::new(
        "theorem1.a",
        Relation::AtLeast,
        root2(eps.value) + nu.value,
        c_xz.value,
        vec![
            c("epsilon", eps.value),
            c("nu", nu.value),
            c("c_m", c_xz.value),
            c("c_m_closed_form", overlap_bound(x, z)?),
        ],
        tol.bound_slack,
    );
    let second = BoundReport::new(
        "theorem1.b",
        Relation::AtLeast,
        eps.value + root2(nu.value),
        c_zx.value,
        vec![
            c("epsilon", eps.value),
            c("nu", nu.value),
            c("c_m", c_zx.value),
            c("c_m_closed_form", overlap_bound(z, x)?),
        ],
        tol.bound_slack,
    );
    Ok((first, second))
}

/// Error versus preparation disturbance:
/// `√(2ε_X) + η_Z ≥ c_P(X,Z)` and `√(2ε_X) + η̂_Z ≥ ĉ_P(X,Z)`.
pub fn check_theorem2(e: &Instrument, x: &Basis, z: &Basis) -> Result<(BoundReport, BoundReport)> {
    check_theorem2_with(e, x, z, &Tolerances::DEFAULT)
}

pub fn check_theorem2_with(
    e: &Instrument,
    x: &Basis,
    z: &Basis,
    tol: &Tolerances,
) -> Result<(BoundReport, BoundReport)> {
    same_dim(x, z)?;
    let eps = measures::epsilon_with(e, x, tol)?;
    let eta = measures::eta_with(e, z, tol)?;
    let eta_hat = measures::eta_hat_with(e, z, tol)?;
    let qx = ideal_measurement(x, false);
    let c_p = measures::eta_with(&qx, z, tol)?;
    let c_p_hat = measures::eta_hat_with(&qx, z, tol)?;
    let first = BoundReport::new(
        "theorem2.a",
        Relation::AtLeast,
        root2(eps.value) + eta.value,
        c_p.value,
        vec![
            c("epsilon", eps.value),
            c("eta", eta.value),
            c("c_p", c_p.value),
            c("c_p_closed_form", overlap_bound(x, z)?),
        ],
        tol.bound_slack,
    );
    let second = BoundReport::new(
        "theorem2.b",
        Relation::AtLeast,
        root2(eps.value) + eta_hat.value,
        c_p_hat.value,
        vec![
            c("epsilon", eps.value),
            c("eta_hat", eta_hat.value),
            c("c_p_hat", c_p_hat.value),
            c("c_p_hat_closed_form", demerit_bound(x, z, DemeritVariant::Uniform)?),
        ],
        tol.bound_slack,
    );
    Ok((first, second))
}

/// If `n` lets `x` be measured with error `ε`, the complement on `z` inputs
/// is within `√(2ε) + (d-1)/d - ĉ_P(X,Z)` of a constant channel.
pub fn check_corollary1(n: &ChoiOperator, x: &Basis, z: &Basis) -> Result<BoundReport> {
    check_corollary1_with(n, x, z, &Tolerances::DEFAULT)
}

pub fn check_corollary1_with(
    n: &ChoiOperator,
    x: &Basis,
    z: &Basis,
    tol: &Tolerances,
) -> Result<BoundReport> {
    let d = same_dim(x, z)?;
    if n.dim_in() != d {
        return Err(Error::Dimension(format!(
            "channel input dimension {} does not match basis dimension {d}",
            n.dim_in()
        )));
    }
    let eps = measures::best_measurement_error_with(n, x, tol)?;
    let (_, complement) = stinespring(n)?;
    let outputs = (0..d)
        .map(|k| complement.apply(&z.projector(k)))
        .collect::<Result<Vec<_>>>()?;
    let radius = radius_of_states(&outputs, tol)?;
    let c_p_hat = measures::eta_hat_with(&ideal_measurement(x, false), z, tol)?;
    let shift = (d as f64 - 1.0) / d as f64;
    Ok(BoundReport::new(
        "corollary1",
        Relation::AtMost,
        radius.value,
        root2(eps.value) + shift - c_p_hat.value,
        vec![
            c("epsilon", eps.value),
            c("complement_radius", radius.value),
            c("c_p_hat", c_p_hat.value),
        ],
        tol.bound_slack,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::basis::conjugate_basis;
    use crate::channels::constructions::mz_apparatus;
    use crate::numerics::matrix::C64;

    fn shared_two(d: usize) -> (Basis, Basis) {
        // computational basis vs. a basis sharing |0>, |1> and Fourier on the rest
        let z = Basis::computational(d);
        let m = d - 2;
        let w = std::f64::consts::TAU / m as f64;
        let mut v = vec![];
        for k in 0..2 {
            let mut e = vec![C64::new(0.0, 0.0); d];
            e[k] = C64::new(1.0, 0.0);
            v.push(e);
        }
        for j in 0..m {
            let mut e = vec![C64::new(0.0, 0.0); d];
            for k in 0..m {
                e[k + 2] = C64::from_polar(1.0 / (m as f64).sqrt(), w * (j * k) as f64);
            }
            v.push(e);
        }
        (Basis::new("shared", v).unwrap(), z)
    }

    #[test]
    fn conjugate_bounds() {
        for d in [2, 3, 5] {
            let (z, x) = conjugate_basis(d).unwrap();
            let want = (d as f64 - 1.0) / d as f64;
            assert!((overlap_bound(&x, &z).unwrap() - want).abs() < 1e-12);
            for v in [DemeritVariant::Uniform, DemeritVariant::RowP] {
                assert!((demerit_bound(&x, &z, v).unwrap() - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn identical_bases_give_zero() {
        let (z, _) = conjugate_basis(3).unwrap();
        assert!(overlap_bound(&z, &z).unwrap().abs() < 1e-12);
    }

    #[test]
    fn shared_eigenvectors() {
        let (x, z) = shared_two(5);
        assert!(overlap_bound(&x, &z).unwrap() >= 2.0 / 5.0 - 1e-12);
        assert!(demerit_bound(&x, &z, DemeritVariant::Uniform).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mz_satisfies_both_theorems() {
        let (z, x) = conjugate_basis(2).unwrap();
        let e = mz_apparatus(0.7).unwrap();
        let (a, b) = check_theorem1(&e, &x, &z).unwrap();
        let (p, q) = check_theorem2(&e, &x, &z).unwrap();
        for r in [a, b, p, q] {
            assert!(r.satisfied, "{r:?}");
        }
    }

    #[test]
    fn corollary_for_identity() {
        let (z, x) = conjugate_basis(2).unwrap();
        let r = check_corollary1(&ChoiOperator::identity(2), &x, &z).unwrap();
        assert!(r.lhs.abs() < 1e-6 && r.satisfied, "{r:?}");
    }

    #[test]
    fn report_slack_sign() {
        let r = BoundReport::new("t", Relation::AtMost, 1.0, 0.5, vec![], 1e-6);
        assert!(!r.satisfied && (r.slack + 0.5).abs() < 1e-15);
    }
}
