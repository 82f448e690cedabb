//! Error and disturbance measures defined through a best recovery map.

use crate::channels::basis::Basis;
use crate::channels::choi::{link, ChoiOperator, Instrument};
use crate::channels::constructions::{ideal_measurement, ideal_preparation, pinching};
use crate::error::{Error, Result};
use crate::measures::template::{MeasureResult, Normalization, Recovery, Target, Template};
use crate::numerics::matrix::ComplexMatrix;
use crate::numerics::tolerance::Tolerances;
use crate::sdp::model::HermMap;

fn check_dim(what: &str, dev_in: usize, basis: &Basis) -> Result<()> {
    if dev_in != basis.dim() {
        return Err(Error::Dimension(format!(
            "{what}: device input dimension {dev_in} does not match basis dimension {}",
            basis.dim()
        )));
    }
    Ok(())
}

/// Blocks of the ideal measurement-only device, one `1 ⊗ A` block per letter.
fn measurement_targets(b: &Basis) -> Vec<Target> {
    ideal_measurement(b, false)
        .blocks()
        .iter()
        .map(|q| Target { dim_out: 1, q: q.clone(), offset: None })
        .collect()
}

fn channel_normalization(dim_a: usize, dim_b: usize) -> HermMap {
    HermMap::from_fn(dim_a * dim_b, dim_b, |r| {
        r.partial_trace(&[dim_a, dim_b], &[1]).expect("shape fixed")
    })
}

/// Error `ε_X(E)`: how well the outcomes of `e`, relabelled by the best
/// stochastic map `y -> x`, simulate the ideal `x` measurement.
pub fn epsilon(e: &Instrument, x: &Basis) -> Result<MeasureResult> {
    epsilon_with(e, x, &Tolerances::DEFAULT)
}

pub fn epsilon_with(e: &Instrument, x: &Basis, tol: &Tolerances) -> Result<MeasureResult> {
    check_dim("epsilon", e.dim_in(), x)?;
    let d = x.dim();
    let n = e.n_outcomes();
    let povm: Vec<ComplexMatrix> = (0..n)
        .map(|y| {
            e.block(y)
                .partial_trace(&[e.dim_out(), d], &[1])
                .expect("block shape checked")
        })
        .collect();
    let mut recoveries = Vec::new();
    let mut couplings = Vec::new();
    for xi in 0..d {
        for (y, p) in povm.iter().enumerate() {
            couplings.push((xi, recoveries.len(), HermMap::scalar_times(p)));
            recoveries.push(Recovery { name: format!("R[{xi},{y}]"), size: 1 });
        }
    }
    let normalizations = (0..n)
        .map(|y| Normalization {
            terms: (0..d).map(|xi| (xi * n + y, HermMap::identity(1))).collect(),
            rhs: ComplexMatrix::identity(1),
        })
        .collect();
    let t = Template {
        formulation: "epsilon".into(),
        dim_in: d,
        targets: measurement_targets(x),
        recoveries,
        couplings,
        normalizations,
    };
    let mut res = t.solve(tol)?;
    let r = ComplexMatrix::from_fn(d, n, |xi, y| {
        res.optimizer(&format!("R[{xi},{y}]")).expect("recovery present")[(0, 0)]
    });
    res.optimizer.retain(|(name, _)| !name.starts_with("R["));
    res.optimizer.insert(0, ("R".into(), r));
    Ok(res)
}

/// Measurement disturbance `ν_Z(E)`: the best recovery channel `(y, B) -> A`
/// followed by the ideal `z` measurement, compared with measuring `z` directly.
pub fn nu(e: &Instrument, z: &Basis) -> Result<MeasureResult> {
    nu_with(e, z, &Tolerances::DEFAULT)
}

pub fn nu_with(e: &Instrument, z: &Basis, tol: &Tolerances) -> Result<MeasureResult> {
    check_dim("nu", e.dim_in(), z)?;
    let d = z.dim();
    let db = e.dim_out();
    let targets = measurement_targets(z);
    let mut couplings = Vec::new();
    for (k, t) in targets.iter().enumerate() {
        for y in 0..e.n_outcomes() {
            let ey = e.block(y).clone();
            let qz = t.q.clone();
            let map = HermMap::from_fn(d * db, d, move |r| {
                link(&qz, 1, d, &link(r, d, db, &ey, d), d)
            });
            couplings.push((k, y, map));
        }
    }
    let t = Template {
        formulation: "nu".into(),
        dim_in: d,
        targets,
        recoveries: recovery_channels(e.n_outcomes(), d * db),
        couplings,
        normalizations: channel_normalizations(e.n_outcomes(), d, db),
    };
    t.solve(tol)
}

fn recovery_channels(n: usize, size: usize) -> Vec<Recovery> {
    (0..n)
        .map(|y| Recovery { name: format!("recovery[{y}]"), size })
        .collect()
}

fn channel_normalizations(n: usize, dim_a: usize, dim_b: usize) -> Vec<Normalization> {
    (0..n)
        .map(|y| Normalization {
            terms: vec![(y, channel_normalization(dim_a, dim_b))],
            rhs: ComplexMatrix::identity(dim_b),
        })
        .collect()
}

/// Preparation disturbance `η_Z(E)`: prepare `z`, apply `e`, recover the
/// state with the best channel `(y, B) -> A`, compare with the preparation.
pub fn eta(e: &Instrument, z: &Basis) -> Result<MeasureResult> {
    eta_with(e, z, &Tolerances::DEFAULT)
}

pub fn eta_with(e: &Instrument, z: &Basis, tol: &Tolerances) -> Result<MeasureResult> {
    check_dim("eta", e.dim_in(), z)?;
    let d = z.dim();
    let db = e.dim_out();
    let prep = ideal_preparation(z);
    let couplings = (0..e.n_outcomes())
        .map(|y| {
            let ep = link(e.block(y), db, d, prep.matrix(), d);
            let map = HermMap::from_fn(d * db, d * d, move |r| link(r, d, db, &ep, d));
            (0, y, map)
        })
        .collect();
    let t = Template {
        formulation: "eta".into(),
        dim_in: d,
        targets: vec![Target { dim_out: d, q: prep.matrix().clone(), offset: None }],
        recoveries: recovery_channels(e.n_outcomes(), d * db),
        couplings,
        normalizations: channel_normalizations(e.n_outcomes(), d, db),
    };
    t.solve(tol)
}

/// Demerit disturbance `η̂_Z(E)`: `(d-1)/d` minus the distance from
/// `e ∘ P_Z` to the nearest constant channel.
pub fn eta_hat(e: &Instrument, z: &Basis) -> Result<MeasureResult> {
    eta_hat_with(e, z, &Tolerances::DEFAULT)
}

pub fn eta_hat_with(e: &Instrument, z: &Basis, tol: &Tolerances) -> Result<MeasureResult> {
    check_dim("eta_hat", e.dim_in(), z)?;
    let prep = ideal_preparation(z);
    constant_distance(e, &prep, "eta_hat", tol)
}

/// [`eta_hat`] with the classical preparation replaced by the pinching in
/// `z`, so the input may be entangled. Agrees with [`eta_hat`].
pub fn eta_tilde(e: &Instrument, z: &Basis) -> Result<MeasureResult> {
    eta_tilde_with(e, z, &Tolerances::DEFAULT)
}

pub fn eta_tilde_with(e: &Instrument, z: &Basis, tol: &Tolerances) -> Result<MeasureResult> {
    check_dim("eta_tilde", e.dim_in(), z)?;
    constant_distance(e, &pinching(z), "eta_tilde", tol)
}

fn constant_distance(
    e: &Instrument,
    pre: &ChoiOperator,
    name: &str,
    tol: &Tolerances,
) -> Result<MeasureResult> {
    let d = pre.dim_in();
    let da = e.dim_in();
    let db = e.dim_out();
    let n = e.n_outcomes();
    let targets = (0..n)
        .map(|y| Target {
            dim_out: db,
            q: link(e.block(y), db, da, pre.matrix(), d),
            offset: None,
        })
        .collect();
    let id_in = ComplexMatrix::identity(d);
    let couplings = (0..n)
        .map(|y| {
            let id_in = id_in.clone();
            (y, y, HermMap::from_fn(db, db * d, move |s| s.kron(&id_in)))
        })
        .collect();
    let t = Template {
        formulation: name.into(),
        dim_in: d,
        targets,
        recoveries: (0..n)
            .map(|y| Recovery { name: format!("sigma[{y}]"), size: db })
            .collect(),
        couplings,
        normalizations: vec![Normalization {
            terms: (0..n)
                .map(|y| (y, HermMap::functional(&ComplexMatrix::identity(db))))
                .collect(),
            rhs: ComplexMatrix::identity(1),
        }],
    };
    let shift = (d as f64 - 1.0) / d as f64;
    Ok(t.solve(tol)?.complement_from(shift))
}

/// Smallest error `inf_Λ δ(Q_X, N ∘ Λ)` over measurements `Λ` on the output
/// of `n`.
pub fn best_measurement_error(n: &ChoiOperator, x: &Basis) -> Result<MeasureResult> {
    best_measurement_error_with(n, x, &Tolerances::DEFAULT)
}

pub fn best_measurement_error_with(
    n: &ChoiOperator,
    x: &Basis,
    tol: &Tolerances,
) -> Result<MeasureResult> {
    check_dim("best_measurement_error", n.dim_in(), x)?;
    let d = x.dim();
    let db = n.dim_out();
    let targets = measurement_targets(x);
    let couplings = (0..d)
        .map(|xi| {
            let c = n.matrix().clone();
            (xi, xi, HermMap::from_fn(db, d, move |m| link(m, 1, db, &c, d)))
        })
        .collect();
    let t = Template {
        formulation: "best_measurement_error".into(),
        dim_in: d,
        targets,
        recoveries: (0..d)
            .map(|xi| Recovery { name: format!("povm[{xi}]"), size: db })
            .collect(),
        couplings,
        normalizations: vec![Normalization {
            terms: (0..d).map(|xi| (xi, HermMap::identity(db))).collect(),
            rhs: ComplexMatrix::identity(db),
        }],
    };
    let mut res = t.solve(tol)?;
    // Recovery variables are Choi blocks; report the POVM elements themselves.
    for (name, m) in res.optimizer.iter_mut() {
        if name.starts_with("povm[") {
            *m = m.transpose();
        }
    }
    Ok(res)
}
