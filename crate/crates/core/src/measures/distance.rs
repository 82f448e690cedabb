//! Distinguishability of devices with and without entangled inputs.

use crate::channels::choi::{Device, Instrument};
use crate::error::{Error, Result};
use crate::measures::template::{MeasureResult, Target, Template};
use crate::numerics::eig::operator_norm;
use crate::numerics::matrix::ComplexMatrix;
use crate::numerics::tolerance::Tolerances;

/// Enumeration limit for [`unentangled_distinguishability`].
pub const MAX_SIGN_OUTCOMES: usize = 20;

/// `½‖E₁ − E₂‖_cb` for two channels or two instruments of the same shape.
pub fn diamond_distance(e1: &Device, e2: &Device) -> Result<MeasureResult> {
    diamond_distance_with(e1, e2, &Tolerances::DEFAULT)
}

pub fn diamond_distance_with(e1: &Device, e2: &Device, tol: &Tolerances) -> Result<MeasureResult> {
    let (a, b) = (e1.to_instrument(), e2.to_instrument());
    if a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out() || a.n_outcomes() != b.n_outcomes() {
        return Err(Error::Dimension(format!(
            "cannot compare devices {}->{}x{} and {}->{}x{}",
            a.dim_in(),
            a.n_outcomes(),
            a.dim_out(),
            b.dim_in(),
            b.n_outcomes(),
            b.dim_out()
        )));
    }
    let targets = a
        .blocks()
        .iter()
        .zip(b.blocks())
        .map(|(p, q)| Target { dim_out: a.dim_out(), q: p.clone(), offset: Some(q.clone()) })
        .collect();
    Template {
        formulation: "diamond".into(),
        dim_in: a.dim_in(),
        targets,
        recoveries: vec![],
        couplings: vec![],
        normalizations: vec![],
    }
    .solve(tol)
}

/// Largest distinguishability of two measurements without entangled inputs:
/// `½ max_s ‖Σ_k s_k (Λ¹_k − Λ²_k)‖_∞` over sign vectors `s`.
pub fn unentangled_distinguishability(m1: &Instrument, m2: &Instrument) -> Result<f64> {
    let n = m1.n_outcomes();
    if n != m2.n_outcomes() {
        return Err(Error::Dimension(format!(
            "outcome counts differ: {n} vs {}",
            m2.n_outcomes()
        )));
    }
    if m1.dim_in() != m2.dim_in() {
        return Err(Error::Dimension("input dimensions differ".into()));
    }
    if n > MAX_SIGN_OUTCOMES {
        return Err(Error::InvalidArgument(format!(
            "{n} outcomes exceed the enumeration limit {MAX_SIGN_OUTCOMES}"
        )));
    }
    let diffs: Vec<ComplexMatrix> = (0..n)
        .map(|k| &m1.povm_element(k) - &m2.povm_element(k))
        .collect();
    let mut best = 0.0f64;
    // s and -s give the same norm, so fix the sign of the last outcome.
    let free = n.saturating_sub(1);
    for mask in 0u32..(1u32 << free) {
        let mut sum = diffs[n - 1].clone();
        for (k, t) in diffs.iter().take(free).enumerate() {
            if mask >> k & 1 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
        }
        best = best.max(operator_norm(&sum));
    }
    Ok(0.5 * best)
}
