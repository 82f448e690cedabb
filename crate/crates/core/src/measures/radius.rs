//! Distance from a classical-input channel to the nearest constant channel.

use crate::channels::choi::ChoiOperator;
use crate::error::{Error, Result};
use crate::measures::template::MeasureResult;
use crate::numerics::matrix::ComplexMatrix;
use crate::numerics::tolerance::Tolerances;
use crate::sdp::model::{Expr, HermMap, LmiModel, PrimalModel};
use crate::sdp::problem::SolveStatus;

/// Chebyshev radius `min_σ max_z ½‖σ − f(|z><z|)‖₁` of the outputs of `f`
/// on computational-basis inputs.
pub fn constant_radius(f: &ChoiOperator) -> Result<MeasureResult> {
    constant_radius_with(f, &Tolerances::DEFAULT)
}

pub fn constant_radius_with(f: &ChoiOperator, tol: &Tolerances) -> Result<MeasureResult> {
    let outputs = (0..f.dim_in())
        .map(|z| f.apply(&ComplexMatrix::unit(f.dim_in(), z, z)))
        .collect::<Result<Vec<_>>>()?;
    radius_of_states(&outputs, tol)
}

/// Chebyshev radius of a finite set of density matrices in trace distance.
pub fn radius_of_states(states: &[ComplexMatrix], tol: &Tolerances) -> Result<MeasureResult> {
    let d = states
        .first()
        .ok_or_else(|| Error::InvalidArgument("no states given".into()))?
        .rows();
    if states.iter().any(|s| s.rows() != d || s.cols() != d) {
        return Err(Error::Dimension("states must share one dimension".into()));
    }
    let one = ComplexMatrix::identity(1);
    let id = ComplexMatrix::identity(d);

    // min t  s.t.  N_z ⪰ σ − ρ_z,  N_z ⪰ 0,  Tr N_z ≤ t,  Tr σ = 1,  σ ⪰ 0
    let mut lo = PrimalModel::new();
    let t = lo.nonneg();
    lo.objective_term(t, &one);
    let sigma = lo.psd(d);
    lo.equal(
        Expr::new(1)
            .term(sigma, HermMap::functional(&id))
            .plus_constant(&one.scale_real(-1.0)),
    );
    for rho in states {
        let nz = lo.psd(d);
        lo.psd_constraint(
            Expr::new(d)
                .term(nz, HermMap::identity(d))
                .term(sigma, HermMap::identity(d).scaled(-1.0))
                .plus_constant(rho),
        );
        lo.psd_constraint(
            Expr::new(1)
                .term(t, HermMap::identity(1))
                .term(nz, HermMap::functional(&id).scaled(-1.0)),
        );
    }
    let lo_sol = lo.solve(tol.sdp)?;

    // max μ − Σ_z <ρ_z, Y_z>  s.t.  0 ⪯ Y_z ⪯ w_z 1,  Σ w_z ≤ 1,  Σ Y_z ⪰ μ 1
    let mut hi = LmiModel::new();
    let mu = hi.free(1);
    hi.objective_term(mu, &one);
    let mut budget = Expr::new(1).plus_constant(&one);
    let mut total = Expr::new(d).term(mu, HermMap::scalar_times(&id).scaled(-1.0));
    for rho in states {
        let y = hi.free(d);
        let w = hi.free(1);
        hi.objective_term(y, &rho.scale_real(-1.0));
        hi.lmi(Expr::new(d).term(y, HermMap::identity(d)));
        hi.lmi(
            Expr::new(d)
                .term(w, HermMap::scalar_times(&id))
                .term(y, HermMap::identity(d).scaled(-1.0)),
        );
        budget = budget.term(w, HermMap::identity(1).scaled(-1.0));
        total = total.term(y, HermMap::identity(d));
    }
    hi.lmi(budget);
    hi.lmi(total);
    let hi_sol = hi.solve(tol.sdp)?;

    for (form, s) in [("min", &lo_sol), ("max", &hi_sol)] {
        if s.status != SolveStatus::Optimal {
            return Err(Error::Solver {
                formulation: format!("constant_radius ({form} form)"),
                status: s.status.to_string(),
                gap: s.solver_gap,
            });
        }
    }
    let gap = (lo_sol.value - hi_sol.value).abs();
    if gap > tol.duality_gap {
        return Err(Error::Solver {
            formulation: "constant_radius".into(),
            status: "forms disagree".into(),
            gap,
        });
    }
    Ok(MeasureResult {
        value: lo_sol.value,
        min_value: lo_sol.value,
        max_value: hi_sol.value,
        gap,
        formulation: "constant_radius".into(),
        optimizer: vec![("sigma".into(), lo_sol.value_of(sigma).clone())],
        iterations: lo_sol.iterations + hi_sol.iterations,
        status: SolveStatus::Optimal,
    })
}
