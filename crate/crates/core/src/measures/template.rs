//! Shared program for "distinguishability after the best recovery".
//!
//! Target blocks `Q_k` (on `out_k ⊗ in`, one per classical output letter) are
//! compared with model blocks `offset_k + Σ_j Φ_kj(R_j)`, where the PSD
//! recovery variables `R_j` obey `Σ_j Γ_ij(R_j) = G_i`. The distinguishability
//! `½‖Δ‖_cb` of the difference `Δ_k = Q_k - offset_k - Σ_j Φ_kj(R_j)` is
//! minimized over feasible recoveries.
//!
//! Min form:
//! ```text
//! min λ  s.t.  T_k ⪰ Δ_k,  T_k ⪰ 0,  λ 1 ⪰ Σ_k Tr_out T_k,  Γ(R) = G,  R ⪰ 0
//! ```
//! Max form:
//! ```text
//! max Σ_k <Q_k - offset_k, K_k> - Σ_i <G_i, L_i>
//! s.t. 0 ⪯ K_k ⪯ 1 ⊗ ρ,  Tr ρ <= 1,  Σ_i Γ_ij^*(L_i) ⪰ Σ_k Φ_kj^*(K_k)
//! ```

use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;
use crate::numerics::tolerance::Tolerances;
use crate::sdp::model::{Expr, HermMap, LmiModel, ModelSolution, PrimalModel, VarId};
use crate::sdp::problem::SolveStatus;

#[derive(Debug, Clone)]
pub struct Target {
    pub dim_out: usize,
    pub q: ComplexMatrix,
    pub offset: Option<ComplexMatrix>,
}

#[derive(Debug, Clone)]
pub struct Recovery {
    pub name: String,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct Normalization {
    pub terms: Vec<(usize, HermMap)>,
    pub rhs: ComplexMatrix,
}

#[derive(Debug, Clone)]
pub struct Template {
    pub formulation: String,
    pub dim_in: usize,
    pub targets: Vec<Target>,
    pub recoveries: Vec<Recovery>,
    /// `(k, j, Φ_kj)`.
    pub couplings: Vec<(usize, usize, HermMap)>,
    pub normalizations: Vec<Normalization>,
}

/// Value of a measure, certified by solving both forms.
#[derive(Debug, Clone)]
pub struct MeasureResult {
    /// Min-form optimum (an upper bound on the true value up to solver tolerance).
    pub value: f64,
    pub min_value: f64,
    pub max_value: f64,
    /// `|min_value - max_value|`.
    pub gap: f64,
    pub formulation: String,
    /// Optimal recovery variables (min form) and input state (max form).
    pub optimizer: Vec<(String, ComplexMatrix)>,
    pub iterations: usize,
    pub status: SolveStatus,
}

impl MeasureResult {
    pub fn optimizer(&self, name: &str) -> Option<&ComplexMatrix> {
        self.optimizer.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// Report `shift - value` instead of `value` (both forms shift alike).
    pub(crate) fn complement_from(mut self, shift: f64) -> Self {
        self.value = shift - self.value;
        self.min_value = shift - self.min_value;
        self.max_value = shift - self.max_value;
        self
    }
}

fn partial_trace_out(n_out: usize, n_in: usize) -> HermMap {
    HermMap::from_fn(n_out * n_in, n_in, |x| {
        x.partial_trace(&[n_out, n_in], &[1]).expect("shape fixed")
    })
}

fn kron_identity_left(n_out: usize, n_in: usize) -> HermMap {
    let id = ComplexMatrix::identity(n_out);
    HermMap::from_fn(n_in, n_out * n_in, |x| id.kron(x))
}

impl Template {
    fn check(&self) -> Result<()> {
        for (k, t) in self.targets.iter().enumerate() {
            let n = t.dim_out * self.dim_in;
            if t.q.rows() != n || t.offset.as_ref().is_some_and(|o| o.rows() != n) {
                return Err(Error::Dimension(format!(
                    "target {k} does not act on {}x{}",
                    t.dim_out, self.dim_in
                )));
            }
        }
        for (k, j, map) in &self.couplings {
            let t = self.targets.get(*k).ok_or_else(|| Error::Dimension("coupling target".into()))?;
            let r = self.recoveries.get(*j).ok_or_else(|| Error::Dimension("coupling recovery".into()))?;
            if map.n_in() != r.size || map.n_out() != t.dim_out * self.dim_in {
                return Err(Error::Dimension(format!("coupling ({k},{j}) has the wrong shape")));
            }
        }
        Ok(())
    }

    fn delta(&self, k: usize) -> ComplexMatrix {
        let t = &self.targets[k];
        match &t.offset {
            Some(o) => &t.q - o,
            None => t.q.clone(),
        }
    }

    pub fn solve_min(&self, tol: f64) -> Result<(ModelSolution, Vec<VarId>)> {
        self.check()?;
        let mut m = PrimalModel::new();
        let lambda = m.nonneg();
        m.objective_term(lambda, &ComplexMatrix::identity(1));
        let recs: Vec<VarId> = self.recoveries.iter().map(|r| m.psd(r.size)).collect();
        let mut lam = Expr::new(self.dim_in)
            .term(lambda, HermMap::scalar_times(&ComplexMatrix::identity(self.dim_in)));
        for (k, t) in self.targets.iter().enumerate() {
            let n = t.dim_out * self.dim_in;
            let tk = m.psd(n);
            let mut e = Expr::new(n)
                .term(tk, HermMap::identity(n))
                .plus_constant(&self.delta(k).scale_real(-1.0));
            for (kk, j, map) in &self.couplings {
                if *kk == k {
                    e = e.term(recs[*j], map.clone());
                }
            }
            m.psd_constraint(e);
            lam = lam.term(tk, partial_trace_out(t.dim_out, self.dim_in).scaled(-1.0));
        }
        m.psd_constraint(lam);
        for g in &self.normalizations {
            let mut e = Expr::new(g.rhs.rows()).plus_constant(&g.rhs.scale_real(-1.0));
            for (j, map) in &g.terms {
                e = e.term(recs[*j], map.clone());
            }
            m.equal(e);
        }
        Ok((m.solve(tol)?, recs))
    }

    pub fn solve_max(&self, tol: f64) -> Result<(ModelSolution, VarId)> {
        self.check()?;
        let mut m = LmiModel::new();
        let rho = m.free(self.dim_in);
        let ks: Vec<VarId> = self
            .targets
            .iter()
            .map(|t| m.free(t.dim_out * self.dim_in))
            .collect();
        let ls: Vec<VarId> = self
            .normalizations
            .iter()
            .map(|g| m.free(g.rhs.rows()))
            .collect();
        for (k, t) in self.targets.iter().enumerate() {
            let n = t.dim_out * self.dim_in;
            m.objective_term(ks[k], &self.delta(k));
            m.lmi(Expr::new(n).term(ks[k], HermMap::identity(n)));
            m.lmi(
                Expr::new(n)
                    .term(rho, kron_identity_left(t.dim_out, self.dim_in))
                    .term(ks[k], HermMap::identity(n).scaled(-1.0)),
            );
        }
        m.lmi(
            Expr::new(1)
                .term(rho, HermMap::functional(&ComplexMatrix::identity(self.dim_in)).scaled(-1.0))
                .plus_constant(&ComplexMatrix::identity(1)),
        );
        for (i, g) in self.normalizations.iter().enumerate() {
            m.objective_term(ls[i], &g.rhs.scale_real(-1.0));
        }
        for (j, r) in self.recoveries.iter().enumerate() {
            let mut e = Expr::new(r.size);
            for (i, g) in self.normalizations.iter().enumerate() {
                for (jj, map) in &g.terms {
                    if *jj == j {
                        e = e.term(ls[i], map.adjoint());
                    }
                }
            }
            for (k, jj, map) in &self.couplings {
                if *jj == j {
                    e = e.term(ks[*k], map.adjoint().scaled(-1.0));
                }
            }
            m.lmi(e);
        }
        Ok((m.solve(tol)?, rho))
    }

    /// Solve both forms and cross-check them.
    pub fn solve(&self, tol: &Tolerances) -> Result<MeasureResult> {
        let (lo, recs) = self.solve_min(tol.sdp)?;
        let (hi, rho) = self.solve_max(tol.sdp)?;
        for (form, s) in [("min", &lo), ("max", &hi)] {
            if s.status != SolveStatus::Optimal {
                return Err(Error::Solver {
                    formulation: format!("{} ({form} form)", self.formulation),
                    status: s.status.to_string(),
                    gap: s.solver_gap,
                });
            }
        }
        let gap = (lo.value - hi.value).abs();
        if gap > tol.duality_gap {
            return Err(Error::Solver {
                formulation: self.formulation.clone(),
                status: "forms disagree".into(),
                gap,
            });
        }
        let mut optimizer: Vec<(String, ComplexMatrix)> = self
            .recoveries
            .iter()
            .zip(&recs)
            .map(|(r, v)| (r.name.clone(), lo.value_of(*v).clone()))
            .collect();
        optimizer.push(("rho".into(), hi.value_of(rho).clone()));
        Ok(MeasureResult {
            value: lo.value,
            min_value: lo.value,
            max_value: hi.value,
            gap,
            formulation: self.formulation.clone(),
            optimizer,
            iterations: lo.iterations + hi.iterations,
            status: SolveStatus::Optimal,
        })
    }
}
