//! Modeling layer: complex Hermitian variables and constraints lowered to the
//! real standard form of [`crate::sdp::problem::SdpProblem`].
//!
//! [`PrimalModel`] holds minimization programs over PSD variables with
//! equality and LMI constraints. [`LmiModel`] holds maximization programs over
//! free Hermitian variables subject to linear matrix inequalities.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;
use crate::sdp::embed::{compress, embed_unchecked, hmat, hvec};
use crate::sdp::problem::{BlockKind, BlockValue, Functional, SdpProblem, SolveStatus};
use crate::sdp::solver::solve_with;

/// Real-linear map between Hermitian spaces, as a matrix in [`hvec`] coordinates.
/// A scalar is a `1 x 1` Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermMap {
    n_in: usize,
    n_out: usize,
    mat: DMatrix<f64>,
}

impl HermMap {
    /// Tabulate `f` on the orthonormal Hermitian basis. `f` must be real-linear
    /// and Hermiticity-preserving.
    pub fn from_fn(n_in: usize, n_out: usize, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        let dim_in = n_in * n_in;
        let mut mat = DMatrix::zeros(n_out * n_out, dim_in);
        let mut e = vec![0.0; dim_in];
        for k in 0..dim_in {
            e[k] = 1.0;
            let img = f(&hmat(&e, n_in));
            debug_assert_eq!(img.rows(), n_out);
            for (r, v) in hvec(&img).into_iter().enumerate() {
                mat[(r, k)] = v;
            }
            e[k] = 0.0;
        }
        Self { n_in, n_out, mat }
    }

    /// `t ↦ t F` from scalars.
    pub fn scalar_times(f: &ComplexMatrix) -> Self {
        let n_out = f.rows();
        Self {
            n_in: 1,
            n_out,
            mat: DMatrix::from_column_slice(n_out * n_out, 1, &hvec(f)),
        }
    }

    /// `X ↦ Re Tr(F X)` into scalars.
    pub fn functional(f: &ComplexMatrix) -> Self {
        let n_in = f.rows();
        Self {
            n_in,
            n_out: 1,
            mat: DMatrix::from_row_slice(1, n_in * n_in, &hvec(f)),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_in: n,
            n_out: n,
            mat: DMatrix::identity(n * n, n * n),
        }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            n_in: self.n_in,
            n_out: self.n_out,
            mat: &self.mat * s,
        }
    }

    /// Adjoint with respect to `Re Tr(A B)`.
    pub fn adjoint(&self) -> Self {
        Self {
            n_in: self.n_out,
            n_out: self.n_in,
            mat: self.mat.transpose(),
        }
    }

    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let v = nalgebra::DVector::from_vec(hvec(x));
        let out = &self.mat * v;
        hmat(out.as_slice(), self.n_out)
    }
}

/// Handle of a model variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarId(usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Affine Hermitian expression `F0 + Σ L_k(v_k)` of size `n x n`.
#[derive(Debug, Clone)]
pub struct Expr {
    n: usize,
    terms: Vec<(VarId, HermMap)>,
    constant: ComplexMatrix,
}

impl Expr {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: Vec::new(),
            constant: ComplexMatrix::zeros(n, n),
        }
    }

    pub fn term(mut self, v: VarId, map: HermMap) -> Self {
        assert_eq!(map.n_out, self.n, "term does not match expression size");
        self.terms.push((v, map));
        self
    }

    pub fn plus_constant(mut self, c: &ComplexMatrix) -> Self {
        self.constant += c;
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

/// Output of either model.
#[derive(Debug, Clone)]
pub struct ModelSolution {
    /// Optimum of the program as stated (including constant offsets).
    pub value: f64,
    /// `|primal - dual|` of the underlying standard-form solve.
    pub solver_gap: f64,
    pub status: SolveStatus,
    pub iterations: usize,
    values: Vec<ComplexMatrix>,
}

impl ModelSolution {
    pub fn value_of(&self, v: VarId) -> &ComplexMatrix {
        &self.values[v.0]
    }

    pub fn scalar(&self, v: VarId) -> f64 {
        self.values[v.0][(0, 0)].re
    }
}

/// Lower `½ embed(F)` (PSD block) or `F` (scalar slot) into a functional.
fn push_coeffs(f: &mut Functional, slot: Slot, coeffs: &[f64], scale: f64) {
    match slot {
        Slot::Scalar { block, index } => f.push(block, index, index, scale * coeffs[0]),
        Slot::Matrix { block, n } => {
            let e = embed_unchecked(&hmat(coeffs, n));
            for i in 0..2 * n {
                for j in i..2 * n {
                    let v = e[(i, j)];
                    if v != 0.0 {
                        f.push(block, i, j, scale * v);
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Scalar { block: usize, index: usize },
    Matrix { block: usize, n: usize },
}

#[derive(Debug, Clone, Copy)]
struct PVar {
    n: usize,
    scalar: bool,
}

/// `min c + Σ Re Tr(F_k X_k)` over PSD `X_k`, subject to affine equalities
/// and LMIs (the latter through slack variables).
#[derive(Debug, Clone, Default)]
pub struct PrimalModel {
    vars: Vec<PVar>,
    objective: Vec<(VarId, Vec<f64>)>,
    constant: f64,
    equalities: Vec<Expr>,
}

impl PrimalModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Complex `n x n` PSD variable (`n = 1` gives a nonnegative scalar).
    pub fn psd(&mut self, n: usize) -> VarId {
        self.vars.push(PVar { n, scalar: n == 1 });
        VarId(self.vars.len() - 1)
    }

    pub fn nonneg(&mut self) -> VarId {
        self.psd(1)
    }

    /// Add `Re Tr(F X)` to the objective.
    pub fn objective_term(&mut self, v: VarId, f: &ComplexMatrix) {
        self.objective.push((v, hvec(f)));
    }

    pub fn objective_constant(&mut self, c: f64) {
        self.constant += c;
    }

    /// `e = 0`.
    pub fn equal(&mut self, e: Expr) {
        self.equalities.push(e);
    }

    /// `e ⪰ 0`.
    pub fn psd_constraint(&mut self, e: Expr) {
        let n = e.size();
        let slack = self.psd(n);
        self.equalities
            .push(e.term(slack, HermMap::identity(n).scaled(-1.0)));
    }

    fn lower(&self) -> Result<(SdpProblem, Vec<Slot>)> {
        let mut p = SdpProblem::new();
        let n_scalars = self.vars.iter().filter(|v| v.scalar).count();
        let scalar_block = if n_scalars > 0 {
            Some(p.add_block(BlockKind::Nonneg, n_scalars))
        } else {
            None
        };
        let mut next_scalar = 0;
        let slots: Vec<Slot> = self
            .vars
            .iter()
            .map(|v| {
                if v.scalar {
                    next_scalar += 1;
                    Slot::Scalar {
                        block: scalar_block.expect("scalar block exists"),
                        index: next_scalar - 1,
                    }
                } else {
                    Slot::Matrix {
                        block: p.add_block(BlockKind::Psd, 2 * v.n),
                        n: v.n,
                    }
                }
            })
            .collect();

        // PSD variable X = compress(W): Re Tr(F X) = <½ embed F, W>
        let scale = |s: Slot| match s {
            Slot::Scalar { .. } => 1.0,
            Slot::Matrix { .. } => 0.5,
        };
        let mut obj = Functional::new();
        for (v, c) in &self.objective {
            push_coeffs(&mut obj, slots[v.0], c, scale(slots[v.0]));
        }
        p.objective = obj;

        for (k, e) in self.equalities.iter().enumerate() {
            let rhs = hvec(&e.constant);
            for (row, r) in rhs.iter().enumerate() {
                let mut f = Functional::new();
                for (v, map) in &e.terms {
                    let coeffs: Vec<f64> = map.mat.row(row).iter().copied().collect();
                    if coeffs.iter().all(|&c| c == 0.0) {
                        continue;
                    }
                    push_coeffs(&mut f, slots[v.0], &coeffs, scale(slots[v.0]));
                }
                f.canonicalize();
                if f.is_empty() {
                    if r.abs() > 1e-12 {
                        return Err(Error::InvalidArgument(format!(
                            "equality {k} row {row} has no variables but constant {r:e}"
                        )));
                    }
                    continue;
                }
                p.add_equality(f, -r);
            }
        }
        Ok((p, slots))
    }

    pub fn to_problem(&self) -> Result<SdpProblem> {
        Ok(self.lower()?.0)
    }

    pub fn solve(&self, tol: f64) -> Result<ModelSolution> {
        let (p, slots) = self.lower()?;
        let sol = solve_with(&p, tol)?;
        let values = slots
            .iter()
            .map(|s| match *s {
                Slot::Scalar { block, index } => {
                    ComplexMatrix::from_real(1, 1, &[sol.primal_blocks[block].get(index, index)])
                        .expect("1x1")
                }
                Slot::Matrix { block, n } => match &sol.primal_blocks[block] {
                    BlockValue::Psd { size, data } => {
                        compress(&DMatrix::from_row_slice(*size, *size, data))
                    }
                    BlockValue::Nonneg(_) => unreachable!("matrix slot in scalar block"),
                }
                .block(0, 0, n, n),
            })
            .collect();
        Ok(ModelSolution {
            value: sol.primal_value + self.constant,
            solver_gap: sol.gap,
            status: sol.status,
            iterations: sol.iterations,
            values,
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct LVar {
    n: usize,
    offset: usize,
}

/// `max c + Σ Re Tr(B_k Y_k)` over free Hermitian `Y_k` subject to LMIs.
#[derive(Debug, Clone, Default)]
pub struct LmiModel {
    vars: Vec<LVar>,
    n_y: usize,
    objective: Vec<f64>,
    constant: f64,
    lmis: Vec<Expr>,
}

impl LmiModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Free Hermitian `n x n` variable (`n = 1`: free real scalar).
    pub fn free(&mut self, n: usize) -> VarId {
        self.vars.push(LVar {
            n,
            offset: self.n_y,
        });
        self.n_y += n * n;
        self.objective.resize(self.n_y, 0.0);
        VarId(self.vars.len() - 1)
    }

    /// Add `Re Tr(B Y)` to the objective.
    pub fn objective_term(&mut self, v: VarId, b: &ComplexMatrix) {
        let var = self.vars[v.0];
        for (k, c) in hvec(b).into_iter().enumerate() {
            self.objective[var.offset + k] += c;
        }
    }

    pub fn objective_constant(&mut self, c: f64) {
        self.constant += c;
    }

    /// `e ⪰ 0`.
    pub fn lmi(&mut self, e: Expr) {
        self.lmis.push(e);
    }

    fn lower(&self) -> Result<(SdpProblem, Vec<Option<usize>>)> {
        let mut p = SdpProblem::new();
        let n_scalar = self.lmis.iter().filter(|e| e.n == 1).count();
        let scalar_block = if n_scalar > 0 {
            Some(p.add_block(BlockKind::Nonneg, n_scalar))
        } else {
            None
        };
        let mut next = 0;
        let slots: Vec<Slot> = self
            .lmis
            .iter()
            .map(|e| {
                if e.n == 1 {
                    next += 1;
                    Slot::Scalar {
                        block: scalar_block.expect("scalar block exists"),
                        index: next - 1,
                    }
                } else {
                    Slot::Matrix {
                        block: p.add_block(BlockKind::Psd, 2 * e.n),
                        n: e.n,
                    }
                }
            })
            .collect();

        // S = C - Σ y_i A_i with C = embed(F0), A_i = -embed(L(E_i))
        let mut c = Functional::new();
        let mut rows: Vec<Functional> = vec![Functional::new(); self.n_y];
        for (e, &slot) in self.lmis.iter().zip(&slots) {
            push_coeffs(&mut c, slot, &hvec(&e.constant), 1.0);
            for (v, map) in &e.terms {
                let var = self.vars[v.0];
                for k in 0..var.n * var.n {
                    let col: Vec<f64> = map.mat.column(k).iter().copied().collect();
                    if col.iter().all(|&x| x == 0.0) {
                        continue;
                    }
                    push_coeffs(&mut rows[var.offset + k], slot, &col, -1.0);
                }
            }
        }
        p.objective = c;
        let mut row_of = vec![None; self.n_y];
        for (i, mut f) in rows.into_iter().enumerate() {
            f.canonicalize();
            if f.is_empty() {
                if self.objective[i].abs() > 1e-12 {
                    return Err(Error::InvalidArgument(format!(
                        "coordinate {i} appears in the objective but in no constraint"
                    )));
                }
                continue;
            }
            row_of[i] = Some(p.add_equality(f, self.objective[i]));
        }
        Ok((p, row_of))
    }

    pub fn to_problem(&self) -> Result<SdpProblem> {
        Ok(self.lower()?.0)
    }

    pub fn solve(&self, tol: f64) -> Result<ModelSolution> {
        let (p, row_of) = self.lower()?;
        let sol = solve_with(&p, tol)?;
        let y: Vec<f64> = row_of
            .iter()
            .map(|r| r.map_or(0.0, |r| sol.dual_multipliers[r]))
            .collect();
        let values = self
            .vars
            .iter()
            .map(|v| hmat(&y[v.offset..v.offset + v.n * v.n], v.n))
            .collect();
        Ok(ModelSolution {
            value: sol.dual_value + self.constant,
            solver_gap: sol.gap,
            status: sol.status,
            iterations: sol.iterations,
            values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::{pauli_y, C64};

    #[test]
    fn herm_map_adjoint_pairs() {
        let a = ComplexMatrix::from_fn(2, 2, |r, c| C64::new((r + 2 * c) as f64, r as f64 - c as f64));
        let map = HermMap::from_fn(2, 2, |x| &(&a * x) * &a.adjoint());
        let x = pauli_y();
        let y = ComplexMatrix::diag_real(&[0.3, -1.2]);
        let lhs = (&map.apply(&x) * &y).trace().re;
        let rhs = (&x * &map.adjoint().apply(&y)).trace().re;
        assert!((lhs - rhs).abs() < 1e-12);
    }

    /// Largest eigenvalue of H both ways:
    /// min t s.t. tI - H ⪰ 0, and max Re Tr(H ρ) s.t. ρ ⪰ 0, Tr ρ = 1.
    #[test]
    fn top_eigenvalue_both_forms() {
        let h = &ComplexMatrix::diag_real(&[1.0, -0.5]) + &pauli_y().scale_real(0.7);
        let expect = 0.25 + (0.75f64.powi(2) + 0.49).sqrt();

        let mut lmi = LmiModel::new();
        let t = lmi.free(1);
        lmi.objective_term(t, &ComplexMatrix::identity(1).scale_real(-1.0));
        lmi.lmi(
            Expr::new(2)
                .term(t, HermMap::scalar_times(&ComplexMatrix::identity(2)))
                .plus_constant(&h.scale_real(-1.0)),
        );
        let s = lmi.solve(1e-9).unwrap();
        assert_eq!(s.status, SolveStatus::Optimal);
        assert!((-s.value - expect).abs() < 1e-7);
        assert!((s.scalar(t) - expect).abs() < 1e-6);

        let mut pm = PrimalModel::new();
        let rho = pm.psd(2);
        pm.objective_term(rho, &h.scale_real(-1.0));
        pm.equal(
            Expr::new(1)
                .term(rho, HermMap::functional(&ComplexMatrix::identity(2)))
                .plus_constant(&ComplexMatrix::identity(1).scale_real(-1.0)),
        );
        let s = pm.solve(1e-9).unwrap();
        assert_eq!(s.status, SolveStatus::Optimal);
        assert!((-s.value - expect).abs() < 1e-7);
        let r = s.value_of(rho);
        assert!(((&h * r).trace().re - expect).abs() < 1e-6);
    }

    #[test]
    fn psd_constraint_through_slack() {
        // min Tr X s.t. X ⪰ diag(1, 2)
        let mut pm = PrimalModel::new();
        let x = pm.psd(2);
        pm.objective_term(x, &ComplexMatrix::identity(2));
        pm.psd_constraint(
            Expr::new(2)
                .term(x, HermMap::identity(2))
                .plus_constant(&ComplexMatrix::diag_real(&[-1.0, -2.0])),
        );
        let s = pm.solve(1e-9).unwrap();
        assert!((s.value - 3.0).abs() < 1e-7);
    }
}
