use crate::error::{Error, Result};

/// Cone of one variable block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// Symmetric positive semidefinite `size x size` matrix.
    Psd,
    /// `size` nonnegative scalars (stored as a diagonal).
    Nonneg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSpec {
    pub kind: BlockKind,
    pub size: usize,
}

/// A real linear functional on block-diagonal symmetric matrices.
///
/// Each term `(block, i, j, v)` with `i <= j` stands for a symmetric pair of
/// coefficients at `(i, j)` and `(j, i)`. Repeated terms add up.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Functional {
    pub terms: Vec<(usize, usize, usize, f64)>,
}

impl Functional {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `v` at `(i, j)` and `(j, i)` of `block`.
    pub fn push(&mut self, block: usize, i: usize, j: usize, v: f64) {
        if v != 0.0 {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            self.terms.push((block, a, b, v));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sort terms and merge duplicates.
    pub fn canonicalize(&mut self) {
        self.terms
            .sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
        let mut out: Vec<(usize, usize, usize, f64)> = Vec::with_capacity(self.terms.len());
        for &t in &self.terms {
            match out.last_mut() {
                Some(last) if (last.0, last.1, last.2) == (t.0, t.1, t.2) => last.3 += t.3,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.3 != 0.0);
        self.terms = out;
    }
}

/// Standard-form conic program
///
/// ```text
/// (P)  min <C, X>  s.t. <A_i, X> = b_i,  X in K
/// (D)  max b^T y   s.t. C - Σ_i y_i A_i = S in K
/// ```
///
/// with `K` a product of PSD and nonnegative-orthant blocks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SdpProblem {
    pub blocks: Vec<BlockSpec>,
    pub objective: Functional,
    pub equalities: Vec<(Functional, f64)>,
}

impl SdpProblem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_block(&mut self, kind: BlockKind, size: usize) -> usize {
        self.blocks.push(BlockSpec { kind, size });
        self.blocks.len() - 1
    }

    pub fn add_equality(&mut self, f: Functional, rhs: f64) -> usize {
        self.equalities.push((f, rhs));
        self.equalities.len() - 1
    }

    pub fn n_constraints(&self) -> usize {
        self.equalities.len()
    }

    pub fn check(&self) -> Result<()> {
        let check_f = |f: &Functional, what: &str| -> Result<()> {
            for &(b, i, j, v) in &f.terms {
                let spec = self.blocks.get(b).ok_or_else(|| {
                    Error::Dimension(format!("{what}: block {b} does not exist"))
                })?;
                if spec.size == 0 || j >= spec.size || i > j {
                    return Err(Error::Dimension(format!(
                        "{what}: entry ({i},{j}) outside block {b} of size {}",
                        spec.size
                    )));
                }
                if spec.kind == BlockKind::Nonneg && i != j {
                    return Err(Error::InvalidArgument(format!(
                        "{what}: off-diagonal entry in nonnegative block {b}"
                    )));
                }
                if !v.is_finite() {
                    return Err(Error::InvalidArgument(format!("{what}: non-finite coefficient")));
                }
            }
            Ok(())
        };
        check_f(&self.objective, "objective")?;
        for (k, (f, rhs)) in self.equalities.iter().enumerate() {
            check_f(f, &format!("equality {k}"))?;
            if !rhs.is_finite() {
                return Err(Error::InvalidArgument(format!("equality {k}: non-finite rhs")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    MaxIter,
    Infeasible,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::MaxIter => "max_iter",
            SolveStatus::Infeasible => "infeasible",
        })
    }
}

/// Value of one block: dense symmetric matrix (row-major) or diagonal.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockValue {
    Psd { size: usize, data: Vec<f64> },
    Nonneg(Vec<f64>),
}

impl BlockValue {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            BlockValue::Psd { size, data } => data[i * size + j],
            BlockValue::Nonneg(v) => {
                if i == j {
                    v[i]
                } else {
                    0.0
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpSolution {
    pub primal_value: f64,
    pub dual_value: f64,
    /// `|primal - dual|`.
    pub gap: f64,
    pub status: SolveStatus,
    pub iterations: usize,
    pub primal_blocks: Vec<BlockValue>,
    pub dual_slack: Vec<BlockValue>,
    pub dual_multipliers: Vec<f64>,
    /// Relative primal and dual infeasibility at exit.
    pub primal_residual: f64,
    pub dual_residual: f64,
}

/// Residuals of a solution recomputed from the problem data alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    /// `max_i |<A_i, X> - b_i|`.
    pub primal_residual: f64,
    /// `max |C - Σ y_i A_i - S|` entrywise.
    pub dual_residual: f64,
    pub min_primal_eigenvalue: f64,
    pub min_dual_eigenvalue: f64,
    pub primal_objective: f64,
    pub dual_objective: f64,
}

impl SdpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}
