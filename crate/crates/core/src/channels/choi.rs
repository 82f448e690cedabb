use crate::error::{Error, Result};
use crate::numerics::eig::hermitian_eig;
use crate::numerics::matrix::{ComplexMatrix, C64, ZERO};
use crate::numerics::tolerance::Tolerances;

/// Choi operator `C = Σ_ij E(|i><j|) ⊗ |i><j|` on `B ⊗ A` (output factor first).
///
/// The Schrödinger action is `E(ρ) = Tr_A[C (1 ⊗ ρ^T)]`. Classical wires are
/// modelled as quantum systems that are dephased in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiOperator {
    dim_in: usize,
    dim_out: usize,
    matrix: ComplexMatrix,
}

impl ChoiOperator {
    pub fn new(dim_in: usize, dim_out: usize, matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(dim_in, dim_out, matrix, Tolerances::DEFAULT.normalization)
    }

    /// Like [`ChoiOperator::new`], checking positivity and trace preservation to `tol`.
    pub fn with_tolerance(
        dim_in: usize,
        dim_out: usize,
        matrix: ComplexMatrix,
        tol: f64,
    ) -> Result<Self> {
        let c = Self::unchecked(dim_in, dim_out, matrix)?;
        c.validate(tol)?;
        Ok(c)
    }

    /// Shape checks only.
    pub fn unchecked(dim_in: usize, dim_out: usize, matrix: ComplexMatrix) -> Result<Self> {
        let n = dim_in * dim_out;
        if dim_in == 0 || dim_out == 0 || matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!(
                "Choi operator {}x{} does not fit dim_in={dim_in}, dim_out={dim_out}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            dim_in,
            dim_out,
            matrix,
        })
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        validate_blocks(std::slice::from_ref(&self.matrix), self.dim_in, self.dim_out, tol)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn identity(d: usize) -> Self {
        Self::from_kraus(d, d, &[ComplexMatrix::identity(d)]).expect("identity is a channel")
    }

    /// Trace-out channel `A -> C^1`.
    pub fn trace_out(d: usize) -> Self {
        Self {
            dim_in: d,
            dim_out: 1,
            matrix: ComplexMatrix::identity(d),
        }
    }

    /// `Σ_k |K_k>><<K_k|` with `|K>> = Σ_i K|i> ⊗ |i>`.
    pub fn from_kraus(dim_in: usize, dim_out: usize, kraus: &[ComplexMatrix]) -> Result<Self> {
        Self::new(dim_in, dim_out, kraus_choi(dim_in, dim_out, kraus)?)
    }

    /// Choi operator of an arbitrary linear map given by its action on matrix units.
    pub fn from_action(
        dim_in: usize,
        dim_out: usize,
        f: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Self> {
        Self::unchecked(dim_in, dim_out, choi_from_action(dim_in, dim_out, f)?)
    }

    /// Constant channel `ρ ↦ Tr(ρ) σ`.
    pub fn constant(dim_in: usize, sigma: &ComplexMatrix) -> Result<Self> {
        Self::new(dim_in, sigma.rows(), sigma.kron(&ComplexMatrix::identity(dim_in)))
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        apply_block(&self.matrix, self.dim_in, self.dim_out, rho)
    }

    /// Heisenberg action `E^*(Λ) = (Tr_B[(Λ ⊗ 1) C])^T`.
    pub fn heisenberg(&self, op: &ComplexMatrix) -> Result<ComplexMatrix> {
        heisenberg_block(&self.matrix, self.dim_in, self.dim_out, op)
    }

    pub fn as_instrument(&self) -> Instrument {
        Instrument {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            outcomes: vec!["0".into()],
            blocks: vec![self.matrix.clone()],
        }
    }
}

/// A quantum instrument: one Choi block `C_y` on `B ⊗ A` per classical outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Instrument {
    dim_in: usize,
    dim_out: usize,
    outcomes: Vec<String>,
    blocks: Vec<ComplexMatrix>,
}

impl Instrument {
    pub fn new(
        dim_in: usize,
        dim_out: usize,
        outcomes: Vec<String>,
        blocks: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        Self::with_tolerance(dim_in, dim_out, outcomes, blocks, Tolerances::DEFAULT.normalization)
    }

    pub fn with_tolerance(
        dim_in: usize,
        dim_out: usize,
        outcomes: Vec<String>,
        blocks: Vec<ComplexMatrix>,
        tol: f64,
    ) -> Result<Self> {
        let e = Self::unchecked(dim_in, dim_out, outcomes, blocks)?;
        e.validate(tol)?;
        Ok(e)
    }

    pub fn unchecked(
        dim_in: usize,
        dim_out: usize,
        outcomes: Vec<String>,
        blocks: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("instrument without outcomes".into()));
        }
        if outcomes.len() != blocks.len() {
            return Err(Error::Dimension(format!(
                "{} outcome labels for {} blocks",
                outcomes.len(),
                blocks.len()
            )));
        }
        let n = dim_in * dim_out;
        for (k, b) in blocks.iter().enumerate() {
            if dim_in == 0 || dim_out == 0 || b.rows() != n || b.cols() != n {
                return Err(Error::Dimension(format!(
                    "block {k} is {}x{}, expected {n}x{n}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(Self {
            dim_in,
            dim_out,
            outcomes,
            blocks,
        })
    }

    /// Outcome labels `0..n`.
    pub fn numbered(dim_in: usize, dim_out: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        let outcomes = (0..blocks.len()).map(|k| k.to_string()).collect();
        Self::new(dim_in, dim_out, outcomes, blocks)
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        validate_blocks(&self.blocks, self.dim_in, self.dim_out, tol)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn n_outcomes(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn block(&self, y: usize) -> &ComplexMatrix {
        &self.blocks[y]
    }

    /// Unnormalized post-measurement states, one per outcome.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
        self.blocks
            .iter()
            .map(|b| apply_block(b, self.dim_in, self.dim_out, rho))
            .collect()
    }

    pub fn probabilities(&self, rho: &ComplexMatrix) -> Result<Vec<f64>> {
        Ok(self.apply(rho)?.iter().map(|s| s.trace().re).collect())
    }

    /// POVM element of outcome `y`: `(Tr_B C_y)^T`.
    pub fn povm_element(&self, y: usize) -> ComplexMatrix {
        self.blocks[y]
            .partial_trace(&[self.dim_out, self.dim_in], &[1])
            .expect("block shape checked at construction")
            .transpose()
    }

    /// The whole instrument as one channel `A -> Y ⊗ B`, with `Y` dephased.
    pub fn flatten(&self) -> ChoiOperator {
        let n = self.n_outcomes();
        let mut m = ComplexMatrix::zeros(n * self.dim_out * self.dim_in, n * self.dim_out * self.dim_in);
        let w = self.dim_out * self.dim_in;
        for (y, b) in self.blocks.iter().enumerate() {
            m.set_block(y * w, y * w, b);
        }
        ChoiOperator {
            dim_in: self.dim_in,
            dim_out: n * self.dim_out,
            matrix: m,
        }
    }

    /// Discard one output wire.
    pub fn marginalize(&self, drop: Wire) -> Device {
        match drop {
            Wire::Classical => {
                let mut sum = ComplexMatrix::zeros(self.blocks[0].rows(), self.blocks[0].cols());
                for b in &self.blocks {
                    sum += b;
                }
                Device::Channel(ChoiOperator {
                    dim_in: self.dim_in,
                    dim_out: self.dim_out,
                    matrix: sum,
                })
            }
            Wire::Quantum => Device::Instrument(Instrument {
                dim_in: self.dim_in,
                dim_out: 1,
                outcomes: self.outcomes.clone(),
                blocks: (0..self.n_outcomes())
                    .map(|y| self.povm_element(y).transpose())
                    .collect(),
            }),
        }
    }
}

/// Output wire of an instrument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wire {
    Quantum,
    Classical,
}

/// A channel or an instrument.
#[derive(Debug, Clone, PartialEq)]
pub enum Device {
    Channel(ChoiOperator),
    Instrument(Instrument),
}

impl Device {
    pub fn dim_in(&self) -> usize {
        match self {
            Device::Channel(c) => c.dim_in(),
            Device::Instrument(e) => e.dim_in(),
        }
    }

    pub fn dim_out(&self) -> usize {
        match self {
            Device::Channel(c) => c.dim_out(),
            Device::Instrument(e) => e.dim_out(),
        }
    }

    /// Classical outcomes folded into the quantum output.
    pub fn to_channel(&self) -> ChoiOperator {
        match self {
            Device::Channel(c) => c.clone(),
            Device::Instrument(e) => e.flatten(),
        }
    }

    /// A channel viewed as a one-outcome instrument.
    pub fn to_instrument(&self) -> Instrument {
        match self {
            Device::Channel(c) => c.as_instrument(),
            Device::Instrument(e) => e.clone(),
        }
    }

    pub fn as_channel(&self) -> Option<&ChoiOperator> {
        match self {
            Device::Channel(c) => Some(c),
            Device::Instrument(_) => None,
        }
    }

    pub fn as_instrument(&self) -> Option<&Instrument> {
        match self {
            Device::Instrument(e) => Some(e),
            Device::Channel(_) => None,
        }
    }
}

impl From<ChoiOperator> for Device {
    fn from(c: ChoiOperator) -> Self {
        Device::Channel(c)
    }
}

impl From<Instrument> for Device {
    fn from(e: Instrument) -> Self {
        Device::Instrument(e)
    }
}

/// Schrödinger-picture concatenation: `first` acts, then `second`.
///
/// Two instruments produce the product alphabet, labels joined with a comma,
/// outcome of `first` outermost.
pub fn compose(first: &Device, second: &Device) -> Result<Device> {
    if first.dim_out() != second.dim_in() {
        return Err(Error::Dimension(format!(
            "cannot feed a {}-dimensional output into a {}-dimensional input",
            first.dim_out(),
            second.dim_in()
        )));
    }
    let (a, b, c) = (first.dim_in(), first.dim_out(), second.dim_out());
    let join = |s: &ComplexMatrix, f: &ComplexMatrix| link(s, c, b, f, a);
    Ok(match (first, second) {
        (Device::Channel(f), Device::Channel(s)) => Device::Channel(ChoiOperator {
            dim_in: a,
            dim_out: c,
            matrix: join(&s.matrix, &f.matrix),
        }),
        (Device::Instrument(f), Device::Channel(s)) => Device::Instrument(Instrument {
            dim_in: a,
            dim_out: c,
            outcomes: f.outcomes.clone(),
            blocks: f.blocks.iter().map(|fb| join(&s.matrix, fb)).collect(),
        }),
        (Device::Channel(f), Device::Instrument(s)) => Device::Instrument(Instrument {
            dim_in: a,
            dim_out: c,
            outcomes: s.outcomes.clone(),
            blocks: s.blocks.iter().map(|sb| join(sb, &f.matrix)).collect(),
        }),
        (Device::Instrument(f), Device::Instrument(s)) => {
            let mut outcomes = Vec::new();
            let mut blocks = Vec::new();
            for (fy, fb) in f.outcomes.iter().zip(&f.blocks) {
                for (sy, sb) in s.outcomes.iter().zip(&s.blocks) {
                    outcomes.push(format!("{fy},{sy}"));
                    blocks.push(join(sb, fb));
                }
            }
            Device::Instrument(Instrument {
                dim_in: a,
                dim_out: c,
                outcomes,
                blocks,
            })
        }
    })
}

/// Link product of `F` on `C ⊗ B` with `E` on `B ⊗ A`: the Choi operator of
/// `F ∘ E` on `C ⊗ A`,
/// `link[(c,a),(c',a')] = Σ_{b,b'} F[(c,b),(c',b')] E[(b,a),(b',a')]`.
pub fn link(f: &ComplexMatrix, dc: usize, db: usize, e: &ComplexMatrix, da: usize) -> ComplexMatrix {
    debug_assert_eq!(f.rows(), dc * db);
    debug_assert_eq!(e.rows(), db * da);
    let mut out = ComplexMatrix::zeros(dc * da, dc * da);
    for c in 0..dc {
        for cp in 0..dc {
            for b in 0..db {
                for bp in 0..db {
                    let fv = f[(c * db + b, cp * db + bp)];
                    if fv == ZERO {
                        continue;
                    }
                    for a in 0..da {
                        for ap in 0..da {
                            out[(c * da + a, cp * da + ap)] += fv * e[(b * da + a, bp * da + ap)];
                        }
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn kraus_choi(
    dim_in: usize,
    dim_out: usize,
    kraus: &[ComplexMatrix],
) -> Result<ComplexMatrix> {
    let n = dim_in * dim_out;
    let mut m = ComplexMatrix::zeros(n, n);
    for k in kraus {
        if k.rows() != dim_out || k.cols() != dim_in {
            return Err(Error::Dimension(format!(
                "Kraus operator {}x{} for a map {dim_in} -> {dim_out}",
                k.rows(),
                k.cols()
            )));
        }
        let v: Vec<C64> = (0..n).map(|idx| k[(idx / dim_in, idx % dim_in)]).collect();
        m += &ComplexMatrix::projector(&v);
    }
    Ok(m)
}

pub(crate) fn choi_from_action(
    dim_in: usize,
    dim_out: usize,
    f: impl Fn(&ComplexMatrix) -> ComplexMatrix,
) -> Result<ComplexMatrix> {
    let n = dim_in * dim_out;
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..dim_in {
        for j in 0..dim_in {
            let img = f(&ComplexMatrix::unit(dim_in, i, j));
            if img.rows() != dim_out || img.cols() != dim_out {
                return Err(Error::Dimension(format!(
                    "map image is {}x{}, expected {dim_out}x{dim_out}",
                    img.rows(),
                    img.cols()
                )));
            }
            for b in 0..dim_out {
                for bp in 0..dim_out {
                    m[(b * dim_in + i, bp * dim_in + j)] = img[(b, bp)];
                }
            }
        }
    }
    Ok(m)
}

pub(crate) fn apply_block(
    c: &ComplexMatrix,
    dim_in: usize,
    dim_out: usize,
    rho: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    if rho.rows() != dim_in || rho.cols() != dim_in {
        return Err(Error::Dimension(format!(
            "input state is {}x{}, channel expects {dim_in}x{dim_in}",
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(ComplexMatrix::from_fn(dim_out, dim_out, |b, bp| {
        let mut acc = ZERO;
        for i in 0..dim_in {
            for j in 0..dim_in {
                acc += c[(b * dim_in + i, bp * dim_in + j)] * rho[(i, j)];
            }
        }
        acc
    }))
}

pub(crate) fn heisenberg_block(
    c: &ComplexMatrix,
    dim_in: usize,
    dim_out: usize,
    op: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    if op.rows() != dim_out || op.cols() != dim_out {
        return Err(Error::Dimension(format!(
            "observable is {}x{}, channel output is {dim_out}-dimensional",
            op.rows(),
            op.cols()
        )));
    }
    // E^*(Λ)[j,i] = Σ_{b,b'} Λ[b',b] C[(b,i),(b',j)]
    Ok(ComplexMatrix::from_fn(dim_in, dim_in, |j, i| {
        let mut acc = ZERO;
        for b in 0..dim_out {
            for bp in 0..dim_out {
                acc += op[(bp, b)] * c[(b * dim_in + i, bp * dim_in + j)];
            }
        }
        acc
    }))
}

fn validate_blocks(blocks: &[ComplexMatrix], dim_in: usize, dim_out: usize, tol: f64) -> Result<()> {
    let mut marginal = ComplexMatrix::zeros(dim_in, dim_in);
    for (k, b) in blocks.iter().enumerate() {
        let residual = b.hermiticity_residual();
        if residual > tol.max(Tolerances::DEFAULT.hermitian) {
            return Err(Error::NotHermitian { residual });
        }
        let eig = hermitian_eig(&b.hermitian_part())?;
        if eig.min() < -tol {
            return Err(Error::NotPositive {
                what: format!("Choi block {k}"),
                min_eigenvalue: eig.min(),
            });
        }
        marginal += &b.partial_trace(&[dim_out, dim_in], &[1])?;
    }
    let residual = marginal.max_abs_diff(&ComplexMatrix::identity(dim_in));
    if residual > tol {
        return Err(Error::NotNormalized {
            what: "sum of output traces".into(),
            residual,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::{pauli_x, pauli_z};

    fn hadamard() -> ComplexMatrix {
        let h = 1.0 / 2f64.sqrt();
        ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap()
    }

    #[test]
    fn identity_channel_acts_trivially() {
        let id = ChoiOperator::identity(2);
        let rho = ComplexMatrix::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3]).unwrap();
        assert!(id.apply(&rho).unwrap().max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn unitary_channel_action_and_heisenberg() {
        let u = hadamard();
        let ch = ChoiOperator::from_kraus(2, 2, &[u.clone()]).unwrap();
        let rho = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let out = ch.apply(&rho).unwrap();
        assert!(out.max_abs_diff(&(&(&u * &rho) * &u.adjoint())) < 1e-15);
        // Heisenberg: H Z H = X
        assert!(ch.heisenberg(&pauli_z()).unwrap().max_abs_diff(&pauli_x()) < 1e-15);
    }

    #[test]
    fn compose_with_identity() {
        let u = ChoiOperator::from_kraus(2, 2, &[hadamard()]).unwrap();
        let id = Device::Channel(ChoiOperator::identity(2));
        let d = Device::Channel(u.clone());
        assert_eq!(compose(&d, &id).unwrap(), d);
        assert_eq!(compose(&id, &d).unwrap(), d);
    }

    #[test]
    fn hadamard_twice_is_identity() {
        let d = Device::Channel(ChoiOperator::from_kraus(2, 2, &[hadamard()]).unwrap());
        let hh = compose(&d, &d).unwrap();
        assert!(hh.to_channel().matrix().max_abs_diff(ChoiOperator::identity(2).matrix()) < 1e-15);
    }

    #[test]
    fn compose_rejects_dimension_mismatch() {
        let a = Device::Channel(ChoiOperator::identity(2));
        let b = Device::Channel(ChoiOperator::identity(3));
        assert!(compose(&a, &b).is_err());
    }

    #[test]
    fn invalid_blocks_are_rejected() {
        let m = ComplexMatrix::diag_real(&[1.0, 0.0, 0.0, 0.5]);
        assert!(matches!(
            ChoiOperator::new(2, 2, m),
            Err(Error::NotNormalized { .. })
        ));
        let neg = ComplexMatrix::diag_real(&[1.0, -0.001, 0.0, 1.001]);
        assert!(matches!(ChoiOperator::new(2, 2, neg), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn constant_channel_ignores_input() {
        let sigma = ComplexMatrix::diag_real(&[0.25, 0.75]);
        let c = ChoiOperator::constant(3, &sigma).unwrap();
        let rho = ComplexMatrix::diag_real(&[0.1, 0.2, 0.7]);
        assert!(c.apply(&rho).unwrap().max_abs_diff(&sigma) < 1e-15);
    }
}
