use crate::channels::choi::{compose, kraus_choi, Device, Instrument};
use crate::error::{Error, Result};
use crate::numerics::eig::{hermitian_eig, polar_isometry};
use crate::numerics::matrix::ComplexMatrix;

/// Below this (relative to the largest eigenvalue) an eigenvalue is zero.
const KERNEL_CUTOFF: f64 = 1e-12;
/// Above this it is safely in the support; in between we refuse to guess.
const SUPPORT_CUTOFF: f64 = 1e-9;

/// Sequential form of a joint measurement: an X instrument followed by a
/// Z measurement chosen by the X outcome.
#[derive(Debug, Clone)]
pub struct JointDecomposition {
    /// Outcomes `x`, quantum output of the same dimension as the input.
    pub apparatus: Instrument,
    /// `conditional[x]` measures Z on the apparatus output.
    pub conditional: Vec<Instrument>,
}

impl JointDecomposition {
    /// The joint measurement obtained by running the two stages in sequence,
    /// outcome `(x, z)` at index `x * n_z + z`.
    pub fn recompose(&self) -> Result<Instrument> {
        let d = self.apparatus.dim_in();
        let mut outcomes = Vec::new();
        let mut blocks = Vec::new();
        for (x, cond) in self.conditional.iter().enumerate() {
            let stage = Instrument::unchecked(
                d,
                self.apparatus.dim_out(),
                vec![self.apparatus.outcomes()[x].clone()],
                vec![self.apparatus.block(x).clone()],
            )?;
            let seq = compose(&Device::Instrument(stage), &Device::Instrument(cond.clone()))?;
            let seq = seq.as_instrument().expect("instrument");
            outcomes.extend(seq.outcomes().iter().cloned());
            blocks.extend(seq.blocks().iter().cloned());
        }
        Instrument::unchecked(d, 1, outcomes, blocks)
    }
}

/// Split a joint POVM with outcomes `(x, z)` (index `x * n_z + z`, no quantum
/// output) into an X apparatus and conditional Z measurements.
///
/// The apparatus has Kraus operators `√M_x`. For each `x` the dilation
/// `W_x = Σ_z |z> ⊗ √M_xz` is connected to `√M_x` by the partial isometry
/// `U_x = polar(W_x (√M_x)^+)`, and the conditional measurement is
/// `N_{z|x} = U_x^dag (|z><z| ⊗ 1) U_x`, with the kernel of `M_x` assigned
/// to `z = 0`.
pub fn decompose_joint(e: &Instrument, n_x: usize) -> Result<JointDecomposition> {
    if e.dim_out() != 1 {
        return Err(Error::InvalidArgument(
            "joint measurement must not have a quantum output".into(),
        ));
    }
    if n_x == 0 || e.n_outcomes() % n_x != 0 {
        return Err(Error::Dimension(format!(
            "{} outcomes do not factor as {n_x} x outcomes",
            e.n_outcomes()
        )));
    }
    let n_z = e.n_outcomes() / n_x;
    let d = e.dim_in();

    let mut apparatus_blocks = Vec::with_capacity(n_x);
    let mut conditional = Vec::with_capacity(n_x);
    for x in 0..n_x {
        let m_xz: Vec<ComplexMatrix> = (0..n_z).map(|z| e.povm_element(x * n_z + z)).collect();
        let mut m_x = ComplexMatrix::zeros(d, d);
        for m in &m_xz {
            m_x += m;
        }
        let eig = hermitian_eig(&m_x)?;
        let scale = eig.max().max(f64::MIN_POSITIVE);
        if let Some(&bad) = eig
            .values
            .iter()
            .find(|&&l| l > KERNEL_CUTOFF * scale && l < SUPPORT_CUTOFF * scale)
        {
            return Err(Error::IllConditioned(format!(
                "marginal element {x} has eigenvalue {bad:e} between kernel and support"
            )));
        }
        let sqrt_mx = eig.map(|l| if l > SUPPORT_CUTOFF * scale { l.sqrt() } else { 0.0 });
        let pinv_sqrt = eig.map(|l| if l > SUPPORT_CUTOFF * scale { 1.0 / l.sqrt() } else { 0.0 });
        let kernel = eig.map(|l| if l > SUPPORT_CUTOFF * scale { 0.0 } else { 1.0 });

        // W_x stacked as rows (z, i)
        let mut w = ComplexMatrix::zeros(n_z * d, d);
        for (z, m) in m_xz.iter().enumerate() {
            let root = hermitian_eig(m)?.map(|l| l.max(0.0).sqrt());
            w.set_block(z * d, 0, &root);
        }
        let u = polar_isometry(&(&w * &pinv_sqrt), 0.5);

        let mut cond_blocks = Vec::with_capacity(n_z);
        for z in 0..n_z {
            let uz = u.block(z * d, 0, d, u.cols());
            let mut n = &uz.adjoint() * &uz;
            if z == 0 {
                n += &kernel;
            }
            cond_blocks.push(n.hermitian_part().transpose());
        }
        let labels = (0..n_z)
            .map(|z| {
                let full = &e.outcomes()[x * n_z + z];
                full.split(',').nth(1).unwrap_or(full).to_string()
            })
            .collect();
        conditional.push(Instrument::with_tolerance(d, 1, labels, cond_blocks, 1e-8)?);
        apparatus_blocks.push(sqrt_mx);
    }

    let blocks = apparatus_blocks
        .iter()
        .map(|k| kraus_choi(d, d, std::slice::from_ref(k)))
        .collect::<Result<Vec<_>>>()?;
    let labels = (0..n_x)
        .map(|x| {
            let full = &e.outcomes()[x * n_z];
            full.split(',').next().unwrap_or(full).to_string()
        })
        .collect();
    let apparatus = Instrument::with_tolerance(d, d, labels, blocks, 1e-8)?;
    Ok(JointDecomposition {
        apparatus,
        conditional,
    })
}
