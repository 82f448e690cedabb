use crate::channels::basis::{conjugate_basis, Basis};
use crate::channels::choi::{kraus_choi, ChoiOperator, Instrument};
use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;

/// Ideal measurement of `b`.
///
/// Measurement-only form: one-dimensional quantum output, blocks `P_x^T`.
/// Instrument form: projective repreparation, blocks `P_x ⊗ P_x^T`.
pub fn ideal_measurement(b: &Basis, as_instrument: bool) -> Instrument {
    let d = b.dim();
    let blocks = (0..d)
        .map(|x| {
            let p = b.projector(x);
            if as_instrument {
                p.kron(&p.transpose())
            } else {
                p.transpose()
            }
        })
        .collect();
    let dim_out = if as_instrument { d } else { 1 };
    Instrument::numbered(d, dim_out, blocks).expect("projective measurement is valid")
}

/// Preparation `z ↦ |b_z><b_z|` from a classical input alphabet of size `d`.
pub fn ideal_preparation(b: &Basis) -> ChoiOperator {
    let d = b.dim();
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for z in 0..d {
        m += &b.projector(z).kron(&ComplexMatrix::unit(d, z, z));
    }
    ChoiOperator::new(d, d, m).expect("preparation is a channel")
}

/// Measure in `b` and forget the outcome.
pub fn pinching(b: &Basis) -> ChoiOperator {
    let d = b.dim();
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for z in 0..d {
        let p = b.projector(z);
        m += &p.kron(&p.transpose());
    }
    ChoiOperator::new(d, d, m).expect("pinching is a channel")
}

/// Identity on a `d`-letter classical alphabet (a dephasing channel).
pub fn classical_identity(d: usize) -> ChoiOperator {
    pinching(&Basis::computational(d))
}

/// Two-outcome qubit Mach-Zehnder instrument with which-path coupling `theta`.
///
/// Outcome `y` has Kraus operator `K_y = cos(θ/2) P_y + sin(θ/2) P_{1-y}`,
/// `P_x` the projectors onto the Fourier (X) basis.
pub fn mz_apparatus(theta: f64) -> Result<Instrument> {
    if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in [0, pi/2], got {theta}"
        )));
    }
    let (_, phi) = conjugate_basis(2)?;
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let p0 = phi.projector(0);
    let p1 = phi.projector(1);
    let k0 = &p0.scale_real(c) + &p1.scale_real(s);
    let k1 = &p0.scale_real(s) + &p1.scale_real(c);
    let blocks = vec![kraus_choi(2, 2, &[k0])?, kraus_choi(2, 2, &[k1])?];
    Instrument::numbered(2, 2, blocks)
}
