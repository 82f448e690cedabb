use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channels::basis::{inner, Basis};
use crate::channels::choi::{kraus_choi, ChoiOperator, Instrument};
use crate::error::{Error, Result};
use crate::numerics::matrix::{ComplexMatrix, C64};

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    })
}

/// Haar-random isometry `cols -> rows` via Gram-Schmidt on a Ginibre matrix.
pub fn random_isometry(rows: usize, cols: usize, seed: u64) -> Result<ComplexMatrix> {
    if cols > rows || cols == 0 {
        return Err(Error::Dimension(format!(
            "no isometry from dimension {cols} into {rows}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gaussian_matrix(&mut rng, rows, cols);
    let mut cols_out: Vec<Vec<C64>> = Vec::with_capacity(cols);
    for c in 0..cols {
        let mut v = g.col(c);
        // two passes keep the result orthonormal to machine precision
        for _ in 0..2 {
            for q in &cols_out {
                let p = inner(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= p * qi;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols_out.push(v.into_iter().map(|z| z / n).collect());
    }
    let mut m = ComplexMatrix::zeros(rows, cols);
    for (c, v) in cols_out.iter().enumerate() {
        m.set_col(c, v);
    }
    Ok(m)
}

pub fn random_unitary(d: usize, seed: u64) -> Result<ComplexMatrix> {
    random_isometry(d, d, seed)
}

pub fn random_basis(d: usize, seed: u64) -> Result<Basis> {
    Basis::from_unitary(format!("haar{d}#{seed}"), &random_unitary(d, seed)?)
}

/// Instrument `A -> Y ⊗ B` (`|A| = |B| = d`, `|Y| = n_outcomes`) obtained from a
/// Haar-random isometry into `Y ⊗ B ⊗ E` with `|E| = d`, tracing out `E`.
pub fn random_instrument(d: usize, n_outcomes: usize, seed: u64) -> Result<Instrument> {
    if d == 0 || n_outcomes == 0 {
        return Err(Error::InvalidArgument(
            "random instrument needs d >= 1 and at least one outcome".into(),
        ));
    }
    let env = d;
    let v = random_isometry(n_outcomes * d * env, d, seed)?;
    let blocks = (0..n_outcomes)
        .map(|y| {
            let kraus: Vec<ComplexMatrix> = (0..env)
                .map(|k| ComplexMatrix::from_fn(d, d, |b, i| v[((y * d + b) * env + k, i)]))
                .collect();
            kraus_choi(d, d, &kraus)
        })
        .collect::<Result<Vec<_>>>()?;
    Instrument::numbered(d, d, blocks)
}

/// Random channel `A -> B` with a full-rank environment.
pub fn random_channel(dim_in: usize, dim_out: usize, seed: u64) -> Result<ChoiOperator> {
    let env = dim_in * dim_out;
    let v = random_isometry(dim_out * env, dim_in, seed)?;
    let kraus: Vec<ComplexMatrix> = (0..env)
        .map(|k| ComplexMatrix::from_fn(dim_out, dim_in, |b, i| v[(b * env + k, i)]))
        .collect();
    ChoiOperator::from_kraus(dim_in, dim_out, &kraus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::choi::Wire;
    use crate::numerics::eig::isometry_defect;

    #[test]
    fn instruments_are_valid_and_deterministic() {
        for seed in 0..20 {
            let e = random_instrument(2, 3, seed).unwrap();
            e.validate(1e-10).unwrap();
            assert_eq!(e, random_instrument(2, 3, seed).unwrap());
        }
        assert_ne!(random_instrument(2, 2, 1).unwrap(), random_instrument(2, 2, 2).unwrap());
    }

    #[test]
    fn outcome_traces_sum_to_dimension() {
        let e = random_instrument(3, 2, 7).unwrap();
        let total: f64 = e.blocks().iter().map(|b| b.trace().re).sum();
        assert!((total - 3.0).abs() < 1e-10);
        let traced = e.marginalize(Wire::Quantum);
        let traced = traced.as_instrument().unwrap();
        let mut s = ComplexMatrix::zeros(3, 3);
        for y in 0..2 {
            s += &traced.povm_element(y);
        }
        assert!(s.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-10);
    }

    #[test]
    fn isometries_and_channels() {
        assert!(isometry_defect(&random_isometry(12, 3, 5).unwrap()) < 1e-13);
        random_channel(2, 3, 9).unwrap().validate(1e-10).unwrap();
        assert!(random_isometry(2, 3, 0).is_err());
        random_basis(4, 3).unwrap();
    }
}
