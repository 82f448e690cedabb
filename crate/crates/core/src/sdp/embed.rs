//! Complex Hermitian to real symmetric embedding and Hermitian coordinates.

use std::f64::consts::SQRT_2;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numerics::matrix::{ComplexMatrix, C64};
use crate::numerics::tolerance::Tolerances;

/// `[[Re H, -Im H], [Im H, Re H]]`.
pub fn embed_hermitian(h: &ComplexMatrix) -> Result<DMatrix<f64>> {
    let residual = h.hermiticity_residual();
    if residual > Tolerances::DEFAULT.eig_input {
        return Err(Error::NotHermitian { residual });
    }
    Ok(embed_unchecked(h))
}

pub(crate) fn embed_unchecked(h: &ComplexMatrix) -> DMatrix<f64> {
    let n = h.rows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = h[(r, c)];
            m[(r, c)] = z.re;
            m[(r + n, c + n)] = z.re;
            m[(r, c + n)] = -z.im;
            m[(r + n, c)] = z.im;
        }
    }
    m
}

/// Hermitian matrix represented by a real symmetric `2n x 2n` matrix; inverse
/// of [`embed_hermitian`] on its range, and the adjoint of `embed / 2`.
pub fn compress(w: &DMatrix<f64>) -> ComplexMatrix {
    let n = w.nrows() / 2;
    ComplexMatrix::from_fn(n, n, |r, c| {
        C64::new(
            0.5 * (w[(r, c)] + w[(r + n, c + n)]),
            0.5 * (w[(r + n, c)] - w[(r, c + n)]),
        )
    })
}

/// Number of real coordinates of an `n x n` Hermitian matrix.
pub fn hdim(n: usize) -> usize {
    n * n
}

/// Coordinates in the orthonormal basis of [`herm_basis`]: the diagonal, then
/// `√2 Re H_pq`, `√2 Im H_pq` for `p < q`.
pub fn hvec(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.rows();
    let mut v = Vec::with_capacity(n * n);
    for k in 0..n {
        v.push(h[(k, k)].re);
    }
    for p in 0..n {
        for q in (p + 1)..n {
            let z = h[(p, q)];
            v.push(SQRT_2 * z.re);
            v.push(SQRT_2 * z.im);
        }
    }
    v
}

/// Inverse of [`hvec`].
pub fn hmat(v: &[f64], n: usize) -> ComplexMatrix {
    debug_assert_eq!(v.len(), n * n);
    let mut h = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        h[(k, k)] = C64::new(v[k], 0.0);
    }
    let mut idx = n;
    for p in 0..n {
        for q in (p + 1)..n {
            let z = C64::new(v[idx], v[idx + 1]) / SQRT_2;
            h[(p, q)] = z;
            h[(q, p)] = z.conj();
            idx += 2;
        }
    }
    h
}

/// Orthonormal basis of Hermitian `n x n` matrices under `Re Tr(A B)`.
pub fn herm_basis(n: usize) -> Vec<ComplexMatrix> {
    (0..n * n)
        .map(|k| {
            let mut e = vec![0.0; n * n];
            e[k] = 1.0;
            hmat(&e, n)
        })
        .collect()
}
