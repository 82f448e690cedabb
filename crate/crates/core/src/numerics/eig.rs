use crate::error::{Error, Result};
use crate::numerics::matrix::{ComplexMatrix, C64, ZERO};
use crate::numerics::tolerance::Tolerances;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|x| x)
    }

    /// `V f(Λ) V^dag`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |r, c| {
            let mut acc = ZERO;
            for k in 0..n {
                if fv[k] != 0.0 {
                    acc += v[(r, k)] * v[(c, k)].conj() * fv[k];
                }
            }
            acc
        })
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    hermitian_eig_with(m, &Tolerances::DEFAULT)
}

pub fn hermitian_eig_with(m: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let residual = m.hermiticity_residual();
    if residual > tol.eig_input {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol.jacobi * a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|k| a[(k, k)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));
    let values = order.iter().map(|&k| diag[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEig { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One two-sided rotation annihilating `a[p,q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q).
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    for r in 0..n {
        let x = a[(r, p)];
        let y = a[(r, q)];
        a[(r, p)] = x * jpp + y * jqp;
        a[(r, q)] = x * jpq + y * jqq;
    }
    for col in 0..n {
        let x = a[(p, col)];
        let y = a[(q, col)];
        a[(p, col)] = jpp.conj() * x + jqp.conj() * y;
        a[(q, col)] = jpq.conj() * x + jqq.conj() * y;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for r in 0..n {
        let x = v[(r, p)];
        let y = v[(r, q)];
        v[(r, p)] = x * jpp + y * jqp;
        v[(r, q)] = x * jpq + y * jqq;
    }
}

/// Which Schatten norm to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchattenKind {
    Trace,
    Operator,
}

/// Singular values in descending order (length `min(rows, cols)`).
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let k = m.rows().min(m.cols());
    if k == 0 {
        return Vec::new();
    }
    let eig = hermitian_eig(&dilation(m)).expect("dilation is Hermitian by construction");
    // the spectrum is {±σ_i} padded with |rows - cols| zeros
    let mut s: Vec<f64> = eig.values.iter().rev().take(k).map(|x| x.max(0.0)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn schatten_norm(m: &ComplexMatrix, kind: SchattenKind) -> f64 {
    let s = singular_values(m);
    match kind {
        SchattenKind::Trace => s.iter().sum(),
        SchattenKind::Operator => s.first().copied().unwrap_or(0.0),
    }
}

pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    schatten_norm(m, SchattenKind::Trace)
}

pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    schatten_norm(m, SchattenKind::Operator)
}

/// `[[0, M], [M^dag, 0]]`.
fn dilation(m: &ComplexMatrix) -> ComplexMatrix {
    let (r, c) = (m.rows(), m.cols());
    let mut out = ComplexMatrix::zeros(r + c, r + c);
    out.set_block(0, r, m);
    out.set_block(r, 0, &m.adjoint());
    out
}

/// Thin SVD `M = U diag(s) W^dag` keeping singular values above `cutoff`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub w: ComplexMatrix,
}

pub fn svd(m: &ComplexMatrix, cutoff: f64) -> Svd {
    let (r, c) = (m.rows(), m.cols());
    let eig = hermitian_eig(&dilation(m)).expect("dilation is Hermitian by construction");
    let n = r + c;
    let mut cols = Vec::new();
    for k in (0..n).rev() {
        let sigma = eig.values[k];
        if sigma <= cutoff {
            break;
        }
        cols.push(k);
    }
    let rank = cols.len();
    let mut u = ComplexMatrix::zeros(r, rank);
    let mut w = ComplexMatrix::zeros(c, rank);
    let root2 = std::f64::consts::SQRT_2;
    for (j, &k) in cols.iter().enumerate() {
        for i in 0..r {
            u[(i, j)] = eig.vectors[(i, k)] * root2;
        }
        for i in 0..c {
            w[(i, j)] = eig.vectors[(r + i, k)] * root2;
        }
    }
    let s = cols.iter().map(|&k| eig.values[k]).collect();
    Svd { u, s, w }
}

/// Unitary (or partial-isometry) factor of the polar decomposition `M = U |M|`,
/// restricted to singular values above `cutoff`.
pub fn polar_isometry(m: &ComplexMatrix, cutoff: f64) -> ComplexMatrix {
    let d = svd(m, cutoff);
    &d.u * &d.w.adjoint()
}

/// Fails if `m` has an eigenvalue below `-clip`.
pub fn check_psd(m: &ComplexMatrix, what: &str, clip: f64) -> Result<HermitianEig> {
    let eig = hermitian_eig(m)?;
    if eig.min() < -clip {
        return Err(Error::NotPositive {
            what: what.to_string(),
            min_eigenvalue: eig.min(),
        });
    }
    Ok(eig)
}

pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eig(m)?.min())
}

/// Square root of a PSD matrix (small negative eigenvalues clipped).
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = check_psd(m, "matrix", Tolerances::DEFAULT.psd_clip)?;
    Ok(eig.map(|x| x.max(0.0).sqrt()))
}

/// Moore-Penrose inverse square root; eigenvalues at or below `cutoff` map to 0.
pub fn psd_pinv_sqrt(m: &ComplexMatrix, cutoff: f64) -> Result<ComplexMatrix> {
    let eig = check_psd(m, "matrix", Tolerances::DEFAULT.psd_clip)?;
    Ok(eig.map(|x| if x > cutoff { 1.0 / x.sqrt() } else { 0.0 }))
}

/// Unitary `exp(i H)` for Hermitian `H`.
pub fn expi_hermitian(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let n = h.rows();
    let v = &eig.vectors;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let mut acc = ZERO;
        for k in 0..n {
            acc += v[(r, k)] * v[(c, k)].conj() * C64::from_polar(1.0, eig.values[k]);
        }
        acc
    }))
}

/// `V^dag V - I` in max-abs norm.
pub fn isometry_defect(v: &ComplexMatrix) -> f64 {
    let g = &v.adjoint() * v;
    g.max_abs_diff(&ComplexMatrix::identity(v.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::{pauli_x, pauli_y, pauli_z};
    use proptest::prelude::*;

    fn hermitian_from(entries: &[(f64, f64)], n: usize) -> ComplexMatrix {
        let raw = ComplexMatrix::from_fn(n, n, |r, c| {
            let (a, b) = entries[r * n + c];
            C64::new(a, b)
        });
        raw.hermitian_part()
    }

    #[test]
    fn diagonal_input() {
        let e = hermitian_eig(&ComplexMatrix::diag_real(&[2.0, 1.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0]);
        assert!(e.reconstruct().max_abs_diff(&ComplexMatrix::diag_real(&[2.0, 1.0])) < 1e-15);
    }

    #[test]
    fn pauli_spectra() {
        for p in [pauli_x(), pauli_y(), pauli_z()] {
            let e = hermitian_eig(&p).unwrap();
            assert!((e.values[0] + 1.0).abs() < 1e-14);
            assert!((e.values[1] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn norms_of_simple_matrices() {
        let i3 = ComplexMatrix::identity(3);
        assert!((trace_norm(&i3) - 3.0).abs() < 1e-14);
        assert!((operator_norm(&i3) - 1.0).abs() < 1e-14);
        assert!((trace_norm(&pauli_z()) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rectangular_singular_values() {
        let m = ComplexMatrix::from_real(2, 3, &[3.0, 0.0, 0.0, 0.0, 0.0, 4.0]).unwrap();
        let s = singular_values(&m);
        assert_eq!(s.len(), 2);
        assert!((s[0] - 4.0).abs() < 1e-13 && (s[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn svd_reconstructs() {
        let m = ComplexMatrix::from_fn(3, 2, |r, c| C64::new(r as f64 + 0.3 * c as f64, c as f64 - 0.7));
        let d = svd(&m, 1e-12);
        let us = ComplexMatrix::from_fn(3, d.s.len(), |r, c| d.u[(r, c)] * d.s[c]);
        assert!((&us * &d.w.adjoint()).max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn rank_one_norms_coincide() {
        let v = vec![C64::new(0.6, 0.1), C64::new(-0.2, 0.5), C64::new(0.3, 0.0)];
        let w = vec![C64::new(1.0, -1.0), C64::new(0.0, 2.0), C64::new(0.5, 0.5)];
        let m = ComplexMatrix::outer(&v, &w);
        assert!((trace_norm(&m) - operator_norm(&m)).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn reconstruction_and_orthonormality(
            n in 1usize..=16,
            entries in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 256)
        ) {
            let m = hermitian_from(&entries, n);
            let e = hermitian_eig(&m).unwrap();
            let recon = e.reconstruct();
            prop_assert!(operator_norm(&(&recon - &m)) <= 1e-10);
            prop_assert!(isometry_defect(&e.vectors) <= 1e-12);
            for w in e.values.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
        }

        #[test]
        fn trace_norm_dominates_operator_norm(
            n in 1usize..=6,
            entries in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 36)
        ) {
            let m = ComplexMatrix::from_fn(n, n, |r, c| {
                let (a, b) = entries[r * n + c];
                C64::new(a, b)
            });
            prop_assert!(trace_norm(&m) + 1e-12 >= operator_norm(&m));
        }

        #[test]
        fn partial_trace_keeps_trace_and_positivity(
            entries in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16)
        ) {
            let g = ComplexMatrix::from_fn(4, 4, |r, c| {
                let (a, b) = entries[r * 4 + c];
                C64::new(a, b)
            });
            let psd = &g * &g.adjoint();
            for keep in [[0usize], [1usize]] {
                let red = psd.partial_trace(&[2, 2], &keep).unwrap();
                prop_assert!((red.trace() - psd.trace()).norm() <= 1e-12);
                prop_assert!(min_eigenvalue(&red).unwrap() >= -1e-12);
            }
        }

        #[test]
        fn partial_transpose_keeps_hermiticity(
            entries in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 36)
        ) {
            let h = hermitian_from(&entries, 6);
            let pt = h.partial_transpose(&[2, 3], &[1]).unwrap();
            prop_assert!(pt.hermiticity_residual() <= 1e-15);
            let full = h.partial_transpose(&[2, 3], &[0, 1]).unwrap();
            let a = hermitian_eig(&full).unwrap().values;
            let b = hermitian_eig(&h).unwrap().values;
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() <= 1e-10);
            }
        }
    }
}
