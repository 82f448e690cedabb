/// Numerical tolerances shared by every module.
///
/// The defaults are the thresholds the acceptance suite is pinned against;
/// change them only through [`Tolerances::with_sdp_tol`] or by building a
/// custom record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Entrywise Hermiticity for flagged matrices.
    pub hermitian: f64,
    /// Input Hermiticity accepted by the eigensolver.
    pub eig_input: f64,
    /// Jacobi stops when the off-diagonal Frobenius mass drops below this
    /// (relative to the Frobenius norm of the input, floored at 1).
    pub jacobi: f64,
    /// Eigenvalues in `[-psd_clip, 0]` are treated as zero.
    pub psd_clip: f64,
    /// Trace-preservation residual accepted for Choi operators and instruments.
    pub normalization: f64,
    /// Interior-point stopping tolerance (relative gap and residuals).
    pub sdp: f64,
    /// Accepted disagreement between the two forms of a program.
    pub duality_gap: f64,
    /// Slack below which an inequality report counts as violated.
    pub bound_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        eig_input: 1e-10,
        jacobi: 1e-14,
        psd_clip: 1e-10,
        normalization: 1e-10,
        sdp: 1e-8,
        duality_gap: 1e-6,
        bound_slack: 1e-6,
    };

    pub fn with_sdp_tol(mut self, tol: f64) -> Self {
        self.sdp = tol;
        self
    }
}
