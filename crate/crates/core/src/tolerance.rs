//! Numeric policy shared by every module.
//!
//! The constants are the defaults; [`Tolerances`] bundles them so callers can
//! override a value for a single computation without touching global state.

/// Entrywise Hermiticity slack accepted by [`crate::DensityMatrix`].
pub const HERMITIAN: f64 = 1e-10;
/// Slack on `|Tr rho - 1|`.
pub const TRACE: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are rounding noise and clamped to zero.
pub const PSD_CLAMP: f64 = 1e-8;
/// Eigenvalues at or below this value are treated as exactly zero by
/// entropies and matrix square roots.
pub const SPECTRUM_CUTOFF: f64 = 1e-14;
/// Hermiticity slack accepted by the eigensolver.
pub const EIG_HERMITIAN: f64 = 1e-8;
/// Jacobi stops once the off-diagonal Frobenius norm is below this fraction
/// of the full Frobenius norm.
pub const JACOBI_REL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Pure-state normalisation slack.
pub const NORM: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd_clamp: f64,
    pub spectrum_cutoff: f64,
    pub eig_hermitian: f64,
    pub jacobi_rel: f64,
    pub jacobi_max_sweeps: usize,
    pub norm: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: HERMITIAN,
            trace: TRACE,
            psd_clamp: PSD_CLAMP,
            spectrum_cutoff: SPECTRUM_CUTOFF,
            eig_hermitian: EIG_HERMITIAN,
            jacobi_rel: JACOBI_REL,
            jacobi_max_sweeps: JACOBI_MAX_SWEEPS,
            norm: NORM,
        }
    }
}
