//! Functions of positive semidefinite matrices.

use super::eigen::{hermitian_eig_with, EigenSystem};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Eigendecomposition of a PSD matrix with rounding noise removed.
///
/// Eigenvalues in `[-psd_clamp, spectrum_cutoff]` become exactly zero; anything
/// below `-psd_clamp` is a genuine PSD violation.
pub fn psd_eig(m: &ComplexMatrix, tol: &Tolerances) -> Result<EigenSystem> {
    let mut es = hermitian_eig_with(m, tol)?;
    let min = es.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -tol.psd_clamp {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    for l in &mut es.eigenvalues {
        if *l <= tol.spectrum_cutoff {
            *l = 0.0;
        }
    }
    Ok(es)
}

/// Principal square root of a Hermitian PSD matrix.
pub fn psd_sqrt_matrix(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    Ok(psd_eig(m, tol)?.reconstruct_with(f64::sqrt))
}
