//! Dense complex linear algebra: Kronecker products, Hermitian
//! eigendecomposition and PSD matrix functions.

mod eigen;
mod func;
mod matrix;

pub use eigen::{hermitian_eig, hermitian_eig_with, hermitian_eigenvalues, EigenSystem};
pub use func::{psd_eig, psd_sqrt_matrix};
pub use matrix::{tensor, ComplexMatrix};
