//! Random test ensembles: Gaussian Hermitian matrices, Haar-like pure states
//! and Ginibre-induced mixed states of chosen rank.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;
use crate::register::QRegister;
use crate::state::{DensityMatrix, PureState};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with i.i.d. complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// GUE-style random Hermitian matrix.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ginibre(rng, n, n).hermitian_part()
}

pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, reg: &QRegister) -> PureState {
    let mut amps: Vec<Complex64> = (0..reg.dim()).map(|_| gaussian(rng)).collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut amps {
        *z /= norm;
    }
    PureState::trusted(amps, reg.clone())
}

/// `G G^dagger / Tr` with `G` of shape `dim × rank`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, reg: &QRegister, rank: usize) -> DensityMatrix {
    let g = ginibre(rng, reg.dim(), rank.max(1));
    let m = g.gram();
    let tr = m.trace().re;
    DensityMatrix::trusted(m.scale(1.0 / tr), reg.clone())
}
