//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h[p][q]`, then applies
//! the classical real Jacobi rotation. The accumulated unitary holds the
//! eigenvectors in its columns.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Eigenvalues sorted descending, with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    /// `V diag(f(λ)) V^dagger`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let w: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            if w[k] == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w[k];
                for j in i..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                out[(i, j)] = out[(j, i)].conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }
}

pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenSystem> {
    hermitian_eig_with(h, &Tolerances::default())
}

pub fn hermitian_eig_with(h: &ComplexMatrix, tol: &Tolerances) -> Result<EigenSystem> {
    if !h.is_square() {
        return Err(Error::Dimension { expected: h.rows(), got: h.cols() });
    }
    let asymmetry = h.hermitian_asymmetry();
    if asymmetry > tol.eig_hermitian {
        return Err(Error::NotHermitian { asymmetry });
    }
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = tol.jacobi_rel * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target || scale == 0.0 {
            break;
        }
        if sweeps >= tol.jacobi_max_sweeps {
            return Err(Error::NoConvergence { sweeps, residual: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigenSystem { eigenvalues, eigenvectors })
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eig(h)?.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip pivots that are already negligible next to both diagonal entries.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag; // e^{iφ}
    let zeta = (aqq - app) / (2.0 * mag);
    let t = zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt());
    let t = if zeta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] acting on columns p, q.
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;
    let n = a.rows();

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * g_qp;
        a[(k, q)] = akp * s + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * g_qp.conj();
        a[(q, k)] = apk * s + aqk * g_qq.conj();
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * g_qp;
        v[(k, q)] = vkp * s + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_hermitian;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_invariants(h: &ComplexMatrix, es: &EigenSystem) {
        let n = h.rows();
        let v = &es.eigenvectors;
        let lam = ComplexMatrix::from_diag(&es.eigenvalues);
        let resid = (&(h * v) - &(v * &lam)).frobenius_norm();
        assert!(resid <= 1e-10 * h.frobenius_norm().max(1.0), "HV - VΛ residual {resid:e}");
        let ortho = (&(&v.adjoint() * v) - &ComplexMatrix::identity(n)).frobenius_norm();
        assert!(ortho <= 1e-10, "V†V - I = {ortho:e}");
        assert!(es.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn diagonal_sorted_descending() {
        let es = hermitian_eig(&ComplexMatrix::from_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(es.eigenvalues, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pauli_x() {
        let sx = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let es = hermitian_eig(&sx).unwrap();
        assert!((es.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((es.eigenvalues[1] + 1.0).abs() < 1e-14);
        check_invariants(&sx, &es);
    }

    #[test]
    fn pauli_y_complex_pivot() {
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        let sy = ComplexMatrix::from_vec(2, 2, vec![z, -i, i, z]).unwrap();
        let es = hermitian_eig(&sy).unwrap();
        assert!((es.eigenvalues[0] - 1.0).abs() < 1e-14);
        check_invariants(&sy, &es);
    }

    #[test]
    fn w_state_reduction_block() {
        // ρ₁ = (|00><00| + (|01>+|10>)(<01|+<10|)) / 3: the 2×2 block [[1,1],[1,1]]/3
        // has eigenvalues 2/3 and 0, so the spectrum is (2/3, 1/3, 0, 0).
        let rho1 = ComplexMatrix::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 1.0, 0.0],
            [0.0, 1.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ])
        .scale(1.0 / 3.0);
        let es = hermitian_eig(&rho1).unwrap();
        let expected = [2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0];
        for (got, want) in es.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
        check_invariants(&rho1, &es);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        match hermitian_eig(&m) {
            Err(Error::NotHermitian { asymmetry }) => assert!((asymmetry - 1.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_matrix() {
        let es = hermitian_eig(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(es.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn sweep_cap_reports_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(&mut rng, 6);
        let tol = Tolerances { jacobi_max_sweeps: 0, ..Tolerances::default() };
        assert!(matches!(hermitian_eig_with(&h, &tol), Err(Error::NoConvergence { sweeps: 0, .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_hermitian_reconstructs(seed in any::<u64>(), n in 2usize..=32) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = random_hermitian(&mut rng, n);
            let es = hermitian_eig(&h).unwrap();
            check_invariants(&h, &es);
            let err = (&es.reconstruct() - &h).frobenius_norm();
            prop_assert!(err <= 1e-9 * h.frobenius_norm().max(1.0));
        }
    }
}
