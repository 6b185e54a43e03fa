//! Density matrices and pure states over labelled registers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{psd_eig, psd_sqrt_matrix, tensor, ComplexMatrix, EigenSystem};
use crate::register::{Label, QRegister};
use crate::tolerance::Tolerances;

/// A certified quantum state: Hermitian, unit trace and PSD up to the
/// configured tolerances. The stored matrix is exactly Hermitian.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    reg: QRegister,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, reg: QRegister) -> Result<Self> {
        Self::with_tolerances(mat, reg, &Tolerances::default())
    }

    pub fn with_tolerances(mat: ComplexMatrix, reg: QRegister, tol: &Tolerances) -> Result<Self> {
        check_shape(&mat, &reg)?;
        let asymmetry = mat.hermitian_asymmetry();
        if asymmetry > tol.hermitian {
            return Err(Error::NotHermitian { asymmetry });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::Trace { trace });
        }
        let mat = mat.hermitian_part();
        psd_eig(&mat, tol)?;
        Ok(Self { mat, reg })
    }

    /// Divides by the trace, then validates. Useful for states written up to
    /// an overall positive factor.
    pub fn normalized(mat: ComplexMatrix, reg: QRegister) -> Result<Self> {
        check_shape(&mat, &reg)?;
        let trace = mat.trace().re;
        if trace.is_nan() || trace <= 0.0 {
            return Err(Error::Trace { trace });
        }
        Self::new(mat.scale(1.0 / trace), reg)
    }

    /// Skips the PSD check; used for reductions of states already known to be valid.
    pub(crate) fn trusted(mat: ComplexMatrix, reg: QRegister) -> Self {
        debug_assert_eq!(mat.rows(), reg.dim());
        Self { mat, reg }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self::trusted(ComplexMatrix::outer(&psi.amps), psi.reg.clone())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn register(&self) -> &QRegister {
        &self.reg
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// Clamped eigensystem (descending).
    pub fn eig(&self) -> Result<EigenSystem> {
        psd_eig(&self.mat, &Tolerances::default())
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eig()?.eigenvalues)
    }

    /// `ρ ⊗ σ` over the concatenated register.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let reg = self.reg.concat(&other.reg)?;
        Ok(Self::trusted(tensor(&self.mat, &other.mat), reg))
    }

    pub fn partial_trace(&self, keep: &[Label]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }

    /// Reorders the tensor factors to `order`, which must list every label once.
    pub fn permuted(&self, order: &[Label]) -> Result<DensityMatrix> {
        if order.len() != self.reg.len() {
            return Err(Error::arg(format!(
                "permutation lists {} labels, register {} has {}",
                order.len(),
                self.reg,
                self.reg.len()
            )));
        }
        let perm = self.reg.positions(order)?;
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return Ok(self.clone());
        }
        let new_reg = self.reg.select(&perm);
        let map = permutation_map(&self.reg, &new_reg, &perm);
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(map[i], map[j])] = self.mat[(i, j)];
            }
        }
        Ok(Self::trusted(out, new_reg))
    }

    /// Renames one factor.
    pub fn relabel(&self, from: &Label, to: Label) -> Result<DensityMatrix> {
        let p = self.reg.position(from).ok_or_else(|| Error::UnknownLabel(from.clone()))?;
        let reg = QRegister::new(self.reg.factors().iter().enumerate().map(|(i, f)| {
            (if i == p { to.clone() } else { f.label.clone() }, f.dim)
        }))?;
        Ok(Self::trusted(self.mat.clone(), reg))
    }
}

fn check_shape(mat: &ComplexMatrix, reg: &QRegister) -> Result<()> {
    if !mat.is_square() {
        return Err(Error::Dimension { expected: mat.rows(), got: mat.cols() });
    }
    if mat.rows() != reg.dim() {
        return Err(Error::Dimension { expected: reg.dim(), got: mat.rows() });
    }
    Ok(())
}

/// Flat index in `from` -> flat index in the permuted register.
fn permutation_map(from: &QRegister, to: &QRegister, perm: &[usize]) -> Vec<usize> {
    let strides = to.strides();
    (0..from.dim())
        .map(|i| {
            let d = from.digits(i);
            perm.iter().zip(&strides).map(|(&p, &s)| d[p] * s).sum()
        })
        .collect()
}

/// For a kept/traced split, `table[t][k]` is the flat index with kept digits
/// `k` and traced digits `t`. Kept factors stay in register order.
struct Split {
    kept: QRegister,
    table: Vec<Vec<usize>>,
}

fn split(reg: &QRegister, keep: &[Label]) -> Result<Split> {
    if keep.is_empty() {
        return Err(Error::arg("partial trace must keep at least one subsystem"));
    }
    let mut kept_pos = reg.positions(keep)?;
    kept_pos.sort_unstable();
    let traced_pos: Vec<usize> = (0..reg.len()).filter(|p| !kept_pos.contains(p)).collect();
    let kept = reg.select(&kept_pos);
    let traced = reg.select(&traced_pos);
    let (dk, dt) = (kept.dim(), traced.dim());
    let mut table = vec![vec![0usize; dk]; dt];
    let (ks, ts) = (kept.strides(), traced.strides());
    for i in 0..reg.dim() {
        let d = reg.digits(i);
        let k: usize = kept_pos.iter().zip(&ks).map(|(&p, &s)| d[p] * s).sum();
        let t: usize = traced_pos.iter().zip(&ts).map(|(&p, &s)| d[p] * s).sum();
        table[t][k] = i;
    }
    Ok(Split { kept, table })
}

/// Traces out every factor not listed in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[Label]) -> Result<DensityMatrix> {
    let Split { kept, table } = split(&rho.reg, keep)?;
    let dk = kept.dim();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for row in &table {
        for a in 0..dk {
            for b in 0..dk {
                out[(a, b)] += rho.mat[(row[a], row[b])];
            }
        }
    }
    Ok(DensityMatrix::trusted(out, kept))
}

/// Hermitian PSD square root of a density matrix.
pub fn psd_sqrt(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    psd_sqrt_matrix(&rho.mat, &Tolerances::default())
}

/// Normalised amplitude vector over a register.
#[derive(Debug, Clone)]
pub struct PureState {
    amps: Vec<Complex64>,
    reg: QRegister,
}

impl PureState {
    pub fn new(amps: Vec<Complex64>, reg: QRegister) -> Result<Self> {
        if amps.len() != reg.dim() {
            return Err(Error::Dimension { expected: reg.dim(), got: amps.len() });
        }
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > Tolerances::default().norm {
            return Err(Error::Norm { norm_sqr });
        }
        Ok(Self { amps, reg })
    }

    /// Sum of real-weighted basis kets; each term lists one digit per factor.
    pub fn from_terms(reg: QRegister, terms: &[(&[usize], f64)]) -> Result<Self> {
        let strides = reg.strides();
        let mut amps = vec![Complex64::new(0.0, 0.0); reg.dim()];
        for (digits, w) in terms {
            if digits.len() != reg.len() {
                return Err(Error::Dimension { expected: reg.len(), got: digits.len() });
            }
            let mut idx = 0;
            for ((&d, f), s) in digits.iter().zip(reg.factors()).zip(&strides) {
                if d >= f.dim {
                    return Err(Error::arg(format!("level {d} out of range for `{}`", f.label)));
                }
                idx += d * s;
            }
            amps[idx] += Complex64::new(*w, 0.0);
        }
        Self::new(amps, reg)
    }

    pub(crate) fn trusted(amps: Vec<Complex64>, reg: QRegister) -> Self {
        debug_assert_eq!(amps.len(), reg.dim());
        Self { amps, reg }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn register(&self) -> &QRegister {
        &self.reg
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Amplitude of the basis ket with the given digits.
    pub fn amplitude(&self, digits: &[usize]) -> Complex64 {
        let idx: usize = digits.iter().zip(self.reg.strides()).map(|(d, s)| d * s).sum();
        self.amps[idx]
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// Reduced density matrix on `keep`, computed from the amplitudes without
    /// forming the full projector.
    pub fn reduced(&self, keep: &[Label]) -> Result<DensityMatrix> {
        let Split { kept, table } = split(&self.reg, keep)?;
        let dk = kept.dim();
        let mut out = ComplexMatrix::zeros(dk, dk);
        for row in &table {
            for a in 0..dk {
                let za = self.amps[row[a]];
                if za.re == 0.0 && za.im == 0.0 {
                    continue;
                }
                for b in 0..dk {
                    out[(a, b)] += za * self.amps[row[b]].conj();
                }
            }
        }
        Ok(DensityMatrix::trusted(out.hermitian_part(), kept))
    }
}
