//! Information measures in bits: von Neumann and Renyi entropies, mutual
//! information, canonical purification, reflected entropy, Markov gap,
//! conditional mutual information and fidelity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{psd_eig, psd_sqrt_matrix, ComplexMatrix};
use crate::register::{Label, QRegister};
use crate::state::{psd_sqrt, DensityMatrix, PureState};
use crate::tolerance::{Tolerances, SPECTRUM_CUTOFF};

fn check_xi(xi: f64) -> Result<()> {
    if xi <= 0.0 || !xi.is_finite() {
        return Err(Error::arg(format!("Renyi index must be finite and > 0, got {xi}")));
    }
    Ok(())
}

/// Shannon entropy (bits) of a spectrum; entries at or below the cutoff count as zero.
pub fn shannon_bits(spectrum: &[f64]) -> f64 {
    let s: f64 = spectrum.iter().filter(|&&p| p > SPECTRUM_CUTOFF).map(|&p| -p * p.log2()).sum();
    s.max(0.0)
}

/// Renyi-ξ entropy (bits) of a spectrum; ξ = 1 is routed to [`shannon_bits`].
pub fn renyi_bits(spectrum: &[f64], xi: f64) -> Result<f64> {
    check_xi(xi)?;
    if xi == 1.0 {
        return Ok(shannon_bits(spectrum));
    }
    let power_sum: f64 = spectrum.iter().filter(|&&p| p > SPECTRUM_CUTOFF).map(|&p| p.powf(xi)).sum();
    Ok(power_sum.log2() / (1.0 - xi))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(shannon_bits(&rho.eigenvalues()?))
}

pub fn renyi_entropy(rho: &DensityMatrix, xi: f64) -> Result<f64> {
    check_xi(xi)?;
    renyi_bits(&rho.eigenvalues()?, xi)
}

/// Entropy of the reduction of `rho` onto `labels` (the whole state if they
/// cover the register; zero for an empty set).
pub fn subsystem_entropy(rho: &DensityMatrix, labels: &[Label]) -> Result<f64> {
    if labels.is_empty() {
        return Ok(0.0);
    }
    if labels.len() == rho.register().len() {
        rho.register().positions(labels)?;
        return von_neumann_entropy(rho);
    }
    von_neumann_entropy(&rho.partial_trace(labels)?)
}

/// Two disjoint, non-empty label sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    left: Vec<Label>,
    right: Vec<Label>,
}

impl Bipartition {
    pub fn new(left: Vec<Label>, right: Vec<Label>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::arg("both sides of a bipartition must be non-empty"));
        }
        for (i, l) in left.iter().chain(&right).enumerate() {
            if left.iter().chain(&right).skip(i + 1).any(|m| m == l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { left, right })
    }

    /// `{a} : {b}`.
    pub fn pair(a: Label, b: Label) -> Result<Self> {
        Self::new(vec![a], vec![b])
    }

    pub fn left(&self) -> &[Label] {
        &self.left
    }

    pub fn right(&self) -> &[Label] {
        &self.right
    }

    pub fn swapped(&self) -> Self {
        Self { left: self.right.clone(), right: self.left.clone() }
    }

    /// Left then right labels.
    pub fn ordered(&self) -> Vec<Label> {
        self.left.iter().chain(&self.right).cloned().collect()
    }

    /// Requires the two sides to cover `reg` exactly.
    pub fn validate(&self, reg: &QRegister) -> Result<()> {
        reg.positions(&self.ordered())?;
        if self.left.len() + self.right.len() != reg.len() {
            let missing: Vec<String> =
                reg.labels().filter(|l| !self.left.contains(l) && !self.right.contains(l)).map(|l| l.to_string()).collect();
            return Err(Error::arg(format!(
                "bipartition does not cover the register; trace out {} first",
                missing.join(",")
            )));
        }
        Ok(())
    }
}

/// `S(left) + S(right) - S(left right)`.
pub fn mutual_information(rho: &DensityMatrix, part: &Bipartition) -> Result<f64> {
    part.validate(rho.register())?;
    let sa = subsystem_entropy(rho, part.left())?;
    let sb = subsystem_entropy(rho, part.right())?;
    let sab = von_neumann_entropy(rho)?;
    Ok(sa + sb - sab)
}

/// `|√ρ⟩` over `left, right, left*, right*`: the row multi-index of `√ρ`
/// (factors ordered left then right) maps to the unstarred factors and the
/// column multi-index to the starred ones.
pub fn canonical_purification(rho: &DensityMatrix, part: &Bipartition) -> Result<PureState> {
    part.validate(rho.register())?;
    let ordered = rho.permuted(&part.ordered())?;
    let root = psd_sqrt(&ordered)?;
    let reg = ordered.register().concat(&ordered.register().mirrored())?;
    let mut amps = root.into_vec();
    // Rescale away the trace-level rounding left by the eigenvalue cutoff.
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut amps {
        *z /= norm;
    }
    PureState::new(amps, reg)
}

/// `ρ_{left left*}` of the canonical purification, computed as `M M†` where
/// `M[(l, l*), (r, r*)] = √ρ[(l, r), (l*, r*)]`.
pub fn reflected_density(rho: &DensityMatrix, part: &Bipartition) -> Result<DensityMatrix> {
    part.validate(rho.register())?;
    let ordered = rho.permuted(&part.ordered())?;
    let root = psd_sqrt_matrix(ordered.matrix(), &Tolerances::default())?;
    let reg = ordered.register();
    let dl: usize = part.left().iter().map(|l| reg.dim_of(l)).product::<Result<usize>>()?;
    let dr = reg.dim() / dl;
    let mut m = ComplexMatrix::zeros(dl * dl, dr * dr);
    for l in 0..dl {
        for r in 0..dr {
            let row = l * dr + r;
            for ls in 0..dl {
                for rs in 0..dr {
                    m[(l * dl + ls, r * dr + rs)] = root[(row, ls * dr + rs)];
                }
            }
        }
    }
    let mut out = m.gram();
    let tr = out.trace().re;
    out = out.scale(1.0 / tr);
    let left_reg = QRegister::new(part.left().iter().map(|l| (l.clone(), reg.dim_of(l).unwrap())))?;
    let full = left_reg.concat(&left_reg.mirrored())?;
    Ok(DensityMatrix::trusted(out, full))
}

/// Clamped spectrum of `ρ_{left left*}`, descending.
pub fn reflected_spectrum(rho: &DensityMatrix, part: &Bipartition) -> Result<Vec<f64>> {
    let r = reflected_density(rho, part)?;
    Ok(psd_eig(r.matrix(), &Tolerances::default())?.eigenvalues)
}

pub fn reflected_entropy(rho: &DensityMatrix, part: &Bipartition) -> Result<f64> {
    Ok(shannon_bits(&reflected_spectrum(rho, part)?))
}

/// Renyi-ξ entropy of the same `ρ_{left left*}`; the purification itself is
/// always the canonical `√ρ` one.
pub fn renyi_reflected_entropy(rho: &DensityMatrix, part: &Bipartition, xi: f64) -> Result<f64> {
    check_xi(xi)?;
    renyi_bits(&reflected_spectrum(rho, part)?, xi)
}

/// `S_R - I`.
pub fn markov_gap(rho: &DensityMatrix, part: &Bipartition) -> Result<f64> {
    Ok(reflected_entropy(rho, part)? - mutual_information(rho, part)?)
}

/// `I(a : c | b) = S(ab) + S(bc) - S(abc) - S(b)`. The sets must be disjoint
/// labels of `rho`; `b` may be empty.
pub fn conditional_mutual_information(
    rho: &DensityMatrix,
    a: &[Label],
    c: &[Label],
    b: &[Label],
) -> Result<f64> {
    if a.is_empty() || c.is_empty() {
        return Err(Error::arg("conditional mutual information needs non-empty a and c"));
    }
    let all: Vec<Label> = a.iter().chain(b).chain(c).cloned().collect();
    // positions() rejects unknown labels and any overlap between the sets.
    rho.register().positions(&all).map_err(|e| match e {
        Error::DuplicateLabel(l) => Error::arg(format!("label `{l}` appears in more than one set")),
        other => other,
    })?;
    let ab: Vec<Label> = a.iter().chain(b).cloned().collect();
    let bc: Vec<Label> = b.iter().chain(c).cloned().collect();
    Ok(subsystem_entropy(rho, &ab)? + subsystem_entropy(rho, &bc)?
        - subsystem_entropy(rho, &all)?
        - subsystem_entropy(rho, b)?)
}

/// `F(ρ, σ) = (Tr √(√ρ σ √ρ))²`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Dimension { expected: rho.dim(), got: sigma.dim() });
    }
    let root = psd_sqrt(rho)?;
    let inner = (&(&root * sigma.matrix()) * &root).hermitian_part();
    let es = psd_eig(&inner, &Tolerances::default())?;
    let t: f64 = es.eigenvalues.iter().map(|l| l.sqrt()).sum();
    Ok((t * t).clamp(0.0, 1.0))
}

/// Entropies, reflected entropy and its bounds for one bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub s_left: f64,
    pub s_right: f64,
    pub s_joint: f64,
    pub mutual_information: f64,
    pub reflected_entropy: f64,
    pub markov_gap: f64,
    /// `min{2 S_left, 2 S_right}`
    pub bound_upper: f64,
    /// Mutual information.
    pub bound_lower: f64,
}

/// Slack used when asserting `I <= S_R <= min{2S_A, 2S_B}`.
pub const BOUND_SLACK: f64 = 1e-9;

impl MeasureReport {
    pub fn bounds_hold(&self, slack: f64) -> bool {
        self.bound_upper + slack >= self.reflected_entropy && self.reflected_entropy >= self.bound_lower - slack
    }
}

pub fn bounds_report(rho: &DensityMatrix, part: &Bipartition) -> Result<MeasureReport> {
    part.validate(rho.register())?;
    let s_left = subsystem_entropy(rho, part.left())?;
    let s_right = subsystem_entropy(rho, part.right())?;
    let s_joint = von_neumann_entropy(rho)?;
    let mi = s_left + s_right - s_joint;
    let sr = reflected_entropy(rho, part)?;
    let report = MeasureReport {
        s_left,
        s_right,
        s_joint,
        mutual_information: mi,
        reflected_entropy: sr,
        markov_gap: sr - mi,
        bound_upper: (2.0 * s_left).min(2.0 * s_right),
        bound_lower: mi,
    };
    if !report.bounds_hold(BOUND_SLACK) {
        return Err(Error::BoundViolation { reflected: sr, lower: report.bound_lower, upper: report.bound_upper });
    }
    Ok(report)
}
