//! States on `C^{n+1} ⊗ C^{m+1} ⊗ C^2` whose Renyi reflected entropy can
//! grow under a partial trace, and scans of `S^ξ_R(A:BC) − S^ξ_R(A:B)`.
//!
//! The family is
//!
//! ```text
//! ρ ∝ a Σ_{k∈{0,2..n}} |k00⟩⟨k00| + a Σ_{k∈{1,2..n}} |k10⟩⟨k10|
//!   + b Σ_{l=2..m} (|0l0⟩⟨0l0| + |1l1⟩⟨1l1|)
//! ```
//!
//! with trace `2na + 2(m−1)b` ([`Reading::Diagonal`], the default). It is
//! classical, yet `ρ_{AA*}` of its canonical purification is not, and the
//! gap turns negative for small ξ as soon as `a > b`.
//!
//! The `a` terms with `k ≥ 2` are sometimes written as dyads `|k00⟩⟨000|`,
//! `|k10⟩⟨110|`. [`Reading::Symmetrized`] takes that literally and adds the
//! adjoints; the result has zero diagonal on `|k00⟩` and is never positive
//! for `a > 0`, so it is only kept for comparison.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{renyi_bits, reflected_spectrum, Bipartition};
use crate::error::{Error, Result};
use crate::linalg::{psd_eig, ComplexMatrix};
use crate::register::{Label, QRegister};
use crate::rindler::{reduced_state, PairSelector, StateFamily};
use crate::state::DensityMatrix;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleParams {
    pub n: usize,
    pub m: usize,
    pub a: f64,
    pub b: f64,
}

impl CounterexampleParams {
    pub fn new(n: usize, m: usize, a: f64, b: f64) -> Result<Self> {
        let p = Self { n, m, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.m < 2 {
            return Err(Error::arg(format!("need n >= 2 and m >= 2, got n = {}, m = {}", self.n, self.m)));
        }
        if !(self.a >= 0.0 && self.b >= 0.0 && self.a.is_finite() && self.b.is_finite()) {
            return Err(Error::arg("weights a and b must be finite and nonnegative"));
        }
        if self.a + self.b <= 0.0 {
            return Err(Error::arg("a + b must be positive"));
        }
        Ok(())
    }

    /// `a/b`, infinite when `b = 0`.
    pub fn ratio(&self) -> f64 {
        self.a / self.b
    }

    pub fn register(&self) -> QRegister {
        QRegister::new([(Label::A, self.n + 1), (Label::B, self.m + 1), (Label::C, 2)]).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    #[default]
    Diagonal,
    Symmetrized,
}

impl Reading {
    pub const ALL: [Reading; 2] = [Reading::Diagonal, Reading::Symmetrized];

    pub fn name(self) -> &'static str {
        match self {
            Reading::Symmetrized => "symmetrized",
            Reading::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "symmetrized" | "sym" => Ok(Reading::Symmetrized),
            "diagonal" | "diag" => Ok(Reading::Diagonal),
            _ => Err(Error::arg(format!("unknown reading `{s}` (expected diagonal or symmetrized)"))),
        }
    }
}

/// Unnormalised matrix of the chosen reading.
pub fn assemble(p: &CounterexampleParams, reading: Reading) -> Result<ComplexMatrix> {
    p.validate()?;
    let dim_b = p.m + 1;
    let idx = |x: usize, y: usize, z: usize| (x * dim_b + y) * 2 + z;
    let dim = (p.n + 1) * dim_b * 2;
    let mut m = ComplexMatrix::zeros(dim, dim);
    let (a, b) = (p.a, p.b);
    // |000⟩ and |110⟩, and the extra A levels k = 2..n attached to each.
    for bl in 0..2 {
        let anchor = idx(bl, bl, 0);
        m[(anchor, anchor)] += a;
        for k in 2..=p.n {
            let j = idx(k, bl, 0);
            match reading {
                Reading::Symmetrized => {
                    m[(j, anchor)] += a;
                    m[(anchor, j)] += a;
                }
                Reading::Diagonal => m[(j, j)] += a,
            }
        }
    }
    for l in 2..=p.m {
        let i = idx(0, l, 0);
        m[(i, i)] += b;
        let i = idx(1, l, 1);
        m[(i, i)] += b;
    }
    Ok(m)
}

/// The default (diagonal) reading.
pub fn build_counterexample(p: &CounterexampleParams) -> Result<DensityMatrix> {
    build_counterexample_with(p, Reading::default())
}

/// Assembles, renormalises by the numerical trace and verifies positivity;
/// a non-positive matrix is a [`Error::NotPsd`].
pub fn build_counterexample_with(p: &CounterexampleParams, reading: Reading) -> Result<DensityMatrix> {
    let m = assemble(p, reading)?;
    let tr = m.trace().re;
    let m = m.scale(1.0 / tr);
    let es = psd_eig(&m, &Tolerances { psd_clamp: 1e-12, ..Tolerances::default() })?;
    debug_assert!(es.eigenvalues.iter().all(|&l| l >= 0.0));
    DensityMatrix::new(m, p.register())
}

/// `S^ξ_R(A:BC) − S^ξ_R(A:B)` for a state on exactly A, B, C.
pub fn monotonicity_gap(rho: &DensityMatrix, xi: f64) -> Result<f64> {
    let labels: Vec<&Label> = rho.register().labels().collect();
    if labels.len() != 3 || [Label::A, Label::B, Label::C].iter().any(|l| !labels.contains(&l)) {
        return Err(Error::arg("monotonicity_gap needs a register of exactly A, B, C"));
    }
    monotonicity_gap_labeled(rho, &[Label::A], &[Label::B], &[Label::C], xi)
}

/// `S^ξ_R(a:bc) − S^ξ_R(a:b)` where `ρ_{abc}` is the reduction of `rho`.
pub fn monotonicity_gap_labeled(rho: &DensityMatrix, a: &[Label], b: &[Label], c: &[Label], xi: f64) -> Result<f64> {
    GapProfile::new(rho, a, b, c)?.gap(xi)
}

/// The two reflected spectra behind the monotonicity gap, computed once so
/// that many Renyi indices are cheap.
#[derive(Debug, Clone)]
pub struct GapProfile {
    wide: Vec<f64>,
    narrow: Vec<f64>,
}

impl GapProfile {
    pub fn new(rho: &DensityMatrix, a: &[Label], b: &[Label], c: &[Label]) -> Result<Self> {
        let bc: Vec<Label> = b.iter().chain(c).cloned().collect();
        let abc: Vec<Label> = a.iter().chain(&bc).cloned().collect();
        let ab: Vec<Label> = a.iter().chain(b).cloned().collect();
        let whole = if abc.len() == rho.register().len() {
            rho.register().positions(&abc)?;
            rho.clone()
        } else {
            rho.partial_trace(&abc)?
        };
        let wide = reflected_spectrum(&whole, &Bipartition::new(a.to_vec(), bc)?)?;
        let narrow = reflected_spectrum(&whole.partial_trace(&ab)?, &Bipartition::new(a.to_vec(), b.to_vec())?)?;
        Ok(Self { wide, narrow })
    }

    pub fn gap(&self, xi: f64) -> Result<f64> {
        Ok(renyi_bits(&self.wide, xi)? - renyi_bits(&self.narrow, xi)?)
    }
}

/// `S^ξ_R(A:BB̄) − S^ξ_R(A:B)` for an accelerated family, with C (if any)
/// traced out first.
pub fn family_monotonicity_gap(family: &StateFamily, r: f64, xi: f64) -> Result<f64> {
    family_gap_profile(family, r)?.gap(xi)
}

pub fn family_gap_profile(family: &StateFamily, r: f64) -> Result<GapProfile> {
    let sel = PairSelector::new(vec![Label::A], vec![Label::B, Label::Bbar])?;
    let rho = reduced_state(family, r, &sel)?;
    GapProfile::new(&rho, &[Label::A], &[Label::B], &[Label::Bbar])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub xi: f64,
    pub gap: f64,
    pub params: CounterexampleParams,
}

/// Gap over `xi_grid` for the default reading, in grid order.
pub fn scan_xi(p: &CounterexampleParams, xi_grid: &[f64]) -> Result<Vec<ScanRecord>> {
    scan_xi_with(p, Reading::default(), xi_grid)
}

pub fn scan_xi_with(p: &CounterexampleParams, reading: Reading, xi_grid: &[f64]) -> Result<Vec<ScanRecord>> {
    if let Some(&bad) = xi_grid.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(Error::arg(format!("Renyi index must be finite and > 0, got {bad}")));
    }
    let rho = build_counterexample_with(p, reading)?;
    let profile = GapProfile::new(&rho, &[Label::A], &[Label::B], &[Label::C])?;
    xi_grid
        .par_iter()
        .map(|&xi| Ok(ScanRecord { xi, gap: profile.gap(xi)?, params: *p }))
        .collect()
}

/// Smallest gap in a scan and where it occurs.
pub fn minimum(records: &[ScanRecord]) -> Option<&ScanRecord> {
    records.iter().min_by(|x, y| x.gap.total_cmp(&y.gap))
}

/// Right edge of the last negative run: the zero crossing after the last
/// negative record, interpolated linearly, or the last grid point if the
/// scan ends negative. `None` without violations. Records must be sorted by ξ.
pub fn violation_right_edge(records: &[ScanRecord]) -> Option<f64> {
    let last = records.iter().rposition(|r| r.gap < 0.0)?;
    match records.get(last + 1) {
        None => Some(records[last].xi),
        Some(next) => {
            let cur = &records[last];
            let t = cur.gap / (cur.gap - next.gap);
            Some(cur.xi + t * (next.xi - cur.xi))
        }
    }
}

/// Outcome of one reading, for reports that compare all of them.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadingOutcome {
    pub reading: Reading,
    /// `(ξ, gap)` at the minimum, or the construction error.
    pub minimum: Result<(f64, f64)>,
}

pub fn compare_readings(p: &CounterexampleParams, xi_grid: &[f64]) -> Vec<ReadingOutcome> {
    Reading::ALL
        .iter()
        .map(|&reading| ReadingOutcome {
            reading,
            minimum: scan_xi_with(p, reading, xi_grid).map(|recs| {
                let m = minimum(&recs).expect("non-empty grid");
                (m.xi, m.gap)
            }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::renyi_reflected_entropy;
    use crate::rindler::{FamilyKind, R_MAX};
    use crate::state::PureState;

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|i| 0.01 + 1.98 * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn params_validation() {
        assert!(CounterexampleParams::new(1, 2, 1.0, 1.0).is_err());
        assert!(CounterexampleParams::new(2, 1, 1.0, 1.0).is_err());
        assert!(CounterexampleParams::new(2, 2, 0.0, 0.0).is_err());
        assert!(CounterexampleParams::new(2, 2, -1.0, 1.0).is_err());
        assert!(CounterexampleParams::new(3, 2, 0.0, 1.0).is_ok());
    }

    #[test]
    fn trace_matches_closed_prefactor() {
        for (n, m) in [(3, 2), (2, 2), (4, 3)] {
            let p = CounterexampleParams::new(n, m, 0.7, 0.3).unwrap();
            let expect = 2.0 * n as f64 * 0.7 + 2.0 * (m as f64 - 1.0) * 0.3;
            assert!((assemble(&p, Reading::Diagonal).unwrap().trace().re - expect).abs() < 1e-12);
        }
        // For (3,2) the normalisation is 1/(6a + 2b).
        let p = CounterexampleParams::new(3, 2, 1.5, 0.5).unwrap();
        assert!((assemble(&p, Reading::Diagonal).unwrap().trace().re - (6.0 * 1.5 + 2.0 * 0.5)).abs() < 1e-12);
    }

    #[test]
    fn symmetrized_reading_is_not_a_state() {
        for a in [0.1, 0.5, 1.5] {
            let p = CounterexampleParams::new(3, 2, a, 0.5).unwrap();
            let err = build_counterexample_with(&p, Reading::Symmetrized).unwrap_err();
            assert!(matches!(err, Error::NotPsd { .. }));
        }
        let only_b = CounterexampleParams::new(3, 2, 0.0, 1.0).unwrap();
        let rho = build_counterexample_with(&only_b, Reading::Symmetrized).unwrap();
        assert_eq!(rho.dim(), 24);
    }

    #[test]
    fn a_zero_is_classical_two_block_state() {
        let p = CounterexampleParams::new(3, 2, 0.0, 0.5).unwrap();
        for reading in Reading::ALL {
            let rho = build_counterexample_with(&p, reading).unwrap();
            let m = rho.matrix();
            let nonzero: Vec<usize> = (0..24).filter(|&i| m[(i, i)].re > 0.0).collect();
            // |020⟩ and |121⟩.
            assert_eq!(nonzero, vec![4, 11]);
            assert!((m[(4, 4)].re - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn violates_when_a_exceeds_b() {
        for (n, m) in [(3, 2), (2, 2)] {
            let p = CounterexampleParams::new(n, m, 1.5, 0.5).unwrap();
            let recs = scan_xi(&p, &grid(200)).unwrap();
            let min = minimum(&recs).unwrap();
            assert!(min.gap < -1e-2, "({n},{m}): {}", min.gap);
            assert!(min.xi > 0.0 && min.xi < 2.0);
        }
    }

    #[test]
    fn no_violation_at_or_below_threshold() {
        for a in [0.25, 0.45, 0.5] {
            let p = CounterexampleParams::new(3, 2, a, 0.5).unwrap();
            let recs = scan_xi(&p, &grid(200)).unwrap();
            assert!(minimum(&recs).unwrap().gap >= 0.0, "a = {a}");
            assert!(violation_right_edge(&recs).is_none());
        }
        // Just above a = b the gap is negative near ξ = 0.
        let p = CounterexampleParams::new(3, 2, 0.55, 0.5).unwrap();
        assert!(monotonicity_gap(&build_counterexample(&p).unwrap(), 0.01).unwrap() < 0.0);
    }

    #[test]
    fn right_edge_moves_towards_two() {
        let mut last = 0.0;
        for ratio in [1.5, 2.0, 3.0, 4.0, 6.0, 10.0, 20.0] {
            let p = CounterexampleParams::new(3, 2, 0.5 * ratio, 0.5).unwrap();
            let recs = scan_xi(&p, &grid(400)).unwrap();
            let edge = violation_right_edge(&recs).unwrap();
            assert!(edge >= last, "ratio {ratio}: {edge} < {last}");
            assert!(edge < 2.0);
            last = edge;
        }
        assert!(last > 1.9);
    }

    #[test]
    fn scaling_invariance() {
        let p = CounterexampleParams::new(3, 2, 1.5, 0.5).unwrap();
        let q = CounterexampleParams::new(3, 2, 1.5 * 7.3, 0.5 * 7.3).unwrap();
        let x = build_counterexample(&p).unwrap();
        let y = build_counterexample(&q).unwrap();
        assert!(x.matrix().approx_eq(y.matrix(), 1e-12));
    }

    #[test]
    fn gap_matches_direct_definition() {
        let p = CounterexampleParams::new(2, 2, 1.5, 0.5).unwrap();
        let rho = build_counterexample(&p).unwrap();
        for xi in [0.3, 1.0, 1.6] {
            let wide = renyi_reflected_entropy(&rho, &Bipartition::new(vec![Label::A], vec![Label::B, Label::C]).unwrap(), xi)
                .unwrap();
            let ab = rho.partial_trace(&[Label::A, Label::B]).unwrap();
            let narrow = renyi_reflected_entropy(&ab, &Bipartition::pair(Label::A, Label::B).unwrap(), xi).unwrap();
            assert!((monotonicity_gap(&rho, xi).unwrap() - (wide - narrow)).abs() < 1e-12);
        }
    }

    #[test]
    fn product_state_gap_vanishes() {
        let q = |p: f64, l: Label| {
            DensityMatrix::new(ComplexMatrix::from_diag(&[p, 1.0 - p]), QRegister::qubits(&[l]).unwrap()).unwrap()
        };
        let rho = q(0.3, Label::A).tensor(&q(0.8, Label::B)).unwrap().tensor(&q(0.45, Label::C)).unwrap();
        for xi in [0.2, 1.0, 1.9] {
            assert!(monotonicity_gap(&rho, xi).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn gap_requires_abc_register() {
        let psi = PureState::from_terms(QRegister::qubits(&[Label::A, Label::B]).unwrap(), &[(&[0, 0], 1.0)]).unwrap();
        assert!(monotonicity_gap(&psi.projector(), 1.0).is_err());
    }

    #[test]
    fn physical_families_are_monotone() {
        for kind in FamilyKind::ALL {
            let fam = StateFamily::maximal(kind);
            for r in [R_MAX / 4.0, R_MAX / 2.0, R_MAX] {
                let prof = family_gap_profile(&fam, r).unwrap();
                for xi in [0.1, 0.5, 1.0, 1.5, 1.99] {
                    assert!(prof.gap(xi).unwrap() >= -1e-10);
                }
            }
        }
        let bell = StateFamily::maximal(FamilyKind::Bell);
        assert!(family_monotonicity_gap(&bell, 0.3, 1.0).unwrap() >= 0.0);
    }

    #[test]
    fn compare_reports_every_reading() {
        let p = CounterexampleParams::new(3, 2, 1.5, 0.5).unwrap();
        let out = compare_readings(&p, &grid(50));
        assert_eq!(out.len(), 2);
        assert!(out[0].minimum.as_ref().unwrap().1 < 0.0);
        assert!(matches!(out[1].minimum, Err(Error::NotPsd { .. })));
    }

    #[test]
    fn right_edge_interpolates() {
        let p = CounterexampleParams::new(2, 2, 1.0, 1.0).unwrap();
        let mk = |xi, gap| ScanRecord { xi, gap, params: p };
        let recs = [mk(0.5, -1.0), mk(1.0, -1.0), mk(1.5, 1.0)];
        assert!((violation_right_edge(&recs).unwrap() - 1.25).abs() < 1e-15);
        assert_eq!(violation_right_edge(&recs[..2]), Some(1.0));
    }
}
