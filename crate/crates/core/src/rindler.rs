//! Inertial Bell, W and GHZ states seen by a uniformly accelerating Bob.
//!
//! Bob's Minkowski mode is mapped into the Rindler pair (B, B̄) by the
//! single-mode fermionic isometry `|0⟩ → cos r|00⟩ + sin r|11⟩`,
//! `|1⟩ → |10⟩`, with B̄ inserted immediately after B. Accelerated
//! registers are therefore A,B,B̄ (Bell) and A,B,B̄,C (W, GHZ).

pub mod closed_form;

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{bounds_report, reflected_entropy, Bipartition, MeasureReport};
use crate::error::{Error, Result};
use crate::register::{Label, QRegister};
use crate::state::{DensityMatrix, PureState};

/// Largest admissible acceleration parameter; `π/4` is infinite acceleration.
pub const R_MAX: f64 = FRAC_PI_4;

const R_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Bell,
    Werner,
    Ghz,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::Bell, FamilyKind::Werner, FamilyKind::Ghz];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Bell => "bell",
            FamilyKind::Werner => "werner",
            FamilyKind::Ghz => "ghz",
        }
    }

    /// Upper end of the admissible α range.
    pub fn alpha_max(self) -> f64 {
        match self {
            FamilyKind::Werner => std::f64::consts::FRAC_1_SQRT_2,
            _ => 1.0,
        }
    }

    /// The maximally entangled weight.
    pub fn default_alpha(self) -> f64 {
        match self {
            FamilyKind::Werner => 1.0 / 3f64.sqrt(),
            _ => std::f64::consts::FRAC_1_SQRT_2,
        }
    }

    pub fn inertial_labels(self) -> Vec<Label> {
        match self {
            FamilyKind::Bell => vec![Label::A, Label::B],
            _ => vec![Label::A, Label::B, Label::C],
        }
    }

    pub fn accelerated_labels(self) -> Vec<Label> {
        match self {
            FamilyKind::Bell => vec![Label::A, Label::B, Label::Bbar],
            _ => vec![Label::A, Label::B, Label::Bbar, Label::C],
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bell" => Ok(FamilyKind::Bell),
            "werner" | "w" => Ok(FamilyKind::Werner),
            "ghz" => Ok(FamilyKind::Ghz),
            _ => Err(Error::arg(format!("unknown state family `{s}` (expected bell, werner or ghz)"))),
        }
    }
}

/// A weighted Bell, W or GHZ state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateFamily {
    kind: FamilyKind,
    alpha: f64,
}

impl StateFamily {
    /// α must lie in `[0, 1]` (Bell, GHZ) or `[0, 1/√2]` (W).
    pub fn new(kind: FamilyKind, alpha: f64) -> Result<Self> {
        let hi = kind.alpha_max();
        if !(0.0..=hi + 1e-15).contains(&alpha) {
            return Err(Error::arg(format!("alpha {alpha} outside [0, {hi}] for the {kind} family")));
        }
        Ok(Self { kind, alpha: alpha.min(hi) })
    }

    pub fn maximal(kind: FamilyKind) -> Self {
        Self { kind, alpha: kind.default_alpha() }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Kinematics of one Rindler mode (ℏ = k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccelerationParams {
    pub r: f64,
    pub omega: f64,
    pub temperature: f64,
    pub acceleration: f64,
}

impl AccelerationParams {
    pub fn from_temperature(omega: f64, temperature: f64) -> Result<Self> {
        let r = acceleration_parameter(omega, temperature)?;
        Ok(Self { r, omega, temperature, acceleration: 2.0 * std::f64::consts::PI * temperature })
    }

    pub fn from_acceleration(omega: f64, acceleration: f64) -> Result<Self> {
        positive("acceleration", acceleration)?;
        Self::from_temperature(omega, acceleration / (2.0 * std::f64::consts::PI))
    }

    pub fn occupancy(&self) -> f64 {
        1.0 / (1.0 + (self.omega / self.temperature).exp())
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::arg(format!("{name} must be finite and > 0, got {v}")))
    }
}

/// `r = arctan(e^{-ω/2T})`.
pub fn acceleration_parameter(omega: f64, temperature: f64) -> Result<f64> {
    positive("omega", omega)?;
    positive("temperature", temperature)?;
    Ok((-omega / (2.0 * temperature)).exp().atan())
}

/// Fermi-Dirac occupancy `1/(1 + e^{ω/T})` seen by Bob's detector.
pub fn unruh_occupancy(omega: f64, temperature: f64) -> Result<f64> {
    positive("omega", omega)?;
    positive("temperature", temperature)?;
    Ok(1.0 / (1.0 + (omega / temperature).exp()))
}

pub fn build_inertial(family: &StateFamily) -> PureState {
    let a = family.alpha;
    let reg = QRegister::qubits(&family.kind.inertial_labels()).unwrap();
    let terms: Vec<(&[usize], f64)> = match family.kind {
        FamilyKind::Bell => vec![(&[0, 0], a), (&[1, 1], (1.0 - a * a).max(0.0).sqrt())],
        FamilyKind::Werner => {
            vec![(&[1, 0, 0], a), (&[0, 0, 1], a), (&[0, 1, 0], (1.0 - 2.0 * a * a).max(0.0).sqrt())]
        }
        FamilyKind::Ghz => vec![(&[0, 0, 0], a), (&[1, 1, 1], (1.0 - a * a).max(0.0).sqrt())],
    };
    PureState::from_terms(reg, &terms).expect("family weights are normalised")
}

/// The two amplitudes of `|0⟩_B → c|00⟩ + s|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovMap {
    pub cos: f64,
    pub sin: f64,
}

impl BogoliubovMap {
    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..=R_MAX + R_SLACK).contains(&r) {
            return Err(Error::arg(format!("acceleration parameter r = {r} outside [0, pi/4]")));
        }
        Ok(Self { cos: r.cos(), sin: r.sin() })
    }

    /// Same map with the two amplitudes exchanged. Only useful for
    /// checking that the verification suite notices the fault.
    pub fn swapped(self) -> Self {
        Self { cos: self.sin, sin: self.cos }
    }
}

pub fn accelerate_bob(psi: &PureState, r: f64) -> Result<PureState> {
    accelerate_bob_with(psi, BogoliubovMap::new(r)?)
}

pub fn accelerate_bob_with(psi: &PureState, map: BogoliubovMap) -> Result<PureState> {
    let reg = psi.register();
    let p = reg
        .position(&Label::B)
        .ok_or_else(|| Error::arg("state has no B factor to accelerate"))?;
    if reg.factors()[p].dim != 2 {
        return Err(Error::arg("the B factor must be a qubit"));
    }
    if reg.contains(&Label::Bbar) {
        return Err(Error::DuplicateLabel(Label::Bbar));
    }
    let mut factors: Vec<(Label, usize)> = reg.factors().iter().map(|f| (f.label.clone(), f.dim)).collect();
    factors.insert(p + 1, (Label::Bbar, 2));
    let out_reg = QRegister::new(factors)?;
    // Index of B in the old register splits into (high, b, low); the new
    // index is (high, b, b̄, low).
    let low: usize = reg.factors()[p + 1..].iter().map(|f| f.dim).product();
    let mut amps = vec![Complex64::new(0.0, 0.0); out_reg.dim()];
    for (i, &amp) in psi.amplitudes().iter().enumerate() {
        let lo = i % low;
        let b = (i / low) % 2;
        let hi = i / (2 * low);
        let at = |b: usize, bb: usize| ((hi * 2 + b) * 2 + bb) * low + lo;
        if b == 0 {
            amps[at(0, 0)] += amp * map.cos;
            amps[at(1, 1)] += amp * map.sin;
        } else {
            amps[at(1, 0)] += amp;
        }
    }
    PureState::new(amps, out_reg)
}

pub fn accelerated_state(family: &StateFamily, r: f64) -> Result<PureState> {
    accelerate_bob(&build_inertial(family), r)
}

/// A subsystem, or a bipartition of subsystems, of an accelerated register.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairSelector {
    left: Vec<Label>,
    /// Empty for a single subsystem.
    right: Vec<Label>,
}

impl PairSelector {
    pub fn new(left: Vec<Label>, right: Vec<Label>) -> Result<Self> {
        if left.is_empty() {
            return Err(Error::arg("empty selector"));
        }
        if !right.is_empty() {
            Bipartition::new(left.clone(), right.clone())?;
        }
        Ok(Self { left, right })
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Self { left: vec![a], right: vec![b] }
    }

    pub fn single(a: Label) -> Self {
        Self { left: vec![a], right: vec![] }
    }

    pub fn ab() -> Self {
        Self::pair(Label::A, Label::B)
    }

    pub fn a_bbar() -> Self {
        Self::pair(Label::A, Label::Bbar)
    }

    pub fn b_bbar() -> Self {
        Self::pair(Label::B, Label::Bbar)
    }

    pub fn left(&self) -> &[Label] {
        &self.left
    }

    pub fn right(&self) -> &[Label] {
        &self.right
    }

    pub fn is_single(&self) -> bool {
        self.right.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.left.iter().chain(&self.right).cloned().collect()
    }

    pub fn bipartition(&self) -> Result<Bipartition> {
        if self.is_single() {
            return Err(Error::arg(format!("selector `{self}` is a single subsystem, not a pair")));
        }
        Bipartition::new(self.left.clone(), self.right.clone())
    }

    /// Selectors for the bipartite measures of a family: AB, AB̄, BB̄ and,
    /// with C present, AC, BC, B̄C.
    pub fn pairs_for(kind: FamilyKind) -> Vec<Self> {
        let mut v = vec![Self::ab(), Self::a_bbar(), Self::b_bbar()];
        if kind != FamilyKind::Bell {
            v.push(Self::pair(Label::A, Label::C));
            v.push(Self::pair(Label::B, Label::C));
            v.push(Self::pair(Label::Bbar, Label::C));
        }
        v
    }

    fn check(&self, kind: FamilyKind) -> Result<()> {
        let known = kind.accelerated_labels();
        match self.labels().into_iter().find(|l| !known.contains(l)) {
            Some(l) => Err(Error::arg(format!("selector `{self}` uses `{l}`, absent from the {kind} register"))),
            None => Ok(()),
        }
    }
}

fn side_name(side: &[Label]) -> String {
    side.iter().map(|l| l.to_string()).collect()
}

impl fmt::Display for PairSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.left.len(), self.right.len()) {
            (_, 0) => f.write_str(&side_name(&self.left)),
            (1, 1) => write!(f, "{}{}", self.left[0], self.right[0]),
            _ => write!(f, "{}:{}", side_name(&self.left), side_name(&self.right)),
        }
    }
}

/// Splits e.g. `BbarC` into `[Bbar, C]`.
fn parse_side(s: &str) -> Result<Vec<Label>> {
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let (label, len) = if rest.starts_with("Bbar") {
            (Label::Bbar, 4)
        } else {
            match &rest[..1] {
                "A" => (Label::A, 1),
                "B" => (Label::B, 1),
                "C" => (Label::C, 1),
                _ => return Err(Error::arg(format!("cannot parse subsystem list `{s}`"))),
            }
        };
        out.push(label);
        rest = &rest[len..];
    }
    Ok(out)
}

impl FromStr for PairSelector {
    type Err = Error;

    /// Accepts `AB`, `ABbar`, `BbarC`, `A:BBbarC`, `A_BbarC` and singles such as `Bbar`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((l, r)) = s.split_once([':', '_']) {
            return Self::new(parse_side(l)?, parse_side(r)?);
        }
        let labels = parse_side(s)?;
        match labels.len() {
            1 => Ok(Self::single(labels[0].clone())),
            2 => Self::new(vec![labels[0].clone()], vec![labels[1].clone()]),
            _ => Err(Error::arg(format!("ambiguous selector `{s}`; separate the two sides with `:`"))),
        }
    }
}

/// Reduced state of the accelerated family on the selector's subsystems,
/// in register order.
pub fn reduced_state(family: &StateFamily, r: f64, sel: &PairSelector) -> Result<DensityMatrix> {
    sel.check(family.kind)?;
    reduce(&accelerated_state(family, r)?, sel)
}

fn reduce(psi: &PureState, sel: &PairSelector) -> Result<DensityMatrix> {
    let keep = sel.labels();
    if keep.len() == psi.register().len() {
        return Ok(psi.projector());
    }
    psi.reduced(&keep)
}

/// Entropies, `S_R`, `I`, `h` and bounds for a pair selector.
pub fn measure(family: &StateFamily, r: f64, sel: &PairSelector) -> Result<MeasureReport> {
    let part = sel.bipartition()?;
    bounds_report(&reduced_state(family, r, sel)?, &part)
}

pub fn reflected_entropy_at(family: &StateFamily, r: f64, sel: &PairSelector) -> Result<f64> {
    let part = sel.bipartition()?;
    reflected_entropy(&reduced_state(family, r, sel)?, &part)
}

/// One point of an r-sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RPoint {
    pub r: f64,
    pub report: MeasureReport,
}

/// Evaluates `sel` over `r_grid` in parallel; results come back sorted by r.
pub fn measure_sweep(family: &StateFamily, sel: &PairSelector, r_grid: &[f64]) -> Result<Vec<RPoint>> {
    let part = sel.bipartition()?;
    sel.check(family.kind)?;
    let mut out = r_grid
        .par_iter()
        .map(|&r| {
            let rho = reduced_state(family, r, sel)?;
            Ok(RPoint { r, report: bounds_report(&rho, &part)? })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.r.total_cmp(&b.r));
    Ok(out)
}

/// `σ(T) = (1/ω) ∂S_R(A:B)/∂(1/T)`, by a central difference in `u = 1/T`
/// with step `1e-4·u`.
pub fn sigma_function(family: &StateFamily, omega: f64, temperature: f64) -> Result<f64> {
    positive("omega", omega)?;
    positive("temperature", temperature)?;
    let u = 1.0 / temperature;
    let h = 1e-4 * u;
    let s = |u: f64| reflected_entropy_at(family, (-omega * u / 2.0).exp().atan(), &PairSelector::ab());
    Ok((s(u + h)? - s(u - h)?) / (2.0 * h) / omega)
}

/// Bell: `S_R(A:B) + S_R(A:B̄) − S_R(A:BB̄)`;
/// W, GHZ: `S_R(A:B) + S_R(A:B̄C) − S_R(A:BB̄C)`.
pub fn polygamy_gap(family: &StateFamily, r: f64) -> Result<f64> {
    let psi = accelerated_state(family, r)?;
    let sr = |sel: PairSelector| -> Result<f64> { reflected_entropy(&reduce(&psi, &sel)?, &sel.bipartition()?) };
    let (second, whole) = match family.kind {
        FamilyKind::Bell => (vec![Label::Bbar], vec![Label::B, Label::Bbar]),
        _ => (vec![Label::Bbar, Label::C], vec![Label::B, Label::Bbar, Label::C]),
    };
    Ok(sr(PairSelector::ab())? + sr(PairSelector::new(vec![Label::A], second)?)?
        - sr(PairSelector::new(vec![Label::A], whole)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{mutual_information, von_neumann_entropy};
    use crate::linalg::ComplexMatrix;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> StateFamily {
        StateFamily::maximal(FamilyKind::Bell)
    }

    #[test]
    fn kinematics() {
        assert!((acceleration_parameter(1.0, 1e12).unwrap() - FRAC_PI_4).abs() < 1e-10);
        assert!(acceleration_parameter(1.0, 1e-3).unwrap() < 1e-100);
        assert!((acceleration_parameter(2.0, 1.0).unwrap() - 0.352513421777619).abs() < 1e-12);
        assert!((acceleration_parameter(2.0, 1.0).unwrap() - (-1f64).exp().atan()).abs() < 1e-15);
        assert!(acceleration_parameter(0.0, 1.0).is_err());
        assert!(acceleration_parameter(1.0, -1.0).is_err());

        assert!((unruh_occupancy(1.0, 1e12).unwrap() - 0.5).abs() < 1e-10);
        assert!(unruh_occupancy(1.0, 1e-3).unwrap() < 1e-100);
        assert!(unruh_occupancy(-1.0, 1.0).is_err());
        for (w, t) in [(1.0, 0.3), (10.0, 7.0), (2.5, 40.0)] {
            let r = acceleration_parameter(w, t).unwrap();
            assert!((unruh_occupancy(w, t).unwrap() - r.sin().powi(2)).abs() < 1e-14);
        }

        let p = AccelerationParams::from_acceleration(3.0, 2.0 * std::f64::consts::PI * 5.0).unwrap();
        assert!((p.temperature - 5.0).abs() < 1e-12);
        assert!((p.r - (-std::f64::consts::PI * 3.0 / p.acceleration).exp().atan()).abs() < 1e-15);
        assert!((p.occupancy() - unruh_occupancy(3.0, 5.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn family_ranges() {
        assert!(StateFamily::new(FamilyKind::Bell, 1.1).is_err());
        assert!(StateFamily::new(FamilyKind::Werner, 0.8).is_err());
        assert!(StateFamily::new(FamilyKind::Ghz, -0.1).is_err());
        assert!(StateFamily::new(FamilyKind::Werner, FRAC_1_SQRT_2).is_ok());
        assert_eq!("W".parse::<FamilyKind>().unwrap(), FamilyKind::Werner);
        assert!("qutrit".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn inertial_states() {
        let b = build_inertial(&bell());
        assert!((b.amplitude(&[0, 0]).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((b.amplitude(&[1, 1]).re - FRAC_1_SQRT_2).abs() < 1e-15);
        let w = build_inertial(&StateFamily::maximal(FamilyKind::Werner));
        for d in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            assert!((w.amplitude(&d).re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        let g = build_inertial(&StateFamily::new(FamilyKind::Ghz, 1.0).unwrap());
        assert!((g.amplitude(&[0, 0, 0]).re - 1.0).abs() < 1e-15);
        assert!(g.amplitude(&[1, 1, 1]).norm() < 1e-15);
    }

    #[test]
    fn accelerated_bell_terms() {
        let (a, r) = (0.6f64, 0.4f64);
        let fam = StateFamily::new(FamilyKind::Bell, a).unwrap();
        let psi = accelerated_state(&fam, r).unwrap();
        let labels: Vec<_> = psi.register().labels().cloned().collect();
        assert_eq!(labels, vec![Label::A, Label::B, Label::Bbar]);
        let expect = [([0, 0, 0], a * r.cos()), ([0, 1, 1], a * r.sin()), ([1, 1, 0], (1.0 - a * a).sqrt())];
        let mut total = 0.0;
        for (d, v) in expect {
            assert!((psi.amplitude(&d).re - v).abs() < 1e-15);
            total += v * v;
        }
        assert!((total - 1.0).abs() < 1e-12);
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn accelerated_werner_terms() {
        let (a, r) = (0.5f64, 0.3f64);
        let psi = accelerated_state(&StateFamily::new(FamilyKind::Werner, a).unwrap(), r).unwrap();
        let expect = [
            ([1, 0, 0, 0], a * r.cos()),
            ([1, 1, 1, 0], a * r.sin()),
            ([0, 0, 0, 1], a * r.cos()),
            ([0, 1, 1, 1], a * r.sin()),
            ([0, 1, 0, 0], (1.0 - 2.0 * a * a).sqrt()),
        ];
        let mut nonzero = 0;
        for z in psi.amplitudes() {
            if z.norm() > 1e-15 {
                nonzero += 1;
            }
        }
        assert_eq!(nonzero, 5);
        for (d, v) in expect {
            assert!((psi.amplitude(&d).re - v).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_acceleration_appends_vacuum() {
        let g = StateFamily::maximal(FamilyKind::Ghz);
        let psi = accelerated_state(&g, 0.0).unwrap();
        let inertial = build_inertial(&g);
        for (i, z) in inertial.amplitudes().iter().enumerate() {
            let digits = inertial.register().digits(i);
            let d = [digits[0], digits[1], 0, digits[2]];
            assert!((psi.amplitude(&d) - z).norm() < 1e-15);
        }
        assert!(accelerate_bob(&inertial, 1.0).is_err());
        let no_b = PureState::from_terms(QRegister::qubits(&[Label::A]).unwrap(), &[(&[0], 1.0)]).unwrap();
        assert!(accelerate_bob(&no_b, 0.1).is_err());
    }

    #[test]
    fn selector_parsing() {
        for s in ["AB", "ABbar", "BBbar", "BbarC", "A:BBbarC", "A:BbarC", "A", "Bbar"] {
            let sel: PairSelector = s.parse().unwrap();
            assert_eq!(sel.to_string(), s);
        }
        assert_eq!("A_BbarC".parse::<PairSelector>().unwrap().to_string(), "A:BbarC");
        assert_eq!("A:B".parse::<PairSelector>().unwrap(), PairSelector::ab());
        assert!("AA".parse::<PairSelector>().is_err());
        assert!("ABC".parse::<PairSelector>().is_err());
        assert!("AD".parse::<PairSelector>().is_err());
        assert!(reduced_state(&bell(), 0.1, &"AC".parse().unwrap()).is_err());
    }

    #[test]
    fn reduced_examples() {
        let (a, r) = (0.7f64, 0.5f64);
        let fam = StateFamily::new(FamilyKind::Bell, a).unwrap();
        let rb = reduced_state(&fam, r, &PairSelector::single(Label::B)).unwrap();
        let c2 = r.cos().powi(2);
        assert!(rb.matrix().approx_eq(&ComplexMatrix::from_diag(&[a * a * c2, 1.0 - a * a * c2]), 1e-12));
        let w = StateFamily::new(FamilyKind::Werner, 0.5).unwrap();
        let ra = reduced_state(&w, r, &PairSelector::single(Label::A)).unwrap();
        assert!(ra.matrix().approx_eq(&ComplexMatrix::from_diag(&[0.75, 0.25]), 1e-12));
        let g = StateFamily::maximal(FamilyKind::Ghz);
        let rab = reduced_state(&g, 0.0, &PairSelector::ab()).unwrap();
        assert!(rab.matrix().approx_eq(&ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5]), 1e-12));
    }

    #[test]
    fn sweep_examples() {
        let p = measure_sweep(&bell(), &PairSelector::ab(), &[0.0]).unwrap();
        assert!((p[0].report.reflected_entropy - 2.0).abs() < 1e-9);
        let ab = reflected_entropy_at(&bell(), R_MAX, &PairSelector::ab()).unwrap();
        let abb = reflected_entropy_at(&bell(), R_MAX, &PairSelector::a_bbar()).unwrap();
        assert!((ab - abb).abs() < 1e-9);
        let bb = measure_sweep(&bell(), &PairSelector::b_bbar(), &[0.0]).unwrap();
        assert!(bb[0].report.reflected_entropy.abs() < 1e-9);

        let grid = [0.5, 0.1, 0.3];
        let out = measure_sweep(&bell(), &PairSelector::ab(), &grid).unwrap();
        let rs: Vec<f64> = out.iter().map(|p| p.r).collect();
        assert_eq!(rs, vec![0.1, 0.3, 0.5]);
    }

    #[test]
    fn sigma_examples() {
        let w = 10.0;
        for fam in FamilyKind::ALL.map(StateFamily::maximal) {
            assert!(sigma_function(&fam, w, w / 50.0).unwrap().abs() < 1e-6);
            let a = sigma_function(&fam, 10.0, 1e7).unwrap();
            let b = sigma_function(&fam, 20.0, 1e7).unwrap();
            assert!((a - b).abs() < 1e-4, "{a} {b}");
        }
        assert!(sigma_function(&bell(), -1.0, 1.0).is_err());
        assert!(sigma_function(&bell(), 1.0, 0.0).is_err());
    }

    #[test]
    fn sigma_chain_rule() {
        // S_R depends on x = ω/T only, so σ = dS_R/dx.
        let fam = StateFamily::maximal(FamilyKind::Werner);
        let s = |x: f64| reflected_entropy_at(&fam, (-x / 2.0).exp().atan(), &PairSelector::ab()).unwrap();
        for (w, t) in [(10.0, 5.0), (20.0, 40.0), (30.0, 3.0)] {
            let x: f64 = w / t;
            let h = 1e-4 * x.max(1e-2);
            let dx = (s(x + h) - s(x - h)) / (2.0 * h);
            assert!((sigma_function(&fam, w, t).unwrap() - dx).abs() < 1e-5);
        }
    }

    #[test]
    fn polygamy_examples() {
        assert!(polygamy_gap(&bell(), 0.0).unwrap().abs() < 1e-9);
        let w = StateFamily::maximal(FamilyKind::Werner);
        assert!(polygamy_gap(&w, 0.0).unwrap() > polygamy_gap(&w, R_MAX).unwrap());
    }

    #[test]
    fn bell_rest_frame_saturates_bounds() {
        let rho = reduced_state(&bell(), 0.0, &PairSelector::ab()).unwrap();
        let part = PairSelector::ab().bipartition().unwrap();
        let i = mutual_information(&rho, &part).unwrap();
        assert!((i - 2.0).abs() < 1e-9);
        assert!(von_neumann_entropy(&rho).unwrap().abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn isometry_preserves_norm(alpha in 0.0f64..=1.0, r in 0.0f64..=FRAC_PI_4) {
            for kind in FamilyKind::ALL {
                let fam = StateFamily::new(kind, alpha.min(kind.alpha_max())).unwrap();
                let psi = accelerated_state(&fam, r).unwrap();
                prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }
}
