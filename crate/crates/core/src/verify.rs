//! Self-checks against known values, closed forms and the sign/bound
//! properties of the measures. Used by `refent verify`.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::counterexample::{compare_readings, family_gap_profile, minimum, scan_xi, CounterexampleParams};
use crate::entropy::{
    bounds_report, canonical_purification, conditional_mutual_information, markov_gap, reflected_density,
    reflected_entropy, Bipartition,
};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::random::random_density;
use crate::register::{Label, QRegister};
use crate::rindler::{
    accelerate_bob_with, build_inertial, closed_form, polygamy_gap, sigma_function, BogoliubovMap, FamilyKind,
    PairSelector, StateFamily, R_MAX,
};
use crate::state::DensityMatrix;
use crate::sweep::GridSpec;

/// Groups of checks selectable with `--scope`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scope {
    #[default]
    All,
    Values,
    ClosedForm,
    Bounds,
    Monotonicity,
    Counterexample,
    Sigma,
}

impl Scope {
    pub const NAMES: [&'static str; 7] = ["all", "values", "closed-form", "bounds", "monotonicity", "counterexample", "sigma"];

    fn includes(self, other: Scope) -> bool {
        self == Scope::All || self == other
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Scope::All,
            "values" => Scope::Values,
            "closed-form" | "closed" => Scope::ClosedForm,
            "bounds" => Scope::Bounds,
            "monotonicity" => Scope::Monotonicity,
            "counterexample" => Scope::Counterexample,
            "sigma" => Scope::Sigma,
            _ => return Err(Error::arg(format!("unknown scope `{s}` (expected one of {})", Self::NAMES.join(", ")))),
        })
    }
}

/// Deliberate faults, used to confirm that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Entropies reported in nats instead of bits.
    NaturalLog,
    /// `cos r` and `sin r` exchanged in Bob's isometry.
    SwappedBogoliubov,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural-log" => Ok(Fault::NaturalLog),
            "swap-bogoliubov" => Ok(Fault::SwappedBogoliubov),
            _ => Err(Error::arg(format!("unknown fault `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub scope: Scope,
    /// Replaces every check's tolerance.
    pub tol: Option<f64>,
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: expected {}, got {}, tolerance {:e}", self.name, self.expected, self.got, self.tolerance)
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Ctx {
    tol: Option<f64>,
    /// Multiplies every entropy; `ln 2` turns bits into nats.
    unit: f64,
    swap: bool,
    out: Vec<CheckResult>,
}

impl Ctx {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn map(&self, r: f64) -> Result<BogoliubovMap> {
        let m = BogoliubovMap::new(r)?;
        Ok(if self.swap { m.swapped() } else { m })
    }

    fn accelerated(&self, family: &StateFamily, r: f64) -> Result<crate::state::PureState> {
        accelerate_bob_with(&build_inertial(family), self.map(r)?)
    }

    fn reduced(&self, family: &StateFamily, r: f64, sel: &PairSelector) -> Result<DensityMatrix> {
        let psi = self.accelerated(family, r)?;
        let keep = sel.labels();
        if keep.len() == psi.register().len() {
            Ok(psi.projector())
        } else {
            psi.reduced(&keep)
        }
    }

    fn s_r(&self, rho: &DensityMatrix, part: &Bipartition) -> Result<f64> {
        Ok(self.unit * reflected_entropy(rho, part)?)
    }

    fn close(&mut self, name: &str, expected: f64, got: f64, default_tol: f64) {
        let tolerance = self.tol(default_tol);
        self.out.push(CheckResult {
            name: name.to_string(),
            expected: format!("{expected:.6}"),
            got: format!("{got:.6}"),
            tolerance,
            passed: (expected - got).abs() <= tolerance,
        });
    }

    /// `got >= -tol`, reporting the smallest value seen.
    fn nonnegative(&mut self, name: &str, worst: f64, default_tol: f64) {
        let tolerance = self.tol(default_tol);
        self.out.push(CheckResult {
            name: name.to_string(),
            expected: ">= 0".into(),
            got: format!("min {worst:.3e}"),
            tolerance,
            passed: worst >= -tolerance,
        });
    }

    /// Largest deviation must stay within tolerance.
    fn max_dev(&mut self, name: &str, worst: f64, default_tol: f64) {
        let tolerance = self.tol(default_tol);
        self.out.push(CheckResult {
            name: name.to_string(),
            expected: "deviation 0".into(),
            got: format!("max {worst:.3e}"),
            tolerance,
            passed: worst <= tolerance,
        });
    }

    fn error(&mut self, name: &str, e: Error) {
        self.out.push(CheckResult {
            name: name.to_string(),
            expected: "no error".into(),
            got: e.to_string(),
            tolerance: self.tol(0.0),
            passed: false,
        });
    }

    fn run(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            self.error(name, e);
        }
    }
}

/// `ρ₁ = (|00⟩⟨00| + 2|Ψ⁺⟩⟨Ψ⁺|)/3` and `ρ₂ = diag(1/3, 0, 0, 2/3)`, both with
/// spectrum `{2/3, 1/3}`.
pub fn isospectral_pair() -> (DensityMatrix, DensityMatrix) {
    let reg = QRegister::qubits(&[Label::A, Label::B]).unwrap();
    let m1 = ComplexMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
    .scale(1.0 / 3.0);
    let m2 = ComplexMatrix::from_diag(&[1.0 / 3.0, 0.0, 0.0, 2.0 / 3.0]);
    (DensityMatrix::new(m1, reg.clone()).unwrap(), DensityMatrix::new(m2, reg).unwrap())
}

pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let mut cx = Ctx {
        tol: opts.tol,
        unit: if opts.fault == Some(Fault::NaturalLog) { LN_2 } else { 1.0 },
        swap: opts.fault == Some(Fault::SwappedBogoliubov),
        out: Vec::new(),
    };
    let s = opts.scope;
    if s.includes(Scope::Values) {
        reference_values(&mut cx);
    }
    if s.includes(Scope::ClosedForm) {
        closed_forms(&mut cx);
    }
    if s.includes(Scope::Bounds) {
        bounds(&mut cx);
    }
    if s.includes(Scope::Monotonicity) {
        monotonicity(&mut cx);
    }
    if s.includes(Scope::Counterexample) {
        counterexample(&mut cx);
    }
    if s.includes(Scope::Sigma) {
        sigma(&mut cx);
    }
    VerifyReport { checks: cx.out }
}

fn reference_values(cx: &mut Ctx) {
    let (r1, r2) = isospectral_pair();
    let ab = Bipartition::pair(Label::A, Label::B).unwrap();
    cx.run("isospectral.S_R(rho1)", |cx| {
        let v = cx.s_r(&r1, &ab)?;
        cx.close("isospectral.S_R(rho1)", 1.49, v, 0.01);
        Ok(())
    });
    cx.run("isospectral.S_R(rho2)", |cx| {
        let v = cx.s_r(&r2, &ab)?;
        cx.close("isospectral.S_R(rho2)", 0.92, v, 0.01);
        Ok(())
    });
    cx.run("isospectral.spectra", |cx| {
        let (e1, e2) = (r1.eigenvalues()?, r2.eigenvalues()?);
        let worst = e1.iter().zip(&e2).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        cx.max_dev("isospectral.spectra", worst, 1e-12);
        Ok(())
    });
    cx.run("bell.rest_frame", |cx| {
        let fam = StateFamily::maximal(FamilyKind::Bell);
        let rho = cx.reduced(&fam, 0.0, &PairSelector::ab())?;
        let rep = bounds_report(&rho, &ab)?;
        cx.close("bell.rest_frame.S_R", 2.0, cx.unit * rep.reflected_entropy, 1e-9);
        cx.close("bell.rest_frame.I", 2.0, cx.unit * rep.mutual_information, 1e-9);
        cx.close("bell.rest_frame.upper_bound", 2.0, cx.unit * rep.bound_upper, 1e-9);
        cx.close("bell.rest_frame.h", 0.0, cx.unit * rep.markov_gap, 1e-9);
        Ok(())
    });
    cx.run("endpoint.S_R(A:B)=S_R(A:Bbar)", |cx| {
        let mut worst: f64 = 0.0;
        for kind in FamilyKind::ALL {
            let fam = StateFamily::maximal(kind);
            let x = cx.s_r(&cx.reduced(&fam, R_MAX, &PairSelector::ab())?, &PairSelector::ab().bipartition()?)?;
            let y = cx.s_r(&cx.reduced(&fam, R_MAX, &PairSelector::a_bbar())?, &PairSelector::a_bbar().bipartition()?)?;
            worst = worst.max((x - y).abs());
        }
        cx.max_dev("endpoint.S_R(A:B)=S_R(A:Bbar)", worst, 1e-9);
        Ok(())
    });
}

fn closed_forms(cx: &mut Ctx) {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    cx.run("closed_form.reduced", |cx| {
        let mut worst: f64 = 0.0;
        let labels = ["AB", "ABbar", "BBbar", "A", "B", "Bbar"];
        for kind in FamilyKind::ALL {
            for _ in 0..20 {
                let alpha = rng.random_range(0.01..0.99) * kind.alpha_max();
                let r = rng.random_range(0.0..R_MAX);
                let fam = StateFamily::new(kind, alpha)?;
                for l in labels {
                    let sel: PairSelector = l.parse()?;
                    let num = cx.reduced(&fam, r, &sel)?;
                    let closed = closed_form::reduced(&fam, r, &sel).expect("tabulated selector");
                    worst = worst.max(num.matrix().max_abs_diff(&closed));
                }
            }
        }
        cx.max_dev("closed_form.reduced", worst, 1e-10);
        Ok(())
    });
    cx.run("closed_form.bell_purified", |cx| {
        let mut worst: f64 = 0.0;
        let mut points = vec![(FRAC_1_SQRT_2, 0.0)];
        for _ in 0..9 {
            points.push((rng.random_range(0.05..0.95), rng.random_range(0.01..R_MAX)));
        }
        for (alpha, r) in points {
            let fam = StateFamily::new(FamilyKind::Bell, alpha)?;
            let cases = [
                (PairSelector::ab(), closed_form::bell_rho_aa_star(alpha, r)),
                (PairSelector::a_bbar(), closed_form::bell_rho_aa_bar_star(alpha, r)),
                (PairSelector::b_bbar(), closed_form::bell_rho_bb_star(alpha, r)),
            ];
            for (sel, closed) in cases {
                let rho = cx.reduced(&fam, r, &sel)?;
                let num = reflected_density(&rho, &sel.bipartition()?)?;
                worst = worst.max(num.matrix().max_abs_diff(&closed));
            }
        }
        cx.max_dev("closed_form.bell_purified", worst, 1e-10);
        Ok(())
    });
}

fn random_two_qubit(rng: &mut StdRng) -> DensityMatrix {
    let reg = QRegister::qubits(&[Label::A, Label::B]).unwrap();
    let rank = rng.random_range(1..=4);
    random_density(rng, &reg, rank)
}

fn bounds(cx: &mut Ctx) {
    let grid = GridSpec::new(0.0, R_MAX, 50).unwrap().linspace();
    cx.run("bounds.families", |cx| {
        let (mut slack, mut h_min, mut poly_min) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        for kind in FamilyKind::ALL {
            let fam = StateFamily::maximal(kind);
            for &r in &grid {
                for sel in PairSelector::pairs_for(kind) {
                    let rho = cx.reduced(&fam, r, &sel)?;
                    let rep = raw_report(&rho, &sel.bipartition()?)?;
                    slack = slack
                        .min(rep.bound_upper - rep.reflected_entropy)
                        .min(rep.reflected_entropy - rep.bound_lower);
                    h_min = h_min.min(rep.markov_gap);
                }
                poly_min = poly_min.min(polygamy_gap(&fam, r)?);
            }
        }
        cx.nonnegative("bounds.families.I<=S_R<=2min(S)", slack, 1e-9);
        cx.nonnegative("bounds.families.h", h_min, 1e-9);
        cx.nonnegative("bounds.families.polygamy", poly_min, 1e-9);
        Ok(())
    });
    cx.run("bounds.random", |cx| {
        let mut rng = StdRng::seed_from_u64(0xb0_u64);
        let ab = Bipartition::pair(Label::A, Label::B)?;
        let (mut slack, mut h_min) = (f64::INFINITY, f64::INFINITY);
        for _ in 0..1000 {
            let rho = random_two_qubit(&mut rng);
            let rep = raw_report(&rho, &ab)?;
            slack = slack.min(rep.bound_upper - rep.reflected_entropy).min(rep.reflected_entropy - rep.bound_lower);
            h_min = h_min.min(rep.markov_gap);
        }
        cx.nonnegative("bounds.random.I<=S_R<=2min(S)", slack, 1e-9);
        cx.nonnegative("bounds.random.h", h_min, 1e-9);
        Ok(())
    });
    cx.run("purification", |cx| {
        let mut rng = StdRng::seed_from_u64(0x9u64);
        let ab = Bipartition::pair(Label::A, Label::B)?;
        let (mut round, mut cmi) = (0.0f64, 0.0f64);
        for _ in 0..100 {
            let rho = random_two_qubit(&mut rng);
            let pur = canonical_purification(&rho, &ab)?;
            let back = pur.reduced(&[Label::A, Label::B])?;
            round = round.max(back.matrix().max_abs_diff(rho.matrix()));
            let h = cx.unit * markov_gap(&rho, &ab)?;
            let i = conditional_mutual_information(&pur.projector(), &[Label::A], &[Label::Bstar], &[Label::B])?;
            cmi = cmi.max((h - i).abs());
        }
        cx.max_dev("purification.roundtrip", round, 1e-9);
        cx.max_dev("purification.h=I(A:B*|B)", cmi, 1e-8);
        Ok(())
    });
}

/// Like `bounds_report`, but reports violations instead of refusing them.
fn raw_report(rho: &DensityMatrix, part: &Bipartition) -> Result<crate::entropy::MeasureReport> {
    use crate::entropy::{subsystem_entropy, von_neumann_entropy};
    let s_left = subsystem_entropy(rho, part.left())?;
    let s_right = subsystem_entropy(rho, part.right())?;
    let mi = s_left + s_right - von_neumann_entropy(rho)?;
    let sr = reflected_entropy(rho, part)?;
    Ok(crate::entropy::MeasureReport {
        s_left,
        s_right,
        s_joint: s_left + s_right - mi,
        mutual_information: mi,
        reflected_entropy: sr,
        markov_gap: sr - mi,
        bound_upper: 2.0 * s_left.min(s_right),
        bound_lower: mi,
    })
}

fn monotonicity(cx: &mut Ctx) {
    cx.run("monotonicity.physical", |cx| {
        let rs = GridSpec::new(0.0, R_MAX, 20)?.linspace();
        let xis: Vec<f64> = (1..=20).map(|i| i as f64 * 0.1).collect();
        let mut worst = f64::INFINITY;
        for kind in FamilyKind::ALL {
            let fam = StateFamily::maximal(kind);
            for &r in &rs {
                let prof = family_gap_profile(&fam, r)?;
                for &xi in &xis {
                    worst = worst.min(prof.gap(xi)?);
                }
            }
        }
        cx.nonnegative("monotonicity.physical", worst, 1e-10);
        Ok(())
    });
}

fn counterexample(cx: &mut Ctx) {
    let grid = GridSpec::new(0.01, 1.99, 200).unwrap().linspace();
    for (n, m) in [(3, 2), (2, 2)] {
        let name = format!("counterexample.({n},{m},1.5,0.5).violation");
        cx.run(&name, |cx| {
            let p = CounterexampleParams::new(n, m, 1.5, 0.5)?;
            match scan_xi(&p, &grid) {
                Ok(recs) => {
                    let min = minimum(&recs).expect("non-empty grid");
                    let tolerance = cx.tol(0.0);
                    cx.out.push(CheckResult {
                        name: name.clone(),
                        expected: "< 0".into(),
                        got: format!("{:.6} at xi = {:.3}", min.gap, min.xi),
                        tolerance,
                        passed: min.gap < -tolerance,
                    });
                }
                Err(e) => {
                    let readings: Vec<String> = compare_readings(&p, &grid)
                        .into_iter()
                        .map(|o| match o.minimum {
                            Ok((xi, gap)) => format!("{}: min {gap:.6} at xi = {xi:.3}", o.reading),
                            Err(e) => format!("{}: {e}", o.reading),
                        })
                        .collect();
                    cx.error(&name, Error::arg(format!("{e}; readings: {}", readings.join("; "))));
                }
            }
            Ok(())
        });
    }
}

fn sigma(cx: &mut Ctx) {
    cx.run("sigma", |cx| {
        let (mut low, mut spread) = (0.0f64, 0.0f64);
        for kind in FamilyKind::ALL {
            let fam = StateFamily::maximal(kind);
            for omega in [10.0, 20.0, 30.0, 40.0] {
                low = low.max(sigma_function(&fam, omega, omega / 50.0)?.abs());
            }
            let a = sigma_function(&fam, 10.0, 1e6)?;
            let b = sigma_function(&fam, 40.0, 1e6)?;
            spread = spread.max((a - b).abs());
        }
        cx.max_dev("sigma.low_temperature", low, 1e-6);
        cx.max_dev("sigma.plateau_omega_independent", spread, 1e-3);
        Ok(())
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_build_passes() {
        let rep = run(&VerifyOptions::default());
        for c in &rep.checks {
            assert!(c.passed, "{c}");
        }
        assert!(rep.checks.len() >= 15);
    }

    #[test]
    fn natural_log_is_caught() {
        let rep = run(&VerifyOptions { scope: Scope::Values, fault: Some(Fault::NaturalLog), ..Default::default() });
        let c = rep.checks.iter().find(|c| c.name == "isospectral.S_R(rho2)").unwrap();
        assert!(!c.passed);
        assert!(c.got.starts_with("0.63"), "{}", c.got);
    }

    #[test]
    fn swapped_bogoliubov_is_caught() {
        let rep =
            run(&VerifyOptions { scope: Scope::ClosedForm, fault: Some(Fault::SwappedBogoliubov), ..Default::default() });
        assert!(rep.failures().any(|c| c.name == "closed_form.reduced"));
    }

    #[test]
    fn tolerance_override_applies_everywhere() {
        let rep = run(&VerifyOptions { scope: Scope::Values, tol: Some(1e-30), ..Default::default() });
        assert!(rep.checks.iter().all(|c| c.tolerance == 1e-30));
        assert!(!rep.passed());
    }

    #[test]
    fn scope_parsing() {
        for name in Scope::NAMES {
            assert!(name.parse::<Scope>().is_ok());
        }
        assert!("everything".parse::<Scope>().is_err());
    }
}
