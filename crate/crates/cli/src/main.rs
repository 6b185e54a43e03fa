mod args;
mod format;
mod grid;

use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use refent_core::counterexample::{self, CounterexampleParams, Reading, ScanRecord};
use refent_core::rindler::{sigma_function, FamilyKind, PairSelector, StateFamily};
use refent_core::verify::{self, Fault, Scope, VerifyOptions};
use refent_core::{sweep, Error, Result, SweepAxis, SweepRecord};

use args::{Cli, Command, CounterexampleArgs, SigmaArgs, SweepArgs, Variable, VerifyArgs};
use format::{g12, write_records, CsvRow};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Sweep(a) => run_sweep(a),
        Command::Counterexample(a) => run_counterexample(a),
        Command::Sigma(a) => run_sigma(a),
        Command::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

enum Failure {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<ExitCode, Failure>;

impl CsvRow for SweepRecord {
    fn header() -> &'static [&'static str] {
        &SweepRecord::HEADER
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            g12(self.alpha),
            self.variable.clone(),
            g12(self.value),
            self.pair.clone(),
            g12(self.s_r),
            g12(self.i),
            g12(self.h),
            g12(self.bound_lo),
            g12(self.bound_hi),
        ]
    }
}

fn run_sweep(a: SweepArgs) -> Outcome {
    let kind: FamilyKind = a.state.parse()?;
    let selectors = a.pairs.iter().map(|s| s.parse()).collect::<Result<Vec<PairSelector>>>()?;
    let range = a.range.as_deref();
    let (axis, values) = match a.variable {
        Variable::R => {
            let g = grid::parse_grid(range.unwrap_or("0:pi/4:50"))?;
            (SweepAxis::R, g.linspace())
        }
        Variable::T => {
            let omega = a.omega.ok_or_else(|| Error::Argument("--var T needs --omega".into()))?;
            if !(omega > 0.0 && omega.is_finite()) {
                return Err(Error::Argument(format!("--omega must be > 0, got {omega}")).into());
            }
            let g = grid::parse_grid(range.unwrap_or("0.1:1000:100"))?;
            (SweepAxis::Temperature { omega }, g.logspace()?)
        }
        Variable::Alpha => {
            let r = a.r.as_deref().ok_or_else(|| Error::Argument("--var alpha needs --r".into()))?;
            let r = grid::parse_number(r).map_err(Error::Argument)?;
            let default = format!("0:{}:50", kind.alpha_max());
            let g = grid::parse_grid(range.unwrap_or(&default))?;
            (SweepAxis::Alpha { r }, g.linspace())
        }
    };
    let rows = sweep(kind, a.alpha, &selectors, axis, &values)?;
    write_records(&rows, a.output.format, a.output.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct GapRow {
    xi: f64,
    gap: f64,
}

impl CsvRow for GapRow {
    fn header() -> &'static [&'static str] {
        &["xi", "gap"]
    }

    fn fields(&self) -> Vec<String> {
        vec![g12(self.xi), g12(self.gap)]
    }
}

fn run_counterexample(a: CounterexampleArgs) -> Outcome {
    let params = CounterexampleParams::new(a.n, a.m, a.a, a.b)?;
    let reading: Reading = a.reading.parse()?;
    let xi = grid::parse_grid(&a.xi)?.linspace();
    let records = match counterexample::scan_xi_with(&params, reading, &xi) {
        Ok(r) => r,
        Err(e @ Error::NotPsd { .. }) => {
            eprintln!("error: {reading} reading: {e}");
            for outcome in counterexample::compare_readings(&params, &xi) {
                match outcome.minimum {
                    Ok((x, g)) => eprintln!("  {}: minimum gap {} at xi = {}", outcome.reading, g12(g), g12(x)),
                    Err(err) => eprintln!("  {}: {err}", outcome.reading),
                }
            }
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };
    let rows: Vec<GapRow> = records.iter().map(|r: &ScanRecord| GapRow { xi: r.xi, gap: r.gap }).collect();
    write_records(&rows, a.output.format, a.output.out.as_deref())?;

    let min = counterexample::minimum(&records).expect("grid has at least two points");
    let verdict = if min.gap < 0.0 { "negative: monotonicity violated" } else { "nonnegative" };
    eprintln!(
        "n={} m={} a={} b={} ({reading}): minimum gap {} at xi = {} ({verdict})",
        a.n,
        a.m,
        g12(a.a),
        g12(a.b),
        g12(min.gap),
        g12(min.xi)
    );
    if let Some(edge) = counterexample::violation_right_edge(&records) {
        eprintln!("violation extends to xi ~ {}", g12(edge));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SigmaRow {
    family: String,
    omega: f64,
    #[serde(rename = "T")]
    t: f64,
    sigma: f64,
    omega_sigma: f64,
}

impl CsvRow for SigmaRow {
    fn header() -> &'static [&'static str] {
        &["family", "omega", "T", "sigma", "omega_sigma"]
    }

    fn fields(&self) -> Vec<String> {
        vec![self.family.clone(), g12(self.omega), g12(self.t), g12(self.sigma), g12(self.omega_sigma)]
    }
}

fn run_sigma(a: SigmaArgs) -> Outcome {
    let kind: FamilyKind = a.state.parse()?;
    let family = match a.alpha {
        Some(alpha) => StateFamily::new(kind, alpha)?,
        None => StateFamily::maximal(kind),
    };
    if let Some(&bad) = a.omega.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(Error::Argument(format!("--omega values must be > 0, got {bad}")).into());
    }
    let temps = grid::parse_grid(&a.t)?.logspace()?;
    let mut rows = Vec::with_capacity(a.omega.len() * temps.len());
    for &omega in &a.omega {
        for &t in &temps {
            let sigma = sigma_function(&family, omega, t)?;
            rows.push(SigmaRow { family: kind.name().into(), omega, t, sigma, omega_sigma: omega * sigma });
        }
    }
    write_records(&rows, a.output.format, a.output.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: VerifyArgs) -> Outcome {
    let scope: Scope = a.scope.parse()?;
    if let Some(tol) = a.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Argument(format!("--tol must be > 0, got {tol}")).into());
        }
    }
    let fault = a.inject.as_deref().map(str::parse::<Fault>).transpose()?;
    let report = verify::run(&VerifyOptions { scope, tol: a.tol, fault });
    for check in &report.checks {
        println!("{check}");
    }
    let failed = report.failures().count();
    println!("{} checks, {} failed", report.checks.len(), failed);
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
