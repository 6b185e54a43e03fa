//! Parameter sweeps producing one [`SweepRecord`] per grid point and selector.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::BOUND_SLACK;
use crate::error::{Error, Result};
use crate::rindler::{acceleration_parameter, measure, FamilyKind, PairSelector, StateFamily, R_MAX};

/// One row of a sweep. Field names double as CSV/JSON column names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub family: String,
    pub alpha: f64,
    pub variable: String,
    pub value: f64,
    pub pair: String,
    #[serde(rename = "S_R")]
    pub s_r: f64,
    #[serde(rename = "I")]
    pub i: f64,
    pub h: f64,
    pub bound_lo: f64,
    pub bound_hi: f64,
}

impl SweepRecord {
    pub const HEADER: [&'static str; 10] =
        ["family", "alpha", "variable", "value", "pair", "S_R", "I", "h", "bound_lo", "bound_hi"];

    pub fn is_consistent(&self) -> bool {
        self.bound_hi + BOUND_SLACK >= self.s_r
            && self.s_r >= self.bound_lo - BOUND_SLACK
            && (self.h - (self.s_r - self.i)).abs() <= 1e-12
    }
}

/// The swept variable; the others are held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepAxis {
    /// Acceleration parameter in `[0, π/4]`.
    R,
    /// Unruh temperature at fixed mode frequency.
    Temperature { omega: f64 },
    /// Family weight at fixed `r`.
    Alpha { r: f64 },
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::R => "r",
            SweepAxis::Temperature { .. } => "T",
            SweepAxis::Alpha { .. } => "alpha",
        }
    }

    fn check(&self, kind: FamilyKind, v: f64) -> Result<()> {
        let ok = match *self {
            SweepAxis::R => (0.0..=R_MAX + 1e-12).contains(&v),
            SweepAxis::Temperature { .. } => v > 0.0 && v.is_finite(),
            SweepAxis::Alpha { .. } => (0.0..=kind.alpha_max() + 1e-15).contains(&v),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::arg(format!("{} = {v} outside the physical range for {kind}", self.name())))
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `steps` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::arg(format!("a grid needs at least 2 steps, got {steps}")));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::arg(format!("grid needs finite min < max, got {min}:{max}")));
        }
        Ok(Self { min, max, steps })
    }

    pub fn linspace(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| if i == n { self.max } else { self.min + (self.max - self.min) * i as f64 / n as f64 })
            .collect()
    }

    /// Log-spaced points; needs `min > 0`.
    pub fn logspace(&self) -> Result<Vec<f64>> {
        if self.min <= 0.0 {
            return Err(Error::arg("a log-spaced grid needs min > 0"));
        }
        let (lo, hi) = (self.min.ln(), self.max.ln());
        let n = self.steps - 1;
        Ok((0..=n)
            .map(|i| match i {
                0 => self.min,
                i if i == n => self.max,
                i => (lo + (hi - lo) * i as f64 / n as f64).exp(),
            })
            .collect())
    }
}

/// Evaluates every selector at every value. Rows are ordered by value, then
/// by selector. `alpha` defaults to the family's maximally entangled weight
/// and is ignored for [`SweepAxis::Alpha`].
pub fn sweep(
    kind: FamilyKind,
    alpha: Option<f64>,
    selectors: &[PairSelector],
    axis: SweepAxis,
    values: &[f64],
) -> Result<Vec<SweepRecord>> {
    if selectors.is_empty() {
        return Err(Error::arg("no selectors given"));
    }
    for sel in selectors {
        sel.bipartition()?;
    }
    for &v in values {
        axis.check(kind, v)?;
    }
    let fixed_alpha = alpha.unwrap_or(kind.default_alpha());
    StateFamily::new(kind, fixed_alpha)?;
    if let SweepAxis::Alpha { r } = axis {
        SweepAxis::R.check(kind, r)?;
    }
    let mut order: Vec<f64> = values.to_vec();
    order.sort_by(f64::total_cmp);
    let rows = order
        .par_iter()
        .map(|&v| {
            let (family, r) = match axis {
                SweepAxis::R => (StateFamily::new(kind, fixed_alpha)?, v),
                SweepAxis::Temperature { omega } => {
                    (StateFamily::new(kind, fixed_alpha)?, acceleration_parameter(omega, v)?)
                }
                SweepAxis::Alpha { r } => (StateFamily::new(kind, v)?, r),
            };
            selectors
                .iter()
                .map(|sel| {
                    let rep = measure(&family, r, sel)?;
                    Ok(SweepRecord {
                        family: kind.name().to_string(),
                        alpha: family.alpha(),
                        variable: axis.name().to_string(),
                        value: v,
                        pair: sel.to_string(),
                        s_r: rep.reflected_entropy,
                        i: rep.mutual_information,
                        h: rep.reflected_entropy - rep.mutual_information,
                        bound_lo: rep.bound_lower,
                        bound_hi: rep.bound_upper,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}
