//! `min:max:steps` ranges with `pi`-style endpoints.

use std::f64::consts::PI;

use refent_core::{GridSpec, Result};

/// A float, `pi`, or `pi/N`.
pub fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim();
    let value = if let Some(rest) = t.strip_prefix("pi") {
        if rest.is_empty() {
            PI
        } else if let Some(d) = rest.strip_prefix('/') {
            let d: f64 = d.parse().map_err(|_| format!("bad divisor in `{s}`"))?;
            PI / d
        } else {
            return Err(format!("cannot parse `{s}`"));
        }
    } else {
        t.parse().map_err(|_| format!("cannot parse `{s}` as a number"))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

pub fn parse_grid(s: &str) -> Result<GridSpec> {
    let bad = |msg: String| refent_core::Error::Argument(msg);
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad(format!("range `{s}` must look like min:max:steps")));
    }
    let min = parse_number(parts[0]).map_err(bad)?;
    let max = parse_number(parts[1]).map_err(bad)?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad(format!("bad step count in `{s}`")))?;
    GridSpec::new(min, max, steps)
}
