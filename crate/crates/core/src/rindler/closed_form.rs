//! Closed-form reduced density matrices of the accelerated families, in the
//! computational basis of the listed subsystems (first label most significant).

use crate::linalg::ComplexMatrix;
use crate::register::Label;

use super::{FamilyKind, PairSelector, StateFamily};

fn build(dim: usize, diag: &[(usize, f64)], coherences: &[(usize, usize, f64)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for &(i, v) in diag {
        m[(i, i)] += v;
    }
    for &(i, j, v) in coherences {
        m[(i, j)] += v;
        m[(j, i)] += v;
    }
    m
}

/// Closed form for `sel`, or `None` when no formula is tabulated (selectors
/// involving C, or multi-label sides).
pub fn reduced(family: &StateFamily, r: f64, sel: &PairSelector) -> Option<ComplexMatrix> {
    let a = family.alpha();
    let a2 = a * a;
    let (c, s) = (r.cos(), r.sin());
    let (c2, s2) = (c * c, s * s);
    let labels = sel.labels();
    let key: Vec<&Label> = labels.iter().collect();
    use Label::{Bbar, A, B};
    let m = match family.kind() {
        FamilyKind::Bell => {
            let rest = (1.0 - a2).max(0.0);
            let k = a * rest.sqrt();
            match key.as_slice() {
                [A, B] => build(4, &[(0, a2 * c2), (1, a2 * s2), (3, rest)], &[(0, 3, k * c)]),
                [A, Bbar] => build(4, &[(0, a2 * c2), (1, a2 * s2), (2, rest)], &[(1, 2, k * s)]),
                [B, Bbar] => build(4, &[(0, a2 * c2), (2, rest), (3, a2 * s2)], &[(0, 3, a2 * c * s)]),
                [A] => build(2, &[(0, a2), (1, rest)], &[]),
                [B] => build(2, &[(0, a2 * c2), (1, 1.0 - a2 * c2)], &[]),
                [Bbar] => build(2, &[(0, 1.0 - a2 * s2), (1, a2 * s2)], &[]),
                _ => return None,
            }
        }
        FamilyKind::Werner => {
            let rest = (1.0 - 2.0 * a2).max(0.0);
            let k = a * rest.sqrt();
            match key.as_slice() {
                [A, B] => build(4, &[(0, a2 * c2), (1, rest + a2 * s2), (2, a2 * c2), (3, a2 * s2)], &[(1, 2, k * c)]),
                [A, Bbar] => {
                    build(4, &[(0, rest + a2 * c2), (1, a2 * s2), (2, a2 * c2), (3, a2 * s2)], &[(0, 3, k * s)])
                }
                [B, Bbar] => build(4, &[(0, 2.0 * a2 * c2), (2, rest), (3, 2.0 * a2 * s2)], &[(0, 3, 2.0 * a2 * c * s)]),
                [A] => build(2, &[(0, 1.0 - a2), (1, a2)], &[]),
                [B] => build(2, &[(0, 2.0 * a2 * c2), (1, 1.0 - 2.0 * a2 * c2)], &[]),
                [Bbar] => build(2, &[(0, 1.0 - 2.0 * a2 * s2), (1, 2.0 * a2 * s2)], &[]),
                _ => return None,
            }
        }
        FamilyKind::Ghz => {
            let rest = (1.0 - a2).max(0.0);
            match key.as_slice() {
                [A, B] => build(4, &[(0, a2 * c2), (1, a2 * s2), (3, rest)], &[]),
                [A, Bbar] => build(4, &[(0, a2 * c2), (1, a2 * s2), (2, rest)], &[]),
                [B, Bbar] => build(4, &[(0, a2 * c2), (2, rest), (3, a2 * s2)], &[(0, 3, a2 * c * s)]),
                [A] => build(2, &[(0, a2), (1, rest)], &[]),
                [B] => build(2, &[(0, a2 * c2), (1, 1.0 - a2 * c2)], &[]),
                [Bbar] => build(2, &[(0, 1.0 - a2 * s2), (1, a2 * s2)], &[]),
                _ => return None,
            }
        }
    };
    Some(m)
}

/// `ρ_{AA*}` of the canonical purification of the Bell `ρ_AB`, basis `|A A*⟩`.
/// Valid for `r ≥ 0`; at `α = 1/√2, r = 0` it is `I/4`.
pub fn bell_rho_aa_star(alpha: f64, r: f64) -> ComplexMatrix {
    let a2 = alpha * alpha;
    let den = -a2 + a2 * (2.0 * r).cos() + 2.0;
    let d0 = a2 * ((2.0 * a2 - 1.0) * (2.0 * r).cos() + 1.0) / den;
    let d1 = -2.0 * a2 * (a2 - 1.0) * r.cos().powi(2) / den;
    let d3 = 2.0 * (a2 - 1.0).powi(2) / den;
    // sin²r / √(α² sin²r · den) reduces to sin r / (α √den) for r ≥ 0.
    let off = -(2f64.sqrt()) * alpha * (a2 - 1.0) * r.sin() / den.sqrt();
    build(4, &[(0, d0), (1, d1), (2, d1), (3, d3)], &[(0, 3, off)])
}

/// `ρ_{AA*}` of the canonical purification of the Bell `ρ_{AB̄}`.
/// Singular at `α = 1, r = 0`.
pub fn bell_rho_aa_bar_star(alpha: f64, r: f64) -> ComplexMatrix {
    let a2 = alpha * alpha;
    let den = a2 + a2 * (2.0 * r).cos() - 2.0;
    let d0 = a2 * ((2.0 * a2 - 1.0) * (2.0 * r).cos() - 1.0) / den;
    let d1 = 2.0 * a2 * (a2 - 1.0) * r.sin().powi(2) / den;
    let d3 = -2.0 * (a2 - 1.0).powi(2) / den;
    let off = -alpha * (a2 - 1.0) * r.cos() / (1.0 - a2 * r.cos().powi(2)).sqrt();
    build(4, &[(0, d0), (1, d1), (2, d1), (3, d3)], &[(0, 3, off)])
}

/// `ρ_{BB*}` of the canonical purification of the Bell `ρ_{BB̄}`.
pub fn bell_rho_bb_star(alpha: f64, r: f64) -> ComplexMatrix {
    let a2 = alpha * alpha;
    let (c2, s2) = (r.cos().powi(2), r.sin().powi(2));
    let mixed = a2 * s2 * c2;
    let off = alpha * (1.0 - a2).max(0.0).sqrt() * c2;
    build(4, &[(0, a2 * c2 * c2), (1, mixed), (2, mixed), (3, 1.0 - a2 + a2 * s2 * s2)], &[(0, 3, off)])
}
