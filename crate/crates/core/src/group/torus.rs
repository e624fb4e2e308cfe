//! The circle `T = R/Z` parametrized by `[0, 1)`.

use std::f64::consts::PI;

use super::{GroupElement, C64};

/// Reduces `x` into `[0, 1)`.
pub(super) fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

pub(crate) fn character(n: i64, x: f64) -> C64 {
    // e^{2 pi i n x}; reduce n x mod 1 first to keep the phase small.
    let phase = (n as f64 * x).rem_euclid(1.0);
    C64::from_polar(1.0, 2.0 * PI * phase)
}

pub(super) fn uniform_nodes(m: usize) -> Vec<GroupElement> {
    (0..m).map(|k| GroupElement::Point(k as f64 / m as f64)).collect()
}
