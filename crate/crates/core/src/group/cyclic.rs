//! The cyclic group `Z_N`, elements `0..N`, characters `e^{2 pi i k x / N}`.

use std::f64::consts::PI;

use super::C64;

pub(super) fn multiply(n: usize, a: usize, b: usize) -> usize {
    (a + b) % n
}

pub(super) fn inverse(n: usize, a: usize) -> usize {
    (n - a) % n
}

pub(super) fn character(n: usize, k: i64, x: usize) -> C64 {
    // Reduce the phase exactly before converting to floating point.
    let r = (k.rem_euclid(n as i64) as usize * x) % n;
    C64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
}
