//! The dihedral group `D_n = <r, s | r^n = s^2 = e, s r s = r^-1>`.
//!
//! Element index `a + n b` stands for `r^a s^b`. The irrep table lists the
//! one-dimensional characters first (two for odd `n`, four for even `n`),
//! then the two-dimensional irreps `rho_h`, `h = 1, 2, ...`, with
//! `rho_h(r) = diag(w^h, w^-h)`, `w = e^{2 pi i / n}`, and `rho_h(s)` the swap.

use std::f64::consts::PI;

use super::{CMatrix, C64};

fn split(n: usize, x: usize) -> (usize, usize) {
    (x % n, x / n)
}

pub(super) fn multiply(n: usize, x: usize, y: usize) -> usize {
    let (a, b) = split(n, x);
    let (c, d) = split(n, y);
    // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b + d)
    let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
    rot + n * ((b + d) % 2)
}

pub(super) fn inverse(n: usize, x: usize) -> usize {
    let (a, b) = split(n, x);
    if b == 0 {
        (n - a) % n
    } else {
        x
    }
}

fn one_dim_count(n: usize) -> usize {
    if n.is_multiple_of(2) {
        4
    } else {
        2
    }
}

fn two_dim_count(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n / 2 - 1
    } else {
        (n - 1) / 2
    }
}

pub(super) fn irrep_count(n: usize) -> usize {
    one_dim_count(n) + two_dim_count(n)
}

pub(super) fn irrep_dim(n: usize, label: i64) -> Option<usize> {
    if label < 0 {
        return None;
    }
    let k = label as usize;
    if k < one_dim_count(n) {
        Some(1)
    } else if k < irrep_count(n) {
        Some(2)
    } else {
        None
    }
}

/// `(chi(r), chi(s))` for the one-dimensional character at table index `k`.
fn one_dim_signs(k: usize) -> (f64, f64) {
    match k {
        0 => (1.0, 1.0),
        1 => (1.0, -1.0),
        2 => (-1.0, 1.0),
        _ => (-1.0, -1.0),
    }
}

pub(super) fn irrep_matrix(n: usize, label: i64, x: usize) -> CMatrix {
    let k = label as usize;
    let (a, b) = split(n, x);
    if k < one_dim_count(n) {
        let (r, s) = one_dim_signs(k);
        let v = r.powi(a as i32) * s.powi(b as i32);
        return CMatrix::from_element(1, 1, C64::new(v, 0.0));
    }
    let h = k - one_dim_count(n) + 1;
    let phase = |e: i64| {
        let r = (e * h as i64).rem_euclid(n as i64);
        C64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
    };
    let (p, q) = (phase(a as i64), phase(-(a as i64)));
    let zero = C64::new(0.0, 0.0);
    if b == 0 {
        CMatrix::from_row_slice(2, 2, &[p, zero, zero, q])
    } else {
        // diag(p, q) * [[0, 1], [1, 0]]
        CMatrix::from_row_slice(2, 2, &[zero, p, q, zero])
    }
}
