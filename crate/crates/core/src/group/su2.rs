//! SU(2) acting on homogeneous polynomials of degree `2l` in `(z1, z2)`.
//!
//! `(T_l(x) f)(z1, z2) = f(alpha z1 - conj(beta) z2, beta z1 + conj(alpha) z2)`
//! on the basis `e_k = z1^k z2^(2l-k) / sqrt(k! (2l-k)!)`, `k = 0..=2l`. The
//! monomials themselves have squared length `k! (2l-k)!` under the invariant
//! inner product, so the rescaling is what makes `T_l` unitary.

use std::f64::consts::PI;

use rand::Rng;

use super::{gauss_legendre, CMatrix, GroupElement, C64};

pub(super) fn multiply(x: (C64, C64), y: (C64, C64)) -> (C64, C64) {
    let (a1, b1) = x;
    let (a2, b2) = y;
    (a1 * a2 - b1 * b2.conj(), a1 * b2 + b1 * a2.conj())
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = vec![1.0; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k as f64;
    }
    f
}

fn powers(z: C64, n: usize) -> Vec<C64> {
    let mut p = Vec::with_capacity(n + 1);
    let mut acc = C64::new(1.0, 0.0);
    for _ in 0..=n {
        p.push(acc);
        acc *= z;
    }
    p
}

/// `T_l(x)` with `two_l = 2l`; entry `(m, k)` is `<T_l(x) e_k, e_m>`.
pub(super) fn irrep_matrix(two_l: usize, alpha: C64, beta: C64) -> CMatrix {
    let n = two_l;
    let fact = factorials(n);
    let pa = powers(alpha, n);
    let pnb = powers(-beta.conj(), n);
    let pb = powers(beta, n);
    let pca = powers(alpha.conj(), n);
    let binom = |p: usize, q: usize| fact[p] / (fact[q] * fact[p - q]);
    let mut out = CMatrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        for m in 0..=n {
            // z1^m coefficient of (alpha z1 - conj(beta) z2)^k (beta z1 + conj(alpha) z2)^(n-k)
            let lo = m.saturating_sub(n - k);
            let hi = k.min(m);
            let mut c = C64::new(0.0, 0.0);
            for a in lo..=hi {
                let b = m - a;
                c += pa[a] * pnb[k - a] * pb[b] * pca[n - k - b] * (binom(k, a) * binom(n - k, b));
            }
            out[(m, k)] = c * ((fact[m] * fact[n - m]) / (fact[k] * fact[n - k])).sqrt();
        }
    }
    out
}

/// `Rz(a) Ry(b) Rz(c)` with `Rz(phi) = diag(e^{-i phi/2}, e^{i phi/2})` and
/// `Ry(theta) = [[cos theta/2, -sin theta/2], [sin theta/2, cos theta/2]]`.
pub fn su2_from_euler(a: f64, b: f64, c: f64) -> GroupElement {
    let (s, co) = (b / 2.0).sin_cos();
    let alpha = C64::from_polar(co, -(a + c) / 2.0);
    let beta = C64::from_polar(-s, -(a - c) / 2.0);
    normalize(alpha, beta)
}

fn normalize(alpha: C64, beta: C64) -> GroupElement {
    let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    GroupElement::Su2 {
        alpha: alpha / n,
        beta: beta / n,
    }
}

/// `(azimuthal nodes per angle, Gauss–Legendre nodes)` for a given band.
///
/// Azimuthal frequencies of `u^l conj(u^l')` are half-integers of modulus at
/// most `2 band`; on `[0, 4 pi)` they are integer frequencies up to `4 band`
/// in `phi / 2`, hence `4 band + 1` nodes. The polar factor is a polynomial
/// in `cos b` of degree `l + l' <= 2 band`.
pub(super) fn rule_sizes(band: usize) -> (usize, usize) {
    (4 * band + 1, band + 1)
}

pub(super) fn euler_rule(azimuth: usize, polar: usize) -> (Vec<GroupElement>, Vec<f64>) {
    let (zs, ws) = gauss_legendre(polar);
    let step = 4.0 * PI / azimuth as f64;
    let mut nodes = Vec::with_capacity(azimuth * azimuth * polar);
    let mut weights = Vec::with_capacity(nodes.capacity());
    let scale = 0.5 / (azimuth * azimuth) as f64;
    for ia in 0..azimuth {
        for (z, w) in zs.iter().zip(&ws) {
            let b = z.clamp(-1.0, 1.0).acos();
            for ic in 0..azimuth {
                nodes.push(su2_from_euler(ia as f64 * step, b, ic as f64 * step));
                weights.push(w * scale);
            }
        }
    }
    (nodes, weights)
}

/// Uniform point on the unit 3-sphere.
pub(super) fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> (C64, C64) {
    let u1: f64 = rng.random();
    let u2: f64 = rng.random();
    let u3: f64 = rng.random();
    let (r1, r2) = ((1.0 - u1).sqrt(), u1.sqrt());
    let alpha = C64::from_polar(r1, 2.0 * PI * u2);
    let beta = C64::from_polar(r2, 2.0 * PI * u3);
    match normalize(alpha, beta) {
        GroupElement::Su2 { alpha, beta } => (alpha, beta),
        _ => unreachable!(),
    }
}
