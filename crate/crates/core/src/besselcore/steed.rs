//! `K` from Temme's continued fraction (Steed's algorithm) for orders in
//! `|Re mu| <= 1/2`, raised by forward recurrence. Converges quickly for
//! `|w| >= 2` with `|arg w| <= pi/2`; the Hankel functions follow from
//! `K` at `-+iz`.

use core::f64::consts::{FRAC_PI_2, PI};

use super::hankel::HKind;
use super::Vd;
use crate::complexmath::{expipi, psqrt, C64};

const MAX_ITER: usize = 400;
/// Widest `|arg w|` attempted; the fraction stalls towards the cut.
const MAX_ARG: f64 = 1.75;

/// `K_mu(w)` and `K_(mu+1)(w)` for `|Re mu| <= 1/2`.
fn fraction(mu: C64, w: C64) -> Option<(C64, C64)> {
    let one = C64::new(1.0, 0.0);
    let mut b = (one + w) * 2.0;
    let mut d = one / b;
    let mut h = d;
    let mut delh = d;
    let (mut q1, mut q2) = (C64::new(0.0, 0.0), one);
    let a1 = C64::new(0.25, 0.0) - mu * mu;
    let (mut q, mut c) = (a1, a1);
    let mut a = -a1;
    let mut s = one + q * delh;
    let mut converged = false;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = one / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < 1e-16 * s.norm() {
            converged = true;
            break;
        }
    }
    if !converged || !s.re.is_finite() || !s.im.is_finite() {
        return None;
    }
    let k0 = psqrt(C64::new(FRAC_PI_2, 0.0) / w) * (-w).exp() / s;
    let k1 = k0 * (mu + w + 0.5 - a1 * h) / w;
    Some((k0, k1))
}

/// `K_nu(w)` and `K'_nu(w)`.
fn k(nu: C64, w: C64) -> Option<Vd> {
    if w.norm() < 2.0 || w.arg().abs() > MAX_ARG {
        return None;
    }
    let nu = if nu.re < 0.0 { -nu } else { nu };
    let n = libm::floor(nu.re + 0.5);
    let mu = nu - n;
    let (mut k0, mut k1) = fraction(mu, w)?;
    for j in 0..n as usize {
        let next = (mu + (j + 1) as f64) * 2.0 / w * k1 + k0;
        k0 = k1;
        k1 = next;
    }
    Some(Vd { v: k0, d: -k1 + nu / w * k0 })
}

/// `H1`, `H2` or `K` at `z` when the continued fraction applies.
pub(crate) fn evaluate(kind: HKind, nu: C64, z: C64) -> Option<Vd> {
    let i = C64::new(0.0, 1.0);
    match kind {
        HKind::K => k(nu, z),
        // H1_nu(z) = (2/(pi i)) e^(-i pi nu/2) K_nu(-iz)
        HKind::H1 => {
            let r = k(nu, -i * z)?;
            let f = expipi(-nu * 0.5) * (-i * 2.0 / PI);
            Some(Vd { v: f * r.v, d: f * (-i) * r.d })
        }
        // H2_nu(z) = -(2/(pi i)) e^(i pi nu/2) K_nu(iz)
        HKind::H2 => {
            let r = k(nu, i * z)?;
            let f = expipi(nu * 0.5) * (i * 2.0 / PI);
            Some(Vd { v: f * r.v, d: f * i * r.d })
        }
    }
}
