//! Hankel functions and `K` in the closed right half plane: the large
//! argument expansion when it converges, then the continued fraction,
//! otherwise the Laplace-type integral `int_0^inf e^-u u^a (1 + c u)^a du / Gamma(a + 1)`, `a = nu - 1/2`.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::Vd;
use crate::complexmath::{expipi, lngamma, parg, pln, C64};
use crate::error::{Error, Result};
use crate::quad;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum HKind {
    H1,
    H2,
    K,
}

const I: C64 = C64::new(0.0, 1.0);

/// Leading factor and its logarithmic derivative.
fn leading(kind: HKind, nu: C64, z: C64) -> (C64, C64) {
    let lz = pln(z);
    let inv2z = 0.5 / z;
    match kind {
        HKind::H1 | HKind::H2 => {
            let omega = z - nu * FRAC_PI_2 - FRAC_PI_4;
            let s = if kind == HKind::H1 { 1.0 } else { -1.0 };
            let log = C64::new(0.5 * libm::log(2.0 / PI), 0.0) - lz * 0.5 + I * omega * s;
            (log.exp(), I * s - inv2z)
        }
        HKind::K => {
            let log = C64::new(0.5 * libm::log(FRAC_PI_2), 0.0) - lz * 0.5 - z;
            (log.exp(), -inv2z - 1.0)
        }
    }
}

/// Large-argument expansion. Returns `None` when the terms stop
/// decreasing before reaching double precision.
pub(crate) fn expansion(kind: HKind, nu: C64, z: C64) -> Option<Vd> {
    let phase = match kind {
        HKind::H1 => I,
        HKind::H2 => -I,
        HKind::K => C64::new(1.0, 0.0),
    };
    let mu4 = nu * nu * 4.0;
    let mut term = C64::new(1.0, 0.0);
    let mut s = term;
    let mut sd = C64::new(0.0, 0.0);
    let mut biggest = 1.0f64;
    let mut prev = 1.0f64;
    let hump = nu.norm() + 1.0;
    let mut converged = false;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term = term * (mu4 - odd * odd) * phase / (z * 8.0 * kf);
        s += term;
        sd -= term * kf / z;
        let t = term.norm();
        biggest = biggest.max(t);
        if t <= 1e-17 * s.norm() {
            converged = true;
            break;
        }
        if kf > hump && t > prev {
            break;
        }
        prev = t;
    }
    if !converged || biggest > 1e2 * s.norm() {
        return None;
    }
    let (pref, dlog) = leading(kind, nu, z);
    Some(Vd { v: pref * s, d: pref * (dlog * s + sd) })
}

/// Laplace integral for `Re nu >= 0`, integrated along a ray rotated
/// away from the branch point of `(1 + c u)^a`.
pub(crate) fn laplace(kind: HKind, nu: C64, z: C64) -> Result<Vd> {
    let a = nu - 0.5;
    let c = match kind {
        HKind::H1 => I * 0.5 / z,
        HKind::H2 => -I * 0.5 / z,
        HKind::K => 0.5 / z,
    };
    let dc = -c / z;
    let lg = lngamma(nu + 0.5)?;
    let theta = parg(-1.0 / c);
    let beta = if theta.abs() >= FRAC_PI_4 {
        0.0
    } else if theta > 0.0 {
        theta - FRAC_PI_4
    } else if theta < 0.0 {
        theta + FRAC_PI_4
    } else if kind == HKind::H2 {
        FRAC_PI_4
    } else {
        -FRAC_PI_4
    };
    let e = C64::from_polar(1.0, beta);
    let integrand = |t: f64| {
        let u = e * t;
        let w = 1.0 + c * u;
        let log = a * (C64::new(libm::log(t), beta) + pln(w)) - u - lg;
        (log.exp() * e, u / w)
    };
    let tol = 1e-14;
    let [lv, ld] = quad::exp_sinh(
        |t| {
            let (f, r) = integrand(t);
            [f, f * a * r * dc]
        },
        tol,
    )?;
    let (pref, dlog) = leading(kind, nu, z);
    Ok(Vd { v: pref * lv.value, d: pref * (dlog * lv.value + ld.value) })
}

/// `H1`, `H2` or `K` for `Re z >= 0` and any order.
pub(crate) fn right_half(kind: HKind, nu: C64, z: C64) -> Result<Vd> {
    if z.re < 0.0 {
        return Err(Error::Domain("right_half requires Re z >= 0"));
    }
    if z.norm() >= super::SERIES_LIMIT {
        if let Some(r) = expansion(kind, nu, z) {
            return Ok(r);
        }
    }
    if let Some(r) = super::steed::evaluate(kind, nu, z) {
        return Ok(r);
    }
    if nu.re >= 0.0 {
        return laplace(kind, nu, z);
    }
    let r = laplace(kind, -nu, z)?;
    let f = match kind {
        HKind::H1 => expipi(-nu),
        HKind::H2 => expipi(nu),
        HKind::K => C64::new(1.0, 0.0),
    };
    Ok(Vd { v: r.v * f, d: r.d * f })
}
