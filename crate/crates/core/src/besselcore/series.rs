//! Ascending series in double-double arithmetic, integer-order digamma
//! series and the small-argument connection formulas for `Y` and `K`.

use core::f64::consts::PI;

use super::Vd;
use crate::complexmath::{cospi, pln, ppow, rgamma, sinpi, C64};
use crate::dd::{Dd, DdC};
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_TERMS: usize = 5000;

pub(crate) fn negative_integer(nu: C64) -> Option<u32> {
    if nu.im == 0.0 && nu.re < 0.0 && nu.re == libm::round(nu.re) {
        Some((-nu.re) as u32)
    } else {
        None
    }
}

pub(crate) fn integer(nu: C64) -> Option<i64> {
    if nu.im == 0.0 && nu.re == libm::round(nu.re) {
        Some(nu.re as i64)
    } else {
        None
    }
}

/// `J_nu` (`modified == false`) or `I_nu` with derivative, and an estimate
/// of the relative rounding error of the series sum.
pub(crate) fn ascending(nu: C64, z: C64, modified: bool) -> Result<(Vd, f64)> {
    if let Some(n) = negative_integer(nu) {
        let (r, e) = ascending(C64::new(n as f64, 0.0), z, modified)?;
        let sign = if !modified && n % 2 == 1 { -1.0 } else { 1.0 };
        return Ok((Vd { v: r.v * sign, d: r.d * sign }, e));
    }
    let zd = DdC::from_c64(z);
    let mut q = (zd * zd).scale(Dd::new(0.25));
    if !modified {
        q = DdC { re: -q.re, im: -q.im };
    }
    let nud = DdC::from_c64(nu);
    let mut c = DdC::ONE;
    let mut s = DdC::ONE;
    let mut sd = nud;
    let mut abs_s = 1.0;
    let mut abs_d = nu.norm();
    let qn = q.norm1();
    let mut k = 0usize;
    loop {
        k += 1;
        if k > MAX_TERMS {
            return Err(Error::Convergence("ascending series did not converge"));
        }
        let kd = Dd::new(k as f64);
        let den = (nud + DdC::from_dd(kd)).scale(kd);
        c = (c * q).div(den);
        let weight = nud + DdC::from_dd(kd * 2.0);
        let cd = c * weight;
        s = s + c;
        sd = sd + cd;
        let cn = c.norm1();
        abs_s += cn;
        abs_d += cd.norm1();
        let ratio = qn / (k as f64 * (nu + k as f64).norm());
        if ratio < 0.5 && cn <= 1e-34 * abs_s {
            break;
        }
    }
    let pref = ppow(z * 0.5, nu) * rgamma(nu + 1.0);
    let sv = s.to_c64();
    let sdv = sd.to_c64();
    let err_v = 1e-31 * abs_s / sv.norm().max(f64::MIN_POSITIVE);
    let err_d = 1e-31 * abs_d / sdv.norm().max(f64::MIN_POSITIVE);
    Ok((Vd { v: pref * sv, d: pref * sdv / z }, err_v.max(err_d)))
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

/// `Y_n` for integer `n >= 0` from the logarithmic series.
fn y_integer(n: u32, z: C64) -> Result<Vd> {
    let (j, _) = ascending(C64::new(n as f64, 0.0), z, false)?;
    let h = z * 0.5;
    let lnh = pln(h);
    let q = h * h;
    let nf = n as f64;
    let mut a = C64::new(0.0, 0.0);
    let mut ad = C64::new(0.0, 0.0);
    if n > 0 {
        let mut t = ppow(h, C64::new(-nf, 0.0)) * factorial(n - 1);
        for k in 0..n {
            a += t;
            ad += t * ((2 * k) as f64 - nf) / z;
            if k + 1 < n {
                t = t * q / ((k + 1) as f64 * (n - k - 1) as f64);
            }
        }
        a = -a / PI;
        ad = -ad / PI;
    }
    let (c, cd) = digamma_sum(n, z, -q)?;
    let v = a + j.v * lnh * (2.0 / PI) - c / PI;
    let d = ad + (j.v / z + lnh * j.d) * (2.0 / PI) - cd / PI;
    Ok(Vd { v, d })
}

/// `sum_k (psi(k+1) + psi(n+k+1)) x^k / (k! (n+k)!) * h^n` and its
/// z-derivative, where `x = +-z^2/4`.
fn digamma_sum(n: u32, z: C64, x: C64) -> Result<(C64, C64)> {
    let nf = n as f64;
    let mut t = ppow(z * 0.5, C64::new(nf, 0.0)) / factorial(n);
    let mut psi_a = -EULER_GAMMA;
    let mut psi_b = -EULER_GAMMA + harmonic(n as usize);
    let mut s = C64::new(0.0, 0.0);
    let mut sd = C64::new(0.0, 0.0);
    let mut abs = 0.0;
    for k in 0..MAX_TERMS {
        let term = t * (psi_a + psi_b);
        s += term;
        sd += term * (nf + 2.0 * k as f64) / z;
        abs += term.norm();
        if k > 2 && term.norm() <= 1e-18 * abs && x.norm() < (k as f64 + 1.0) * (nf + k as f64 + 1.0) {
            return Ok((s, sd));
        }
        let k1 = k as f64 + 1.0;
        t = t * x / (k1 * (nf + k1));
        psi_a += 1.0 / k1;
        psi_b += 1.0 / (nf + k1);
    }
    Err(Error::Convergence("integer-order series did not converge"))
}

/// `K_n` for integer `n >= 0` from the logarithmic series.
fn k_integer(n: u32, z: C64) -> Result<Vd> {
    let (i, _) = ascending(C64::new(n as f64, 0.0), z, true)?;
    let h = z * 0.5;
    let lnh = pln(h);
    let q = h * h;
    let nf = n as f64;
    let mut a = C64::new(0.0, 0.0);
    let mut ad = C64::new(0.0, 0.0);
    if n > 0 {
        let mut t = ppow(h, C64::new(-nf, 0.0)) * factorial(n - 1);
        for k in 0..n {
            a += t;
            ad += t * ((2 * k) as f64 - nf) / z;
            if k + 1 < n {
                t = -t * q / ((k + 1) as f64 * (n - k - 1) as f64);
            }
        }
        a *= 0.5;
        ad *= 0.5;
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let (c, cd) = digamma_sum(n, z, q)?;
    let v = a - sign * lnh * i.v + sign * 0.5 * c;
    let d = ad - sign * (i.v / z + lnh * i.d) + sign * 0.5 * cd;
    Ok(Vd { v, d })
}

/// `Y` (`modified == false`) or `K` from `J_{+-nu}` / `I_{+-nu}` for
/// non-integer order.
fn connection(nu: C64, z: C64, modified: bool) -> Result<Vd> {
    let (p, _) = ascending(nu, z, modified)?;
    let (m, _) = ascending(-nu, z, modified)?;
    let s = sinpi(nu);
    if modified {
        let f = PI * 0.5 / s;
        Ok(Vd { v: (m.v - p.v) * f, d: (m.d - p.d) * f })
    } else {
        let c = cospi(nu);
        Ok(Vd { v: (p.v * c - m.v) / s, d: (p.d * c - m.d) / s })
    }
}

const NEAR_INTEGER: f64 = 0.04;
const CIRCLE_RADIUS: f64 = 0.1;
const CIRCLE_NODES: usize = 20;

/// Interpolates the connection formula in `s = nu - n` through nodes on
/// a circle around the integer `n`, where the formula itself is well
/// conditioned.
fn near_integer(n: f64, s: C64, z: C64, modified: bool) -> Result<Vd> {
    let nn = CIRCLE_NODES as f64;
    let rn = libm::pow(CIRCLE_RADIUS, nn);
    let sn = s.powu(CIRCLE_NODES as u32);
    let mut acc = Vd { v: C64::new(0.0, 0.0), d: C64::new(0.0, 0.0) };
    for j in 0..CIRCLE_NODES {
        let node = C64::from_polar(CIRCLE_RADIUS, 2.0 * PI * (j as f64 + 0.5) / nn);
        let f = connection(node + n, z, modified)?;
        if s == node {
            return Ok(f);
        }
        let w = (sn + rn) * node / ((s - node) * (-nn * rn));
        acc.v += f.v * w;
        acc.d += f.d * w;
    }
    Ok(acc)
}

fn second_kind(nu: C64, z: C64, modified: bool) -> Result<Vd> {
    if let Some(n) = integer(nu) {
        let m = n.unsigned_abs() as u32;
        let r = if modified { k_integer(m, z)? } else { y_integer(m, z)? };
        let sign = if !modified && n < 0 && m % 2 == 1 { -1.0 } else { 1.0 };
        return Ok(Vd { v: r.v * sign, d: r.d * sign });
    }
    let n = libm::round(nu.re);
    let s = nu - n;
    if s.norm() < NEAR_INTEGER {
        near_integer(n, s, z, modified)
    } else {
        connection(nu, z, modified)
    }
}

pub(crate) fn y_small(nu: C64, z: C64) -> Result<Vd> {
    second_kind(nu, z, false)
}

pub(crate) fn k_small(nu: C64, z: C64) -> Result<Vd> {
    second_kind(nu, z, true)
}
