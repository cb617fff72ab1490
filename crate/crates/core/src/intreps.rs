//! Integral representations of Bessel functions: Mehler-Sonine integrals
//! over `(1, inf)`, Hankel's loop around `t = 1`, and Poisson integrals
//! over `(0, 1)`. Each is an evaluation route independent of besselcore.

use alloc::format;
use alloc::vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::besselcore::BesselKind;
use crate::complexmath::{gamma, parg, ppow, rgamma, ComplexValue, C64};
use crate::contours::{integrate, loop_contour, Contour, Decay, PathSegment, MAX_PANELS};
use crate::error::{Error, Result};
use crate::fracops::DEFAULT_TOL;
use crate::quad::{gauss_kronrod, tanh_sinh};

const I: C64 = C64::new(0.0, 1.0);
const SQRT_PI: f64 = 1.772_453_850_905_516;
const LOOP_RADIUS: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    MehlerSonine,
    HankelLoop,
    Poisson,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::MehlerSonine, Family::HankelLoop, Family::Poisson];

    pub fn name(self) -> &'static str {
        match self {
            Family::MehlerSonine => "mehler-sonine",
            Family::HankelLoop => "hankel-loop",
            Family::Poisson => "poisson",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s || f.name().replace('-', "_") == s)
    }

    pub fn supports(self, kind: BesselKind) -> bool {
        use BesselKind::*;
        match self {
            Family::MehlerSonine => matches!(kind, H1 | H2 | J | Y),
            Family::HankelLoop => matches!(kind, H1 | H2),
            Family::Poisson => matches!(kind, J | I),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReprRequest {
    pub kind: BesselKind,
    pub order: ComplexValue,
    pub x: ComplexValue,
    pub family: Family,
    pub tol: f64,
}

impl ReprRequest {
    pub fn new(family: Family, kind: BesselKind, order: impl Into<ComplexValue>, x: impl Into<ComplexValue>) -> Self {
        ReprRequest { kind, order: order.into(), x: x.into(), family, tol: DEFAULT_TOL }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// Dispatches on `r.family`.
pub fn represent(r: &ReprRequest) -> Result<ComplexValue> {
    match r.family {
        Family::MehlerSonine => mehler_sonine(r),
        Family::HankelLoop => hankel_loop(r),
        Family::Poisson => poisson(r),
    }
}

fn check_kind(r: &ReprRequest, family: Family) -> Result<()> {
    if family.supports(r.kind) {
        Ok(())
    } else {
        Err(Error::Validity(format!("{} does not represent {}", family.name(), r.kind.name())))
    }
}

fn check_x(x: C64) -> Result<()> {
    if x.norm() == 0.0 || (x.im == 0.0 && x.re < 0.0) {
        return Err(Error::Validity(format!("x must be nonzero and off the negative real axis, got {x}")));
    }
    Ok(())
}

/// `(t^2 - 1)^a` continued from `t > 1` through the half plane of `t`.
fn sq_minus_one(t: C64, a: C64) -> C64 {
    ppow(t - 1.0, a) * ppow(t + 1.0, a)
}

/// Direction in which `exp(i s x t)` decays.
fn decay_angle(x: C64, s: f64) -> f64 {
    s * FRAC_PI_2 - parg(x)
}

/// End of the real stretch before the tail is rotated off the axis.
fn rotation_point(x: C64) -> f64 {
    1.0 + 10f64.max(20.0 / x.norm())
}

/// `int h(t) (t^2-1)^a dt` over `t = 1 + dir u`, `0 <= u <= 1`. For
/// `Re a < 0` the substitution `u = v^(1/p)`, `p = Re a + 1`, absorbs the
/// endpoint singularity, so strips reaching `Re a -> -1` stay tractable.
fn endpoint_piece(h: &dyn Fn(C64) -> C64, a: C64, dir: C64, tol: f64) -> Result<C64> {
    let lead = dir * ppow(dir, a);
    let r = if a.re < 0.0 {
        let p = a.re + 1.0;
        let twist = C64::new(0.0, a.im);
        gauss_kronrod(
            |v| {
                let u = libm::pow(v, 1.0 / p);
                let t = 1.0 + dir * u;
                let phase = if u > 0.0 { (twist * libm::log(u)).exp() } else { C64::new(0.0, 0.0) };
                h(t) * phase * ppow(t + 1.0, a)
            },
            0.0,
            1.0,
            tol,
            MAX_PANELS,
        )?
        .value
            / p
    } else {
        gauss_kronrod(|u| h(1.0 + dir * u) * ppow(C64::new(u, 0.0), a) * ppow(1.0 + dir * u + 1.0, a), 0.0, 1.0, tol, MAX_PANELS)?.value
    };
    Ok(lead * r)
}

/// `int_1^c h(t) (t^2-1)^a dt` on the real axis.
fn real_stretch(h: &dyn Fn(C64) -> C64, a: C64, c: f64, tol: f64) -> Result<C64> {
    let head = endpoint_piece(h, a, C64::new(1.0, 0.0), tol)?;
    let line = Contour::line(C64::new(2.0, 0.0), C64::new(c, 0.0))?;
    let (l, _) = integrate(|p| h(p.t) * sq_minus_one(p.t, a), &line, tol)?;
    Ok(head + l.value())
}

/// `int exp(i s x t) (t^2-1)^a dt` from `t = 1` to infinity: the real
/// stretch `[1, c]` and the tail beyond `c` rotated off the axis.
/// With `direct`, or when the exponential grows along the real axis, the
/// path leaves `t = 1` in the decaying direction at once and the real
/// stretch is zero.
fn exp_parts(x: C64, a: C64, s: f64, direct: bool, tol: f64) -> Result<(C64, C64)> {
    let h = |t: C64| (I * s * x * t).exp();
    let angle = decay_angle(x, s);
    let dir = C64::from_polar(1.0, angle);
    let direct = direct || s * x.im < 0.0;
    let (stretch, from) = if direct {
        (C64::new(0.0, 0.0), 1.0 + dir)
    } else {
        let c = rotation_point(x);
        (real_stretch(&h, a, c, tol)?, C64::new(c, 0.0))
    };
    let ray = Contour::new(vec![PathSegment::ray(from, angle, 4.0 / x.norm(), false, angle)])?.with_decay(Decay::Exponential { rate: x.norm() });
    let (r, _) = integrate(|p| h(p.t) * sq_minus_one(p.t, a), &ray, tol)?;
    let head = if direct { endpoint_piece(&h, a, dir, tol)? } else { C64::new(0.0, 0.0) };
    Ok((stretch, head + r.value()))
}

/// Mehler-Sonine integrals, for `H1`/`H2` with `Re mu < 1/2`:
/// `H1_mu(x) = -(2i/sqrt pi) (2/x)^mu / Gamma(1/2-mu) int_1^inf (t^2-1)^(-mu-1/2) e^(ixt) dt`,
/// and for real `x > 0`, `|Re mu| < 1/2`, the `J`/`Y` forms with `sin(xt)`
/// and `-cos(xt)`. The `H` paths leave `t = 1` along the direction where
/// `e^(+-ixt)` decays; the `J`/`Y` paths follow the real axis to
/// `1 + max(10, 20/|x|)` before the tails are rotated.
pub fn mehler_sonine(r: &ReprRequest) -> Result<ComplexValue> {
    check_kind(r, Family::MehlerSonine)?;
    let (mu, x) = (r.order.value(), r.x.value());
    check_x(x)?;
    let a = -mu - 0.5;
    let pre = ppow(2.0 / x, mu) * rgamma(-mu + 0.5) / SQRT_PI;
    let v = match r.kind {
        BesselKind::H1 | BesselKind::H2 => {
            if !(mu.re < 0.5) {
                return Err(Error::Validity(format!("Mehler-Sonine form for {} needs Re mu < 1/2, got mu = {mu}", r.kind.name())));
            }
            let s = if r.kind == BesselKind::H1 { 1.0 } else { -1.0 };
            let (l, t) = exp_parts(x, a, s, true, r.tol)?;
            -2.0 * I * s * pre * (l + t)
        }
        _ => {
            if x.im != 0.0 {
                return Err(Error::Validity(format!("Mehler-Sonine form for {} needs real x > 0, got {x}", r.kind.name())));
            }
            if !(mu.re.abs() < 0.5) {
                return Err(Error::Validity(format!("Mehler-Sonine form for {} needs |Re mu| < 1/2, got mu = {mu}", r.kind.name())));
            }
            let (_, up) = exp_parts(x, a, 1.0, false, r.tol)?;
            let (_, down) = exp_parts(x, a, -1.0, false, r.tol)?;
            if r.kind == BesselKind::J {
                let line = real_stretch(&|t: C64| (t * x).sin(), a, rotation_point(x), r.tol)?;
                2.0 * pre * (line + (up - down) / (2.0 * I))
            } else {
                let line = real_stretch(&|t: C64| (t * x).cos(), a, rotation_point(x), r.tol)?;
                -2.0 * pre * (line + (up + down) * 0.5)
            }
        }
    };
    Ok(v.into())
}

/// Hankel's loop `(inf, 1+, inf)`, valid for every `mu` except the poles
/// of `Gamma(1/2 - mu)`:
/// `H1_mu(x) = (i/pi)(1/sqrt pi)(x/2)^mu e^(-2 pi i mu) Gamma(1/2-mu) loop (t^2-1)^(mu-1/2) e^(ixt) dt`,
/// with the rays going up; `H2` uses the mirrored loop and
/// `-(i/pi)(1/sqrt pi)(x/2)^mu Gamma(1/2-mu)`.
pub fn hankel_loop(r: &ReprRequest) -> Result<ComplexValue> {
    check_kind(r, Family::HankelLoop)?;
    let (mu, x) = (r.order.value(), r.x.value());
    check_x(x)?;
    let g = gamma(-mu + 0.5)?;
    let s = if r.kind == BesselKind::H1 { 1.0 } else { -1.0 };
    let angle = decay_angle(x, s);
    let one = ComplexValue::new(1.0, 0.0);
    let radius = LOOP_RADIUS.min(1.0 / x.norm());
    let c = loop_contour(ComplexValue::new(f64::INFINITY, 0.0), one, radius, angle, 4.0 / x.norm())?
        .with_decay(Decay::Exponential { rate: x.norm() });
    let a = mu - 0.5;
    let (v, _) = integrate(|p| (I * s * x * p.t).exp() * (a * p.rel.ln()).exp() * ppow(p.t + 1.0, a), &c, r.tol)?;
    let pre = ppow(x / 2.0, mu) * g * I / (PI * SQRT_PI);
    let pre = if s > 0.0 { pre * (-2.0 * PI * I * mu).exp() } else { -pre };
    Ok((pre * v.value()).into())
}

/// Poisson's integral, `J_l(x) = 2 (x/2)^l / (sqrt pi Gamma(l+1/2)) int_0^1 (1-t^2)^(l-1/2) cos(xt) dt`
/// for `Re l > -1/2` (`cosh` for `I`), and the loop `(0, 1+, 0)` otherwise.
/// The loop also takes over within `POISSON_MARGIN` of `-1/2`, where the
/// endpoint exponent is nearly non-integrable.
pub fn poisson(r: &ReprRequest) -> Result<ComplexValue> {
    check_kind(r, Family::Poisson)?;
    let lambda = r.order.value();
    if lambda.re > -0.5 + POISSON_MARGIN {
        poisson_real(r)
    } else {
        poisson_loop(r)
    }
}

pub const POISSON_MARGIN: f64 = 0.05;

fn poisson_kernel(kind: BesselKind, z: C64) -> C64 {
    if kind == BesselKind::J {
        z.cos()
    } else {
        z.cosh()
    }
}

/// The real-interval form, `Re l > -1/2`.
pub fn poisson_real(r: &ReprRequest) -> Result<ComplexValue> {
    check_kind(r, Family::Poisson)?;
    let (lambda, x) = (r.order.value(), r.x.value());
    if x.norm() == 0.0 {
        return Err(Error::Validity("Poisson form needs x != 0".into()));
    }
    if !(lambda.re > -0.5) {
        return Err(Error::Validity(format!("real Poisson form needs Re lambda > -1/2, got {lambda}")));
    }
    let a = lambda - 0.5;
    let q = tanh_sinh(|t, rest| ppow(C64::new(rest, 0.0), a) * ppow(C64::new(1.0 + t, 0.0), a) * poisson_kernel(r.kind, x * t), r.tol)?;
    let pre = 2.0 * ppow(x / 2.0, lambda) * rgamma(lambda + 0.5) / SQRT_PI;
    Ok((pre * q.value).into())
}

/// The loop form around `t = 1`, valid except at the poles of
/// `Gamma(1/2 - l)`:
/// `J_l(x) = (x/2)^l e^(-i pi l) Gamma(1/2-l) / pi^(3/2) loop (1-t^2)^(l-1/2) cos(xt) dt`.
pub fn poisson_loop(r: &ReprRequest) -> Result<ComplexValue> {
    check_kind(r, Family::Poisson)?;
    let (lambda, x) = (r.order.value(), r.x.value());
    if x.norm() == 0.0 {
        return Err(Error::Validity("Poisson form needs x != 0".into()));
    }
    let g = gamma(-lambda + 0.5)?;
    let c = loop_contour(ComplexValue::new(0.0, 0.0), ComplexValue::new(1.0, 0.0), LOOP_RADIUS, 0.0, 1.0)?;
    let a = lambda - 0.5;
    // arg(1 - t) = arg(t - 1) - pi along the tracked loop.
    let (v, _) = integrate(|p| (a * (p.rel.ln() - I * PI)).exp() * ppow(p.t + 1.0, a) * poisson_kernel(r.kind, x * p.t), &c, r.tol)?;
    let pre = ppow(x / 2.0, lambda) * (-I * PI * lambda).exp() * g / (PI * SQRT_PI);
    Ok((pre * v.value()).into())
}
