//! Fractional integrals of user functions of a real variable, and
//! Sonine's first integral evaluated two ways.

use core::f64::consts::FRAC_PI_2;

use crate::besselcore::{value, BesselKind};
use crate::complexmath::{ppow, rgamma, ComplexValue, C64};
use crate::contours::{integrate, Contour, Decay};
use crate::error::{Error, Result};
use crate::quad::tanh_sinh;

use super::DEFAULT_TOL;

fn positive_order(alpha: C64) -> Result<()> {
    if alpha.re > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain("Re alpha must be positive; use a loop contour instead"))
    }
}

/// `(1/Gamma(alpha)) int_0^x f(t) (x-t)^(alpha-1) dt` for `x > 0`.
pub fn riemann_integral<F>(f: F, alpha: impl Into<ComplexValue>, x: f64) -> Result<C64>
where
    F: Fn(f64) -> C64,
{
    let alpha = alpha.into().value();
    positive_order(alpha)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain("riemann_integral needs a finite x > 0"));
    }
    let am1 = alpha - 1.0;
    let r = tanh_sinh(|s, rest| f(x * s) * ppow(C64::new(rest, 0.0), am1), DEFAULT_TOL)?;
    Ok(r.value * ppow(C64::new(x, 0.0), alpha) * rgamma(alpha))
}

/// `(1/Gamma(alpha)) int_x^inf f(t) (t-x)^(alpha-1) dt`. `decay` describes
/// `f` alone for large `t`; an algebraic power is adjusted for the kernel.
pub fn weyl_integral<F>(f: F, alpha: impl Into<ComplexValue>, x: f64, decay: Decay) -> Result<C64>
where
    F: Fn(f64) -> C64,
{
    let alpha = alpha.into().value();
    positive_order(alpha)?;
    if !x.is_finite() {
        return Err(Error::Domain("weyl_integral needs a finite x"));
    }
    let am1 = alpha - 1.0;
    let decay = match decay {
        Decay::Algebraic { power } => Decay::Algebraic { power: power - am1.re },
        d => d,
    };
    let c = Contour::ray(C64::new(x, 0.0), 0.0, 1.0 + x.abs())?
        .with_start_singularity(C64::new(x, 0.0), (1.0 - alpha.re).max(0.0))
        .with_decay(decay);
    let (v, _) = integrate(|p| f(p.t.re) * ppow(p.from_start, am1), &c, DEFAULT_TOL)?;
    Ok(v.value() * rgamma(alpha))
}

/// Both evaluations of Sonine's first integral, each normalised to
/// `x^(nu+mu) J_(nu+mu)(x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SonineForms {
    pub trigonometric: C64,
    pub algebraic: C64,
}

impl SonineForms {
    pub fn rel_diff(&self) -> f64 {
        let d = (self.trigonometric - self.algebraic).norm();
        d / self.trigonometric.norm().max(self.algebraic.norm()).max(1e-300)
    }
}

/// Evaluates `x^(nu+mu) J_(nu+mu)(x)` through the trigonometric and the
/// algebraic form of Sonine's first integral, returning both.
pub fn sonine_forms(nu: impl Into<ComplexValue>, mu: impl Into<ComplexValue>, x: f64) -> Result<SonineForms> {
    let (nu, mu) = (nu.into().value(), mu.into().value());
    if !(mu.re > 0.0) {
        return Err(Error::Validity(alloc::format!("sonine_first needs Re mu > 0, got mu = {mu}")));
    }
    if !(nu.re > -1.0) {
        return Err(Error::Validity(alloc::format!("sonine_first needs Re nu > -1, got nu = {nu}")));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Validity(alloc::format!("sonine_first needs x > 0, got {x}")));
    }
    let norm = ppow(C64::new(2.0, 0.0), 1.0 - mu) * rgamma(mu);
    let xc = C64::new(x, 0.0);
    let err = core::cell::Cell::new(None);
    let j = |t: f64| match value(BesselKind::J, nu, C64::new(t, 0.0)) {
        Ok(v) => v,
        Err(e) => {
            err.set(Some(e));
            C64::new(f64::NAN, f64::NAN)
        }
    };

    let (cos_exp, sin_exp) = (mu * 2.0 - 1.0, nu + 1.0);
    let trig = tanh_sinh(
        |s, rest| {
            let th = FRAC_PI_2 * s;
            let sin = libm::sin(th);
            let cos = libm::sin(FRAC_PI_2 * rest);
            j(x * sin) * ppow(C64::new(cos, 0.0), cos_exp) * ppow(C64::new(sin, 0.0), sin_exp)
        },
        DEFAULT_TOL,
    );
    let alg = tanh_sinh(
        |s, rest| {
            let t = x * s;
            let gap = x * rest;
            ppow(C64::new(t, 0.0), nu + 1.0) * j(t) * ppow(C64::new(gap * (x + t), 0.0), mu - 1.0)
        },
        DEFAULT_TOL,
    );
    if let Some(e) = err.take() {
        return Err(e);
    }
    let (trig, alg) = (trig?, alg?);
    let trigonometric = trig.value * FRAC_PI_2 * ppow(xc, nu + mu * 2.0) * norm;
    let algebraic = alg.value * x * norm;
    Ok(SonineForms { trigonometric, algebraic })
}

/// `x^(nu+mu) J_(nu+mu)(x)` from Sonine's first integral, after checking
/// that the trigonometric and algebraic forms agree to `1e-8`.
pub fn sonine_first(nu: impl Into<ComplexValue>, mu: impl Into<ComplexValue>, x: f64) -> Result<C64> {
    let forms = sonine_forms(nu, mu, x)?;
    let d = forms.rel_diff();
    if d > 1e-8 {
        return Err(Error::Inconsistent(d));
    }
    Ok(forms.algebraic)
}
