//! Contour integrals `int v^e g(v) dv` over the Weyl loop `(inf, 0+, inf)`
//! or its collapsed half line, for the integrand shapes the operators need.

use core::cell::RefCell;
use core::f64::consts::PI;

use crate::complexmath::{ComplexValue, C64};
use crate::contours::{integrate, loop_contour, Contour, Decay, PathPoint};
use crate::error::{Error, Result};

/// Collects the first error raised inside an integrand, which itself can
/// only return a number.
#[derive(Default)]
pub(crate) struct Capture(RefCell<Option<Error>>);

impl Capture {
    pub fn take(&self, r: Result<C64>) -> C64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                let mut slot = self.0.borrow_mut();
                if slot.is_none() {
                    *slot = Some(e);
                }
                C64::new(f64::NAN, f64::NAN)
            }
        }
    }

    /// Prefers a captured integrand error over the quadrature's own.
    pub fn finish<T>(&self, r: Result<T>) -> Result<T> {
        if let Some(e) = self.0.borrow_mut().take() {
            return Err(e);
        }
        r
    }
}

/// How `g` behaves towards infinity.
pub(crate) enum Shape<'a> {
    /// Decays along rays at `angle`.
    Ray { g: &'a dyn Fn(C64) -> C64, angle: f64, decay: Decay },
    /// `g = a g_up + b g_down` where `g_up` decays in the upper and `g_down`
    /// in the lower half plane; `g` itself only oscillates on the real axis.
    Split { g: &'a dyn Fn(C64) -> C64, up: &'a dyn Fn(C64) -> C64, down: &'a dyn Fn(C64) -> C64, a: C64, b: C64, cut: f64, angle: f64 },
}

pub(crate) struct Settings {
    pub tol: f64,
    pub loop_radius: f64,
    pub truncation: f64,
}

/// Decay of `exp(+-i sqrt(v))` along a ray at `angle` off the real axis.
pub(crate) fn oscillatory_decay(angle: f64) -> Decay {
    Decay::SqrtExponential { rate: libm::sin(angle.abs() * 0.5).max(0.05) }
}

fn tracked(p: &PathPoint, e: C64) -> C64 {
    (e * p.rel.ln()).exp()
}

/// `int_cut^inf v^e g` with the two halves of a split integrand rotated
/// off the real axis in opposite directions.
fn split_tail(e: C64, shape: &Shape, s: &Settings) -> Result<(C64, f64)> {
    let Shape::Split { up, down, a, b, cut, angle, .. } = *shape else { unreachable!() };
    let decay = oscillatory_decay(angle);
    let upper = Contour::ray(C64::new(cut, 0.0), angle, s.truncation)?.with_decay(decay);
    let lower = Contour::ray(C64::new(cut, 0.0), -angle, s.truncation)?.with_decay(decay);
    let (u, eu) = integrate(|p| tracked(p, e) * up(p.t), &upper, s.tol)?;
    let (d, ed) = integrate(|p| tracked(p, e) * down(p.t), &lower, s.tol)?;
    Ok((a * u.value() + b * d.value(), eu.max(ed)))
}

/// `int_0^inf v^e g(v) dv` along the collapsed path; needs `Re e > -1`.
pub(crate) fn collapsed(e: C64, shape: &Shape, s: &Settings) -> Result<(C64, f64)> {
    let exponent = -e.re;
    match *shape {
        Shape::Ray { g, angle, decay } => {
            let c = Contour::ray(C64::new(0.0, 0.0), angle, s.truncation)?.with_start_singularity(C64::new(0.0, 0.0), exponent).with_decay(decay);
            let (v, err) = integrate(|p| tracked(p, e) * g(p.t), &c, s.tol)?;
            Ok((v.value(), err))
        }
        Shape::Split { g, cut, .. } => {
            let near = Contour::line(C64::new(0.0, 0.0), C64::new(cut, 0.0))?.with_start_singularity(C64::new(0.0, 0.0), exponent);
            let (n, en) = integrate(|p| (e * ComplexValue::from(p.from_start).ln()).exp() * g(p.t), &near, s.tol)?;
            let (t, et) = split_tail(e, shape, s)?;
            Ok((n.value() + t, en.max(et)))
        }
    }
}

/// `int_{(inf, 0+, inf)} v^e g(v) dv`, phase of `v` zero on the first
/// ray (measured from the positive axis, so `angle` itself there).
pub(crate) fn weyl_loop(e: C64, shape: &Shape, s: &Settings) -> Result<(C64, f64)> {
    match *shape {
        Shape::Ray { g, angle, decay } => {
            let inf = ComplexValue::new(f64::INFINITY, 0.0);
            let c = loop_contour(inf, ComplexValue::new(0.0, 0.0), s.loop_radius, angle, s.truncation)?.with_decay(decay);
            let (v, err) = integrate(|p| tracked(p, e) * g(p.t), &c, s.tol)?;
            Ok((v.value(), err))
        }
        Shape::Split { g, cut, .. } => {
            let c = loop_contour(ComplexValue::new(cut, 0.0), ComplexValue::new(0.0, 0.0), s.loop_radius, 0.0, 1.0)?;
            let (n, en) = integrate(|p| tracked(p, e) * g(p.t), &c, s.tol)?;
            let (t, et) = split_tail(e, shape, s)?;
            let jump = (e * C64::new(0.0, 2.0 * PI)).exp() - 1.0;
            Ok((n.value() + jump * t, en.max(et)))
        }
    }
}
