//! Phase-tracked complex values, principal-branch elementary functions and
//! the complex gamma function.
//!
//! Multivalued factors such as `t^(-mu-1)` on a loop contour need an
//! argument that can exceed `pi`. A [`ComplexValue`] carries an integer
//! winding on top of its principal argument; only [`rotate`] changes it.

use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const TAU: f64 = 2.0 * PI;

/// Distance to a non-positive integer below which gamma reports a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// A complex number whose effective argument is
/// `principal_arg + 2*pi*winding`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    pub winding: i32,
}

impl ComplexValue {
    pub const fn new(re: f64, im: f64) -> Self {
        ComplexValue { re, im, winding: 0 }
    }

    pub const fn real(re: f64) -> Self {
        ComplexValue { re, im: 0.0, winding: 0 }
    }

    pub const fn with_winding(re: f64, im: f64, winding: i32) -> Self {
        ComplexValue { re, im, winding }
    }

    /// Builds a value from modulus and an unconstrained argument.
    pub fn from_polar(modulus: f64, arg: f64) -> Self {
        let (s, c) = libm::sincos(arg);
        let principal = parg(C64::new(c, s));
        let winding = libm::round((arg - principal) / TAU) as i32;
        ComplexValue { re: modulus * c, im: modulus * s, winding }
    }

    /// Wraps `z`, choosing the winding whose effective argument is closest
    /// to `target`.
    pub fn with_arg_near(z: C64, target: f64) -> Self {
        let principal = parg(z);
        let winding = libm::round((target - principal) / TAU) as i32;
        ComplexValue { re: z.re, im: z.im, winding }
    }

    #[inline]
    pub fn value(self) -> C64 {
        C64::new(self.re, self.im)
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    /// Principal argument plus the tracked winding.
    #[inline]
    pub fn arg(self) -> f64 {
        parg(self.value()) + TAU * self.winding as f64
    }

    /// Logarithm on the sheet selected by the winding.
    #[inline]
    pub fn ln(self) -> C64 {
        C64::new(libm::log(self.modulus()), self.arg())
    }
}

impl From<C64> for ComplexValue {
    fn from(z: C64) -> Self {
        ComplexValue::new(z.re, z.im)
    }
}

impl From<f64> for ComplexValue {
    fn from(x: f64) -> Self {
        ComplexValue::real(x)
    }
}

impl From<ComplexValue> for C64 {
    fn from(v: ComplexValue) -> Self {
        v.value()
    }
}

/// Where the cut of a multivalued function lies.
///
/// Arguments of winding-free values are reduced to a half-open interval of
/// length `2*pi` bounded by the cut: `(cut - 2*pi, cut]` for a cut in the
/// upper half plane (the principal branch, `cut = pi`) and `[cut, cut + 2*pi)`
/// otherwise (the loop-contour convention, `cut = 0`, gives phase zero on the
/// upper edge of the positive real axis).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseConvention {
    pub branch_cut_angle: f64,
    /// Angular distance to the cut below which [`cpow`] reports
    /// [`Error::BranchViolation`]. Zero disables the check.
    pub cut_tolerance: f64,
}

impl PhaseConvention {
    pub const fn principal() -> Self {
        PhaseConvention { branch_cut_angle: PI, cut_tolerance: 0.0 }
    }

    pub const fn loop_contour() -> Self {
        PhaseConvention { branch_cut_angle: 0.0, cut_tolerance: 0.0 }
    }

    pub const fn strict(branch_cut_angle: f64, cut_tolerance: f64) -> Self {
        PhaseConvention { branch_cut_angle, cut_tolerance }
    }

    /// Argument of `z` reduced to this convention's interval.
    pub fn reduce(&self, z: C64) -> f64 {
        let a = parg(z);
        let cut = self.branch_cut_angle;
        if cut > 0.0 {
            let mut r = a;
            while r <= cut - TAU {
                r += TAU;
            }
            while r > cut {
                r -= TAU;
            }
            r
        } else {
            let mut r = a;
            while r >= cut + TAU {
                r -= TAU;
            }
            while r < cut {
                r += TAU;
            }
            r
        }
    }

    fn near_cut(&self, arg: f64) -> bool {
        if self.cut_tolerance <= 0.0 {
            return false;
        }
        let d = libm::remainder(arg - self.branch_cut_angle, TAU);
        libm::fabs(d) < self.cut_tolerance
    }
}

impl Default for PhaseConvention {
    fn default() -> Self {
        PhaseConvention::loop_contour()
    }
}

/// Principal argument in `(-pi, pi]`; the negative real axis (either sign of
/// zero imaginary part) maps to `+pi`.
#[inline]
pub fn parg(z: C64) -> f64 {
    if z.im == 0.0 && z.re < 0.0 {
        PI
    } else {
        libm::atan2(z.im, z.re)
    }
}

/// Principal logarithm.
#[inline]
pub fn pln(z: C64) -> C64 {
    C64::new(libm::log(libm::hypot(z.re, z.im)), parg(z))
}

/// Principal square root, `+i*sqrt(|x|)` on the negative real axis.
#[inline]
pub fn psqrt(z: C64) -> C64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            C64::new(libm::sqrt(z.re), 0.0)
        } else {
            C64::new(0.0, libm::sqrt(-z.re))
        }
    } else {
        z.sqrt()
    }
}

/// Principal power `base^exponent`; `0^e = 0` for `Re e > 0`.
#[inline]
pub fn ppow(base: C64, exponent: C64) -> C64 {
    if base.re == 0.0 && base.im == 0.0 {
        return if exponent.re > 0.0 { C64::new(0.0, 0.0) } else if exponent == C64::new(0.0, 0.0) { C64::new(1.0, 0.0) } else { C64::new(f64::INFINITY, 0.0) };
    }
    (exponent * pln(base)).exp()
}

/// `(sin(pi f), cos(pi f))` for `|f| <= 1/2`, exact at `0` and `+-1/2`.
fn sincospi_reduced(f: f64) -> (f64, f64) {
    if f == 0.5 {
        (1.0, 0.0)
    } else if f == -0.5 {
        (-1.0, 0.0)
    } else {
        libm::sincos(PI * f)
    }
}

/// `sin(pi z)` with exact reduction of the real part.
pub fn sinpi(z: C64) -> C64 {
    let n = libm::round(z.re);
    let f = z.re - n;
    let sign = if libm::fmod(n, 2.0) == 0.0 { 1.0 } else { -1.0 };
    let (s, c) = sincospi_reduced(f);
    let y = PI * z.im;
    C64::new(sign * s * libm::cosh(y), sign * c * libm::sinh(y))
}

/// `cos(pi z)` with exact reduction of the real part.
pub fn cospi(z: C64) -> C64 {
    let n = libm::round(z.re);
    let f = z.re - n;
    let sign = if libm::fmod(n, 2.0) == 0.0 { 1.0 } else { -1.0 };
    let (s, c) = sincospi_reduced(f);
    let y = PI * z.im;
    C64::new(sign * c * libm::cosh(y), -sign * s * libm::sinh(y))
}

/// `exp(i pi z)` with exact reduction of the real part.
pub fn expipi(z: C64) -> C64 {
    let n = libm::round(z.re);
    let f = libm::fmod(z.re - n + libm::fmod(n, 2.0) + 2.0, 2.0);
    let (s, c) = libm::sincos(PI * f);
    C64::new(c, s) * libm::exp(-PI * z.im)
}

/// Distance from `z` to the nearest non-positive integer, if that integer
/// is the closest integer at all.
fn pole_distance(z: C64) -> Option<f64> {
    let n = libm::round(z.re);
    if n > 0.0 {
        return None;
    }
    Some(libm::hypot(z.re - n, z.im))
}

// Lanczos approximation, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    4.652_362_892_704_858e-5,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// Gamma for `Re z >= 1/2` via the Lanczos sum.
fn gamma_right(z: C64) -> C64 {
    let w = z - 1.0;
    let mut a = C64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += *c / (w + k as f64);
    }
    let t = w + (LANCZOS_G + 0.5);
    let log_part = (w + 0.5) * pln(t) - t;
    log_part.exp() * a * libm::sqrt(TAU)
}

/// Complex gamma function.
pub fn gamma(z: C64) -> Result<C64> {
    if let Some(d) = pole_distance(z) {
        if d < POLE_TOLERANCE {
            return Err(Error::Pole { re: z.re, im: z.im });
        }
    }
    if z.re >= 0.5 {
        Ok(gamma_right(z))
    } else {
        Ok(PI / (sinpi(z) * gamma_right(C64::new(1.0, 0.0) - z)))
    }
}

/// Reciprocal gamma, entire: exactly zero at the poles of gamma.
pub fn rgamma(z: C64) -> C64 {
    if z.re >= 0.5 {
        C64::new(1.0, 0.0) / gamma_right(z)
    } else {
        gamma_right(C64::new(1.0, 0.0) - z) * sinpi(z) / PI
    }
}

/// A logarithm of gamma (not necessarily the principal one), suitable for
/// scaling products that would overflow.
pub fn lngamma(z: C64) -> Result<C64> {
    if let Some(d) = pole_distance(z) {
        if d < POLE_TOLERANCE {
            return Err(Error::Pole { re: z.re, im: z.im });
        }
    }
    let right = |z: C64| {
        let w = z - 1.0;
        let mut a = C64::new(LANCZOS[0], 0.0);
        for (k, c) in LANCZOS.iter().enumerate().skip(1) {
            a += *c / (w + k as f64);
        }
        let t = w + (LANCZOS_G + 0.5);
        (w + 0.5) * pln(t) - t + pln(a * libm::sqrt(TAU))
    };
    if z.re >= 0.5 {
        Ok(right(z))
    } else {
        Ok(C64::new(libm::log(PI), 0.0) - pln(sinpi(z)) - right(C64::new(1.0, 0.0) - z))
    }
}

/// Complex gamma of a phase-tracked value (the winding is irrelevant).
pub fn cgamma(z: ComplexValue) -> Result<ComplexValue> {
    gamma(z.value()).map(ComplexValue::from)
}

/// `base^exponent` using the effective argument of `base` under
/// `convention`; the winding of `base` is added on top of the reduced
/// argument.
pub fn cpow(base: ComplexValue, exponent: ComplexValue, convention: PhaseConvention) -> Result<ComplexValue> {
    let e = exponent.value();
    let m = base.modulus();
    if m == 0.0 {
        if e.re > 0.0 {
            return Ok(ComplexValue::new(0.0, 0.0));
        }
        return Err(Error::Domain("zero base with non-positive exponent"));
    }
    let reduced = convention.reduce(base.value());
    if base.winding == 0 && convention.near_cut(reduced) {
        return Err(Error::BranchViolation);
    }
    let arg = reduced + TAU * base.winding as f64;
    let ln = C64::new(libm::log(m), arg);
    Ok(ComplexValue::from((e * ln).exp()))
}

/// Rotates `v` by `angle` radians, keeping the modulus and carrying the
/// accumulated turns in the winding.
pub fn rotate(v: ComplexValue, angle: f64) -> ComplexValue {
    ComplexValue::from_polar(v.modulus(), v.arg() + angle)
}
