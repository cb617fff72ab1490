//! Finite translations of the Euclidean group acting on Bessel solutions
//! `t^nu Z_nu(x)`, their Lommel-type series, and the stepping operators
//! `P+- = -+d/dx + nu/x`.
//!
//! For `J`, `Y`, `H1`, `H2` the stepping operators map `Z_nu` to
//! `Z_(nu+-1)`. The modified functions follow the same recurrences up to
//! sign: `P+ I_nu = -I_(nu+1)` and `P- K_nu = -K_(nu-1)`.

use crate::besselcore::{eval, value, BesselKind};
use crate::complexmath::{parg, rgamma, ComplexValue, C64};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Plus => "plus",
            Direction::Minus => "minus",
        }
    }

    pub fn parse(s: &str) -> Option<Direction> {
        match s {
            "plus" | "+" => Some(Direction::Plus),
            "minus" | "-" => Some(Direction::Minus),
            _ => None,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Direction::Plus => 1.0,
            Direction::Minus => -1.0,
        }
    }
}

/// A group element `exp(-u P+-)` applied to `t^nu Z_nu(x)`.
///
/// Bessel functions of `x` are taken on the principal sheet; the winding
/// of `t` is honoured in `t^nu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupShift {
    pub kind: BesselKind,
    pub nu: ComplexValue,
    pub x: ComplexValue,
    pub t: ComplexValue,
    pub u: ComplexValue,
    pub direction: Direction,
}

impl GroupShift {
    pub fn new(
        kind: BesselKind,
        nu: impl Into<ComplexValue>,
        x: impl Into<ComplexValue>,
        t: impl Into<ComplexValue>,
        u: impl Into<ComplexValue>,
        direction: Direction,
    ) -> Self {
        GroupShift { kind, nu: nu.into(), x: x.into(), t: t.into(), u: u.into(), direction }
    }

    /// Radius in `u` of the disc where [`lommel_series`] converges.
    pub fn radius(&self) -> f64 {
        let (x, t) = (self.x.modulus(), self.t.modulus());
        match self.direction {
            Direction::Plus => x / (2.0 * t),
            Direction::Minus => x * t / 2.0,
        }
    }

    /// `x^2 + 2uxt` (plus) or `x^2 - 2ux/t` (minus).
    pub fn shifted_square(&self) -> C64 {
        let (x, t, u) = (self.x.value(), self.t.value(), self.u.value());
        match self.direction {
            Direction::Plus => x * x + 2.0 * u * x * t,
            Direction::Minus => x * x - 2.0 * u * x / t,
        }
    }

    /// The point `(x', t')` the group element moves `(x, t)` to, so that
    /// the shifted function equals `t'^nu Z_nu(x')`. Shifting again from
    /// there by `u2` is the same as shifting from `(x, t)` by `u + u2`.
    pub fn image(&self) -> Result<(ComplexValue, ComplexValue)> {
        let w = self.shifted_root()?;
        let ratio = w - self.x.ln();
        let t_ln = match self.direction {
            Direction::Plus => self.t.ln() - ratio,
            Direction::Minus => self.t.ln() + ratio,
        };
        Ok((log_to_value(w), log_to_value(t_ln)))
    }

    /// `ln sqrt(s)` with the argument of `s` continued from `x^2`.
    fn shifted_root(&self) -> Result<C64> {
        let s = self.shifted_square();
        if s.norm() == 0.0 {
            return Err(Error::Domain("shifted argument is zero"));
        }
        let x = self.x.value();
        let arg = 2.0 * parg(x) + parg(s / (x * x));
        if arg.abs() > 2.0 * core::f64::consts::PI {
            return Err(Error::BranchViolation);
        }
        Ok(C64::new(0.5 * libm::log(s.norm()), 0.5 * arg))
    }
}

fn log_to_value(l: C64) -> ComplexValue {
    ComplexValue::from_polar(libm::exp(l.re), l.im)
}

fn principal_x(g: &GroupShift) -> Result<C64> {
    let x = g.x.value();
    if x.norm() == 0.0 {
        return Err(Error::Domain("x must be nonzero"));
    }
    Ok(x)
}

/// `t^nu x^nu s^(-nu/2) Z_nu(sqrt s)` with `s = x^2 + 2uxt` (plus), or
/// `(t/x)^nu s^(nu/2) Z_nu(sqrt s)` with `s = x^2 - 2ux/t` (minus).
pub fn group_shift(g: &GroupShift) -> Result<ComplexValue> {
    let x = principal_x(g)?;
    let nu = g.nu.value();
    let ln_x = C64::new(libm::log(x.norm()), parg(x));
    let ln_t = g.t.ln();
    let entire = matches!(g.kind, BesselKind::J | BesselKind::I);
    let s = g.shifted_square();
    if s.norm() == 0.0 {
        // Only the entire combinations have a finite limit at s = 0.
        if entire && g.direction == Direction::Plus {
            let lim = (nu * (ln_t + ln_x - core::f64::consts::LN_2)).exp() * rgamma(nu + 1.0);
            return Ok(lim.into());
        }
        return Err(Error::Domain("shifted argument is zero"));
    }
    // For J and I the shifted factor is single valued in s, so the
    // principal root is as good as the continued one.
    let ln_w = if entire { C64::new(0.5 * libm::log(s.norm()), 0.5 * parg(s)) } else { g.shifted_root()? };
    if ln_w.im.abs() > core::f64::consts::PI {
        return Err(Error::BranchViolation);
    }
    let z = value(g.kind, nu, ln_w.exp())?;
    let pre = match g.direction {
        Direction::Plus => nu * (ln_t + ln_x - ln_w),
        Direction::Minus => nu * (ln_t - ln_x + ln_w),
    };
    Ok((pre.exp() * z).into())
}

/// Sign `s` with `P+- Z_nu = s Z_(nu+-1)`.
fn step_sign(kind: BesselKind, direction: Direction) -> f64 {
    match (kind, direction) {
        (BesselKind::I, Direction::Plus) | (BesselKind::K, Direction::Minus) => -1.0,
        _ => 1.0,
    }
}

/// Partial sum `sum_(n<N) ((-u)^n/n!) t^(nu+-n) (P+-^n Z_nu)(x)` of the
/// expansion of [`group_shift`], and the magnitude of its last term.
pub fn lommel_series(g: &GroupShift, n_terms: usize) -> Result<(ComplexValue, f64)> {
    if n_terms == 0 {
        return Err(Error::Domain("at least one term is required"));
    }
    let radius = g.radius();
    let modulus = g.u.modulus();
    if !(modulus < radius) {
        return Err(Error::Radius { modulus, radius });
    }
    let x = principal_x(g)?;
    let nu = g.nu.value();
    let ln_t = g.t.ln();
    let d = g.direction.sign();
    let q = -g.u.value() * step_sign(g.kind, g.direction);
    let mut coeff = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    let mut last = 0.0;
    for n in 0..n_terms {
        if n > 0 {
            coeff *= q / n as f64;
        }
        let order = nu + d * n as f64;
        let term = coeff * (order * ln_t).exp() * value(g.kind, order, x)?;
        sum += term;
        last = term.norm();
    }
    Ok((sum.into(), last))
}

/// `(-+d/dx + nu/x) Z_nu(x)`.
pub fn step(kind: BesselKind, nu: impl Into<ComplexValue>, x: impl Into<ComplexValue>, direction: Direction) -> Result<ComplexValue> {
    let (nu, x) = (nu.into().value(), x.into().value());
    if x.norm() == 0.0 {
        return Err(Error::Domain("x must be nonzero"));
    }
    let (v, dv) = eval(kind, nu, x)?;
    Ok((-direction.sign() * dv + nu / x * v).into())
}

/// `Z_(nu+-1)(x)` as the stepping operator produces it, with the sign of
/// the modified functions removed.
pub fn step_normalized(kind: BesselKind, nu: impl Into<ComplexValue>, x: impl Into<ComplexValue>, direction: Direction) -> Result<ComplexValue> {
    let r = step(kind, nu, x, direction)?;
    Ok((r.value() * step_sign(kind, direction)).into())
}
