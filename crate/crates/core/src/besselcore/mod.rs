//! Reference evaluation of `J`, `Y`, `H1`, `H2`, `I` and `K` for complex
//! order and argument, with the z-derivative.
//!
//! Methods, by region:
//!
//! * `J`, `I`: ascending series summed in double-double arithmetic for
//!   `|z| <= 25`, and beyond that whenever the series' own rounding
//!   estimate stays below `1e-15`; otherwise through the Hankel functions.
//! * `Y`, `K` for `|z| < 2`: integer orders use the logarithmic series,
//!   other orders the connection formulas, interpolated on a circle in the
//!   order near integers.
//! * `H1`, `H2`, `K` for `|z| >= 2`: the large-argument expansion when it
//!   converges (`|z| >= 25`), otherwise Temme's continued fraction for
//!   `K` where it converges quickly and a Laplace-type integral elsewhere,
//!   continued to `Re z < 0` by the standard analytic-continuation formulas.
//!
//! Arguments on the negative real axis take the value approached from
//! above (`arg z = pi`).

mod hankel;
mod series;
mod steed;

use core::f64::consts::PI;

use crate::complexmath::{cospi, expipi, ComplexValue, C64};
use crate::error::{Error, Result};
use hankel::HKind;

pub(crate) const SERIES_LIMIT: f64 = 25.0;
const SMALL_LIMIT: f64 = 2.0;

/// Supported envelope for the stated accuracy.
pub const MAX_ORDER: f64 = 100.0;
pub const MAX_ARGUMENT: f64 = 500.0;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BesselKind {
    J,
    Y,
    H1,
    H2,
    I,
    K,
}

impl BesselKind {
    pub const ALL: [BesselKind; 6] = [BesselKind::J, BesselKind::Y, BesselKind::H1, BesselKind::H2, BesselKind::I, BesselKind::K];

    pub fn name(self) -> &'static str {
        match self {
            BesselKind::J => "J",
            BesselKind::Y => "Y",
            BesselKind::H1 => "H1",
            BesselKind::H2 => "H2",
            BesselKind::I => "I",
            BesselKind::K => "K",
        }
    }

    pub fn parse(s: &str) -> Option<BesselKind> {
        Some(match s {
            "J" | "j" => BesselKind::J,
            "Y" | "y" => BesselKind::Y,
            "H1" | "h1" => BesselKind::H1,
            "H2" | "h2" => BesselKind::H2,
            "I" | "i" => BesselKind::I,
            "K" | "k" => BesselKind::K,
            _ => return None,
        })
    }

    /// Solutions of the modified equation (`I`, `K`).
    pub fn is_modified(self) -> bool {
        matches!(self, BesselKind::I | BesselKind::K)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselPoint {
    pub kind: BesselKind,
    pub nu: ComplexValue,
    pub z: ComplexValue,
}

impl BesselPoint {
    pub fn new(kind: BesselKind, nu: impl Into<ComplexValue>, z: impl Into<ComplexValue>) -> Self {
        BesselPoint { kind, nu: nu.into(), z: z.into() }
    }
}

/// Value and z-derivative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Vd {
    pub v: C64,
    pub d: C64,
}

impl Vd {
    fn scale(self, f: C64) -> Vd {
        Vd { v: self.v * f, d: self.d * f }
    }

    fn add(self, o: Vd) -> Vd {
        Vd { v: self.v + o.v, d: self.d + o.d }
    }
}

pub fn bessel(p: &BesselPoint) -> Result<ComplexValue> {
    eval(p.kind, p.nu.value(), p.z.value()).map(|r| r.0.into())
}

/// Derivative with respect to `z`.
pub fn bessel_dz(p: &BesselPoint) -> Result<ComplexValue> {
    eval(p.kind, p.nu.value(), p.z.value()).map(|r| r.1.into())
}

/// Value and derivative at once.
pub fn eval(kind: BesselKind, nu: C64, z: C64) -> Result<(C64, C64)> {
    if !(nu.re.is_finite() && nu.im.is_finite() && z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("non-finite order or argument"));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return at_zero(kind, nu);
    }
    let r = eval_vd(kind, nu, z)?;
    Ok((r.v, r.d))
}

/// Value only.
pub fn value(kind: BesselKind, nu: C64, z: C64) -> Result<C64> {
    eval(kind, nu, z).map(|r| r.0)
}

fn at_zero(kind: BesselKind, nu: C64) -> Result<(C64, C64)> {
    if !matches!(kind, BesselKind::J | BesselKind::I) {
        return Err(Error::Domain("Y, K, H1 and H2 are singular at z = 0"));
    }
    let zero = C64::new(0.0, 0.0);
    let int = series::integer(nu);
    let v = match int {
        Some(0) => C64::new(1.0, 0.0),
        Some(_) => zero,
        None if nu.re > 0.0 => zero,
        None => return Err(Error::Domain("J and I are singular at z = 0 for Re nu <= 0")),
    };
    let d = match int {
        Some(1) => C64::new(0.5, 0.0),
        Some(-1) => C64::new(if kind == BesselKind::J { -0.5 } else { 0.5 }, 0.0),
        Some(_) => zero,
        None if nu.re > 1.0 => zero,
        None => return Err(Error::Domain("derivative is singular at z = 0 for Re nu <= 1")),
    };
    Ok((v, d))
}

/// Evaluation without the `z = 0` special cases.
pub(crate) fn eval_vd(kind: BesselKind, nu: C64, z: C64) -> Result<Vd> {
    match kind {
        BesselKind::J => j(nu, z),
        BesselKind::I => i(nu, z),
        BesselKind::Y => {
            if z.norm() < SMALL_LIMIT {
                series::y_small(nu, z)
            } else {
                let (h1, h2) = hankel_pair(nu, z)?;
                Ok(h1.add(h2.scale(C64::new(-1.0, 0.0))).scale(-I * 0.5))
            }
        }
        BesselKind::H1 | BesselKind::H2 => {
            if z.norm() < SMALL_LIMIT {
                let jv = j(nu, z)?;
                let yv = series::y_small(nu, z)?;
                let s = if kind == BesselKind::H1 { I } else { -I };
                Ok(jv.add(yv.scale(s)))
            } else {
                hankel_one(kind == BesselKind::H1, nu, z)
            }
        }
        BesselKind::K => {
            if z.norm() < SMALL_LIMIT {
                series::k_small(nu, z)
            } else {
                k_large(nu, z)
            }
        }
    }
}

fn j(nu: C64, z: C64) -> Result<Vd> {
    let (s, err) = series::ascending(nu, z, false)?;
    if z.norm() <= SERIES_LIMIT || err <= 1e-15 {
        return Ok(s);
    }
    if z.re >= 0.0 {
        let h1 = hankel::right_half(HKind::H1, nu, z)?;
        let h2 = hankel::right_half(HKind::H2, nu, z)?;
        return Ok(h1.add(h2).scale(C64::new(0.5, 0.0)));
    }
    let (w, m) = reflect(z);
    let h1 = hankel::right_half(HKind::H1, nu, w)?;
    let h2 = hankel::right_half(HKind::H2, nu, w)?;
    Ok(negate_d(h1.add(h2).scale(expipi(nu * m) * 0.5)))
}

fn i(nu: C64, z: C64) -> Result<Vd> {
    let (s, err) = series::ascending(nu, z, true)?;
    if z.norm() <= SERIES_LIMIT || err <= 1e-15 {
        return Ok(s);
    }
    // I(z) = e^{+-i nu pi/2} J(-+i z)
    let (rot, sign) = if z.im >= 0.0 { (-I, 1.0) } else { (I, -1.0) };
    let r = j(nu, z * rot)?;
    let f = expipi(nu * 0.5 * sign);
    Ok(Vd { v: r.v * f, d: r.d * f * rot })
}

fn reflect(z: C64) -> (C64, f64) {
    (-z, if z.im >= 0.0 { 1.0 } else { -1.0 })
}

fn negate_d(r: Vd) -> Vd {
    Vd { v: r.v, d: -r.d }
}

/// `H1` and `H2` for `Re z >= 0`. The exponentially large one of the pair
/// is taken as `2J - (small one)` when the ascending series for `J` is
/// accurate.
fn hankel_pair_right(nu: C64, z: C64) -> Result<(Vd, Vd)> {
    if z.im != 0.0 {
        let (s, err) = series::ascending(nu, z, false)?;
        if z.norm() <= SERIES_LIMIT || err <= 1e-15 {
            let two_j = s.scale(C64::new(2.0, 0.0));
            let minus = C64::new(-1.0, 0.0);
            return Ok(if z.im > 0.0 {
                let h1 = hankel::right_half(HKind::H1, nu, z)?;
                (h1, two_j.add(h1.scale(minus)))
            } else {
                let h2 = hankel::right_half(HKind::H2, nu, z)?;
                (two_j.add(h2.scale(minus)), h2)
            });
        }
    }
    Ok((hankel::right_half(HKind::H1, nu, z)?, hankel::right_half(HKind::H2, nu, z)?))
}

/// One Hankel function for `Re z >= 0`; only the exponentially large one
/// needs the pair.
fn hankel_one_right(first: bool, nu: C64, z: C64) -> Result<Vd> {
    let recessive = z.im == 0.0 || (z.im > 0.0) == first;
    if recessive {
        return hankel::right_half(if first { HKind::H1 } else { HKind::H2 }, nu, z);
    }
    let (h1, h2) = hankel_pair_right(nu, z)?;
    Ok(if first { h1 } else { h2 })
}

fn hankel_one(first: bool, nu: C64, z: C64) -> Result<Vd> {
    if z.re >= 0.0 {
        return hankel_one_right(first, nu, z);
    }
    let (w, m) = reflect(z);
    let r = if first == (m > 0.0) {
        let b = hankel_one_right(!first, nu, w)?;
        if first { b.scale(-expipi(-nu)) } else { b.scale(-expipi(nu)) }
    } else {
        let (h1, h2) = hankel_pair(nu, z)?;
        return Ok(if first { h1 } else { h2 });
    };
    Ok(negate_d(r))
}

fn hankel_pair(nu: C64, z: C64) -> Result<(Vd, Vd)> {
    if z.re >= 0.0 {
        return hankel_pair_right(nu, z);
    }
    let (w, m) = reflect(z);
    let (a, b) = hankel_pair_right(nu, w)?;
    let c2 = cospi(nu) * 2.0;
    let (h1, h2) = if m > 0.0 {
        (b.scale(-expipi(-nu)), b.scale(c2).add(a.scale(expipi(nu))))
    } else {
        (a.scale(c2).add(b.scale(expipi(-nu))), a.scale(-expipi(nu)))
    };
    Ok((negate_d(h1), negate_d(h2)))
}

fn k_large(nu: C64, z: C64) -> Result<Vd> {
    if z.re >= 0.0 {
        return hankel::right_half(HKind::K, nu, z);
    }
    let (w, m) = reflect(z);
    let k = hankel::right_half(HKind::K, nu, w)?.scale(expipi(-nu * m));
    Ok(negate_d(k.add(i(nu, w)?.scale(-I * PI * m))))
}

/// Direct access to the individual methods, for cross-validation.
pub mod methods {
    use super::*;

    /// Ascending series for `J` or `I`: value, derivative and the
    /// estimated relative rounding error of the sum.
    pub fn ascending_series(kind: BesselKind, nu: C64, z: C64) -> Result<(C64, C64, f64)> {
        let modified = match kind {
            BesselKind::J => false,
            BesselKind::I => true,
            _ => return Err(Error::Domain("ascending series covers J and I only")),
        };
        let (r, e) = series::ascending(nu, z, modified)?;
        Ok((r.v, r.d, e))
    }

    /// Large-argument expansion of `H1`, `H2` or `K` (`None` if it does not
    /// reach double precision).
    pub fn large_argument(kind: BesselKind, nu: C64, z: C64) -> Option<(C64, C64)> {
        let hk = match kind {
            BesselKind::H1 => HKind::H1,
            BesselKind::H2 => HKind::H2,
            BesselKind::K => HKind::K,
            _ => return None,
        };
        hankel::expansion(hk, nu, z).map(|r| (r.v, r.d))
    }

    /// Continued-fraction evaluation of `H1`, `H2` or `K` (`None` outside
    /// its region of fast convergence).
    pub fn continued_fraction(kind: BesselKind, nu: C64, z: C64) -> Option<(C64, C64)> {
        let hk = match kind {
            BesselKind::H1 => HKind::H1,
            BesselKind::H2 => HKind::H2,
            BesselKind::K => HKind::K,
            _ => return None,
        };
        steed::evaluate(hk, nu, z).map(|r| (r.v, r.d))
    }

    /// Laplace-integral evaluation of `H1`, `H2` or `K` for `Re z >= 0`.
    pub fn laplace_integral(kind: BesselKind, nu: C64, z: C64) -> Result<(C64, C64)> {
        let hk = match kind {
            BesselKind::H1 => HKind::H1,
            BesselKind::H2 => HKind::H2,
            BesselKind::K => HKind::K,
            _ => return Err(Error::Domain("Laplace integral covers H1, H2 and K only")),
        };
        if z.re < 0.0 {
            return Err(Error::Domain("Laplace integral requires Re z >= 0"));
        }
        let (nu_eff, f) = if nu.re >= 0.0 {
            (nu, C64::new(1.0, 0.0))
        } else {
            let f = match hk {
                HKind::H1 => expipi(-nu),
                HKind::H2 => expipi(nu),
                HKind::K => C64::new(1.0, 0.0),
            };
            (-nu, f)
        };
        hankel::laplace(hk, nu_eff, z).map(|r| (r.v * f, r.d * f))
    }
}
