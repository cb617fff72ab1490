use super::{Decay, PathPoint, MAX_EXTENSIONS, MAX_PANELS};
use crate::complexmath::{ComplexValue, C64};
use crate::error::{Error, Result};
use crate::quad::{self, QuadResult};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SegmentKind {
    Line { a: C64, b: C64 },
    /// Counter-clockwise when `theta_end > theta_start`.
    Arc { center: C64, radius: f64, theta_start: f64, theta_end: f64 },
    /// Half line from `a` in direction `direction_angle`; `inbound` rays are
    /// traversed from infinity towards `a`. `truncation` is the initial cut
    /// off length, extended while the decay bound says the tail matters.
    Ray { a: C64, direction_angle: f64, truncation: f64, inbound: bool },
}

/// A segment plus the argument the tracked offset `t - around` should stay
/// closest to on it (ignored on arcs, whose angle is exact).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSegment {
    pub kind: SegmentKind,
    pub arg_hint: f64,
}

impl PathSegment {
    pub fn line(a: C64, b: C64, arg_hint: f64) -> Self {
        PathSegment { kind: SegmentKind::Line { a, b }, arg_hint }
    }

    pub fn arc(center: C64, radius: f64, theta_start: f64, theta_end: f64) -> Self {
        PathSegment { kind: SegmentKind::Arc { center, radius, theta_start, theta_end }, arg_hint: theta_start }
    }

    pub fn ray(a: C64, direction_angle: f64, truncation: f64, inbound: bool, arg_hint: f64) -> Self {
        PathSegment { kind: SegmentKind::Ray { a, direction_angle, truncation, inbound }, arg_hint }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self.kind {
            SegmentKind::Arc { radius, .. } if !(radius > 0.0) => Err(Error::Geometry("arc radius must be positive")),
            SegmentKind::Ray { truncation, .. } if !(truncation > 0.0) => Err(Error::Geometry("ray truncation must be positive")),
            _ => Ok(()),
        }
    }

    /// Start point, `None` for an inbound ray.
    pub fn start(&self) -> Option<C64> {
        match self.kind {
            SegmentKind::Line { a, .. } => Some(a),
            SegmentKind::Arc { center, radius, theta_start, .. } => Some(center + C64::from_polar(radius, theta_start)),
            SegmentKind::Ray { a, inbound, .. } => (!inbound).then_some(a),
        }
    }

    /// End point, `None` for an outbound ray.
    pub fn end(&self) -> Option<C64> {
        match self.kind {
            SegmentKind::Line { b, .. } => Some(b),
            SegmentKind::Arc { center, radius, theta_end, .. } => Some(center + C64::from_polar(radius, theta_end)),
            SegmentKind::Ray { a, inbound, .. } => inbound.then_some(a),
        }
    }

    pub fn reversed(&self) -> PathSegment {
        let kind = match self.kind {
            SegmentKind::Line { a, b } => SegmentKind::Line { a: b, b: a },
            SegmentKind::Arc { center, radius, theta_start, theta_end } => SegmentKind::Arc { center, radius, theta_start: theta_end, theta_end: theta_start },
            SegmentKind::Ray { a, direction_angle, truncation, inbound } => SegmentKind::Ray { a, direction_angle, truncation, inbound: !inbound },
        };
        let arg_hint = match kind {
            SegmentKind::Arc { theta_start, .. } => theta_start,
            _ => self.arg_hint,
        };
        PathSegment { kind, arg_hint }
    }

    pub(crate) fn integrate<F: Fn(&PathPoint) -> C64>(
        &self,
        f: &F,
        around: C64,
        sing_start: bool,
        sing_end: bool,
        decay: Option<Decay>,
        tol: f64,
    ) -> Result<QuadResult> {
        let hint = self.arg_hint;
        let point = |t: C64, from_start: C64, to_end: C64, hint: f64| PathPoint {
            t,
            rel: ComplexValue::with_arg_near(t - around, hint),
            from_start,
            to_end,
        };
        match self.kind {
            SegmentKind::Line { a, b } => {
                let d = b - a;
                if sing_start || sing_end {
                    quad::tanh_sinh(|s, r| f(&point(a + d * s, d * s, d * r, hint)) * d, tol)
                } else {
                    quad::gauss_kronrod(|s| f(&point(a + d * s, d * s, d * (1.0 - s), hint)) * d, 0.0, 1.0, tol, MAX_PANELS)
                }
            }
            SegmentKind::Arc { center, radius, theta_start, theta_end } => {
                let end = center + C64::from_polar(radius, theta_end);
                let start = center + C64::from_polar(radius, theta_start);
                quad::gauss_kronrod(
                    |phi| {
                        let e = C64::from_polar(radius, phi);
                        let t = center + e;
                        let rel = if center == around { ComplexValue::from_polar(radius, phi) } else { ComplexValue::with_arg_near(t - around, phi) };
                        let p = PathPoint { t, rel, from_start: t - start, to_end: end - t };
                        f(&p) * C64::new(0.0, 1.0) * e
                    },
                    theta_start,
                    theta_end,
                    tol,
                    MAX_PANELS,
                )
            }
            SegmentKind::Ray { a, direction_angle, truncation, inbound } => {
                let Some(decay) = decay else {
                    return Err(Error::Tail("infinite ray without a decay model"));
                };
                let dir = C64::from_polar(1.0, direction_angle);
                let inf = C64::new(f64::INFINITY, 0.0);
                let at = |s: f64| point(a + dir * s, dir * s, inf, hint);
                let singular_at_a = if inbound { sing_end } else { sing_start };
                let mut r = ray_pieces(&|s| f(&at(s)) * dir, truncation, decay, tol, singular_at_a)?;
                if inbound {
                    r.value = -r.value;
                }
                Ok(r)
            }
        }
    }
}

/// Integrates `[0, T]`, then `[T, 2T]`, ... until the decay model puts
/// the remaining tail below `tol / 10` of the integral of `|f|`. A
/// singular start puts tanh-sinh on the first piece. Algebraic tails are
/// mapped onto `(0, 1]` by `s = T/u` instead.
fn ray_pieces<G: Fn(f64) -> C64>(g: &G, truncation: f64, decay: Decay, tol: f64, singular: bool) -> Result<QuadResult> {
    let mut lo = 0.0;
    let mut hi = truncation;
    let mut acc = QuadResult { value: C64::new(0.0, 0.0), err: 0.0, abs: 0.0, evals: 0 };
    for _ in 0..MAX_EXTENSIONS {
        let r = if singular && lo == 0.0 {
            let mut r = quad::tanh_sinh(|x, _| g(hi * x), tol)?;
            r.value *= hi;
            r.abs *= hi;
            r.err *= hi;
            r
        } else {
            quad::gauss_kronrod(g, lo, hi, tol, MAX_PANELS)?
        };
        acc.value += r.value;
        acc.err += r.err;
        acc.abs += r.abs;
        acc.evals += r.evals;
        if let Decay::Algebraic { .. } = decay {
            let t = quad::tanh_sinh(
                |u, _| {
                    let x = hi / u;
                    if x.is_finite() { g(x) * (x / u) } else { C64::new(0.0, 0.0) }
                },
                tol,
            )?;
            acc.value += t.value;
            acc.err += t.err;
            acc.abs += t.abs;
            acc.evals += t.evals;
            return Ok(acc);
        }
        let f_abs = [1.0, 0.97, 0.93].iter().map(|k| g(hi * k).norm()).fold(0.0, f64::max);
        let tail = decay.tail(hi, f_abs);
        if tail <= 0.1 * tol * acc.abs {
            acc.err += tail;
            return Ok(acc);
        }
        lo = hi;
        hi *= 2.0;
    }
    Err(Error::Tail("integrand did not decay along the ray"))
}
