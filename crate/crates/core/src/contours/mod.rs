//! Piecewise integration paths with branch tracking, and the quadrature
//! engine that integrates along them.
//!
//! Every integrand receives a [`PathPoint`], which carries the point, its
//! offset from the contour's branch point with a continuously tracked
//! argument, and accurate offsets from the ends of the current segment.
//! On a loop `(a, b+, a)` the offset from `b` has argument equal to the
//! direction of `a` on the way in and that plus `2 pi` on the way out.

mod segment;

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::complexmath::{ComplexValue, PhaseConvention, C64};
use crate::error::{Error, Result};

pub use segment::{PathSegment, SegmentKind};

/// Panel cap for adaptive subdivision of one segment piece.
pub const MAX_PANELS: usize = 1 << 14;
const CONNECT_TOL: f64 = 1e-12;
const MAX_EXTENSIONS: usize = 60;

/// Where and how strongly the integrand blows up at a contour endpoint:
/// `|f| ~ |t - location|^(-exponent)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndpointSingularity {
    pub location: ComplexValue,
    pub exponent: f64,
}

/// Bound on the integrand along infinite rays, in terms of the distance
/// `s` from the ray's finite end.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    /// `|f| ~ exp(-rate s)`
    Exponential { rate: f64 },
    /// `|f| ~ exp(-rate sqrt(s))`
    SqrtExponential { rate: f64 },
    /// `|f| ~ s^(-power)`, `power > 1`
    Algebraic { power: f64 },
}

impl Decay {
    /// Estimated integral from `s` to infinity given `|f(s)|`.
    fn tail(&self, s: f64, f_abs: f64) -> f64 {
        match *self {
            Decay::Exponential { rate } => f_abs / rate,
            Decay::SqrtExponential { rate } => f_abs * 2.0 * (libm::sqrt(s) + 1.0 / rate) / rate,
            Decay::Algebraic { power } => f_abs * s / (power - 1.0),
        }
    }

    fn is_valid(&self) -> bool {
        match *self {
            Decay::Exponential { rate } | Decay::SqrtExponential { rate } => rate > 0.0,
            Decay::Algebraic { power } => power > 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Contour {
    pub segments: Vec<PathSegment>,
    pub start_singularity: Option<EndpointSingularity>,
    pub end_singularity: Option<EndpointSingularity>,
    pub decay: Option<Decay>,
    /// Branch point whose offset is phase-tracked along the path.
    pub around: C64,
    reversed: bool,
}

/// A point on a contour as seen by the integrand.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathPoint {
    pub t: C64,
    /// `t - around` with continuously tracked argument.
    pub rel: ComplexValue,
    /// `t` minus the start of the segment (in the segment's own direction).
    pub from_start: C64,
    /// End of the segment minus `t`; infinite on rays.
    pub to_end: C64,
}

impl Contour {
    /// Builds a contour from connected segments.
    pub fn new(segments: Vec<PathSegment>) -> Result<Contour> {
        if segments.is_empty() {
            return Err(Error::Geometry("contour has no segments"));
        }
        for s in &segments {
            s.validate()?;
        }
        for pair in segments.windows(2) {
            let (Some(end), Some(start)) = (pair[0].end(), pair[1].start()) else {
                return Err(Error::Geometry("infinite end in the interior of a contour"));
            };
            let scale = 1.0f64.max(end.norm());
            if (end - start).norm() > CONNECT_TOL * scale {
                return Err(Error::Geometry("segments are not connected"));
            }
        }
        Ok(Contour { segments, start_singularity: None, end_singularity: None, decay: None, around: C64::new(0.0, 0.0), reversed: false })
    }

    pub fn line(a: C64, b: C64) -> Result<Contour> {
        Contour::new(alloc::vec![PathSegment::line(a, b, 0.0)])
    }

    /// Outbound ray from `a`.
    pub fn ray(a: C64, direction_angle: f64, truncation: f64) -> Result<Contour> {
        Contour::new(alloc::vec![PathSegment::ray(a, direction_angle, truncation, false, direction_angle)])
    }

    pub fn with_start_singularity(mut self, location: impl Into<ComplexValue>, exponent: f64) -> Self {
        self.start_singularity = Some(EndpointSingularity { location: location.into(), exponent });
        self
    }

    pub fn with_end_singularity(mut self, location: impl Into<ComplexValue>, exponent: f64) -> Self {
        self.end_singularity = Some(EndpointSingularity { location: location.into(), exponent });
        self
    }

    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = Some(decay);
        self
    }

    /// Sets the tracked branch point.
    pub fn with_around(mut self, around: C64) -> Self {
        self.around = around;
        self
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> Contour {
        let mut c = self.clone();
        c.reversed = !c.reversed;
        c
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// Segments in traversal order.
    pub fn path(&self) -> Vec<PathSegment> {
        if self.reversed {
            self.segments.iter().rev().map(|s| s.reversed()).collect()
        } else {
            self.segments.clone()
        }
    }
}

/// Default circle radius for [`loop_contour`].
pub fn default_loop_radius(endpoint: ComplexValue, around: ComplexValue) -> f64 {
    let d = (endpoint.value() - around.value()).norm();
    if d.is_finite() {
        0.1f64.min(d / 10.0)
    } else {
        0.1
    }
}

/// The loop `(endpoint, around+, endpoint)`: in along the cut from
/// `endpoint`, once around `around` counter-clockwise at `loop_radius`,
/// and back out. A non-finite `endpoint` means a loop from infinity along
/// rays at `ray_angle`, truncated initially at `truncation`.
pub fn loop_contour(endpoint: ComplexValue, around: ComplexValue, loop_radius: f64, ray_angle: f64, truncation: f64) -> Result<Contour> {
    if !(loop_radius > 0.0) {
        return Err(Error::Geometry("loop radius must be positive"));
    }
    let b = around.value();
    let e = endpoint.value();
    let infinite = !(e.re.is_finite() && e.im.is_finite());
    let theta = if infinite {
        ray_angle
    } else {
        let d = e - b;
        if loop_radius >= d.norm() {
            return Err(Error::Geometry("loop radius reaches the endpoint"));
        }
        PhaseConvention::loop_contour().reduce(d)
    };
    let touch = b + C64::from_polar(loop_radius, theta);
    let circle = PathSegment::arc(b, loop_radius, theta, theta + 2.0 * PI);
    let segments = if infinite {
        if !(truncation > 0.0) {
            return Err(Error::Geometry("ray truncation must be positive"));
        }
        alloc::vec![
            PathSegment::ray(touch, ray_angle, truncation, true, theta),
            circle,
            PathSegment::ray(touch, ray_angle, truncation, false, theta + 2.0 * PI),
        ]
    } else {
        alloc::vec![PathSegment::line(e, touch, theta), circle, PathSegment::line(touch, e, theta + 2.0 * PI)]
    };
    Ok(Contour::new(segments)?.with_around(b))
}

/// Integrates `f` along `c`. Succeeds when the estimated error is at most
/// `tol` times the integral of `|f|`; the returned estimate is that
/// relative error.
pub fn integrate<F>(f: F, c: &Contour, tol: f64) -> Result<(ComplexValue, f64)>
where
    F: Fn(&PathPoint) -> C64,
{
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive"));
    }
    for s in [&c.start_singularity, &c.end_singularity].into_iter().flatten() {
        if !(s.exponent < 1.0) {
            return Err(Error::Geometry("endpoint singularity is not integrable"));
        }
    }
    if let Some(d) = c.decay {
        if !d.is_valid() {
            return Err(Error::Geometry("invalid decay model"));
        }
    }
    let n = c.segments.len();
    let mut total = C64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut abs = 0.0;
    for (i, seg) in c.segments.iter().enumerate() {
        let sing_start = i == 0 && c.start_singularity.is_some();
        let sing_end = i + 1 == n && c.end_singularity.is_some();
        let r = seg.integrate(&f, c.around, sing_start, sing_end, c.decay, tol)?;
        total += r.value;
        err += r.err;
        abs += r.abs;
    }
    let rel = if abs > 0.0 { err / abs } else { 0.0 };
    if !(rel <= tol) {
        return Err(Error::QuadratureNonConvergence { err_estimate: rel, panels: 0 });
    }
    if c.reversed {
        total = -total;
    }
    Ok((ComplexValue::from(total), rel))
}
