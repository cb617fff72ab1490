//! Fractional Riemann and Weyl integrals and the order-shifting operators
//! built from them.
//!
//! The shift operators act on `z^(-+nu/2) Z_nu(sqrt z)` and return the
//! same shape at order `nu +- mu`:
//!
//! | route            | kinds                | result                              |
//! |------------------|----------------------|-------------------------------------|
//! | [`weyl_raise`]   | `H1, H2, J, Y, K`    | `z^(-(nu+mu)/2) Z_(nu+mu)(sqrt z)`  |
//! | [`riemann_lower`]| `J, I`               | `Z_(nu-mu)(x)`, `x` passed as `z`   |
//! | [`weyl_lower`]   | `H1, H2` (`J, Y` mix)| `z^((nu-mu)/2) Z_(nu-mu)(sqrt z)`   |
//!
//! Each has a loop form valid for general `mu` and a collapsed real-axis
//! (or ray) form for `Re mu < 0`; unless the request pins one, the
//! collapsed form is used whenever it is valid and `Re mu < -COLLAPSE_MARGIN`.

mod engine;
mod single;

use alloc::format;
use core::f64::consts::PI;

use crate::besselcore::{value, BesselKind};
use crate::complexmath::{cospi, expipi, gamma, parg, ppow, psqrt, rgamma, sinpi, ComplexValue, C64};
use crate::contours::{integrate, loop_contour, Contour, Decay, PathPoint};
use crate::error::{Error, Result};
use engine::{Capture, Settings, Shape};

pub use single::{riemann_integral, sonine_first, sonine_forms, weyl_integral, SonineForms};

pub const DEFAULT_TOL: f64 = 1e-11;
/// Default ray direction for `H1` integrands; `H2` uses its mirror image.
pub const HANKEL_RAY_ANGLE: f64 = 0.45 * PI;
const DEFAULT_TRUNCATION: f64 = 16.0;
/// Automatic selection keeps the loop form for `-COLLAPSE_MARGIN <= Re mu < 0`,
/// where the collapsed integrand is nearly non-integrable at `v = 0`.
pub const COLLAPSE_MARGIN: f64 = 0.05;
const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FracParams {
    pub nu: ComplexValue,
    pub mu: ComplexValue,
    pub z: ComplexValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    WeylRaise,
    RiemannLower,
    WeylLower,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::WeylRaise => "weyl-raise",
            Route::RiemannLower => "riemann-lower",
            Route::WeylLower => "weyl-lower",
        }
    }

    pub fn parse(s: &str) -> Option<Route> {
        Some(match s {
            "weyl-raise" | "weyl_raise" => Route::WeylRaise,
            "riemann-lower" | "riemann_lower" => Route::RiemannLower,
            "weyl-lower" | "weyl_lower" => Route::WeylLower,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    Loop,
    Collapsed,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Loop => "loop",
            Form::Collapsed => "collapsed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftRequest {
    pub kind: BesselKind,
    pub params: FracParams,
    pub route: Route,
    /// `None` selects automatically.
    pub form: Option<Form>,
    pub tol: f64,
    /// Overrides the default ray direction of `H1`, `H2` and `K` contours.
    pub ray_angle: Option<f64>,
    pub loop_radius: Option<f64>,
}

impl ShiftRequest {
    pub fn new(kind: BesselKind, route: Route, nu: impl Into<ComplexValue>, mu: impl Into<ComplexValue>, z: impl Into<ComplexValue>) -> Self {
        ShiftRequest {
            kind,
            params: FracParams { nu: nu.into(), mu: mu.into(), z: z.into() },
            route,
            form: None,
            tol: DEFAULT_TOL,
            ray_angle: None,
            loop_radius: None,
        }
    }

    pub fn with_form(mut self, form: Form) -> Self {
        self.form = Some(form);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_ray_angle(mut self, angle: f64) -> Self {
        self.ray_angle = Some(angle);
        self
    }

    pub fn with_loop_radius(mut self, radius: f64) -> Self {
        self.loop_radius = Some(radius);
        self
    }

    fn nu(&self) -> C64 {
        self.params.nu.value()
    }

    fn mu(&self) -> C64 {
        self.params.mu.value()
    }

    fn z(&self) -> C64 {
        self.params.z.value()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Shifted {
    pub value: ComplexValue,
    pub form: Form,
    /// Relative quadrature error estimate.
    pub err_estimate: f64,
}

fn invalid(msg: alloc::string::String) -> Error {
    Error::Validity(msg)
}

fn on_negative_axis(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

/// Evaluates the validity predicates of `req` and returns the form that
/// will be used.
pub fn select_form(req: &ShiftRequest) -> Result<Form> {
    let (kind, nu, mu, z) = (req.kind, req.nu(), req.mu(), req.z());
    if !(req.tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {}", req.tol)));
    }
    let collapsible = mu.re < 0.0;
    let pick = |loop_ok: bool, collapsed_ok: bool| -> Result<Form> {
        match req.form {
            Some(Form::Loop) if loop_ok => Ok(Form::Loop),
            Some(Form::Loop) => Err(invalid(format!("{} has no loop form for {}", req.route.name(), kind.name()))),
            Some(Form::Collapsed) if collapsed_ok => Ok(Form::Collapsed),
            Some(Form::Collapsed) => Err(invalid(format!("collapsed form needs Re mu < 0, got mu = {mu}"))),
            None if collapsed_ok && (mu.re < -COLLAPSE_MARGIN || !loop_ok) => Ok(Form::Collapsed),
            None if loop_ok => Ok(Form::Loop),
            None => Err(invalid(format!("no valid form for mu = {mu}"))),
        }
    };
    match req.route {
        Route::WeylRaise => {
            if kind == BesselKind::I {
                return Err(invalid("weyl_raise is not defined for I".into()));
            }
            if on_negative_axis(z) {
                return Err(invalid(format!("weyl_raise needs z off the closed negative real axis, got {z}")));
            }
            let strip = !matches!(kind, BesselKind::J | BesselKind::Y) || (mu + nu * 0.5).re + 0.75 > 0.0;
            if req.form == Some(Form::Collapsed) && collapsible && !strip {
                return Err(invalid(format!("collapsed weyl_raise for {} needs Re(mu + nu/2 + 3/4) > 0", kind.name())));
            }
            pick(true, collapsible && strip)
        }
        Route::RiemannLower => {
            if !matches!(kind, BesselKind::J | BesselKind::I) {
                return Err(invalid(format!(
                    "riemann_lower applies to J and I only; for {} the endpoint terms do not vanish and the result is an inhomogeneous (Lommel-function) solution",
                    kind.name()
                )));
            }
            if !(nu.re > -1.0) {
                return Err(invalid(format!("riemann_lower needs Re nu > -1, got nu = {nu}")));
            }
            if z == C64::new(0.0, 0.0) {
                return Err(invalid("riemann_lower needs x != 0".into()));
            }
            pick(true, collapsible && z.re > 0.0)
        }
        Route::WeylLower => {
            if !matches!(kind, BesselKind::H1 | BesselKind::H2 | BesselKind::J | BesselKind::Y) {
                return Err(invalid(format!("weyl_lower is not defined for {}", kind.name())));
            }
            if on_negative_axis(z) {
                return Err(invalid(format!("weyl_lower needs -pi < arg z < pi and z != 0, got {z}")));
            }
            if matches!(kind, BesselKind::J | BesselKind::Y) {
                if !(mu.re < 0.0) {
                    return Err(invalid(format!("weyl_lower for {} needs Re mu < 0, got mu = {mu}", kind.name())));
                }
                return pick(false, true);
            }
            pick(true, collapsible)
        }
    }
}

/// The closed form each route should reproduce, from besselcore.
pub fn expected(req: &ShiftRequest) -> Result<C64> {
    let (kind, nu, mu, z) = (req.kind, req.nu(), req.mu(), req.z());
    match req.route {
        Route::WeylRaise => Ok(ppow(z, -(nu + mu) * 0.5) * value(kind, nu + mu, psqrt(z))?),
        Route::RiemannLower => value(kind, nu - mu, z),
        Route::WeylLower => {
            let p = ppow(z, (nu - mu) * 0.5);
            let x = psqrt(z);
            let order = nu - mu;
            match kind {
                BesselKind::J => Ok(p * (cospi(mu) * value(BesselKind::J, order, x)? + sinpi(mu) * value(BesselKind::Y, order, x)?)),
                BesselKind::Y => Ok(p * (cospi(mu) * value(BesselKind::Y, order, x)? - sinpi(mu) * value(BesselKind::J, order, x)?)),
                _ => Ok(p * value(kind, order, x)?),
            }
        }
    }
}

/// Dispatches on `req.route`.
pub fn shift(req: &ShiftRequest) -> Result<Shifted> {
    match req.route {
        Route::WeylRaise => weyl_raise(req),
        Route::RiemannLower => riemann_lower(req),
        Route::WeylLower => weyl_lower(req),
    }
}

fn settings(req: &ShiftRequest, z: C64) -> Result<Settings> {
    let r = req.loop_radius.unwrap_or_else(|| 0.1f64.min(z.norm() / 4.0));
    if !(r > 0.0 && r < z.norm()) {
        return Err(Error::Geometry("loop radius must lie in (0, |z|)"));
    }
    Ok(Settings { tol: req.tol, loop_radius: r, truncation: DEFAULT_TRUNCATION })
}

/// Ray direction for a Hankel-type integrand in `v`, pulled back towards
/// the real axis if the default sector would sweep over `v = -z`.
fn hankel_angle(upper: bool, requested: Option<f64>, z: C64) -> f64 {
    let theta = requested.unwrap_or(if upper { HANKEL_RAY_ANGLE } else { -HANKEL_RAY_ANGLE });
    let a = parg(-z);
    if (theta > 0.0 && a > 0.0 && a <= theta) || (theta < 0.0 && a < 0.0 && a >= theta) {
        a * 0.5
    } else {
        theta
    }
}

/// Integrand shapes for `g(v) = (v+z)^(s nu/2) Z_nu(sqrt(v+z))`.
struct Family {
    nu: C64,
    z: C64,
    sign: f64,
}

impl Family {
    fn eval(&self, kind: BesselKind, v: C64) -> Result<C64> {
        let w = v + self.z;
        Ok(ppow(w, self.nu * (0.5 * self.sign)) * value(kind, self.nu, psqrt(w))?)
    }
}

fn mixing(kind: BesselKind) -> (C64, C64) {
    match kind {
        BesselKind::J => (C64::new(0.5, 0.0), C64::new(0.5, 0.0)),
        _ => (-I * 0.5, I * 0.5),
    }
}

fn split_cut(z: C64) -> f64 {
    2.0 * z.norm() + 8.0
}

fn run(form: Form, e: C64, shape: &Shape, s: &Settings, cap: &Capture) -> Result<(C64, f64)> {
    let r = match form {
        Form::Loop => engine::weyl_loop(e, shape, s),
        Form::Collapsed => engine::collapsed(e, shape, s),
    };
    cap.finish(r)
}

/// Weyl raise: `z^(-nu/2) Z_nu(sqrt z)` to `z^(-(nu+mu)/2) Z_(nu+mu)(sqrt z)`.
/// `req.route` is ignored.
pub fn weyl_raise(req: &ShiftRequest) -> Result<Shifted> {
    let req = &ShiftRequest { route: Route::WeylRaise, ..*req };
    let form = select_form(req)?;
    let (kind, nu, mu, z) = (req.kind, req.nu(), req.mu(), req.z());
    let s = settings(req, z)?;
    let fam = Family { nu, z, sign: -1.0 };
    let cap = Capture::default();
    let g = |v: C64| cap.take(fam.eval(kind, v));
    let up = |v: C64| cap.take(fam.eval(BesselKind::H1, v));
    let down = |v: C64| cap.take(fam.eval(BesselKind::H2, v));
    let shape = match kind {
        BesselKind::J | BesselKind::Y => {
            let (a, b) = mixing(kind);
            Shape::Split { g: &g, up: &up, down: &down, a, b, cut: split_cut(z), angle: HANKEL_RAY_ANGLE }
        }
        BesselKind::K => {
            let angle = req.ray_angle.unwrap_or(0.0);
            Shape::Ray { g: &g, angle, decay: Decay::SqrtExponential { rate: libm::cos(angle * 0.5) } }
        }
        _ => {
            let angle = hankel_angle(kind == BesselKind::H1, req.ray_angle, z);
            Shape::Ray { g: &g, angle, decay: engine::oscillatory_decay(angle) }
        }
    };
    let (integral, err) = run(form, -mu - 1.0, &shape, &s, &cap)?;
    let two_mu = ppow(C64::new(2.0, 0.0), mu);
    let pref = match form {
        Form::Loop => two_mu * expipi(mu) * gamma(mu + 1.0)? / (2.0 * PI * I),
        Form::Collapsed => two_mu * rgamma(-mu),
    };
    Ok(Shifted { value: (pref * integral).into(), form, err_estimate: err })
}

/// Weyl lower: `z^(nu/2) H_nu(sqrt z)` to `z^((nu-mu)/2) H_(nu-mu)(sqrt z)`
/// for Hankel functions; for `J` and `Y` the result mixes in the other
/// kind (see [`expected`]). `req.route` is ignored.
pub fn weyl_lower(req: &ShiftRequest) -> Result<Shifted> {
    let req = &ShiftRequest { route: Route::WeylLower, ..*req };
    let form = select_form(req)?;
    let (kind, nu, mu, z) = (req.kind, req.nu(), req.mu(), req.z());
    let s = settings(req, z)?;
    let fam = Family { nu, z, sign: 1.0 };
    let cap = Capture::default();
    let g = |v: C64| cap.take(fam.eval(kind, v));
    let up = |v: C64| cap.take(fam.eval(BesselKind::H1, v));
    let down = |v: C64| cap.take(fam.eval(BesselKind::H2, v));
    let two_mu = ppow(C64::new(2.0, 0.0), mu);
    let (shape, pref) = match kind {
        BesselKind::H1 | BesselKind::H2 => {
            let upper = kind == BesselKind::H1;
            let angle = hankel_angle(upper, req.ray_angle, z);
            let pref = match (form, upper) {
                (Form::Loop, true) => two_mu * expipi(mu * 2.0) * gamma(mu + 1.0)? / (2.0 * PI * I),
                (Form::Loop, false) => two_mu * gamma(mu + 1.0)? / (2.0 * PI * I),
                (Form::Collapsed, true) => two_mu * expipi(mu) * rgamma(-mu),
                (Form::Collapsed, false) => two_mu * expipi(-mu) * rgamma(-mu),
            };
            (Shape::Ray { g: &g, angle, decay: engine::oscillatory_decay(angle) }, pref)
        }
        _ => {
            let (a, b) = mixing(kind);
            let shape = Shape::Split { g: &g, up: &up, down: &down, a, b, cut: split_cut(z), angle: HANKEL_RAY_ANGLE };
            (shape, two_mu * rgamma(-mu))
        }
    };
    let (integral, err) = run(form, -mu - 1.0, &shape, &s, &cap)?;
    Ok(Shifted { value: (pref * integral).into(), form, err_estimate: err })
}

/// `1 - v` near `v = 1` from the accurate offset to whichever end of the
/// current segment sits at `v = 1`.
fn one_minus(p: &PathPoint) -> C64 {
    let w = 1.0 - p.t;
    if w.norm() > 0.5 {
        return w;
    }
    let start = p.t - p.from_start;
    let end = p.t + p.to_end;
    if (start - 1.0).norm() <= (end - 1.0).norm() {
        -p.from_start
    } else {
        p.to_end
    }
}

/// Riemann lower: `Z_nu(x)` to `Z_(nu-mu)(x)` for `J` and `I`, with `x`
/// taken from `req.params.z`. `req.route` is ignored.
pub fn riemann_lower(req: &ShiftRequest) -> Result<Shifted> {
    let req = &ShiftRequest { route: Route::RiemannLower, ..*req };
    let form = select_form(req)?;
    let (kind, nu, mu, x) = (req.kind, req.nu(), req.mu(), req.z());
    let cap = Capture::default();
    let f = |y: C64| value(kind, nu, y);
    let (v, err) = riemann_lower_core(&f, nu, mu, x, form, req.tol, req.loop_radius, &cap)?;
    Ok(Shifted { value: v.into(), form, err_estimate: err })
}

/// Riemann lowering applied to an arbitrary `f` standing in for `Z_nu`.
#[allow(clippy::too_many_arguments)]
fn riemann_lower_core(f: &dyn Fn(C64) -> Result<C64>, nu: C64, mu: C64, x: C64, form: Form, tol: f64, radius: Option<f64>, cap: &Capture) -> Result<(C64, f64)> {
    let e = -mu - 1.0;
    match form {
        Form::Loop => {
            let r = radius.unwrap_or(0.1);
            let c = loop_contour(ComplexValue::new(1.0, 0.0), ComplexValue::new(0.0, 0.0), r, 0.0, 1.0)?;
            let sing = (-nu.re).max(0.0);
            let c = c.with_start_singularity(C64::new(1.0, 0.0), sing).with_end_singularity(C64::new(1.0, 0.0), sing);
            let res = integrate(
                |p| {
                    let w = one_minus(p);
                    (e * p.rel.ln()).exp() * ppow(w, nu * 0.5) * cap.take(f(x * psqrt(w)))
                },
                &c,
                tol,
            );
            let (v, err) = cap.finish(res)?;
            let pref = expipi(mu) * gamma(mu + 1.0)? * ppow(2.0 / x, mu) / (2.0 * PI * I);
            Ok((pref * v.value(), err))
        }
        Form::Collapsed => {
            let big = x * x;
            let c = Contour::line(C64::new(0.0, 0.0), big)?.with_start_singularity(C64::new(0.0, 0.0), (-nu.re).max(0.0)).with_end_singularity(big, mu.re + 1.0);
            let res = integrate(|p| ppow(p.to_end, e) * ppow(p.from_start, nu * 0.5) * cap.take(f(psqrt(p.from_start))), &c, tol);
            let (v, err) = cap.finish(res)?;
            let pref = ppow(C64::new(2.0, 0.0), mu) * rgamma(-mu) / ppow(big, (nu - mu) * 0.5);
            Ok((pref * v.value(), err))
        }
    }
}

/// Weyl raise applied to an arbitrary `f(w)` standing in for
/// `w^(-nu/2) Z_nu(sqrt w)`, with the contour chosen as for `kind`
/// (`H1`, `H2` or `K`). Used to compose operators numerically.
pub fn weyl_raise_of<F>(f: F, kind: BesselKind, mu: impl Into<ComplexValue>, z: impl Into<ComplexValue>, form: Form, tol: f64) -> Result<Shifted>
where
    F: Fn(C64) -> Result<C64>,
{
    let mu = mu.into().value();
    let z = z.into().value();
    let probe = ShiftRequest::new(kind, Route::WeylRaise, 0.0, mu, z).with_form(form).with_tol(tol);
    select_form(&probe)?;
    let s = settings(&probe, z)?;
    let cap = Capture::default();
    let g = |v: C64| cap.take(f(v + z));
    let shape = match kind {
        BesselKind::K => Shape::Ray { g: &g, angle: 0.0, decay: Decay::SqrtExponential { rate: 1.0 } },
        BesselKind::H1 | BesselKind::H2 => {
            let angle = hankel_angle(kind == BesselKind::H1, None, z);
            Shape::Ray { g: &g, angle, decay: engine::oscillatory_decay(angle) }
        }
        _ => return Err(invalid(format!("weyl_raise_of supports H1, H2 and K contours, got {}", kind.name()))),
    };
    let (integral, err) = run(form, -mu - 1.0, &shape, &s, &cap)?;
    let two_mu = ppow(C64::new(2.0, 0.0), mu);
    let pref = match form {
        Form::Loop => two_mu * expipi(mu) * gamma(mu + 1.0)? / (2.0 * PI * I),
        Form::Collapsed => two_mu * rgamma(-mu),
    };
    Ok(Shifted { value: (pref * integral).into(), form, err_estimate: err })
}

/// Riemann lowering applied to an arbitrary `f(y)` standing in for
/// `Z_nu(y)`. Used to compose operators numerically.
pub fn riemann_lower_of<F>(f: F, nu: impl Into<ComplexValue>, mu: impl Into<ComplexValue>, x: impl Into<ComplexValue>, form: Form, tol: f64) -> Result<Shifted>
where
    F: Fn(C64) -> Result<C64>,
{
    let (nu, mu, x) = (nu.into().value(), mu.into().value(), x.into().value());
    let probe = ShiftRequest::new(BesselKind::J, Route::RiemannLower, nu, mu, x).with_form(form).with_tol(tol);
    select_form(&probe)?;
    let cap = Capture::default();
    let (v, err) = riemann_lower_core(&f, nu, mu, x, form, tol, None, &cap)?;
    Ok(Shifted { value: v.into(), form, err_estimate: err })
}
