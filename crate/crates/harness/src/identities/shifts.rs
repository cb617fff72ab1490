use fracbessel::besselcore::{value, BesselKind};
use fracbessel::complexmath::{gamma, ppow, psqrt};
use fracbessel::contours::Decay;
use fracbessel::fracops::{
    expected, riemann_integral, riemann_lower_of, select_form, shift, sonine_forms, weyl_integral, weyl_raise_of, Form, Route,
    ShiftRequest, COLLAPSE_MARGIN,
};
use fracbessel::C64;
use rand::Rng as _;

use super::{args, c, orders, product, reals, rel, Ctx, Identity, Outcome, Point, Rng};
use crate::config::Grids;

use BesselKind::*;

macro_rules! route {
    ($id:literal, $anchor:literal, $kind:expr, $route:expr, $sample:expr) => {
        Identity {
            id: $id,
            anchor: $anchor,
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| product(&[$kind], &[("nu", orders(g)), ("mu", reals(&g.mu)), ("z", args(g))]),
            sample: |rng| {
                let mut p: Point = ($sample)(rng);
                p.kind = Some($kind);
                p
            },
            check: |p, ctx| route_check(p, ctx, $route),
        }
    };
}

pub(super) fn identities() -> Vec<Identity> {
    vec![
        Identity {
            id: "sonine_first",
            anchor: "x^(nu+mu) J_(nu+mu)(x) from the trigonometric, algebraic and Riemann forms of Sonine's first integral",
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| product(&[], &[("nu", orders(g)), ("mu", reals(&g.mu)), ("x", reals(&g.x))]),
            sample: |rng| {
                let nu = C64::new(rng.gen_range(-0.9..3.0), rng.gen_range(-0.3..0.3));
                Point::new(None, &[("nu", nu), ("mu", c(rng.gen_range(0.1..2.0))), ("x", c(rng.gen_range(0.2..15.0)))])
            },
            check: sonine,
        },
        Identity {
            id: "riemann_integral_power",
            anchor: "R_alpha[t^p](x) = Gamma(p+1)/Gamma(p+alpha+1) x^(p+alpha)",
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| product(&[], &[("p", orders(g)), ("alpha", reals(&g.mu)), ("x", reals(&g.x))]),
            sample: |rng| {
                let p = C64::new(rng.gen_range(-0.9..3.0), rng.gen_range(-0.5..0.5));
                Point::new(None, &[("p", p), ("alpha", c(rng.gen_range(0.1..2.5))), ("x", c(rng.gen_range(0.1..20.0)))])
            },
            check: riemann_power,
        },
        Identity {
            id: "weyl_integral_exponential",
            anchor: "W_alpha[exp(-t)](x) = exp(-x)",
            tol: 1.0,
            needs: &["mu", "x"],
            grid: |g| product(&[], &[("alpha", reals(&g.mu)), ("x", reals(&g.x))]),
            sample: |rng| Point::new(None, &[("alpha", c(rng.gen_range(0.1..3.0))), ("x", c(rng.gen_range(-5.0..20.0)))]),
            check: weyl_exponential,
        },
        Identity {
            id: "k_shift",
            anchor: "x^(-(nu+mu)/2) K_(nu+mu)(sqrt x) = 2^mu W_(-mu)[t^(-nu/2) K_nu(sqrt t)](x)",
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| product(&[], &[("nu", orders(g)), ("mu", reals(&g.mu)), ("x", reals(&g.x))]),
            sample: |rng| {
                let nu = C64::new(rng.gen_range(-2.0..3.0), rng.gen_range(-0.3..0.3));
                Point::new(None, &[("nu", nu), ("mu", c(rng.gen_range(-2.0..-0.05))), ("x", c(rng.gen_range(0.2..30.0)))])
            },
            check: k_shift,
        },
        route!("weyl_raise_H1", "z^(-(nu+mu)/2) H1_(nu+mu)(sqrt z) by Weyl-type raising", H1, Route::WeylRaise, sample_raise),
        route!("weyl_raise_H2", "z^(-(nu+mu)/2) H2_(nu+mu)(sqrt z) by Weyl-type raising", H2, Route::WeylRaise, sample_raise),
        route!("weyl_raise_K", "z^(-(nu+mu)/2) K_(nu+mu)(sqrt z) by Weyl-type raising", K, Route::WeylRaise, sample_raise),
        route!("weyl_raise_J", "z^(-(nu+mu)/2) J_(nu+mu)(sqrt z) by Weyl-type raising", J, Route::WeylRaise, sample_raise_strip),
        route!("weyl_raise_Y", "z^(-(nu+mu)/2) Y_(nu+mu)(sqrt z) by Weyl-type raising", Y, Route::WeylRaise, sample_raise_strip),
        route!("riemann_lower_J", "J_(nu-mu)(x) by Riemann-type lowering", J, Route::RiemannLower, sample_riemann),
        route!("riemann_lower_I", "I_(nu-mu)(x) by Riemann-type lowering", I, Route::RiemannLower, sample_riemann),
        route!("weyl_lower_H1", "z^((nu-mu)/2) H1_(nu-mu)(sqrt z) by Weyl-type lowering", H1, Route::WeylLower, sample_lower),
        route!("weyl_lower_H2", "z^((nu-mu)/2) H2_(nu-mu)(sqrt z) by Weyl-type lowering", H2, Route::WeylLower, sample_lower),
        route!(
            "weyl_lower_J",
            "z^((nu-mu)/2) (cos(pi mu) J_(nu-mu) + sin(pi mu) Y_(nu-mu))(sqrt z) by Weyl-type lowering",
            J,
            Route::WeylLower,
            sample_lower_strip
        ),
        route!(
            "weyl_lower_Y",
            "z^((nu-mu)/2) (cos(pi mu) Y_(nu-mu) - sin(pi mu) J_(nu-mu))(sqrt z) by Weyl-type lowering",
            Y,
            Route::WeylLower,
            sample_lower_strip
        ),
        Identity {
            id: "riemann_lower_rejects",
            anchor: "Riemann-type lowering of Y, K, H1, H2 is rejected",
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| product(&[Y, K, H1, H2], &[("nu", orders(g)), ("mu", reals(&g.mu)), ("z", args(g))]),
            sample: |rng| {
                let mut p = sample_riemann(rng);
                p.kind = Some([Y, K, H1, H2][rng.gen_range(0..4)]);
                p
            },
            check: rejects,
        },
        Identity {
            id: "weyl_exponent_addition",
            anchor: "Weyl-type raise by mu1 then mu2 = raise by mu1 + mu2",
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| pairs(g, &[H1, H2, K], 1, false),
            sample: |rng| sample_pair(rng, &[H1, H2, K], false),
            check: weyl_compose,
        },
        Identity {
            id: "weyl_inverse",
            anchor: "Weyl-type raise by mu then -mu = identity",
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| pairs(g, &[H1, H2, K], 1, true),
            sample: |rng| sample_pair(rng, &[H1, H2, K], true),
            check: weyl_compose,
        },
        Identity {
            id: "riemann_exponent_addition",
            anchor: "Riemann-type lowering by mu1 then mu2 = lowering by mu1 + mu2",
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| pairs(g, &[J, I], 2, false),
            sample: |rng| sample_pair(rng, &[J, I], false),
            check: riemann_compose,
        },
        Identity {
            id: "riemann_inverse",
            anchor: "Riemann-type lowering by mu then -mu = identity",
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| pairs(g, &[J, I], 2, true),
            sample: |rng| sample_pair(rng, &[J, I], true),
            check: riemann_compose,
        },
    ]
}

fn polar(rng: &mut Rng, r: (f64, f64), max_arg: f64) -> C64 {
    C64::from_polar(rng.gen_range(r.0..r.1), rng.gen_range(-max_arg..max_arg))
}

fn sample_raise(rng: &mut Rng) -> Point {
    let nu = C64::new(rng.gen_range(-1.0..3.0), rng.gen_range(-0.3..0.3));
    Point::new(None, &[("nu", nu), ("mu", c(rng.gen_range(-1.5..1.5))), ("z", polar(rng, (0.3, 20.0), 2.5))])
}

fn sample_raise_strip(rng: &mut Rng) -> Point {
    let nu: f64 = rng.gen_range(-1.0..3.0);
    let lo: f64 = -(nu / 2.0 + 0.75) + 0.05;
    let mu = rng.gen_range(lo..lo.max(0.0) + 1.5);
    Point::new(None, &[("nu", c(nu)), ("mu", c(mu)), ("z", c(rng.gen_range(0.3..20.0)))])
}

fn sample_riemann(rng: &mut Rng) -> Point {
    let nu = C64::new(rng.gen_range(-0.9..3.0), rng.gen_range(-0.3..0.3));
    Point::new(None, &[("nu", nu), ("mu", c(rng.gen_range(-1.5..1.5))), ("z", polar(rng, (0.3, 20.0), 2.5))])
}

fn sample_lower(rng: &mut Rng) -> Point {
    let nu = C64::new(rng.gen_range(-1.0..3.0), rng.gen_range(-0.3..0.3));
    Point::new(None, &[("nu", nu), ("mu", c(rng.gen_range(-1.5..1.5))), ("z", polar(rng, (0.3, 20.0), 2.5))])
}

fn sample_lower_strip(rng: &mut Rng) -> Point {
    let nu = rng.gen_range(-1.0..1.4);
    let mu = rng.gen_range(nu / 2.0 - 0.75 + 0.05..-0.05);
    Point::new(None, &[("nu", c(nu)), ("mu", c(mu)), ("z", c(rng.gen_range(0.3..20.0)))])
}

fn sonine(p: &Point, _: &Ctx) -> Outcome {
    let (nu, mu, x) = (p.get("nu"), p.get("mu"), p.re("x"));
    if !(mu.re > 0.0 && nu.re > -1.0) {
        return Outcome::Skip;
    }
    Outcome::of((|| {
        let lam = nu + mu;
        let closed = ppow(c(x), lam) * value(J, lam, c(x))?;
        let forms = sonine_forms(nu, mu, x)?;
        // R_mu[t^(nu/2) J_nu(2 sqrt t)](y) = y^((nu+mu)/2) J_(nu+mu)(2 sqrt y), y = x^2/4
        let err = std::cell::Cell::new(None);
        let f = |t: f64| {
            value(J, nu, c(2.0 * t.sqrt())).unwrap_or_else(|e| {
                err.set(Some(e));
                c(f64::NAN)
            }) * ppow(c(t), nu * 0.5)
        };
        let r = riemann_integral(f, mu, x * x / 4.0);
        if let Some(e) = err.take() {
            return Err(e);
        }
        let riemann = r? * ppow(c(2.0), lam);
        Ok(rel(forms.trigonometric, closed).max(rel(forms.algebraic, closed)).max(rel(riemann, closed)))
    })())
}

fn riemann_power(p: &Point, _: &Ctx) -> Outcome {
    let (pw, alpha, x) = (p.get("p"), p.get("alpha"), p.re("x"));
    if !(alpha.re > 0.0 && pw.re > -1.0) {
        return Outcome::Skip;
    }
    Outcome::of((|| {
        let got = riemann_integral(|t| ppow(c(t), pw), alpha, x)?;
        let want = gamma(pw + 1.0)? / gamma(pw + alpha + 1.0)? * ppow(c(x), pw + alpha);
        Ok(rel(got, want))
    })())
}

fn weyl_exponential(p: &Point, _: &Ctx) -> Outcome {
    let (alpha, x) = (p.get("alpha"), p.re("x"));
    if alpha.re <= 0.0 {
        return Outcome::Skip;
    }
    Outcome::of(weyl_integral(|t| c((-t).exp()), alpha, x, Decay::Exponential { rate: 1.0 }).map(|v| rel(v, c((-x).exp()))))
}

fn k_shift(p: &Point, _: &Ctx) -> Outcome {
    let (nu, mu, x) = (p.get("nu"), p.get("mu"), p.re("x"));
    if mu.re >= 0.0 {
        return Outcome::Skip;
    }
    Outcome::of((|| {
        let err = std::cell::Cell::new(None);
        let f = |t: f64| {
            value(K, nu, c(t.sqrt())).unwrap_or_else(|e| {
                err.set(Some(e));
                c(f64::NAN)
            }) * ppow(c(t), -nu * 0.5)
        };
        let w = weyl_integral(f, -mu, x, Decay::SqrtExponential { rate: 1.0 });
        if let Some(e) = err.take() {
            return Err(e);
        }
        let got = w? * ppow(c(2.0), mu);
        let want = ppow(c(x), -(nu + mu) * 0.5) * value(K, nu + mu, c(x.sqrt()))?;
        Ok(rel(got, want))
    })())
}

/// Points outside the strips that the closed forms are stated on.
fn outside_strip(kind: BesselKind, route: Route, nu: C64, mu: C64) -> bool {
    match (route, kind) {
        (Route::WeylRaise, J | Y) => (mu + nu * 0.5).re + 0.75 <= 0.0,
        (Route::WeylLower, J | Y) => !(nu.re * 0.5 - 0.75 < mu.re && mu.re < 0.0),
        _ => false,
    }
}

/// Every valid form of the route against the closed form.
fn route_check(p: &Point, ctx: &Ctx, route: Route) -> Outcome {
    let kind = p.kind.expect("route identities carry a kind");
    let (nu, mu, z) = (p.get("nu"), p.get("mu"), p.get("z"));
    if outside_strip(kind, route, nu, mu) {
        return Outcome::Skip;
    }
    let base = ShiftRequest::new(kind, route, nu, mu, z).with_tol(ctx.quad_tol);
    let want = match expected(&base) {
        Ok(v) => v,
        Err(e) => return Outcome::from_error(&e),
    };
    let loop_ok = select_form(&base.with_form(Form::Loop)).is_ok();
    let mut worst: Option<f64> = None;
    for form in [Form::Loop, Form::Collapsed] {
        let req = base.with_form(form);
        if select_form(&req).is_err() {
            continue;
        }
        // Within the margin the collapsed integrand is barely integrable.
        if form == Form::Collapsed && loop_ok && mu.re >= -COLLAPSE_MARGIN {
            continue;
        }
        match shift(&req) {
            Ok(r) => worst = Some(worst.unwrap_or(0.0).max(rel(r.value.value(), want))),
            Err(e) => return Outcome::from_error(&e),
        }
    }
    match worst {
        Some(w) => Outcome::of(Ok(w)),
        None => Outcome::Skip,
    }
}

fn rejects(p: &Point, ctx: &Ctx) -> Outcome {
    let kind = p.kind.expect("kind");
    let req = ShiftRequest::new(kind, Route::RiemannLower, p.get("nu"), p.get("mu"), p.get("z")).with_tol(ctx.quad_tol);
    match shift(&req) {
        Err(fracbessel::Error::Validity(_)) => Outcome::Residual(0.0),
        Err(e) => Outcome::Failed(format!("rejected with the wrong error: {e}")),
        Ok(_) => Outcome::Residual(1.0),
    }
}

/// Two-step tuples `(nu, mu1, mu2, z)`: every argument is paired with
/// `per_arg` consecutive entries of the `mu` grid, cycling through the
/// orders, so the grid grows linearly rather than as a full product.
fn pairs(g: &Grids, kinds: &[BesselKind], per_arg: usize, inverse: bool) -> Vec<Point> {
    let (nus, mus, zs) = (orders(g), &g.mu, args(g));
    let mut out = Vec::new();
    let mut k = 0usize;
    for &kind in kinds {
        for &z in &zs {
            for _ in 0..per_arg {
                let nu = nus[k % nus.len()];
                let m1 = mus[k % mus.len()];
                let m2 = if inverse { -m1 } else { mus[(k + 1 + mus.len() / 2) % mus.len()] };
                out.push(Point::new(Some(kind), &[("nu", nu), ("mu1", c(m1)), ("mu2", c(m2)), ("z", z)]));
                k += 1;
            }
        }
    }
    out
}

fn sample_pair(rng: &mut Rng, kinds: &[BesselKind], inverse: bool) -> Point {
    let kind = kinds[rng.gen_range(0..kinds.len())];
    let riemann = matches!(kind, J | I);
    let nu = c(if riemann { rng.gen_range(-0.5..2.0) } else { rng.gen_range(-1.0..2.0) });
    let m1 = rng.gen_range(-1.0..1.0);
    let m2 = if inverse { -m1 } else { rng.gen_range(-1.0..1.0) };
    let z = polar(rng, (0.5, 10.0), 1.2);
    Point::new(Some(kind), &[("nu", nu), ("mu1", c(m1)), ("mu2", c(m2)), ("z", z)])
}

fn auto_form(mu: C64) -> Form {
    if mu.re < -COLLAPSE_MARGIN {
        Form::Collapsed
    } else {
        Form::Loop
    }
}

fn weyl_compose(p: &Point, ctx: &Ctx) -> Outcome {
    let kind = p.kind.expect("kind");
    let (nu, m1, m2, z) = (p.get("nu"), p.get("mu1"), p.get("mu2"), p.get("z"));
    let inner_tol = ctx.quad_tol * 10.0;
    let inner = |w: C64| shift(&ShiftRequest::new(kind, Route::WeylRaise, nu, m1, w).with_tol(inner_tol)).map(|r| r.value.value());
    Outcome::of((|| {
        let twice = weyl_raise_of(inner, kind, m2, z, auto_form(m2), ctx.quad_tol * 100.0)?.value.value();
        let once = ShiftRequest::new(kind, Route::WeylRaise, nu, m1 + m2, z).with_tol(ctx.quad_tol);
        let once = if (m1 + m2).norm() == 0.0 {
            ppow(z, -nu * 0.5) * value(kind, nu, psqrt(z))?
        } else {
            shift(&once)?.value.value()
        };
        Ok(rel(twice, once))
    })())
}

fn riemann_compose(p: &Point, ctx: &Ctx) -> Outcome {
    let kind = p.kind.expect("kind");
    let (nu, m1, m2, z) = (p.get("nu"), p.get("mu1"), p.get("mu2"), p.get("z"));
    if !(nu.re > -1.0 && (nu - m1).re > -1.0) {
        return Outcome::Skip;
    }
    let inner_tol = ctx.quad_tol * 10.0;
    let inner = |y: C64| shift(&ShiftRequest::new(kind, Route::RiemannLower, nu, m1, y).with_tol(inner_tol)).map(|r| r.value.value());
    Outcome::of((|| {
        let twice = riemann_lower_of(inner, nu - m1, m2, z, Form::Loop, ctx.quad_tol * 10.0)?.value.value();
        let once = if (m1 + m2).norm() == 0.0 {
            value(kind, nu, z)?
        } else {
            shift(&ShiftRequest::new(kind, Route::RiemannLower, nu, m1 + m2, z).with_tol(ctx.quad_tol))?.value.value()
        };
        Ok(rel(twice, once))
    })())
}
