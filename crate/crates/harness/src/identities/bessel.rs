use std::f64::consts::PI;

use fracbessel::besselcore::{eval, value, BesselKind};
use fracbessel::complexmath::{cospi, expipi, sinpi};
use fracbessel::C64;
use rand::Rng as _;

use super::{args, orders, product, rel, Ctx, Identity, Outcome, Point, Rng};

use BesselKind::*;

pub(super) fn identities() -> Vec<Identity> {
    vec![
        Identity {
            id: "bessel_wronskian",
            anchor: "W[J,Y] = 2/(pi z), W[K,I] = 1/z, W[H1,H2] = -4i/(pi z)",
            tol: 1e-9,
            needs: &["nu", "x"],
            grid: |g| product(&[], &[("nu", orders(g)), ("z", args(g))]),
            sample: sample_plain,
            check: wronskian,
        },
        Identity {
            id: "bessel_reflection",
            anchor: "Z_(-nu) in terms of Z_nu for all six kinds",
            tol: 1e-10,
            needs: &["nu", "x"],
            grid: |g| product(&[], &[("nu", orders(g)), ("z", args(g))]),
            sample: sample_plain,
            check: reflection,
        },
        Identity {
            id: "bessel_ode",
            anchor: "z^2 Z'' + z Z' + (+-z^2 - nu^2) Z = 0",
            tol: 1e-8,
            needs: &["nu", "x"],
            grid: |g| product(&BesselKind::ALL, &[("nu", orders(g)), ("z", args(g))]),
            sample: |rng| {
                let mut p = sample_plain(rng);
                p.kind = Some(BesselKind::ALL[rng.gen_range(0..6)]);
                p
            },
            check: ode,
        },
    ]
}

/// Arguments stay near the positive axis: further out the Wronskian
/// combinations cancel by `exp(2 |Im z|)`.
fn sample_plain(rng: &mut Rng) -> Point {
    let nu = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-0.5..0.5));
    let z = C64::new(rng.gen_range(0.3..25.0), rng.gen_range(-3.0..3.0));
    Point::new(None, &[("nu", nu), ("z", z)])
}

fn wronskian(p: &Point, _: &Ctx) -> Outcome {
    let (nu, z) = (p.get("nu"), p.get("z"));
    let w = |a: BesselKind, b: BesselKind| -> fracbessel::Result<C64> {
        let (fa, da) = eval(a, nu, z)?;
        let (fb, db) = eval(b, nu, z)?;
        Ok(fa * db - da * fb)
    };
    let i = C64::new(0.0, 1.0);
    Outcome::of((|| {
        let r1 = rel(w(J, Y)?, 2.0 / (PI * z));
        let r2 = rel(w(K, I)?, 1.0 / z);
        let r3 = rel(w(H1, H2)?, -4.0 * i / (PI * z));
        Ok(r1.max(r2).max(r3))
    })())
}

fn reflection(p: &Point, _: &Ctx) -> Outcome {
    let (nu, z) = (p.get("nu"), p.get("z"));
    Outcome::of((|| {
        let v = |k: BesselKind, n: C64| value(k, n, z);
        let (j, y) = (v(J, nu)?, v(Y, nu)?);
        let (cs, sn) = (cospi(nu), sinpi(nu));
        let checks = [
            rel(v(J, -nu)?, cs * j - sn * y),
            rel(v(Y, -nu)?, sn * j + cs * y),
            rel(v(I, -nu)?, v(I, nu)? + 2.0 / PI * sn * v(K, nu)?),
            rel(v(K, -nu)?, v(K, nu)?),
            rel(v(H1, -nu)?, expipi(nu) * v(H1, nu)?),
            rel(v(H2, -nu)?, expipi(-nu) * v(H2, nu)?),
        ];
        Ok(checks.into_iter().fold(0.0, f64::max))
    })())
}

/// Residual of Bessel's equation with `Z''` from a five-point stencil on
/// the analytic derivative, relative to the largest term.
fn ode(p: &Point, _: &Ctx) -> Outcome {
    let (kind, nu, z) = (p.kind(), p.get("nu"), p.get("z"));
    Outcome::of((|| {
        let h = 1e-3 * z.norm().min(1.0);
        let d = |s: f64| eval(kind, nu, z + s * h).map(|r| r.1);
        let (f, df) = eval(kind, nu, z)?;
        let ddf = (-d(2.0)? + 8.0 * d(1.0)? - 8.0 * d(-1.0)? + d(-2.0)?) / (12.0 * h);
        let sign = if kind.is_modified() { -1.0 } else { 1.0 };
        let terms = [z * z * ddf, z * df, (sign * z * z - nu * nu) * f];
        let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        Ok((terms[0] + terms[1] + terms[2]).norm() / scale.max(1e-300))
    })())
}
