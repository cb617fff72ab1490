use fracbessel::besselcore::{value, BesselKind};
use fracbessel::intreps::{represent, Family, ReprRequest};
use fracbessel::C64;
use rand::Rng as _;

use super::{args, c, orders, product, reals, rel, Ctx, Identity, Outcome, Point};
use crate::config::Grids;

use BesselKind::*;

pub(super) fn identities() -> Vec<Identity> {
    vec![
        Identity {
            id: "mehler_sonine",
            anchor: "generalised Mehler-Sonine integrals over (1, inf) for H1, H2, J, Y",
            tol: 1.0,
            needs: &["mu", "x"],
            grid: |g| product(&[H1, H2, J, Y], &[("mu", reals(&g.mu)), ("x", args(g))]),
            sample: |rng| {
                let kind = [H1, H2, J, Y][rng.gen_range(0..4)];
                let mu = rng.gen_range(-0.45..0.45);
                let x = if matches!(kind, J | Y) { c(rng.gen_range(0.3..20.0)) } else { C64::from_polar(rng.gen_range(0.3..20.0), rng.gen_range(-1.0..1.0)) };
                Point::new(Some(kind), &[("mu", c(mu)), ("x", x)])
            },
            check: |p, ctx| against_core(p, ctx, Family::MehlerSonine),
        },
        Identity {
            id: "mehler_combination",
            anchor: "(H1_mu + H2_mu)/2 = J_mu and (H1_mu - H2_mu)/(2i) = Y_mu from Mehler-Sonine integrals",
            tol: 1.0,
            needs: &["mu", "x"],
            grid: |g| product(&[], &[("mu", reals(&g.mu)), ("x", reals(&g.x))]),
            sample: |rng| Point::new(None, &[("mu", c(rng.gen_range(-0.45..0.45))), ("x", c(rng.gen_range(0.3..20.0)))]),
            check: combination,
        },
        Identity {
            id: "hankel_loop",
            anchor: "Hankel loop integrals around t = 1 for H1, H2",
            tol: 1.0,
            needs: &["mu", "x"],
            grid: |g| product(&[H1, H2], &[("mu", loop_orders(g)), ("x", args(g))]),
            sample: |rng| {
                let kind = [H1, H2][rng.gen_range(0..2)];
                let mu = C64::new(rng.gen_range(-2.0..2.5), rng.gen_range(-0.3..0.3));
                Point::new(Some(kind), &[("mu", mu), ("x", C64::from_polar(rng.gen_range(0.3..20.0), rng.gen_range(-1.0..1.0)))])
            },
            check: |p, ctx| against_core(p, ctx, Family::HankelLoop),
        },
        Identity {
            id: "poisson",
            anchor: "Poisson integrals over (0, 1) and around (0, 1+, 0) for J, I",
            tol: 1.0,
            needs: &["nu", "mu", "x"],
            grid: |g| product(&[J, I], &[("mu", poisson_orders(g)), ("x", args(g))]),
            sample: |rng| {
                let kind = [J, I][rng.gen_range(0..2)];
                let mu = C64::new(rng.gen_range(-2.0..3.0), rng.gen_range(-0.3..0.3));
                Point::new(Some(kind), &[("mu", mu), ("x", C64::from_polar(rng.gen_range(0.3..20.0), rng.gen_range(-1.5..1.5)))])
            },
            check: |p, ctx| against_core(p, ctx, Family::Poisson),
        },
    ]
}

/// The `mu` grid plus complex orders; `mu = 1` lies outside the
/// Mehler-Sonine strip.
fn loop_orders(g: &Grids) -> Vec<C64> {
    let mut v = reals(&g.mu);
    v.extend(orders(g).into_iter().filter(|o| o.im != 0.0));
    v
}

/// Orders `nu` and `mu` together, both signs of the Poisson strip.
fn poisson_orders(g: &Grids) -> Vec<C64> {
    let mut v = orders(g);
    for m in reals(&g.mu) {
        if !v.contains(&m) {
            v.push(m);
        }
    }
    v
}

fn against_core(p: &Point, ctx: &Ctx, family: Family) -> Outcome {
    let kind = p.kind.expect("kind");
    let (mu, x) = (p.get("mu"), p.get("x"));
    Outcome::of((|| {
        let got = represent(&ReprRequest::new(family, kind, mu, x).with_tol(ctx.quad_tol))?.value();
        Ok(rel(got, value(kind, mu, x)?))
    })())
}

fn combination(p: &Point, ctx: &Ctx) -> Outcome {
    let (mu, x) = (p.get("mu"), p.get("x"));
    let ms = |kind| represent(&ReprRequest::new(Family::MehlerSonine, kind, mu, x).with_tol(ctx.quad_tol)).map(|v| v.value());
    Outcome::of((|| {
        let (h1, h2) = (ms(H1)?, ms(H2)?);
        let (j, y) = (ms(J)?, ms(Y)?);
        Ok(rel((h1 + h2) * 0.5, j).max(rel((h1 - h2) / C64::new(0.0, 2.0), y)))
    })())
}
