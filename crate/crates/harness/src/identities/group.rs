use fracbessel::besselcore::{value, BesselKind};
use fracbessel::groupaction::{group_shift, lommel_series, step, step_normalized, Direction, GroupShift};
use fracbessel::{ComplexValue, C64};
use rand::Rng as _;

use super::{args, c, orders, product, rel, Ctx, Identity, Outcome, Point, Rng};

/// Terms of the Lommel expansion checked against the closed form.
pub const LOMMEL_TERMS: usize = 40;

/// Directions of `u` within the half-radius disc.
const U_ANGLES: [f64; 3] = [0.0, 2.0, -2.5];

pub(super) fn identities() -> Vec<Identity> {
    vec![
        Identity {
            id: "lommel_plus",
            anchor: "sum (-u)^n/n! t^(nu+n) (P+^n Z_nu)(x) = exp(-u P+) t^nu Z_nu(x)",
            tol: 1e-10,
            needs: &["nu", "x"],
            grid: |g| product(&BesselKind::ALL, &[("nu", orders(g)), ("x", args(g)), ("theta", U_ANGLES.iter().map(|&a| c(a)).collect())]),
            sample: sample_lommel,
            check: |p, ctx| lommel(p, ctx, Direction::Plus),
        },
        Identity {
            id: "lommel_minus",
            anchor: "sum (-u)^n/n! t^(nu-n) (P-^n Z_nu)(x) = exp(-u P-) t^nu Z_nu(x)",
            tol: 1e-10,
            needs: &["nu", "x"],
            grid: |g| product(&BesselKind::ALL, &[("nu", orders(g)), ("x", args(g)), ("theta", U_ANGLES.iter().map(|&a| c(a)).collect())]),
            sample: sample_lommel,
            check: |p, ctx| lommel(p, ctx, Direction::Minus),
        },
        Identity {
            id: "group_law",
            anchor: "exp(-u2 P) exp(-u1 P) = exp(-(u1+u2) P) for P+ and P-",
            tol: 1e-10,
            needs: &["nu", "x"],
            grid: |g| product(&BesselKind::ALL, &[("nu", orders(g)), ("x", args(g))]),
            sample: |rng| {
                let kind = BesselKind::ALL[rng.gen_range(0..6)];
                let nu = C64::new(rng.gen_range(-2.0..3.0), rng.gen_range(-0.3..0.3));
                Point::new(Some(kind), &[("nu", nu), ("x", c(rng.gen_range(0.3..20.0)))])
            },
            check: group_law,
        },
        Identity {
            id: "step",
            anchor: "(-+d/dx + nu/x) Z_nu(x) = Z_(nu+-1)(x), up to the sign of I and K",
            tol: 1e-9,
            needs: &["nu", "x"],
            grid: |g| product(&BesselKind::ALL, &[("nu", orders(g)), ("x", args(g))]),
            sample: sample_step,
            check: step_matches,
        },
        Identity {
            id: "step_roundtrip",
            anchor: "P+ P- Z_nu = Z_nu for J, Y, H1, H2 and -Z_nu for I, K",
            tol: 1e-8,
            needs: &["nu", "x"],
            grid: |g| product(&BesselKind::ALL, &[("nu", orders(g)), ("x", args(g))]),
            sample: sample_step,
            check: roundtrip,
        },
    ]
}

fn sample_lommel(rng: &mut Rng) -> Point {
    let kind = BesselKind::ALL[rng.gen_range(0..6)];
    let nu = c([0.0, 1.0 / 3.0, 0.5, 1.0][rng.gen_range(0..4)]);
    let x = C64::from_polar(rng.gen_range(0.5..20.0), rng.gen_range(-1.0..1.0));
    Point::new(Some(kind), &[("nu", nu), ("x", x), ("theta", c(rng.gen_range(-3.1..3.1)))])
}

fn sample_step(rng: &mut Rng) -> Point {
    let kind = BesselKind::ALL[rng.gen_range(0..6)];
    let nu = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-0.3..0.3));
    let x = C64::from_polar(rng.gen_range(0.3..20.0), rng.gen_range(-2.0..2.0));
    Point::new(Some(kind), &[("nu", nu), ("x", x)])
}

/// Partial sum at half the convergence radius against the closed form.
/// Points where the series' own tail estimate exceeds the tolerance are
/// skipped as truncation-limited.
fn lommel(p: &Point, ctx: &Ctx, direction: Direction) -> Outcome {
    let kind = p.kind.expect("kind");
    let probe = GroupShift::new(kind, p.get("nu"), p.get("x"), 1.0, 0.0, direction);
    let u = C64::from_polar(0.5 * probe.radius(), p.re("theta"));
    let g = GroupShift { u: u.into(), ..probe };
    let r = (|| -> fracbessel::Result<(f64, f64)> {
        let want = group_shift(&g)?.value();
        let (got, last) = lommel_series(&g, LOMMEL_TERMS)?;
        Ok((rel(got.value(), want), 2.0 * last / got.modulus()))
    })();
    match r {
        Ok((_, tail)) if tail > ctx.tol => Outcome::Skip,
        Ok((res, _)) => Outcome::of(Ok(res)),
        Err(e) => Outcome::from_error(&e),
    }
}

fn group_law(p: &Point, _: &Ctx) -> Outcome {
    let kind = p.kind.expect("kind");
    let (nu, x) = (p.get("nu"), p.get("x"));
    let t = ComplexValue::from_polar(1.0, 0.35);
    let scale = 0.5 * x.norm();
    let (u1, u2) = (C64::new(0.3, 0.1) * scale, C64::new(-0.2, 0.25) * scale);
    Outcome::of((|| {
        let mut worst = 0.0f64;
        for d in [Direction::Plus, Direction::Minus] {
            let (x1, t1) = GroupShift::new(kind, nu, x, t, u1, d).image()?;
            let two = group_shift(&GroupShift::new(kind, nu, x1, t1, u2, d))?.value();
            let one = group_shift(&GroupShift::new(kind, nu, x, t, u1 + u2, d))?.value();
            worst = worst.max(rel(two, one));
        }
        Ok(worst)
    })())
}

fn step_matches(p: &Point, _: &Ctx) -> Outcome {
    let kind = p.kind.expect("kind");
    let (nu, x) = (p.get("nu"), p.get("x"));
    Outcome::of((|| {
        let up = rel(step_normalized(kind, nu, x, Direction::Plus)?.value(), value(kind, nu + 1.0, x)?);
        let down = rel(step_normalized(kind, nu, x, Direction::Minus)?.value(), value(kind, nu - 1.0, x)?);
        Ok(up.max(down))
    })())
}

/// `P+` at order `nu - 1` applied to `P- Z_nu`, differentiating with a
/// five-point stencil.
fn roundtrip(p: &Point, _: &Ctx) -> Outcome {
    let kind = p.kind.expect("kind");
    let (nu, x) = (p.get("nu"), p.get("x"));
    Outcome::of((|| {
        let h = 1e-3 * x.norm().min(1.0);
        let g = |s: f64| step(kind, nu, x + s * h, Direction::Minus).map(|v| v.value());
        let dg = (-g(2.0)? + 8.0 * g(1.0)? - 8.0 * g(-1.0)? + g(-2.0)?) / (12.0 * h);
        let back = -dg + (nu - 1.0) / x * g(0.0)?;
        let sign = if kind.is_modified() { -1.0 } else { 1.0 };
        Ok(rel(back * sign, value(kind, nu, x)?))
    })())
}
