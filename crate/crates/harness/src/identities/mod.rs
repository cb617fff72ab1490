//! The built-in identities. Each one maps grid points to a relative
//! residual between two evaluation routes.

use fracbessel::besselcore::BesselKind;
use fracbessel::{Error, C64};
use rand_chacha::ChaCha8Rng;

use crate::config::Grids;
use crate::report::Coord;

mod bessel;
mod group;
mod reprs;
mod shifts;

pub type Rng = ChaCha8Rng;

#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub kind: Option<BesselKind>,
    pub coords: Vec<(&'static str, C64)>,
}

impl Point {
    pub fn new(kind: Option<BesselKind>, coords: &[(&'static str, C64)]) -> Point {
        Point { kind, coords: coords.to_vec() }
    }

    pub fn get(&self, name: &str) -> C64 {
        self.coords.iter().find(|(n, _)| *n == name).map(|c| c.1).unwrap_or_else(|| panic!("grid point has no `{name}`"))
    }

    pub fn re(&self, name: &str) -> f64 {
        self.get(name).re
    }

    fn kind(&self) -> BesselKind {
        self.kind.expect("identity needs a kind")
    }

    pub fn describe(&self) -> Vec<Coord> {
        let mut out = Vec::with_capacity(self.coords.len() + 1);
        if let Some(k) = self.kind {
            out.push(Coord { name: "kind".into(), value: k.name().into() });
        }
        for (name, v) in &self.coords {
            let value = if v.im == 0.0 { format!("{}", v.re) } else { format!("{},{}", v.re, v.im) };
            out.push(Coord { name: (*name).into(), value });
        }
        out
    }
}

/// Result of checking one grid point.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Residual(f64),
    /// The point lies outside the identity's validity region.
    Skip,
    /// A numerical failure inside the validity region.
    Failed(String),
}

impl Outcome {
    /// Maps a library error: domain and branch restrictions are skips,
    /// anything else is a numerical failure.
    pub fn from_error(e: &Error) -> Outcome {
        match e {
            Error::Validity(_) | Error::Pole { .. } | Error::BranchViolation | Error::Radius { .. } => Outcome::Skip,
            _ => Outcome::Failed(e.to_string()),
        }
    }

    pub fn of(r: fracbessel::Result<f64>) -> Outcome {
        match r {
            Ok(v) if v.is_finite() => Outcome::Residual(v),
            Ok(v) => Outcome::Failed(format!("non-finite residual {v}")),
            Err(e) => Outcome::from_error(&e),
        }
    }
}

pub struct Ctx {
    pub quad_tol: f64,
    /// Effective pass threshold of the identity being run.
    pub tol: f64,
}

pub struct Identity {
    pub id: &'static str,
    pub anchor: &'static str,
    /// Intrinsic pass threshold; the suite uses the smaller of this and the
    /// configured tolerance.
    pub tol: f64,
    /// Grids that must be non-empty.
    pub needs: &'static [&'static str],
    pub grid: fn(&Grids) -> Vec<Point>,
    /// A random point from the validity region.
    pub sample: fn(&mut Rng) -> Point,
    pub check: fn(&Point, &Ctx) -> Outcome,
}

pub fn all() -> &'static [Identity] {
    static ALL: std::sync::OnceLock<Vec<Identity>> = std::sync::OnceLock::new();
    ALL.get_or_init(|| {
        let mut v = Vec::new();
        v.extend(bessel::identities());
        v.extend(shifts::identities());
        v.extend(group::identities());
        v.extend(reprs::identities());
        v.sort_by_key(|i| i.id);
        v
    })
}

pub fn find(id: &str) -> Option<&'static Identity> {
    all().iter().find(|i| i.id == id)
}

pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn cx(v: [f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

/// Real orders followed by complex ones.
pub fn orders(g: &Grids) -> Vec<C64> {
    g.nu.iter().map(|&v| c(v)).chain(g.complex_nu.iter().map(|&v| cx(v))).collect()
}

/// Real arguments followed by complex ones.
pub fn args(g: &Grids) -> Vec<C64> {
    g.x.iter().map(|&v| c(v)).chain(g.complex_z.iter().map(|&v| cx(v))).collect()
}

pub fn reals(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&v| c(v)).collect()
}

/// Every combination of `kinds` and the axis values, in row-major order.
pub fn product(kinds: &[BesselKind], axes: &[(&'static str, Vec<C64>)]) -> Vec<Point> {
    let kinds: Vec<Option<BesselKind>> = if kinds.is_empty() { vec![None] } else { kinds.iter().map(|&k| Some(k)).collect() };
    let mut out = Vec::new();
    for kind in kinds {
        let mut acc = vec![Vec::new()];
        for (name, values) in axes {
            acc = acc
                .into_iter()
                .flat_map(|prefix: Vec<(&'static str, C64)>| {
                    values.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push((*name, v));
                        p
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(|coords| Point { kind, coords }));
    }
    out
}
