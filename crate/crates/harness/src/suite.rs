use rand::SeedableRng;

use crate::config::{ConfigError, SuiteConfig};
use crate::identities::{self, Ctx, Identity, Outcome, Point, Rng};
use crate::report::{IdentityReport, Status};

/// Stable per-identity stream: FNV-1a of the id mixed into the seed.
fn stream_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}

/// The grid an identity runs on: the configured grid followed by the
/// seeded random points.
pub fn points(config: &SuiteConfig, identity: &Identity) -> Vec<Point> {
    let mut pts = (identity.grid)(config.grids_for(identity.id));
    let mut rng = Rng::seed_from_u64(stream_seed(config.seed, identity.id));
    pts.extend((0..config.random_points).map(|_| (identity.sample)(&mut rng)));
    pts
}

pub fn run_identity(config: &SuiteConfig, identity: &Identity) -> IdentityReport {
    let tol = config.tol.min(identity.tol);
    let ctx = Ctx { quad_tol: config.quad_tol, tol };
    let pts = points(config, identity);
    let (mut skips, mut errors, mut sum, mut count) = (0usize, 0usize, 0.0f64, 0usize);
    let mut worst: Option<(f64, &Point)> = None;
    let mut first_error: Option<&Point> = None;
    for p in &pts {
        match (identity.check)(p, &ctx) {
            Outcome::Skip => skips += 1,
            Outcome::Failed(_) => {
                errors += 1;
                first_error.get_or_insert(p);
            }
            Outcome::Residual(r) => {
                sum += r;
                count += 1;
                if worst.is_none_or(|(w, _)| r > w) {
                    worst = Some((r, p));
                }
            }
        }
    }
    let max_rel_err = worst.map_or(0.0, |w| w.0);
    let status = if count == 0 && errors == 0 {
        Status::Skipped
    } else if errors == 0 && max_rel_err <= tol {
        Status::Pass
    } else {
        Status::Fail
    };
    let shown = first_error.or(worst.map(|w| w.1));
    IdentityReport {
        identity_id: identity.id.to_string(),
        anchor: identity.anchor.to_string(),
        grid_size: pts.len(),
        max_rel_err,
        mean_rel_err: if count > 0 { sum / count as f64 } else { 0.0 },
        n_validity_skips: skips,
        n_errors: errors,
        tol,
        status,
        worst_point: shown.map(Point::describe).unwrap_or_default(),
    }
}

/// Runs every selected identity; reports come back sorted by id.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<IdentityReport>, ConfigError> {
    let ids = config.validate()?;
    Ok(ids.iter().filter_map(|id| identities::find(id)).map(|i| run_identity(config, i)).collect())
}
