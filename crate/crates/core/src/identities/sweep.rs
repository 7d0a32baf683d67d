//! Deterministic parameter sweeps. Points fan out across rayon workers;
//! reports come back merged in grid order, so results are identical
//! regardless of scheduling.

use rayon::prelude::*;

use crate::error::Result;

use super::params::ParamPoint;
use super::registry::{EvalCtx, Registry};
use super::report::IdentityReport;

pub fn sweep(
    registry: &Registry,
    ctx: &EvalCtx,
    id: &str,
    points: &[ParamPoint],
    override_domain: bool,
) -> Result<Vec<IdentityReport>> {
    registry.get(id)?; // surface unknown ids before spawning work
    let reports = points
        .par_iter()
        .map(|pt| {
            registry
                .verify(ctx, id, pt, override_domain)
                .expect("id checked above")
        })
        .collect();
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::grid::GridSpec;
    use crate::identities::params::Slot;
    use crate::identities::report::summarize;

    #[test]
    fn sweep_merges_in_grid_order() {
        let registry = Registry::standard();
        let ctx = EvalCtx::new();
        let mut grid = GridSpec::new();
        grid.parse_and_add(Slot::N, "1..10").unwrap();
        grid.parse_and_add(Slot::Prob, "1/2,1/3").unwrap();
        let points = grid.points().unwrap();
        let reports = sweep(&registry, &ctx, "mneimneh", &points, false).unwrap();
        assert_eq!(reports.len(), 20);
        for (r, pt) in reports.iter().zip(&points) {
            assert_eq!(r.params, pt.params_map());
            assert!(r.passed(), "mneimneh failed at {:?}", r.params);
        }
        let s = summarize(&reports);
        assert_eq!(s.passed, 20);
        assert_eq!(s.mismatched + s.skipped + s.out_of_domain, 0);
    }

    #[test]
    fn unknown_id_is_an_error() {
        let registry = Registry::standard();
        let ctx = EvalCtx::new();
        assert!(sweep(&registry, &ctx, "nope", &[], false).is_err());
    }

    #[test]
    fn invalid_point_skips_without_poisoning_the_sweep() {
        let registry = Registry::standard();
        let ctx = EvalCtx::new();
        let mut grid = GridSpec::new();
        grid.parse_and_add(Slot::N, "1..4").unwrap();
        grid.parse_and_add(Slot::P, "2").unwrap();
        grid.parse_and_add(Slot::X, "1/3").unwrap();
        grid.parse_and_add(Slot::Y, "1/2").unwrap();
        // z = 2 violates the stated domain; the rest are fine
        grid.parse_and_add(Slot::Z, "1/5,2").unwrap();
        let points = grid.points().unwrap();
        let reports = sweep(&registry, &ctx, "thm1", &points, false).unwrap();
        let s = summarize(&reports);
        assert_eq!(s.total, 8);
        assert_eq!(s.passed, 4);
        assert_eq!(s.skipped, 4);
        assert_eq!(s.mismatched, 0);
    }

    #[test]
    fn empty_grid_sweeps_to_nothing() {
        let registry = Registry::standard();
        let ctx = EvalCtx::new();
        let reports = sweep(&registry, &ctx, "mneimneh", &[], false).unwrap();
        assert!(reports.is_empty());
    }
}
