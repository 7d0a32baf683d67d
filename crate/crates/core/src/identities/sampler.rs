//! Seeded randomized search for counterexamples. Sampling is fully
//! deterministic for a fixed seed: the n-th candidate point depends only on
//! the seed and the identity's slot list.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::composition::Composition;
use crate::error::Result;
use crate::rational::{rat, Rational};

use super::params::{ParamPoint, Slot};
use super::registry::{EvalCtx, Registry};
use super::report::Counterexample;

/// Bounds for sampled parameters.
#[derive(Clone, Copy, Debug)]
pub struct SamplerSpec {
    pub n_max: u32,
    /// Max denominator of sampled rationals.
    pub den_max: u32,
    /// Bound on |numerator| of sampled rationals.
    pub num_max: i64,
    pub p_max: u32,
    pub m_max: u32,
    pub r_max: u32,
    pub l_max: u32,
    pub comp_weight_max: u32,
    pub comp_depth_max: u32,
}

impl Default for SamplerSpec {
    fn default() -> Self {
        SamplerSpec {
            n_max: 8,
            den_max: 6,
            num_max: 3,
            p_max: 2,
            m_max: 1,
            r_max: 2,
            l_max: 4,
            comp_weight_max: 4,
            comp_depth_max: 3,
        }
    }
}

fn sample_rational(rng: &mut ChaCha8Rng, spec: &SamplerSpec, nonzero: bool) -> Rational {
    loop {
        let den = rng.gen_range(1..=spec.den_max) as i64;
        let num = rng.gen_range(-spec.num_max..=spec.num_max);
        let q = rat(num, den);
        if !nonzero || !q.is_zero() {
            return q;
        }
    }
}

/// Rational in (-num_max, 1]: numerators capped at the denominator.
fn sample_rational_le_one(rng: &mut ChaCha8Rng, spec: &SamplerSpec) -> Rational {
    let den = rng.gen_range(1..=spec.den_max) as i64;
    let num = rng.gen_range(-spec.num_max * den..=den);
    rat(num, den)
}

fn sample_composition(rng: &mut ChaCha8Rng, spec: &SamplerSpec) -> Composition {
    let depth = rng.gen_range(1..=spec.comp_depth_max) as usize;
    let mut parts = Vec::with_capacity(depth);
    let mut budget = spec.comp_weight_max.max(depth as u32);
    for i in 0..depth {
        let remaining_slots = (depth - i - 1) as u32;
        let hi = (budget - remaining_slots).max(1);
        let part = rng.gen_range(1..=hi);
        parts.push(part);
        budget -= part;
    }
    Composition::new(parts).expect("parts are positive")
}

fn sample_point(rng: &mut ChaCha8Rng, spec: &SamplerSpec, id: &str, slots: &[Slot]) -> ParamPoint {
    // identities whose statement needs m >= 1
    let m_needs_one = matches!(id, "thm2" | "cor2" | "prop-nested" | "prop5");
    let mut pt = ParamPoint::new(1);
    for slot in slots {
        match slot {
            Slot::N => pt.n = rng.gen_range(1..=spec.n_max),
            Slot::X => pt.x = Some(sample_rational(rng, spec, true)),
            Slot::Y => pt.y = Some(sample_rational(rng, spec, true)),
            Slot::Z => pt.z = Some(sample_rational_le_one(rng, spec)),
            Slot::Prob => {
                let den = rng.gen_range(1..=spec.den_max) as i64;
                let num = rng.gen_range(0..=den);
                pt.prob = Some(rat(num, den));
            }
            Slot::A => pt.a = Some(sample_rational(rng, spec, true)),
            Slot::Alpha => {
                let alpha = loop {
                    let q = sample_rational(rng, spec, true);
                    if q != rat(-1, 1) {
                        break q;
                    }
                };
                pt.alpha = Some(alpha);
            }
            Slot::P => pt.p = Some(rng.gen_range(1..=spec.p_max)),
            Slot::M => {
                let lo = if m_needs_one { 1 } else { 0 };
                pt.m = Some(rng.gen_range(lo..=spec.m_max.max(lo)));
            }
            Slot::R => pt.r = Some(rng.gen_range(1..=spec.r_max.max(1))),
            Slot::L => pt.l = Some(rng.gen_range(0..=spec.l_max)),
            Slot::Comp => pt.k = Some(sample_composition(rng, spec)),
            Slot::PVec => {
                // length is fixed after MVec below; fill both there
            }
            Slot::MVec => {
                let r = rng.gen_range(0..=spec.r_max) as usize;
                let m_vec: Vec<u32> = (0..r).map(|_| rng.gen_range(0..=spec.m_max)).collect();
                let p_vec: Vec<u32> = (0..=r)
                    .map(|i| {
                        if r == 0 && i == 0 {
                            // a lone {1}_{p-1} block needs p >= 2 to be nonempty
                            rng.gen_range(2..=spec.p_max.max(2))
                        } else {
                            rng.gen_range(1..=spec.p_max)
                        }
                    })
                    .collect();
                pt.m_vec = Some(m_vec);
                pt.p_vec = Some(p_vec);
            }
        }
    }
    pt
}

/// Draw up to `budget` points for `id` and return the first exact mismatch,
/// if any. Domain-skipped points count against the budget.
pub fn search_counterexample(
    registry: &Registry,
    ctx: &EvalCtx,
    id: &str,
    spec: &SamplerSpec,
    seed: u64,
    budget: u64,
    override_domain: bool,
) -> Result<Option<Counterexample>> {
    let def = registry.get(id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let pt = sample_point(&mut rng, spec, def.id, def.slots);
        let report = registry.verify(ctx, id, &pt, override_domain)?;
        if report.mismatch() {
            return Ok(Some(Counterexample {
                identity_id: report.identity_id,
                params: report.params,
                lhs: report.lhs.unwrap_or_default(),
                rhs: report.rhs.unwrap_or_default(),
                seed,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::registry::IdentityDef;
    use crate::identities::report::Form;
    use crate::rational::rat_int;

    #[test]
    fn conjecture_search_finds_nothing() {
        let registry = Registry::standard();
        let ctx = EvalCtx::new();
        let spec = SamplerSpec {
            n_max: 6,
            ..Default::default()
        };
        let found =
            search_counterexample(&registry, &ctx, "conjecture", &spec, 42, 60, false).unwrap();
        assert!(found.is_none(), "unexpected counterexample: {found:?}");
    }

    #[test]
    fn corrupted_entry_is_caught() {
        let mut registry = Registry::standard();
        registry.register(IdentityDef {
            id: "selftest-broken",
            summary: "fixture: sides deliberately differ",
            slots: &[Slot::N],
            in_default_set: false,
            soft_domain: |_| None,
            eval: |_, pt| {
                Ok(vec![
                    Form::new("lhs", rat_int(pt.n as i64)),
                    Form::new("rhs", rat_int(pt.n as i64 + 1)),
                ])
            },
        });
        let ctx = EvalCtx::new();
        let spec = SamplerSpec::default();
        let found =
            search_counterexample(&registry, &ctx, "selftest-broken", &spec, 7, 10, false)
                .unwrap();
        let ce = found.expect("must find the planted mismatch");
        assert_eq!(ce.identity_id, "selftest-broken");
        assert_ne!(ce.lhs, ce.rhs);
        assert_eq!(ce.seed, 7);
    }

    #[test]
    fn zero_budget_finds_nothing() {
        let registry = Registry::standard();
        let ctx = EvalCtx::new();
        let spec = SamplerSpec::default();
        let found =
            search_counterexample(&registry, &ctx, "conjecture", &spec, 42, 0, false).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn search_is_deterministic() {
        let mut registry = Registry::standard();
        registry.register(IdentityDef {
            id: "selftest-flaky",
            summary: "fixture: fails for n >= 4",
            slots: &[Slot::N, Slot::X],
            in_default_set: false,
            soft_domain: |_| None,
            eval: |_, pt| {
                let bump = if pt.n >= 4 { 1 } else { 0 };
                Ok(vec![
                    Form::new("lhs", rat_int(pt.n as i64)),
                    Form::new("rhs", rat_int(pt.n as i64 + bump)),
                ])
            },
        });
        let ctx = EvalCtx::new();
        let spec = SamplerSpec::default();
        let a = search_counterexample(&registry, &ctx, "selftest-flaky", &spec, 99, 50, false)
            .unwrap()
            .expect("finds n >= 4 eventually");
        let b = search_counterexample(&registry, &ctx, "selftest-flaky", &spec, 99, 50, false)
            .unwrap()
            .expect("same seed, same result");
        assert_eq!(a, b);
    }
}
