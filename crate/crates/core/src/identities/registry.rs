//! The identity registry: every identity exposes exact evaluators for its
//! sides, and the harness compares them over parameter points.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use parking_lot::Mutex;

use crate::error::{Error, Result};
use crate::harmonic::HarmonicEvaluator;
use crate::stirling_bell::StirlingTable;

use super::params::{ParamPoint, Slot};
use super::report::{Form, IdentityReport};

/// Shared evaluation state: the harmonic memo cache and the grow-only
/// Stirling triangle. Safe to share across sweep workers.
pub struct EvalCtx {
    pub harmonic: HarmonicEvaluator,
    stirling: Mutex<StirlingTable>,
}

impl Default for EvalCtx {
    fn default() -> Self {
        Self::new()
    }
}

impl EvalCtx {
    pub fn new() -> Self {
        EvalCtx {
            harmonic: HarmonicEvaluator::new(),
            stirling: Mutex::new(StirlingTable::new()),
        }
    }

    pub fn stirling(&self, n: u32, k: u32) -> BigInt {
        self.stirling.lock().get(n, k)
    }

    /// Run a closure with exclusive access to the Stirling triangle (for
    /// bulk lookups without per-entry locking).
    pub fn with_stirling<R>(&self, f: impl FnOnce(&mut StirlingTable) -> R) -> R {
        f(&mut self.stirling.lock())
    }
}

pub type EvalFn = fn(&EvalCtx, &ParamPoint) -> Result<Vec<Form>>;
pub type SoftDomainFn = fn(&ParamPoint) -> Option<String>;

/// One registered identity.
pub struct IdentityDef {
    pub id: &'static str,
    pub summary: &'static str,
    pub slots: &'static [Slot],
    /// Whether the identity participates in "verify everything" runs. The
    /// literal-reading variants are registered for inspection but excluded.
    pub in_default_set: bool,
    /// Theorem-stated domain constraints; a violation skips the point unless
    /// the caller overrides, in which case the point is evaluated and
    /// reported as out-of-domain.
    pub soft_domain: SoftDomainFn,
    pub eval: EvalFn,
}

pub struct Registry {
    defs: Vec<IdentityDef>,
    index: HashMap<&'static str, usize>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            defs: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// The full registry of identities in this crate.
    pub fn standard() -> Self {
        let mut reg = Registry::empty();
        for def in super::defs::standard_defs() {
            reg.register(def);
        }
        reg
    }

    pub fn register(&mut self, def: IdentityDef) {
        assert!(
            !self.index.contains_key(def.id),
            "duplicate identity id `{}`",
            def.id
        );
        self.index.insert(def.id, self.defs.len());
        self.defs.push(def);
    }

    pub fn get(&self, id: &str) -> Result<&IdentityDef> {
        self.index
            .get(id)
            .map(|&i| &self.defs[i])
            .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.defs.iter().map(|d| d.id).collect()
    }

    pub fn default_ids(&self) -> Vec<&'static str> {
        self.defs
            .iter()
            .filter(|d| d.in_default_set)
            .map(|d| d.id)
            .collect()
    }

    /// Evaluate both sides of `id` at `params` and compare exactly. Domain
    /// violations produce a domain-error report, never a panic; the only
    /// `Err` is an unknown id.
    pub fn verify(
        &self,
        ctx: &EvalCtx,
        id: &str,
        params: &ParamPoint,
        override_domain: bool,
    ) -> Result<IdentityReport> {
        let def = self.get(id)?;
        let start = Instant::now();
        let soft = (def.soft_domain)(params);
        let in_domain = soft.is_none();
        if let (Some(msg), false) = (&soft, override_domain) {
            let elapsed = start.elapsed().as_micros() as u64;
            return Ok(IdentityReport::domain_error(
                def.id,
                params.params_map(),
                format!("outside stated domain: {msg}"),
                elapsed,
            ));
        }
        match (def.eval)(ctx, params) {
            Ok(forms) => {
                let elapsed = start.elapsed().as_micros() as u64;
                Ok(IdentityReport::ok(
                    def.id,
                    params.params_map(),
                    &forms,
                    in_domain,
                    elapsed,
                ))
            }
            Err(e) => {
                let elapsed = start.elapsed().as_micros() as u64;
                Ok(IdentityReport::domain_error(
                    def.id,
                    params.params_map(),
                    e.to_string(),
                    elapsed,
                ))
            }
        }
    }
}
