//! Verification records.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::rational::{format_rational, Rational};

/// One evaluated side of an identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub label: &'static str,
    pub value: Rational,
}

impl Form {
    pub fn new(label: &'static str, value: Rational) -> Self {
        Form { label, value }
    }
}

/// Result of verifying one identity at one parameter point.
///
/// `status` is `"ok"` when both sides were evaluated and `"domain_error"`
/// when a precondition failed (the point is then skipped, never counted as a
/// mismatch). `equal` holds iff every evaluated form is exactly equal.
/// `in_domain` is false when the point violates a theorem-stated constraint
/// but was evaluated anyway under the domain override; such rows are
/// informational and never fail a sweep.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra_forms: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
    pub in_domain: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_us: u64,
}

impl IdentityReport {
    pub fn ok(
        identity_id: &str,
        params: BTreeMap<String, String>,
        forms: &[Form],
        in_domain: bool,
        elapsed_us: u64,
    ) -> Self {
        debug_assert!(forms.len() >= 2);
        let first = &forms[0].value;
        let equal = forms.iter().all(|f| &f.value == first);
        let extra = if forms.len() > 2 {
            Some(
                forms[2..]
                    .iter()
                    .map(|f| (f.label.to_string(), format_rational(&f.value)))
                    .collect(),
            )
        } else {
            None
        };
        IdentityReport {
            identity_id: identity_id.to_string(),
            params,
            status: "ok".to_string(),
            lhs: Some(format_rational(&forms[0].value)),
            rhs: Some(format_rational(&forms[1].value)),
            extra_forms: extra,
            equal: Some(equal),
            in_domain,
            error: None,
            elapsed_us,
        }
    }

    pub fn domain_error(
        identity_id: &str,
        params: BTreeMap<String, String>,
        message: String,
        elapsed_us: u64,
    ) -> Self {
        IdentityReport {
            identity_id: identity_id.to_string(),
            params,
            status: "domain_error".to_string(),
            lhs: None,
            rhs: None,
            extra_forms: None,
            equal: None,
            in_domain: false,
            error: Some(message),
            elapsed_us,
        }
    }

    /// Exact-equality pass: evaluated, in domain, all forms equal.
    pub fn passed(&self) -> bool {
        self.status == "ok" && self.in_domain && self.equal == Some(true)
    }

    /// In-domain mismatch: the only outcome that fails a sweep.
    pub fn mismatch(&self) -> bool {
        self.status == "ok" && self.in_domain && self.equal == Some(false)
    }

    /// Copy with the wall-clock field zeroed, for byte-stable output files
    /// and determinism comparisons.
    pub fn normalized(mut self) -> Self {
        self.elapsed_us = 0;
        self
    }
}

/// A falsifying point found by randomized search.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Counterexample {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub seed: u64,
}

/// Aggregate of a sweep.
#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SweepSummary {
    pub total: usize,
    pub passed: usize,
    pub mismatched: usize,
    pub skipped: usize,
    /// Evaluated under the domain override while out of the stated domain.
    pub out_of_domain: usize,
}

pub fn summarize(reports: &[IdentityReport]) -> SweepSummary {
    let mut s = SweepSummary {
        total: reports.len(),
        ..Default::default()
    };
    for r in reports {
        if r.status != "ok" {
            s.skipped += 1;
        } else if !r.in_domain {
            s.out_of_domain += 1;
        } else if r.equal == Some(true) {
            s.passed += 1;
        } else {
            s.mismatched += 1;
        }
    }
    s
}
