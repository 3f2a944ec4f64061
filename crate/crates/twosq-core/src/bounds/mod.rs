//! A small forward-chaining inequality engine. Each implication lemma is a
//! hand-coded rule over a fixed vocabulary of facts; derivations run to a
//! fixed point, every fact carries provenance, and contradictions become
//! replayable exclusion certificates. No general symbolic algebra.

pub mod consts;
pub mod rules;

use crate::cert::{Certificate, Verdict};
use crate::error::Error;
use crate::repr::Representation;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One derived fact. `key` is canonical (dedup identity); `detail` carries
/// the concrete numbers; `deps` are the keys this fact was derived from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub key: String,
    pub detail: String,
    pub rule: String,
    pub deps: Vec<String>,
}

/// Append-only fact store with canonical-key dedup, so rule application is
/// monotone and the fixed point is order-independent.
#[derive(Debug, Clone, Default)]
pub struct FactStore {
    facts: BTreeMap<String, Fact>,
    insertion_order: Vec<String>,
}

impl FactStore {
    pub fn insert(&mut self, rule: &str, key: impl Into<String>, detail: impl ToString, deps: &[&str]) -> bool {
        let key = key.into();
        if self.facts.contains_key(&key) {
            return false;
        }
        self.insertion_order.push(key.clone());
        self.facts.insert(
            key.clone(),
            Fact {
                key,
                detail: detail.to_string(),
                rule: rule.to_string(),
                deps: deps.iter().map(|s| s.to_string()).collect(),
            },
        );
        true
    }

    pub fn has(&self, key: &str) -> bool {
        self.facts.contains_key(key)
    }

    pub fn get(&self, key: &str) -> Option<&Fact> {
        self.facts.get(key)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    /// Facts in canonical (key) order: the deterministic view.
    pub fn iter(&self) -> impl Iterator<Item = &Fact> {
        self.facts.values()
    }

    pub fn contradictions(&self) -> Vec<&Fact> {
        self.facts.values().filter(|f| f.key.starts_with("contradiction:")).collect()
    }
}

/// Scenario under derivation: which quantities are pinned, which ranges hold.
#[derive(Debug, Clone, Default)]
pub struct Context {
    /// c > c_min for range scenarios; exact c when `rep` is set.
    pub c_min: Option<BigInt>,
    pub y: Option<u64>,
    pub y_floor: Option<u64>,
    pub r: Option<u64>,
    pub z: Option<u64>,
    /// First-equation representation (u, v).
    pub rep: Option<Representation>,
    /// Second-equation representation (u1, v1).
    pub rep1: Option<Representation>,
    /// Exact b when known (witness scenarios).
    pub b: Option<BigInt>,
    /// Certified exponent claims fed in from the linear-forms machinery:
    /// (subject, n, mu) meaning `side >= c^(n/mu)`.
    pub mu_claims: Vec<MuClaim>,
}

/// A certified exponent claim from the linear-forms layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuClaim {
    /// "a" (z-form) or "b" (r-form).
    pub side: char,
    pub n: u64,
    /// Claimable exponent upper bound: side >= c^(n/mu).
    pub mu: f64,
}

/// A replayable record of a derived contradiction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExclusionCertificate {
    pub hypothesis: Vec<String>,
    pub contradiction: Fact,
    pub trace: Vec<Fact>,
}

impl ExclusionCertificate {
    /// Re-run the trace: every dependency must resolve and the contradiction
    /// must be reproduced by re-deriving from the hypothesis set.
    pub fn replay(&self, ctx: &Context) -> Result<bool, Error> {
        let rerun = derive_all(ctx, &rules::default_rule_order())?;
        Ok(rerun
            .contradictions()
            .iter()
            .any(|f| f.key == self.contradiction.key))
    }
}

/// Hard cap on derived facts; exceeding it indicates a rule bug.
pub const FACT_CAP: usize = 10_000;

/// Run all rules to a fixed point. The rule order only affects internal
/// iteration order; the resulting fact set is order-independent because
/// rules are monotone over the growing store.
pub fn derive_all(ctx: &Context, order: &[rules::RuleId]) -> Result<FactStore, Error> {
    let mut store = FactStore::default();
    loop {
        let before = store.len();
        for rule in order {
            rules::apply(*rule, ctx, &mut store)?;
            if store.len() > FACT_CAP {
                return Err(Error::DivergenceCap(FACT_CAP));
            }
        }
        if store.len() == before {
            break;
        }
    }
    Ok(store)
}

/// Derive and package any contradiction as an exclusion certificate.
pub fn derive_exclusion(ctx: &Context) -> Result<Option<ExclusionCertificate>, Error> {
    let store = derive_all(ctx, &rules::default_rule_order())?;
    let contradiction = match store.contradictions().first() {
        Some(f) => (*f).clone(),
        None => return Ok(None),
    };
    // Collect the dependency closure as the trace.
    let mut trace = vec![];
    let mut stack = vec![contradiction.key.clone()];
    let mut seen = std::collections::BTreeSet::new();
    while let Some(k) = stack.pop() {
        if !seen.insert(k.clone()) {
            continue;
        }
        if let Some(f) = store.get(&k) {
            trace.push(f.clone());
            for d in &f.deps {
                stack.push(d.clone());
            }
        }
    }
    trace.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(Some(ExclusionCertificate {
        hypothesis: describe_context(ctx),
        contradiction,
        trace,
    }))
}

fn describe_context(ctx: &Context) -> Vec<String> {
    let mut h = vec![];
    if let Some(c) = &ctx.c_min {
        h.push(format!("c > {c}"));
    }
    if let Some(y) = ctx.y {
        h.push(format!("y = {y}"));
    }
    if let Some(y) = ctx.y_floor {
        h.push(format!("y >= {y}"));
    }
    if let Some(r) = ctx.r {
        h.push(format!("r = {r}"));
    }
    if let Some(z) = ctx.z {
        h.push(format!("z = {z}"));
    }
    if let Some(rep) = &ctx.rep {
        h.push(format!("(u, v) = ({}, {})", rep.u, rep.v));
    }
    if let Some(rep) = &ctx.rep1 {
        h.push(format!("(u1, v1) = ({}, {})", rep.u, rep.v));
    }
    h
}

/// Package a derivation into a certificate for persistence.
pub fn certificate_from_store(claim: &str, ctx: &Context, store: &FactStore) -> Certificate {
    let mut cert = Certificate::new(claim, "bounds-engine");
    for h in describe_context(ctx) {
        cert.trace.push(format!("hypothesis: {h}"));
    }
    for f in store.iter() {
        cert.trace.push(format!("[{}] {} <- {:?} ({})", f.rule, f.key, f.deps, f.detail));
        if f.key.starts_with("external:") {
            cert.assumptions.push(f.detail.clone());
        }
    }
    cert.verdict = if store.contradictions().is_empty() {
        Verdict::Verified
    } else {
        Verdict::Excluded
    };
    cert
}
