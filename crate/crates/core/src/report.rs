//! Serialized report envelope and plain-text rendering.

use std::fmt::Write;

use serde::Serialize;

use crate::action::CoherenceReport;
use crate::periodicity::PeriodicityReport;
use crate::verify::VerificationReport;

pub const SCHEMA: &str = "periodica-report";
pub const SCHEMA_VERSION: u32 = 1;

/// Versioned wrapper around any report body. Field order is fixed by the
/// struct, and bodies use ordered maps, so output is byte-stable.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument<T: Serialize> {
    pub schema: &'static str,
    pub schema_version: u32,
    pub kind: String,
    pub body: T,
}

impl<T: Serialize> ReportDocument<T> {
    pub fn new(kind: impl Into<String>, body: T) -> Self {
        ReportDocument {
            schema: SCHEMA,
            schema_version: SCHEMA_VERSION,
            kind: kind.into(),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report types serialize")
    }
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn render_verification(r: &VerificationReport) -> String {
    let mut s = String::new();
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(s, "{} [{}] {}", r.id, params.join(" "), mark(r.passed));
    if let Some(v) = r.verdict {
        let _ = writeln!(s, "  verdict: {v}");
    }
    for c in &r.checks {
        let tag = if c.required { mark(c.passed) } else if c.passed { "info" } else { "INFO" };
        let _ = writeln!(s, "  {tag:<4} {}: {}", c.name, c.detail);
        for w in &c.witnesses {
            let _ = writeln!(s, "         witness: {w}");
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

pub fn render_coherence(r: &CoherenceReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "coherence p={} through degree {}: {} relations, {} identities, {} violations, {}",
        r.prime,
        r.degree_limit,
        r.relations_checked,
        r.identities_checked,
        r.violations.len(),
        mark(r.passed)
    );
    for v in &r.violations {
        let _ = writeln!(
            s,
            "  {} {} on {} (degree {}): {} != {}",
            v.kind, v.relation, v.element, v.degree, v.lhs, v.rhs
        );
    }
    s
}

pub fn render_periodicity(r: &PeriodicityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "periodicity p={} cap={}", r.prime, r.cap);
    match (&r.minimal_period, &r.minimal_witness) {
        (Some(k), Some(w)) => {
            let _ = writeln!(s, "  minimal period {k}, witness {w}");
        }
        _ => {
            let _ = writeln!(s, "  no periodicity element up to degree {}", r.cap / 2);
        }
    }
    if let Some(t) = &r.truncation {
        let _ = writeln!(
            s,
            "  top degree below the period: {}; cap reaches 2k+m: {}; cap reaches pk+m: {}",
            t.m, t.cap_reaches_2k_plus_m, t.cap_reaches_pk_plus_m
        );
    }
    for e in &r.entries {
        let _ = writeln!(
            s,
            "  {} (period {}, verified on [{}, {}])",
            e.element, e.period, e.verified_range[0], e.verified_range[1]
        );
        let f = &e.factorization;
        let _ = writeln!(s, "    factorization audit: {}", mark(f.passed));
        for w in &f.witnesses {
            let _ = writeln!(s, "      {} = ({}) * ({})", w.target, w.y, w.z);
        }
        if let Some(a) = &e.steenrod_image {
            let _ = writeln!(s, "    Steenrod image audit: {}", mark(a.passed));
            for w in &a.witnesses {
                let _ = writeln!(s, "      {} = {}({})", w.target, w.op, w.source);
            }
        }
    }
    if !r.complete {
        let _ = writeln!(s, "  search incomplete: some groups were sampled");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_half_power_family;

    #[test]
    fn envelope_is_stable() {
        let r = verify_half_power_family(8).unwrap();
        let a = ReportDocument::new("verification", vec![r.clone()]).to_json();
        let b = ReportDocument::new("verification", vec![r]).to_json();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert!(a.find("\"schema\"").unwrap() < a.find("\"body\"").unwrap());
    }

    #[test]
    fn renders_checks() {
        let r = verify_half_power_family(8).unwrap();
        let text = render_verification(&r);
        assert!(text.starts_with("half-power-family [k=8] PASS"));
        assert!(text.contains("d=3 normal form"));
    }
}
