//! Ring presentation files.
//!
//! The text form is one directive per line; `#` starts a comment.
//!
//! ```text
//! prime 2
//! cap 64
//! gen y4 4
//! gen x 16
//! rel y4^2
//! act Sq^4(x) = x*y4
//! note free-form remark carried into reports
//! ```
//!
//! A document whose first non-blank character is `{` is read as JSON with
//! the fields `prime`, `cap`, `generators`, `relations`, `action`, `notes`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::ActionTable;
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::parse::{parse_op, parse_polynomial, ParseError};
use crate::ring::{compute_basis, Generator, RingBasis, RingPresentation};
use crate::steenrod::Op;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub op: String,
    pub generator: String,
    pub value: String,
}

/// A ring file before validation. Polynomials are kept as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    #[serde(default = "default_prime")]
    pub prime: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub action: Vec<ActionSpec>,
    #[serde(default)]
    pub notes: Vec<String>,
    /// Source line of each relation and action entry, for error messages.
    #[serde(skip)]
    lines: Lines,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Lines {
    relations: Vec<usize>,
    action: Vec<usize>,
}

fn default_prime() -> u32 {
    2
}

/// A validated ring and its action table.
#[derive(Clone, Debug)]
pub struct LoadedRing {
    pub basis: Arc<RingBasis>,
    pub table: ActionTable,
}

fn at(line: usize, message: impl Into<String>) -> Error {
    Error::RingFile {
        line,
        message: message.into(),
    }
}

fn relocate(e: ParseError, line: usize, column: usize) -> Error {
    Error::Parse(e.relocate(line, column))
}

impl RingFile {
    pub fn parse(text: &str) -> Result<RingFile> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| at(e.line(), format!("invalid JSON: {e}")));
        }
        let mut file = RingFile {
            prime: 2,
            cap: None,
            generators: Vec::new(),
            relations: Vec::new(),
            action: Vec::new(),
            notes: Vec::new(),
            lines: Lines::default(),
        };
        let mut seen_prime = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let (word, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let rest = rest.trim();
            match word {
                "prime" => {
                    if seen_prime {
                        return Err(at(line, "duplicate `prime`"));
                    }
                    seen_prime = true;
                    file.prime = rest.parse().map_err(|_| at(line, format!("`{rest}` is not a number")))?;
                }
                "cap" => {
                    if file.cap.is_some() {
                        return Err(at(line, "duplicate `cap`"));
                    }
                    file.cap = Some(rest.parse().map_err(|_| at(line, format!("`{rest}` is not a number")))?);
                }
                "gen" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [name, degree] = parts.as_slice() else {
                        return Err(at(line, "expected `gen <name> <degree>`"));
                    };
                    if !is_identifier(name) {
                        return Err(at(line, format!("`{name}` is not a valid generator name")));
                    }
                    let degree = degree.parse().map_err(|_| at(line, format!("`{degree}` is not a degree")))?;
                    file.generators.push(GeneratorSpec {
                        name: name.to_string(),
                        degree,
                    });
                }
                "rel" => {
                    if rest.is_empty() {
                        return Err(at(line, "expected `rel <polynomial>`"));
                    }
                    file.relations.push(rest.to_string());
                    file.lines.relations.push(line);
                }
                "act" => {
                    let Some((lhs, value)) = rest.split_once('=') else {
                        return Err(at(line, "expected `act <op>(<generator>) = <polynomial>`"));
                    };
                    let lhs = lhs.trim();
                    let (op, generator) = lhs
                        .strip_suffix(')')
                        .and_then(|s| s.split_once('('))
                        .ok_or_else(|| at(line, "expected `<op>(<generator>)` before `=`"))?;
                    file.action.push(ActionSpec {
                        op: op.trim().to_string(),
                        generator: generator.trim().to_string(),
                        value: value.trim().to_string(),
                    });
                    file.lines.action.push(line);
                }
                "note" => file.notes.push(rest.to_string()),
                other => {
                    return Err(at(
                        line,
                        format!("unknown directive `{other}` (expected prime, cap, gen, rel, act or note)"),
                    ))
                }
            }
        }
        Ok(file)
    }

    /// Render in the line-oriented form.
    pub fn to_text(&self) -> String {
        let mut out = format!("prime {}\n", self.prime);
        if let Some(c) = self.cap {
            out += &format!("cap {c}\n");
        }
        for g in &self.generators {
            out += &format!("gen {} {}\n", g.name, g.degree);
        }
        for r in &self.relations {
            out += &format!("rel {r}\n");
        }
        for a in &self.action {
            out += &format!("act {}({}) = {}\n", a.op, a.generator, a.value);
        }
        for n in &self.notes {
            out += &format!("note {n}\n");
        }
        out
    }

    fn line_of_relation(&self, i: usize) -> usize {
        self.lines.relations.get(i).copied().unwrap_or(0)
    }

    fn line_of_action(&self, i: usize) -> usize {
        self.lines.action.get(i).copied().unwrap_or(0)
    }

    /// Validate and build the ring and its action table.
    pub fn load(&self) -> Result<LoadedRing> {
        let prime = Prime::new(self.prime)?;
        if self.generators.is_empty() {
            return Err(at(0, "no generators"));
        }
        let max_deg = self.generators.iter().map(|g| g.degree).max().unwrap_or(0);
        let cap = self.cap.unwrap_or(4 * max_deg);
        if cap < max_deg {
            return Err(at(0, format!("cap {cap} is below the generator degree {max_deg}")));
        }
        let gens: Vec<Generator> = self
            .generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.degree))
            .collect();
        let skeleton = RingPresentation::new(prime, gens.clone(), vec![], cap)?;
        let mut relations = Vec::new();
        for (i, r) in self.relations.iter().enumerate() {
            let line = self.line_of_relation(i);
            let poly = parse_polynomial(r, &skeleton).map_err(|e| relocate(e, line.max(1), 5))?;
            relations.push(poly);
        }
        let pres = RingPresentation::new(prime, gens, relations, cap)?;
        let basis = Arc::new(compute_basis(&pres).map_err(|e| match e {
            Error::InhomogeneousRelation { index }
            | Error::DegreeZeroRelation { index }
            | Error::RelationAboveCap { index, .. } => at(self.line_of_relation(index), e.to_string()),
            other => other,
        })?);

        let mut entries = Vec::new();
        for (i, a) in self.action.iter().enumerate() {
            let line = self.line_of_action(i);
            let op = parse_op(&a.op, prime).map_err(|e| relocate(e, line.max(1), 5))?;
            let gi = pres
                .generator_index(&a.generator)
                .ok_or_else(|| at(line, format!("unknown generator `{}`", a.generator)))?;
            let target = pres.generators[gi].degree + op.degree(prime);
            let poly = parse_polynomial(&a.value, &pres).map_err(|e| relocate(e, line.max(1), 1))?;
            match pres.polynomial_degree(&poly) {
                Err(_) => return Err(at(line, "value is not homogeneous")),
                Ok(Some(d)) if d != target => {
                    return Err(at(
                        line,
                        format!("{op}({}) has degree {target}, but the value has degree {d}", a.generator),
                    ))
                }
                _ => {}
            }
            if !poly.is_zero() && basis.dim(target) == 0 {
                return Err(at(
                    line,
                    format!("{op}({}) lands in degree {target}, where the ring is zero", a.generator),
                ));
            }
            let value = if target > cap {
                basis.zero(target)
            } else {
                basis.polynomial_in_degree(&poly, target)?
            };
            entries.push((a.generator.clone(), op, value, line));
        }
        let mut table = ActionTable::empty(basis.clone());
        for (g, op, v, line) in entries {
            table = append(table, &g, op, v).map_err(|e| at(line, e.to_string()))?;
        }
        for n in &self.notes {
            table.add_note(n.clone());
        }
        Ok(LoadedRing { basis, table })
    }
}

fn append(table: ActionTable, g: &str, op: Op, v: crate::ring::RingElement) -> Result<ActionTable> {
    let mut entries = table.entries();
    if entries.iter().any(|(name, o, _)| name == g && *o == op) {
        return Err(Error::InvalidActionEntry {
            generator: g.to_string(),
            reason: format!("duplicate entry for {op}"),
        });
    }
    entries.push((g.to_string(), op, v));
    ActionTable::new(table.ring().clone(), entries)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse and load in one step.
pub fn load_ring(text: &str) -> Result<LoadedRing> {
    RingFile::parse(text)?.load()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CANDIDATE: &str = "\
prime 2
cap 64
gen y4 4
gen y8 8
gen y12 12
gen x 16
rel y4^2
rel y4*y8
rel y4*y12
rel y8^2
rel y8*y12
rel y12^2
act Sq^4(x) = x*y4
act Sq^8(x) = x*y8
act Sq^12(x) = x*y12
act Sq^4(y8) = y12
act Sq^4(y12) = 0   # target spanned by x
act Sq^8(y12) = x*y4
";

    #[test]
    fn loads_text_form() {
        let r = load_ring(CANDIDATE).unwrap();
        assert_eq!(r.basis.dim(16), 1);
        assert_eq!(r.basis.dim(20), 1);
        assert_eq!(r.basis.basis_monomials(20), vec![&[1u32, 0, 0, 1][..]]);
        assert!(r.table.missing_entries().is_empty());
    }

    #[test]
    fn default_cap_is_four_times_top_generator() {
        let r = load_ring("gen x 4\n").unwrap();
        assert_eq!(r.basis.cap(), 16);
        assert_eq!(r.basis.prime(), Prime::TWO);
    }

    #[test]
    fn json_form_matches_text_form() {
        let f = RingFile::parse(CANDIDATE).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let g = RingFile::parse(&json).unwrap();
        assert_eq!(f.to_text(), g.to_text());
        assert_eq!(RingFile::parse(&f.to_text()).unwrap().to_text(), f.to_text());
        let a = g.load().unwrap();
        assert_eq!(a.table.entries().len(), 6);
    }

    #[test]
    fn validation_errors_are_located() {
        let e = load_ring("gen x 4\ngen y 6\nrel x^2 + y\n").unwrap_err();
        assert_eq!(e, Error::RingFile { line: 3, message: "relation 0 is not homogeneous".into() });

        let e = load_ring("gen x 4\nact Sq^2(x) = x\n").unwrap_err();
        assert!(matches!(e, Error::RingFile { line: 2, .. }), "{e}");

        // nonzero value into a zero group
        let e = load_ring("gen x 4\ngen y 6\nact Sq^1(x) = x*y\n").unwrap_err();
        assert!(matches!(e, Error::RingFile { line: 3, .. }), "{e}");

        // top square is forced
        let e = load_ring("gen x 4\nact Sq^4(x) = 0\n").unwrap_err();
        assert!(e.to_string().contains("forced"), "{e}");

        let e = load_ring("gen x 4\nfrobnicate\n").unwrap_err();
        assert!(matches!(e, Error::RingFile { line: 2, .. }));

        let e = load_ring("gen x 4\nrel x^^2\n").unwrap_err();
        match e {
            Error::Parse(p) => assert_eq!(p.line, 2),
            other => panic!("{other}"),
        }

        assert!(load_ring("prime 4\ngen x 4\n").is_err());
        assert!(load_ring("prime 3\ngen x 4\nact Sq^1(x) = 0\n").is_err());
        assert!(load_ring("gen x 4\nact Sq^1(x) = 0\nact Sq^1(x) = 0\n").is_err());
    }
}
