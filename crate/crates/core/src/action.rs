//! Steenrod operations acting on a truncated ring through values on
//! generators and the Cartan formula.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::ring::{compute_basis, Generator, Polynomial, RingBasis, RingElement, RingPresentation};
use crate::steenrod::{algebra, Op, SteenrodElement, SteenrodMonomial};

/// Values of Steenrod operations on the generators of a ring.
///
/// Only the sub-top range is stored. `Sq^{deg g} g = g^2` (or `g^p` for the
/// top reduced power), everything above is zero, and a missing entry whose
/// target group is zero is read as zero.
pub struct ActionTable {
    ring: Arc<RingBasis>,
    entries: Vec<BTreeMap<Op, RingElement>>,
    notes: Vec<String>,
    cache: RwLock<HashMap<(Op, Vec<u32>), RingElement>>,
}

impl Clone for ActionTable {
    fn clone(&self) -> ActionTable {
        ActionTable {
            ring: self.ring.clone(),
            entries: self.entries.clone(),
            notes: self.notes.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for ActionTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ActionTable")
            .field("generators", &self.ring.generators())
            .field("entries", &self.entries)
            .finish()
    }
}

/// Where the value of an operation on a generator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueSource {
    Identity,
    Stored,
    Top,
    AboveTop,
    ZeroGroup,
    Missing,
}

impl ActionTable {
    /// A table without entries. Useful for rings whose sub-top values all
    /// land in zero groups.
    pub fn empty(ring: Arc<RingBasis>) -> ActionTable {
        let n = ring.generators().len();
        ActionTable {
            ring,
            entries: vec![BTreeMap::new(); n],
            notes: Vec::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn new(ring: Arc<RingBasis>, entries: Vec<(String, Op, RingElement)>) -> Result<ActionTable> {
        let mut t = ActionTable::empty(ring);
        for (g, op, v) in entries {
            t.insert(&g, op, v)?;
        }
        Ok(t)
    }

    /// Copy of this table with one entry replaced.
    pub fn with_entry(&self, generator: &str, op: Op, value: RingElement) -> Result<ActionTable> {
        let mut t = self.clone();
        let gi = t.generator_index(generator)?;
        t.entries[gi].remove(&op);
        t.insert(generator, op, value)?;
        Ok(t)
    }

    fn generator_index(&self, name: &str) -> Result<usize> {
        self.ring
            .presentation()
            .generator_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn insert(&mut self, generator: &str, op: Op, value: RingElement) -> Result<()> {
        let gi = self.generator_index(generator)?;
        let p = self.ring.prime();
        let invalid = |reason: String| Error::InvalidActionEntry {
            generator: generator.to_string(),
            reason,
        };
        match (op, p.is_two()) {
            (Op::Sq(_), false) => return Err(invalid("Sq is only defined at p = 2".into())),
            (Op::P(_) | Op::Beta, true) => return Err(invalid(format!("{op} is only defined at odd primes"))),
            _ => {}
        }
        let g = &self.ring.generators()[gi];
        let target = g.degree + op.degree(p);
        if value.degree() != target {
            return Err(invalid(format!(
                "{op}({}) must have degree {target}, got {}",
                g.name,
                value.degree()
            )));
        }
        if target > self.ring.cap() && !value.is_zero() {
            return Err(invalid(format!("{op}({}) lands above the cap", g.name)));
        }
        match self.source(gi, op) {
            ValueSource::Stored | ValueSource::Missing | ValueSource::ZeroGroup => {}
            _ => {
                let forced = self.generator_value(gi, op)?;
                if forced != value {
                    return Err(invalid(format!(
                        "{op}({}) is forced by instability to be {}",
                        g.name,
                        self.ring.format(&forced)
                    )));
                }
                return Ok(());
            }
        }
        if self.entries[gi].contains_key(&op) {
            return Err(invalid(format!("duplicate entry for {op}({})", g.name)));
        }
        self.entries[gi].insert(op, value);
        self.cache.write().unwrap().clear();
        Ok(())
    }

    pub fn ring(&self) -> &Arc<RingBasis> {
        &self.ring
    }

    pub fn prime(&self) -> Prime {
        self.ring.prime()
    }

    /// Free-form notes describing how implicit values were chosen.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn add_note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Stored entries in generator order.
    pub fn entries(&self) -> Vec<(String, Op, RingElement)> {
        self.entries
            .iter()
            .zip(self.ring.generators())
            .flat_map(|(m, g)| m.iter().map(move |(op, v)| (g.name.clone(), *op, v.clone())))
            .collect()
    }

    /// Operations whose value on a generator has to come from the table
    /// and cannot be inferred.
    pub fn missing_entries(&self) -> Vec<(String, Op)> {
        let mut out = Vec::new();
        for (gi, g) in self.ring.generators().iter().enumerate() {
            for op in sub_top_ops(self.prime(), g.degree) {
                if self.source(gi, op) == ValueSource::Missing {
                    out.push((g.name.clone(), op));
                }
            }
        }
        out
    }

    pub fn source(&self, gi: usize, op: Op) -> ValueSource {
        let p = self.prime();
        let deg = self.ring.generators()[gi].degree;
        let (level, top) = match op {
            Op::Sq(i) => (i, deg),
            Op::P(s) => (2 * s, deg),
            Op::Beta => (1, u32::MAX),
        };
        if level == 0 {
            return ValueSource::Identity;
        }
        if level == top {
            return ValueSource::Top;
        }
        if level > top {
            return ValueSource::AboveTop;
        }
        if self.entries[gi].contains_key(&op) {
            return ValueSource::Stored;
        }
        let target = deg + op.degree(p);
        if self.ring.dim(target) == 0 {
            ValueSource::ZeroGroup
        } else {
            ValueSource::Missing
        }
    }

    fn generator_exponents(&self, gi: usize, power: u32) -> Vec<u32> {
        let mut e = vec![0u32; self.ring.generators().len()];
        e[gi] = power;
        e
    }

    /// Value of a single operation on a generator.
    pub fn generator_value(&self, gi: usize, op: Op) -> Result<RingElement> {
        let p = self.prime();
        let g = &self.ring.generators()[gi];
        let target = g.degree + op.degree(p);
        match self.source(gi, op) {
            ValueSource::Identity => self.ring.monomial(&self.generator_exponents(gi, 1)),
            ValueSource::Top => {
                let power = if p.is_two() { 2 } else { p.value() };
                self.ring.monomial(&self.generator_exponents(gi, power))
            }
            ValueSource::AboveTop | ValueSource::ZeroGroup => Ok(self.ring.zero(target)),
            ValueSource::Stored => Ok(self.entries[gi][&op].clone()),
            ValueSource::Missing => Err(Error::MissingActionValue {
                generator: g.name.clone(),
                op: op.to_string(),
            }),
        }
    }

    /// A single operation applied to the class of a monomial (given by
    /// exponents, not necessarily standard), by the Cartan formula.
    pub fn op_on_monomial(&self, op: Op, exps: &[u32]) -> Result<RingElement> {
        let p = self.prime();
        let pres = self.ring.presentation();
        let deg = pres.monomial_degree(exps);
        let target = deg + op.degree(p);
        if target > self.ring.cap() {
            return Err(Error::DegreeOverflow {
                degree: target,
                cap: self.ring.cap(),
            });
        }
        if matches!(op, Op::Sq(0) | Op::P(0)) {
            return self.ring.monomial(exps);
        }
        let Some(gi) = exps.iter().position(|&e| e > 0) else {
            return Ok(self.ring.zero(target));
        };
        if (0..exps.len()).any(|i| pres.is_exterior(i) && exps[i] > 1) {
            return Ok(self.ring.zero(target));
        }
        let key = (op, exps.to_vec());
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let mut rest = exps.to_vec();
        rest[gi] -= 1;
        let g_exps = self.generator_exponents(gi, 1);
        let gdeg = self.ring.generators()[gi].degree;
        let mut acc = self.ring.zero(target);
        match op {
            Op::Sq(k) | Op::P(k) => {
                let make = |i: u32| if p.is_two() { Op::Sq(i) } else { Op::P(i) };
                for i in 0..=k {
                    let gv = self.generator_value(gi, make(i))?;
                    if gv.is_zero() {
                        continue;
                    }
                    let mv = self.op_on_monomial(make(k - i), &rest)?;
                    if mv.is_zero() {
                        continue;
                    }
                    acc = &acc + &self.ring.multiply(&gv, &mv)?;
                }
            }
            Op::Beta => {
                let bg = self.generator_value(gi, Op::Beta)?;
                let m = self.ring.monomial(&rest)?;
                acc = &acc + &self.ring.multiply(&bg, &m)?;
                let bm = self.op_on_monomial(Op::Beta, &rest)?;
                let g = self.ring.monomial(&g_exps)?;
                let term = self.ring.multiply(&g, &bm)?;
                acc = acc.add_scaled(&term, p.sign(gdeg as i64));
            }
        }
        self.cache.write().unwrap().insert(key, acc.clone());
        Ok(acc)
    }

    /// A single operation applied to a ring element.
    pub fn apply_op(&self, op: Op, e: &RingElement) -> Result<RingElement> {
        let target = e.degree() + op.degree(self.prime());
        if target > self.ring.cap() {
            return Err(Error::DegreeOverflow {
                degree: target,
                cap: self.ring.cap(),
            });
        }
        let mut acc = self.ring.zero(target);
        for &(i, c) in e.terms() {
            let exps = self.ring.basis_monomial(e.degree(), i as usize).to_vec();
            let v = self.op_on_monomial(op, &exps)?;
            acc = acc.add_scaled(&v, c);
        }
        Ok(acc)
    }

    /// A composite, evaluated right to left without normalizing it first.
    pub fn act_monomial(&self, m: &SteenrodMonomial, e: &RingElement) -> Result<RingElement> {
        if m.prime() != self.prime() {
            return Err(Error::PrimeMismatch {
                expected: self.prime().value(),
                found: m.prime().value(),
            });
        }
        let target = e.degree() + m.degree();
        if target > self.ring.cap() {
            return Err(Error::DegreeOverflow {
                degree: target,
                cap: self.ring.cap(),
            });
        }
        let mut cur = e.clone();
        for op in m.ops().into_iter().rev() {
            if cur.is_zero() {
                return Ok(self.ring.zero(target));
            }
            cur = self.apply_op(op, &cur)?;
        }
        Ok(cur)
    }

    /// `op(e)`, linear in both arguments. `op` must be homogeneous.
    pub fn act(&self, op: &SteenrodElement, e: &RingElement) -> Result<RingElement> {
        if op.prime() != self.prime() {
            return Err(Error::PrimeMismatch {
                expected: self.prime().value(),
                found: op.prime().value(),
            });
        }
        if op.is_zero() {
            return Ok(self.ring.zero(e.degree()));
        }
        let d = op.degree().ok_or(Error::NotHomogeneous)?;
        let target = e.degree() + d;
        if target > self.ring.cap() {
            return Err(Error::DegreeOverflow {
                degree: target,
                cap: self.ring.cap(),
            });
        }
        let mut acc = self.ring.zero(target);
        for (m, c) in op.terms() {
            let v = self.act_monomial(m, e)?;
            acc = acc.add_scaled(&v, c.residue());
        }
        Ok(acc)
    }

    /// A single operation applied to a polynomial of the free algebra,
    /// before reducing by the relations.
    pub fn op_on_polynomial(&self, op: Op, poly: &Polynomial, degree: u32) -> Result<RingElement> {
        let target = degree + op.degree(self.prime());
        let mut acc = self.ring.zero(target);
        for (m, c) in poly.terms() {
            let pres = self.ring.presentation();
            if (0..m.len()).any(|i| pres.is_exterior(i) && m[i] > 1) {
                continue;
            }
            let v = self.op_on_monomial(op, m)?;
            acc = acc.add_scaled(&v, c);
        }
        Ok(acc)
    }
}

/// Operations whose values on a generator of degree `deg` are stored.
pub fn sub_top_ops(p: Prime, deg: u32) -> Vec<Op> {
    if p.is_two() {
        (1..deg).map(Op::Sq).collect()
    } else {
        let mut v = vec![Op::Beta];
        v.extend((1..).take_while(|s| 2 * s < deg).map(Op::P));
        v
    }
}

/// The cohomology of `(BZ/p)^n` truncated at `cap`: `F_2[t_1..t_n]` with
/// `|t| = 1` at p = 2, and `Λ(e_1..e_n) ⊗ F_p[t_1..t_n]` with `|e| = 1`,
/// `|t| = 2`, `b e = t` at odd p.
pub fn faithful_model(n: u32, prime: Prime, cap: u32) -> Result<ActionTable> {
    if n == 0 {
        return Err(Error::Precondition("faithful model needs n >= 1".into()));
    }
    let mut gens = Vec::new();
    if prime.is_two() {
        for i in 1..=n {
            gens.push(Generator::new(format!("t{i}"), 1));
        }
    } else {
        for i in 1..=n {
            gens.push(Generator::new(format!("e{i}"), 1));
        }
        for i in 1..=n {
            gens.push(Generator::new(format!("t{i}"), 2));
        }
    }
    let pres = RingPresentation::new(prime, gens, vec![], cap)?;
    let ring = Arc::new(compute_basis(&pres)?);
    let mut table = ActionTable::empty(ring.clone());
    if !prime.is_two() {
        for i in 1..=n {
            let t = ring.generator(&format!("t{i}"))?;
            table.insert(&format!("e{i}"), Op::Beta, t)?;
            if cap >= 3 {
                table.insert(&format!("t{i}"), Op::Beta, ring.zero(3))?;
            }
        }
    }
    Ok(table)
}

/// One failed identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// `adem`, `unstable` or `relation`.
    pub kind: String,
    pub relation: String,
    pub element: String,
    pub degree: u32,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub prime: u32,
    pub degree_limit: u32,
    pub relations_checked: usize,
    pub identities_checked: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

struct Instance {
    /// The composite, or `None` for `b b`.
    composite: Option<SteenrodMonomial>,
    label: String,
    degree: u32,
}

fn inadmissible_pairs(p: Prime, limit: u32) -> Vec<Instance> {
    let mut out = Vec::new();
    if p.is_two() {
        for total in 2..=limit {
            for b in 1..total {
                let a = total - b;
                if a < 2 * b {
                    let m = SteenrodMonomial::squares(&[a, b]);
                    out.push(Instance {
                        label: m.to_string(),
                        composite: Some(m),
                        degree: total,
                    });
                }
            }
        }
    } else {
        let q = 2 * (p.value() - 1);
        if limit >= 2 {
            out.push(Instance {
                composite: None,
                label: "b b".into(),
                degree: 2,
            });
        }
        for a in 1..=limit / q {
            for b in 1..=limit / q {
                for eps in 0..2u32 {
                    let degree = (a + b) * q + eps;
                    if degree > limit {
                        continue;
                    }
                    let inadmissible = if eps == 0 { a < p.value() * b } else { a <= p.value() * b };
                    if !inadmissible {
                        continue;
                    }
                    let m = SteenrodMonomial::from_word(p, vec![0, a, eps, b, 0]).expect("valid word");
                    out.push(Instance {
                        label: m.to_string(),
                        composite: Some(m),
                        degree,
                    });
                }
            }
        }
    }
    out
}

/// Check the table against every Adem relation between two operations, the
/// squaring axiom, and invariance of the relation ideal, in total degrees up
/// to `degree_limit`.
pub fn check_adem_coherence(table: &ActionTable, degree_limit: u32) -> Result<CoherenceReport> {
    let ring = table.ring();
    let p = table.prime();
    let limit = degree_limit.min(ring.cap());
    let steenrod = algebra(p);
    let instances = inadmissible_pairs(p, limit);

    type Found = (u32, usize, u32, usize, Violation);
    let per_instance: Vec<Result<(usize, Vec<Found>)>> = instances
        .par_iter()
        .enumerate()
        .map(|(idx, inst)| {
            let normal = inst
                .composite
                .as_ref()
                .map(|m| steenrod.normalize(&SteenrodElement::from(m.clone())));
            let mut count = 0;
            let mut found = Vec::new();
            for d in 0..=limit - inst.degree {
                for (j, b) in ring.basis_elements(d).into_iter().enumerate() {
                    count += 1;
                    let (lhs, rhs) = match (&inst.composite, &normal) {
                        (Some(m), Some(n)) if n.is_zero() => (table.act_monomial(m, &b)?, ring.zero(d + inst.degree)),
                        (Some(m), Some(n)) => (table.act_monomial(m, &b)?, table.act(n, &b)?),
                        _ => {
                            let once = table.apply_op(Op::Beta, &b)?;
                            (table.apply_op(Op::Beta, &once)?, ring.zero(d + 2))
                        }
                    };
                    if lhs != rhs {
                        found.push((
                            d + inst.degree,
                            idx,
                            d,
                            j,
                            Violation {
                                kind: "adem".into(),
                                relation: match &normal {
                                    Some(n) => format!("{} = {}", inst.label, n),
                                    None => "b b = 0".into(),
                                },
                                element: ring.format(&b),
                                degree: d + inst.degree,
                                lhs: ring.format(&lhs),
                                rhs: ring.format(&rhs),
                            },
                        ));
                    }
                }
            }
            Ok((count, found))
        })
        .collect();

    let mut identities = 0;
    let mut found: Vec<Found> = Vec::new();
    for r in per_instance {
        let (c, f) = r?;
        identities += c;
        found.extend(f);
    }
    found.sort_by_key(|(deg, idx, d, j, _)| (*deg, *idx, *d, *j));
    let mut violations: Vec<Violation> = found.into_iter().map(|f| f.4).collect();

    // Squaring axiom on every basis element.
    let mut extra = Vec::new();
    for d in 1..=limit {
        let (op, power) = if p.is_two() {
            (Op::Sq(d), 2)
        } else if d % 2 == 0 {
            (Op::P(d / 2), p.value())
        } else {
            continue;
        };
        if d * power > limit {
            break;
        }
        for b in ring.basis_elements(d) {
            identities += 1;
            let lhs = table.apply_op(op, &b)?;
            let rhs = ring.power(&b, power)?;
            if lhs != rhs {
                extra.push(Violation {
                    kind: "unstable".into(),
                    relation: format!("{op} y = y^{power}"),
                    element: ring.format(&b),
                    degree: d * power,
                    lhs: ring.format(&lhs),
                    rhs: ring.format(&rhs),
                });
            }
        }
    }

    // The relation ideal must be closed under every operation.
    let pres = ring.presentation();
    for rel in &pres.relations {
        let Ok(Some(rd)) = pres.polynomial_degree(rel) else { continue };
        let ops: Vec<Op> = if p.is_two() {
            (1..=limit.saturating_sub(rd)).map(Op::Sq).collect()
        } else {
            let q = 2 * (p.value() - 1);
            let mut v = Vec::new();
            if rd < limit {
                v.push(Op::Beta);
            }
            v.extend((1..).take_while(|s| rd + s * q <= limit).map(Op::P));
            v
        };
        let text = format_polynomial(ring, rel);
        for op in ops {
            identities += 1;
            let v = table.op_on_polynomial(op, rel, rd)?;
            if !v.is_zero() {
                extra.push(Violation {
                    kind: "relation".into(),
                    relation: format!("{op}({text}) = 0"),
                    element: text.clone(),
                    degree: v.degree(),
                    lhs: ring.format(&v),
                    rhs: "0".into(),
                });
            }
        }
    }
    violations.extend(extra);
    violations.sort_by_key(|v| v.degree);

    Ok(CoherenceReport {
        prime: p.value(),
        degree_limit: limit,
        relations_checked: instances.len(),
        identities_checked: identities,
        passed: violations.is_empty(),
        violations,
    })
}

/// Render a polynomial of the free algebra in the generator names.
pub fn format_polynomial(ring: &RingBasis, poly: &Polynomial) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    poly.terms()
        .map(|(m, c)| {
            let parts: Vec<String> = m
                .iter()
                .zip(ring.generators())
                .filter(|(e, _)| **e > 0)
                .map(|(e, g)| if *e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
                .collect();
            let mono = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
            match (c, mono.as_str()) {
                (1, _) => mono,
                (_, "1") => c.to_string(),
                _ => format!("{c}*{mono}"),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageWitness {
    /// `x` or `x^2`.
    pub target: String,
    pub op: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageAudit {
    pub element: String,
    pub witnesses: Vec<ImageWitness>,
    pub square_checked: bool,
    pub complete: bool,
    pub passed: bool,
}

/// Look for `x = op(y)` with `deg y < deg x`, and `x^2 = op(y)` with
/// `deg y` outside `{deg x, 2 deg x}`, over single operations `op` (`Sq^i`,
/// or `b` and `P^s` at odd primes). Each question is a linear solve, so the
/// search is exhaustive.
pub fn steenrod_image_audit(table: &ActionTable, x: &RingElement) -> Result<ImageAudit> {
    let ring = table.ring();
    let p = table.prime();
    let k = x.degree();
    let mut witnesses = Vec::new();
    let mut targets = vec![("x".to_string(), x.clone(), (0..k).collect::<Vec<_>>())];
    let square_checked = 2 * k <= ring.cap();
    if square_checked {
        let sq = ring.multiply(x, x)?;
        targets.push(("x^2".to_string(), sq, (0..2 * k).filter(|&d| d != k).collect()));
    }
    for (label, target, source_degrees) in targets {
        let td = target.degree();
        for d in source_degrees {
            if ring.dim(d) == 0 {
                continue;
            }
            let gap = td - d;
            let op = if p.is_two() {
                Op::Sq(gap)
            } else if gap == 1 {
                Op::Beta
            } else if gap % (2 * (p.value() - 1)) == 0 {
                Op::P(gap / (2 * (p.value() - 1)))
            } else {
                continue;
            };
            let cols: Vec<Vec<u32>> = ring
                .basis_elements(d)
                .iter()
                .map(|b| Ok(ring.coords(&table.apply_op(op, b)?)))
                .collect::<Result<_>>()?;
            if let Some(c) = crate::linalg::solve(p, &cols, &ring.coords(&target)) {
                let y = ring.element_from_coords(d, &c);
                witnesses.push(ImageWitness {
                    target: label.clone(),
                    op: op.to_string(),
                    source: ring.format(&y),
                });
            }
        }
    }
    Ok(ImageAudit {
        element: ring.format(x),
        passed: witnesses.is_empty(),
        witnesses,
        square_checked,
        complete: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::lucas_binomial;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn top_square_on_degree_one() {
        let t = faithful_model(1, Prime::TWO, 10).unwrap();
        let ring = t.ring().clone();
        let x = ring.generator("t1").unwrap();
        let v = t.apply_op(Op::Sq(1), &x).unwrap();
        assert_eq!(ring.format(&v), "t1^2");
        let x2 = ring.power(&x, 2).unwrap();
        assert!(t.apply_op(Op::Sq(1), &x2).unwrap().is_zero());
    }

    #[test]
    fn bockstein_in_odd_model() {
        let t = faithful_model(1, p(3), 10).unwrap();
        let ring = t.ring().clone();
        let e = ring.generator("e1").unwrap();
        assert_eq!(ring.format(&t.apply_op(Op::Beta, &e).unwrap()), "t1");
        // b is a derivation: b(e t) = t^2
        let et = ring.monomial(&[1, 1]).unwrap();
        assert_eq!(ring.format(&t.apply_op(Op::Beta, &et).unwrap()), "t1^2");
    }

    #[test]
    fn cartan_on_two_variables() {
        let t = faithful_model(2, Prime::TWO, 10).unwrap();
        let ring = t.ring().clone();
        let m = ring.monomial(&[1, 1]).unwrap();
        let v = t.apply_op(Op::Sq(1), &m).unwrap();
        let mut terms: Vec<String> = ring.format(&v).split(" + ").map(String::from).collect();
        terms.sort();
        assert_eq!(terms, vec!["t1*t2^2", "t1^2*t2"]);
    }

    #[test]
    fn reduced_powers_on_polynomial_generator() {
        for q in [3u32, 5] {
            let prime = p(q);
            let pres = RingPresentation::new(prime, vec![Generator::new("u", 2)], vec![], 2 * (8 + 8 * (q - 1))).unwrap();
            let ring = Arc::new(compute_basis(&pres).unwrap());
            let t = ActionTable::new(ring.clone(), vec![]).unwrap();
            for m in 1..=8u32 {
                let um = ring.monomial(&[m]).unwrap();
                for i in 0..=m {
                    let v = t.apply_op(Op::P(i), &um).unwrap();
                    let c = lucas_binomial(m as u64, i as u64, prime).residue();
                    let expected = ring.monomial(&[m + i * (q - 1)]).unwrap().scale(c);
                    assert_eq!(v, expected, "p={q} m={m} i={i}");
                }
            }
        }
    }

    #[test]
    fn missing_value_is_reported() {
        let two = Prime::TWO;
        let pres = RingPresentation::new(two, vec![Generator::new("a", 2), Generator::new("b", 3)], vec![], 12).unwrap();
        let ring = Arc::new(compute_basis(&pres).unwrap());
        let t = ActionTable::empty(ring.clone());
        let a = ring.generator("a").unwrap();
        let err = t.apply_op(Op::Sq(1), &a).unwrap_err();
        assert_eq!(
            err,
            Error::MissingActionValue {
                generator: "a".into(),
                op: "Sq^1".into()
            }
        );
        assert_eq!(
            t.missing_entries(),
            vec![("a".into(), Op::Sq(1)), ("b".into(), Op::Sq(1)), ("b".into(), Op::Sq(2))]
        );
    }

    #[test]
    fn entries_are_validated() {
        let two = Prime::TWO;
        let pres = RingPresentation::new(two, vec![Generator::new("a", 2)], vec![], 12).unwrap();
        let ring = Arc::new(compute_basis(&pres).unwrap());
        let a = ring.generator("a").unwrap();
        let a2 = ring.power(&a, 2).unwrap();
        // wrong degree
        assert!(ActionTable::new(ring.clone(), vec![("a".into(), Op::Sq(1), a.clone())]).is_err());
        // forced top value must agree
        assert!(ActionTable::new(ring.clone(), vec![("a".into(), Op::Sq(2), a2.clone())]).is_ok());
        assert!(ActionTable::new(ring.clone(), vec![("a".into(), Op::Sq(2), ring.zero(4))]).is_err());
        // wrong prime family
        assert!(ActionTable::new(ring.clone(), vec![("a".into(), Op::Beta, ring.zero(3))]).is_err());
        assert!(ActionTable::new(ring, vec![("z".into(), Op::Sq(1), a)]).is_err());
    }

    #[test]
    fn faithful_models_are_coherent() {
        let t = faithful_model(2, Prime::TWO, 20).unwrap();
        let r = check_adem_coherence(&t, 20).unwrap();
        assert!(r.passed, "{:?}", r.violations.first());
        assert!(r.identities_checked > 0);
        let t = faithful_model(2, p(3), 20).unwrap();
        let r = check_adem_coherence(&t, 20).unwrap();
        assert!(r.passed, "{:?}", r.violations.first());
    }

    #[test]
    fn image_audit_finds_square_of_generator() {
        let t = faithful_model(1, Prime::TWO, 12).unwrap();
        let ring = t.ring().clone();
        let x = ring.power(&ring.generator("t1").unwrap(), 2).unwrap();
        let a = steenrod_image_audit(&t, &x).unwrap();
        assert!(!a.passed);
        assert_eq!(
            a.witnesses[0],
            ImageWitness {
                target: "x".into(),
                op: "Sq^1".into(),
                source: "t1".into()
            }
        );
    }
}
