//! Mechanical checks of Steenrod-algebra identities and of conditional
//! relations in concrete rings.
//!
//! Every verifier returns a [`VerificationReport`]: a list of named checks,
//! each either required or informational, with a human-readable detail and
//! optional witnesses. A report passes when all required checks pass.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::Value;

use crate::action::{check_adem_coherence, steenrod_image_audit, ActionTable};
use crate::error::{Error, Result};
use crate::fp::{lucas_binomial, p_adic_digits, Prime};
use crate::linalg::solve;
use crate::periodicity::{factorization_audit, is_periodicity_element, minimal_period, SearchConfig};
use crate::ring::RingElement;
use crate::ringfile::load_ring;
use crate::steenrod::{algebra, CoefficientHook, Op, SteenrodAlgebra, SteenrodElement, SteenrodMonomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub required: bool,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

/// Outcome of a conditional-relation audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The hypotheses hold, the target is nonzero and lies outside the span
    /// the relation allows.
    Contradiction,
    /// The target lies in the allowed span, so nothing follows.
    Inconclusive,
    HypothesisNotMet,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Contradiction => "contradiction",
            Verdict::Inconclusive => "inconclusive",
            Verdict::HypothesisNotMet => "hypothesis not met",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    /// Wall-clock time. Not serialized, so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.required && !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Builder {
    report: VerificationReport,
    start: Instant,
}

impl Builder {
    fn new(id: &str) -> Builder {
        Builder {
            report: VerificationReport {
                id: id.to_string(),
                params: BTreeMap::new(),
                passed: false,
                verdict: None,
                checks: Vec::new(),
                notes: Vec::new(),
                elapsed: Duration::ZERO,
            },
            start: Instant::now(),
        }
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.report.params.insert(key.to_string(), value.into());
        self
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.push(name, true, passed, detail, Vec::new())
    }

    fn info(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.push(name, false, passed, detail, Vec::new())
    }

    fn push(
        &mut self,
        name: impl Into<String>,
        required: bool,
        passed: bool,
        detail: impl Into<String>,
        witnesses: Vec<String>,
    ) -> &mut Self {
        self.report.checks.push(Check {
            name: name.into(),
            required,
            passed,
            detail: detail.into(),
            witnesses,
        });
        self
    }

    fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.report.notes.push(note.into());
        self
    }

    fn finish(mut self) -> VerificationReport {
        self.report.passed = self.report.checks.iter().all(|c| !c.required || c.passed);
        self.report.elapsed = self.start.elapsed();
        self.report
    }
}

/// Exact `C(n, k)` as a big integer.
pub fn exact_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C(n, k) mod p` through the exact integer.
pub fn exact_binomial_mod(n: u64, k: u64, p: u32) -> u32 {
    let r = exact_binomial(n, k) % BigUint::from(p);
    r.to_u32_digits().first().copied().unwrap_or(0)
}

/// The pair of binomial residues from both paths and whether they agree.
fn binomial_both(n: u64, k: u64, p: Prime) -> (u32, u32) {
    (lucas_binomial(n, k, p).residue(), exact_binomial_mod(n, k, p.value()))
}

/// Required form of the leading coefficient in a [`RelationPattern`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leading {
    Exactly(u32),
    Nonzero,
}

/// A predicate on the normal form of a two-term composite: an optional
/// leading monomial with a coefficient constraint, and a rule for every
/// other term. Other terms must be a single power `P^total` (when
/// `allow_single`) or a pair `P^{total-j} P^j` with `j` in
/// `second_min..=second_max`; at p = 2 read `Sq` for `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationPattern {
    pub left: SteenrodMonomial,
    pub leading: Option<(SteenrodMonomial, Leading)>,
    pub total: u32,
    pub second_min: u32,
    pub second_max: u32,
    pub allow_single: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeOutcome {
    pub normal_form: SteenrodElement,
    pub leading_coefficient: u32,
    pub leading_ok: bool,
    pub offending: Vec<SteenrodMonomial>,
}

impl ShapeOutcome {
    pub fn passed(&self) -> bool {
        self.leading_ok && self.offending.is_empty()
    }
}

fn power(p: Prime, i: u32) -> Op {
    if p.is_two() {
        Op::Sq(i)
    } else {
        Op::P(i)
    }
}

fn word(p: Prime, exps: &[u32]) -> SteenrodMonomial {
    let ops: Vec<Op> = exps.iter().map(|&i| power(p, i)).collect();
    SteenrodMonomial::from_ops(p, &ops)
        .expect("powers are valid at their prime")
        .expect("a word of powers is never zero")
}

/// Exponents of a monomial built from powers only (no Bocksteins).
fn power_exponents(m: &SteenrodMonomial) -> Option<Vec<u32>> {
    m.ops()
        .into_iter()
        .map(|op| match op {
            Op::Sq(i) | Op::P(i) => Some(i),
            Op::Beta => None,
        })
        .collect()
}

impl RelationPattern {
    pub fn evaluate(&self, alg: &SteenrodAlgebra) -> ShapeOutcome {
        let nf = alg.normalize(&SteenrodElement::from(self.left.clone()));
        let (leading_coefficient, leading_ok) = match &self.leading {
            Some((m, rule)) => {
                let c = nf.coefficient(m).residue();
                let ok = match rule {
                    Leading::Exactly(v) => c == *v,
                    Leading::Nonzero => c != 0,
                };
                (c, ok)
            }
            None => (0, true),
        };
        let mut offending = Vec::new();
        for (m, _) in nf.terms() {
            if self.leading.as_ref().is_some_and(|(l, _)| l == m) {
                continue;
            }
            let ok = match power_exponents(m).as_deref() {
                Some([i]) => self.allow_single && *i == self.total,
                Some([i, j]) => {
                    i + j == self.total && (self.second_min..=self.second_max).contains(j)
                }
                _ => false,
            };
            if !ok {
                offending.push(m.clone());
            }
        }
        ShapeOutcome {
            normal_form: nf,
            leading_coefficient,
            leading_ok,
            offending,
        }
    }
}

fn shape_detail(pattern: &RelationPattern, out: &ShapeOutcome) -> String {
    let mut s = format!("{} = {}", pattern.left, out.normal_form);
    if let Some((m, _)) = &pattern.leading {
        s += &format!("; coefficient of {m} is {}", out.leading_coefficient);
    }
    s
}

fn shape_check(b: &mut Builder, name: String, pattern: &RelationPattern, out: &ShapeOutcome) {
    let witnesses = out.offending.iter().map(|m| format!("unexpected term {m}")).collect();
    b.push(name, true, out.passed(), shape_detail(pattern, out), witnesses);
}

/// Parameters `(p, lambda, a)` of the odd-primary checks, with `k = 2 lambda p^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OddParams {
    pub p: u32,
    pub lambda: u32,
    pub a: u32,
}

pub const DEFAULT_DEGREE_BUDGET: u32 = 500;

impl OddParams {
    pub fn new(p: u32, lambda: u32, a: u32, budget: u32) -> Result<OddParams> {
        let prime = Prime::new(p)?;
        if prime.is_two() {
            return Err(Error::Precondition("an odd prime is required".into()));
        }
        if lambda == 0 || !(p - 1).is_multiple_of(lambda) {
            return Err(Error::Precondition(format!("lambda = {lambda} must divide p - 1 = {}", p - 1)));
        }
        if a == 0 {
            return Err(Error::Precondition("a must be positive".into()));
        }
        let params = OddParams { p, lambda, a };
        match params.k_checked() {
            Some(k) if k <= budget as u64 => Ok(params),
            _ => Err(Error::Precondition(format!(
                "k = 2 lambda p^a exceeds the degree budget {budget}"
            ))),
        }
    }

    fn k_checked(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.a).map(|pa| 2 * self.lambda as u64 * pa)
    }

    pub fn prime(&self) -> Prime {
        Prime::new(self.p).expect("validated")
    }

    pub fn k(&self) -> u32 {
        self.k_checked().expect("validated") as u32
    }

    /// `p^a`.
    pub fn pa(&self) -> u32 {
        self.p.pow(self.a)
    }

    fn record(&self, b: &mut Builder) {
        b.param("p", self.p).param("lambda", self.lambda).param("a", self.a).param("k", self.k());
    }
}

/// All `(p, lambda, a)` with `p` in {3, 5, 7}, `lambda | p - 1`, `a` in
/// {1, 2} and `k <= budget`.
pub fn default_matrix(budget: u32) -> Vec<OddParams> {
    let mut out = Vec::new();
    for p in [3u32, 5, 7] {
        for lambda in (1..p).filter(|l| (p - 1) % l == 0) {
            for a in 1..=2 {
                if let Ok(params) = OddParams::new(p, lambda, a, budget) {
                    out.push(params);
                }
            }
        }
    }
    out
}

fn digits_string(n: u64, p: Prime) -> String {
    let d = p_adic_digits(n, p);
    let s: Vec<String> = d.iter().rev().map(|x| x.to_string()).collect();
    format!("({})_{}", s.join(","), p.value())
}

/// Runs the algebraic verifiers, optionally against an algebra with altered
/// Adem coefficients.
#[derive(Clone, Default)]
pub struct Verifier {
    hook: Option<CoefficientHook>,
    algebras: Arc<Mutex<HashMap<u32, Arc<SteenrodAlgebra>>>>,
}

impl fmt::Debug for Verifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Verifier").field("hooked", &self.hook.is_some()).finish()
    }
}

impl Verifier {
    pub fn new() -> Verifier {
        Verifier::default()
    }

    /// A verifier whose algebras pass every Adem coefficient through `hook`.
    pub fn with_hook(hook: CoefficientHook) -> Verifier {
        Verifier {
            hook: Some(hook),
            algebras: Arc::default(),
        }
    }

    fn algebra(&self, p: Prime) -> Arc<SteenrodAlgebra> {
        match &self.hook {
            None => algebra(p),
            Some(h) => self
                .algebras
                .lock()
                .unwrap()
                .entry(p.value())
                .or_insert_with(|| Arc::new(SteenrodAlgebra::with_hook(p, h.clone())))
                .clone(),
        }
    }

    /// `Sq^k` is indecomposable exactly when `k` is a power of two, for
    /// `1 <= k <= k_max`.
    pub fn power_of_two(&self, k_max: u32) -> Result<VerificationReport> {
        if k_max == 0 || k_max > 128 {
            return Err(Error::Precondition("k_max must be in 1..=128".into()));
        }
        let alg = self.algebra(Prime::TWO);
        let mut b = Builder::new("power-of-two");
        b.param("k_max", k_max);
        for k in 1..=k_max {
            let indecomposable = alg.is_indecomposable(k)?;
            let expected = k.is_power_of_two();
            let detail = if indecomposable {
                "indecomposable".to_string()
            } else {
                match alg.decompose_power(k) {
                    Ok(d) => format!("decomposable: {d}"),
                    Err(_) => "decomposable".to_string(),
                }
            };
            let mut witnesses = Vec::new();
            if indecomposable != expected {
                witnesses.push(format!(
                    "Sq^{k}: expected {}, found {}",
                    if expected { "indecomposable" } else { "decomposable" },
                    if indecomposable { "indecomposable" } else { "decomposable" },
                ));
            }
            b.push(format!("Sq^{k}"), true, indecomposable == expected, detail, witnesses);
        }
        b.note("indecomposability is decided by linear algebra on the span of Sq^i a, 0 < i < k, a admissible");
        Ok(b.finish())
    }

    fn power_of_two_k(k: u32) -> Result<()> {
        if !(k.is_power_of_two() && (8..=128).contains(&k)) {
            return Err(Error::Precondition(format!("k = {k} must be a power of two in 8..=128")));
        }
        Ok(())
    }

    /// Normal form of `Sq^d Sq^{k/2}` for `0 < d < k/2`: coefficient one on
    /// `Sq^{k/2+d}`, every other term `Sq^{i-j} Sq^j` with `0 < j <= d/2`.
    pub fn half_power_family(&self, k: u32) -> Result<VerificationReport> {
        Self::power_of_two_k(k)?;
        let p = Prime::TWO;
        let alg = self.algebra(p);
        let mut b = Builder::new("half-power-family");
        b.param("k", k);
        let h = k / 2;
        for d in 1..h {
            let (lucas, exact) = binomial_both((h - 1) as u64, d as u64, p);
            b.check(
                format!("d={d} leading binomial"),
                lucas == 1 && exact == 1,
                format!("C({}, {d}) mod 2: lucas {lucas}, exact {exact}", h - 1),
            );
            let pattern = RelationPattern {
                left: word(p, &[d, h]),
                leading: Some((word(p, &[h + d]), Leading::Exactly(1))),
                total: h + d,
                second_min: 1,
                second_max: d / 2,
                allow_single: false,
            };
            let out = pattern.evaluate(&alg);
            shape_check(&mut b, format!("d={d} normal form"), &pattern, &out);
        }
        b.note(format!(
            "k/2 - 1 = {} has all binary digits equal to one, so C(k/2 - 1, d) is odd for every d < k/2",
            h - 1
        ));
        Ok(b.finish())
    }

    /// Normal form of `Sq^{2i} Sq^{k-i}` for `0 < i < k/2`: coefficient one
    /// on `Sq^k Sq^i`, every other term `Sq^{k+i}` or `Sq^{k+i-j} Sq^j` with
    /// `0 < j < i`.
    pub fn square_shift_family(&self, k: u32) -> Result<VerificationReport> {
        Self::power_of_two_k(k)?;
        let p = Prime::TWO;
        let alg = self.algebra(p);
        let mut b = Builder::new("square-shift-family");
        b.param("k", k);
        for i in 1..k / 2 {
            let pattern = RelationPattern {
                left: word(p, &[2 * i, k - i]),
                leading: Some((word(p, &[k, i]), Leading::Exactly(1))),
                total: k + i,
                second_min: 1,
                second_max: i - 1,
                allow_single: true,
            };
            let out = pattern.evaluate(&alg);
            shape_check(&mut b, format!("i={i} normal form"), &pattern, &out);
        }
        Ok(b.finish())
    }

    /// For `1 <= l <= lambda` and `0 < d < (p-1) p^{a-1}`, with
    /// `i = (l-1) p^a + p^{a-1} + d`: the binomial
    /// `C((p-1)(i-d) - 1, d)` is nonzero mod p, and `P^d P^{i-d}` normalizes
    /// to a nonzero multiple of `P^i` plus terms `P^{i-j} P^j`, `j <= d/p`.
    pub fn odd_leading(&self, params: OddParams) -> Result<VerificationReport> {
        let p = params.prime();
        let q = params.p;
        let alg = self.algebra(p);
        let mut b = Builder::new("odd-leading");
        params.record(&mut b);
        let pa = params.pa();
        let pa1 = pa / q;
        let mut cases = 0;
        for l in 1..=params.lambda {
            for d in 1..(q - 1) * pa1 {
                cases += 1;
                let i = (l - 1) * pa + pa1 + d;
                let n = ((q - 1) * (i - d) - 1) as u64;
                let tag = format!("l={l} d={d}");
                let nd = p_adic_digits(n, p);
                let dd = p_adic_digits(d as u64, p);
                let a = params.a as usize;
                let digits_ok = nd.get(a - 1) == Some(&(q - 2))
                    && nd[..a - 1].iter().all(|&x| x == q - 1)
                    && dd.iter().skip(a).all(|&x| x == 0)
                    && dd.get(a - 1).is_none_or(|&x| x <= q - 2);
                b.check(
                    format!("{tag} digit pattern"),
                    digits_ok,
                    format!("n = {n} = {}, d = {}", digits_string(n, p), digits_string(d as u64, p)),
                );
                let (lucas, exact) = binomial_both(n, d as u64, p);
                b.check(
                    format!("{tag} binomial"),
                    lucas != 0 && lucas == exact,
                    format!("C({n}, {d}) mod {q}: lucas {lucas}, exact {exact}"),
                );
                b.check(
                    format!("{tag} inadmissible"),
                    d < q * (i - d),
                    format!("{d} < {q} * {}", i - d),
                );
                let pattern = RelationPattern {
                    left: word(p, &[d, i - d]),
                    leading: Some((word(p, &[i]), Leading::Nonzero)),
                    total: i,
                    second_min: 1,
                    second_max: d / q,
                    allow_single: false,
                };
                let out = pattern.evaluate(&alg);
                let adem = p.mul(p.sign(d as i64), exact);
                shape_check(&mut b, format!("{tag} normal form"), &pattern, &out);
                b.check(
                    format!("{tag} leading coefficient"),
                    out.leading_coefficient == adem,
                    format!("normal form gives {}, (-1)^d C({n}, {d}) gives {adem}", out.leading_coefficient),
                );
            }
        }
        if cases == 0 {
            b.check("parameter range", true, "vacuous: no d with 0 < d < (p-1) p^(a-1)");
            b.note("the parameter range is empty, so the check passes vacuously");
        }
        Ok(b.finish())
    }

    /// For `1 < l <= lambda` and `0 < e < p^{a-1}`: `C((p-1)(l-1)p^a - 1, e)`
    /// is nonzero and `P^e P^{(l-1)p^a}` normalizes to a nonzero multiple of
    /// `P^{(l-1)p^a+e}` plus terms with second index at most `e/p`. For
    /// `l = 1`, `P^{pe} P^{lambda p^a - (p-1)e}` normalizes to terms
    /// `P^{lambda p^a + e - j} P^j` with `j <= e`.
    pub fn odd_trailing(&self, params: OddParams) -> Result<VerificationReport> {
        let p = params.prime();
        let q = params.p;
        let alg = self.algebra(p);
        let mut b = Builder::new("odd-trailing");
        params.record(&mut b);
        let pa = params.pa();
        let pa1 = pa / q;
        let mut cases = 0;
        for e in 1..pa1 {
            for l in 2..=params.lambda {
                cases += 1;
                let tag = format!("l={l} e={e}");
                let m = (l - 1) * pa;
                let n = ((q - 1) * m - 1) as u64;
                let (lucas, exact) = binomial_both(n, e as u64, p);
                b.check(
                    format!("{tag} binomial"),
                    lucas != 0 && lucas == exact,
                    format!("C({n}, {e}) mod {q}: lucas {lucas}, exact {exact}"),
                );
                b.check(format!("{tag} inadmissible"), e < q * m, format!("{e} < {q} * {m}"));
                let pattern = RelationPattern {
                    left: word(p, &[e, m]),
                    leading: Some((word(p, &[m + e]), Leading::Nonzero)),
                    total: m + e,
                    second_min: 1,
                    second_max: e / q,
                    allow_single: false,
                };
                let out = pattern.evaluate(&alg);
                let adem = p.mul(p.sign(e as i64), exact);
                shape_check(&mut b, format!("{tag} normal form"), &pattern, &out);
                b.check(
                    format!("{tag} leading coefficient"),
                    out.leading_coefficient == adem,
                    format!("normal form gives {}, (-1)^e C({n}, {e}) gives {adem}", out.leading_coefficient),
                );
            }
            cases += 1;
            let tag = format!("l=1 e={e}");
            let top = params.lambda * pa;
            let second = top - (q - 1) * e;
            b.check(
                format!("{tag} inadmissible"),
                q * e < q * second,
                format!("{} < {q} * {second}", q * e),
            );
            b.check(
                format!("{tag} second index in range"),
                (params.lambda - 1) * pa + pa1 < second && second < top,
                format!("{} < {second} < {top}", (params.lambda - 1) * pa + pa1),
            );
            let pattern = RelationPattern {
                left: word(p, &[q * e, second]),
                leading: None,
                total: top + e,
                second_min: 1,
                second_max: e,
                allow_single: true,
            };
            let out = pattern.evaluate(&alg);
            shape_check(&mut b, format!("{tag} normal form"), &pattern, &out);
        }
        if cases == 0 {
            b.check("parameter range", true, "vacuous: no e with 0 < e < p^(a-1)");
            b.note("the parameter range is empty, so the check passes vacuously");
        }
        Ok(b.finish())
    }

    /// `P^1 b P^{k/2-1} = -b P^{k/2} + P^{k/2} b`.
    pub fn beta_identity(&self, params: OddParams) -> Result<VerificationReport> {
        let p = params.prime();
        let alg = self.algebra(p);
        let mut b = Builder::new("beta-identity");
        params.record(&mut b);
        let h = params.k() / 2;
        let left = SteenrodElement::from_ops(p, &[Op::P(1), Op::Beta, Op::P(h - 1)])?;
        let mut right = SteenrodElement::from_ops(p, &[Op::P(h), Op::Beta])?;
        right.add_scaled(&SteenrodElement::from_ops(p, &[Op::Beta, Op::P(h)])?, p.neg(1));
        b.check(
            "inadmissible",
            1 <= params.p * (h - 1),
            format!("1 <= {} * {}", params.p, h - 1),
        );
        let lhs = alg.normalize(&left);
        let rhs = alg.normalize(&right);
        b.check("identity", lhs == rhs, format!("{left} = {lhs}; {right} = {rhs}"));
        Ok(b.finish())
    }

    /// `C((p-1)p^a - 1, (lambda-1)p^a) = +-C(p-2, lambda-1)` mod p and is
    /// nonzero; the leading coefficient of `P^{(lambda-1)p^a} P^{p^a}`; and
    /// the degree bookkeeping modulo k.
    pub fn final_coefficient(&self, params: OddParams) -> Result<VerificationReport> {
        let p = params.prime();
        let q = params.p;
        let alg = self.algebra(p);
        let mut b = Builder::new("final-coefficient");
        params.record(&mut b);
        let pa = params.pa();
        let pa1 = pa / q;
        let k = params.k() as u64;
        let n = ((q - 1) * pa - 1) as u64;
        let r = ((params.lambda - 1) * pa) as u64;
        let (lucas, exact) = binomial_both(n, r, p);
        let (small_lucas, small_exact) = binomial_both((q - 2) as u64, (params.lambda - 1) as u64, p);
        let sign = if exact == small_exact {
            Some("+")
        } else if exact == p.neg(small_exact) {
            Some("-")
        } else {
            None
        };
        b.check(
            "binomial paths agree",
            lucas == exact && small_lucas == small_exact,
            format!("C({n}, {r}): lucas {lucas}, exact {exact}; C({}, {}): lucas {small_lucas}, exact {small_exact}", q - 2, params.lambda - 1),
        );
        b.check(
            "congruence up to sign",
            sign.is_some(),
            match sign {
                Some(s) => format!("C({n}, {r}) = {s}C({}, {}) mod {q}", q - 2, params.lambda - 1),
                None => format!("{exact} is not +-{small_exact} mod {q}"),
            },
        );
        b.check("nonzero", exact != 0, format!("C({n}, {r}) mod {q} = {exact}"));
        if params.lambda > 1 {
            let pattern = RelationPattern {
                left: word(p, &[(params.lambda - 1) * pa, pa]),
                leading: Some((word(p, &[params.lambda * pa]), Leading::Nonzero)),
                total: params.lambda * pa,
                second_min: 1,
                second_max: (params.lambda - 1) * pa1,
                allow_single: false,
            };
            let out = pattern.evaluate(&alg);
            let adem = p.mul(p.sign(r as i64), exact);
            shape_check(&mut b, "normal form".into(), &pattern, &out);
            b.check(
                "leading coefficient",
                out.leading_coefficient == adem,
                format!("normal form gives {}, Adem coefficient {adem}", out.leading_coefficient),
            );
        } else {
            b.note("lambda = 1: the composite is P^0 P^(p^a) = P^(p^a), no relation to normalize");
        }
        let residue = 2 * (q as u64 - 1) * pa1 as u64;
        for l in 1..=params.lambda as u64 {
            let target = k + 2 * (q as u64 - 1) * (l - 1) * pa as u64 + residue;
            b.check(
                format!("l={l} degree"),
                target % k == residue,
                format!("{target} mod {k} = {}, expected {residue}", target % k),
            );
        }
        Ok(b.finish())
    }

    /// Run a verifier by id. Odd-primary ids without explicit parameters run
    /// the default matrix.
    pub fn run(&self, id: &str, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
        let odd = || -> Result<Vec<OddParams>> {
            match (opts.p, opts.lambda, opts.a) {
                (Some(p), Some(l), Some(a)) => Ok(vec![OddParams::new(p, l, a, opts.budget)?]),
                (None, None, None) => Ok(default_matrix(opts.budget)),
                _ => Err(Error::Precondition("give all of p, lambda and a, or none".into())),
            }
        };
        let ks = || match opts.k {
            Some(k) => vec![k],
            None => vec![8, 16, 32, 64],
        };
        match id {
            "power-of-two" => Ok(vec![self.power_of_two(opts.k_max.unwrap_or(64))?]),
            "half-power-family" => ks().into_iter().map(|k| self.half_power_family(k)).collect(),
            "square-shift-family" => ks().into_iter().map(|k| self.square_shift_family(k)).collect(),
            "odd-leading" => odd()?.into_iter().map(|x| self.odd_leading(x)).collect(),
            "odd-trailing" => odd()?.into_iter().map(|x| self.odd_trailing(x)).collect(),
            "beta-identity" => odd()?.into_iter().map(|x| self.beta_identity(x)).collect(),
            "final-coefficient" => odd()?.into_iter().map(|x| self.final_coefficient(x)).collect(),
            "eight-model" => {
                let cap = opts.cap.unwrap_or(48);
                Ok(vec![
                    verify_eight_model(EightModel::Plain, cap)?,
                    verify_eight_model(EightModel::ExtraDegreeFour, cap)?,
                ])
            }
            "candidate-16" => Ok(vec![check_counterexample_candidate(opts.cap.unwrap_or(64))?]),
            other => Err(Error::Precondition(format!(
                "unknown verifier '{other}'; expected one of {}",
                VERIFIER_IDS.join(", ")
            ))),
        }
    }
}

pub const VERIFIER_IDS: &[&str] = &[
    "power-of-two",
    "half-power-family",
    "square-shift-family",
    "odd-leading",
    "odd-trailing",
    "beta-identity",
    "final-coefficient",
    "eight-model",
    "candidate-16",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub k: Option<u32>,
    pub k_max: Option<u32>,
    pub p: Option<u32>,
    pub lambda: Option<u32>,
    pub a: Option<u32>,
    pub cap: Option<u32>,
    pub budget: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            k: None,
            k_max: None,
            p: None,
            lambda: None,
            a: None,
            cap: None,
            budget: DEFAULT_DEGREE_BUDGET,
        }
    }
}

pub fn verify_power_of_two(k_max: u32) -> Result<VerificationReport> {
    Verifier::new().power_of_two(k_max)
}

pub fn verify_half_power_family(k: u32) -> Result<VerificationReport> {
    Verifier::new().half_power_family(k)
}

pub fn verify_square_shift_family(k: u32) -> Result<VerificationReport> {
    Verifier::new().square_shift_family(k)
}

pub fn verify_odd_leading(params: OddParams) -> Result<VerificationReport> {
    Verifier::new().odd_leading(params)
}

pub fn verify_odd_trailing(params: OddParams) -> Result<VerificationReport> {
    Verifier::new().odd_trailing(params)
}

pub fn verify_beta_identity(params: OddParams) -> Result<VerificationReport> {
    Verifier::new().beta_identity(params)
}

pub fn verify_final_coefficient(params: OddParams) -> Result<VerificationReport> {
    Verifier::new().final_coefficient(params)
}

/// Relations that hold conditionally in spaces, expressed as: if the
/// hypotheses hold then the target lies in the span of the summand images
/// plus the indeterminacy. Each is backed by a secondary-operation
/// decomposition that this crate does not construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionalShape {
    /// `x` of degree `2^a >= 16` killed by all `Sq^{2^i}`, `2^i < 2^a`:
    /// `x^2 = Sq^{2^a} x` is a sum of `Sq^{2^i}` images.
    Adams,
    /// `x` of degree 8 killed by `Sq^1, Sq^2, Sq^4`: `x^3` is a sum of
    /// `Sq^{2^i}` images, `2^i <= 8`.
    Cube8,
    /// `x` of degree 16 with `Sq^8 x = x y`; `u = x y` killed by
    /// `Sq^1, Sq^2, Sq^4, Sq^8`: `Sq^16 u` is a sum of `Sq^{2^i}` images,
    /// `2^i <= 8`.
    Product16,
    /// `u` killed by `Sq^1, Sq^2, Sq^4, Sq^8`: `Sq^16 u` lies in
    /// `im Sq^8 + im Sq^4 Sq^8 + im Sq^4 Sq^2 Sq^1 + im Sq^1 + im Sq^2`.
    Sq16A,
    /// `u` killed by `Sq^1, Sq^2, Sq^8, Sq^2 Sq^4, Sq^8 Sq^4`: `Sq^16 u`
    /// lies in `im Sq^4 + im Sq^8 + im Sq^1 + im Sq^2`.
    Sq16B,
}

impl ConditionalShape {
    pub const ALL: [ConditionalShape; 5] = [
        ConditionalShape::Adams,
        ConditionalShape::Cube8,
        ConditionalShape::Product16,
        ConditionalShape::Sq16A,
        ConditionalShape::Sq16B,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionalShape::Adams => "adams",
            ConditionalShape::Cube8 => "cube-8",
            ConditionalShape::Product16 => "product-16",
            ConditionalShape::Sq16A => "sq16-a",
            ConditionalShape::Sq16B => "sq16-b",
        }
    }
}

impl FromStr for ConditionalShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConditionalShape::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownShape(s.to_string()))
    }
}

impl fmt::Display for ConditionalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One family of allowed images: `op` applied to the whole group in
/// `source_degree`.
struct ImageFamily {
    op: SteenrodMonomial,
    source_degree: u32,
    indeterminacy: bool,
}

struct ShapeInstance {
    subject: RingElement,
    hypotheses: Vec<SteenrodMonomial>,
    target: RingElement,
    target_label: String,
    families: Vec<ImageFamily>,
}

fn squares(ops: &[u32]) -> SteenrodMonomial {
    SteenrodMonomial::squares(ops)
}

fn families(d: u32, items: &[(&[u32], bool)]) -> Vec<ImageFamily> {
    items
        .iter()
        .map(|(ops, ind)| {
            let op = squares(ops);
            ImageFamily {
                source_degree: d - op.degree(),
                op,
                indeterminacy: *ind,
            }
        })
        .collect()
}

/// Evaluate a conditional relation on `subject` in the ring of `table`.
///
/// The hypotheses are checked on the subject. If they hold, the target is
/// computed and tested for membership in the span of every image family
/// over its full source group; that test is exact. A nonzero target outside
/// the span is a contradiction.
pub fn conditional_relation_audit(
    table: &ActionTable,
    subject: &RingElement,
    shape: ConditionalShape,
) -> Result<VerificationReport> {
    let ring = table.ring().clone();
    if !table.prime().is_two() {
        return Err(Error::RequiresTwo);
    }
    let mut b = Builder::new("conditional-audit");
    b.param("shape", shape.name()).param("subject", ring.format(subject));
    let k = subject.degree();
    let need = |deg: u32| -> Result<()> {
        if deg > ring.cap() {
            Err(Error::Precondition(format!(
                "shape {shape} needs degree {deg}, cap is {}",
                ring.cap()
            )))
        } else {
            Ok(())
        }
    };
    let sq = |i: u32| squares(&[i]);
    let inst = match shape {
        ConditionalShape::Adams => {
            if !k.is_power_of_two() || k < 16 {
                return Err(Error::Precondition(format!(
                    "shape adams needs a power-of-two degree of at least 16, got {k}"
                )));
            }
            need(2 * k)?;
            let lower: Vec<u32> = (0..k.trailing_zeros()).map(|i| 1 << i).collect();
            ShapeInstance {
                subject: subject.clone(),
                hypotheses: lower.iter().map(|&i| sq(i)).collect(),
                target: ring.multiply(subject, subject)?,
                target_label: "x^2".into(),
                families: lower
                    .iter()
                    .map(|&i| ImageFamily {
                        op: sq(i),
                        source_degree: 2 * k - i,
                        indeterminacy: false,
                    })
                    .collect(),
            }
        }
        ConditionalShape::Cube8 => {
            if k != 8 {
                return Err(Error::Precondition(format!("shape cube-8 needs degree 8, got {k}")));
            }
            need(24)?;
            let x2 = ring.multiply(subject, subject)?;
            ShapeInstance {
                subject: subject.clone(),
                hypotheses: vec![sq(1), sq(2), sq(4)],
                target: ring.multiply(&x2, subject)?,
                target_label: "x^3".into(),
                families: families(24, &[(&[1], false), (&[2], false), (&[4], false), (&[8], false)]),
            }
        }
        ConditionalShape::Product16 => {
            if k != 16 {
                return Err(Error::Precondition(format!("shape product-16 needs degree 16, got {k}")));
            }
            need(40)?;
            let sq8 = table.act_monomial(&sq(8), subject)?;
            let y = ring.divide(&sq8, subject)?;
            match y {
                Some(y) if !y.is_zero() => {
                    let u = ring.multiply(subject, &y)?;
                    b.info(
                        "Sq^8 x = x y",
                        true,
                        format!("y = {}, u = x y = {}", ring.format(&y), ring.format(&u)),
                    );
                    ShapeInstance {
                        target: table.act_monomial(&sq(16), &u)?,
                        subject: u,
                        hypotheses: vec![sq(1), sq(2), sq(4), sq(8)],
                        target_label: "Sq^16 u".into(),
                        families: families(40, &[(&[1], false), (&[2], false), (&[4], false), (&[8], false)]),
                    }
                }
                _ => {
                    b.info(
                        "Sq^8 x = x y",
                        false,
                        format!("Sq^8 x = {} is not x times a nonzero class", ring.format(&sq8)),
                    );
                    b.report.verdict = Some(Verdict::HypothesisNotMet);
                    return Ok(b.finish());
                }
            }
        }
        ConditionalShape::Sq16A | ConditionalShape::Sq16B => {
            need(k + 16)?;
            let (hyps, fams): (Vec<SteenrodMonomial>, Vec<(&[u32], bool)>) = if shape == ConditionalShape::Sq16A {
                (
                    vec![sq(1), sq(2), sq(4), sq(8)],
                    vec![(&[8], false), (&[4, 8], false), (&[4, 2, 1], false), (&[1], true), (&[2], true)],
                )
            } else {
                (
                    vec![sq(1), sq(2), sq(8), squares(&[2, 4]), squares(&[8, 4])],
                    vec![(&[4], false), (&[8], false), (&[1], true), (&[2], true)],
                )
            };
            ShapeInstance {
                subject: subject.clone(),
                hypotheses: hyps,
                target: table.act_monomial(&sq(16), subject)?,
                target_label: "Sq^16 u".into(),
                families: families(k + 16, &fams),
            }
        }
    };

    let mut hypotheses_hold = true;
    for h in &inst.hypotheses {
        let v = table.act_monomial(h, &inst.subject)?;
        hypotheses_hold &= v.is_zero();
        b.info(
            format!("hypothesis {h}"),
            v.is_zero(),
            format!("{h}({}) = {}", ring.format(&inst.subject), ring.format(&v)),
        );
    }
    if !hypotheses_hold {
        b.report.verdict = Some(Verdict::HypothesisNotMet);
        b.note("the subject does not satisfy the hypotheses, so the relation says nothing about it");
        return Ok(b.finish());
    }

    let target_degree = inst.target.degree();
    let tdim = ring.dim(target_degree);
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for f in &inst.families {
        let dim = ring.dim(f.source_degree);
        let kind = if f.indeterminacy { "indeterminacy" } else { "summand" };
        b.info(
            format!("{kind} {} source", f.op),
            true,
            format!("H^{} has dimension {dim}", f.source_degree),
        );
        for src in ring.basis_elements(f.source_degree) {
            let img = table.act_monomial(&f.op, &src)?;
            labels.push(format!("{}({})", f.op, ring.format(&src)));
            columns.push(img.to_dense(tdim));
        }
    }
    let tc = ring.coords(&inst.target);
    let target_zero = inst.target.is_zero();
    let membership = solve(table.prime(), &columns, &tc);
    b.info(
        "target",
        !target_zero,
        format!("{} = {}", inst.target_label, ring.format(&inst.target)),
    );
    let verdict = match (&membership, target_zero) {
        (None, false) => Verdict::Contradiction,
        _ => Verdict::Inconclusive,
    };
    let detail = match &membership {
        None => format!("{} is not in the span of the allowed images", inst.target_label),
        Some(c) => {
            let used: Vec<String> = c
                .iter()
                .zip(&labels)
                .filter(|(v, _)| **v != 0)
                .map(|(v, l)| if *v == 1 { l.clone() } else { format!("{v}*{l}") })
                .collect();
            if used.is_empty() {
                format!("{} is zero", inst.target_label)
            } else {
                format!("{} = {}", inst.target_label, used.join(" + "))
            }
        }
    };
    b.info("membership", membership.is_some(), detail);
    b.report.verdict = Some(verdict);
    b.note("the secondary-operation decomposition behind this relation is assumed, not constructed");
    Ok(b.finish())
}

/// Truncated models in degrees divisible by 4 used to test the
/// `product-16` relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EightModel {
    /// `F_2[x, y8]/(y8^2)`, `Sq^8 x = x y8`.
    Plain,
    /// `F_2[x, w4]/(w4^3)`, `Sq^4 x = 0`, `Sq^8 x = x w4^2`.
    ExtraDegreeFour,
}

pub fn eight_model(model: EightModel, cap: u32) -> Result<ActionTable> {
    let text = match model {
        EightModel::Plain => format!(
            "prime 2\ncap {cap}\ngen y8 8\ngen x 16\nrel y8^2\nact Sq^8(x) = x*y8\n"
        ),
        EightModel::ExtraDegreeFour => format!(
            "prime 2\ncap {cap}\ngen w4 4\ngen x 16\nrel w4^3\nact Sq^4(x) = 0\nact Sq^8(x) = x*w4^2\nact Sq^12(x) = 0\n"
        ),
    };
    Ok(load_ring(&text)?.table)
}

/// The `product-16` relation applied to a periodic ring with classes only in
/// degrees divisible by 8 forces `x^2 y8 = Sq^8(x^2) = (Sq^4 x)^2 = 0`,
/// contradicting periodicity. With an extra degree-4 class nothing follows.
pub fn verify_eight_model(model: EightModel, cap: u32) -> Result<VerificationReport> {
    if cap < 48 {
        return Err(Error::Precondition(format!("cap must be at least 48, got {cap}")));
    }
    let table = eight_model(model, cap)?;
    let ring = table.ring().clone();
    let x = ring.generator("x")?;
    let mut b = Builder::new("eight-model");
    b.param("cap", cap).param(
        "model",
        match model {
            EightModel::Plain => "plain",
            EightModel::ExtraDegreeFour => "extra-degree-4",
        },
    );
    b.check("x is periodic", is_periodicity_element(&ring, &x)?, format!("multiplication by x up to degree {cap}"));
    let audit = conditional_relation_audit(&table, &x, ConditionalShape::Product16)?;
    let verdict = audit.verdict.expect("audits set a verdict");
    match model {
        EightModel::Plain => {
            let y = ring.generator("y8")?;
            let x2 = ring.multiply(&x, &x)?;
            let sq8x2 = table.act_monomial(&squares(&[8]), &x2)?;
            let sq4x = table.act_monomial(&squares(&[4]), &x)?;
            let sq4x_sq = ring.multiply(&sq4x, &sq4x)?;
            let x2y = ring.multiply(&x2, &y)?;
            b.check("Sq^8(x^2) = 0", sq8x2.is_zero(), format!("Sq^8(x^2) = {}", ring.format(&sq8x2)));
            b.check("(Sq^4 x)^2 = 0", sq4x_sq.is_zero(), format!("(Sq^4 x)^2 = {}", ring.format(&sq4x_sq)));
            b.check("x^2 y8 != 0", !x2y.is_zero(), format!("x^2 y8 = {}", ring.format(&x2y)));
            b.check(
                "relation yields a contradiction",
                verdict == Verdict::Contradiction,
                format!("verdict: {verdict}"),
            );
        }
        EightModel::ExtraDegreeFour => {
            b.check(
                "no contradiction derivable",
                verdict == Verdict::Inconclusive,
                format!("verdict: {verdict}"),
            );
        }
    }
    for c in &audit.checks {
        b.info(format!("audit: {}", c.name), c.passed, c.detail.clone());
    }
    b.report.verdict = Some(verdict);
    b.note("the secondary-operation decomposition behind the relation is assumed, not constructed");
    Ok(b.finish())
}

/// The candidate ring in degrees divisible by 4 with a degree-16
/// periodicity class.
pub fn candidate_ring(cap: u32) -> Result<ActionTable> {
    if cap < 48 {
        return Err(Error::Precondition(format!("cap must be at least 48, got {cap}")));
    }
    let text = format!(
        "prime 2
cap {cap}
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
act Sq^4(y12) = 0
act Sq^8(y12) = x*y4
"
    );
    let mut table = load_ring(&text)?.table;
    table.add_note("Sq^j on y4, y8, y12 and x vanishes when the target group is zero");
    table.add_note("Sq^4(y12) = 0 is a choice: the target group is spanned by x, and a nonzero value would write x as a Steenrod image");
    table.add_note("Sq^4(y8) = y12 and Sq^8(y12) = x y4 are the nonzero values the ring is built around");
    Ok(table)
}

/// Check the stated properties of the candidate ring.
pub fn check_counterexample_candidate(cap: u32) -> Result<VerificationReport> {
    check_candidate_table(&candidate_ring(cap)?)
}

/// As [`check_counterexample_candidate`] on a given table, which must use
/// the candidate's generator names. Used for negative controls.
pub fn check_candidate_table(table: &ActionTable) -> Result<VerificationReport> {
    let ring = table.ring().clone();
    let cap = ring.cap();
    if cap < 48 {
        return Err(Error::Precondition(format!("cap must be at least 48, got {cap}")));
    }
    let sq = |i: u32| squares(&[i]);
    let fmt = |e: &RingElement| ring.format(e);
    let mut b = Builder::new("candidate-16");
    b.param("cap", cap);
    let x = ring.generator("x")?;
    let y4 = ring.generator("y4")?;
    let y8 = ring.generator("y8")?;

    let coherence = check_adem_coherence(table, cap)?;
    let witnesses: Vec<String> = coherence
        .violations
        .iter()
        .take(8)
        .map(|v| format!("{} on {} (degree {}): {} != {}", v.relation, v.element, v.degree, v.lhs, v.rhs))
        .collect();
    b.push(
        "Adem coherence",
        false,
        coherence.passed,
        format!(
            "{} identities checked, {} violations",
            coherence.identities_checked,
            coherence.violations.len()
        ),
        witnesses,
    );

    let config = SearchConfig::default();
    let periodic = is_periodicity_element(&ring, &x)?;
    b.check(
        "x is periodic",
        periodic,
        format!("multiplication by x is bijective on the verified range [0, {}]", cap - 16),
    );
    let min = minimal_period(&ring, &config)?;
    let min_ok = matches!(&min.found, Some((16, _))) && min.complete;
    b.check(
        "minimal period",
        min_ok,
        match &min.found {
            Some((k, w)) => format!("{k}, witnessed by {}", fmt(w)),
            None => "none".into(),
        },
    );
    let fa = factorization_audit(&ring, &x, &config)?;
    b.push(
        "factorization audit",
        true,
        fa.passed,
        format!("x and x^2 are not products of lower-degree classes (complete: {})", fa.complete),
        fa.witnesses.iter().map(|w| format!("{} = ({}) * ({})", w.target, w.y, w.z)).collect(),
    );
    let ia = steenrod_image_audit(table, &x)?;
    b.push(
        "Steenrod image audit",
        true,
        ia.passed,
        "x and x^2 are not images of single operations from the excluded degrees",
        ia.witnesses.iter().map(|w| format!("{} = {}({})", w.target, w.op, w.source)).collect(),
    );

    // y_i defined by Sq^i x = x y_i.
    let mut ys = Vec::new();
    for i in [4u32, 8, 12] {
        let v = table.act_monomial(&sq(i), &x)?;
        match ring.divide(&v, &x)? {
            Some(y) => ys.push(y),
            None => {
                b.check(format!("Sq^{i} x divisible by x"), false, format!("Sq^{i} x = {}", fmt(&v)));
                return Ok(b.finish());
            }
        }
    }

    let mut failures = Vec::new();
    for i in [0u32, 4, 8, 12] {
        for e in ring.basis_elements(16 + i) {
            let lhs = table.act_monomial(&sq(16), &e)?;
            let rhs = ring.multiply(&x, &e)?;
            if lhs != rhs {
                failures.push(format!("Sq^16({}) = {}, x * it = {}", fmt(&e), fmt(&lhs), fmt(&rhs)));
            }
        }
    }
    b.push(
        "x^-1 Sq^16 is the identity on H^16, H^20, H^24, H^28",
        true,
        failures.is_empty(),
        "Sq^16(e) = x e for every basis class e",
        failures,
    );

    let mut failures = Vec::new();
    for u in ring.basis_elements(8).iter().chain(ring.basis_elements(12).iter()) {
        for v in ring.basis_elements(12) {
            let prod = ring.multiply(u, &v)?;
            if !prod.is_zero() {
                failures.push(format!("({}) * ({}) = {}", fmt(u), fmt(&v), fmt(&prod)));
            }
        }
    }
    for u in ring.basis_elements(8) {
        for v in ring.basis_elements(12) {
            let s = table.act_monomial(&sq(8), &v)?;
            let prod = ring.multiply(&u, &s)?;
            if !prod.is_zero() {
                failures.push(format!("({}) * Sq^8({}) = {}", fmt(&u), fmt(&v), fmt(&prod)));
            }
        }
    }
    b.push(
        "u8 v12 = u12 v12 = u8 Sq^8(v12) = 0",
        true,
        failures.is_empty(),
        "over all basis classes u8, u12, v12",
        failures,
    );

    let mut failures = Vec::new();
    for (i, a) in ys.iter().enumerate() {
        for c in &ys[i..] {
            let prod = ring.multiply(a, c)?;
            if !prod.is_zero() {
                failures.push(format!("({}) * ({}) = {}", fmt(a), fmt(c), fmt(&prod)));
            }
        }
    }
    b.push(
        "y_i y_j = 0",
        true,
        failures.is_empty(),
        format!(
            "y4 = {}, y8 = {}, y12 = {}",
            fmt(&ys[0]),
            fmt(&ys[1]),
            fmt(&ys[2])
        ),
        failures,
    );

    let s4y8 = table.act_monomial(&sq(4), &ys[1])?;
    let s8y12 = table.act_monomial(&sq(8), &ys[2])?;
    let xy4 = ring.multiply(&x, &ys[0])?;
    let mut failures = Vec::new();
    if s4y8 != ys[2] {
        failures.push(format!("Sq^4 y8 = {}, expected {}", fmt(&s4y8), fmt(&ys[2])));
    }
    if s8y12 != xy4 {
        failures.push(format!("Sq^8 y12 = {}, expected {}", fmt(&s8y12), fmt(&xy4)));
    }
    b.push(
        "Sq^4 y8 = y12 and Sq^8 y12 = x y4",
        true,
        failures.is_empty(),
        format!("Sq^4 y8 = {}, Sq^8 y12 = {}", fmt(&s4y8), fmt(&s8y12)),
        failures,
    );

    let chain = table.act_monomial(&squares(&[8, 4]), &y8)?;
    let expected = ring.multiply(&x, &y4)?;
    b.check(
        "Sq^8 Sq^4 y8 = x y4 != 0",
        chain == expected && !chain.is_zero(),
        format!("Sq^8 Sq^4 y8 = {}", fmt(&chain)),
    );

    let xy8 = ring.multiply(&x, &y8)?;
    let audit = conditional_relation_audit(table, &xy8, ConditionalShape::Sq16B)?;
    let verdict = audit.verdict.expect("audits set a verdict");
    let mut detail = format!("relation sq16-b on x y8: {verdict}");
    if let Some(c) = audit.checks.iter().find(|c| !c.passed && c.name.starts_with("hypothesis")) {
        detail += &format!(" ({})", c.detail);
    }
    b.info("conditional relation on x y8", verdict != Verdict::Contradiction, detail);

    for n in table.notes() {
        b.note(n.clone());
    }
    b.note("the secondary-operation decompositions behind the conditional relations are assumed, not constructed");
    Ok(b.finish())
}
