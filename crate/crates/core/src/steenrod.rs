//! The mod p Steenrod algebra in the admissible (Serre–Cartan) basis.
//!
//! Monomials are stored as flat words:
//!
//! * at p = 2, `[i_1, ..., i_n]` with every `i_j > 0` stands for
//!   `Sq^{i_1} ... Sq^{i_n}`;
//! * at odd p, `[e_0, s_1, e_1, ..., s_n, e_n]` with `e_j` in {0, 1} and
//!   `s_j > 0` stands for `b^{e_0} P^{s_1} b^{e_1} ... P^{s_n} b^{e_n}`.
//!
//! Products are written left to right and act right to left, as usual.
//! Normalization rewrites the leftmost inadmissible pair with the Adem
//! relation until every monomial is admissible.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::fp::{binomial_mod, FpScalar, Prime};
use crate::linalg::Echelon;

/// A single generating operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Sq(u32),
    P(u32),
    Beta,
}

impl Op {
    pub fn degree(self, p: Prime) -> u32 {
        match self {
            Op::Sq(i) => i,
            Op::P(s) => 2 * s * (p.value() - 1),
            Op::Beta => 1,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Sq(i) => write!(f, "Sq^{i}"),
            Op::P(s) => write!(f, "P^{s}"),
            Op::Beta => write!(f, "b"),
        }
    }
}

/// A composite of Steenrod squares, or of reduced powers and Bocksteins.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SteenrodMonomial {
    prime: Prime,
    degree: u32,
    word: Vec<u32>,
}

fn word_degree(prime: Prime, word: &[u32]) -> u32 {
    if prime.is_two() {
        word.iter().sum()
    } else {
        let q = 2 * (prime.value() - 1);
        word.iter()
            .enumerate()
            .map(|(i, &x)| if i % 2 == 0 { x } else { q * x })
            .sum()
    }
}

/// Turn a token sequence into a canonical odd-prime word. `P^0` tokens vanish;
/// adjacent Bocksteins make the whole monomial zero (`None`).
fn canonical_odd_word(tokens: impl IntoIterator<Item = Op>) -> Option<Vec<u32>> {
    let mut word = Vec::new();
    let mut eps = 0u32;
    for t in tokens {
        match t {
            Op::Beta => {
                if eps == 1 {
                    return None;
                }
                eps = 1;
            }
            Op::P(0) => {}
            Op::P(s) => {
                word.push(eps);
                word.push(s);
                eps = 0;
            }
            Op::Sq(_) => unreachable!("Sq token at an odd prime"),
        }
    }
    word.push(eps);
    Some(word)
}

fn odd_tokens(word: &[u32]) -> impl Iterator<Item = Op> + '_ {
    word.iter().enumerate().filter_map(|(i, &x)| {
        if i % 2 == 0 {
            (x == 1).then_some(Op::Beta)
        } else {
            Some(Op::P(x))
        }
    })
}

impl SteenrodMonomial {
    pub fn identity(prime: Prime) -> SteenrodMonomial {
        let word = if prime.is_two() { vec![] } else { vec![0] };
        SteenrodMonomial {
            prime,
            degree: 0,
            word,
        }
    }

    /// `Sq^{i_1} ... Sq^{i_n}`; zero exponents are identities and are dropped.
    pub fn squares(exponents: &[u32]) -> SteenrodMonomial {
        let word: Vec<u32> = exponents.iter().copied().filter(|&i| i != 0).collect();
        SteenrodMonomial {
            prime: Prime::TWO,
            degree: word.iter().sum(),
            word,
        }
    }

    /// Build a monomial from a left-to-right list of operations. Returns
    /// `Ok(None)` when the product vanishes because of `b b = 0`.
    pub fn from_ops(prime: Prime, ops: &[Op]) -> Result<Option<SteenrodMonomial>> {
        if prime.is_two() {
            let mut word = Vec::with_capacity(ops.len());
            for op in ops {
                match *op {
                    Op::Sq(0) => {}
                    Op::Sq(i) => word.push(i),
                    other => {
                        return Err(Error::InvalidMonomial(format!("{other} at p = 2")));
                    }
                }
            }
            return Ok(Some(SteenrodMonomial {
                prime,
                degree: word.iter().sum(),
                word,
            }));
        }
        if let Some(op) = ops.iter().find(|o| matches!(o, Op::Sq(_))) {
            return Err(Error::InvalidMonomial(format!("{op} at p = {prime}")));
        }
        Ok(canonical_odd_word(ops.iter().copied()).map(|word| SteenrodMonomial {
            prime,
            degree: word_degree(prime, &word),
            word,
        }))
    }

    /// Construct from a raw word in the storage layout described in the
    /// module documentation, validating it.
    pub fn from_word(prime: Prime, word: Vec<u32>) -> Result<SteenrodMonomial> {
        if prime.is_two() {
            if word.contains(&0) {
                return Err(Error::InvalidMonomial("zero exponent in word".into()));
            }
        } else {
            if word.len().is_multiple_of(2) {
                return Err(Error::InvalidMonomial("odd-prime word must have odd length".into()));
            }
            for (i, &x) in word.iter().enumerate() {
                if i % 2 == 0 && x > 1 {
                    return Err(Error::InvalidMonomial("Bockstein exponent above 1".into()));
                }
                if i % 2 == 1 && x == 0 {
                    return Err(Error::InvalidMonomial("zero reduced-power exponent".into()));
                }
            }
        }
        Ok(SteenrodMonomial {
            prime,
            degree: word_degree(prime, &word),
            word,
        })
    }

    fn from_word_unchecked(prime: Prime, word: Vec<u32>) -> SteenrodMonomial {
        SteenrodMonomial {
            prime,
            degree: word_degree(prime, &word),
            word,
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.degree == 0
    }

    /// Number of `Sq` or `P` factors.
    pub fn length(&self) -> usize {
        if self.prime.is_two() {
            self.word.len()
        } else {
            self.word.len() / 2
        }
    }

    /// Left-to-right list of operations.
    pub fn ops(&self) -> Vec<Op> {
        if self.prime.is_two() {
            self.word.iter().map(|&i| Op::Sq(i)).collect()
        } else {
            odd_tokens(&self.word).collect()
        }
    }

    /// Indices `j` of the inadmissible adjacent pairs (j-th and (j+1)-th
    /// `Sq`/`P` factor).
    pub fn inadmissible_pairs(&self) -> Vec<usize> {
        let p = self.prime.value();
        if self.prime.is_two() {
            (0..self.word.len().saturating_sub(1))
                .filter(|&j| self.word[j] < 2 * self.word[j + 1])
                .collect()
        } else {
            let n = self.length();
            (0..n.saturating_sub(1))
                .filter(|&j| {
                    let s = self.word[2 * j + 1];
                    let e = self.word[2 * j + 2];
                    let t = self.word[2 * j + 3];
                    s < p * t + e
                })
                .collect()
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.inadmissible_pairs().is_empty()
    }

    /// Excess of an admissible monomial: it annihilates every class of
    /// smaller degree.
    pub fn excess(&self) -> Result<u32> {
        if !self.is_admissible() {
            return Err(Error::InvalidMonomial(format!(
                "excess is only defined for admissible monomials, got {self}"
            )));
        }
        if self.word.is_empty() {
            return Ok(0);
        }
        if self.prime.is_two() {
            Ok(2 * self.word[0] - self.degree)
        } else if self.word.len() == 1 {
            Ok(self.word[0])
        } else {
            // 2 s_1 + e_0 - |rest after s_1|
            let head = 2 * self.word[1] + self.word[0];
            let rest = self.degree - self.word[0] - 2 * self.word[1] * (self.prime.value() - 1);
            Ok(head - rest)
        }
    }

    /// Composite `self ∘ other`; `None` if it vanishes through `b b`.
    pub fn compose(&self, other: &SteenrodMonomial) -> Option<SteenrodMonomial> {
        debug_assert_eq!(self.prime, other.prime);
        if self.prime.is_two() {
            let mut word = self.word.clone();
            word.extend_from_slice(&other.word);
            Some(SteenrodMonomial {
                prime: self.prime,
                degree: self.degree + other.degree,
                word,
            })
        } else {
            canonical_odd_word(odd_tokens(&self.word).chain(odd_tokens(&other.word)))
                .map(|w| SteenrodMonomial::from_word_unchecked(self.prime, w))
        }
    }
}

impl Ord for SteenrodMonomial {
    /// Degree, then length, then lexicographic on the word.
    fn cmp(&self, other: &Self) -> Ordering {
        self.prime
            .cmp(&other.prime)
            .then(self.degree.cmp(&other.degree))
            .then(self.word.len().cmp(&other.word.len()))
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for SteenrodMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SteenrodMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let ops = self.ops();
        for (i, op) in ops.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

/// An F_p-linear combination of Steenrod monomials (not necessarily
/// admissible, not necessarily homogeneous).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SteenrodElement {
    prime: Prime,
    terms: BTreeMap<SteenrodMonomial, u32>,
}

impl SteenrodElement {
    pub fn zero(prime: Prime) -> SteenrodElement {
        SteenrodElement {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(prime: Prime) -> SteenrodElement {
        SteenrodElement::from(SteenrodMonomial::identity(prime))
    }

    pub fn sq(i: u32) -> SteenrodElement {
        SteenrodElement::from(SteenrodMonomial::squares(&[i]))
    }

    pub fn squares(exponents: &[u32]) -> SteenrodElement {
        SteenrodElement::from(SteenrodMonomial::squares(exponents))
    }

    /// Monomial from operations; zero when it collapses through `b b`.
    pub fn from_ops(prime: Prime, ops: &[Op]) -> Result<SteenrodElement> {
        Ok(match SteenrodMonomial::from_ops(prime, ops)? {
            Some(m) => SteenrodElement::from(m),
            None => SteenrodElement::zero(prime),
        })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SteenrodMonomial, FpScalar)> + '_ {
        let p = self.prime;
        self.terms.iter().map(move |(m, &c)| (m, FpScalar::new(c as i64, p)))
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&SteenrodMonomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &SteenrodMonomial) -> FpScalar {
        FpScalar::new(self.terms.get(m).copied().unwrap_or(0) as i64, self.prime)
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Add `c * m` in place.
    pub fn add_term(&mut self, m: SteenrodMonomial, c: u32) {
        debug_assert_eq!(m.prime, self.prime);
        let p = self.prime;
        let c = c % p.value();
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let n = p.add(*o.get(), c);
                if n == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = n;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SteenrodElement, c: u32) {
        let p = self.prime;
        for (m, &d) in &other.terms {
            self.add_term(m.clone(), p.mul(c, d));
        }
    }

    pub fn scale(&self, c: FpScalar) -> SteenrodElement {
        let mut out = SteenrodElement::zero(self.prime);
        out.add_scaled(self, c.residue());
        out
    }

    /// Composite `self ∘ other`.
    pub fn compose(&self, other: &SteenrodElement) -> SteenrodElement {
        let p = self.prime;
        let mut out = SteenrodElement::zero(p);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if let Some(ab) = a.compose(b) {
                    out.add_term(ab, p.mul(ca, cb));
                }
            }
        }
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(SteenrodMonomial::is_admissible)
    }

    /// The single monomial, if this element is exactly one monomial with
    /// coefficient 1.
    pub fn as_monomial(&self) -> Option<&SteenrodMonomial> {
        match self.terms.iter().next() {
            Some((m, 1)) if self.terms.len() == 1 => Some(m),
            _ => None,
        }
    }
}

impl From<SteenrodMonomial> for SteenrodElement {
    fn from(m: SteenrodMonomial) -> Self {
        let mut terms = BTreeMap::new();
        let prime = m.prime;
        terms.insert(m, 1);
        SteenrodElement { prime, terms }
    }
}

impl std::ops::Add for &SteenrodElement {
    type Output = SteenrodElement;
    fn add(self, rhs: &SteenrodElement) -> SteenrodElement {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl std::ops::Sub for &SteenrodElement {
    type Output = SteenrodElement;
    fn sub(self, rhs: &SteenrodElement) -> SteenrodElement {
        let mut out = self.clone();
        out.add_scaled(rhs, self.prime.value() - 1);
        out
    }
}

impl std::ops::Neg for &SteenrodElement {
    type Output = SteenrodElement;
    fn neg(self) -> SteenrodElement {
        self.scale(FpScalar::new(-1, self.prime))
    }
}

impl std::ops::Mul for &SteenrodElement {
    type Output = SteenrodElement;
    fn mul(self, rhs: &SteenrodElement) -> SteenrodElement {
        self.compose(rhs)
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_identity() {
                write!(f, "{c}")?;
            } else if c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c} {m}")?;
            }
        }
        Ok(())
    }
}

/// Which Adem family produced a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdemFamily {
    /// `Sq^a Sq^b`, or `P^a P^b` at odd p.
    Plain,
    /// The `b P^{a+b-t} P^t` terms of `P^a b P^b`.
    BetaFirst,
    /// The `P^{a+b-t} b P^t` terms of `P^a b P^b`.
    BetaMiddle,
}

/// One coefficient of one Adem relation, handed to a coefficient hook.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdemInstance {
    pub family: AdemFamily,
    pub first: u32,
    pub second: u32,
    pub index: u32,
}

/// Replaces Adem coefficients. Used to build deliberately broken algebras
/// for negative controls.
pub type CoefficientHook = Arc<dyn Fn(&AdemInstance, u32) -> u32 + Send + Sync>;

/// Which inadmissible pair a rewriting step acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairChoice {
    Leftmost,
    Rightmost,
}

/// An expression `Sq^k = sum_i Sq^i ∘ a_i` with `0 < i < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdemDecomposition {
    pub target_degree: u32,
    pub summands: Vec<(u32, SteenrodElement)>,
}

impl AdemDecomposition {
    /// `sum_i Sq^i ∘ a_i`, not normalized.
    pub fn recombine(&self) -> SteenrodElement {
        let mut out = SteenrodElement::zero(Prime::TWO);
        for (i, a) in &self.summands {
            out.add_scaled(&SteenrodElement::sq(*i).compose(a), 1);
        }
        out
    }
}

impl fmt::Display for AdemDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq^{} = ", self.target_degree)?;
        for (n, (i, a)) in self.summands.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if a.len() == 1 {
                write!(f, "Sq^{i} ∘ {a}")?;
            } else {
                write!(f, "Sq^{i} ∘ ({a})")?;
            }
        }
        Ok(())
    }
}

/// The admissible monomials of one degree with a lookup index.
#[derive(Debug)]
pub struct AdmissibleBasis {
    pub degree: u32,
    pub monomials: Vec<SteenrodMonomial>,
    index: HashMap<SteenrodMonomial, usize>,
}

impl AdmissibleBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &SteenrodMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of an admissible element in this basis.
    pub fn coordinates(&self, e: &SteenrodElement) -> Vec<u32> {
        let mut v = vec![0u32; self.monomials.len()];
        for (m, c) in e.raw_terms() {
            let i = self
                .index_of(m)
                .unwrap_or_else(|| panic!("{m} is not an admissible monomial of degree {}", self.degree));
            v[i] = c;
        }
        v
    }
}

/// The Steenrod algebra at one prime, with a cache of normal forms.
///
/// The cache is behind a lock, so one instance can be shared between
/// threads.
pub struct SteenrodAlgebra {
    prime: Prime,
    hook: Option<CoefficientHook>,
    normal_forms: RwLock<HashMap<SteenrodMonomial, Arc<SteenrodElement>>>,
    bases: RwLock<HashMap<u32, Arc<AdmissibleBasis>>>,
}

impl fmt::Debug for SteenrodAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SteenrodAlgebra")
            .field("prime", &self.prime)
            .field("hooked", &self.hook.is_some())
            .finish()
    }
}

static SHARED: OnceLock<Mutex<HashMap<u32, Arc<SteenrodAlgebra>>>> = OnceLock::new();

/// Process-wide instance with the standard Adem coefficients.
pub fn algebra(prime: Prime) -> Arc<SteenrodAlgebra> {
    let registry = SHARED.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = registry.lock().unwrap();
    map.entry(prime.value())
        .or_insert_with(|| Arc::new(SteenrodAlgebra::new(prime)))
        .clone()
}

impl SteenrodAlgebra {
    pub fn new(prime: Prime) -> SteenrodAlgebra {
        SteenrodAlgebra {
            prime,
            hook: None,
            normal_forms: RwLock::new(HashMap::new()),
            bases: RwLock::new(HashMap::new()),
        }
    }

    /// An algebra whose Adem coefficients pass through `hook`.
    pub fn with_hook(prime: Prime, hook: CoefficientHook) -> SteenrodAlgebra {
        SteenrodAlgebra {
            hook: Some(hook),
            ..SteenrodAlgebra::new(prime)
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    fn check_prime(&self, p: Prime) -> Result<()> {
        if p != self.prime {
            return Err(Error::PrimeMismatch {
                expected: self.prime.value(),
                found: p.value(),
            });
        }
        Ok(())
    }

    fn coefficient(&self, inst: AdemInstance, value: u32) -> u32 {
        match &self.hook {
            Some(h) => h(&inst, value) % self.prime.value(),
            None => value,
        }
    }

    /// Right-hand side of the Adem relation for the pair at index `j`.
    /// The pair must be inadmissible.
    fn rewrite_pair(&self, m: &SteenrodMonomial, j: usize) -> SteenrodElement {
        let p = self.prime;
        let mut out = SteenrodElement::zero(p);
        if p.is_two() {
            let (a, b) = (m.word[j] as i64, m.word[j + 1] as i64);
            for t in 0..=a / 2 {
                let c = self.coefficient(
                    AdemInstance {
                        family: AdemFamily::Plain,
                        first: a as u32,
                        second: b as u32,
                        index: t as u32,
                    },
                    binomial_mod(b - 1 - t, a - 2 * t, p),
                );
                if c == 0 {
                    continue;
                }
                let mut word = Vec::with_capacity(m.word.len());
                word.extend_from_slice(&m.word[..j]);
                word.push((a + b - t) as u32);
                if t > 0 {
                    word.push(t as u32);
                }
                word.extend_from_slice(&m.word[j + 2..]);
                out.add_term(SteenrodMonomial::from_word_unchecked(p, word), c);
            }
            return out;
        }

        let q = p.value() as i64;
        let a = m.word[2 * j + 1] as i64;
        let eps = m.word[2 * j + 2];
        let b = m.word[2 * j + 3] as i64;
        let prefix = &m.word[..2 * j + 1];
        let suffix = &m.word[2 * j + 4..];
        let mut emit = |middle: &[Op], c: u32| {
            if c == 0 {
                return;
            }
            let tokens = odd_tokens(prefix)
                .chain(middle.iter().copied())
                // the suffix starts with an epsilon slot
                .chain(odd_tokens_from_eps(suffix));
            if let Some(w) = canonical_odd_word(tokens) {
                out.add_term(SteenrodMonomial::from_word_unchecked(p, w), c);
            }
        };
        for t in 0..=a / q {
            let sign = p.sign(a + t);
            if eps == 0 {
                let bin = binomial_mod((q - 1) * (b - t) - 1, a - q * t, p);
                let c = self.coefficient(
                    AdemInstance {
                        family: AdemFamily::Plain,
                        first: a as u32,
                        second: b as u32,
                        index: t as u32,
                    },
                    p.mul(sign, bin),
                );
                emit(&[Op::P((a + b - t) as u32), Op::P(t as u32)], c);
            } else {
                let bin1 = binomial_mod((q - 1) * (b - t), a - q * t, p);
                let c1 = self.coefficient(
                    AdemInstance {
                        family: AdemFamily::BetaFirst,
                        first: a as u32,
                        second: b as u32,
                        index: t as u32,
                    },
                    p.mul(sign, bin1),
                );
                emit(&[Op::Beta, Op::P((a + b - t) as u32), Op::P(t as u32)], c1);
                let bin2 = binomial_mod((q - 1) * (b - t) - 1, a - q * t - 1, p);
                let c2 = self.coefficient(
                    AdemInstance {
                        family: AdemFamily::BetaMiddle,
                        first: a as u32,
                        second: b as u32,
                        index: t as u32,
                    },
                    p.mul(p.neg(sign), bin2),
                );
                emit(&[Op::P((a + b - t) as u32), Op::Beta, Op::P(t as u32)], c2);
            }
        }
        out
    }

    /// One Adem rewrite of the leftmost inadmissible pair.
    pub fn adem_rewrite_once(&self, m: &SteenrodMonomial) -> Result<SteenrodElement> {
        self.rewrite_once_with(m, PairChoice::Leftmost)
    }

    pub fn rewrite_once_with(&self, m: &SteenrodMonomial, choice: PairChoice) -> Result<SteenrodElement> {
        self.check_prime(m.prime)?;
        let pairs = m.inadmissible_pairs();
        let j = match choice {
            PairChoice::Leftmost => pairs.first(),
            PairChoice::Rightmost => pairs.last(),
        }
        .copied()
        .ok_or_else(|| Error::AlreadyAdmissible(m.to_string()))?;
        Ok(self.rewrite_pair(m, j))
    }

    /// Normal form of one monomial (memoized).
    pub fn normal_form(&self, m: &SteenrodMonomial) -> Arc<SteenrodElement> {
        if let Some(hit) = self.normal_forms.read().unwrap().get(m) {
            return hit.clone();
        }
        let pairs = m.inadmissible_pairs();
        let result = match pairs.first() {
            None => SteenrodElement::from(m.clone()),
            Some(&j) => {
                let once = self.rewrite_pair(m, j);
                let mut acc = SteenrodElement::zero(self.prime);
                for (t, c) in once.raw_terms() {
                    acc.add_scaled(&self.normal_form(t), c);
                }
                acc
            }
        };
        let result = Arc::new(result);
        self.normal_forms
            .write()
            .unwrap()
            .insert(m.clone(), result.clone());
        result
    }

    /// Rewrite to the admissible basis.
    pub fn normalize(&self, e: &SteenrodElement) -> SteenrodElement {
        assert_eq!(e.prime, self.prime, "prime mismatch in normalize");
        let mut acc = SteenrodElement::zero(self.prime);
        for (m, c) in e.raw_terms() {
            acc.add_scaled(&self.normal_form(m), c);
        }
        acc
    }

    /// Uncached breadth-first rewriting: every round rewrites one chosen
    /// inadmissible pair in every pending monomial and merges coefficients.
    pub fn normalize_by_rewriting(&self, e: &SteenrodElement, choice: PairChoice) -> SteenrodElement {
        let mut done = SteenrodElement::zero(self.prime);
        let mut pending = e.clone();
        while !pending.is_zero() {
            let mut next = SteenrodElement::zero(self.prime);
            for (m, c) in pending.raw_terms() {
                let pairs = m.inadmissible_pairs();
                let j = match choice {
                    PairChoice::Leftmost => pairs.first(),
                    PairChoice::Rightmost => pairs.last(),
                };
                match j {
                    None => done.add_term(m.clone(), c),
                    Some(&j) => next.add_scaled(&self.rewrite_pair(m, j), c),
                }
            }
            pending = next;
        }
        done
    }

    /// All admissible monomials of one degree, in monomial order.
    pub fn admissible_basis(&self, degree: u32) -> Arc<AdmissibleBasis> {
        if let Some(hit) = self.bases.read().unwrap().get(&degree) {
            return hit.clone();
        }
        let mut words = Vec::new();
        if self.prime.is_two() {
            enumerate_admissible_two(degree, degree, &mut Vec::new(), &mut words);
        } else {
            enumerate_admissible_odd(self.prime, degree, None, &mut Vec::new(), &mut words);
        }
        let mut monomials: Vec<SteenrodMonomial> = words
            .into_iter()
            .map(|w| SteenrodMonomial::from_word_unchecked(self.prime, w))
            .collect();
        monomials.sort();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let basis = Arc::new(AdmissibleBasis {
            degree,
            monomials,
            index,
        });
        self.bases.write().unwrap().insert(degree, basis.clone());
        basis
    }

    /// Whether `Sq^k` is outside the span of products of positive-degree
    /// elements.
    ///
    /// Every product `m_1 m_2` of positive-degree admissibles equals
    /// `Sq^{i} (m_1' m_2)` with `m_1 = Sq^i m_1'`, so the products
    /// `Sq^i a` with `a` admissible of degree `k - i > 0` already span the
    /// decomposables in degree k.
    pub fn is_indecomposable(&self, k: u32) -> Result<bool> {
        if !self.prime.is_two() {
            return Err(Error::RequiresTwo);
        }
        if k == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
        let target_basis = self.admissible_basis(k);
        let mut span = Echelon::new(self.prime, target_basis.len());
        for i in 1..k {
            let left = SteenrodElement::sq(i);
            for a in self.admissible_basis(k - i).monomials.iter() {
                let prod = self.normalize(&left.compose(&SteenrodElement::from(a.clone())));
                span.insert(&target_basis.coordinates(&prod));
            }
        }
        let target = target_basis.coordinates(&SteenrodElement::sq(k));
        Ok(!span.contains(&target))
    }

    /// `Sq^k = Sq^a ∘ Sq^b + sum_j Sq^{k-j} ∘ Sq^j`, read off the Adem
    /// relation for `Sq^a Sq^b` with `a` the lowest power of two in `k`.
    pub fn decompose_power(&self, k: u32) -> Result<AdemDecomposition> {
        if !self.prime.is_two() {
            return Err(Error::RequiresTwo);
        }
        if k == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
        if k.is_power_of_two() {
            return Err(Error::PowerOfTwo(k));
        }
        let a = 1u32 << k.trailing_zeros();
        let b = k - a;
        let rel = self.normalize(&SteenrodElement::squares(&[a, b]));
        let sq_k = SteenrodMonomial::squares(&[k]);
        if rel.coefficient(&sq_k).is_zero() {
            return Err(Error::Precondition(format!(
                "Adem relation for Sq^{a} Sq^{b} has no Sq^{k} term"
            )));
        }
        let mut grouped: BTreeMap<u32, SteenrodElement> = BTreeMap::new();
        grouped.insert(a, SteenrodElement::sq(b));
        for (m, c) in rel.raw_terms() {
            if *m == sq_k {
                continue;
            }
            let (lead, rest) = m.word.split_first().expect("positive degree");
            grouped
                .entry(*lead)
                .or_insert_with(|| SteenrodElement::zero(self.prime))
                .add_term(SteenrodMonomial::squares(rest), c);
        }
        let decomposition = AdemDecomposition {
            target_degree: k,
            summands: grouped.into_iter().filter(|(_, e)| !e.is_zero()).collect(),
        };
        debug_assert_eq!(
            self.normalize(&decomposition.recombine()),
            SteenrodElement::sq(k)
        );
        Ok(decomposition)
    }
}

fn odd_tokens_from_eps(suffix: &[u32]) -> impl Iterator<Item = Op> + '_ {
    // `suffix` is [e, s, e, s, ..., e]; same parity as a full word.
    odd_tokens(suffix)
}

fn enumerate_admissible_two(rem: u32, max_first: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rem == 0 {
        out.push(cur.clone());
        return;
    }
    // An admissible tail starting at most i/2 sums to less than i.
    let lo = rem.div_ceil(2).max(1);
    for i in lo..=rem.min(max_first) {
        if rem - i >= i && rem - i > 0 {
            continue;
        }
        cur.push(i);
        enumerate_admissible_two(rem - i, i / 2, cur, out);
        cur.pop();
    }
}

fn enumerate_admissible_odd(
    p: Prime,
    rem: u32,
    last_s: Option<u32>,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let q = p.value();
    let step = 2 * (q - 1);
    for eps in 0..=1u32 {
        if eps > rem {
            break;
        }
        let bound = match last_s {
            None => u32::MAX,
            Some(s) => (s - eps) / q,
        };
        cur.push(eps);
        let r = rem - eps;
        if r == 0 {
            out.push(cur.clone());
        }
        let mut s = 1;
        while s <= bound && s * step <= r {
            cur.push(s);
            enumerate_admissible_odd(p, r - s * step, Some(s), cur, out);
            cur.pop();
            s += 1;
        }
        cur.pop();
    }
}

/// Normal form in the admissible basis, using the shared algebra.
pub fn normalize(e: &SteenrodElement) -> SteenrodElement {
    algebra(e.prime()).normalize(e)
}

pub fn adem_rewrite_once(m: &SteenrodMonomial) -> Result<SteenrodElement> {
    algebra(m.prime()).adem_rewrite_once(m)
}

pub fn admissible_basis(degree: u32, prime: Prime) -> Vec<SteenrodMonomial> {
    algebra(prime).admissible_basis(degree).monomials.clone()
}

pub fn is_indecomposable(k: u32) -> Result<bool> {
    algebra(Prime::TWO).is_indecomposable(k)
}

pub fn decompose_power(k: u32) -> Result<AdemDecomposition> {
    algebra(Prime::TWO).decompose_power(k)
}

pub fn excess(m: &SteenrodMonomial) -> Result<u32> {
    m.excess()
}
