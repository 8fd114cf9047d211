//! Surface syntax for Steenrod expressions and ring polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := coeff factor* | factor+
//! factor := 'Sq' '^' nat | 'P' '^' nat | 'b' | '(' expr ')'
//! coeff  := nat
//!
//! poly    := pterm (('+' | '-') pterm)*
//! pterm   := coeff ['*'] pfactor ('*' pfactor)* | coeff | pfactor ('*' pfactor)*
//! pfactor := ident ['^' nat] | '(' poly ')' ['^' nat]
//! ```
//!
//! Juxtaposition is composition. A bare coefficient denotes a multiple of
//! the identity, so `0` and `1` parse.

use std::fmt;

use crate::fp::Prime;
use crate::ring::{Polynomial, RingPresentation};
use crate::steenrod::{Op, SteenrodElement};

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub span: Span,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Semantic => "error",
        };
        write!(f, "{kind} at line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl ParseError {
    fn new(kind: ParseErrorKind, src: &str, span: Span, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let (line, column) = line_col(src, span.start);
        ParseError {
            kind,
            message: message.into(),
            line,
            column,
            span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Shift the reported position, for text embedded in a larger document
    /// at the given line and column (both 1-based).
    pub fn relocate(mut self, line: usize, column: usize) -> ParseError {
        if self.line == 1 {
            self.column += column - 1;
        }
        self.line += line - 1;
        self
    }
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
    (line, column)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Sq,
    P,
    B,
    Ident(String),
    Nat(u64),
    Caret,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Sq => "`Sq`".into(),
            Tok::P => "`P`".into(),
            Tok::B => "`b`".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Caret => "`^`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

/// Steenrod mode turns `Sq`, `P` and `b` into keywords and rejects other
/// words; polynomial mode reads every word as an identifier.
fn lex(src: &str, steenrod: bool) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'^' => Some(Tok::Caret),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            i += 1;
            out.push((t, Span { start, end: i }));
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let span = Span { start, end: i };
            let n = src[start..i].parse::<u64>().map_err(|_| {
                ParseError::new(ParseErrorKind::Lexical, src, span, "number too large", &[])
            })?;
            out.push((Tok::Nat(n), span));
            continue;
        }
        if steenrod {
            if src[i..].starts_with("Sq") {
                i += 2;
                out.push((Tok::Sq, Span { start, end: i }));
                continue;
            }
            if c == b'P' {
                i += 1;
                out.push((Tok::P, Span { start, end: i }));
                continue;
            }
            if c == b'b' {
                i += 1;
                out.push((Tok::B, Span { start, end: i }));
                continue;
            }
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), Span { start, end: i }));
            continue;
        }
        let ch = src[i..].chars().next().unwrap();
        let span = Span {
            start,
            end: i + ch.len_utf8(),
        };
        let expected: &[&str] = if steenrod {
            &["`Sq`", "`P`", "`b`", "number", "`+`", "`-`", "`(`", "`)`"]
        } else {
            &["identifier", "number", "`+`", "`-`", "`*`", "`^`", "`(`", "`)`"]
        };
        return Err(ParseError::new(
            ParseErrorKind::Lexical,
            src,
            span,
            format!("unexpected character `{ch}`"),
            expected,
        ));
    }
    out.push((
        Tok::Eof,
        Span {
            start: src.len(),
            end: src.len(),
        },
    ));
    Ok(out)
}

struct Cursor<'a> {
    src: &'a str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::new(
            ParseErrorKind::Syntax,
            self.src,
            self.span(),
            format!("unexpected {}", self.peek().describe()),
            expected,
        )
    }

    fn semantic(&self, span: Span, message: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Semantic, self.src, span, message, &[])
    }

    /// `'^' nat`, with a dedicated message for negative exponents.
    fn exponent(&mut self) -> Result<(u64, Span), ParseError> {
        if *self.peek() != Tok::Caret {
            return Err(self.unexpected(&["`^`"]));
        }
        self.bump();
        match self.peek().clone() {
            Tok::Nat(n) => {
                let (_, s) = self.bump();
                Ok((n, s))
            }
            Tok::Minus => Err(self.semantic(self.span(), "negative exponent")),
            _ => Err(self.unexpected(&["number"])),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Sq { exponent: u64, span: Span },
    P { exponent: u64, span: Span },
    Beta { span: Span },
    Group { expr: SteenrodExpr, span: Span },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub sign: Sign,
    pub coefficient: Option<u64>,
    pub factors: Vec<Factor>,
    pub span: Span,
}

/// Parsed Steenrod expression, before choosing a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteenrodExpr {
    pub terms: Vec<Term>,
    pub span: Span,
}

const FACTOR_START: &[&str] = &["`Sq`", "`P`", "`b`", "`(`"];
const TERM_START: &[&str] = &["number", "`Sq`", "`P`", "`b`", "`(`"];

fn parse_sum(c: &mut Cursor) -> Result<SteenrodExpr, ParseError> {
    let start = c.span().start;
    let first = match c.peek() {
        Tok::Minus => {
            c.bump();
            Sign::Minus
        }
        Tok::Plus => {
            c.bump();
            Sign::Plus
        }
        _ => Sign::Plus,
    };
    let mut terms = vec![parse_term(c, first)?];
    loop {
        let sign = match c.peek() {
            Tok::Plus => Sign::Plus,
            Tok::Minus => Sign::Minus,
            _ => break,
        };
        c.bump();
        terms.push(parse_term(c, sign)?);
    }
    let end = terms.last().map_or(start, |t| t.span.end);
    Ok(SteenrodExpr {
        terms,
        span: Span { start, end },
    })
}

fn parse_term(c: &mut Cursor, sign: Sign) -> Result<Term, ParseError> {
    let start = c.span().start;
    let mut end = start;
    let mut coefficient = None;
    if let Tok::Nat(n) = *c.peek() {
        let (_, s) = c.bump();
        coefficient = Some(n);
        end = s.end;
    }
    let mut factors = Vec::new();
    loop {
        let span = c.span();
        let f = match c.peek() {
            Tok::Sq => {
                c.bump();
                let (exponent, s) = c.exponent()?;
                Factor::Sq {
                    exponent,
                    span: Span { start: span.start, end: s.end },
                }
            }
            Tok::P => {
                c.bump();
                let (exponent, s) = c.exponent()?;
                Factor::P {
                    exponent,
                    span: Span { start: span.start, end: s.end },
                }
            }
            Tok::B => {
                c.bump();
                Factor::Beta { span }
            }
            Tok::LParen => {
                c.bump();
                let expr = parse_sum(c)?;
                if *c.peek() != Tok::RParen {
                    return Err(c.unexpected(&["`)`", "`+`", "`-`", "`Sq`", "`P`", "`b`", "`(`"]));
                }
                let (_, close) = c.bump();
                Factor::Group {
                    expr,
                    span: Span { start: span.start, end: close.end },
                }
            }
            _ => break,
        };
        end = match &f {
            Factor::Sq { span, .. } | Factor::P { span, .. } | Factor::Beta { span } | Factor::Group { span, .. } => span.end,
        };
        factors.push(f);
    }
    if coefficient.is_none() && factors.is_empty() {
        return Err(c.unexpected(TERM_START));
    }
    Ok(Term {
        sign,
        coefficient,
        factors,
        span: Span { start, end },
    })
}

/// Parse an expression without interpreting it at a prime.
pub fn parse_expr(src: &str) -> Result<SteenrodExpr, ParseError> {
    let toks = lex(src, true)?;
    let mut c = Cursor { src, toks, pos: 0 };
    let e = parse_sum(&mut c)?;
    if *c.peek() != Tok::Eof {
        let mut expected = vec!["`+`", "`-`", "end of input"];
        expected.extend_from_slice(FACTOR_START);
        return Err(c.unexpected(&expected));
    }
    Ok(e)
}

impl SteenrodExpr {
    /// Interpret at a prime: `Sq` only at 2, `P` and `b` only at odd primes,
    /// coefficients reduced mod p, `-` meaning multiplication by p - 1.
    pub fn evaluate(&self, src: &str, prime: Prime) -> Result<SteenrodElement, ParseError> {
        let mut acc = SteenrodElement::zero(prime);
        for t in &self.terms {
            let mut v = SteenrodElement::one(prime);
            for f in &t.factors {
                let fv = match f {
                    Factor::Sq { exponent, span } => {
                        if !prime.is_two() {
                            return Err(semantic(src, *span, format!("Sq is not defined at p = {prime}; use P and b")));
                        }
                        let e = exponent_u32(src, *exponent, *span)?;
                        SteenrodElement::sq(e)
                    }
                    Factor::P { exponent, span } => {
                        if prime.is_two() {
                            return Err(semantic(src, *span, "P is not defined at p = 2; use Sq"));
                        }
                        let e = exponent_u32(src, *exponent, *span)?;
                        if e.checked_mul(2 * (prime.value() - 1)).is_none() {
                            return Err(semantic(src, *span, "exponent too large"));
                        }
                        SteenrodElement::from_ops(prime, &[Op::P(e)]).map_err(|e| semantic(src, *span, e.to_string()))?
                    }
                    Factor::Beta { span } => {
                        if prime.is_two() {
                            return Err(semantic(src, *span, "b is not defined at p = 2; use Sq^1"));
                        }
                        SteenrodElement::from_ops(prime, &[Op::Beta]).map_err(|e| semantic(src, *span, e.to_string()))?
                    }
                    Factor::Group { expr, .. } => expr.evaluate(src, prime)?,
                };
                v = v.compose(&fv);
            }
            let mut c = t.coefficient.map_or(1, |n| (n % prime.value() as u64) as u32);
            if t.sign == Sign::Minus {
                c = prime.neg(c);
            }
            acc.add_scaled(&v, c);
        }
        Ok(acc)
    }
}

fn exponent_u32(src: &str, e: u64, span: Span) -> Result<u32, ParseError> {
    u32::try_from(e)
        .ok()
        .filter(|&e| e <= 1 << 24)
        .ok_or_else(|| semantic(src, span, "exponent too large"))
}

fn semantic(src: &str, span: Span, message: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::Semantic, src, span, message, &[])
}

impl fmt::Display for SteenrodExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.sign) {
                (0, Sign::Minus) => f.write_str("-")?,
                (0, Sign::Plus) => {}
                (_, Sign::Plus) => f.write_str(" + ")?,
                (_, Sign::Minus) => f.write_str(" - ")?,
            }
            let mut parts = Vec::new();
            if let Some(c) = t.coefficient {
                parts.push(c.to_string());
            }
            for fac in &t.factors {
                parts.push(match fac {
                    Factor::Sq { exponent, .. } => format!("Sq^{exponent}"),
                    Factor::P { exponent, .. } => format!("P^{exponent}"),
                    Factor::Beta { .. } => "b".into(),
                    Factor::Group { expr, .. } => format!("({expr})"),
                });
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

/// Parse and interpret an expression at a prime.
pub fn parse_element(src: &str, prime: Prime) -> Result<SteenrodElement, ParseError> {
    parse_expr(src)?.evaluate(src, prime)
}

/// Parse a single operation: `Sq^i`, `P^s` or `b`.
pub fn parse_op(src: &str, prime: Prime) -> Result<Op, ParseError> {
    let e = parse_expr(src)?;
    let whole = e.span;
    let bad = || semantic(src, whole, "expected a single operation `Sq^i`, `P^s` or `b`");
    let [t] = e.terms.as_slice() else { return Err(bad()) };
    if t.coefficient.is_some() || t.sign == Sign::Minus || t.factors.len() != 1 {
        return Err(bad());
    }
    // Reuse the prime checks of `evaluate`.
    e.evaluate(src, prime)?;
    Ok(match &t.factors[0] {
        Factor::Sq { exponent, .. } => Op::Sq(*exponent as u32),
        Factor::P { exponent, .. } => Op::P(*exponent as u32),
        Factor::Beta { .. } => Op::Beta,
        Factor::Group { .. } => return Err(bad()),
    })
}

/// Parse a polynomial in the generators of a presentation. Products follow
/// the graded-commutative sign rule, and exterior squares vanish.
pub fn parse_polynomial(src: &str, pres: &RingPresentation) -> Result<Polynomial, ParseError> {
    let toks = lex(src, false)?;
    let mut c = Cursor { src, toks, pos: 0 };
    let poly = parse_poly_sum(&mut c, pres)?;
    if *c.peek() != Tok::Eof {
        return Err(c.unexpected(&["`+`", "`-`", "`*`", "end of input"]));
    }
    Ok(poly)
}

fn product(pres: &RingPresentation, a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.mul_with(b, |x, y| pres.monomial_product(x, y))
}

fn parse_poly_sum(c: &mut Cursor, pres: &RingPresentation) -> Result<Polynomial, ParseError> {
    let p = pres.prime;
    let mut acc = parse_poly_term(c, pres)?;
    loop {
        let neg = match c.peek() {
            Tok::Plus => false,
            Tok::Minus => true,
            _ => break,
        };
        c.bump();
        let t = parse_poly_term(c, pres)?;
        acc = acc.add(&if neg { t.scale(p.value() - 1) } else { t });
    }
    Ok(acc)
}

fn parse_poly_term(c: &mut Cursor, pres: &RingPresentation) -> Result<Polynomial, ParseError> {
    let p = pres.prime;
    let n = pres.generators.len();
    let one = Polynomial::monomial(p, vec![0; n]);
    let mut acc = one.clone();
    let mut need_factor = true;
    if let Tok::Nat(k) = *c.peek() {
        c.bump();
        acc = one.scale((k % p.value() as u64) as u32);
        need_factor = false;
        match c.peek() {
            Tok::Star => {
                c.bump();
                need_factor = true;
            }
            Tok::Ident(_) | Tok::LParen => need_factor = true,
            _ => {}
        }
    }
    if need_factor {
        acc = product(pres, &acc, &parse_poly_factor(c, pres)?);
        while *c.peek() == Tok::Star {
            c.bump();
            acc = product(pres, &acc, &parse_poly_factor(c, pres)?);
        }
    }
    Ok(acc)
}

fn parse_poly_factor(c: &mut Cursor, pres: &RingPresentation) -> Result<Polynomial, ParseError> {
    let p = pres.prime;
    let n = pres.generators.len();
    let base = match c.peek().clone() {
        Tok::Ident(name) => {
            let (_, span) = c.bump();
            let gi = pres
                .generator_index(&name)
                .ok_or_else(|| c.semantic(span, format!("unknown generator `{name}`")))?;
            let mut e = vec![0; n];
            e[gi] = 1;
            Polynomial::monomial(p, e)
        }
        Tok::LParen => {
            c.bump();
            let inner = parse_poly_sum(c, pres)?;
            if *c.peek() != Tok::RParen {
                return Err(c.unexpected(&["`)`", "`+`", "`-`", "`*`"]));
            }
            c.bump();
            inner
        }
        _ => return Err(c.unexpected(&["identifier", "`(`", "number"])),
    };
    if *c.peek() != Tok::Caret {
        return Ok(base);
    }
    let (k, span) = c.exponent()?;
    if k > 4096 {
        return Err(c.semantic(span, "exponent too large"));
    }
    let mut acc = Polynomial::monomial(p, vec![0; n]);
    for _ in 0..k {
        acc = product(pres, &acc, &base);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Generator;

    fn two() -> Prime {
        Prime::TWO
    }

    fn three() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn two_term_expression() {
        let e = parse_expr("Sq^4 Sq^8 + Sq^12").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0].factors.len(), 2);
        let v = e.evaluate("Sq^4 Sq^8 + Sq^12", two()).unwrap();
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn bockstein_interleaved_word() {
        let v = parse_element("P^1 b P^2", three()).unwrap();
        let m = v.as_monomial().unwrap();
        assert_eq!(m.word(), &[0, 1, 1, 2, 0]);
        assert_eq!(v.to_string(), "P^1 b P^2");
    }

    #[test]
    fn square_zero_is_identity() {
        let v = parse_element("Sq^0", two()).unwrap();
        assert_eq!(v, SteenrodElement::one(two()));
        assert_eq!(v.to_string(), "1");
        assert_eq!(parse_element("Sq^0 Sq^3", two()).unwrap(), SteenrodElement::sq(3));
    }

    #[test]
    fn no_spaces_needed() {
        assert_eq!(
            parse_element("Sq^4Sq^8", two()).unwrap(),
            parse_element("Sq^4 Sq^8", two()).unwrap()
        );
        assert_eq!(parse_element("bP^1", three()).unwrap(), parse_element("b P^1", three()).unwrap());
    }

    #[test]
    fn coefficients_and_signs() {
        let v = parse_element("-P^1 + 5 P^1", three()).unwrap();
        // -1 + 5 = 4 = 1 mod 3
        assert_eq!(v, parse_element("P^1", three()).unwrap());
        assert!(parse_element("2 Sq^3", two()).unwrap().is_zero());
        assert!(parse_element("0", two()).unwrap().is_zero());
        assert_eq!(parse_element("1", three()).unwrap(), SteenrodElement::one(three()));
        assert!(parse_element("b b", three()).unwrap().is_zero());
    }

    #[test]
    fn groups_distribute() {
        let a = parse_element("(Sq^1 + Sq^2) Sq^2", two()).unwrap();
        let b = parse_element("Sq^1 Sq^2 + Sq^2 Sq^2", two()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_element("Sq^2 + P^1", two()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Semantic);
        assert_eq!((e.line, e.column), (1, 8));

        let e = parse_element("Sq^2 Sq^-1", two()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Semantic);
        assert!(e.message.contains("negative"));

        let e = parse_expr("Sq^2 +").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        assert!(e.expected.contains(&"`Sq`".to_string()));

        let e = parse_expr("Sq^2 # Sq^1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Lexical);
        assert_eq!(e.column, 6);

        let e = parse_expr("Sq 2").unwrap_err();
        assert_eq!(e.expected, vec!["`^`".to_string()]);

        let e = parse_expr("Sq^1\n  + )").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["Sq^3 Sq^1 + Sq^6", "2 P^2 - b P^1 b", "(Sq^1 + 1) Sq^2", "0"] {
            let e = parse_expr(s).unwrap();
            let printed = e.to_string();
            let again = parse_expr(&printed).unwrap();
            assert_eq!(again.to_string(), printed);
        }
    }

    fn pres() -> RingPresentation {
        RingPresentation::new(
            three(),
            vec![Generator::new("e", 1), Generator::new("f", 1), Generator::new("u", 2)],
            vec![],
            10,
        )
        .unwrap()
    }

    #[test]
    fn polynomials() {
        let p = pres();
        let a = parse_polynomial("e*f + 2*u", &p).unwrap();
        let b = parse_polynomial("2 u - f*e", &p).unwrap();
        // f e = -e f, so -f*e = e*f
        assert_eq!(a, b);
        assert!(parse_polynomial("e^2", &p).unwrap().is_zero());
        assert_eq!(
            parse_polynomial("(e + u)^2", &p).unwrap(),
            parse_polynomial("e*u + u*e + u^2", &p).unwrap()
        );
        let err = parse_polynomial("e*z", &p).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Semantic);
        assert_eq!(err.column, 3);
    }

    #[test]
    fn single_operations() {
        assert_eq!(parse_op("Sq^4", two()).unwrap(), Op::Sq(4));
        assert_eq!(parse_op("b", three()).unwrap(), Op::Beta);
        assert_eq!(parse_op("P^2", three()).unwrap(), Op::P(2));
        assert!(parse_op("Sq^4 Sq^2", two()).is_err());
        assert!(parse_op("Sq^4", three()).is_err());
    }
}
