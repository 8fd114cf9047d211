//! Finitely presented graded-commutative F_p-algebras, truncated at a cap.
//!
//! Each degree is a finite-dimensional problem: the monomials of degree d
//! span the free part, the products `relation * monomial` of degree d span
//! the relation ideal, and row reduction picks out standard monomials as a
//! basis of the quotient.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::linalg::Echelon;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Generator {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// A polynomial in the generators of some presentation, keyed by exponent
/// vectors. Coefficients are reduced mod p and never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    prime: Prime,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl Polynomial {
    pub fn zero(prime: Prime) -> Polynomial {
        Polynomial {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(prime: Prime, exponents: Vec<u32>) -> Polynomial {
        let mut p = Polynomial::zero(prime);
        p.add_term(exponents, 1);
        p
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coef: u32) {
        let p = self.prime;
        let c = coef % p.value();
        if c == 0 {
            return;
        }
        let e = self.terms.entry(exponents).or_insert(0);
        *e = p.add(*e, c);
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32)> + '_ {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product of polynomials, without graded-commutativity signs. Only used
    /// when building polynomials term by term from parsed text, where the
    /// caller supplies a sign rule.
    pub(crate) fn mul_with(&self, other: &Polynomial, rule: impl Fn(&[u32], &[u32]) -> Option<(Vec<u32>, bool)>) -> Polynomial {
        let p = self.prime;
        let mut out = Polynomial::zero(p);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if let Some((m, neg)) = rule(a, b) {
                    let c = p.mul(ca, cb);
                    out.add_term(m, if neg { p.neg(c) } else { c });
                }
            }
        }
        out
    }

    pub(crate) fn scale(&self, c: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.prime);
        for (m, v) in self.terms() {
            out.add_term(m.to_vec(), self.prime.mul(v, c));
        }
        out
    }

    pub(crate) fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, v) in other.terms() {
            out.add_term(m.to_vec(), v);
        }
        out
    }
}

/// Generators, relations and a degree cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub prime: Prime,
    pub generators: Vec<Generator>,
    pub relations: Vec<Polynomial>,
    pub cap: u32,
}

impl RingPresentation {
    pub fn new(prime: Prime, generators: Vec<Generator>, relations: Vec<Polynomial>, cap: u32) -> Result<RingPresentation> {
        let mut seen = HashSet::new();
        for g in &generators {
            if g.degree == 0 {
                return Err(Error::InvalidPresentation(format!(
                    "generator `{}` has degree 0",
                    g.name
                )));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate generator `{}`",
                    g.name
                )));
            }
        }
        if cap == 0 {
            return Err(Error::InvalidPresentation("cap must be positive".into()));
        }
        for (i, r) in relations.iter().enumerate() {
            if r.prime != prime {
                return Err(Error::PrimeMismatch {
                    expected: prime.value(),
                    found: r.prime.value(),
                });
            }
            if r.terms().any(|(m, _)| m.len() != generators.len()) {
                return Err(Error::InvalidPresentation(format!(
                    "relation {i} has the wrong number of exponents"
                )));
            }
        }
        Ok(RingPresentation {
            prime,
            generators,
            relations,
            cap,
        })
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn monomial_degree(&self, exponents: &[u32]) -> u32 {
        exponents
            .iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    /// Whether generator `i` is exterior (odd degree at an odd prime).
    pub fn is_exterior(&self, i: usize) -> bool {
        !self.prime.is_two() && self.generators[i].degree % 2 == 1
    }

    /// Graded-commutative product of two monomials: the exponent vector and
    /// whether a sign flip occurred. `None` when an exterior generator would
    /// be squared.
    pub fn monomial_product(&self, a: &[u32], b: &[u32]) -> Option<(Vec<u32>, bool)> {
        let mut out = Vec::with_capacity(a.len());
        for (i, (x, y)) in a.iter().zip(b).enumerate() {
            if self.is_exterior(i) && x + y > 1 {
                return None;
            }
            out.push(x + y);
        }
        if self.prime.is_two() {
            return Some((out, false));
        }
        // Moving each exterior factor of b left past the exterior factors of
        // a with a larger index.
        let mut flips = 0u32;
        let mut later_in_a = 0u32;
        for i in (0..a.len()).rev() {
            if self.is_exterior(i) {
                if b[i] == 1 {
                    flips += later_in_a;
                }
                if a[i] == 1 {
                    later_in_a += 1;
                }
            }
        }
        Some((out, flips % 2 == 1))
    }

    /// Degree of a homogeneous polynomial. Exterior squares are ignored
    /// (they are zero). `Ok(None)` for the zero polynomial.
    pub fn polynomial_degree(&self, poly: &Polynomial) -> Result<Option<u32>> {
        let mut degree = None;
        for (m, _) in poly.terms() {
            if (0..m.len()).any(|i| self.is_exterior(i) && m[i] > 1) {
                continue;
            }
            let d = self.monomial_degree(m);
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(degree)
    }
}

#[derive(Clone, Debug)]
enum Reduction {
    Standard(u32),
    Combination(Vec<(u32, u32)>),
}

#[derive(Clone, Debug, Default)]
struct DegreeData {
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    reductions: Vec<Reduction>,
    /// Monomial index of each basis element.
    basis: Vec<u32>,
}

/// A homogeneous element, stored as sparse coordinates in the standard
/// monomial basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    prime: Prime,
    degree: u32,
    terms: Vec<(u32, u32)>,
}

impl RingElement {
    pub fn zero(prime: Prime, degree: u32) -> RingElement {
        RingElement {
            prime,
            degree,
            terms: Vec::new(),
        }
    }

    pub(crate) fn from_dense(prime: Prime, degree: u32, coords: &[u32]) -> RingElement {
        RingElement {
            prime,
            degree,
            terms: coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as u32, c))
                .collect(),
        }
    }

    pub(crate) fn from_sorted_terms(prime: Prime, degree: u32, terms: Vec<(u32, u32)>) -> RingElement {
        RingElement {
            prime,
            degree,
            terms,
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(basis index, coefficient)` pairs, sorted by index.
    pub fn terms(&self) -> &[(u32, u32)] {
        &self.terms
    }

    pub fn to_dense(&self, dim: usize) -> Vec<u32> {
        let mut v = vec![0u32; dim];
        for &(i, c) in &self.terms {
            v[i as usize] = c;
        }
        v
    }

    pub fn scale(&self, c: u32) -> RingElement {
        let p = self.prime;
        let c = c % p.value();
        RingElement {
            prime: p,
            degree: self.degree,
            terms: if c == 0 {
                Vec::new()
            } else {
                self.terms.iter().map(|&(i, v)| (i, p.mul(v, c))).collect()
            },
        }
    }

    /// `self + c * other`; both must have the same degree.
    pub fn add_scaled(&self, other: &RingElement, c: u32) -> RingElement {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        let p = self.prime;
        let c = c % p.value();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let a = self.terms.get(i);
            let b = other.terms.get(j);
            match (a, b) {
                (Some(&(ia, va)), Some(&(ib, vb))) if ia == ib => {
                    let v = p.add(va, p.mul(c, vb));
                    if v != 0 {
                        out.push((ia, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(ia, va)), Some(&(ib, _))) if ia < ib => {
                    out.push((ia, va));
                    i += 1;
                }
                (Some(&(ia, va)), None) => {
                    out.push((ia, va));
                    i += 1;
                }
                (_, Some(&(ib, vb))) => {
                    out.push((ib, p.mul(c, vb)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        RingElement {
            prime: p,
            degree: self.degree,
            terms: out,
        }
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.add_scaled(rhs, 1)
    }
}

impl std::ops::Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.add_scaled(rhs, self.prime.value() - 1)
    }
}

/// Degreewise bases of a presentation up to its cap, with the data needed to
/// reduce any monomial to standard coordinates.
#[derive(Clone, Debug)]
pub struct RingBasis {
    presentation: RingPresentation,
    degrees: Vec<DegreeData>,
}

/// Build the degreewise bases of the quotient ring.
pub fn compute_basis(pres: &RingPresentation) -> Result<RingBasis> {
    let cap = pres.cap;
    let p = pres.prime;
    let mut rel_degrees = Vec::with_capacity(pres.relations.len());
    for (index, r) in pres.relations.iter().enumerate() {
        match pres.polynomial_degree(r) {
            Err(_) => return Err(Error::InhomogeneousRelation { index }),
            Ok(None) => rel_degrees.push(None),
            Ok(Some(0)) => return Err(Error::DegreeZeroRelation { index }),
            Ok(Some(d)) if d > cap => {
                return Err(Error::RelationAboveCap {
                    index,
                    degree: d,
                    cap,
                })
            }
            Ok(Some(d)) => rel_degrees.push(Some(d)),
        }
    }

    let mut degrees: Vec<DegreeData> = vec![DegreeData::default(); cap as usize + 1];
    let n = pres.generators.len();
    let mut cur = vec![0u32; n];
    enumerate_monomials(pres, 0, 0, &mut cur, &mut degrees);
    for data in degrees.iter_mut() {
        // Larger monomials (lexicographically) become pivots first.
        data.monomials.sort_by(|a, b| b.cmp(a));
        data.index = data
            .monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
    }

    for d in 0..=cap as usize {
        let ncols = degrees[d].monomials.len();
        let mut ech = Echelon::new(p, ncols);
        for (r, rd) in pres.relations.iter().zip(&rel_degrees) {
            let Some(rd) = *rd else { continue };
            if rd as usize > d {
                continue;
            }
            let cofactors = degrees[d - rd as usize].monomials.clone();
            for m in cofactors {
                let mut row = vec![0u32; ncols];
                let mut nonzero = false;
                for (rm, c) in r.terms() {
                    if let Some((prod, neg)) = pres.monomial_product(rm, &m) {
                        let idx = degrees[d].index[&prod] as usize;
                        let c = if neg { p.neg(c) } else { c };
                        row[idx] = p.add(row[idx], c);
                        nonzero = true;
                    }
                }
                if nonzero {
                    ech.insert(&row);
                }
            }
        }
        let pivots: HashSet<usize> = ech.pivots().iter().copied().collect();
        let data = &mut degrees[d];
        let mut basis_pos = vec![u32::MAX; ncols];
        for (col, pos) in basis_pos.iter_mut().enumerate() {
            if !pivots.contains(&col) {
                *pos = data.basis.len() as u32;
                data.basis.push(col as u32);
            }
        }
        let mut reductions: Vec<Reduction> = (0..ncols)
            .map(|c| Reduction::Standard(basis_pos[c]))
            .collect();
        for (row, &pc) in ech.rows().iter().zip(ech.pivots()) {
            let combo = row
                .iter()
                .enumerate()
                .filter(|&(j, &v)| j != pc && v != 0)
                .map(|(j, &v)| (basis_pos[j], p.neg(v)))
                .collect::<Vec<_>>();
            let mut combo = combo;
            combo.sort_unstable();
            reductions[pc] = Reduction::Combination(combo);
        }
        data.reductions = reductions;
    }

    if degrees[0].basis.len() != 1 {
        return Err(Error::InvalidPresentation(
            "degree 0 must be spanned by 1".into(),
        ));
    }
    Ok(RingBasis {
        presentation: pres.clone(),
        degrees,
    })
}

fn enumerate_monomials(pres: &RingPresentation, i: usize, deg: u32, cur: &mut Vec<u32>, out: &mut [DegreeData]) {
    if i == cur.len() {
        out[deg as usize].monomials.push(cur.clone());
        return;
    }
    let gd = pres.generators[i].degree;
    let max_e = if pres.is_exterior(i) { 1 } else { u32::MAX };
    let mut e = 0;
    while e <= max_e && deg + e * gd <= pres.cap {
        cur[i] = e;
        enumerate_monomials(pres, i + 1, deg + e * gd, cur, out);
        e += 1;
    }
    cur[i] = 0;
}

impl RingBasis {
    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn prime(&self) -> Prime {
        self.presentation.prime
    }

    pub fn cap(&self) -> u32 {
        self.presentation.cap
    }

    pub fn generators(&self) -> &[Generator] {
        &self.presentation.generators
    }

    /// Dimension of the degree-d group; zero above the cap.
    pub fn dim(&self, d: u32) -> usize {
        self.degrees.get(d as usize).map_or(0, |x| x.basis.len())
    }

    /// Exponent vectors of the standard monomials in degree d.
    pub fn basis_monomials(&self, d: u32) -> Vec<&[u32]> {
        let data = &self.degrees[d as usize];
        data.basis
            .iter()
            .map(|&i| data.monomials[i as usize].as_slice())
            .collect()
    }

    pub fn basis_monomial(&self, d: u32, i: usize) -> &[u32] {
        let data = &self.degrees[d as usize];
        &data.monomials[data.basis[i] as usize]
    }

    pub fn basis_element(&self, d: u32, i: usize) -> RingElement {
        RingElement {
            prime: self.prime(),
            degree: d,
            terms: vec![(i as u32, 1)],
        }
    }

    pub fn basis_elements(&self, d: u32) -> Vec<RingElement> {
        (0..self.dim(d)).map(|i| self.basis_element(d, i)).collect()
    }

    pub fn one(&self) -> RingElement {
        self.basis_element(0, 0)
    }

    pub fn zero(&self, d: u32) -> RingElement {
        RingElement::zero(self.prime(), d)
    }

    pub fn element_from_coords(&self, d: u32, coords: &[u32]) -> RingElement {
        RingElement::from_dense(self.prime(), d, coords)
    }

    pub fn coords(&self, e: &RingElement) -> Vec<u32> {
        e.to_dense(self.dim(e.degree))
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.cap() {
            Err(Error::DegreeOverflow {
                degree: d,
                cap: self.cap(),
            })
        } else {
            Ok(())
        }
    }

    /// Reduced element represented by a monomial.
    pub fn monomial(&self, exponents: &[u32]) -> Result<RingElement> {
        let pres = &self.presentation;
        let d = pres.monomial_degree(exponents);
        self.check_degree(d)?;
        if (0..exponents.len()).any(|i| pres.is_exterior(i) && exponents[i] > 1) {
            return Ok(self.zero(d));
        }
        let data = &self.degrees[d as usize];
        let idx = data.index[exponents] as usize;
        Ok(self.reduce_index(d, idx, 1))
    }

    fn reduce_index(&self, d: u32, idx: usize, coef: u32) -> RingElement {
        let p = self.prime();
        match &self.degrees[d as usize].reductions[idx] {
            Reduction::Standard(b) => RingElement::from_sorted_terms(p, d, vec![(*b, coef % p.value())]),
            Reduction::Combination(c) => RingElement::from_sorted_terms(
                p,
                d,
                c.iter()
                    .map(|&(b, v)| (b, p.mul(v, coef)))
                    .filter(|&(_, v)| v != 0)
                    .collect(),
            ),
        }
    }

    pub fn generator(&self, name: &str) -> Result<RingElement> {
        let i = self
            .presentation
            .generator_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let mut e = vec![0u32; self.generators().len()];
        e[i] = 1;
        self.monomial(&e)
    }

    /// Reduce a homogeneous polynomial.
    pub fn polynomial(&self, poly: &Polynomial) -> Result<RingElement> {
        let d = self.presentation.polynomial_degree(poly)?.unwrap_or(0);
        self.polynomial_in_degree(poly, d)
    }

    /// Like `polynomial`, but the zero polynomial gets degree `d`.
    pub fn polynomial_in_degree(&self, poly: &Polynomial, d: u32) -> Result<RingElement> {
        self.check_degree(d)?;
        let mut acc = self.zero(d);
        for (m, c) in poly.terms() {
            let e = self.monomial(m)?;
            if e.degree() != d {
                return Err(Error::NotHomogeneous);
            }
            acc = acc.add_scaled(&e, c);
        }
        Ok(acc)
    }

    /// Graded-commutative product, reduced.
    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let d = a.degree + b.degree;
        self.check_degree(d)?;
        let p = self.prime();
        if a.is_zero() || b.is_zero() {
            return Ok(self.zero(d));
        }
        let target = &self.degrees[d as usize];
        let mut acc: HashMap<u32, u32> = HashMap::new();
        for &(i, ca) in &a.terms {
            let ma = self.basis_monomial(a.degree, i as usize);
            for &(j, cb) in &b.terms {
                let mb = self.basis_monomial(b.degree, j as usize);
                let Some((prod, neg)) = self.presentation.monomial_product(ma, mb) else {
                    continue;
                };
                let mut c = p.mul(ca, cb);
                if neg {
                    c = p.neg(c);
                }
                let idx = target.index[&prod] as usize;
                match &target.reductions[idx] {
                    Reduction::Standard(s) => {
                        let e = acc.entry(*s).or_insert(0);
                        *e = p.add(*e, c);
                    }
                    Reduction::Combination(comb) => {
                        for &(s, v) in comb {
                            let e = acc.entry(s).or_insert(0);
                            *e = p.add(*e, p.mul(v, c));
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(u32, u32)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        terms.sort_unstable();
        Ok(RingElement::from_sorted_terms(p, d, terms))
    }

    pub fn power(&self, x: &RingElement, n: u32) -> Result<RingElement> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// Matrix of `y -> x * y` from degree i to degree i + deg x, as a list of
    /// column vectors (one per basis element of degree i).
    pub fn multiplication_columns(&self, x: &RingElement, i: u32) -> Result<Vec<Vec<u32>>> {
        let target = i + x.degree;
        self.check_degree(target)?;
        (0..self.dim(i))
            .map(|j| {
                let prod = self.multiply(x, &self.basis_element(i, j))?;
                Ok(prod.to_dense(self.dim(target)))
            })
            .collect()
    }

    /// The unique `y'` with `x * y' = y`, if one exists and is unique.
    pub fn divide(&self, y: &RingElement, x: &RingElement) -> Result<Option<RingElement>> {
        if y.degree < x.degree {
            return Ok(None);
        }
        let i = y.degree - x.degree;
        let cols = self.multiplication_columns(x, i)?;
        let target = self.coords(y);
        let rank = crate::linalg::rank(self.prime(), target.len(), &cols);
        if rank != cols.len() {
            return Ok(None);
        }
        Ok(crate::linalg::solve(self.prime(), &cols, &target).map(|c| self.element_from_coords(i, &c)))
    }

    fn format_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(self.generators())
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| {
                if *e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Render as a polynomial in the generators, e.g. `x*y4 + 2*y8^2`.
    pub fn format(&self, e: &RingElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.terms
            .iter()
            .map(|&(i, c)| {
                let m = self.format_monomial(self.basis_monomial(e.degree, i as usize));
                if c == 1 {
                    m
                } else if m == "1" {
                    c.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn display<'a>(&'a self, e: &'a RingElement) -> impl fmt::Display + 'a {
        struct D<'a>(&'a RingBasis, &'a RingElement);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(prime: Prime, e: &[u32]) -> Polynomial {
        Polynomial::monomial(prime, e.to_vec())
    }

    fn poly_x(deg: u32, cap: u32) -> RingBasis {
        let pres = RingPresentation::new(Prime::TWO, vec![Generator::new("x", deg)], vec![], cap).unwrap();
        compute_basis(&pres).unwrap()
    }

    fn exterior_times_poly() -> RingBasis {
        let two = Prime::TWO;
        let pres = RingPresentation::new(
            two,
            vec![Generator::new("t", 1), Generator::new("u", 2)],
            vec![mono(two, &[2, 0])],
            12,
        )
        .unwrap();
        compute_basis(&pres).unwrap()
    }

    #[test]
    fn polynomial_ring_basis() {
        let r = poly_x(4, 20);
        for d in 0..=20 {
            assert_eq!(r.dim(d), usize::from(d % 4 == 0), "degree {d}");
        }
        assert_eq!(r.basis_monomials(12), vec![&[3u32][..]]);
    }

    #[test]
    fn exterior_polynomial_basis() {
        let r = exterior_times_poly();
        for d in 0..=12 {
            assert_eq!(r.dim(d), 1, "degree {d}");
        }
        let t = r.generator("t").unwrap();
        assert!(r.multiply(&t, &t).unwrap().is_zero());
        let e = r.basis_element(5, 0);
        assert_eq!(r.format(&e), "t*u^2");
        assert_eq!(r.multiply(&r.one(), &e).unwrap(), e);
    }

    #[test]
    fn degree_overflow_is_an_error() {
        let r = poly_x(4, 20);
        let x = r.generator("x").unwrap();
        let x5 = r.power(&x, 5).unwrap();
        assert!(matches!(
            r.multiply(&x5, &x),
            Err(Error::DegreeOverflow { degree: 24, cap: 20 })
        ));
    }

    #[test]
    fn presentation_errors() {
        let two = Prime::TWO;
        let gens = vec![Generator::new("a", 2), Generator::new("b", 3)];
        let mut inhomog = mono(two, &[1, 0]);
        inhomog.add_term(vec![0, 1], 1);
        let pres = RingPresentation::new(two, gens.clone(), vec![inhomog], 10).unwrap();
        assert_eq!(compute_basis(&pres).unwrap_err(), Error::InhomogeneousRelation { index: 0 });

        let pres = RingPresentation::new(two, gens.clone(), vec![mono(two, &[0, 0])], 10).unwrap();
        assert_eq!(compute_basis(&pres).unwrap_err(), Error::DegreeZeroRelation { index: 0 });

        let pres = RingPresentation::new(two, gens.clone(), vec![mono(two, &[0, 4])], 10).unwrap();
        assert!(matches!(compute_basis(&pres), Err(Error::RelationAboveCap { .. })));

        assert!(RingPresentation::new(two, vec![Generator::new("a", 2), Generator::new("a", 4)], vec![], 8).is_err());
        assert!(RingPresentation::new(two, vec![Generator::new("a", 0)], vec![], 8).is_err());
    }

    #[test]
    fn odd_prime_exterior_signs() {
        let p3 = Prime::new(3).unwrap();
        let pres = RingPresentation::new(
            p3,
            vec![Generator::new("e1", 1), Generator::new("e2", 1), Generator::new("t", 2)],
            vec![],
            6,
        )
        .unwrap();
        let r = compute_basis(&pres).unwrap();
        let e1 = r.generator("e1").unwrap();
        let e2 = r.generator("e2").unwrap();
        let ab = r.multiply(&e1, &e2).unwrap();
        let ba = r.multiply(&e2, &e1).unwrap();
        assert_eq!(ab, ba.scale(2));
        assert!(r.multiply(&e1, &e1).unwrap().is_zero());
        // dims: 1, 2, 2 (t, e1 e2), 2, 2, ...
        assert_eq!(r.dim(0), 1);
        assert_eq!(r.dim(1), 2);
        assert_eq!(r.dim(2), 2);
        assert_eq!(r.dim(3), 2);
    }

    #[test]
    fn relation_with_two_terms_reduces() {
        // F_2[a, b] / (a^2 + b), deg a = 1, deg b = 2: every degree is 1-dim.
        let two = Prime::TWO;
        let mut rel = mono(two, &[2, 0]);
        rel.add_term(vec![0, 1], 1);
        let pres = RingPresentation::new(two, vec![Generator::new("a", 1), Generator::new("b", 2)], vec![rel], 10).unwrap();
        let r = compute_basis(&pres).unwrap();
        for d in 0..=10 {
            assert_eq!(r.dim(d), 1);
        }
        let a = r.generator("a").unwrap();
        let b = r.generator("b").unwrap();
        assert_eq!(r.multiply(&a, &a).unwrap(), b);
    }
}
