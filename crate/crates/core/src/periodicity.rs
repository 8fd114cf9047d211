//! Periodicity: classes x of degree k such that multiplication by x is an
//! isomorphism H^i -> H^{i+k} for every i in range.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{steenrod_image_audit, ActionTable, ImageAudit};
use crate::error::Result;
use crate::linalg::{all_vectors, rank, solve};
use crate::ring::{RingBasis, RingElement};

/// Limits for searches over all vectors of a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest number of nonzero vectors enumerated exhaustively.
    pub enumeration_bound: u64,
    /// Random vectors examined, on top of the basis vectors, when a group is
    /// too large to enumerate.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            enumeration_bound: 4095,
            samples: 256,
            seed: 0x5_eed0_f9e7,
        }
    }
}

/// Candidate vectors of a group: every nonzero vector when that is within
/// the bound, otherwise the basis vectors plus seeded random samples.
/// The flag says whether the list is exhaustive.
pub(crate) fn candidates(basis: &RingBasis, d: u32, config: &SearchConfig) -> (Vec<RingElement>, bool) {
    let dim = basis.dim(d);
    let p = basis.prime();
    if dim == 0 {
        return (Vec::new(), true);
    }
    let total = (p.value() as f64).powi(dim as i32) - 1.0;
    if total <= config.enumeration_bound as f64 {
        let v = all_vectors(p, dim)
            .skip(1)
            .map(|c| basis.element_from_coords(d, &c))
            .collect();
        return (v, true);
    }
    let mut out = basis.basis_elements(d);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ ((d as u64) << 32));
    let mut seen: std::collections::HashSet<Vec<u32>> = out.iter().map(|e| basis.coords(e)).collect();
    let mut attempts = 0;
    while out.len() < dim + config.samples && attempts < 20 * (config.samples + 1) {
        attempts += 1;
        let c: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..p.value())).collect();
        if c.iter().all(|&x| x == 0) || !seen.insert(c.clone()) {
            continue;
        }
        out.push(basis.element_from_coords(d, &c));
    }
    (out, false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicitySearch {
    pub k: u32,
    pub elements: Vec<RingElement>,
    pub complete: bool,
    pub candidates_examined: usize,
}

/// Whether multiplication by `x` is bijective `H^i -> H^{i+k}` for all
/// `0 <= i <= cap - k`.
pub fn is_periodicity_element(basis: &RingBasis, x: &RingElement) -> Result<bool> {
    let k = x.degree();
    if k == 0 || k > basis.cap() || x.is_zero() {
        return Ok(false);
    }
    for i in 0..=basis.cap() - k {
        let n = basis.dim(i);
        if n != basis.dim(i + k) {
            return Ok(false);
        }
        if n == 0 {
            continue;
        }
        let cols = basis.multiplication_columns(x, i)?;
        if rank(basis.prime(), n, &cols) != n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All nonzero degree-k classes inducing periodicity up to the cap.
pub fn find_periodicity_elements(basis: &RingBasis, k: u32, config: &SearchConfig) -> Result<PeriodicitySearch> {
    let mut out = PeriodicitySearch {
        k,
        elements: Vec::new(),
        complete: true,
        candidates_examined: 0,
    };
    if k == 0 || k > basis.cap() || basis.dim(k) == 0 {
        return Ok(out);
    }
    let range = 0..=basis.cap() - k;
    if range.clone().any(|i| basis.dim(i) != basis.dim(i + k)) {
        return Ok(out);
    }
    let p = basis.prime();
    // matrices[i][j]: columns of multiplication by the j-th basis vector of H^k
    let dim_k = basis.dim(k);
    let mut matrices = Vec::new();
    for i in range.clone() {
        let per_basis: Vec<Vec<Vec<u32>>> = (0..dim_k)
            .map(|j| basis.multiplication_columns(&basis.basis_element(k, j), i))
            .collect::<Result<_>>()?;
        matrices.push(per_basis);
    }
    let (cands, complete) = candidates(basis, k, config);
    out.complete = complete;
    out.candidates_examined = cands.len();
    'cand: for x in cands {
        let c = basis.coords(&x);
        for (i, per_basis) in range.clone().zip(&matrices) {
            let n = basis.dim(i);
            if n == 0 {
                continue;
            }
            let rows = basis.dim(i + k);
            let cols: Vec<Vec<u32>> = (0..n)
                .map(|col| {
                    let mut v = vec![0u32; rows];
                    for (j, &cj) in c.iter().enumerate() {
                        if cj == 0 {
                            continue;
                        }
                        for (dst, &src) in v.iter_mut().zip(&per_basis[j][col]) {
                            *dst = p.add(*dst, p.mul(cj, src));
                        }
                    }
                    v
                })
                .collect();
            if rank(p, rows, &cols) != n {
                continue 'cand;
            }
        }
        out.elements.push(x);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPeriod {
    /// Smallest period and a witness, if any was found.
    pub found: Option<(u32, RingElement)>,
    /// False if some search below the answer was not exhaustive.
    pub complete: bool,
}

/// Smallest `k <= cap / 2` with a periodicity element.
pub fn minimal_period(basis: &RingBasis, config: &SearchConfig) -> Result<MinimalPeriod> {
    let mut complete = true;
    for k in 1..=basis.cap() / 2 {
        let s = find_periodicity_elements(basis, k, config)?;
        complete &= s.complete;
        if let Some(x) = s.elements.into_iter().next() {
            return Ok(MinimalPeriod {
                found: Some((k, x)),
                complete,
            });
        }
    }
    Ok(MinimalPeriod { found: None, complete })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorWitness {
    /// `x` or `x^2`.
    pub target: String,
    pub y: String,
    pub z: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationAudit {
    pub element: String,
    pub witnesses: Vec<FactorWitness>,
    pub square_checked: bool,
    pub complete: bool,
    pub passed: bool,
}

/// Look for `x = y z` or `x^2 = y z` with `0 < deg y < deg x`. For each
/// candidate `y` the existence of `z` is a linear solve.
pub fn factorization_audit(basis: &RingBasis, x: &RingElement, config: &SearchConfig) -> Result<FactorizationAudit> {
    let k = x.degree();
    let p = basis.prime();
    let mut witnesses = Vec::new();
    let mut complete = true;
    let mut targets = vec![("x", x.clone())];
    let square_checked = 2 * k <= basis.cap();
    if square_checked {
        targets.push(("x^2", basis.multiply(x, x)?));
    }
    for (label, t) in targets {
        let tc = basis.coords(&t);
        for d in 1..k {
            let e = t.degree() - d;
            if basis.dim(d) == 0 || basis.dim(e) == 0 {
                continue;
            }
            let (ys, exhaustive) = candidates(basis, d, config);
            complete &= exhaustive;
            for y in ys {
                let cols = basis.multiplication_columns(&y, e)?;
                if let Some(c) = solve(p, &cols, &tc) {
                    let z = basis.element_from_coords(e, &c);
                    witnesses.push(FactorWitness {
                        target: label.to_string(),
                        y: basis.format(&y),
                        z: basis.format(&z),
                    });
                }
            }
        }
    }
    Ok(FactorizationAudit {
        element: basis.format(x),
        passed: witnesses.is_empty(),
        witnesses,
        square_checked,
        complete,
    })
}

/// Largest degree `m < k` with a nonzero group.
pub fn top_degree_below(basis: &RingBasis, k: u32) -> u32 {
    (0..k.min(basis.cap() + 1)).rev().find(|&d| basis.dim(d) > 0).unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityEntry {
    pub element: String,
    pub period: u32,
    pub verified_range: [u32; 2],
    pub factorization: FactorizationAudit,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steenrod_image: Option<ImageAudit>,
}

/// Degree bookkeeping for the truncated setting: `m` is the top nonzero
/// degree below the period, and the flags record whether the cap reaches
/// `2k + m` and `pk + m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub m: u32,
    pub cap_reaches_2k_plus_m: bool,
    pub cap_reaches_pk_plus_m: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityReport {
    pub prime: u32,
    pub cap: u32,
    pub minimal_period: Option<u32>,
    pub minimal_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Truncation>,
    pub entries: Vec<PeriodicityEntry>,
    pub complete: bool,
}

impl PeriodicityReport {
    /// Every audit on every entry passed.
    pub fn audits_passed(&self) -> bool {
        self.entries.iter().all(|e| {
            e.factorization.passed && e.steenrod_image.as_ref().is_none_or(|a| a.passed)
        })
    }
}

/// Search all periods `k <= cap / 2` (or only the minimal one) and audit
/// every periodicity element found.
pub fn periodicity_report(
    basis: &RingBasis,
    table: Option<&ActionTable>,
    minimal_only: bool,
    config: &SearchConfig,
) -> Result<PeriodicityReport> {
    let cap = basis.cap();
    let mut complete = true;
    let mut entries = Vec::new();
    let mut minimal: Option<(u32, RingElement)> = None;
    for k in 1..=cap / 2 {
        let s = find_periodicity_elements(basis, k, config)?;
        complete &= s.complete;
        if s.elements.is_empty() {
            continue;
        }
        if minimal.is_none() {
            minimal = Some((k, s.elements[0].clone()));
        }
        for x in &s.elements {
            let factorization = factorization_audit(basis, x, config)?;
            complete &= factorization.complete;
            let steenrod_image = match table {
                Some(t) => Some(steenrod_image_audit(t, x)?),
                None => None,
            };
            entries.push(PeriodicityEntry {
                element: basis.format(x),
                period: k,
                verified_range: [0, cap - k],
                factorization,
                steenrod_image,
            });
        }
        if minimal_only {
            break;
        }
    }
    let p = basis.prime().value();
    let truncation = minimal.as_ref().map(|(k, _)| {
        let m = top_degree_below(basis, *k);
        Truncation {
            m,
            cap_reaches_2k_plus_m: cap >= 2 * k + m,
            cap_reaches_pk_plus_m: cap >= p * k + m,
        }
    });
    Ok(PeriodicityReport {
        prime: p,
        cap,
        minimal_period: minimal.as_ref().map(|(k, _)| *k),
        minimal_witness: minimal.as_ref().map(|(_, x)| basis.format(x)),
        truncation,
        entries,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Prime;
    use crate::ring::{compute_basis, Generator, Polynomial, RingPresentation};

    fn poly_x(deg: u32, cap: u32) -> RingBasis {
        let pres = RingPresentation::new(Prime::TWO, vec![Generator::new("x", deg)], vec![], cap).unwrap();
        compute_basis(&pres).unwrap()
    }

    fn circle_times_cp() -> RingBasis {
        let two = Prime::TWO;
        let pres = RingPresentation::new(
            two,
            vec![Generator::new("t", 1), Generator::new("u", 2)],
            vec![Polynomial::monomial(two, vec![2, 0])],
            24,
        )
        .unwrap();
        compute_basis(&pres).unwrap()
    }

    #[test]
    fn polynomial_generator_is_periodic() {
        let r = poly_x(4, 40);
        let cfg = SearchConfig::default();
        let s = find_periodicity_elements(&r, 4, &cfg).unwrap();
        assert!(s.complete);
        assert_eq!(s.elements.len(), 1);
        assert_eq!(r.format(&s.elements[0]), "x");
        assert!(find_periodicity_elements(&r, 3, &cfg).unwrap().elements.is_empty());
    }

    #[test]
    fn circle_times_projective_space() {
        let r = circle_times_cp();
        let cfg = SearchConfig::default();
        let s = find_periodicity_elements(&r, 2, &cfg).unwrap();
        assert_eq!(s.elements.iter().map(|e| r.format(e)).collect::<Vec<_>>(), vec!["u"]);
        let m = minimal_period(&r, &cfg).unwrap();
        assert_eq!(m.found.map(|(k, _)| k), Some(2));

        let u2 = r.power(&r.generator("u").unwrap(), 2).unwrap();
        let a = factorization_audit(&r, &u2, &cfg).unwrap();
        assert!(!a.passed);
        assert!(a.witnesses.contains(&FactorWitness {
            target: "x".into(),
            y: "u".into(),
            z: "u".into()
        }));
    }

    #[test]
    fn polynomial_factorization_audit_passes() {
        let r = poly_x(4, 40);
        let x = r.generator("x").unwrap();
        let a = factorization_audit(&r, &x, &SearchConfig::default()).unwrap();
        assert!(a.passed && a.complete && a.square_checked);
    }

    #[test]
    fn report_records_truncation_parameter() {
        let r = circle_times_cp();
        let rep = periodicity_report(&r, None, true, &SearchConfig::default()).unwrap();
        assert_eq!(rep.minimal_period, Some(2));
        assert_eq!(rep.truncation.as_ref().unwrap().m, 1);
        assert_eq!(rep.entries.len(), 1);
        assert!(rep.audits_passed());
    }

    #[test]
    fn large_groups_fall_back_to_sampling() {
        // 13 generators of degree 2: H^2 has dimension 13 > 12.
        let gens = (0..13).map(|i| Generator::new(format!("a{i}"), 2)).collect();
        let pres = RingPresentation::new(Prime::TWO, gens, vec![], 4).unwrap();
        let r = compute_basis(&pres).unwrap();
        let s = find_periodicity_elements(&r, 2, &SearchConfig::default()).unwrap();
        assert!(s.elements.is_empty());
        // dimensions differ, so the answer is known without a search
        assert!(s.complete);
        let (c, exhaustive) = candidates(&r, 2, &SearchConfig::default());
        assert!(!exhaustive);
        assert!(c.len() > 13);
    }
}
