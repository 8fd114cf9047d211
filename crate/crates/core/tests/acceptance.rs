//! End-to-end acceptance criteria. Runs without the libtest harness so the
//! per-criterion lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use periodica_core::action::{check_adem_coherence, faithful_model, ActionTable};
use periodica_core::fp::Prime;
use periodica_core::linalg::rank;
use periodica_core::periodicity::{minimal_period, periodicity_report, SearchConfig};
use periodica_core::report::ReportDocument;
use periodica_core::ring::RingElement;
use periodica_core::ringfile::load_ring;
use periodica_core::steenrod::{algebra, Op, PairChoice, SteenrodElement, SteenrodMonomial};
use periodica_core::verify::{
    candidate_ring, check_candidate_table, check_counterexample_candidate, conditional_relation_audit,
    default_matrix, verify_beta_identity, verify_eight_model, verify_final_coefficient, verify_half_power_family,
    verify_odd_leading, verify_odd_trailing, verify_power_of_two, verify_square_shift_family, ConditionalShape,
    EightModel, OddParams, Verdict, Verifier, VerifyOptions, DEFAULT_DEGREE_BUDGET,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> ActionTable {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    load_ring(&text).unwrap().table
}

/// Monomials `m` with sorted exponent data; the model's action commutes
/// with permuting the variables, so these represent every orbit.
fn orbit_representatives(table: &ActionTable, d: u32) -> Vec<RingElement> {
    let ring = table.ring();
    let p = ring.prime();
    (0..ring.dim(d))
        .filter(|&i| {
            let exps = ring.basis_monomial(d, i);
            if p.is_two() {
                exps.windows(2).all(|w| w[0] >= w[1])
            } else {
                let n = exps.len() / 2;
                let pairs: Vec<(u32, u32)> = (0..n).map(|j| (exps[j], exps[n + j])).collect();
                pairs.windows(2).all(|w| w[0] >= w[1])
            }
        })
        .map(|i| ring.basis_element(d, i))
        .collect()
}

fn two_factor_words(p: Prime, max_degree: u32) -> Vec<Vec<Op>> {
    let mut singles = Vec::new();
    if p.is_two() {
        singles.extend((1..max_degree).map(Op::Sq));
    } else {
        singles.push(Op::Beta);
        singles.extend((1..).take_while(|&s| Op::P(s).degree(p) < max_degree).map(Op::P));
    }
    let mut out = Vec::new();
    for &a in &singles {
        for &b in &singles {
            if a.degree(p) + b.degree(p) <= max_degree {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

fn apply_word(table: &ActionTable, word: &[Op], e: &RingElement) -> RingElement {
    word.iter().rev().fold(e.clone(), |acc, &op| table.apply_op(op, &acc).unwrap())
}

fn normalization_matches_action(p: Prime) -> Result<(usize, usize), String> {
    let cap = 34;
    let table = faithful_model(4, p, cap).map_err(|e| e.to_string())?;
    let alg = algebra(p);
    let words = two_factor_words(p, 30);
    let reps: Vec<Vec<RingElement>> = (0..=cap).map(|d| orbit_representatives(&table, d)).collect();
    let evaluations: usize = words
        .par_iter()
        .map(|w| -> Result<usize, String> {
            let deg: u32 = w.iter().map(|o| o.degree(p)).sum();
            let nf = alg.normalize(&SteenrodElement::from_ops(p, w).unwrap());
            let mut n = 0;
            for d in 0..=cap - deg {
                for b in &reps[d as usize] {
                    let lhs = apply_word(&table, w, b);
                    let rhs = if nf.is_zero() {
                        table.ring().zero(d + deg)
                    } else {
                        table.act(&nf, b).unwrap()
                    };
                    if lhs != rhs {
                        return Err(format!(
                            "p={}: {:?} on {}: {} vs normal form {nf}: {}",
                            p.value(),
                            w,
                            table.ring().format(b),
                            table.ring().format(&lhs),
                            table.ring().format(&rhs)
                        ));
                    }
                    n += 1;
                }
            }
            Ok(n)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok((words.len(), evaluations))
}

/// Admissibles of excess at most 4 have independent images on degree-4
/// classes, and higher excess kills them. At p = 2 the single class
/// `t1 t2 t3 t4` suffices; at odd p the whole degree-4 group is used.
fn model_detects_low_excess(p: Prime) -> Result<usize, String> {
    let cap = 34;
    let table = faithful_model(4, p, cap).map_err(|e| e.to_string())?;
    let ring = table.ring();
    let classes = if p.is_two() {
        let mut top = ring.one();
        for n in ["t1", "t2", "t3", "t4"] {
            top = ring.multiply(&top, &ring.generator(n).unwrap()).unwrap();
        }
        vec![top]
    } else {
        ring.basis_elements(4)
    };
    let alg = algebra(p);
    let mut checked = 0;
    for d in 1..=30 {
        let basis = alg.admissible_basis(d);
        let width = ring.dim(4 + d);
        let mut rows = Vec::new();
        for m in &basis.monomials {
            let mut row = Vec::with_capacity(width * classes.len());
            for c in &classes {
                row.extend(table.act_monomial(m, c).unwrap().to_dense(width));
            }
            if m.excess().unwrap() <= 4 {
                rows.push(row);
            } else {
                ensure(row.iter().all(|&v| v == 0), || format!("{m} has excess above 4 but acts nontrivially"))?;
            }
            checked += 1;
        }
        let r = rank(p, width * classes.len(), &rows);
        ensure(r == rows.len(), || {
            format!("p={} degree {d}: rank {r} for {} low-excess admissibles", p.value(), rows.len())
        })?;
    }
    Ok(checked)
}

fn criterion_1() -> Outcome {
    let mut parts = Vec::new();
    for p in [2, 3] {
        let p = Prime::new(p).unwrap();
        let (words, evals) = normalization_matches_action(p)?;
        let detected = model_detects_low_excess(p)?;
        parts.push(format!(
            "p={}: {words} two-factor words, {evals} evaluations, {detected} admissibles checked on degree-4 classes",
            p.value()
        ));
    }
    Ok(parts.join("; "))
}

fn criterion_2() -> Outcome {
    let r = verify_power_of_two(64).map_err(|e| e.to_string())?;
    let bad: Vec<String> = r.failed_checks().map(|c| c.name.clone()).collect();
    ensure(r.passed, || format!("mismatches at {bad:?}"))?;
    let indecomposable: Vec<String> = r
        .checks
        .iter()
        .filter(|c| c.detail == "indecomposable")
        .map(|c| c.name.clone())
        .collect();
    ensure(
        indecomposable == ["Sq^1", "Sq^2", "Sq^4", "Sq^8", "Sq^16", "Sq^32", "Sq^64"],
        || format!("indecomposables {indecomposable:?}"),
    )?;
    Ok(format!("indecomposable exactly at {}", indecomposable.join(", ")))
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    for k in [8, 16, 32, 64] {
        for r in [verify_half_power_family(k), verify_square_shift_family(k)] {
            let r = r.map_err(|e| e.to_string())?;
            let bad: Vec<String> = r.failed_checks().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            ensure(r.passed, || format!("{} k={k}: {bad:?}", r.id))?;
            cases += r.checks.iter().filter(|c| c.name.ends_with("normal form")).count();
        }
    }
    Ok(format!("{cases} relations normalized with exact leading coefficient and index bounds"))
}

fn criterion_4() -> Outcome {
    let matrix = default_matrix(DEFAULT_DEGREE_BUDGET);
    let mut binomials = 0;
    for &params in &matrix {
        for r in [
            verify_odd_leading(params),
            verify_odd_trailing(params),
            verify_final_coefficient(params),
        ] {
            let r = r.map_err(|e| e.to_string())?;
            let bad: Vec<String> = r.failed_checks().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            ensure(r.passed, || format!("{} {params:?}: {bad:?}", r.id))?;
            binomials += r
                .checks
                .iter()
                .filter(|c| c.name.ends_with("binomial") || c.name == "binomial paths agree")
                .count();
        }
    }
    Ok(format!(
        "{} parameter tuples, {binomials} binomials nonzero with Lucas and exact paths agreeing",
        matrix.len()
    ))
}

fn criterion_5() -> Outcome {
    for (p, l, a) in [(3, 1, 1), (5, 1, 1), (3, 2, 1), (3, 1, 2)] {
        let params = OddParams::new(p, l, a, DEFAULT_DEGREE_BUDGET).map_err(|e| e.to_string())?;
        let r = verify_beta_identity(params).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("{params:?}: {:?}", r.checks))?;
    }
    Ok("identity holds for 4 parameter tuples".into())
}

fn criterion_6() -> Outcome {
    let config = SearchConfig::default();
    let mut seen = Vec::new();
    for (file, expected) in [
        ("poly-x1.ring", 1),
        ("poly-x2.ring", 2),
        ("poly-x4.ring", 4),
        ("poly-x8.ring", 8),
        ("poly-x16.ring", 16),
        ("s1-cp.ring", 2),
        ("t2-hp.ring", 4),
    ] {
        let table = fixture(file);
        let m = minimal_period(table.ring(), &config).map_err(|e| e.to_string())?;
        let got = m.found.as_ref().map(|(k, _)| *k);
        ensure(got == Some(expected) && m.complete, || {
            format!("{file}: expected {expected}, got {got:?} (complete {})", m.complete)
        })?;
        seen.push(format!("{file}={expected}"));
    }
    Ok(seen.join(" "))
}

fn criterion_7() -> Outcome {
    let r = check_counterexample_candidate(64).map_err(|e| e.to_string())?;
    let bad: Vec<String> = r.failed_checks().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    ensure(r.passed, || format!("candidate checks failed: {bad:?}"))?;
    for name in [
        "x^-1 Sq^16 is the identity on H^16, H^20, H^24, H^28",
        "u8 v12 = u12 v12 = u8 Sq^8(v12) = 0",
        "y_i y_j = 0",
        "Sq^4 y8 = y12 and Sq^8 y12 = x y4",
        "factorization audit",
        "Steenrod image audit",
    ] {
        ensure(r.check(name).is_some_and(|c| c.passed && c.required), || format!("missing or failed: {name}"))?;
    }
    let table = candidate_ring(64).map_err(|e| e.to_string())?;
    let coherence = check_adem_coherence(&table, 64).map_err(|e| e.to_string())?;
    ensure(coherence.degree_limit == 64 && coherence.relations_checked > 0, || {
        "coherence report incomplete".into()
    })?;
    let broken = table
        .with_entry("y12", Op::Sq(8), table.ring().zero(20))
        .map_err(|e| e.to_string())?;
    let n = check_candidate_table(&broken).map_err(|e| e.to_string())?;
    let c = n.check("Sq^4 y8 = y12 and Sq^8 y12 = x y4").unwrap();
    ensure(!n.passed && !c.passed && !c.witnesses.is_empty(), || {
        "negative control did not fail with a witness".into()
    })?;
    Ok(format!(
        "all sub-checks pass; coherence: {} identities, {} violations; control fails with '{}'",
        coherence.identities_checked,
        coherence.violations.len(),
        c.witnesses[0]
    ))
}

fn criterion_8() -> Outcome {
    let table = fixture("poly-x16.ring");
    let x = table.ring().generator("x").unwrap();
    let r = conditional_relation_audit(&table, &x, ConditionalShape::Adams).map_err(|e| e.to_string())?;
    ensure(r.verdict == Some(Verdict::Contradiction), || format!("adams verdict {:?}", r.verdict))?;
    let r = verify_eight_model(EightModel::Plain, 48).map_err(|e| e.to_string())?;
    ensure(r.passed && r.verdict == Some(Verdict::Contradiction), || format!("{:?}", r.checks))?;
    for name in ["Sq^8(x^2) = 0", "(Sq^4 x)^2 = 0", "x^2 y8 != 0"] {
        ensure(r.check(name).is_some_and(|c| c.passed), || format!("missing or failed: {name}"))?;
    }
    let v = verify_eight_model(EightModel::ExtraDegreeFour, 48).map_err(|e| e.to_string())?;
    ensure(v.passed && v.verdict == Some(Verdict::Inconclusive), || format!("{:?}", v.checks))?;
    Ok("contradiction on F_2[x] (degree 16) and on the multiples-of-8 model; inconclusive with a degree-4 class".into())
}

fn odd_words(p: Prime, max_degree: u32) -> Vec<SteenrodMonomial> {
    // Words [e0, s1, e1, ..., sk, ek] with every s >= 1.
    fn go(p: Prime, rem: u32, word: &mut Vec<u32>, out: &mut Vec<SteenrodMonomial>) {
        out.push(SteenrodMonomial::from_word(p, word.clone()).unwrap());
        let step = 2 * (p.value() - 1);
        for s in 1..=rem / step {
            for e in 0..=1 {
                if s * step + e > rem {
                    continue;
                }
                word.push(s);
                word.push(e);
                go(p, rem - s * step - e, word, out);
                word.pop();
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    for e0 in 0..=1 {
        let mut word = vec![e0];
        go(p, max_degree - e0, &mut word, &mut out);
    }
    out.retain(|m| m.degree() > 0);
    out
}

fn two_words(max_degree: u32) -> Vec<SteenrodMonomial> {
    fn go(rem: u32, word: &mut Vec<u32>, out: &mut Vec<SteenrodMonomial>) {
        if !word.is_empty() {
            out.push(SteenrodMonomial::squares(word));
        }
        for a in 1..=rem {
            word.push(a);
            go(rem - a, word, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    go(max_degree, &mut Vec::new(), &mut out);
    out
}

fn strategies_agree(p: Prime, words: &[SteenrodMonomial]) -> Result<(), String> {
    let alg = algebra(p);
    words.par_iter().try_for_each(|m| {
        let e = SteenrodElement::from(m.clone());
        let left = alg.normalize_by_rewriting(&e, PairChoice::Leftmost);
        let right = alg.normalize_by_rewriting(&e, PairChoice::Rightmost);
        let cached = alg.normalize(&e);
        ensure(left == right && right == cached, || {
            format!("p={}: {m}: leftmost {left}, rightmost {right}, cached {cached}", p.value())
        })
    })
}

/// Reports produced twice on fresh four-thread pools must serialize to the
/// same bytes.
fn reports_json() -> String {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    pool.install(|| {
        let mut out = String::new();
        let cand = check_counterexample_candidate(64).unwrap();
        out += &ReportDocument::new("verification", vec![cand]).to_json();
        let table = candidate_ring(64).unwrap();
        out += &ReportDocument::new("coherence", check_adem_coherence(&table, 64).unwrap()).to_json();
        for file in ["t2-hp.ring", "f3-hp.ring", "s1-cp.ring"] {
            let t = fixture(file);
            let r = periodicity_report(t.ring(), Some(&t), false, &SearchConfig::default()).unwrap();
            out += &ReportDocument::new("periodicity", r).to_json();
        }
        let opts = VerifyOptions {
            budget: 200,
            ..VerifyOptions::default()
        };
        for id in ["odd-leading", "final-coefficient", "eight-model"] {
            let r = Verifier::new().run(id, &opts).unwrap();
            out += &ReportDocument::new("verification", r).to_json();
        }
        out
    })
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    // Overlap ambiguities: both adjacent pairs of a three-letter word
    // inadmissible. Resolving all of them, with termination, gives unique
    // normal forms for every monomial in these degrees.
    let mut overlaps = Vec::new();
    for a in 1..=28 {
        for b in 1..=29 - a {
            for c in 1..=30 - a - b {
                if a < 2 * b && b < 2 * c {
                    overlaps.push(SteenrodMonomial::squares(&[a, b, c]));
                }
            }
        }
    }
    strategies_agree(Prime::TWO, &overlaps)?;
    parts.push(format!("p=2: {} overlap ambiguities resolve", overlaps.len()));
    let exhaustive_two = 20;
    let words = two_words(exhaustive_two);
    strategies_agree(Prime::TWO, &words)?;
    parts.push(format!("all {} words of degree <= {exhaustive_two}", words.len()));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sampled: Vec<SteenrodMonomial> = (0..4000)
        .map(|_| {
            let total = rng.gen_range(exhaustive_two + 1..=30);
            let mut rem = total;
            let mut w = Vec::new();
            while rem > 0 {
                let a = rng.gen_range(1..=rem.min(12));
                w.push(a);
                rem -= a;
            }
            SteenrodMonomial::squares(&w)
        })
        .collect();
    strategies_agree(Prime::TWO, &sampled)?;
    parts.push(format!("{} sampled words up to degree 30", sampled.len()));
    for p in [3, 5] {
        let p = Prime::new(p).unwrap();
        let words = odd_words(p, 30);
        let overlaps = words.iter().filter(|m| m.inadmissible_pairs().len() >= 2).count();
        strategies_agree(p, &words)?;
        parts.push(format!(
            "p={}: all {} words of degree <= 30 ({overlaps} with overlapping redexes)",
            p.value(),
            words.len()
        ));
    }
    let a = reports_json();
    let b = reports_json();
    ensure(a == b, || "reports differ between runs".into())?;
    parts.push(format!("{} report bytes identical across two runs", a.len()));
    Ok(parts.join("; "))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("normal forms agree with the action on the faithful model", criterion_1),
        ("Sq^k indecomposable exactly for powers of two up to 64", criterion_2),
        ("relation families for Sq^d Sq^(k/2) and Sq^(2i) Sq^(k-i)", criterion_3),
        ("odd-primary binomial coefficients are nonzero", criterion_4),
        ("P^1 b P^(k/2-1) = -b P^(k/2) + P^(k/2) b", criterion_5),
        ("minimal periods of the fixture rings", criterion_6),
        ("degree-16 candidate ring", criterion_7),
        ("conditional relations force contradictions", criterion_8),
        ("confluence and deterministic reports", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
