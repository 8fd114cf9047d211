use proptest::prelude::*;

use periodica_core::fp::Prime;
use periodica_core::steenrod::{algebra, PairChoice, SteenrodElement, SteenrodMonomial};

fn two_word() -> impl Strategy<Value = SteenrodMonomial> {
    prop::collection::vec(1u32..=12, 1..=4).prop_map(|w| SteenrodMonomial::squares(&w))
}

/// Words `[e0, s1, e1, ..., sk, ek]` at p = 3 with small exponents.
fn odd_word() -> impl Strategy<Value = SteenrodMonomial> {
    (0u32..=1, prop::collection::vec((1u32..=4, 0u32..=1), 1..=3)).prop_map(|(e0, rest)| {
        let mut word = vec![e0];
        for (s, e) in rest {
            word.push(s);
            word.push(e);
        }
        SteenrodMonomial::from_word(Prime::new(3).unwrap(), word).unwrap()
    })
}

fn check_normal_form(m: &SteenrodMonomial) -> Result<(), TestCaseError> {
    let p = m.prime();
    let alg = algebra(p);
    let e = SteenrodElement::from(m.clone());
    let nf = alg.normalize(&e);
    prop_assert!(nf.is_admissible());
    if !nf.is_zero() {
        prop_assert_eq!(nf.degree(), Some(m.degree()));
    }
    prop_assert_eq!(&alg.normalize(&nf), &nf);
    prop_assert_eq!(&alg.normalize_by_rewriting(&e, PairChoice::Rightmost), &nf);
    if m.is_admissible() {
        prop_assert_eq!(nf, e);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_forms_at_two(m in two_word()) {
        check_normal_form(&m)?;
    }

    #[test]
    fn normal_forms_at_three(m in odd_word()) {
        check_normal_form(&m)?;
    }

    #[test]
    fn normalization_is_linear(a in two_word(), b in two_word()) {
        let alg = algebra(Prime::TWO);
        let (ea, eb) = (SteenrodElement::from(a), SteenrodElement::from(b));
        let sum = alg.normalize(&(&ea + &eb));
        prop_assert_eq!(sum, &alg.normalize(&ea) + &alg.normalize(&eb));
    }

    #[test]
    fn composition_is_associative(a in two_word(), b in two_word(), c in two_word()) {
        let alg = algebra(Prime::TWO);
        let (a, b, c) = (SteenrodElement::from(a), SteenrodElement::from(b), SteenrodElement::from(c));
        let left = alg.normalize(&alg.normalize(&a.compose(&b)).compose(&c));
        let right = alg.normalize(&a.compose(&alg.normalize(&b.compose(&c))));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn odd_composition_is_associative(a in odd_word(), b in odd_word(), c in odd_word()) {
        let alg = algebra(Prime::new(3).unwrap());
        let (a, b, c) = (SteenrodElement::from(a), SteenrodElement::from(b), SteenrodElement::from(c));
        let left = alg.normalize(&alg.normalize(&a.compose(&b)).compose(&c));
        let right = alg.normalize(&a.compose(&alg.normalize(&b.compose(&c))));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn admissible_bases_are_admissible(d in 0u32..=40, p in prop::sample::select(vec![2u32, 3, 5])) {
        let p = Prime::new(p).unwrap();
        let basis = algebra(p).admissible_basis(d);
        for m in &basis.monomials {
            prop_assert!(m.is_admissible());
            prop_assert_eq!(m.degree(), d);
            let ex = m.excess().unwrap();
            prop_assert!(ex <= d);
        }
        let mut sorted = basis.monomials.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), basis.len());
    }
}
