use std::path::PathBuf;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use periodica_core::ring::{RingBasis, RingElement};
use periodica_core::ringfile::{load_ring, RingFile};

fn fixture_text(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn fixture(name: &str) -> std::sync::Arc<RingBasis> {
    load_ring(&fixture_text(name)).unwrap().basis
}

const RINGS: [&str; 5] = ["candidate-16.ring", "t2-hp.ring", "s1-cp.ring", "f3-lens.ring", "f3-hp.ring"];

fn random_element(ring: &RingBasis, d: u32, seed: u64) -> RingElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ring.prime().value();
    let coords: Vec<u32> = (0..ring.dim(d)).map(|_| rng.gen_range(0..p)).collect();
    ring.element_from_coords(d, &coords)
}

fn sign(ring: &RingBasis, a: &RingElement, b: &RingElement) -> u32 {
    if ring.prime().is_two() || (a.degree() * b.degree()).is_multiple_of(2) {
        1
    } else {
        ring.prime().value() - 1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn multiplication_is_associative_and_graded_commutative(
        which in 0usize..RINGS.len(),
        da in 0u32..=24, db in 0u32..=24, dc in 0u32..=24,
        seed in any::<u64>(),
    ) {
        let ring = fixture(RINGS[which]);
        prop_assume!(da + db + dc <= ring.cap());
        let a = random_element(&ring, da, seed);
        let b = random_element(&ring, db, seed ^ 1);
        let c = random_element(&ring, dc, seed ^ 2);
        let ab = ring.multiply(&a, &b).unwrap();
        let left = ring.multiply(&ab, &c).unwrap();
        let right = ring.multiply(&a, &ring.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let ba = ring.multiply(&b, &a).unwrap();
        prop_assert_eq!(ab, ba.scale(sign(&ring, &a, &b)));
        let bc = &b + &random_element(&ring, db, seed ^ 3);
        let dist = ring.multiply(&a, &bc).unwrap();
        let parts = &ring.multiply(&a, &b).unwrap() + &ring.multiply(&a, &(&bc - &b)).unwrap();
        prop_assert_eq!(dist, parts);
    }

    #[test]
    fn dimensions_ignore_generator_order(which in 0usize..RINGS.len(), seed in any::<u64>()) {
        let mut file = RingFile::parse(&fixture_text(RINGS[which])).unwrap();
        let original = file.load().unwrap().basis;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..file.generators.len()).rev() {
            let j = rng.gen_range(0..=i);
            file.generators.swap(i, j);
        }
        let shuffled = file.load().unwrap().basis;
        for d in 0..=original.cap() {
            prop_assert_eq!(original.dim(d), shuffled.dim(d));
        }
    }

    #[test]
    fn periodicity_powers_and_division(which in 0usize..RINGS.len(), d in 0u32..=48, seed in any::<u64>()) {
        let ring = fixture(RINGS[which]);
        let x = match RINGS[which] {
            "candidate-16.ring" => ring.generator("x").unwrap(),
            "t2-hp.ring" => ring.generator("v").unwrap(),
            "s1-cp.ring" => ring.generator("x").unwrap(),
            "f3-lens.ring" => ring.generator("t").unwrap(),
            _ => ring.generator("u").unwrap(),
        };
        let k = x.degree();
        for m in 1..=ring.cap() / k {
            prop_assert!(!ring.power(&x, m).unwrap().is_zero());
        }
        prop_assume!(d + k <= ring.cap());
        let y = random_element(&ring, d, seed);
        let xy = ring.multiply(&x, &y).unwrap();
        prop_assert_eq!(ring.divide(&xy, &x).unwrap(), Some(y));
    }
}
