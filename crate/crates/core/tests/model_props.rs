mod common;

use common::*;
use painleve_core::ode_model::{bureau_number, canonical_match, leading_shape_check, LeadingShape};
use painleve_core::{ClassTag, QuadraticODE, RationalFunction};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n - max(k + j)` over nonzero slots, computed from the rendered slots.
fn bureau_oracle(eq: &QuadraticODE) -> Option<i64> {
    let n = eq.order();
    (0..n)
        .flat_map(|k| (0..=k).map(move |j| (k, j)))
        .filter(|&(k, j)| !eq.quadratic(k, j).is_zero())
        .map(|(k, j)| n as i64 - (k + j) as i64)
        .min()
}

proptest! {
    #[test]
    fn bureau_matches_oracle(seed in any::<u64>(), n in 2usize..=8, density in 0.05f64..0.6) {
        let eq = random_equation(&mut ChaCha8Rng::seed_from_u64(seed), n, density);
        prop_assert_eq!(bureau_number(&eq), bureau_oracle(&eq));
    }

    #[test]
    fn bureau_ignores_scaling_and_lower_terms(seed in any::<u64>(), n in 2usize..=8, b in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eq = random_shaped(&mut rng, n, b);
        let lambda = nonzero_rational(&mut rng);
        let scaled = eq.scale_quadratic(&lambda);
        prop_assert_eq!(bureau_number(&scaled), Some(b as i64));
        prop_assert_eq!(leading_shape_check(&scaled), leading_shape_check(&eq));

        let mut shifted = eq.clone();
        let j = rng.gen_range(0..n);
        shifted.set_linear(j, nonzero_coefficient(&mut rng)).unwrap();
        shifted.set_free_term(random_coefficient(&mut rng));
        prop_assert_eq!(bureau_number(&shifted), Some(b as i64));
        prop_assert_eq!(leading_shape_check(&shifted), leading_shape_check(&eq));
    }

    #[test]
    fn shaped_equations_pass_the_gate(seed in any::<u64>(), n in 2usize..=8, b in 1usize..=2) {
        let eq = random_shaped(&mut ChaCha8Rng::seed_from_u64(seed), n, b);
        let want = if b == 1 { LeadingShape::B1Form } else { LeadingShape::B2Form };
        prop_assert_eq!(leading_shape_check(&eq), want);
    }

    #[test]
    fn diffpoly_round_trip(seed in any::<u64>(), n in 2usize..=8) {
        let eq = random_equation(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.4);
        prop_assert_eq!(QuadraticODE::from_rhs_diffpoly(n, &eq.rhs_diffpoly(0), 0).unwrap(), eq);
    }
}

proptest! {
    #[test]
    fn bureau_ignores_scaling_one_slot(seed in any::<u64>(), n in 2usize..=8, density in 0.1f64..0.6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eq = random_equation(&mut rng, n, density);
        let slots: Vec<(usize, usize)> = eq.quadratic_terms().map(|(kj, _)| kj).collect();
        prop_assume!(!slots.is_empty());
        let (k, j) = slots[rng.gen_range(0..slots.len())];
        let mut scaled = eq.clone();
        scaled.set_quadratic(k, j, eq.quadratic(k, j).scale(&nonzero_rational(&mut rng))).unwrap();
        prop_assert_eq!(bureau_number(&scaled), bureau_number(&eq));
    }

    #[test]
    fn canonical_forms_pass_the_gate(seed in any::<u64>(), n in 2usize..=8, b in 1usize..=2) {
        let eq = random_shaped(&mut ChaCha8Rng::seed_from_u64(seed), n, b);
        if !canonical_match(&eq).is_empty() {
            prop_assert!(!matches!(leading_shape_check(&eq), LeadingShape::Rejected(_)));
        }
    }
}

#[test]
fn corpus_canonical_forms_pass_the_gate() {
    for (name, eq) in corpus_equations() {
        if !canonical_match(&eq).is_empty() {
            assert!(
                !matches!(leading_shape_check(&eq), LeadingShape::Rejected(_)),
                "{name}"
            );
        }
    }
}

#[test]
fn leibniz_family_is_recognized() {
    for n in 2..=10 {
        for a in [rat(1, 1), rat(-3, 2), rat(7, 1)] {
            let eq = leibniz_family(n).scale_quadratic(&a);
            let tags: Vec<ClassTag> = canonical_match(&eq).iter().map(|m| m.tag).collect();
            assert_eq!(tags, vec![ClassTag::CNLinearizable], "n = {n}, A = {a}");
            let leading = &canonical_match(&eq)[0].leading;
            assert_eq!(leading, &RationalFunction::constant(a.clone()));
        }
    }
}
