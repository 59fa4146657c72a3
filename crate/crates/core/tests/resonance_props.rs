mod common;

use common::*;
use painleve_core::painleve_test::{
    leading_coefficient, resonance_polynomial_closed, resonance_polynomial_perturbative,
};
use painleve_core::resonance_report;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closed_form_matches_perturbation(seed in any::<u64>(), n in 2usize..=8, b in 1usize..=2) {
        let eq = random_shaped(&mut ChaCha8Rng::seed_from_u64(seed), n, b);
        let Ok((_, q0)) = leading_coefficient(&eq, b as i64) else { return Ok(()) };
        let closed = resonance_polynomial_closed(&eq).unwrap();
        let pert = resonance_polynomial_perturbative(&eq, b, &q0).unwrap();
        prop_assert_eq!(closed.monic(), pert.monic());
    }

    #[test]
    fn minus_one_is_always_a_root(seed in any::<u64>(), n in 2usize..=8, b in 1usize..=2) {
        let eq = random_shaped(&mut ChaCha8Rng::seed_from_u64(seed), n, b);
        prop_assume!(leading_coefficient(&eq, b as i64).is_ok());
        let r = resonance_polynomial_closed(&eq).unwrap();
        prop_assert!(r.eval(&rat(-1, 1)).is_zero());
        prop_assert_eq!(r.degree(), Some(n));
    }

    #[test]
    fn scaling_the_quadratic_part(seed in any::<u64>(), n in 2usize..=8, b in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eq = random_shaped(&mut rng, n, b);
        let Ok(base) = resonance_report(&eq) else { return Ok(()) };
        let lambda = nonzero_rational(&mut rng);
        let scaled = resonance_report(&eq.scale_quadratic(&lambda)).unwrap();
        prop_assert_eq!(scaled.rpoly.monic(), base.rpoly.monic());
        prop_assert_eq!(&scaled.integer_roots, &base.integer_roots);
        prop_assert_eq!(&scaled.h, &base.h);
        prop_assert_eq!(scaled.q0.scale(&lambda), base.q0);
    }

    #[test]
    fn lower_terms_leave_resonances_alone(seed in any::<u64>(), n in 2usize..=8, b in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eq = random_shaped(&mut rng, n, b);
        let Ok(base) = resonance_report(&eq) else { return Ok(()) };
        let mut other = eq.clone();
        other.set_linear(rng.gen_range(0..n), nonzero_coefficient(&mut rng)).unwrap();
        other.set_free_term(nonzero_coefficient(&mut rng));
        let r = resonance_report(&other).unwrap();
        prop_assert_eq!(r.rpoly, base.rpoly);
    }
}

/// `e (e - 1) ... (e - k + 1)`.
fn falling(e: i64, k: usize) -> i64 {
    (0..k as i64).map(|t| e - t).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn leading_balance_cancels(seed in any::<u64>(), n in 2usize..=8, b in 1usize..=2) {
        let eq = random_shaped(&mut ChaCha8Rng::seed_from_u64(seed), n, b);
        let Ok((_, q0)) = leading_coefficient(&eq, b as i64) else { return Ok(()) };
        let p = b as i64;
        // coefficient of tau^(-p-n) after w = q0 tau^(-p)
        let mut t = q0.scale(&rat(falling(-p, n), 1));
        for ((k, j), a) in eq.quadratic_terms() {
            if k + j == n - b {
                let c = rat(falling(-p, k) * falling(-p, j), 1);
                t = &t - &(&(a * &q0) * &q0).scale(&c);
            }
        }
        prop_assert!(t.is_zero(), "{}", t);
    }
}

#[test]
fn passing_expansions_carry_n_minus_one_parameters() {
    use painleve_core::{expand_solution, ExpansionPoint};
    let mut checked = 0;
    let mut eqs = corpus_equations();
    eqs.extend((3..=8).map(|n| (format!("leibniz {n}"), leibniz_family(n))));
    for (name, eq) in eqs {
        let Ok(r) = resonance_report(&eq) else { continue };
        if !(r.complete && r.constant) {
            continue;
        }
        if let Ok((exp, _)) = expand_solution(&eq, ExpansionPoint::Generic, None) {
            assert_eq!(exp.free_indices.len(), eq.order() - 1, "{name}");
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} passing equations");
}
