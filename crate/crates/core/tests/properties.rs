use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zgrade_core::identities::{phi_scale, random_multilinear, Assignment, MonomialEvaluator};
use zgrade_core::{
    find_witness, parse_poly, pi_project, substitute, verify_identity, GradedPolynomial, GradingSpec, GrassmannElement,
    Mode, Monomial, Scalar, SplitRule, VerifyConfig,
};

fn two(m: i64, n: i64) -> GradingSpec {
    GradingSpec::two_induced_infinite(m, n).unwrap()
}

/// A random homogeneous element of degree `d`: a few candidate monomials
/// with small integer coefficients.
fn random_element(rng: &mut ChaCha8Rng, spec: &GradingSpec, d: i64, n: u32) -> GrassmannElement {
    let pool = spec.monomials_of_degree(d, 3, n, None, Monomial::ONE);
    let mut x = GrassmannElement::zero();
    if pool.is_empty() {
        return x;
    }
    for _ in 0..rng.random_range(1..=3) {
        let m = pool[rng.random_range(0..pool.len())];
        let c = Scalar::from_integer(rng.random_range(-3i64..=3).into());
        x = &x + &GrassmannElement::term(c, m);
    }
    x
}

fn specs() -> Vec<GradingSpec> {
    vec![
        two(-1, 1),
        two(-2, 3),
        two(-1, 2),
        GradingSpec::ektilde(2, SplitRule::Alternating).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluator_matches_substitution(seed in any::<u64>(), which in 0usize..4) {
        let spec = &specs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_multilinear(&mut rng, 2..=4, -3..=3, -2..=2);
        let mut eval = MonomialEvaluator::new(&f).unwrap();
        let mut picks = Vec::new();
        for v in f.variables() {
            let pool = spec.monomials_of_degree(v.degree, 4, 10, None, Monomial::ONE);
            prop_assume!(!pool.is_empty());
            picks.push(pool[rng.random_range(0..pool.len())]);
        }
        let values: Assignment = f.variables().iter().copied()
            .zip(picks.iter().map(|&m| GrassmannElement::from(m)))
            .collect();
        prop_assert_eq!(eval.evaluate(&picks), substitute(&f, &values, spec).unwrap());
    }

    #[test]
    fn substitution_is_multilinear(seed in any::<u64>(), which in 0usize..4) {
        let spec = &specs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_multilinear(&mut rng, 2..=3, -2..=2, -2..=2);
        let mut base: Assignment = BTreeMap::new();
        for v in f.variables() {
            base.insert(*v, random_element(&mut rng, spec, v.degree, 9));
        }
        let slot = f.variables()[rng.random_range(0..f.variables().len())];
        let u = base[&slot].clone();
        let w = random_element(&mut rng, spec, slot.degree, 9);
        let c = Scalar::new(rng.random_range(-5i64..=5).into(), rng.random_range(1i64..=4).into());

        let mut combined = base.clone();
        combined.insert(slot, &u.scale(&c) + &w);
        let mut only_w = base.clone();
        only_w.insert(slot, w);

        let lhs = substitute(&f, &combined, spec).unwrap();
        let rhs = &substitute(&f, &base, spec).unwrap().scale(&c) + &substitute(&f, &only_w, spec).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn scaling_by_two_preserves_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = VerifyConfig::default();
    for _ in 0..15 {
        let f = random_multilinear(&mut rng, 2..=3, -3..=3, -2..=2);
        let g = phi_scale(&f, 2).unwrap();
        let a = verify_identity(&f, &two(-2, 3), &cfg).unwrap();
        let b = verify_identity(&g, &two(-4, 6), &cfg).unwrap();
        assert_eq!(a.holds(), b.holds(), "{f}");
    }
}

#[test]
fn odd_degrees_are_empty_on_even_support() {
    for d in [-5, -3, -1, 1, 3, 5] {
        let f = GradedPolynomial::variable(zgrade_core::DegreeGroup::Z, zgrade_core::GradedVariable::new(1, d)).unwrap();
        match verify_identity(&f, &two(-4, 6), &VerifyConfig::default()).unwrap() {
            zgrade_core::Verdict::Holds(h) => assert!(h.empty_component),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn projection_holding_implies_original_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let cfg = VerifyConfig::default();
    for _ in 0..20 {
        let f = random_multilinear(&mut rng, 2..=3, -3..=3, -2..=2);
        let p = pi_project(&f).unwrap();
        for spec in [two(-1, 1), two(-2, 3), GradingSpec::ektilde(2, SplitRule::Alternating).unwrap()] {
            let z2 = verify_identity(&p, &spec.induced_z2().unwrap(), &cfg).unwrap();
            if z2.holds() {
                assert!(verify_identity(&f, &spec, &cfg).unwrap().holds(), "{f} on {spec}");
            }
        }
    }
}

#[test]
fn full_support_has_no_monomial_identities() {
    let cfg = VerifyConfig {
        generators: 24,
        max_len: 12,
        mode: Mode::Targeted,
    };
    for spec in [two(-1, 1), two(-2, 3), two(-3, 5), two(-1, 2)] {
        for d in -6..=6 {
            let f = parse_poly(&format!("x1:{d}")).unwrap();
            assert!(find_witness(&f, &spec, &cfg).unwrap().is_some(), "x1:{d} on {spec}");
        }
    }
}

#[test]
fn exhaustive_witness_is_lexicographically_least() {
    let f = parse_poly("[x1:1, x2:1]").unwrap();
    let spec = two(-1, 1);
    let cfg = VerifyConfig::default();
    let verdict = verify_identity(&f, &spec, &cfg).unwrap();
    let r = verdict.refutation().unwrap();
    // Every tuple before the reported one evaluates to zero.
    let pool = spec.monomials_of_degree(1, 3, 8, None, Monomial::ONE);
    let mut eval = MonomialEvaluator::new(&f).unwrap();
    for &a in &pool {
        for &b in &pool {
            if (a, b) == (r.witness[0].monomial, r.witness[1].monomial) {
                return;
            }
            assert!(eval.evaluate(&[a, b]).is_zero());
        }
    }
    panic!("witness not among candidates");
}
