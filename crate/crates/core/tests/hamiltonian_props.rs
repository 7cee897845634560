use gerstenhaber::*;
use gerstenhaber_testkit::gen::Gen;
use gerstenhaber_testkit::models::*;

#[test]
fn models_are_hamiltonian() {
    for case in [quaternion_case(), angular_momentum_case(), base_case(gerstenhaber_testkit::gen::so3_double_qlb())] {
        let r = check_hamiltonian(&case.qlb, &case.action, &case.pi).unwrap();
        assert!(r.passed(), "{}: {r}", case.name);
    }
}

#[test]
fn random_base_cases() {
    for seed in 0..40 {
        let case = base_case(Gen::new(seed).qlb());
        let r = check_hamiltonian(&case.qlb, &case.action, &case.pi).unwrap();
        assert!(r.passed(), "seed {seed}: {r}");
    }
}

fn hamiltonian_config() -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases: 40,
        ..Default::default()
    }
}

proptest::proptest! {
    #![proptest_config(hamiltonian_config())]

    #[test]
    fn twist_covariance(seed in proptest::prelude::any::<u64>()) {
        let mut g = Gen::new(seed);
        let case = g.hamiltonian();
        let r = check_hamiltonian(&case.qlb, &case.action, &case.pi).unwrap();
        proptest::prop_assume!(r.passed());
        let t = g.twist_bivector(&case.qlb);
        let twisted = case.qlb.twist_unchecked(&t).unwrap();
        let pi = &case.pi + &case.action.hat(&t).unwrap();
        let r = check_hamiltonian(&twisted, &case.action, &pi).unwrap();
        proptest::prop_assert!(r.passed(), "{}: {}", case.name, r);
    }

    #[test]
    fn hat_is_a_morphism_of_brackets(seed in proptest::prelude::any::<u64>()) {
        let mut g = Gen::new(seed);
        let case = g.hamiltonian();
        let a = case.qlb.algebroid().clone();
        let x = case.action.space();
        let shape = gerstenhaber_testkit::gen::Shape { max_degree: 1, max_terms: 2 };
        let (k, l) = (g.below(3), g.below(3));
        let p = g.section(&a, k, shape);
        let q = g.section(&a, l, shape);
        let hat = |m: &Multivec| case.action.hat(m).unwrap();
        proptest::prop_assert_eq!(hat(&a.bracket(&p, &q)), x.bracket(&hat(&p), &hat(&q)));
        proptest::prop_assert_eq!(hat(&p.wedge(&q)), hat(&p).wedge(&hat(&q)));
    }
}

#[test]
fn perturbed_bivector_is_not_hamiltonian() {
    let case = angular_momentum_case();
    let x = case.action.space();
    let bump = gerstenhaber_testkit::mv(x.frame(), 2, &[(&[0, 1], "1")]);
    let r = check_hamiltonian(&case.qlb, &case.action, &(&case.pi + &bump)).unwrap();
    assert!(!r.passed());
    assert!(!r.check("momentum-maps-bivectors").unwrap().passed() || !r.check("bracket-with-momentum").unwrap().passed());
}
