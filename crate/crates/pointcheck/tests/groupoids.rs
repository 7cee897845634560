use nalgebra::DMatrix;
use pointcheck::multivector::combinations;
use pointcheck::{
    graph_multiplicativity_check, run_sample_set, Convention, GroupName, GroupoidChartSample, GxG, MatrixGroup,
    PairGroupoid, PointedMultivector, Reading, SampleSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_mv(rng: &mut ChaCha8Rng, d: usize, k: usize) -> PointedMultivector {
    let n = combinations(d, k).len();
    PointedMultivector::from_components(d, k, (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

#[test]
fn pair_groupoid_classification() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(k.max(2)..=4);
        let pi = random_mv(&mut rng, n, k);
        let right = if k % 2 == 1 { 1.0 } else { -1.0 };
        for (second, expect) in [(right, true), (-right, false), (0.0, false)] {
            let model = PairGroupoid { pi: pi.clone(), second };
            let sample = GroupoidChartSample::random(&model, &mut rng);
            let r = graph_multiplicativity_check(&sample, 1e-6, 1e-5).unwrap();
            assert_eq!(r.passed, expect, "k={k} n={n} c={second}: {r:?}");
        }
    }
}

#[test]
fn so3_bivector_is_multiplicative() {
    let model = GxG::new(MatrixGroup::so3());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let sample = GroupoidChartSample::random(&model, &mut rng);
        let r = graph_multiplicativity_check(&sample, 1e-6, 1e-5).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn swapped_reading_and_flipped_convention_fail() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let swapped = GxG::new(MatrixGroup::so3()).with_reading(Reading::Swapped);
    let flipped = GxG::new(MatrixGroup::so3()).with_convention(Convention::Flipped);
    for model in [swapped, flipped] {
        let sample = GroupoidChartSample::random(&model, &mut rng);
        let r = graph_multiplicativity_check(&sample, 1e-6, 1e-5).unwrap();
        assert!(!r.passed && r.coisotropy.max_residual > 1e-2, "{r:?}");
    }
}

#[test]
fn bivector_at_the_identity() {
    let model = GxG::new(MatrixGroup::so3());
    let id = DMatrix::identity(3, 3);
    let pi = model.bivector(&(id.clone(), id));
    // −Σ ê_i²∧ê_i¹ = Σ ê_i¹∧ê_i²
    let mut expected = PointedMultivector::zeros(6, 2);
    for i in 0..3 {
        expected.add_term(&[i, 3 + i], 1.0);
    }
    assert!(pi.sub(&expected).max_abs() < 1e-14, "{:?}", pi.terms());
}

#[test]
fn pushforward_identities_on_so3_and_sl2() {
    for group in [MatrixGroup::so3(), MatrixGroup::sl2()] {
        let model = GxG::new(group);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let at = (model.group.random(&mut rng), model.group.random(&mut rng));
            let other = model.group.random(&mut rng);
            let c = model.consistency(&at, &other, 1e-5).unwrap();
            assert!(c.coordinate_change < 1e-6, "{:?}: {}", model.group.name(), c.coordinate_change);
            assert!(c.base_projection < 1e-6, "{:?}: {}", model.group.name(), c.base_projection);
            assert!(c.inversion < 1e-6, "{:?}: {}", model.group.name(), c.inversion);
        }
    }
}

#[test]
fn sl2_bivector_is_multiplicative() {
    let model = GxG::new(MatrixGroup::sl2());
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10 {
        let sample = GroupoidChartSample::random(&model, &mut rng);
        assert!(graph_multiplicativity_check(&sample, 1e-6, 1e-5).unwrap().passed);
    }
}

#[test]
fn sample_set_reports_both_readings() {
    let set = SampleSet::new(GroupName::SO3, 3, 4);
    let report = run_sample_set(&set).unwrap();
    assert!(report.passed);
    assert!(report.max_multiplicativity < 1e-6 && report.max_quasi_poisson < 1e-4);
    assert_eq!(report.readings.len(), 2);
    assert!(report.readings[0].multiplicative);
    assert!(!report.readings[1].multiplicative);
    assert!(report.readings[1].coordinate_change > 1e-2);
}

#[test]
fn sample_set_json_defaults() {
    let set: SampleSet = serde_json::from_str(r#"{"seed": 5, "count": 2, "group": "SL2"}"#).unwrap();
    assert_eq!(set, SampleSet::new(GroupName::SL2, 5, 2));
    let full = serde_json::to_string(&set).unwrap();
    let back: SampleSet = serde_json::from_str(&full).unwrap();
    assert_eq!(back, set);
}

#[test]
fn flipped_convention_is_reported_not_hidden() {
    let mut set = SampleSet::new(GroupName::SO3, 0, 2);
    set.convention = Convention::Flipped;
    let report = run_sample_set(&set).unwrap();
    assert!(!report.passed);
    assert!(report.samples.iter().all(|s| !s.multiplicative));
}
