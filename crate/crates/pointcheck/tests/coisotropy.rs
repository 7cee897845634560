use nalgebra::{DMatrix, DVector};
use pointcheck::multivector::combinations;
use pointcheck::{
    compose_relation_check, is_coisotropic, CompositionOutcome, Error, PointedMultivector, Subspace,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(d: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(d, |j, _| if i == j { 1.0 } else { 0.0 })
}

fn random_mv(rng: &mut ChaCha8Rng, d: usize, k: usize) -> PointedMultivector {
    let n = combinations(d, k).len();
    PointedMultivector::from_components(d, k, (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

fn random_vec(rng: &mut ChaCha8Rng, d: usize) -> DVector<f64> {
    DVector::from_fn(d, |_, _| rng.gen_range(-1.0..1.0))
}

/// Orthonormalizes, dropping vectors already in the span.
fn gram_schmidt(vs: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for q in &out {
            w -= q * q.dot(&w);
        }
        if w.norm() > 1e-9 {
            out.push(w.normalize());
        }
    }
    out
}

/// Orthonormal basis of the orthogonal complement of span(vs) in ℝ^d.
fn complement(vs: &[DVector<f64>], d: usize) -> Vec<DVector<f64>> {
    let q = gram_schmidt(vs);
    let mut all = q.clone();
    all.extend((0..d).map(|i| e(d, i)));
    gram_schmidt(&all).split_off(q.len())
}

/// Greedily draws `m` covectors on which the alternating form `eval`
/// vanishes: each new one solves the linear conditions from the earlier
/// ones. Their common kernel is then coisotropic by construction.
fn isotropic_covectors<F>(eval: F, d: usize, k: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<DVector<f64>>
where
    F: Fn(&[DVector<f64>]) -> f64,
{
    let mut xs: Vec<DVector<f64>> = Vec::new();
    for _ in 0..m {
        let mut rows = Vec::new();
        for sub in combinations(xs.len(), k - 1) {
            let row = DVector::from_fn(d, |j, _| {
                let mut args: Vec<DVector<f64>> = sub.iter().map(|&i| xs[i].clone()).collect();
                args.push(e(d, j));
                eval(&args)
            });
            rows.push(row);
        }
        let q = gram_schmidt(&rows);
        if q.len() >= d {
            break;
        }
        let mut x = random_vec(rng, d);
        for r in &q {
            x -= r * r.dot(&x);
        }
        xs.push(x);
    }
    xs
}

#[test]
fn whole_space_is_coisotropic() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pi = random_mv(&mut rng, 4, 2);
    assert!(is_coisotropic(&pi, &Subspace::whole(4), 1e-6).unwrap().passed);
}

#[test]
fn b1_wedge_b2_on_lines() {
    let mut pi = PointedMultivector::zeros(3, 2);
    pi.add_term(&[0, 1], 1.0);
    let ok = is_coisotropic(&pi, &Subspace::new(3, vec![e(3, 0)]).unwrap(), 1e-6).unwrap();
    assert!(ok.passed && ok.max_residual < 1e-12);
    let bad = is_coisotropic(&pi, &Subspace::new(3, vec![e(3, 2)]).unwrap(), 1e-6).unwrap();
    assert!(!bad.passed);
    assert!((bad.max_residual - 1.0).abs() < 1e-12);
}

#[test]
fn dependent_basis_is_rejected() {
    let v = DVector::from_vec(vec![1.0, 2.0, 0.0]);
    let err = Subspace::new(3, vec![v.clone(), v * 3.0]).unwrap_err();
    assert!(matches!(err, Error::RankDeficient(_)));
}

#[test]
fn evaluation_matches_bilinear_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pi = random_mv(&mut rng, 5, 2);
    let p = pi.bivector_matrix();
    let (x, y) = (random_vec(&mut rng, 5), random_vec(&mut rng, 5));
    let direct = (x.transpose() * &p * &y)[(0, 0)];
    assert!((pi.eval(&[x, y]) - direct).abs() < 1e-12);
}

#[test]
fn graph_of_identity_maps_c_to_itself() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 1..=3 {
        let d = 5;
        let pi = random_mv(&mut rng, d, k);
        let ann = isotropic_covectors(|xs| pi.eval(xs), d, k, 3, &mut rng);
        let c = Subspace::new(d, complement(&ann, d)).unwrap();
        let graph: Vec<DVector<f64>> = (0..d)
            .map(|i| DVector::from_fn(2 * d, |j, _| if j % d == i { 1.0 } else { 0.0 }))
            .collect();
        let r = Subspace::new(2 * d, graph).unwrap();
        // Δ is coisotropic for Π ⊕ (−1)^{k+1}Π, not for Π ⊕ Π when k is even;
        // the composition uses the sign-corrected second factor
        let second = pi.scale(if k % 2 == 1 { 1.0 } else { -1.0 });
        let report = compose_relation_check(&pi, &second, &r, &c, 1e-9).unwrap();
        assert_eq!(report.outcome, CompositionOutcome::Pass, "k = {k}");
        assert_eq!(report.image_rank, Some(c.rank()));
    }
}

#[test]
fn non_coisotropic_relation_fails_the_precondition() {
    let mut pi = PointedMultivector::zeros(2, 2);
    pi.add_term(&[0, 1], 1.0);
    // R = span of the first factor only: its annihilator is 0 ⊕ V₂*
    let r = Subspace::new(4, vec![e(4, 0), e(4, 1)]).unwrap();
    let c = Subspace::whole(2);
    let report = compose_relation_check(&pi, &pi, &r, &c, 1e-9).unwrap();
    assert_eq!(report.outcome, CompositionOutcome::PreconditionFailed);
    assert!(!report.relation.passed);
    assert!(report.conclusion.is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn diagonal_is_coisotropic(seed in any::<u64>(), d in 1usize..5, k in 1usize..4) {
        prop_assume!(k <= d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pi = random_mv(&mut rng, d, k);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let sum = PointedMultivector::direct_sum(&[(&pi, 1.0), (&pi, sign)]);
        let diag: Vec<DVector<f64>> = (0..d)
            .map(|i| DVector::from_fn(2 * d, |j, _| if j % d == i { 1.0 } else { 0.0 }))
            .collect();
        let res = is_coisotropic(&sum, &Subspace::new(2 * d, diag).unwrap(), 1e-9).unwrap();
        prop_assert!(res.passed, "{res:?}");
    }

    #[test]
    fn composition_of_coisotropic_relations(seed in any::<u64>(), d1 in 1usize..4, d2 in 1usize..4, k in 1usize..4) {
        prop_assume!(k <= d1 && k <= d2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pi1 = random_mv(&mut rng, d1, k);
        let pi2 = random_mv(&mut rng, d2, k);
        let split = |xs: &[DVector<f64>], o: usize, n: usize| -> Vec<DVector<f64>> {
            xs.iter().map(|x| x.rows(o, n).into_owned()).collect()
        };
        let m_r = rng.gen_range(0..=(d1 + d2) / 2 + 1);
        let r_ann = isotropic_covectors(
            |xs| pi1.eval(&split(xs, 0, d1)) + pi2.eval(&split(xs, d1, d2)),
            d1 + d2, k, m_r, &mut rng,
        );
        let m_c = rng.gen_range(0..=d2);
        let c_ann = isotropic_covectors(|xs| pi2.eval(xs), d2, k, m_c, &mut rng);
        let r = Subspace::span(d1 + d2, &complement(&r_ann, d1 + d2));
        let c = Subspace::span(d2, &complement(&c_ann, d2));
        let report = compose_relation_check(&pi1, &pi2, &r, &c, 1e-8).unwrap();
        prop_assert_eq!(report.outcome, CompositionOutcome::Pass, "{:?}", report);
    }

    #[test]
    fn push_forward_is_functorial(seed in any::<u64>(), k in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pi = random_mv(&mut rng, 4, k);
        let a = DMatrix::from_fn(3, 4, |_, _| rng.gen_range(-1.0..1.0));
        let b = DMatrix::from_fn(5, 3, |_, _| rng.gen_range(-1.0..1.0));
        let lhs = pi.push_forward(&a).push_forward(&b);
        let rhs = pi.push_forward(&(&b * &a));
        prop_assert!(lhs.sub(&rhs).max_abs() < 1e-10);
    }
}
