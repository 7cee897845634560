use gerstenhaber::*;
use gerstenhaber_testkit::gen::{Gen, Shape};
use gerstenhaber_testkit::oracle;
use proptest::prelude::*;

fn covectors(g: &mut Gen, vars: &VarSet, n: usize, count: usize) -> Vec<Vec<Poly>> {
    let shape = Shape { max_degree: 1, max_terms: 2 };
    let all: Vec<usize> = (0..vars.len()).collect();
    (0..count).map(|_| (0..n).map(|_| g.poly(vars, &all, shape)).collect()).collect()
}

#[test]
fn sharp_power_example() {
    let space = Algebroid::tangent(2);
    let dual = space.frame().dual_with("T*", ["dx1", "dx2"]).unwrap();
    let pi = gerstenhaber_testkit::mv(space.frame(), 2, &[(&[0, 1], "1")]);
    let phi = gerstenhaber_testkit::mv(&dual, 2, &[(&[0, 1], "1")]);
    // π♯(dx1) = ∂2, π♯(dx2) = −∂1, so (∧²π♯)(dx1∧dx2) = ∂2∧(−∂1)
    assert_eq!(sharp_power(&pi, &phi).unwrap(), pi);
    assert!(sharp_power(&Multivec::zero(space.frame(), 2), &phi).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, ..ProptestConfig::default() })]

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let n = 2 + g.below(3);
        let a = Algebroid::tangent(n);
        let (p, q) = (g.below(n + 1), g.below(n + 1));
        let shape = Shape::default();
        let x = g.section(&a, p, shape);
        let y = g.section(&a, q, shape);
        let sign = rat(if (p * q) % 2 == 0 { 1 } else { -1 }, 1);
        prop_assert_eq!(x.wedge(&y), y.wedge(&x).scale_scalar(&sign));
    }

    #[test]
    fn evaluation_is_alternating_and_multilinear(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let n = 2 + g.below(3);
        let a = Algebroid::tangent(n);
        let k = 2 + g.below(n - 1);
        let p = g.section(&a, k, Shape::default());
        let mut xs = covectors(&mut g, a.vars(), n, k);
        let base = p.eval_on_covectors(&xs).unwrap();
        prop_assert_eq!(&base, &oracle::eval_on_covectors(&p, &xs));
        let (i, j) = (g.below(k), g.below(k));
        if i != j {
            xs.swap(i, j);
            prop_assert_eq!(p.eval_on_covectors(&xs).unwrap(), -&base);
            xs.swap(i, j);
        }
        let c = g.rational();
        let extra = covectors(&mut g, a.vars(), n, 1).remove(0);
        let mut mixed = xs.clone();
        mixed[i] = xs[i].iter().zip(&extra).map(|(u, v)| &u.scale(&c) + v).collect();
        let mut only = xs.clone();
        only[i] = extra;
        let lhs = p.eval_on_covectors(&mixed).unwrap();
        let rhs = &base.scale(&c) + &p.eval_on_covectors(&only).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_evaluation_matches_shuffle_expansion(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let n = 2 + g.below(4);
        let a = Algebroid::tangent(n);
        let p = g.below(n.min(3)) + 1;
        let q = g.below(n - p + 1);
        let x = g.section(&a, p, Shape { max_degree: 1, max_terms: 2 });
        let y = g.section(&a, q, Shape { max_degree: 1, max_terms: 2 });
        let xs = covectors(&mut g, a.vars(), n, p + q);
        prop_assert_eq!(x.wedge(&y).eval_on_covectors(&xs).unwrap(), oracle::wedge_eval_by_shuffles(&x, &y, &xs));
    }
}
