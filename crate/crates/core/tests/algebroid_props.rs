use gerstenhaber::{Algebroid, Multivec};
use gerstenhaber_testkit::gen::{self, Gen, Shape};
use proptest::prelude::*;

fn sign(odd: isize) -> bool {
    odd.rem_euclid(2) == 1
}

fn small() -> Shape {
    Shape { max_degree: 2, max_terms: 2 }
}

fn degrees(g: &mut Gen, a: &Algebroid, n: usize) -> Vec<Multivec> {
    (0..n)
        .map(|_| {
            let k = g.below(a.rank().min(3) + 1);
            g.section(a, k, small())
        })
        .collect()
}

#[test]
fn families_validate() {
    for a in [
        Algebroid::tangent(4),
        gen::so3_action(),
        gen::lie_algebra(&gen::so3_constants(), "e"),
        gen::lie_algebra(&gen::sl2_constants(), "u"),
        gen::lie_poisson(&gen::so3_constants()),
        gen::lie_poisson(&gen::heisenberg_constants()),
    ] {
        let r = a.validate();
        assert!(r.passed(), "{a:?}\n{r}");
    }
}

#[test]
fn so3_bracket_of_bivector_with_generator() {
    let a = gen::so3_action();
    let p = a.generator(0).wedge(&a.generator(1));
    assert!(a.bracket(&p, &a.generator(2)).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn frame_changes_stay_lie(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let a = g.algebroid();
        let r = a.validate();
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn graded_antisymmetry(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let a = g.algebroid();
        let v = degrees(&mut g, &a, 2);
        let (p, q) = (&v[0], &v[1]);
        let lhs = a.bracket(p, q);
        let rhs = a.bracket(q, p);
        let s = sign((p.degree() - 1) * (q.degree() - 1));
        let sum = if s { &lhs - &rhs } else { &lhs + &rhs };
        prop_assert!(sum.is_zero(), "{}", sum);
    }

    #[test]
    fn graded_jacobi(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let a = g.algebroid();
        let v = degrees(&mut g, &a, 3);
        let (p, q, r) = (&v[0], &v[1], &v[2]);
        // ⟦P,⟦Q,R⟧⟧ = ⟦⟦P,Q⟧,R⟧ + (−1)^{(p−1)(q−1)}⟦Q,⟦P,R⟧⟧
        let lhs = a.bracket(p, &a.bracket(q, r));
        let t1 = a.bracket(&a.bracket(p, q), r);
        let t2 = a.bracket(q, &a.bracket(p, r));
        let rhs = if sign((p.degree() - 1) * (q.degree() - 1)) { &t1 - &t2 } else { &t1 + &t2 };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let a = g.algebroid();
        let v = degrees(&mut g, &a, 3);
        let (p, q, r) = (&v[0], &v[1], &v[2]);
        let lhs = a.bracket(p, &q.wedge(r));
        let t1 = a.bracket(p, q).wedge(r);
        let t2 = q.wedge(&a.bracket(p, r));
        let rhs = if sign((p.degree() - 1) * q.degree()) { &t1 - &t2 } else { &t1 + &t2 };
        prop_assert_eq!(lhs, rhs);
    }
}
