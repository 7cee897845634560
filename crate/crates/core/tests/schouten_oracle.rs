use gerstenhaber::{Algebroid, Multivec};
use gerstenhaber_testkit::{monomial_multivectors, oracle::closed_schouten};

#[test]
fn recursive_bracket_matches_closed_formula_on_small_monomials() {
    let a = Algebroid::tangent(3);
    let mons = monomial_multivectors(a.frame(), 3);
    let mut checked = 0;
    for p in &mons {
        for q in &mons {
            let lhs: Multivec = a.bracket(p, q);
            let rhs = closed_schouten(a.frame(), p, q);
            assert_eq!(lhs, rhs, "P = {p}, Q = {q}");
            checked += 1;
        }
    }
    assert_eq!(checked, mons.len() * mons.len());
}
