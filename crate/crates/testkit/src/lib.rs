//! Test support: reference formulas and seeded random generators.

pub mod gen;
pub mod models;
pub mod oracle;

use gerstenhaber::{Frame, Monomial, Multivec, Poly};

/// Every monomial multivector `x^α ∂_I` over `frame` with `|α| + |I| ≤ max_total`.
pub fn monomial_multivectors(frame: &Frame, max_total: u32) -> Vec<Multivec> {
    let vars = frame.vars();
    let nv = vars.len();
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..nv {
        let mut next = Vec::new();
        for e in &exps {
            let used: u32 = e.iter().sum();
            for k in 0..=(max_total - used) {
                let mut f = e.clone();
                f.push(k);
                next.push(f);
            }
        }
        exps = next;
    }
    let mut out = Vec::new();
    for deg in 0..=frame.len().min(max_total as usize) {
        for idx in gerstenhaber::exterior::multi_indices(frame.len(), deg) {
            for e in &exps {
                if e.iter().sum::<u32>() as usize + deg > max_total as usize {
                    continue;
                }
                let c = Poly::from_terms(vars, [(Monomial::from_exponents(e.clone()), gerstenhaber::rat(1, 1))]);
                out.push(Multivec::monomial(frame, idx.clone(), c));
            }
        }
    }
    out
}

/// A polynomial from its textual form.
pub fn poly(vars: &gerstenhaber::VarSet, text: &str) -> Poly {
    gerstenhaber::parse_scalar(text, vars).unwrap()
}

/// A degree-`k` multivector from `(indices, coefficient text)` pairs.
pub fn mv(frame: &Frame, k: usize, terms: &[(&[usize], &str)]) -> Multivec {
    let t = terms.iter().map(|(i, c)| (i.to_vec(), poly(frame.vars(), c)));
    Multivec::from_terms(frame, k, t).unwrap()
}
