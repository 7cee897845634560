//! Direct formulas used as references for the recursive engine.

use gerstenhaber::{Frame, Multivec, Poly};

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        // insert n-1 at every position; moving it left past j entries flips j times
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let moved = p.len() - pos;
            out.push((q, if moved % 2 == 0 { s } else { -s }));
        }
    }
    out
}

/// Leibniz-formula determinant.
pub fn det(m: &[Vec<Poly>], one: &Poly) -> Poly {
    let n = m.len();
    let mut acc = one - one;
    for (p, s) in permutations(n) {
        let mut t = one.clone();
        for (row, &col) in p.iter().enumerate() {
            t = &t * &m[row][col];
        }
        acc = if s > 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// `Π(df¹,…,dfᵏ)` for a multivector over a coordinate tangent frame whose
/// generator `i` is `∂/∂(variable i)`.
pub fn eval_on_differentials(pi: &Multivec, fs: &[Poly]) -> Poly {
    let one = Poly::one(pi.vars());
    let mut acc = &one - &one;
    if pi.degree() < 0 {
        return acc;
    }
    assert_eq!(fs.len(), pi.degree() as usize, "arity");
    for (idx, c) in pi.terms() {
        let m: Vec<Vec<Poly>> = fs
            .iter()
            .map(|f| idx.iter().map(|&i| f.derivative(i)).collect())
            .collect();
        acc = &acc + &(c * &det(&m, &one));
    }
    acc
}

/// `P(ξ¹,…,ξᵏ)` with ξ given by components on the frame generators.
pub fn eval_on_covectors(p: &Multivec, xis: &[Vec<Poly>]) -> Poly {
    let one = Poly::one(p.vars());
    let mut acc = &one - &one;
    for (idx, c) in p.terms() {
        let m: Vec<Vec<Poly>> = xis
            .iter()
            .map(|xi| idx.iter().map(|&i| xi[i].clone()).collect())
            .collect();
        acc = &acc + &(c * &det(&m, &one));
    }
    acc
}

/// Subsets of `0..n` of size `k`, increasing.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// Sign of the permutation that rearranges the tuple `(A', A)` into the
/// original order.
fn shuffle_sign(a: &[usize], n: usize) -> i32 {
    let comp: Vec<usize> = (0..n).filter(|i| !a.contains(i)).collect();
    let seq: Vec<usize> = comp.iter().chain(a.iter()).copied().collect();
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `[Π,Π'](df¹,…,df^{k+k'−1})` by the closed subset-sum formula.
pub fn closed_schouten_eval(pi: &Multivec, pj: &Multivec, fs: &[Poly]) -> Poly {
    let k = pi.degree();
    let kp = pj.degree();
    let n = fs.len();
    assert_eq!(n as isize, k + kp - 1);
    let one = Poly::one(pi.vars());
    let mut first = &one - &one;
    let mut second = &one - &one;
    if kp >= 0 && (kp as usize) <= n {
        for a in subsets(n, kp as usize) {
            let fa: Vec<Poly> = a.iter().map(|&i| fs[i].clone()).collect();
            let rest: Vec<Poly> = (0..n).filter(|i| !a.contains(i)).map(|i| fs[i].clone()).collect();
            let inner = eval_on_differentials(pj, &fa);
            let mut args = vec![inner];
            args.extend(rest);
            if args.len() as isize != k {
                continue;
            }
            let t = eval_on_differentials(pi, &args);
            first = if shuffle_sign(&a, n) > 0 { &first + &t } else { &first - &t };
        }
    }
    if k >= 0 && (k as usize) <= n {
        for b in subsets(n, k as usize) {
            let fb: Vec<Poly> = b.iter().map(|&i| fs[i].clone()).collect();
            let rest: Vec<Poly> = (0..n).filter(|i| !b.contains(i)).map(|i| fs[i].clone()).collect();
            let inner = eval_on_differentials(pi, &fb);
            let mut args = vec![inner];
            args.extend(rest);
            if args.len() as isize != kp {
                continue;
            }
            let t = eval_on_differentials(pj, &args);
            second = if shuffle_sign(&b, n) > 0 { &second + &t } else { &second - &t };
        }
    }
    if (k * kp) % 2 != 0 {
        second = -second;
    }
    let total = &first + &second;
    if (k + 1) % 2 == 0 {
        total
    } else {
        -total
    }
}

/// The bracket as a multivector, assembled component by component from
/// [`closed_schouten_eval`] on coordinate functions.
pub fn closed_schouten(frame: &Frame, pi: &Multivec, pj: &Multivec) -> Multivec {
    let deg = pi.degree() + pj.degree() - 1;
    if deg < 0 {
        return Multivec::zero(frame, deg);
    }
    let n = frame.len();
    let vars = frame.vars();
    let mut terms = Vec::new();
    for idx in subsets(n, deg as usize) {
        let fs: Vec<Poly> = idx.iter().map(|&i| Poly::var(vars, i)).collect();
        terms.push((idx, closed_schouten_eval(pi, pj, &fs)));
    }
    Multivec::from_terms(frame, deg as usize, terms).expect("indices in range")
}

/// Brute-force `(P∧Q)(ξ¹…ξ^{p+q})` as the signed sum over (p,q)-shuffles
/// of `P(ξ_A)·Q(ξ_A')`.
pub fn wedge_eval_by_shuffles(p: &Multivec, q: &Multivec, xis: &[Vec<Poly>]) -> Poly {
    let pd = p.degree() as usize;
    let n = xis.len();
    let one = Poly::one(p.vars());
    let mut acc = &one - &one;
    for a in subsets(n, pd) {
        let rest: Vec<usize> = (0..n).filter(|i| !a.contains(i)).collect();
        let xa: Vec<Vec<Poly>> = a.iter().map(|&i| xis[i].clone()).collect();
        let xr: Vec<Vec<Poly>> = rest.iter().map(|&i| xis[i].clone()).collect();
        let t = &eval_on_covectors(p, &xa) * &eval_on_covectors(q, &xr);
        // sign of the shuffle (A, A') relative to the original order
        let seq: Vec<usize> = a.iter().chain(rest.iter()).copied().collect();
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if seq[i] > seq[j] {
                    inv += 1;
                }
            }
        }
        acc = if inv % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}
