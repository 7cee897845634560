//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned.
//!
//! Criterion 5 is known to fail (the adjoint action on ℝ⁶ does not give a
//! quasi-Lie bialgebroid); it is reported, not hidden, and does not fail the
//! target. Any other failure, or criterion 5 starting to pass, does.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gerstenhaber::{
    check_hamiltonian, pi_s, rat, transformation_qlb, twisted_poisson_qlb, Algebroid, Differential, Error, Multivec,
    Poly, Rational, TotalSpace, TwistedPoisson,
};
use gerstenhaber_testkit::gen::{Gen, Shape};
use gerstenhaber_testkit::models::{adjoint_action, quaternion_action, so3, so3_double};
use gerstenhaber_testkit::{monomial_multivectors, mv, oracle::closed_schouten};
use pointcheck::multivector::combinations;
use pointcheck::{graph_multiplicativity_check, GroupoidChartSample, GxG, MatrixGroup, PairGroupoid, PointedMultivector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MULT_TOL: f64 = 1e-6;
const FD_TOL: f64 = 1e-4;
const FD_STEP: f64 = 1e-5;

/// Criteria that cannot pass as stated.
const KNOWN_UNATTAINABLE: &[u32] = &[5];

struct Line {
    id: u32,
    passed: bool,
    detail: String,
}

fn timed<F: FnOnce() -> (bool, String)>(id: u32, limit: Option<Duration>, f: F) -> Line {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.map_or(true, |l| elapsed <= l);
    let limit = limit.map_or(String::new(), |l| format!(" (limit {} s)", l.as_secs()));
    Line { id, passed: ok && in_time, detail: format!("{detail}; {:.2} s{limit}", elapsed.as_secs_f64()) }
}

fn odd(n: isize) -> bool {
    n.rem_euclid(2) == 1
}

fn c1_schouten_oracle() -> (bool, String) {
    let a = Algebroid::tangent(3);
    let mons = monomial_multivectors(a.frame(), 5);
    let mut bad = 0usize;
    for p in &mons {
        for q in &mons {
            if a.bracket(p, q) != closed_schouten(a.frame(), p, q) {
                bad += 1;
            }
        }
    }
    let n = mons.len() * mons.len();
    (bad == 0, format!("schouten oracle equivalence: {n} monomial pairs on TM(R^3), {bad} mismatches"))
}

fn c2_graded_lie() -> (bool, String) {
    let shape = Shape { max_degree: 2, max_terms: 2 };
    let mut bad = Vec::new();
    for seed in 0..200u64 {
        let mut g = Gen::new(seed);
        let a = g.algebroid();
        let sec = |g: &mut Gen| {
            let k = g.below(a.rank().min(3) + 1);
            g.section(&a, k, shape)
        };
        let (p, q, r) = (sec(&mut g), sec(&mut g), sec(&mut g));
        let (dp, dq) = (p.degree() - 1, q.degree() - 1);
        let anti = {
            let (l, rr) = (a.bracket(&p, &q), a.bracket(&q, &p));
            if odd(dp * dq) { &l - &rr } else { &l + &rr }.is_zero()
        };
        let jacobi = {
            let lhs = a.bracket(&p, &a.bracket(&q, &r));
            let t1 = a.bracket(&a.bracket(&p, &q), &r);
            let t2 = a.bracket(&q, &a.bracket(&p, &r));
            lhs == if odd(dp * dq) { &t1 - &t2 } else { &t1 + &t2 }
        };
        let leibniz = {
            let lhs = a.bracket(&p, &q.wedge(&r));
            let t1 = a.bracket(&p, &q).wedge(&r);
            let t2 = q.wedge(&a.bracket(&p, &r));
            lhs == if odd(dp * q.degree()) { &t1 - &t2 } else { &t1 + &t2 }
        };
        if !(anti && jacobi && leibniz) {
            bad.push(seed);
        }
    }
    (bad.is_empty(), format!("graded Lie axioms: 200 seeded cases, failing seeds {bad:?}"))
}

fn c3_lifts() -> (bool, String) {
    let small = Shape { max_degree: 1, max_terms: 2 };
    let mut hom_bad = Vec::new();
    for seed in 0..50u64 {
        let mut g = Gen::new(seed);
        let a = g.algebroid();
        let ts = TotalSpace::new(&a).unwrap();
        let (k, l) = (g.below(3), g.below(3));
        let d1 = g.almost_differential(&a, k, small);
        let d2 = g.almost_differential(&a, l, small);
        let lhs = ts.tangent().bracket(&ts.linear_lift(&d1).unwrap(), &ts.linear_lift(&d2).unwrap());
        let rhs = ts.linear_lift(&d1.commutator(&d2).unwrap()).unwrap();
        if lhs != rhs {
            hom_bad.push(seed);
        }
    }
    let mut lift_bad = Vec::new();
    for seed in 0..50u64 {
        let mut g = Gen::new(1000 + seed);
        let a = g.algebroid().with_parameters(&["t"]).unwrap();
        let ts = TotalSpace::new(&a).unwrap();
        let tb = ts.tangent();
        let ti = a.vars().index("t").unwrap();
        let mut allowed = a.coords().to_vec();
        allowed.push(ti);
        let timed_section = |g: &mut Gen| {
            let k = g.below(a.rank().min(2) + 1);
            g.multivector(a.frame(), k, &allowed, small)
        };
        let (p, q) = (timed_section(&mut g), timed_section(&mut g));
        let c = |x: &Multivec| ts.complete_lift(x).unwrap();
        let v = |x: &Multivec| ts.vertical_lift(x).unwrap();
        let gl = |x: &Multivec| ts.gauge_lift(x, "t").unwrap();
        let pq = a.bracket(&p, &q);
        let f = g.poly(a.vars(), a.coords(), small);
        let up = |h: &Poly| h.reembed(ts.vars()).unwrap();
        let mut ell = Poly::zero(ts.vars());
        for i in 0..a.rank() {
            ell = &ell + &(&up(&a.anchor_apply(i, &f)) * &ts.fiber_coordinate(i));
        }
        let complete = [
            v(&a.function(f.clone())) == Multivec::function(ts.frame(), up(&f)),
            c(&a.function(f.clone())) == Multivec::function(ts.frame(), ell),
            c(&p.wedge(&q)) == &c(&p).wedge(&v(&q)) + &v(&p).wedge(&c(&q)),
            v(&p.wedge(&q)) == v(&p).wedge(&v(&q)),
            tb.bracket(&c(&p), &c(&q)) == c(&pq),
            tb.bracket(&c(&p), &v(&q)) == v(&pq),
            tb.bracket(&v(&p), &v(&q)).is_zero(),
        ];
        let h = g.poly(a.vars(), &[ti], Shape { max_degree: 3, max_terms: 3 });
        let rk = 1 + g.below(2);
        let r = g.section(&a, rk, small);
        let pid = ts.linear_lift(&Differential::coboundary(&a, &r).unwrap()).unwrap();
        let delta_p = Differential::coboundary(&a, &r).unwrap().apply(&p);
        let gauge = [
            tb.bracket(&gl(&p), &gl(&q)) == gl(&pq),
            gl(&p.wedge(&q)) == &gl(&p).wedge(&v(&q)) + &v(&p).wedge(&gl(&q)),
            gl(&p.scale(&h)) == &gl(&p).scale(&up(&h)) + &v(&p).scale(&up(&h.derivative(ti))),
            tb.bracket(&pid, &gl(&p)) == gl(&delta_p),
        ];
        if !complete.iter().chain(&gauge).all(|&b| b) {
            lift_bad.push(seed);
        }
    }
    (
        hom_bad.is_empty() && lift_bad.is_empty(),
        format!(
            "lift homomorphism on 50 pairs (failing {hom_bad:?}); complete/vertical and gauge identities on 50 time-polynomial sections (failing {lift_bad:?})"
        ),
    )
}

fn c4_double() -> (bool, String) {
    let id: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| rat((i == j) as i64, 1)).collect()).collect();
    let t = gerstenhaber::double(&so3(), &id).unwrap();
    let b = t.extract_qlb().unwrap();
    let mut f_zero = true;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                f_zero &= b.cobracket(i, j, k) == &rat(0, 1);
            }
        }
    }
    let omega = b.omega(0, 1, 2).clone();
    let r = t.validate().merge(b.to_qlb().check());
    (
        f_zero && omega == rat(1, 4) && r.passed(),
        format!("Manin double of so(3), K = id: F = 0 {f_zero}, Omega^123 = {omega} (expected 1/4), check_qlb {}", r.passed()),
    )
}

/// (check_qlb passes, base_field = Π_S, first nonzero residual).
fn transformation_case(act: &gerstenhaber::PolynomialAction<Rational>) -> (bool, bool, String) {
    let t = so3_double();
    let (b, act) = act.in_triple_basis(&t).unwrap();
    let (qlb, report) = transformation_qlb(&b, &act).unwrap();
    let (pi, _) = pi_s(&b, &act).unwrap();
    let (base, _) = qlb.delta().base_field();
    let equal = base.with_frame(pi.frame()).unwrap() == pi;
    let first = report.defects().into_iter().next().map(|(l, v)| format!("{l} = {v}")).unwrap_or_default();
    (report.passed(), equal, first)
}

fn c5_transformation() -> (bool, String) {
    let (ok, equal, first) = transformation_case(&adjoint_action(&so3_double()));
    (
        ok && equal,
        format!("transformation QLB, adjoint so(3)+so(3) on R^6: check_qlb {ok}, base_field = Pi_S {equal}; first residual {first}"),
    )
}

fn quaternion_control() -> String {
    let (ok, equal, _) = transformation_case(&quaternion_action(&so3_double()));
    format!("dressing action on R^4 (quaternions): check_qlb {ok}, base_field = Pi_S {equal}")
}

fn c6_twists() -> (bool, String) {
    let shape = Shape { max_degree: 2, max_terms: 2 };
    let mut bad = Vec::new();
    for seed in 0..100u64 {
        let mut g = Gen::new(seed);
        let q = g.qlb();
        let t = g.section(q.algebroid(), 2, shape);
        let qt = q.twist_unchecked(&t).unwrap();
        let back = qt.twist_unchecked(&-&t).unwrap();
        if !(q.check().passed() && qt.check().passed() && back == q) {
            bad.push(seed);
        }
    }
    (bad.is_empty(), format!("twist closure and involutivity: 100 seeded twists, failing seeds {bad:?}"))
}

fn c7_twisted_poisson() -> (bool, String) {
    let space = Algebroid::tangent(3);
    let dual = space.frame().dual_with("T*M", ["dx1", "dx2", "dx3"]).unwrap();
    let phi = mv(&dual, 3, &[(&[0, 1, 2], "1")]);
    let tp = TwistedPoisson { space: space.clone(), pi: mv(space.frame(), 2, &[(&[0, 1], "1")]), phi: phi.clone() };
    let pre = tp.preconditions().unwrap().passed();
    let (_, r) = twisted_poisson_qlb(&tp).unwrap();
    let bad = TwistedPoisson { space: space.clone(), pi: mv(space.frame(), 2, &[(&[0, 1], "1"), (&[0, 2], "x1")]), phi };
    let defect = match twisted_poisson_qlb(&bad) {
        Err(Error::Precondition { defects, .. }) if !defects.is_empty() => Some(format!("{} = {}", defects[0].0, defects[0].1)),
        _ => None,
    };
    (
        pre && r.passed() && defect.is_some(),
        format!(
            "twisted Poisson on R^3: preconditions {pre}, check_qlb {}; perturbed pi rejected with {}",
            r.passed(),
            defect.unwrap_or_else(|| "NO DEFECT".into())
        ),
    )
}

fn random_mv(rng: &mut ChaCha8Rng, d: usize, k: usize) -> PointedMultivector {
    let n = combinations(d, k).len();
    PointedMultivector::from_components(d, k, (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

fn c8_multiplicativity() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut wrong = 0;
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(k.max(2)..=4);
        let pi = random_mv(&mut rng, n, k);
        let right = if k % 2 == 1 { 1.0 } else { -1.0 };
        for (second, expect) in [(right, true), (-right, false)] {
            let model = PairGroupoid { pi: pi.clone(), second };
            let sample = GroupoidChartSample::random(&model, &mut rng);
            let r = graph_multiplicativity_check(&sample, MULT_TOL, FD_STEP).unwrap();
            if r.passed != expect {
                wrong += 1;
            }
        }
    }
    let model = GxG::new(MatrixGroup::so3());
    let mut worst: f64 = 0.0;
    let mut all = true;
    for _ in 0..20 {
        let sample = GroupoidChartSample::random(&model, &mut rng);
        let r = graph_multiplicativity_check(&sample, MULT_TOL, FD_STEP).unwrap();
        all &= r.passed;
        worst = worst.max(r.coisotropy.max_residual);
    }
    (
        wrong == 0 && all,
        format!("pair groupoid: 100 samples, {wrong} misclassified; SO(3)xSO(3): 20 pairs, max residual {worst:.2e} (tol {MULT_TOL:e})"),
    )
}

fn c9_quasi_poisson() -> (bool, String) {
    let model = GxG::new(MatrixGroup::so3());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst, mut rich): (f64, f64) = (0.0, 0.0);
    let mut all = true;
    for _ in 0..10 {
        let at = (model.group.random(&mut rng), model.group.random(&mut rng));
        let r = model.quasi_poisson_residual(&at, FD_STEP, FD_TOL).unwrap();
        all &= r.passed && r.stable;
        worst = worst.max(r.residual);
        rich = rich.max(r.richardson_error);
    }
    (
        all,
        format!("quasi-Poisson identity: 10 points, max residual {worst:.2e}, Richardson {rich:.2e} (tol {FD_TOL:e})"),
    )
}

fn c10_hamiltonian() -> (bool, String) {
    let (mut tried, mut base_pass, mut bad) = (0, 0, Vec::new());
    for seed in 0..40u64 {
        let mut g = Gen::new(seed);
        let case = g.hamiltonian();
        tried += 1;
        if !check_hamiltonian(&case.qlb, &case.action, &case.pi).unwrap().passed() {
            continue;
        }
        base_pass += 1;
        let t = g.twist_bivector(&case.qlb);
        let twisted = case.qlb.twist_unchecked(&t).unwrap();
        let pi = &case.pi + &case.action.hat(&t).unwrap();
        if !check_hamiltonian(&twisted, &case.action, &pi).unwrap().passed() {
            bad.push(seed);
        }
    }
    (
        base_pass > 0 && bad.is_empty(),
        format!("Hamiltonian twist covariance: {tried} seeded cases, {base_pass} Hamiltonian, failing after twist {bad:?}"),
    )
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let lines = [
        timed(1, Some(secs(10)), c1_schouten_oracle),
        timed(2, Some(secs(30)), c2_graded_lie),
        timed(3, None, c3_lifts),
        timed(4, None, c4_double),
        timed(5, None, c5_transformation),
        timed(6, None, c6_twists),
        timed(7, None, c7_twisted_poisson),
        timed(8, Some(secs(60)), c8_multiplicativity),
        timed(9, None, c9_quasi_poisson),
        timed(10, None, c10_hamiltonian),
    ];
    let mut unexpected = 0;
    for l in &lines {
        let known = KNOWN_UNATTAINABLE.contains(&l.id);
        let mark = if l.passed { "PASS" } else { "FAIL" };
        let note = if known { " [known unattainable]" } else { "" };
        println!("criterion {:>2} {mark}{note}: {}", l.id, l.detail);
        if l.passed == known {
            unexpected += 1;
        }
    }
    println!("info: positive control, {}", quaternion_control());
    let passed = lines.iter().filter(|l| l.passed).count();
    println!("acceptance: {passed}/{} criteria pass, {unexpected} unexpected outcomes", lines.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
