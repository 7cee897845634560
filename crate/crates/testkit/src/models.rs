//! Concrete Manin and Hamiltonian models shared by the test suites.

use gerstenhaber::{
    double, rat, AlgebroidAction, Algebroid, LieAlgebra, ManinQuasiTriple, Multivec, Poly, PolynomialAction, Qlb,
    Rational, VarSet,
};

use crate::gen::{lie_poisson_qlb, so3_constants, so3_double_qlb, Gen, Shape};

pub fn so3() -> LieAlgebra<Rational> {
    LieAlgebra::new(vec!["u1".into(), "u2".into(), "u3".into()], so3_constants()).unwrap()
}

pub fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| rat((i == j) as i64, 1)).collect()).collect()
}

/// so(3)⊕so(3) with K = id.
pub fn so3_double() -> ManinQuasiTriple<Rational> {
    double(&so3(), &identity(3)).unwrap()
}

/// The field x ↦ −M x, so that M ↦ field is a homomorphism.
pub fn linear_field(space: &Algebroid, m: &[Vec<Rational>]) -> Multivec {
    let vars = space.vars();
    let terms = (0..m.len()).map(|a| {
        let mut acc = Poly::zero(vars);
        for (b, c) in m[a].iter().enumerate() {
            acc = &acc - &Poly::var(vars, b).scale(c);
        }
        (vec![a], acc)
    });
    Multivec::from_terms(space.frame(), 1, terms).unwrap()
}

/// 𝔡 acting on itself, w_S = −ad_w.
pub fn adjoint_action(t: &ManinQuasiTriple<Rational>) -> PolynomialAction<Rational> {
    let alg = t.d().algebra().clone();
    let n = alg.dim();
    let space = Algebroid::tangent(n);
    let fields = (0..n)
        .map(|w| {
            let m: Vec<Vec<Rational>> = (0..n)
                .map(|k| (0..n).map(|j| alg.constants()[w][j][k].clone()).collect())
                .collect();
            linear_field(&space, &m)
        })
        .collect();
    PolynomialAction::new(alg, space, fields).unwrap()
}

pub fn qmul(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let (a1, b1, c1, d1) = (&p[0], &p[1], &p[2], &p[3]);
    let (a2, b2, c2, d2) = (&q[0], &q[1], &q[2], &q[3]);
    vec![
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

/// (a, b)·q = aq − qb on ℍ = ℝ⁴, u_i ↦ half the i-th imaginary unit. On the
/// unit sphere this is the dressing action of the so(3) double on D/G.
pub fn quaternion_action(t: &ManinQuasiTriple<Rational>) -> PolynomialAction<Rational> {
    let space = Algebroid::tangent(4);
    let unit = |k: usize, s: Rational| -> Vec<Rational> {
        (0..4).map(|a| if a == k { s.clone() } else { rat(0, 1) }).collect()
    };
    let fields = (0..6)
        .map(|w| {
            let a = unit(1 + w % 3, rat(1, 2));
            let m: Vec<Vec<Rational>> = (0..4)
                .map(|row| {
                    (0..4)
                        .map(|col| {
                            let q = unit(col, rat(1, 1));
                            let img = if w < 3 {
                                qmul(&a, &q)
                            } else {
                                qmul(&q, &a).into_iter().map(|x| -x).collect()
                            };
                            img[row].clone()
                        })
                        .collect()
                })
                .collect();
            linear_field(&space, &m)
        })
        .collect();
    PolynomialAction::new(t.d().algebra().clone(), space, fields).unwrap()
}

/// A candidate infinitesimal Hamiltonian space: (A, δ, Ω), the action, Π_X.
pub struct HamiltonianCase {
    pub name: &'static str,
    pub qlb: Qlb,
    pub action: AlgebroidAction<Rational>,
    pub pi: Multivec,
}

/// (S = ℝ⁴, Π_S) over the so(3) double, J trivial.
pub fn quaternion_case() -> HamiltonianCase {
    let t = so3_double();
    let (q, act) = quaternion_action(&t).in_triple_basis(&t).unwrap();
    let (pi, _) = gerstenhaber::pi_s(&q, &act).unwrap();
    let qlb = q.to_qlb();
    let fields = act.fields()[..3].to_vec();
    let action = AlgebroidAction::new(qlb.algebroid(), act.space(), fields, vec![]).unwrap();
    HamiltonianCase { name: "quaternion quasi-Poisson", qlb, action, pi }
}

/// T*ℝ³ with J = p × q over (T*so(3)*, d, 0); ê_j = −Π_X♯(dJ_j).
pub fn angular_momentum_case() -> HamiltonianCase {
    let qlb = lie_poisson_qlb(&so3_constants());
    let vars = VarSet::new(["q1", "q2", "q3", "p1", "p2", "p3"]).unwrap();
    let space = Algebroid::tangent_on(&vars, (0..6).collect());
    let one = Poly::one(&vars);
    let pi = Multivec::from_terms(space.frame(), 2, (0..3).map(|i| (vec![i, i + 3], one.clone()))).unwrap();
    let x = |i: usize| Poly::var(&vars, i);
    let momentum: Vec<Poly> = (0..3)
        .map(|k| {
            let (a, b) = ((k + 1) % 3, (k + 2) % 3);
            &(&x(3 + a) * &x(b)) - &(&x(3 + b) * &x(a))
        })
        .collect();
    let fields = momentum
        .iter()
        .map(|j| {
            let dj: Vec<Poly> = (0..6).map(|c| j.derivative(c)).collect();
            -&pi.contract(&dj).unwrap()
        })
        .collect();
    let action = AlgebroidAction::new(qlb.algebroid(), &space, fields, momentum).unwrap();
    HamiltonianCase { name: "angular momentum", qlb, action, pi }
}

/// X = M, J = id, ê = ρ, Π_X the base field of δ.
pub fn base_case(qlb: Qlb) -> HamiltonianCase {
    let action = AlgebroidAction::on_base(qlb.algebroid()).unwrap();
    let (pi, _) = qlb.delta().base_field();
    let pi = pi.with_frame(action.space().frame()).unwrap();
    HamiltonianCase { name: "base", qlb, action, pi }
}

impl Gen {
    /// One of the Hamiltonian models, the base case on a random QLB included.
    pub fn hamiltonian(&mut self) -> HamiltonianCase {
        match self.below(4) {
            0 => quaternion_case(),
            1 => angular_momentum_case(),
            2 => base_case(so3_double_qlb()),
            _ => {
                let q = self.qlb();
                base_case(q)
            }
        }
    }

    /// A random bivector section t for a twist.
    pub fn twist_bivector(&mut self, q: &Qlb) -> Multivec {
        let shape = Shape { max_degree: 1, max_terms: 2 };
        self.section(q.algebroid(), 2, shape)
    }
}

