//! Quadratic Lie algebras, Manin quasi-triples and the quasi-Lie
//! bialgebroids built from them.

mod action;
mod hamiltonian;
mod twisted;

pub use action::{pi_s, transformation_qlb, PolynomialAction};
pub use hamiltonian::{check_hamiltonian, AlgebroidAction};
pub use twisted::{exterior_derivative, twisted_poisson_qlb, TwistedPoisson};

use std::collections::BTreeMap;

use crate::algebroid::LieAlgebroid;
use crate::differentials::{AlmostDifferential, QuasiLieBialgebroid};
use crate::error::{Error, Result};
use crate::exterior::{multi_indices, Frame, FrameKind, Multivector};
use crate::poly::{Polynomial, VarSet};
use crate::report::{Check, Report};
use crate::scalar::Scalar;

fn constant<S: Scalar>(s: S) -> Polynomial<S> {
    Polynomial::constant(&VarSet::empty(), s)
}

fn dot<S: Scalar>(u: &[S], v: &[S]) -> S {
    u.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// Gauss–Jordan inverse; `None` for singular input.
pub(crate) fn inverse<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut a: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        // exact arithmetic: any nonzero pivot works
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = x.clone() / p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = a[col][c].clone() * f.clone();
                    a[r][c] = a[r][c].clone() - v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A Lie algebra given by structure constants `c[i][j][k]` of [u_i,u_j] = Σ c_ij^k u_k.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S: Scalar> {
    names: Vec<String>,
    c: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> LieAlgebra<S> {
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<S>>>) -> Result<Self> {
        let n = names.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Invalid(format!("structure constants must be {n}×{n}×{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[i][j][k].clone() + c[j][i][k].clone() != S::zero() {
                        return Err(Error::Invalid(format!(
                            "structure constants not antisymmetric at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(LieAlgebra { names, c })
    }

    /// Builds from the listed brackets (i < j or i > j), others zero.
    pub fn from_brackets(names: Vec<String>, brackets: &BTreeMap<(usize, usize), Vec<S>>) -> Result<Self> {
        let n = names.len();
        let mut c = vec![vec![vec![S::zero(); n]; n]; n];
        for (&(i, j), v) in brackets {
            if i >= n || j >= n || v.len() != n {
                return Err(Error::Invalid(format!("bracket ({}, {}) does not fit dimension {n}", i + 1, j + 1)));
            }
            if i == j {
                if v.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Invalid(format!("[u{0},u{0}] must vanish", i + 1)));
                }
                continue;
            }
            let set_ij: Vec<S> = v.clone();
            let set_ji: Vec<S> = v.iter().map(|x| -x.clone()).collect();
            let was_set = c[i][j].iter().any(|x| !x.is_zero());
            if was_set && c[i][j] != set_ij {
                return Err(Error::Invalid(format!("brackets ({}, {}) and ({}, {}) disagree", i + 1, j + 1, j + 1, i + 1)));
            }
            c[i][j] = set_ij;
            c[j][i] = set_ji;
        }
        Self::new(names, c)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constants(&self) -> &[Vec<Vec<S>>] {
        &self.c
    }

    pub fn bracket(&self, u: &[S], v: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let w = u[i].clone() * v[j].clone();
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        out[k] = out[k].clone() + w.clone() * self.c[i][j][k].clone();
                    }
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<S> {
        (0..self.dim()).map(|j| if i == j { S::one() } else { S::zero() }).collect()
    }

    pub fn jacobi(&self) -> Check<S> {
        let n = self.dim();
        let mut ch = Check::new("jacobi");
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.bracket(&a, &self.bracket(&b, &c));
                    let t2 = self.bracket(&b, &self.bracket(&c, &a));
                    let t3 = self.bracket(&c, &self.bracket(&a, &b));
                    for l in 0..n {
                        let r = t1[l].clone() + t2[l].clone() + t3[l].clone();
                        ch.push(format!("J(u{},u{},u{})_{}", i + 1, j + 1, k + 1, l + 1), constant(r));
                    }
                }
            }
        }
        ch
    }

    /// The algebra as a Lie algebroid over a point.
    pub fn algebroid(&self) -> LieAlgebroid<S> {
        let vars = VarSet::empty();
        let frame = Frame::new("g", FrameKind::AlgebroidSections, &self.names, &vars)
            .expect("distinct generator names");
        let mut brackets = BTreeMap::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                brackets.insert((i, j), self.c[i][j].iter().cloned().map(constant).collect());
            }
        }
        LieAlgebroid::new(frame, vec![], vec![vec![]; self.dim()], &brackets).expect("antisymmetric constants")
    }
}

/// A Lie algebra with an invariant nondegenerate symmetric pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticLieAlgebra<S: Scalar> {
    algebra: LieAlgebra<S>,
    pairing: Vec<Vec<S>>,
}

impl<S: Scalar> QuadraticLieAlgebra<S> {
    /// Shape is checked here; the axioms by [`validate`](Self::validate).
    pub fn new(algebra: LieAlgebra<S>, pairing: Vec<Vec<S>>) -> Result<Self> {
        let n = algebra.dim();
        if pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("pairing must be {n}×{n}")));
        }
        Ok(QuadraticLieAlgebra { algebra, pairing })
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn pairing(&self) -> &[Vec<S>] {
        &self.pairing
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn pair(&self, u: &[S], v: &[S]) -> S {
        let pv: Vec<S> = self.pairing.iter().map(|row| dot(row, v)).collect();
        dot(u, &pv)
    }

    pub fn bracket(&self, u: &[S], v: &[S]) -> Vec<S> {
        self.algebra.bracket(u, v)
    }

    pub fn validate(&self) -> Report<S> {
        let n = self.dim();
        let mut sym = Check::new("pairing-symmetric");
        for i in 0..n {
            for j in i + 1..n {
                sym.push(
                    format!("({},{})", i + 1, j + 1),
                    constant(self.pairing[i][j].clone() - self.pairing[j][i].clone()),
                );
            }
        }
        let mut nondeg = Check::new("pairing-nondegenerate");
        if inverse(&self.pairing).is_none() {
            nondeg.push("det", constant(S::one()));
        }
        let mut inv = Check::new("ad-invariance");
        let u = |i| self.algebra.unit(i);
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let r = self.pair(&self.bracket(&u(i), &u(j)), &u(k)) + self.pair(&u(j), &self.bracket(&u(i), &u(k)));
                    inv.push(format!("u{};u{},u{}", i + 1, j + 1, k + 1), constant(r));
                }
            }
        }
        Report::new(vec![sym, nondeg, inv, self.algebra.jacobi()])
    }
}

/// (𝔡, 𝔤, 𝔥) with bases e_i of 𝔤 and ε^i of 𝔥 given in 𝔡 coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ManinQuasiTriple<S: Scalar> {
    d: QuadraticLieAlgebra<S>,
    g_basis: Vec<Vec<S>>,
    h_basis: Vec<Vec<S>>,
}

impl<S: Scalar> ManinQuasiTriple<S> {
    pub fn new(d: QuadraticLieAlgebra<S>, g_basis: Vec<Vec<S>>, h_basis: Vec<Vec<S>>) -> Result<Self> {
        let n = d.dim();
        if n % 2 != 0 || g_basis.len() * 2 != n || h_basis.len() * 2 != n {
            return Err(Error::Invalid(format!("need {} + {} basis vectors for dim 𝔡 = {n}", n / 2, n / 2)));
        }
        if g_basis.iter().chain(&h_basis).any(|v| v.len() != n) {
            return Err(Error::Invalid(format!("basis vectors must have {n} components")));
        }
        Ok(ManinQuasiTriple { d, g_basis, h_basis })
    }

    pub fn d(&self) -> &QuadraticLieAlgebra<S> {
        &self.d
    }

    pub fn g_basis(&self) -> &[Vec<S>] {
        &self.g_basis
    }

    pub fn h_basis(&self) -> &[Vec<S>] {
        &self.h_basis
    }

    pub fn rank(&self) -> usize {
        self.g_basis.len()
    }

    /// Coordinates of w in the basis (e_1…e_m, ε^1…ε^m), read off the
    /// pairing: the e_k part is (w|ε^k), the ε^k part is (w|e_k).
    fn split(&self, w: &[S]) -> (Vec<S>, Vec<S>) {
        let e = self.h_basis.iter().map(|h| self.d.pair(w, h)).collect();
        let eps = self.g_basis.iter().map(|g| self.d.pair(w, g)).collect();
        (e, eps)
    }

    fn recombine(&self, e: &[S], eps: &[S]) -> Vec<S> {
        let n = self.d.dim();
        let mut out = vec![S::zero(); n];
        for (c, v) in e.iter().zip(&self.g_basis).chain(eps.iter().zip(&self.h_basis)) {
            for a in 0..n {
                out[a] = out[a].clone() + c.clone() * v[a].clone();
            }
        }
        out
    }

    /// Isotropy, duality, closure of 𝔤 and spanning, plus the 𝔡 axioms.
    pub fn validate(&self) -> Report<S> {
        let m = self.rank();
        let d = &self.d;
        let mut iso_g = Check::new("isotropy(g)");
        let mut iso_h = Check::new("isotropy(h)");
        let mut dual = Check::new("duality");
        for i in 0..m {
            for j in i..m {
                iso_g.push(format!("(e{}|e{})", i + 1, j + 1), constant(d.pair(&self.g_basis[i], &self.g_basis[j])));
                iso_h.push(format!("(ε{}|ε{})", i + 1, j + 1), constant(d.pair(&self.h_basis[i], &self.h_basis[j])));
            }
            for j in 0..m {
                let want = if i == j { S::one() } else { S::zero() };
                dual.push(
                    format!("(e{}|ε{})", i + 1, j + 1),
                    constant(d.pair(&self.g_basis[i], &self.h_basis[j]) - want),
                );
            }
        }
        let mut closure = Check::new("closure(g)");
        let mut h_closed = true;
        for i in 0..m {
            for j in i + 1..m {
                let (_, eps) = self.split(&d.bracket(&self.g_basis[i], &self.g_basis[j]));
                for (k, v) in eps.into_iter().enumerate() {
                    closure.push(format!("[e{},e{}] along ε{}", i + 1, j + 1, k + 1), constant(v));
                }
                let (e, _) = self.split(&d.bracket(&self.h_basis[i], &self.h_basis[j]));
                h_closed &= e.iter().all(|x| x.is_zero());
            }
        }
        // with duality and isotropy, spanning means split ∘ recombine is exact
        let mut span = Check::new("spanning");
        let n = d.dim();
        for a in 0..n {
            let u = d.algebra().unit(a);
            let (e, eps) = self.split(&u);
            let back = self.recombine(&e, &eps);
            for (b, x) in back.into_iter().enumerate() {
                span.push(format!("u{} component {}", a + 1, b + 1), constant(x - u[b].clone()));
            }
        }
        let mut r = Report::new(vec![iso_g, iso_h, dual, closure, span]).merge(d.validate());
        r.flags.push(("h_is_subalgebra".into(), h_closed));
        r
    }

    /// Reads (c, F, Ω) off the brackets of 𝔡 in the (e, ε) basis.
    pub fn extract_qlb(&self) -> Result<QuasiLieBialgebra<S>> {
        let report = self.validate();
        if !report.passed() {
            return Err(Error::Precondition {
                what: "not a Manin quasi-triple".into(),
                defects: report.defects(),
            });
        }
        let m = self.rank();
        let d = &self.d;
        let (e, eps) = (&self.g_basis, &self.h_basis);
        let mut c = vec![vec![vec![S::zero(); m]; m]; m];
        let mut f = vec![vec![vec![S::zero(); m]; m]; m];
        let mut omega = vec![vec![vec![S::zero(); m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                let (ce, _) = self.split(&d.bracket(&e[i], &e[j]));
                c[i][j] = ce;
                let (fe, om) = {
                    let (a, b) = self.split(&d.bracket(&eps[i], &eps[j]));
                    (b, a)
                };
                for k in 0..m {
                    f[k][i][j] = fe[k].clone();
                    omega[i][j][k] = om[k].clone();
                }
            }
        }
        // [e_i, ε^j] must be Σ_k −c_ik^j ε^k + F_i^{jk} e_k
        let mut pattern = Check::new("mixed-bracket-pattern");
        for i in 0..m {
            for j in 0..m {
                let (pe, pe_eps) = self.split(&d.bracket(&e[i], &eps[j]));
                for k in 0..m {
                    pattern.push(
                        format!("[e{},ε{}] along e{}", i + 1, j + 1, k + 1),
                        constant(pe[k].clone() - f[i][j][k].clone()),
                    );
                    pattern.push(
                        format!("[e{},ε{}] along ε{}", i + 1, j + 1, k + 1),
                        constant(pe_eps[k].clone() + c[i][k][j].clone()),
                    );
                }
            }
        }
        if !pattern.passed() {
            return Err(Error::Precondition {
                what: "brackets outside the quasi-triple pattern".into(),
                defects: Report::new(vec![pattern]).defects(),
            });
        }
        let names: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
        let q = QuasiLieBialgebra::new(LieAlgebra::new(names, c)?, f, omega)?;
        let r = q.to_qlb().check();
        if !r.passed() {
            return Err(Error::Precondition {
                what: "extracted data fails the quasi-Lie bialgebra axioms".into(),
                defects: r.defects(),
            });
        }
        Ok(q)
    }
}

/// (𝔤, F, Ω) with `f[i][j][k] = F_i^{jk}` and `omega[i][j][k] = Ω^{ijk}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiLieBialgebra<S: Scalar> {
    g: LieAlgebra<S>,
    f: Vec<Vec<Vec<S>>>,
    omega: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> QuasiLieBialgebra<S> {
    pub fn new(g: LieAlgebra<S>, f: Vec<Vec<Vec<S>>>, omega: Vec<Vec<Vec<S>>>) -> Result<Self> {
        let m = g.dim();
        let shaped = |t: &Vec<Vec<Vec<S>>>| t.len() == m && t.iter().all(|r| r.len() == m && r.iter().all(|v| v.len() == m));
        if !shaped(&f) || !shaped(&omega) {
            return Err(Error::Invalid(format!("F and Ω must be {m}×{m}×{m}")));
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let anti_f = f[i][j][k].clone() + f[i][k][j].clone();
                    let anti_o = omega[i][j][k].clone() + omega[j][i][k].clone();
                    let cyc = omega[i][j][k].clone() - omega[j][k][i].clone();
                    if !anti_f.is_zero() || !anti_o.is_zero() || !cyc.is_zero() {
                        return Err(Error::Invalid("F must be antisymmetric in its upper indices and Ω totally antisymmetric".into()));
                    }
                }
            }
        }
        Ok(QuasiLieBialgebra { g, f, omega })
    }

    /// Reads the data back from a degree-2 structure over a point.
    pub fn from_qlb(q: &QuasiLieBialgebroid<S>) -> Result<Self> {
        let a = q.algebroid();
        if a.base_dim() != 0 {
            return Err(Error::Invalid("quasi-Lie bialgebras live over a point".into()));
        }
        let m = a.rank();
        let value = |p: Polynomial<S>| p.constant_value().unwrap_or_else(S::zero);
        let c = (0..m)
            .map(|i| (0..m).map(|j| (0..m).map(|k| value(a.structure(i, j).coeff(&[k]))).collect()).collect())
            .collect();
        let mut f = vec![vec![vec![S::zero(); m]; m]; m];
        let mut omega = vec![vec![vec![S::zero(); m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    f[i][j][k] = -value(q.delta().delta_e()[i].coeff(&[j, k]));
                    omega[i][j][k] = value(q.omega().coeff(&[i, j, k]));
                }
            }
        }
        Self::new(LieAlgebra::new(a.frame().generators().to_vec(), c)?, f, omega)
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> &S {
        &self.g.c[i][j][k]
    }

    pub fn cobracket(&self, i: usize, j: usize, k: usize) -> &S {
        &self.f[i][j][k]
    }

    pub fn omega(&self, i: usize, j: usize, k: usize) -> &S {
        &self.omega[i][j][k]
    }

    /// δe_i = −Σ_{j<k} F_i^{jk} e_j∧e_k.
    pub fn delta_e(&self, a: &LieAlgebroid<S>) -> Vec<Multivector<S>> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let terms = multi_indices(m, 2)
                    .into_iter()
                    .map(|jk| (jk.clone(), Polynomial::constant(a.vars(), -self.f[i][jk[0]][jk[1]].clone())));
                Multivector::from_terms(a.frame(), 2, terms).expect("indices in range")
            })
            .collect()
    }

    /// Ω = Σ_{i<j<k} Ω^{ijk} e_i∧e_j∧e_k.
    pub fn omega_section(&self, a: &LieAlgebroid<S>) -> Multivector<S> {
        let terms = multi_indices(self.dim(), 3).into_iter().map(|ijk| {
            let v = self.omega[ijk[0]][ijk[1]][ijk[2]].clone();
            (ijk, Polynomial::constant(a.vars(), v))
        });
        Multivector::from_terms(a.frame(), 3, terms).expect("indices in range")
    }

    /// The structure as a quasi-Lie bialgebroid over a point.
    pub fn to_qlb(&self) -> QuasiLieBialgebroid<S> {
        let a = self.g.algebroid();
        let delta = AlmostDifferential::new(&a, 2, vec![], self.delta_e(&a)).expect("well formed");
        QuasiLieBialgebroid::new(delta, self.omega_section(&a)).expect("degree three")
    }

    /// 𝔡 = 𝔤 ⊕ 𝔤* with the canonical pairing and the bracket rebuilt from (c, F, Ω).
    pub fn reassemble(&self) -> Result<ManinQuasiTriple<S>> {
        let m = self.dim();
        let n = 2 * m;
        let mut c = vec![vec![vec![S::zero(); n]; n]; n];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    c[i][j][k] = self.g.c[i][j][k].clone();
                    // [e_i, ε^j] = Σ −c_ik^j ε^k + F_i^{jk} e_k
                    c[i][m + j][m + k] = -self.g.c[i][k][j].clone();
                    c[i][m + j][k] = self.f[i][j][k].clone();
                    c[m + j][i][m + k] = self.g.c[i][k][j].clone();
                    c[m + j][i][k] = -self.f[i][j][k].clone();
                    // [ε^i, ε^j] = Σ F_k^{ij} ε^k + Ω^{ijk} e_k
                    c[m + i][m + j][m + k] = self.f[k][i][j].clone();
                    c[m + i][m + j][k] = self.omega[i][j][k].clone();
                }
            }
        }
        let mut names: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
        names.extend((1..=m).map(|i| format!("eps{i}")));
        let algebra = LieAlgebra::new(names, c)?;
        let pairing = (0..n)
            .map(|a| (0..n).map(|b| if a + m == b || b + m == a { S::one() } else { S::zero() }).collect())
            .collect();
        let d = QuadraticLieAlgebra::new(algebra, pairing)?;
        let g_basis = (0..m).map(|i| d.algebra().unit(i)).collect();
        let h_basis = (0..m).map(|i| d.algebra().unit(m + i)).collect();
        ManinQuasiTriple::new(d, g_basis, h_basis)
    }
}

/// 𝔡 = 𝔤⊕𝔤 with ((u₁,u₂)|(v₁,v₂)) = K(u₁,v₁) − K(u₂,v₂), 𝔤 diagonal and
/// ε^i = ½ Σ_j (K⁻¹)_{ij} (u_j, −u_j), so that (e_i|ε^j) = δ_i^j.
pub fn double<S: Scalar>(g: &LieAlgebra<S>, k: &[Vec<S>]) -> Result<ManinQuasiTriple<S>> {
    let m = g.dim();
    let quad = QuadraticLieAlgebra::new(g.clone(), k.to_vec())?;
    let r = quad.validate();
    if !r.passed() {
        return Err(Error::Precondition {
            what: "K must be symmetric, nondegenerate and ad-invariant".into(),
            defects: r.defects(),
        });
    }
    let kinv = inverse(k).expect("checked nondegenerate");
    let n = 2 * m;
    let mut c = vec![vec![vec![S::zero(); n]; n]; n];
    for i in 0..m {
        for j in 0..m {
            for l in 0..m {
                c[i][j][l] = g.c[i][j][l].clone();
                c[m + i][m + j][m + l] = g.c[i][j][l].clone();
            }
        }
    }
    let mut names: Vec<String> = g.names.iter().map(|s| format!("{s}_1")).collect();
    names.extend(g.names.iter().map(|s| format!("{s}_2")));
    let mut pairing = vec![vec![S::zero(); n]; n];
    for i in 0..m {
        for j in 0..m {
            pairing[i][j] = k[i][j].clone();
            pairing[m + i][m + j] = -k[i][j].clone();
        }
    }
    let d = QuadraticLieAlgebra::new(LieAlgebra::new(names, c)?, pairing)?;
    let g_basis = (0..m)
        .map(|i| (0..n).map(|a| if a % m == i { S::one() } else { S::zero() }).collect())
        .collect();
    let half = S::half();
    let h_basis = (0..m)
        .map(|i| {
            (0..n)
                .map(|a| {
                    let v = half.clone() * kinv[i][a % m].clone();
                    if a < m {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    ManinQuasiTriple::new(d, g_basis, h_basis)
}
