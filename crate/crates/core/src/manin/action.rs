//! Polynomial actions of 𝔡 and the transformation quasi-Lie bialgebroid.
//!
//! The construction accepts any polynomial 𝔡-action, not only dressing
//! actions on D/G. The argument that (𝔤⋉ℝⁿ, δ, Ω) is a quasi-Lie
//! bialgebroid uses the bracket pattern of 𝔡 and the homomorphism property
//! only, so each instance is checked rather than assumed.

use std::collections::BTreeMap;

use super::{LieAlgebra, ManinQuasiTriple, QuasiLieBialgebra};
use crate::algebroid::LieAlgebroid;
use crate::differentials::{AlmostDifferential, QuasiLieBialgebroid};
use crate::error::{Error, Result};
use crate::exterior::{multi_indices, Frame, FrameKind, Multivector};
use crate::poly::Polynomial;
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// v ↦ v_S as polynomial vector fields, one per basis element of the algebra.
///
/// The convention is that this is a homomorphism: ([u,v])_S = [u_S, v_S].
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialAction<S: Scalar> {
    algebra: LieAlgebra<S>,
    space: LieAlgebroid<S>,
    fields: Vec<Multivector<S>>,
}

impl<S: Scalar> PolynomialAction<S> {
    /// `space` is the tangent algebroid of the manifold acted on.
    pub fn new(algebra: LieAlgebra<S>, space: LieAlgebroid<S>, fields: Vec<Multivector<S>>) -> Result<Self> {
        if fields.len() != algebra.dim() {
            return Err(Error::Arity {
                expected: algebra.dim(),
                got: fields.len(),
            });
        }
        if space.frame() != space.base_frame() {
            return Err(Error::Invalid("actions are given on a tangent algebroid".into()));
        }
        let fields = fields
            .into_iter()
            .map(|x| {
                if x.frame() != space.frame() {
                    Err(Error::FrameMismatch(space.frame().name().into(), x.frame().name().into()))
                } else if !x.is_zero() && x.degree() != 1 {
                    Err(Error::DegreeMismatch(1, x.degree()))
                } else if x.is_zero() {
                    Ok(Multivector::zero(space.frame(), 1))
                } else {
                    Ok(x)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolynomialAction { algebra, space, fields })
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn space(&self) -> &LieAlgebroid<S> {
        &self.space
    }

    pub fn fields(&self) -> &[Multivector<S>] {
        &self.fields
    }

    /// v_S for v given by coordinates in the algebra basis.
    pub fn field(&self, v: &[S]) -> Multivector<S> {
        let mut acc = Multivector::zero(self.space.frame(), 1);
        for (c, x) in v.iter().zip(&self.fields) {
            if !c.is_zero() {
                acc = &acc + &x.scale_scalar(c);
            }
        }
        acc
    }

    pub fn validate(&self) -> Report<S> {
        let n = self.algebra.dim();
        let mut ch = Check::new("action-homomorphism");
        for a in 0..n {
            for b in a + 1..n {
                let lhs = self.field(&self.algebra.constants()[a][b]);
                let rhs = self.space.bracket(&self.fields[a], &self.fields[b]);
                ch.push(format!("u{},u{}", a + 1, b + 1), &lhs - &rhs);
            }
        }
        Report::new(vec![ch])
    }

    /// The same action re-expressed on the basis (e_1…e_m, ε^1…ε^m) of the
    /// triple, over the reassembled algebra of its quasi-Lie bialgebra.
    pub fn in_triple_basis(&self, t: &ManinQuasiTriple<S>) -> Result<(QuasiLieBialgebra<S>, PolynomialAction<S>)> {
        if t.d().algebra() != &self.algebra {
            return Err(Error::Invalid("the action is not of the triple's 𝔡".into()));
        }
        let q = t.extract_qlb()?;
        let algebra = q.reassemble()?.d().algebra().clone();
        let fields = t.g_basis().iter().chain(t.h_basis()).map(|v| self.field(v)).collect();
        let act = PolynomialAction::new(algebra, self.space.clone(), fields)?;
        Ok((q, act))
    }
}

/// (e_i)_S and (ε^i)_S for an action over the reassembled (e, ε) basis.
fn split_fields<S: Scalar>(
    b: &QuasiLieBialgebra<S>,
    act: &PolynomialAction<S>,
) -> Result<(Vec<Multivector<S>>, Vec<Multivector<S>>)> {
    let m = b.dim();
    let d = b.reassemble()?;
    if act.algebra().constants() != d.d().algebra().constants() {
        return Err(Error::Invalid(
            "action must be of 𝔤 ⊕ 𝔤* with the bracket rebuilt from (c, F, Ω), basis (e, ε)".into(),
        ));
    }
    let f = act.fields();
    Ok((f[..m].to_vec(), f[m..].to_vec()))
}

/// (𝔤⋉ℝⁿ, δ, Ω) with δx_j = Σ_i (ε^i)_S(x_j) e_i, δe = −F, together with
/// the quasi-Lie bialgebroid report.
pub fn transformation_qlb<S: Scalar>(
    b: &QuasiLieBialgebra<S>,
    act: &PolynomialAction<S>,
) -> Result<(QuasiLieBialgebroid<S>, Report<S>)> {
    let (e_fields, eps_fields) = split_fields(b, act)?;
    let r = act.validate();
    if !r.passed() {
        return Err(Error::Precondition {
            what: "action is not a Lie algebra homomorphism".into(),
            defects: r.defects(),
        });
    }
    let space = act.space();
    let vars = space.vars();
    let m = b.dim();
    let n = space.base_dim();
    let names: Vec<&str> = b.algebra().names().iter().map(String::as_str).collect();
    let frame = Frame::new("g⋉S", FrameKind::AlgebroidSections, names, vars)?;
    let anchor: Vec<Vec<Polynomial<S>>> = e_fields
        .iter()
        .map(|x| (0..n).map(|j| x.coeff(&[j])).collect())
        .collect();
    let mut brackets = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let coefs = (0..m).map(|k| Polynomial::constant(vars, b.structure(i, j, k).clone())).collect();
            brackets.insert((i, j), coefs);
        }
    }
    let a = LieAlgebroid::new(frame, space.coords().to_vec(), anchor, &brackets)?;
    let delta_x = (0..n)
        .map(|j| {
            let terms = eps_fields.iter().enumerate().map(|(i, x)| (vec![i], x.coeff(&[j])));
            Multivector::from_terms(a.frame(), 1, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = AlmostDifferential::new(&a, 2, delta_x, b.delta_e(&a))?;
    let qlb = QuasiLieBialgebroid::new(delta, b.omega_section(&a))?;
    let report = a.validate().merge(qlb.check());
    Ok((qlb, report))
}

/// Π_S = −Σ_i (e_i)_S ⊗ (ε^i)_S, that is Π_S(df,dg) = −Σ (ε^i)_S(f)(e_i)_S(g),
/// as a bivector together with the residuals of its symmetric part.
pub fn pi_s<S: Scalar>(b: &QuasiLieBialgebra<S>, act: &PolynomialAction<S>) -> Result<(Multivector<S>, Report<S>)> {
    let (e_fields, eps_fields) = split_fields(b, act)?;
    let space = act.space();
    let n = space.base_dim();
    let tensor = |p: usize, q: usize| {
        let mut acc = Polynomial::zero(space.vars());
        for (e, eps) in e_fields.iter().zip(&eps_fields) {
            acc = &acc - &(&eps.coeff(&[p]) * &e.coeff(&[q]));
        }
        acc
    };
    let mut sym = Check::new("pi_s-symmetric-part");
    let mut terms = Vec::new();
    for p in 0..n {
        for q in p..n {
            let t = tensor(p, q);
            let label = format!("x{},x{}", p + 1, q + 1);
            if p == q {
                sym.push(label, t);
            } else {
                sym.push(label, &t + &tensor(q, p));
                terms.push((vec![p, q], t));
            }
        }
    }
    debug_assert!(terms.len() == multi_indices(n, 2).len());
    let field = Multivector::from_terms(space.frame(), 2, terms)?;
    Ok((field, Report::new(vec![sym])))
}
