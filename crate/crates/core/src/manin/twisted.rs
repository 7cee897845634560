//! Twisted Poisson structures and their cotangent quasi-Lie bialgebroids.

use std::collections::BTreeMap;

use crate::algebroid::LieAlgebroid;
use crate::differentials::{AlmostDifferential, QuasiLieBialgebroid};
use crate::error::{Error, Result};
use crate::exterior::{sharp_power, Frame, FrameKind, FormValue, Multivector};
use crate::poly::Polynomial;
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// d(f dx_I) = Σ_c ∂_c f dx_c∧dx_I for a form over the dual of `space`'s frame.
pub fn exterior_derivative<S: Scalar>(space: &LieAlgebroid<S>, form: &FormValue<S>) -> Result<FormValue<S>> {
    match form.frame().primal() {
        Some(p) if p == space.frame() => {}
        _ => return Err(Error::FrameMismatch(space.frame().name().into(), form.frame().name().into())),
    }
    let mut out = Multivector::zero(form.frame(), form.degree() + 1);
    for (idx, f) in form.terms() {
        for (c, &x) in space.coords().iter().enumerate() {
            let d = f.derivative(x);
            if d.is_zero() {
                continue;
            }
            let mut i = vec![c];
            i.extend(idx);
            out = &out + &Multivector::monomial(form.frame(), i, d);
        }
    }
    Ok(out)
}

/// A bivector π and a 3-form φ on a coordinate space.
#[derive(Clone, Debug)]
pub struct TwistedPoisson<S: Scalar> {
    pub space: LieAlgebroid<S>,
    pub pi: Multivector<S>,
    pub phi: FormValue<S>,
}

impl<S: Scalar> TwistedPoisson<S> {
    /// dφ = 0 and ½[π,π] = (∧³π♯)(φ).
    pub fn preconditions(&self) -> Result<Report<S>> {
        let mut closed = Check::new("phi-closed");
        closed.push("dφ", exterior_derivative(&self.space, &self.phi)?);
        let mut tw = Check::new("twisted-jacobi");
        let half = S::half();
        let lhs = self.space.schouten(&self.pi, &self.pi)?.scale_scalar(&half);
        tw.push("½[π,π] − (∧³π♯)(φ)", &lhs - &sharp_power(&self.pi, &self.phi)?);
        Ok(Report::new(vec![closed, tw]))
    }

    fn sharp(&self, a: usize) -> Vec<Polynomial<S>> {
        (0..self.space.base_dim()).map(|b| self.pi.coeff(&[a, b])).collect()
    }
}

/// (T*M, δ, φ) with anchor π♯, bracket [dx_a,dx_b] = dπ^{ab} + φ(π♯dx_a, π♯dx_b, ·),
/// δf = df and δ(dx_i) = −π♯(dx_i)⌟φ. The report covers the algebroid
/// axioms and the quasi-Lie bialgebroid axioms.
pub fn twisted_poisson_qlb<S: Scalar>(tp: &TwistedPoisson<S>) -> Result<(QuasiLieBialgebroid<S>, Report<S>)> {
    let space = &tp.space;
    if tp.pi.frame() != space.frame() || (!tp.pi.is_zero() && tp.pi.degree() != 2) {
        return Err(Error::Invalid("π must be a bivector on the space".into()));
    }
    if !tp.phi.is_zero() && tp.phi.degree() != 3 {
        return Err(Error::DegreeMismatch(3, tp.phi.degree()));
    }
    let pre = tp.preconditions()?;
    if !pre.passed() {
        return Err(Error::Precondition {
            what: "not a twisted Poisson structure".into(),
            defects: pre.defects(),
        });
    }
    let vars = space.vars();
    let n = space.base_dim();
    let names: Vec<String> = space.coords().iter().map(|&c| format!("d{}", vars.name(c))).collect();
    let frame = Frame::new("T*M", FrameKind::AlgebroidSections, &names, vars)?;
    let sharps: Vec<Vec<Polynomial<S>>> = (0..n).map(|a| tp.sharp(a)).collect();
    let mut brackets = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            let pab = tp.pi.coeff(&[a, b]);
            let coefs = (0..n)
                .map(|c| {
                    let mut unit = vec![Polynomial::zero(vars); n];
                    unit[c] = Polynomial::one(vars);
                    let twist = tp.phi.eval_on_covectors(&[sharps[a].clone(), sharps[b].clone(), unit])?;
                    Ok(&pab.derivative(space.coords()[c]) + &twist)
                })
                .collect::<Result<Vec<_>>>()?;
            brackets.insert((a, b), coefs);
        }
    }
    let a = LieAlgebroid::new(frame, space.coords().to_vec(), sharps.clone(), &brackets)?;
    let delta_x = (0..n).map(|i| a.generator(i)).collect();
    let delta_e = (0..n)
        .map(|i| {
            let c = tp.phi.contract(&sharps[i])?;
            Ok(-&c.with_frame(a.frame())?)
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = AlmostDifferential::new(&a, 2, delta_x, delta_e)?;
    let qlb = QuasiLieBialgebroid::new(delta, tp.phi.with_frame(a.frame())?)?;
    let report = a.validate().merge(qlb.check());
    Ok((qlb, report))
}
