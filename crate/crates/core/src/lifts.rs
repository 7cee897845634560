//! Linear multivector fields on the total space of A and the lifts of sections.
//!
//! Generators of the total tangent frame are ∂x_1…∂x_n followed by
//! ∂v_1…∂v_s, so a canonical monomial lists its ∂x factors first.

use std::collections::BTreeMap;

use crate::algebroid::LieAlgebroid;
use crate::differentials::AlmostDifferential;
use crate::error::{Error, Result};
use crate::exterior::{Frame, FrameKind, Multivector};
use crate::poly::{Polynomial, VarSet};
use crate::scalar::Scalar;

/// ℝ^{n+s} with coordinates (x, v) over an algebroid A → ℝⁿ.
#[derive(Clone, Debug)]
pub struct TotalSpace<S: Scalar> {
    algebroid: LieAlgebroid<S>,
    vars: VarSet,
    fiber: Vec<usize>,
    tangent: LieAlgebroid<S>,
}

impl<S: Scalar> TotalSpace<S> {
    /// Fiber coordinates are named `v1…vs`.
    pub fn new(algebroid: &LieAlgebroid<S>) -> Result<Self> {
        let names: Vec<String> = (1..=algebroid.rank()).map(|j| format!("v{j}")).collect();
        Self::with_fiber_names(algebroid, &names)
    }

    pub fn with_fiber_names(algebroid: &LieAlgebroid<S>, names: &[String]) -> Result<Self> {
        if names.len() != algebroid.rank() {
            return Err(Error::Arity {
                expected: algebroid.rank(),
                got: names.len(),
            });
        }
        let base = algebroid.vars();
        let vars = base.extended(names.iter().cloned())?;
        let fiber: Vec<usize> = (base.len()..vars.len()).collect();
        let mut coords = algebroid.coords().to_vec();
        coords.extend(&fiber);
        let frame = Frame::tangent("TA", FrameKind::TangentOfTotal, &vars, &coords);
        let tangent = LieAlgebroid::tangent_with_frame(frame, coords);
        Ok(TotalSpace {
            algebroid: algebroid.clone(),
            vars,
            fiber,
            tangent,
        })
    }

    pub fn algebroid(&self) -> &LieAlgebroid<S> {
        &self.algebroid
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn frame(&self) -> &Frame {
        self.tangent.frame()
    }

    /// The tangent algebroid of the total space; brackets of lifts live here.
    pub fn tangent(&self) -> &LieAlgebroid<S> {
        &self.tangent
    }

    /// v_j as a polynomial on the total space.
    pub fn fiber_coordinate(&self, j: usize) -> Polynomial<S> {
        Polynomial::var(&self.vars, self.fiber[j])
    }

    fn up(&self, p: &Polynomial<S>) -> Polynomial<S> {
        p.reembed(&self.vars).expect("base variables are part of the total space")
    }

    fn check(&self, p: &Multivector<S>) -> Result<()> {
        if p.frame() == self.algebroid.frame() {
            Ok(())
        } else {
            Err(Error::FrameMismatch(
                self.algebroid.frame().name().into(),
                p.frame().name().into(),
            ))
        }
    }

    fn fiber_index(&self, idx: &[usize]) -> Vec<usize> {
        let n = self.algebroid.base_dim();
        idx.iter().map(|&j| n + j).collect()
    }

    /// π_δ = Σ a_i^J ∂v_J∧∂x_i − Σ c_i^J v_i ∂v_J for δx_i = Σ a_i^J e_J and
    /// δe_i = Σ c_i^J e_J.
    pub fn linear_lift(&self, delta: &AlmostDifferential<S>) -> Result<Multivector<S>> {
        if delta.algebroid() != &self.algebroid {
            return Err(Error::AlgebroidMismatch);
        }
        let k = delta.degree();
        let mut out = Multivector::zero(self.frame(), k);
        for (i, dx) in delta.delta_x().iter().enumerate() {
            for (jj, a) in dx.terms() {
                let mut idx = self.fiber_index(jj);
                idx.push(i);
                out = &out + &Multivector::monomial(self.frame(), idx, self.up(a));
            }
        }
        for (i, de) in delta.delta_e().iter().enumerate() {
            let vi = self.fiber_coordinate(i);
            for (jj, c) in de.terms() {
                let coef = -&(&self.up(c) * &vi);
                out = &out + &Multivector::monomial(self.frame(), self.fiber_index(jj), coef);
            }
        }
        Ok(out)
    }

    /// Splits a total-space polynomial by the fiber variables; `None` if it
    /// is not homogeneous of v-degree at most one.
    fn fiber_parts(&self, p: &Polynomial<S>) -> Option<(Polynomial<S>, Vec<Polynomial<S>>)> {
        let base = self.algebroid.vars();
        let s = self.fiber.len();
        let mut constant = Vec::new();
        let mut linear: Vec<Vec<_>> = vec![Vec::new(); s];
        for (m, c) in p.terms() {
            let e = m.exponents();
            let vdeg: u32 = self.fiber.iter().map(|&f| e[f]).sum();
            let rest = crate::poly::Monomial::from_exponents(e[..base.len()].to_vec());
            match vdeg {
                0 => constant.push((rest, c.clone())),
                1 => {
                    let j = self.fiber.iter().position(|&f| e[f] == 1).unwrap();
                    linear[j].push((rest, c.clone()));
                }
                _ => return None,
            }
        }
        Some((
            Polynomial::from_terms(base, constant),
            linear.into_iter().map(|t| Polynomial::from_terms(base, t)).collect(),
        ))
    }

    /// Checks the local normal form of a linear multivector field.
    pub fn is_linear(&self, pi: &Multivector<S>) -> bool {
        self.almost_differential_of(pi).is_ok()
    }

    /// Inverse of [`linear_lift`](Self::linear_lift).
    pub fn almost_differential_of(&self, pi: &Multivector<S>) -> Result<AlmostDifferential<S>> {
        if pi.frame() != self.frame() {
            return Err(Error::FrameMismatch(self.frame().name().into(), pi.frame().name().into()));
        }
        let a = &self.algebroid;
        let n = a.base_dim();
        let k = pi.degree();
        let ku = k.max(0) as usize;
        let mut dx: Vec<BTreeMap<Vec<usize>, Polynomial<S>>> = vec![BTreeMap::new(); n];
        let mut de: Vec<BTreeMap<Vec<usize>, Polynomial<S>>> = vec![BTreeMap::new(); a.rank()];
        let mixed_odd = (k - 1).rem_euclid(2) == 1;
        for (idx, coef) in pi.terms() {
            let xs = idx.iter().take_while(|&&g| g < n).count();
            let fiber: Vec<usize> = idx[xs..].iter().map(|&g| g - n).collect();
            let (c0, lin) = self
                .fiber_parts(coef)
                .ok_or_else(|| Error::NotLinear(format!("coefficient `{coef}` has v-degree above one")))?;
            match xs {
                1 => {
                    if lin.iter().any(|p| !p.is_zero()) {
                        return Err(Error::NotLinear(format!(
                            "coefficient `{coef}` of a term with one ∂x must not depend on v"
                        )));
                    }
                    // ∂v_J∧∂x_i = (−1)^{k−1} ∂x_i∧∂v_J
                    let a_coef = if mixed_odd { -c0 } else { c0 };
                    dx[idx[0]].insert(fiber, a_coef);
                }
                0 => {
                    if !c0.is_zero() {
                        return Err(Error::NotLinear(format!(
                            "coefficient `{coef}` of a pure ∂v term must be linear in v"
                        )));
                    }
                    for (i, l) in lin.into_iter().enumerate() {
                        if !l.is_zero() {
                            de[i].insert(fiber.clone(), -l);
                        }
                    }
                }
                _ => {
                    return Err(Error::NotLinear(format!(
                        "term with {xs} factors ∂x (at most one allowed)"
                    )))
                }
            }
        }
        let build = |terms: BTreeMap<Vec<usize>, Polynomial<S>>, deg: isize| {
            if deg < 0 {
                Ok(Multivector::zero(a.frame(), deg))
            } else {
                Multivector::from_terms(a.frame(), deg as usize, terms)
            }
        };
        let delta_x = dx
            .into_iter()
            .map(|t| build(t, k - 1))
            .collect::<Result<Vec<_>>>()?;
        let delta_e = de
            .into_iter()
            .map(|t| build(t, ku as isize))
            .collect::<Result<Vec<_>>>()?;
        AlmostDifferential::new(a, k, delta_x, delta_e)
    }

    /// P^v: e_j ↦ ∂v_j.
    pub fn vertical_lift(&self, p: &Multivector<S>) -> Result<Multivector<S>> {
        self.check(p)?;
        let n = self.algebroid.base_dim();
        let images: Vec<Multivector<S>> = (0..self.algebroid.rank())
            .map(|j| Multivector::generator(self.frame(), n + j))
            .collect();
        Ok(p.push_forward(self.frame(), &images, |c| self.up(c)))
    }

    /// P^c = π_{ad(P)}.
    pub fn complete_lift(&self, p: &Multivector<S>) -> Result<Multivector<S>> {
        self.check(p)?;
        self.linear_lift(&AlmostDifferential::coboundary(&self.algebroid, p)?)
    }

    /// G(P) = P^c + (∂P/∂t)^v for a parameter variable `t`.
    pub fn gauge_lift(&self, p: &Multivector<S>, t: &str) -> Result<Multivector<S>> {
        self.check(p)?;
        let ti = self.algebroid.vars().index(t)?;
        if self.algebroid.coords().contains(&ti) {
            return Err(Error::Invalid(format!("`{t}` is a base coordinate, not a parameter")));
        }
        let dp = p.map_coefficients(|c| c.derivative(ti));
        Ok(&self.complete_lift(p)? + &self.vertical_lift(&dp)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;
    use crate::scalar::{rat, Rational};

    #[test]
    fn flat_field_lifts_to_itself() {
        let a = LieAlgebroid::<Rational>::tangent(1);
        let ts = TotalSpace::new(&a).unwrap();
        let c = ts.complete_lift(&a.generator(0)).unwrap();
        assert_eq!(c, Multivector::generator(ts.frame(), 0));
    }

    #[test]
    fn euler_field_complete_lift() {
        let a = LieAlgebroid::<Rational>::tangent(1);
        let ts = TotalSpace::new(&a).unwrap();
        let p = a.generator(0).scale(&parse_scalar("x1", a.vars()).unwrap());
        let c = ts.complete_lift(&p).unwrap();
        let want = &Multivector::monomial(ts.frame(), vec![0], parse_scalar("x1", ts.vars()).unwrap())
            + &Multivector::monomial(ts.frame(), vec![1], parse_scalar("v1", ts.vars()).unwrap());
        assert_eq!(c, want);
    }

    #[test]
    fn contraction_lifts_to_minus_linear_function() {
        let a = LieAlgebroid::<Rational>::tangent(2);
        let ts = TotalSpace::new(&a).unwrap();
        let phi = [
            parse_scalar("x2", a.vars()).unwrap(),
            parse_scalar("3", a.vars()).unwrap(),
        ];
        let d = AlmostDifferential::new(
            &a,
            0,
            vec![Multivector::zero(a.frame(), -1); 2],
            phi.iter().map(|f| a.function(f.clone())).collect(),
        )
        .unwrap();
        let pi = ts.linear_lift(&d).unwrap();
        let want = parse_scalar("-1*x2*v1 - 3*v2", ts.vars()).unwrap();
        assert_eq!(pi, Multivector::function(ts.frame(), want));
        assert_eq!(ts.almost_differential_of(&pi).unwrap(), d);
    }

    #[test]
    fn quadratic_fiber_dependence_is_rejected() {
        let a = LieAlgebroid::<Rational>::tangent(2);
        let ts = TotalSpace::new(&a).unwrap();
        let pi = Multivector::monomial(ts.frame(), vec![2, 3], parse_scalar("v1^2", ts.vars()).unwrap());
        assert!(matches!(ts.almost_differential_of(&pi), Err(Error::NotLinear(_))));
        let pi = Multivector::monomial(ts.frame(), vec![0, 1], Polynomial::one(ts.vars()));
        assert!(!ts.is_linear(&pi));
    }

    #[test]
    fn pure_fiber_bivector_reads_as_structure_term() {
        // π = v1 ∂v1∧∂v2 gives δe1 = −e1∧e2
        let a = LieAlgebroid::<Rational>::tangent(2);
        let ts = TotalSpace::new(&a).unwrap();
        let pi = Multivector::monomial(ts.frame(), vec![2, 3], ts.fiber_coordinate(0));
        let d = ts.almost_differential_of(&pi).unwrap();
        let want = Multivector::monomial(a.frame(), vec![0, 1], Polynomial::constant(a.vars(), rat(-1, 1)));
        assert_eq!(d.delta_e()[0], want);
        assert!(d.delta_e()[1].is_zero());
    }
}
