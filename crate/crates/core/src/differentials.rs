//! Almost k-differentials stored on generators, and quasi-Lie bialgebroids.

use crate::algebroid::LieAlgebroid;
use crate::error::{Error, Result};
use crate::exterior::{multi_indices, Multivector};
use crate::poly::Polynomial;
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// δ given by δx_i ∈ Γ(∧^{k−1}A) and δe_i ∈ Γ(∧^k A).
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostDifferential<S: Scalar> {
    algebroid: LieAlgebroid<S>,
    degree: isize,
    delta_x: Vec<Multivector<S>>,
    delta_e: Vec<Multivector<S>>,
}

impl<S: Scalar> AlmostDifferential<S> {
    pub fn new(
        algebroid: &LieAlgebroid<S>,
        degree: isize,
        delta_x: Vec<Multivector<S>>,
        delta_e: Vec<Multivector<S>>,
    ) -> Result<Self> {
        if delta_x.len() != algebroid.base_dim() {
            return Err(Error::Arity {
                expected: algebroid.base_dim(),
                got: delta_x.len(),
            });
        }
        if delta_e.len() != algebroid.rank() {
            return Err(Error::Arity {
                expected: algebroid.rank(),
                got: delta_e.len(),
            });
        }
        for (m, want) in delta_x
            .iter()
            .map(|m| (m, degree - 1))
            .chain(delta_e.iter().map(|m| (m, degree)))
        {
            if m.frame() != algebroid.frame() {
                return Err(Error::FrameMismatch(
                    algebroid.frame().name().into(),
                    m.frame().name().into(),
                ));
            }
            if !m.is_zero() && m.degree() != want {
                return Err(Error::DegreeMismatch(want, m.degree()));
            }
        }
        // normalize zero images to the nominal degree
        let fix = |m: Multivector<S>, d: isize| {
            if m.is_zero() {
                Multivector::zero(algebroid.frame(), d)
            } else {
                m
            }
        };
        Ok(AlmostDifferential {
            algebroid: algebroid.clone(),
            degree,
            delta_x: delta_x.into_iter().map(|m| fix(m, degree - 1)).collect(),
            delta_e: delta_e.into_iter().map(|m| fix(m, degree)).collect(),
        })
    }

    pub fn zero(algebroid: &LieAlgebroid<S>, degree: isize) -> Self {
        let f = algebroid.frame();
        AlmostDifferential {
            algebroid: algebroid.clone(),
            degree,
            delta_x: vec![Multivector::zero(f, degree - 1); algebroid.base_dim()],
            delta_e: vec![Multivector::zero(f, degree); algebroid.rank()],
        }
    }

    /// ad(P) = ⟦P, ·⟧.
    pub fn coboundary(algebroid: &LieAlgebroid<S>, p: &Multivector<S>) -> Result<Self> {
        let dx = (0..algebroid.base_dim())
            .map(|i| algebroid.schouten(p, &algebroid.coordinate(i)))
            .collect::<Result<Vec<_>>>()?;
        let de = (0..algebroid.rank())
            .map(|i| algebroid.schouten(p, &algebroid.generator(i)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebroid, p.degree(), dx, de)
    }

    pub fn algebroid(&self) -> &LieAlgebroid<S> {
        &self.algebroid
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn delta_x(&self) -> &[Multivector<S>] {
        &self.delta_x
    }

    pub fn delta_e(&self) -> &[Multivector<S>] {
        &self.delta_e
    }

    fn same_algebroid(&self, other: &Self) -> Result<()> {
        if self.algebroid == other.algebroid {
            Ok(())
        } else {
            Err(Error::AlgebroidMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_algebroid(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(AlmostDifferential {
            algebroid: self.algebroid.clone(),
            degree: self.degree,
            delta_x: self.delta_x.iter().zip(&other.delta_x).map(|(a, b)| a + b).collect(),
            delta_e: self.delta_e.iter().zip(&other.delta_e).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale_scalar(&self, c: &S) -> Self {
        AlmostDifferential {
            algebroid: self.algebroid.clone(),
            degree: self.degree,
            delta_x: self.delta_x.iter().map(|m| m.scale_scalar(c)).collect(),
            delta_e: self.delta_e.iter().map(|m| m.scale_scalar(c)).collect(),
        }
    }

    /// δf = Σ_i ∂f/∂x_i δx_i.
    pub fn apply_function(&self, f: &Polynomial<S>) -> Multivector<S> {
        let a = &self.algebroid;
        let mut acc = Multivector::zero(a.frame(), self.degree - 1);
        for (i, &c) in a.coords().iter().enumerate() {
            if self.delta_x[i].is_zero() {
                continue;
            }
            let d = f.derivative(c);
            if !d.is_zero() {
                acc = &acc + &self.delta_x[i].scale(&d);
            }
        }
        acc
    }

    /// The derivation extension to all of Γ(∧A).
    pub fn extend(&self, p: &Multivector<S>) -> Result<Multivector<S>> {
        let a = &self.algebroid;
        if p.frame() != a.frame() {
            return Err(Error::AlgebroidMismatch);
        }
        let k = self.degree;
        let mut out = Multivector::zero(a.frame(), p.degree() + k - 1);
        if p.degree() < 0 {
            return Ok(out);
        }
        let one = Polynomial::one(a.vars());
        for (idx, f) in p.terms() {
            let ej = Multivector::monomial(a.frame(), idx.clone(), one.clone());
            let df = self.apply_function(f);
            if !df.is_zero() {
                out = &out + &df.wedge(&ej);
            }
            for (pos, &j) in idx.iter().enumerate() {
                let de = &self.delta_e[j];
                if de.is_zero() {
                    continue;
                }
                // position a = pos + 1 carries (−1)^{(a+1)(k+1)}
                let odd = ((pos as isize) * (k + 1)).rem_euclid(2) == 1;
                let left = Multivector::monomial(a.frame(), idx[..pos].to_vec(), one.clone());
                let right = Multivector::monomial(a.frame(), idx[pos + 1..].to_vec(), one.clone());
                let t = left.wedge(de).wedge(&right).scale(f);
                out = if odd { &out - &t } else { &out + &t };
            }
        }
        Ok(out)
    }

    pub fn apply(&self, p: &Multivector<S>) -> Multivector<S> {
        self.extend(p).expect("section over this algebroid")
    }

    /// [δ₁,δ₂] = δ₁∘δ₂ − (−1)^{(k+1)(l+1)} δ₂∘δ₁ on generators.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.same_algebroid(other)?;
        let a = &self.algebroid;
        let odd = ((self.degree + 1) * (other.degree + 1)).rem_euclid(2) == 1;
        let comb = |u: &Multivector<S>| -> Multivector<S> {
            let x = self.apply(&other.apply(u));
            let y = other.apply(&self.apply(u));
            if odd {
                &x + &y
            } else {
                &x - &y
            }
        };
        let dx = (0..a.base_dim()).map(|i| comb(&a.coordinate(i))).collect();
        let de = (0..a.rank()).map(|i| comb(&a.generator(i))).collect();
        Self::new(a, self.degree + other.degree - 1, dx, de)
    }

    /// Compatibility with the bracket on generator pairs (e,e), (e,x), (x,x):
    /// δ⟦P,Q⟧ = ⟦δP,Q⟧ + (−1)^{(p−1)(k−1)}⟦P,δQ⟧.
    pub fn is_differential(&self) -> Report<S> {
        let a = &self.algebroid;
        let k = self.degree;
        let e: Vec<Multivector<S>> = (0..a.rank()).map(|i| a.generator(i)).collect();
        let x: Vec<Multivector<S>> = (0..a.base_dim()).map(|i| a.coordinate(i)).collect();
        let residual = |p: &Multivector<S>, q: &Multivector<S>| -> Multivector<S> {
            let lhs = self.apply(&a.bracket(p, q));
            let t1 = a.bracket(&self.apply(p), q);
            let t2 = a.bracket(p, &self.apply(q));
            let odd = ((p.degree() - 1) * (k - 1)).rem_euclid(2) == 1;
            let rhs = if odd { &t1 - &t2 } else { &t1 + &t2 };
            &lhs - &rhs
        };
        let mut ee = Check::new("compatibility(e,e)");
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                ee.push(format!("e{},e{}", i + 1, j + 1), residual(&e[i], &e[j]));
            }
        }
        let mut ex = Check::new("compatibility(e,x)");
        for i in 0..e.len() {
            for j in 0..x.len() {
                ex.push(format!("e{},x{}", i + 1, j + 1), residual(&e[i], &x[j]));
            }
        }
        let mut xx = Check::new("compatibility(x,x)");
        for i in 0..x.len() {
            for j in i..x.len() {
                xx.push(format!("x{},x{}", i + 1, j + 1), residual(&x[i], &x[j]));
            }
        }
        Report::new(vec![ee, ex, xx])
    }

    /// The k-vector field π_M(df₁,…,df_k) = (−1)^{k+1}⟨ρ(δf₁), df₂∧…∧df_k⟩
    /// on the base, with the skew-symmetry residuals that certify it.
    pub fn base_field(&self) -> (Multivector<S>, Report<S>) {
        let a = &self.algebroid;
        let base = a.base_frame();
        let k = self.degree;
        let n = a.base_dim();
        let mut skew = Check::new("base-field-skew");
        if k <= 0 {
            return (Multivector::zero(base, k.max(0)), Report::new(vec![skew]));
        }
        let ku = k as usize;
        let pushed: Vec<Multivector<S>> = self
            .delta_x
            .iter()
            .map(|d| a.anchor_push(d).expect("own frame"))
            .collect();
        let odd_pref = (k + 1) % 2 == 1;
        // value of π_M(dx_{i₁}, dx_{rest})
        let value = |first: usize, rest: &[usize]| -> Polynomial<S> {
            let v = pushed[first].coeff(rest);
            if odd_pref {
                -v
            } else {
                v
            }
        };
        let mut terms = Vec::new();
        for idx in multi_indices(n, ku) {
            let c = value(idx[0], &idx[1..]);
            for pos in 1..ku {
                let mut rest = idx.clone();
                let first = rest.remove(pos);
                // moving slot pos to the front costs (−1)^pos
                let v = value(first, &rest);
                let r = if pos % 2 == 1 { &v + &c } else { &v - &c };
                let labels: Vec<String> = idx.iter().map(|i| format!("x{}", i + 1)).collect();
                skew.push(format!("slot {} of ({})", pos + 1, labels.join(",")), r);
            }
            terms.push((idx, c));
        }
        // repeated arguments must give zero
        if ku >= 2 {
            for i in 0..n {
                for rest in multi_indices(n, ku - 1) {
                    if rest.contains(&i) {
                        skew.push(format!("repeated x{}", i + 1), value(i, &rest));
                    }
                }
            }
        }
        let field = Multivector::from_terms(base, ku, terms).expect("base indices in range");
        (field, Report::new(vec![skew]))
    }
}

/// (A, δ, Ω) with δ of degree 2 and Ω ∈ Γ(∧³A).
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiLieBialgebroid<S: Scalar> {
    delta: AlmostDifferential<S>,
    omega: Multivector<S>,
}

impl<S: Scalar> QuasiLieBialgebroid<S> {
    pub fn new(delta: AlmostDifferential<S>, omega: Multivector<S>) -> Result<Self> {
        if delta.degree() != 2 {
            return Err(Error::DegreeMismatch(2, delta.degree()));
        }
        if omega.frame() != delta.algebroid().frame() {
            return Err(Error::AlgebroidMismatch);
        }
        if !omega.is_zero() && omega.degree() != 3 {
            return Err(Error::DegreeMismatch(3, omega.degree()));
        }
        let omega = if omega.is_zero() {
            Multivector::zero(omega.frame(), 3)
        } else {
            omega
        };
        Ok(QuasiLieBialgebroid { delta, omega })
    }

    pub fn delta(&self) -> &AlmostDifferential<S> {
        &self.delta
    }

    pub fn omega(&self) -> &Multivector<S> {
        &self.omega
    }

    pub fn algebroid(&self) -> &LieAlgebroid<S> {
        self.delta.algebroid()
    }

    /// δ² = ⟦Ω,·⟧ on generators, δΩ = 0, plus the differential checks.
    pub fn check(&self) -> Report<S> {
        let a = self.algebroid();
        let d = &self.delta;
        let mut sq_x = Check::new("delta-squared(x)");
        for i in 0..a.base_dim() {
            let x = a.coordinate(i);
            sq_x.push(
                format!("x{}", i + 1),
                &d.apply(&d.apply(&x)) - &a.bracket(&self.omega, &x),
            );
        }
        let mut sq_e = Check::new("delta-squared(e)");
        for i in 0..a.rank() {
            let e = a.generator(i);
            sq_e.push(
                format!("e{}", i + 1),
                &d.apply(&d.apply(&e)) - &a.bracket(&self.omega, &e),
            );
        }
        let mut closed = Check::new("delta-omega");
        closed.push("δΩ", d.apply(&self.omega));
        Report::new(vec![sq_x, sq_e, closed]).merge(d.is_differential())
    }

    /// (δ + ad t, Ω + δt + ½⟦t,t⟧). The result is checked.
    pub fn twist(&self, t: &Multivector<S>) -> Result<Self> {
        let out = self.twist_unchecked(t)?;
        let report = out.check();
        if !report.passed() {
            return Err(Error::Precondition {
                what: "twisted structure fails the quasi-Lie bialgebroid axioms".into(),
                defects: report.defects(),
            });
        }
        Ok(out)
    }

    pub fn twist_unchecked(&self, t: &Multivector<S>) -> Result<Self> {
        let a = self.algebroid();
        if !t.is_zero() && t.degree() != 2 {
            return Err(Error::DegreeMismatch(2, t.degree()));
        }
        let t = if t.is_zero() {
            Multivector::zero(a.frame(), 2)
        } else {
            t.clone()
        };
        let delta = self.delta.checked_add(&AlmostDifferential::coboundary(a, &t)?)?;
        let half = S::half();
        let omega = &(&self.omega + &self.delta.extend(&t)?) + &a.schouten(&t, &t)?.scale_scalar(&half);
        QuasiLieBialgebroid::new(delta, omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;
    use crate::scalar::Rational;

    #[test]
    fn coboundary_of_flat_field() {
        let a = LieAlgebroid::<Rational>::tangent(1);
        let d = AlmostDifferential::coboundary(&a, &a.generator(0)).unwrap();
        assert_eq!(d.delta_x()[0], a.function(Polynomial::one(a.vars())));
        assert!(d.delta_e()[0].is_zero());
        assert!(d.is_differential().passed());
    }

    #[test]
    fn zero_differential_passes() {
        let a = LieAlgebroid::<Rational>::tangent(2);
        let d = AlmostDifferential::zero(&a, 2);
        assert!(d.is_differential().passed());
        assert!(d.apply(&a.function(Polynomial::one(a.vars()))).is_zero());
    }

    #[test]
    fn coboundary_on_functions_is_the_bracket() {
        let a = LieAlgebroid::<Rational>::tangent(2);
        let p = a
            .generator(0)
            .wedge(&a.generator(1))
            .scale(&parse_scalar("x1^2 + x2", a.vars()).unwrap());
        let d = AlmostDifferential::coboundary(&a, &p).unwrap();
        let f = a.function(parse_scalar("x1*x2^2 - 3", a.vars()).unwrap());
        assert_eq!(d.apply(&f), a.bracket(&p, &f));
    }
}
