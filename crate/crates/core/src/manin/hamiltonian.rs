//! Infinitesimal Hamiltonian spaces: an algebroid action along a momentum
//! map J: X → M together with a bivector Π_X.

use crate::algebroid::LieAlgebroid;
use crate::differentials::QuasiLieBialgebroid;
use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::poly::Polynomial;
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// Fields ê_i on X, one per frame generator of A, and the momentum map J.
#[derive(Clone, Debug)]
pub struct AlgebroidAction<S: Scalar> {
    algebroid: LieAlgebroid<S>,
    space: LieAlgebroid<S>,
    fields: Vec<Multivector<S>>,
    momentum: Vec<Polynomial<S>>,
    /// image of every variable of A under J*
    pullbacks: Vec<Polynomial<S>>,
}

impl<S: Scalar> AlgebroidAction<S> {
    /// Parameters of A (variables that are not base coordinates) must
    /// exist in X under the same name and are pulled back to themselves.
    pub fn new(
        algebroid: &LieAlgebroid<S>,
        space: &LieAlgebroid<S>,
        fields: Vec<Multivector<S>>,
        momentum: Vec<Polynomial<S>>,
    ) -> Result<Self> {
        if space.frame() != space.base_frame() {
            return Err(Error::Invalid("X is given by its tangent algebroid".into()));
        }
        if fields.len() != algebroid.rank() {
            return Err(Error::Arity { expected: algebroid.rank(), got: fields.len() });
        }
        if momentum.len() != algebroid.base_dim() {
            return Err(Error::Arity { expected: algebroid.base_dim(), got: momentum.len() });
        }
        for x in &fields {
            if x.frame() != space.frame() {
                return Err(Error::FrameMismatch(space.frame().name().into(), x.frame().name().into()));
            }
            if !x.is_zero() && x.degree() != 1 {
                return Err(Error::DegreeMismatch(1, x.degree()));
            }
        }
        if momentum.iter().any(|j| j.vars() != space.vars()) {
            return Err(Error::VarSetMismatch);
        }
        let avars = algebroid.vars();
        let pullbacks = (0..avars.len())
            .map(|v| match algebroid.coords().iter().position(|&c| c == v) {
                Some(j) => Ok(momentum[j].clone()),
                None => Polynomial::var_named(space.vars(), avars.name(v)),
            })
            .collect::<Result<Vec<_>>>()?;
        let fields = fields
            .into_iter()
            .map(|x| if x.is_zero() { Multivector::zero(space.frame(), 1) } else { x })
            .collect();
        Ok(AlgebroidAction {
            algebroid: algebroid.clone(),
            space: space.clone(),
            fields,
            momentum,
            pullbacks,
        })
    }

    /// X = M, J = id, ê_i = ρ(e_i).
    pub fn on_base(algebroid: &LieAlgebroid<S>) -> Result<Self> {
        let space = algebroid.base_tangent();
        let fields = (0..algebroid.rank()).map(|i| algebroid.anchor_field(i)).collect();
        let momentum = algebroid.coords().iter().map(|&c| Polynomial::var(algebroid.vars(), c)).collect();
        Self::new(algebroid, &space, fields, momentum)
    }

    pub fn algebroid(&self) -> &LieAlgebroid<S> {
        &self.algebroid
    }

    pub fn space(&self) -> &LieAlgebroid<S> {
        &self.space
    }

    pub fn fields(&self) -> &[Multivector<S>] {
        &self.fields
    }

    pub fn momentum(&self) -> &[Polynomial<S>] {
        &self.momentum
    }

    /// J*f.
    pub fn pullback(&self, f: &Polynomial<S>) -> Polynomial<S> {
        f.substitute(&self.pullbacks, self.space.vars())
    }

    /// The induced map Γ(∧^k A) → 𝔛^k(X): e_i ↦ ê_i, f ↦ J*f.
    pub fn hat(&self, p: &Multivector<S>) -> Result<Multivector<S>> {
        if p.frame() != self.algebroid.frame() {
            return Err(Error::AlgebroidMismatch);
        }
        Ok(p.push_forward(self.space.frame(), &self.fields, |c| self.pullback(c)))
    }

    /// ê_i(J_j) = J*(ρ_i^j) and [ê_i, ê_j] = Σ_k J*(c_ij^k) ê_k.
    pub fn validate(&self) -> Report<S> {
        let a = &self.algebroid;
        let mut anchor = Check::new("anchor-compatibility");
        for (i, x) in self.fields.iter().enumerate() {
            for (j, jj) in self.momentum.iter().enumerate() {
                let lhs = self.space.bracket(x, &Multivector::function(self.space.frame(), jj.clone()));
                let rhs = self.pullback(&a.anchor()[i][j]);
                anchor.push(format!("e{}(J{})", i + 1, j + 1), &lhs.as_function() - &rhs);
            }
        }
        let mut brackets = Check::new("action-brackets");
        for i in 0..a.rank() {
            for j in i + 1..a.rank() {
                let lhs = self.space.bracket(&self.fields[i], &self.fields[j]);
                let rhs = self.hat(a.structure(i, j)).expect("own frame");
                brackets.push(format!("e{},e{}", i + 1, j + 1), &lhs - &rhs);
            }
        }
        Report::new(vec![anchor, brackets])
    }
}

/// The infinitesimal Hamiltonian conditions for (X, Π_X) with momentum J:
/// ½[Π_X,Π_X] = Ω̂, [Π_X, J*x_j] = (δx_j)^, [Π_X, ê_i] = (δe_i)^, plus the
/// consequences J_*Π_X = π_M and Π_X♯(dJ_j) = −(δx_j)^.
pub fn check_hamiltonian<S: Scalar>(
    qlb: &QuasiLieBialgebroid<S>,
    act: &AlgebroidAction<S>,
    pi_x: &Multivector<S>,
) -> Result<Report<S>> {
    if act.algebroid() != qlb.algebroid() {
        return Err(Error::AlgebroidMismatch);
    }
    let x = act.space();
    if pi_x.frame() != x.frame() || (!pi_x.is_zero() && pi_x.degree() != 2) {
        return Err(Error::Invalid("Π_X must be a bivector on X".into()));
    }
    let d = qlb.delta();
    let half = S::half();
    let mut omega = Check::new("half-bracket-equals-omega");
    omega.push("½[Π_X,Π_X] − Ω̂", &x.schouten(pi_x, pi_x)?.scale_scalar(&half) - &act.hat(qlb.omega())?);
    let mut funcs = Check::new("bracket-with-momentum");
    let mut sharp = Check::new("momentum-sharp");
    let nx = x.base_dim();
    for (j, jj) in act.momentum().iter().enumerate() {
        let dx = act.hat(&d.delta_x()[j])?;
        let jf = Multivector::function(x.frame(), jj.clone());
        funcs.push(format!("x{}", j + 1), &x.schouten(pi_x, &jf)? - &dx);
        let dj: Vec<Polynomial<S>> = x.coords().iter().map(|&c| jj.derivative(c)).collect();
        debug_assert_eq!(dj.len(), nx);
        let s = if pi_x.is_zero() { Multivector::zero(x.frame(), 1) } else { pi_x.contract(&dj)? };
        sharp.push(format!("dJ{}", j + 1), &s + &dx);
    }
    let mut secs = Check::new("bracket-with-sections");
    for (i, e) in act.fields().iter().enumerate() {
        let rhs = act.hat(&d.delta_e()[i])?;
        secs.push(format!("e{}", i + 1), &x.schouten(pi_x, e)? - &rhs);
    }
    let (pi_m, skew) = d.base_field();
    let mut mapping = Check::new("momentum-maps-bivectors");
    let n = act.momentum().len();
    for a in 0..n {
        for b in a + 1..n {
            let da: Vec<Polynomial<S>> = x.coords().iter().map(|&c| act.momentum()[a].derivative(c)).collect();
            let db: Vec<Polynomial<S>> = x.coords().iter().map(|&c| act.momentum()[b].derivative(c)).collect();
            let lhs = if pi_x.is_zero() {
                Polynomial::zero(x.vars())
            } else {
                pi_x.eval_on_covectors(&[da, db])?
            };
            mapping.push(format!("J{},J{}", a + 1, b + 1), &lhs - &act.pullback(&pi_m.coeff(&[a, b])));
        }
    }
    Ok(act
        .validate()
        .merge(Report::new(vec![omega, funcs, secs, mapping, sharp]))
        .merge(skew))
}
