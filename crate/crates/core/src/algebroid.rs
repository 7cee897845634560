//! Lie algebroids over coordinate patches and their Schouten bracket.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exterior::{Frame, FrameKind, MultiIndex, Multivector};
use crate::poly::{Polynomial, VarSet};
use crate::report::{Check, Report};
use crate::scalar::Scalar;

struct AlgebroidData<S> {
    vars: VarSet,
    coords: Vec<usize>,
    frame: Frame,
    base_frame: Frame,
    /// `anchor[i][j]`: coefficient of ∂x_j in ρ(e_i).
    anchor: Vec<Vec<Polynomial<S>>>,
    /// `structure[i][j] = ⟦e_i, e_j⟧`.
    structure: Vec<Vec<Multivector<S>>>,
}

/// A rank-s bundle over ℝⁿ with polynomial anchor and structure functions.
///
/// The variable set may hold parameters (such as a time variable) besides
/// the base coordinates; only `coords` are differentiated by the anchor.
pub struct LieAlgebroid<S>(Arc<AlgebroidData<S>>);

impl<S> Clone for LieAlgebroid<S> {
    fn clone(&self) -> Self {
        LieAlgebroid(self.0.clone())
    }
}

impl<S: Scalar> PartialEq for LieAlgebroid<S> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.frame == other.0.frame
                && self.0.coords == other.0.coords
                && self.0.anchor == other.0.anchor
                && self.0.structure == other.0.structure)
    }
}

impl<S: Scalar> std::fmt::Debug for LieAlgebroid<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LieAlgebroid(frame={:?}, base_dim={}, vars={:?})",
            self.0.frame.generators(),
            self.0.coords.len(),
            self.0.vars
        )
    }
}

impl<S: Scalar> LieAlgebroid<S> {
    /// `brackets` maps `(i, j)` to the coefficients of ⟦e_i,e_j⟧; entries
    /// not given are zero, `(j, i)` is filled by antisymmetry.
    pub fn new(
        frame: Frame,
        coords: Vec<usize>,
        anchor: Vec<Vec<Polynomial<S>>>,
        brackets: &BTreeMap<(usize, usize), Vec<Polynomial<S>>>,
    ) -> Result<Self> {
        let vars = frame.vars().clone();
        let s = frame.len();
        let n = coords.len();
        if coords.iter().any(|&c| c >= vars.len()) {
            return Err(Error::Invalid("coordinate index out of range".into()));
        }
        if anchor.len() != s || anchor.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("anchor must be a {s}×{n} matrix")));
        }
        if anchor.iter().flatten().any(|p| p.vars() != &vars) {
            return Err(Error::VarSetMismatch);
        }
        let mut structure = vec![vec![Multivector::zero(&frame, 1); s]; s];
        for (&(i, j), coefs) in brackets {
            if i >= s || j >= s {
                return Err(Error::Invalid(format!("bracket index ({}, {}) out of range", i + 1, j + 1)));
            }
            if coefs.len() != s {
                return Err(Error::Arity { expected: s, got: coefs.len() });
            }
            let v = Multivector::from_terms(
                &frame,
                1,
                coefs.iter().enumerate().map(|(k, c)| (vec![k], c.clone())),
            )?;
            if i == j {
                if !v.is_zero() {
                    return Err(Error::Invalid(format!("⟦e{0},e{0}⟧ must vanish", i + 1)));
                }
                continue;
            }
            let (a, b, v) = if i < j { (i, j, v) } else { (j, i, -&v) };
            if !structure[a][b].is_zero() && structure[a][b] != v {
                return Err(Error::Invalid(format!(
                    "brackets ({}, {}) and ({}, {}) are not antisymmetric",
                    a + 1,
                    b + 1,
                    b + 1,
                    a + 1
                )));
            }
            structure[b][a] = -&v;
            structure[a][b] = v;
        }
        let base_frame = Frame::tangent("TM", FrameKind::TangentOfBase, &vars, &coords);
        Ok(LieAlgebroid(Arc::new(AlgebroidData {
            vars,
            coords,
            frame,
            base_frame,
            anchor,
            structure,
        })))
    }

    /// The tangent algebroid of ℝⁿ with coordinates `x1…xn`.
    pub fn tangent(n: usize) -> Self {
        Self::tangent_on(&VarSet::numbered("x", n), (0..n).collect())
    }

    /// The tangent algebroid over the given coordinates of `vars`; its frame
    /// is the base tangent frame itself.
    pub fn tangent_on(vars: &VarSet, coords: Vec<usize>) -> Self {
        Self::tangent_with_frame(
            Frame::tangent("TM", FrameKind::TangentOfBase, vars, &coords),
            coords,
        )
    }

    /// Tangent algebroid using a caller supplied frame (one generator per coordinate).
    pub fn tangent_with_frame(frame: Frame, coords: Vec<usize>) -> Self {
        let vars = frame.vars().clone();
        let n = coords.len();
        assert_eq!(frame.len(), n, "one generator per coordinate");
        let anchor = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Polynomial::one(&vars)
                        } else {
                            Polynomial::zero(&vars)
                        }
                    })
                    .collect()
            })
            .collect();
        let structure = vec![vec![Multivector::zero(&frame, 1); n]; n];
        LieAlgebroid(Arc::new(AlgebroidData {
            vars,
            coords,
            base_frame: frame.clone(),
            frame,
            anchor,
            structure,
        }))
    }

    /// The same algebroid over a variable set extended by parameter names
    /// (such as a time variable) that the anchor never differentiates.
    pub fn with_parameters(&self, names: &[&str]) -> Result<Self> {
        let vars = self.0.vars.extended(names.iter().copied())?;
        let d = &self.0;
        let frame = Frame::new(d.frame.name(), d.frame.kind(), d.frame.generators(), &vars)?;
        if d.frame == d.base_frame {
            return Ok(Self::tangent_with_frame(frame, d.coords.clone()));
        }
        let lift = |p: &Polynomial<S>| p.reembed(&vars);
        let anchor = d
            .anchor
            .iter()
            .map(|row| row.iter().map(lift).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut brackets = BTreeMap::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                let c = &d.structure[i][j];
                let coefs = (0..self.rank())
                    .map(|k| lift(&c.coeff(&[k])))
                    .collect::<Result<Vec<_>>>()?;
                brackets.insert((i, j), coefs);
            }
        }
        Self::new(frame, d.coords.clone(), anchor, &brackets)
    }

    pub fn vars(&self) -> &VarSet {
        &self.0.vars
    }

    pub fn coords(&self) -> &[usize] {
        &self.0.coords
    }

    pub fn base_dim(&self) -> usize {
        self.0.coords.len()
    }

    pub fn rank(&self) -> usize {
        self.0.frame.len()
    }

    pub fn frame(&self) -> &Frame {
        &self.0.frame
    }

    pub fn base_frame(&self) -> &Frame {
        &self.0.base_frame
    }

    pub fn anchor(&self) -> &[Vec<Polynomial<S>>] {
        &self.0.anchor
    }

    pub fn structure(&self, i: usize, j: usize) -> &Multivector<S> {
        &self.0.structure[i][j]
    }

    /// The tangent algebroid of the base, used to bracket base multivectors.
    pub fn base_tangent(&self) -> LieAlgebroid<S> {
        LieAlgebroid::tangent_with_frame(self.0.base_frame.clone(), self.0.coords.clone())
    }

    pub fn function(&self, f: Polynomial<S>) -> Multivector<S> {
        Multivector::function(&self.0.frame, f)
    }

    pub fn generator(&self, i: usize) -> Multivector<S> {
        Multivector::generator(&self.0.frame, i)
    }

    /// The i-th base coordinate as a degree-0 section.
    pub fn coordinate(&self, i: usize) -> Multivector<S> {
        self.function(Polynomial::var(&self.0.vars, self.0.coords[i]))
    }

    /// ρ(e_i) f.
    pub fn anchor_apply(&self, i: usize, f: &Polynomial<S>) -> Polynomial<S> {
        let mut acc = Polynomial::zero(&self.0.vars);
        for (j, r) in self.0.anchor[i].iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let d = f.derivative(self.0.coords[j]);
            if !d.is_zero() {
                acc = &acc + &(r * &d);
            }
        }
        acc
    }

    /// ρ(e_i) as a vector field on the base.
    pub fn anchor_field(&self, i: usize) -> Multivector<S> {
        Multivector::from_terms(
            &self.0.base_frame,
            1,
            self.0.anchor[i].iter().enumerate().map(|(j, c)| (vec![j], c.clone())),
        )
        .expect("anchor row fits base frame")
    }

    /// Replaces every e_i by ρ(e_i).
    pub fn anchor_push(&self, p: &Multivector<S>) -> Result<Multivector<S>> {
        self.check(p)?;
        let images: Vec<Multivector<S>> = (0..self.rank()).map(|i| self.anchor_field(i)).collect();
        Ok(p.push_forward(&self.0.base_frame, &images, Polynomial::clone))
    }

    fn check(&self, p: &Multivector<S>) -> Result<()> {
        if p.frame() == &self.0.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch(
                self.0.frame.name().into(),
                p.frame().name().into(),
            ))
        }
    }

    /// The Schouten bracket ⟦P, Q⟧ of degree p + q − 1.
    pub fn schouten(&self, p: &Multivector<S>, q: &Multivector<S>) -> Result<Multivector<S>> {
        self.check(p)?;
        self.check(q)?;
        let mut out = Multivector::zero(&self.0.frame, p.degree() + q.degree() - 1);
        if p.degree() < 0 || q.degree() < 0 {
            return Ok(out);
        }
        for (i, f) in p.terms() {
            for (j, g) in q.terms() {
                self.bracket_monomials(f, i, g, j, &mut out);
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, p: &Multivector<S>, q: &Multivector<S>) -> Multivector<S> {
        self.schouten(p, q).expect("operands over this algebroid")
    }

    /// ⟦f e_I, g e_J⟧ = f⟦e_I,g⟧∧e_J + fg⟦e_I,e_J⟧ + (−1)^{(q−1)p} g⟦f,e_J⟧∧e_I,
    /// with ⟦f,e_J⟧ = (−1)^q ⟦e_J,f⟧.
    fn bracket_monomials(
        &self,
        f: &Polynomial<S>,
        ii: &MultiIndex,
        g: &Polynomial<S>,
        jj: &MultiIndex,
        out: &mut Multivector<S>,
    ) {
        let p = ii.len();
        let q = jj.len();
        // f ⟦e_I, g⟧ ∧ e_J
        for (a, &ia) in ii.iter().enumerate() {
            let rg = self.anchor_apply(ia, g);
            if rg.is_zero() {
                continue;
            }
            let sign = if (p - 1 - a) % 2 == 0 { 1 } else { -1 };
            let mut idx: Vec<usize> = ii.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &x)| x).collect();
            idx.extend_from_slice(jj);
            out.accumulate(&mut idx, sign, &(f * &rg));
        }
        // f g ⟦e_I, e_J⟧
        if p > 0 && q > 0 {
            let fg = f * g;
            for (b, &jb) in jj.iter().enumerate() {
                let sign_b = if (p - 1) * b % 2 == 0 { 1 } else { -1 };
                for (a, &ia) in ii.iter().enumerate() {
                    let c = &self.0.structure[ia][jb];
                    for (k, ck) in c.terms() {
                        let mut idx: Vec<usize> = jj[..b].to_vec();
                        for (aa, &x) in ii.iter().enumerate() {
                            idx.push(if aa == a { k[0] } else { x });
                        }
                        idx.extend_from_slice(&jj[b + 1..]);
                        out.accumulate(&mut idx, sign_b, &(&fg * ck));
                    }
                }
            }
        }
        // (−1)^{(q−1)p + q} g ⟦e_J, f⟧ ∧ e_I
        if q > 0 {
            let outer = ((q - 1) * p + q) % 2;
            for (b, &jb) in jj.iter().enumerate() {
                let rf = self.anchor_apply(jb, f);
                if rf.is_zero() {
                    continue;
                }
                let sign = if (outer + q - 1 - b) % 2 == 0 { 1 } else { -1 };
                let mut idx: Vec<usize> = jj.iter().enumerate().filter(|&(c, _)| c != b).map(|(_, &x)| x).collect();
                idx.extend_from_slice(ii);
                out.accumulate(&mut idx, sign, &(g * &rf));
            }
        }
    }

    /// Checks Jacobi on generators and that the anchor preserves brackets.
    pub fn validate(&self) -> Report<S> {
        let s = self.rank();
        let e: Vec<Multivector<S>> = (0..s).map(|i| self.generator(i)).collect();
        let mut jacobi = Check::new("jacobi");
        for i in 0..s {
            for j in i + 1..s {
                for k in j + 1..s {
                    let r = &(&self.bracket(&e[i], &self.0.structure[j][k])
                        + &self.bracket(&e[j], &self.0.structure[k][i]))
                        + &self.bracket(&e[k], &self.0.structure[i][j]);
                    jacobi.push(format!("J(e{},e{},e{})", i + 1, j + 1, k + 1), r);
                }
            }
        }
        let mut morphism = Check::new("anchor-morphism");
        let tb = self.base_tangent();
        for i in 0..s {
            for j in i + 1..s {
                let lhs = self.anchor_push(&self.0.structure[i][j]).expect("own frame");
                let rhs = tb.bracket(&self.anchor_field(i), &self.anchor_field(j));
                morphism.push(format!("ρ⟦e{},e{}⟧ − [ρe{},ρe{}]", i + 1, j + 1, i + 1, j + 1), &lhs - &rhs);
            }
        }
        Report::new(vec![jacobi, morphism])
    }
}
