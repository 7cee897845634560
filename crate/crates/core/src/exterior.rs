//! Multivectors with polynomial coefficients over a named frame.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarSet};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameKind {
    AlgebroidSections,
    TangentOfBase,
    TangentOfTotal,
    Dual,
}

impl FrameKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameKind::AlgebroidSections => "algebroid-sections",
            FrameKind::TangentOfBase => "tangent-of-base",
            FrameKind::TangentOfTotal => "tangent-of-total",
            FrameKind::Dual => "dual",
        }
    }
}

#[derive(Debug)]
struct FrameData {
    name: String,
    kind: FrameKind,
    generators: Vec<String>,
    vars: VarSet,
    primal: Option<Frame>,
}

/// Generators of a local frame plus the variables their coefficients may use.
#[derive(Clone, Debug)]
pub struct Frame(Arc<FrameData>);

impl Frame {
    pub fn new<I, T>(name: &str, kind: FrameKind, generators: I, vars: &VarSet) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::Invalid(format!("duplicate generator `{g}`")));
            }
        }
        Ok(Frame(Arc::new(FrameData {
            name: name.to_string(),
            kind,
            generators,
            vars: vars.clone(),
            primal: None,
        })))
    }

    /// `∂x` style tangent frame for the given coordinate variables.
    pub fn tangent(name: &str, kind: FrameKind, vars: &VarSet, coords: &[usize]) -> Self {
        let gens = coords.iter().map(|&i| format!("∂{}", vars.name(i)));
        Frame::new(name, kind, gens, vars).expect("coordinate names are distinct")
    }

    /// The dual frame, generators named by `names`.
    pub fn dual_with<I, T>(&self, name: &str, names: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let generators: Vec<String> = names.into_iter().map(Into::into).collect();
        if generators.len() != self.len() {
            return Err(Error::Arity {
                expected: self.len(),
                got: generators.len(),
            });
        }
        let mut f = Frame::new(name, FrameKind::Dual, generators, &self.0.vars)?;
        Arc::get_mut(&mut f.0).expect("fresh frame").primal = Some(self.clone());
        Ok(f)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn kind(&self) -> FrameKind {
        self.0.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.0.generators
    }

    pub fn len(&self) -> usize {
        self.0.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.generators.is_empty()
    }

    pub fn vars(&self) -> &VarSet {
        &self.0.vars
    }

    pub fn primal(&self) -> Option<&Frame> {
        self.0.primal.as_ref()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.0.generators.iter().position(|g| g == name)
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.name == other.0.name
                && self.0.kind == other.0.kind
                && self.0.generators == other.0.generators
                && self.0.vars == other.0.vars)
    }
}

impl Eq for Frame {}

/// Strictly increasing generator positions.
pub type MultiIndex = Vec<usize>;

/// Sorts `idx` in place and returns the permutation sign, or `None` when an
/// index repeats.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    // insertion sort: each swap is a transposition
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// All strictly increasing `k`-subsets of `0..n`.
pub fn multi_indices(n: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// An element of ∧^k over a frame. Degree −1 (and below) only holds zero.
#[derive(Clone)]
pub struct Multivector<S> {
    frame: Frame,
    degree: isize,
    terms: BTreeMap<MultiIndex, Polynomial<S>>,
}

/// Multivectors over a dual frame.
pub type FormValue<S> = Multivector<S>;

impl<S: Scalar> Multivector<S> {
    pub fn zero(frame: &Frame, degree: isize) -> Self {
        Multivector {
            frame: frame.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(frame: &Frame, f: Polynomial<S>) -> Self {
        assert!(f.vars() == frame.vars(), "coefficient variables differ from frame");
        let mut m = Self::zero(frame, 0);
        if !f.is_zero() {
            m.terms.insert(Vec::new(), f);
        }
        m
    }

    pub fn generator(frame: &Frame, i: usize) -> Self {
        assert!(i < frame.len(), "generator index out of range");
        Self::monomial(frame, vec![i], Polynomial::one(frame.vars()))
    }

    /// `coef · e_{idx[0]} ∧ … ∧ e_{idx[k-1]}` for an arbitrary index order.
    pub fn monomial(frame: &Frame, mut idx: Vec<usize>, coef: Polynomial<S>) -> Self {
        let mut m = Self::zero(frame, idx.len() as isize);
        m.accumulate(&mut idx, 1, &coef);
        m
    }

    /// Builds from raw `(indices, coefficient)` pairs of the given degree.
    pub fn from_terms<I>(frame: &Frame, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial<S>)>,
    {
        let mut m = Self::zero(frame, degree as isize);
        for (mut idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch(degree as isize, idx.len() as isize));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= frame.len()) {
                return Err(Error::Invalid(format!(
                    "generator index {} out of range for frame `{}`",
                    bad + 1,
                    frame.name()
                )));
            }
            if c.vars() != frame.vars() {
                return Err(Error::VarSetMismatch);
            }
            m.accumulate(&mut idx, 1, &c);
        }
        Ok(m)
    }

    /// Adds `sign · coef · e_idx` after canonicalizing `idx`.
    pub(crate) fn accumulate(&mut self, idx: &mut [usize], sign: i32, coef: &Polynomial<S>) {
        if coef.is_zero() {
            return;
        }
        let Some(s) = sort_with_sign(idx) else {
            return;
        };
        let c = if s * sign < 0 { -coef } else { coef.clone() };
        self.add_canonical(idx.to_vec(), c);
    }

    fn add_canonical(&mut self, idx: MultiIndex, c: Polynomial<S>) {
        debug_assert_eq!(idx.len() as isize, self.degree);
        match self.terms.remove(&idx) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(idx, s);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(idx, c);
                }
            }
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn vars(&self) -> &VarSet {
        self.frame.vars()
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial<S>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `e_idx` for any index order (sign included).
    pub fn coeff(&self, idx: &[usize]) -> Polynomial<S> {
        let mut sorted = idx.to_vec();
        match sort_with_sign(&mut sorted) {
            Some(s) => {
                let c = self
                    .terms
                    .get(&sorted)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(self.vars()));
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
            None => Polynomial::zero(self.vars()),
        }
    }

    /// The degree-0 value as a polynomial.
    pub fn as_function(&self) -> Polynomial<S> {
        assert!(self.degree <= 0, "not a function");
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.vars()))
    }

    fn check_frame(&self, other: &Self) -> Result<()> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch(
                self.frame.name().to_string(),
                other.frame.name().to_string(),
            ))
        }
    }

    /// Sum; zero objects of other degrees are absorbed.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_frame(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_canonical(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, f: &Polynomial<S>) -> Self {
        let mut out = Self::zero(&self.frame, self.degree);
        for (idx, c) in &self.terms {
            let p = c * f;
            if !p.is_zero() {
                out.terms.insert(idx.clone(), p);
            }
        }
        out
    }

    pub fn scale_scalar(&self, s: &S) -> Self {
        let mut out = Self::zero(&self.frame, self.degree);
        if s.is_zero() {
            return out;
        }
        for (idx, c) in &self.terms {
            out.terms.insert(idx.clone(), c.scale(s));
        }
        out
    }

    pub fn checked_wedge(&self, other: &Self) -> Result<Self> {
        self.check_frame(other)?;
        let mut out = Self::zero(&self.frame, self.degree + other.degree);
        if self.degree < 0 || other.degree < 0 {
            return Ok(out);
        }
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let mut idx: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
                out.accumulate(&mut idx, 1, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.checked_wedge(other).expect("wedge of multivectors over different frames")
    }

    /// Applies `f` to every coefficient, keeping frame and degree.
    pub fn map_coefficients<F: Fn(&Polynomial<S>) -> Polynomial<S>>(&self, f: F) -> Self {
        let mut out = Self::zero(&self.frame, self.degree);
        for (idx, c) in &self.terms {
            let p = f(c);
            assert!(p.vars() == self.vars(), "coefficient map changed variables");
            if !p.is_zero() {
                out.terms.insert(idx.clone(), p);
            }
        }
        out
    }

    /// Same coefficients over another frame with identically indexed generators.
    pub fn with_frame(&self, frame: &Frame) -> Result<Self> {
        let mut out = Self::zero(frame, self.degree);
        for (idx, c) in &self.terms {
            if idx.iter().any(|&i| i >= frame.len()) {
                return Err(Error::FrameMismatch(
                    self.frame.name().into(),
                    frame.name().into(),
                ));
            }
            out.terms.insert(idx.clone(), c.reembed(frame.vars())?);
        }
        Ok(out)
    }

    /// Replaces generator `i` by `images[i]` (degree 1 over `target`) and
    /// maps coefficients through `coef`.
    pub fn push_forward<F>(&self, target: &Frame, images: &[Multivector<S>], coef: F) -> Self
    where
        F: Fn(&Polynomial<S>) -> Polynomial<S>,
    {
        assert_eq!(images.len(), self.frame.len(), "one image per generator");
        let mut out = Self::zero(target, self.degree);
        for (idx, c) in &self.terms {
            let mut acc = Multivector::function(target, coef(c));
            for &i in idx {
                acc = acc.wedge(&images[i]);
            }
            out = &out + &acc;
        }
        out
    }

    /// `P(ξ¹,…,ξᵏ) = Σ_I P_I det[ξ^a(I_b)]` for covectors given by their
    /// coefficients on the frame generators.
    pub fn eval_on_covectors(&self, xis: &[Vec<Polynomial<S>>]) -> Result<Polynomial<S>> {
        let k = self.degree.max(0) as usize;
        if xis.len() != k {
            return Err(Error::Arity {
                expected: k,
                got: xis.len(),
            });
        }
        for xi in xis {
            if xi.len() != self.frame.len() {
                return Err(Error::Arity {
                    expected: self.frame.len(),
                    got: xi.len(),
                });
            }
        }
        let mut acc = Polynomial::zero(self.vars());
        for (idx, c) in &self.terms {
            let m: Vec<Vec<Polynomial<S>>> = xis
                .iter()
                .map(|xi| idx.iter().map(|&i| xi[i].clone()).collect())
                .collect();
            acc = &acc + &(c * &determinant(&m, self.vars()));
        }
        Ok(acc)
    }

    /// Interior product in the first slot: `(ι_ξ P)(…) = P(ξ, …)`.
    pub fn contract(&self, xi: &[Polynomial<S>]) -> Result<Self> {
        if xi.len() != self.frame.len() {
            return Err(Error::Arity {
                expected: self.frame.len(),
                got: xi.len(),
            });
        }
        let mut out = Self::zero(&self.frame, self.degree - 1);
        for (idx, c) in &self.terms {
            for (a, &i) in idx.iter().enumerate() {
                if xi[i].is_zero() {
                    continue;
                }
                let mut rest: Vec<usize> = idx.clone();
                rest.remove(a);
                let sign = if a % 2 == 0 { 1 } else { -1 };
                out.accumulate(&mut rest, sign, &(c * &xi[i]));
            }
        }
        Ok(out)
    }
}

/// Determinant by cofactor expansion (sizes here are tiny).
pub(crate) fn determinant<S: Scalar>(m: &[Vec<Polynomial<S>>], vars: &VarSet) -> Polynomial<S> {
    let n = m.len();
    match n {
        0 => Polynomial::one(vars),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Polynomial::zero(vars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial<S>>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][j] * &determinant(&minor, vars);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// `π♯` applied slotwise to a form: each `ε^j` becomes `π♯(ε^j) = π(ε^j, ·)`.
pub fn sharp_power<S: Scalar>(pi: &Multivector<S>, phi: &FormValue<S>) -> Result<Multivector<S>> {
    if pi.degree() != 2 && !pi.is_zero() {
        return Err(Error::DegreeMismatch(2, pi.degree()));
    }
    match phi.frame().primal() {
        Some(p) if p == pi.frame() => {}
        _ => {
            return Err(Error::FrameMismatch(
                pi.frame().name().into(),
                phi.frame().name().into(),
            ))
        }
    }
    let frame = pi.frame();
    let vars = frame.vars();
    let images: Vec<Multivector<S>> = (0..frame.len())
        .map(|j| {
            let mut xi = vec![Polynomial::zero(vars); frame.len()];
            xi[j] = Polynomial::one(vars);
            if pi.is_zero() {
                Multivector::zero(frame, 1)
            } else {
                pi.contract(&xi).expect("arity matches")
            }
        })
        .collect();
    Ok(phi.push_forward(frame, &images, Polynomial::clone))
}

impl<S: Scalar> PartialEq for Multivector<S> {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame
            && (self.degree == other.degree || (self.is_zero() && other.is_zero()))
            && self.terms == other.terms
    }
}

impl<'a, S: Scalar> Add<&'a Multivector<S>> for &'a Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: &'a Multivector<S>) -> Multivector<S> {
        self.checked_add(rhs).expect("incompatible multivectors")
    }
}

impl<'a, S: Scalar> Sub<&'a Multivector<S>> for &'a Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: &'a Multivector<S>) -> Multivector<S> {
        self.checked_add(&-rhs).expect("incompatible multivectors")
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        Multivector {
            frame: self.frame.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), -c)).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let gens = self.frame.generators();
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let basis: Vec<&str> = idx.iter().map(|&i| gens[i].as_str()).collect();
            if basis.is_empty() {
                write!(f, "{c}")?;
            } else if c.num_terms() == 1 && c.constant_value().is_some_and(|v| v.is_one()) {
                write!(f, "{}", basis.join("∧"))?;
            } else {
                write!(f, "({c})·{}", basis.join("∧"))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector[{}; {}]({self})", self.frame.name(), self.degree)
    }
}
