//! Multivariate polynomials with dense exponent vectors and sparse term maps.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered set of variable names. Cheap to clone; equality is by names.
#[derive(Clone)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<I, T>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidVarSet(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidVarSet(format!("duplicate name `{n}`")));
            }
        }
        Ok(VarSet(Arc::new(names)))
    }

    pub fn empty() -> Self {
        VarSet(Arc::new(Vec::new()))
    }

    /// `prefix1, ..., prefixn`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        VarSet::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("valid generated names")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// This set followed by `extra` (which must not collide).
    pub fn extended<I, T>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        VarSet::new(
            self.0
                .iter()
                .cloned()
                .chain(extra.into_iter().map(Into::into)),
        )
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => chars.all(|c| c.is_alphanumeric() || c == '_'),
        _ => false,
    }
}

/// Exponent vector. Ordered graded-lexicographically, the first variable
/// being the largest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over `S` in the variables of a [`VarSet`].
#[derive(Clone, PartialEq)]
pub struct Polynomial<S> {
    vars: VarSet,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero(vars: &VarSet) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: S) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, S::one())
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i), S::one());
        p
    }

    pub fn var_named(vars: &VarSet, name: &str) -> Result<Self> {
        Ok(Self::var(vars, vars.index(name)?))
    }

    /// Builds from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, S)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_value(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest exponent of variable `i` (None for the zero polynomial).
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable index `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.0[i] -= 1;
            out.add_term(n, c.clone() * S::from_i64(e as i64));
        }
        out
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self> {
        Ok(self.derivative(self.vars.index(var)?))
    }

    /// Evaluates at a point given in variable order.
    pub fn evaluate(&self, point: &[S]) -> Result<S> {
        if point.len() != self.vars.len() {
            return Err(Error::Arity {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Evaluates at a point given by name. Every variable must be assigned.
    pub fn evaluate_named(&self, point: &HashMap<String, S>) -> Result<S> {
        self.evaluate_with(point, S::clone)
    }

    /// Floating point evaluation at a point given by name.
    pub fn evaluate_f64(&self, point: &HashMap<String, f64>) -> Result<f64> {
        self.evaluate_with(point, S::to_f64)
    }

    /// As [`Polynomial::evaluate_named`] with an explicit coefficient map.
    pub fn evaluate_with<T, F>(&self, point: &HashMap<String, T>, conv: F) -> Result<T>
    where
        T: Scalar,
        F: Fn(&S) -> T,
    {
        let vals = self
            .vars
            .names()
            .iter()
            .map(|n| {
                point
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::MissingAssignment(n.clone()))
            })
            .collect::<Result<Vec<T>>>()?;
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = conv(c);
            for (x, &e) in vals.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// images' variable set.
    pub fn substitute(&self, images: &[Polynomial<S>], target: &VarSet) -> Self {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let mut powers: Vec<Vec<Polynomial<S>>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Moves the polynomial into another variable set by matching names.
    pub fn reembed(&self, target: &VarSet) -> Result<Self> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let map = self
            .vars
            .names()
            .iter()
            .map(|n| target.index(n))
            .collect::<Result<Vec<usize>>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in map.iter().enumerate() {
                e[k] = m.0[i];
            }
            out.add_term(Monomial(e.into_boxed_slice()), c.clone());
        }
        Ok(out)
    }

    /// Moves into `target`, failing if a variable that actually occurs has
    /// no counterpart there.
    pub fn restrict(&self, target: &VarSet) -> Result<Self> {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                e[target.index(self.vars.name(i))?] = x;
            }
            out.add_term(Monomial(e.into_boxed_slice()), c.clone());
        }
        Ok(out)
    }

    pub fn map_coefficients<T: Scalar, F: Fn(&S) -> T>(&self, f: F) -> Polynomial<T> {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            let mono = format_monomial(&self.vars, m);
            if k == 0 {
                match (mono.is_empty(), mag.is_one()) {
                    (true, _) => write!(f, "{c}")?,
                    (false, true) if !neg => write!(f, "{mono}")?,
                    (false, _) => write!(f, "{c}*{mono}")?,
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
                match (mono.is_empty(), mag.is_one()) {
                    (true, _) => write!(f, "{mag}")?,
                    (false, true) => write!(f, "{mono}")?,
                    (false, false) => write!(f, "{mag}*{mono}")?,
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

fn format_monomial(vars: &VarSet, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

impl<'a, S: Scalar> Add<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: &'a Polynomial<S>) -> Polynomial<S> {
        self.checked_add(rhs).expect("polynomial variable sets differ")
    }
}

impl<'a, S: Scalar> Sub<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: &'a Polynomial<S>) -> Polynomial<S> {
        self.checked_add(&-rhs).expect("polynomial variable sets differ")
    }
}

impl<'a, S: Scalar> Mul<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: &'a Polynomial<S>) -> Polynomial<S> {
        self.checked_mul(rhs).expect("polynomial variable sets differ")
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        -&self
    }
}
