//! JSON documents for the engine's inputs and reports.
//!
//! Generator indices in files are 1-based; coefficients are strings in the
//! coefficient grammar. Multivectors name their frame, which is resolved
//! against the frames in scope for the document being read.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebroid::LieAlgebroid;
use crate::differentials::{AlmostDifferential, QuasiLieBialgebroid};
use crate::error::{Error, Result};
use crate::exterior::{Frame, FrameKind, Multivector};
use crate::manin::{LieAlgebra, ManinQuasiTriple, PolynomialAction, QuadraticLieAlgebra, QuasiLieBialgebra};
use crate::parse::parse_scalar;
use crate::poly::{Polynomial, VarSet};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub idx: Vec<usize>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultivectorDoc {
    pub frame: String,
    pub degree: isize,
    #[serde(default)]
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub coefs: Vec<String>,
}

/// `kind: "tangent"` needs only the coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebroidDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub coords: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub frame: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchor: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketDoc>,
}

/// An almost differential together with its algebroid; `omega` makes it a
/// quasi-Lie bialgebroid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DifferentialDoc {
    pub algebroid: AlgebroidDoc,
    pub degree: isize,
    pub delta_x: Vec<MultivectorDoc>,
    pub delta_e: Vec<MultivectorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<MultivectorDoc>,
}

/// Structure constants as brackets of basis elements; rationals as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieAlgebraDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_basis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_basis: Option<Vec<Vec<String>>>,
}

/// One polynomial vector field per basis element of the acting algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub coords: Vec<String>,
    pub fields: Vec<MultivectorDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualDoc {
    pub label: String,
    pub value: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub residuals: Vec<ResidualDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
}

impl<S: Scalar> From<&Report<S>> for ReportDoc {
    fn from(r: &Report<S>) -> Self {
        ReportDoc {
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckDoc {
                    name: c.name.clone(),
                    passed: c.passed(),
                    residuals: c
                        .residuals
                        .iter()
                        .map(|x| ResidualDoc {
                            label: x.label.clone(),
                            value: x.value.to_string(),
                            zero: x.value.is_zero(),
                        })
                        .collect(),
                })
                .collect(),
            flags: r.flags.iter().cloned().collect(),
        }
    }
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Syntax {
        position: e.column(),
        expected: format!("valid document (line {})", e.line()),
        found: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

fn one_based(i: usize, n: usize, what: &str) -> Result<usize> {
    if i == 0 || i > n {
        return Err(Error::Invalid(format!("{what} index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn constant<S: Scalar>(text: &str) -> Result<S> {
    let p: Polynomial<S> = parse_scalar(text, &VarSet::empty())?;
    Ok(p.constant_value().unwrap_or_else(S::zero))
}

fn constant_matrix<S: Scalar>(rows: &[Vec<String>]) -> Result<Vec<Vec<S>>> {
    rows.iter().map(|r| r.iter().map(|t| constant(t)).collect()).collect()
}

pub fn multivector_from_doc<S: Scalar>(doc: &MultivectorDoc, frames: &[&Frame]) -> Result<Multivector<S>> {
    let frame = frames.iter().find(|f| f.name() == doc.frame).ok_or_else(|| {
        let known: Vec<&str> = frames.iter().map(|f| f.name()).collect();
        Error::Invalid(format!("unknown frame `{}` (expected one of {known:?})", doc.frame))
    })?;
    if doc.degree < 0 {
        if !doc.terms.is_empty() {
            return Err(Error::Invalid("degree −1 multivectors have no terms".into()));
        }
        return Ok(Multivector::zero(frame, doc.degree));
    }
    let terms = doc
        .terms
        .iter()
        .map(|t| {
            let idx = t
                .idx
                .iter()
                .map(|&i| one_based(i, frame.len(), "generator"))
                .collect::<Result<Vec<_>>>()?;
            Ok((idx, parse_scalar(&t.coef, frame.vars())?))
        })
        .collect::<Result<Vec<_>>>()?;
    Multivector::from_terms(frame, doc.degree as usize, terms)
}

pub fn multivector_to_doc<S: Scalar>(m: &Multivector<S>) -> MultivectorDoc {
    MultivectorDoc {
        frame: m.frame().name().to_string(),
        degree: m.degree(),
        terms: m
            .terms()
            .map(|(idx, c)| TermDoc {
                idx: idx.iter().map(|i| i + 1).collect(),
                coef: c.to_string(),
            })
            .collect(),
    }
}

fn varset(coords: &[String], params: &[String]) -> Result<VarSet> {
    VarSet::new(coords.iter().chain(params).cloned())
}

pub fn algebroid_from_doc<S: Scalar>(doc: &AlgebroidDoc) -> Result<LieAlgebroid<S>> {
    let vars = varset(&doc.coords, &doc.params)?;
    let n = doc.coords.len();
    if let Some(b) = doc.base_dim {
        if b != n {
            return Err(Error::Arity { expected: b, got: n });
        }
    }
    let coords: Vec<usize> = (0..n).collect();
    match doc.kind.as_deref() {
        Some("tangent") => {
            let name = doc.name.as_deref().unwrap_or("TM");
            let frame = Frame::tangent(name, FrameKind::TangentOfBase, &vars, &coords);
            return Ok(LieAlgebroid::tangent_with_frame(frame, coords));
        }
        None | Some("algebroid") => {}
        Some(other) => return Err(Error::Invalid(format!("unknown algebroid kind `{other}`"))),
    }
    let s = doc.frame.len();
    if let Some(r) = doc.rank {
        if r != s {
            return Err(Error::Arity { expected: r, got: s });
        }
    }
    let frame = Frame::new(doc.name.as_deref().unwrap_or("A"), FrameKind::AlgebroidSections, &doc.frame, &vars)?;
    if doc.anchor.len() != s {
        return Err(Error::Arity { expected: s, got: doc.anchor.len() });
    }
    let anchor = doc
        .anchor
        .iter()
        .map(|row| {
            if row.len() != n {
                return Err(Error::Arity { expected: n, got: row.len() });
            }
            row.iter().map(|t| parse_scalar(t, &vars)).collect()
        })
        .collect::<Result<Vec<Vec<Polynomial<S>>>>>()?;
    let mut brackets = BTreeMap::new();
    for b in &doc.brackets {
        let (i, j) = (one_based(b.i, s, "bracket")?, one_based(b.j, s, "bracket")?);
        if b.coefs.len() != s {
            return Err(Error::Arity { expected: s, got: b.coefs.len() });
        }
        let coefs = b.coefs.iter().map(|t| parse_scalar(t, &vars)).collect::<Result<Vec<_>>>()?;
        match i.cmp(&j) {
            std::cmp::Ordering::Less => {
                brackets.insert((i, j), coefs);
            }
            std::cmp::Ordering::Greater => {
                brackets.insert((j, i), coefs.iter().map(|c| -c).collect());
            }
            std::cmp::Ordering::Equal => {
                if coefs.iter().any(|c| !c.is_zero()) {
                    return Err(Error::Invalid(format!("[e{},e{}] must vanish", b.i, b.i)));
                }
            }
        }
    }
    LieAlgebroid::new(frame, coords, anchor, &brackets)
}

pub fn algebroid_to_doc<S: Scalar>(a: &LieAlgebroid<S>) -> AlgebroidDoc {
    let vars = a.vars();
    let coords: Vec<String> = a.coords().iter().map(|&c| vars.name(c).to_string()).collect();
    let params = (0..vars.len())
        .filter(|v| !a.coords().contains(v))
        .map(|v| vars.name(v).to_string())
        .collect();
    if a.frame() == a.base_frame() {
        return AlgebroidDoc {
            kind: Some("tangent".into()),
            name: Some(a.frame().name().into()),
            base_dim: Some(coords.len()),
            rank: None,
            coords,
            params,
            frame: vec![],
            anchor: vec![],
            brackets: vec![],
        };
    }
    let s = a.rank();
    let mut brackets = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            let b = a.structure(i, j);
            if !b.is_zero() {
                brackets.push(BracketDoc {
                    i: i + 1,
                    j: j + 1,
                    coefs: (0..s).map(|k| b.coeff(&[k]).to_string()).collect(),
                });
            }
        }
    }
    AlgebroidDoc {
        kind: None,
        name: Some(a.frame().name().into()),
        base_dim: Some(coords.len()),
        rank: Some(s),
        coords,
        params,
        frame: a.frame().generators().to_vec(),
        anchor: a.anchor().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        brackets,
    }
}

pub fn differential_from_doc<S: Scalar>(doc: &DifferentialDoc) -> Result<AlmostDifferential<S>> {
    let a = algebroid_from_doc(&doc.algebroid)?;
    differential_on(&a, doc)
}

fn differential_on<S: Scalar>(a: &LieAlgebroid<S>, doc: &DifferentialDoc) -> Result<AlmostDifferential<S>> {
    let frames = [a.frame()];
    let dx = doc.delta_x.iter().map(|m| multivector_from_doc(m, &frames)).collect::<Result<Vec<_>>>()?;
    let de = doc.delta_e.iter().map(|m| multivector_from_doc(m, &frames)).collect::<Result<Vec<_>>>()?;
    AlmostDifferential::new(a, doc.degree, dx, de)
}

pub fn qlb_from_doc<S: Scalar>(doc: &DifferentialDoc) -> Result<QuasiLieBialgebroid<S>> {
    let a = algebroid_from_doc(&doc.algebroid)?;
    let d = differential_on(&a, doc)?;
    let omega = match &doc.omega {
        Some(m) => multivector_from_doc(m, &[a.frame()])?,
        None => return Err(Error::Invalid("a quasi-Lie bialgebroid needs `omega`".into())),
    };
    QuasiLieBialgebroid::new(d, omega)
}

pub fn differential_to_doc<S: Scalar>(d: &AlmostDifferential<S>, omega: Option<&Multivector<S>>) -> DifferentialDoc {
    DifferentialDoc {
        algebroid: algebroid_to_doc(d.algebroid()),
        degree: d.degree(),
        delta_x: d.delta_x().iter().map(multivector_to_doc).collect(),
        delta_e: d.delta_e().iter().map(multivector_to_doc).collect(),
        omega: omega.map(multivector_to_doc),
    }
}

pub fn qlb_to_doc<S: Scalar>(q: &QuasiLieBialgebroid<S>) -> DifferentialDoc {
    differential_to_doc(q.delta(), Some(q.omega()))
}

pub fn lie_algebra_from_doc<S: Scalar>(doc: &LieAlgebraDoc) -> Result<LieAlgebra<S>> {
    let names = if doc.names.is_empty() {
        (1..=doc.dim).map(|i| format!("u{i}")).collect()
    } else {
        doc.names.clone()
    };
    if names.len() != doc.dim {
        return Err(Error::Arity { expected: doc.dim, got: names.len() });
    }
    let mut brackets = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for b in &doc.brackets {
        let (i, j) = (one_based(b.i, doc.dim, "bracket")?, one_based(b.j, doc.dim, "bracket")?);
        if b.coefs.len() != doc.dim {
            return Err(Error::Arity { expected: doc.dim, got: b.coefs.len() });
        }
        let v: Vec<S> = b.coefs.iter().map(|t| constant(t)).collect::<Result<_>>()?;
        let (key, v) = if i < j { ((i, j), v) } else { ((j, i), v.into_iter().map(|x| -x).collect()) };
        if i == j || !seen.insert(key) {
            return Err(Error::Invalid(format!("bracket ({}, {}) repeated or diagonal", b.i, b.j)));
        }
        brackets.insert(key, v);
    }
    LieAlgebra::from_brackets(names, &brackets)
}

pub fn lie_algebra_to_doc<S: Scalar>(g: &LieAlgebra<S>) -> LieAlgebraDoc {
    let n = g.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = &g.constants()[i][j];
            if c.iter().any(|x| !x.is_zero()) {
                brackets.push(BracketDoc {
                    i: i + 1,
                    j: j + 1,
                    coefs: c.iter().map(|x| x.to_string()).collect(),
                });
            }
        }
    }
    LieAlgebraDoc {
        dim: n,
        names: g.names().to_vec(),
        brackets,
        pairing: None,
        g_basis: None,
        h_basis: None,
    }
}

pub fn quadratic_from_doc<S: Scalar>(doc: &LieAlgebraDoc) -> Result<QuadraticLieAlgebra<S>> {
    let pairing = doc
        .pairing
        .as_ref()
        .ok_or_else(|| Error::Invalid("a quadratic Lie algebra needs `pairing`".into()))?;
    QuadraticLieAlgebra::new(lie_algebra_from_doc(doc)?, constant_matrix(pairing)?)
}

pub fn triple_from_doc<S: Scalar>(doc: &LieAlgebraDoc) -> Result<ManinQuasiTriple<S>> {
    let d = quadratic_from_doc(doc)?;
    let (Some(g), Some(h)) = (&doc.g_basis, &doc.h_basis) else {
        return Err(Error::Invalid("a quasi-triple needs `g_basis` and `h_basis`".into()));
    };
    ManinQuasiTriple::new(d, constant_matrix(g)?, constant_matrix(h)?)
}

fn strings<S: Scalar>(m: &[Vec<S>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn triple_to_doc<S: Scalar>(t: &ManinQuasiTriple<S>) -> LieAlgebraDoc {
    LieAlgebraDoc {
        pairing: Some(strings(t.d().pairing())),
        g_basis: Some(strings(t.g_basis())),
        h_basis: Some(strings(t.h_basis())),
        ..lie_algebra_to_doc(t.d().algebra())
    }
}

/// (c, F, Ω) of a quasi-Lie bialgebra as nonzero entries, 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasiLieBialgebraDoc {
    pub algebra: LieAlgebraDoc,
    /// `[i, j, k, F_i^{jk}]` for j < k.
    pub cobracket: Vec<(usize, usize, usize, String)>,
    /// `[i, j, k, Ω^{ijk}]` for i < j < k.
    pub omega: Vec<(usize, usize, usize, String)>,
}

pub fn quasi_lie_bialgebra_to_doc<S: Scalar>(b: &QuasiLieBialgebra<S>) -> QuasiLieBialgebraDoc {
    let m = b.dim();
    let mut cobracket = Vec::new();
    let mut omega = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in j + 1..m {
                let f = b.cobracket(i, j, k);
                if !f.is_zero() {
                    cobracket.push((i + 1, j + 1, k + 1, f.to_string()));
                }
                let w = b.omega(i, j, k);
                if i < j && !w.is_zero() {
                    omega.push((i + 1, j + 1, k + 1, w.to_string()));
                }
            }
        }
    }
    QuasiLieBialgebraDoc {
        algebra: lie_algebra_to_doc(b.algebra()),
        cobracket,
        omega,
    }
}

/// The tangent algebroid of a coordinate space, frame named `name`.
pub fn coordinate_space<S: Scalar>(name: &str, coords: &[String], params: &[String]) -> Result<LieAlgebroid<S>> {
    let vars = varset(coords, params)?;
    let idx: Vec<usize> = (0..coords.len()).collect();
    let frame = Frame::tangent(name, FrameKind::TangentOfBase, &vars, &idx);
    Ok(LieAlgebroid::tangent_with_frame(frame, idx))
}

/// An action of `algebra` on the coordinate space `doc.coords` (frame "TM").
pub fn action_from_doc<S: Scalar>(algebra: LieAlgebra<S>, doc: &ActionDoc) -> Result<PolynomialAction<S>> {
    let space = coordinate_space("TM", &doc.coords, &[])?;
    let fields = doc
        .fields
        .iter()
        .map(|m| multivector_from_doc(m, &[space.frame()]))
        .collect::<Result<Vec<_>>>()?;
    PolynomialAction::new(algebra, space, fields)
}
