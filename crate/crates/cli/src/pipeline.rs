//! One function per command: read the input, run the engine, collect the
//! report and the constructed document.

use std::fs;
use std::path::Path;

use gerstenhaber::io::{self, DifferentialDoc, LieAlgebraDoc, MultivectorDoc, ReportDoc};
use gerstenhaber::{
    check_hamiltonian, double, parse_scalar, pi_s, transformation_qlb, twisted_poisson_qlb, AlgebroidAction, Check,
    Differential, Error as CoreError, Multivec, Poly, Qlb, Rational, Report, TotalSpace, TwistedPoisson,
};
use pointcheck::{is_coisotropic, run_sample_set, PointedMultivector, SampleSet, Subspace, DEFAULT_TOL};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::docs::{CoisotropyDoc, HamiltonianDoc, SectionDoc, TransformationDoc, TwistedPoissonDoc};
use crate::output::{Output, ReportBody};

/// Unreadable or malformed input; exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

pub type Outcome = Result<Output, InputError>;

/// Numeric overrides from the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub fd_step: Option<f64>,
    pub count: Option<usize>,
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    io::from_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn value<T: Serialize>(doc: &T) -> Option<serde_json::Value> {
    Some(serde_json::to_value(doc).expect("documents serialize"))
}

fn symbolic(command: &str, report: &Report<Rational>, result: Option<serde_json::Value>) -> Output {
    Output::new(command, ReportBody::Symbolic(ReportDoc::from(report)), result)
}

/// Failed preconditions are verification failures and carry their defects;
/// every other engine error is an input problem.
fn engine<T>(command: &str, path: &Path, r: gerstenhaber::Result<T>) -> Result<Result<T, Output>, InputError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(CoreError::Precondition { what, defects }) => {
            let doc = ReportDoc {
                passed: false,
                checks: vec![io::CheckDoc {
                    name: format!("precondition: {what}"),
                    passed: false,
                    residuals: defects
                        .into_iter()
                        .map(|(label, value)| io::ResidualDoc { label, value, zero: false })
                        .collect(),
                }],
                flags: Default::default(),
            };
            Ok(Err(Output::new(command, ReportBody::Symbolic(doc), None)))
        }
        Err(e) => Err(InputError(format!("{}: {e}", path.display()))),
    }
}

macro_rules! engine {
    ($cmd:expr, $path:expr, $r:expr) => {
        match engine($cmd, $path, $r)? {
            Ok(v) => v,
            Err(out) => return Ok(out),
        }
    };
}

fn input<T>(path: &Path, r: gerstenhaber::Result<T>) -> Result<T, InputError> {
    r.map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn validate_algebroid(path: &Path) -> Outcome {
    let doc: io::AlgebroidDoc = read(path)?;
    let a = input(path, io::algebroid_from_doc::<Rational>(&doc))?;
    Ok(symbolic("validate-algebroid", &a.validate(), None))
}

pub fn check_differential(path: &Path) -> Outcome {
    let doc: DifferentialDoc = read(path)?;
    let d: Differential = input(path, io::differential_from_doc(&doc))?;
    let report = d.algebroid().validate().merge(d.is_differential());
    Ok(symbolic("check-differential", &report, None))
}

pub fn check_qlb(path: &Path) -> Outcome {
    let doc: DifferentialDoc = read(path)?;
    let q: Qlb = input(path, io::qlb_from_doc(&doc))?;
    let report = q.algebroid().validate().merge(q.check());
    Ok(symbolic("check-qlb", &report, None))
}

/// Twists by t, optionally followed by −t; the result is the final structure.
pub fn twist(path: &Path, t_path: &Path, then_negate: bool) -> Outcome {
    let cmd = "twist";
    let doc: DifferentialDoc = read(path)?;
    let q: Qlb = input(path, io::qlb_from_doc(&doc))?;
    let t_doc: MultivectorDoc = read(t_path)?;
    let t: Multivec = input(t_path, io::multivector_from_doc(&t_doc, &[q.algebroid().frame()]))?;
    let mut out = engine!(cmd, t_path, q.twist_unchecked(&t));
    let mut report = out.check();
    if then_negate {
        out = engine!(cmd, t_path, out.twist_unchecked(&-&t));
        let mut back = same_differential("twist-then-negate-identity", out.delta(), q.delta());
        back.push("Ω″ − Ω", out.omega() - q.omega());
        report = report.merge(out.check()).merge(Report::new(vec![back]));
    }
    Ok(symbolic(cmd, &report, value(&io::qlb_to_doc(&out))))
}

pub fn base_field(path: &Path) -> Outcome {
    let doc: DifferentialDoc = read(path)?;
    let d: Differential = input(path, io::differential_from_doc(&doc))?;
    let (pi, report) = d.base_field();
    Ok(symbolic("base-field", &report, value(&io::multivector_to_doc(&pi))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum LiftKind {
    Linear,
    Complete,
    Vertical,
    Gauge,
}

/// Residuals of δ′ − δ generator by generator.
fn same_differential(name: &str, got: &Differential, want: &Differential) -> Check<Rational> {
    let mut c = Check::new(name);
    let vars = got.algebroid().vars();
    for (j, (x, y)) in got.delta_x().iter().zip(want.delta_x()).enumerate() {
        c.push(format!("δ{}", vars.name(got.algebroid().coords()[j])), x - y);
    }
    let frame = got.algebroid().frame();
    for (i, (x, y)) in got.delta_e().iter().zip(want.delta_e()).enumerate() {
        c.push(format!("δ{}", frame.generators()[i]), x - y);
    }
    c
}

pub fn lift(kind: LiftKind, path: &Path, param: Option<&str>) -> Outcome {
    let cmd = "lift";
    if kind == LiftKind::Linear {
        let doc: DifferentialDoc = read(path)?;
        let d: Differential = input(path, io::differential_from_doc(&doc))?;
        let total = input(path, TotalSpace::new(d.algebroid()))?;
        let pi = engine!(cmd, path, total.linear_lift(&d));
        let back = engine!(cmd, path, total.almost_differential_of(&pi));
        let report = Report::new(vec![same_differential("linear-lift-round-trip", &back, &d)]);
        return Ok(symbolic(cmd, &report, value(&io::multivector_to_doc(&pi))));
    }
    let doc: SectionDoc = read(path)?;
    let a = input(path, io::algebroid_from_doc::<Rational>(&doc.algebroid))?;
    let p: Multivec = input(path, io::multivector_from_doc(&doc.section, &[a.frame()]))?;
    let total = input(path, TotalSpace::new(&a))?;
    let (pi, report) = match kind {
        LiftKind::Complete => {
            let pi = engine!(cmd, path, total.complete_lift(&p));
            let back = engine!(cmd, path, total.almost_differential_of(&pi));
            let want = engine!(cmd, path, Differential::coboundary(&a, &p));
            (pi, Report::new(vec![same_differential("complete-lift-is-coboundary", &back, &want)]))
        }
        LiftKind::Vertical => (engine!(cmd, path, total.vertical_lift(&p)), Report::empty()),
        LiftKind::Gauge => {
            let t = param.ok_or_else(|| InputError("gauge lift needs --param".into()))?;
            (engine!(cmd, path, total.gauge_lift(&p, t)), Report::empty())
        }
        LiftKind::Linear => unreachable!(),
    };
    Ok(symbolic(cmd, &report, value(&io::multivector_to_doc(&pi))))
}

/// The QLB over a point of a Manin quasi-triple.
pub fn manin_extract(path: &Path) -> Outcome {
    let cmd = "manin-extract";
    let doc: LieAlgebraDoc = read(path)?;
    let t = input(path, io::triple_from_doc::<Rational>(&doc))?;
    let report = t.validate();
    if !report.passed() {
        return Ok(symbolic(cmd, &report, None));
    }
    let b = engine!(cmd, path, t.extract_qlb());
    let q = b.to_qlb();
    let report = report.merge(q.check());
    Ok(symbolic(cmd, &report, value(&io::qlb_to_doc(&q))))
}

/// The double 𝔤⊕𝔤 of a Lie algebra with invariant pairing K.
pub fn double_of(path: &Path) -> Outcome {
    let cmd = "double";
    let doc: LieAlgebraDoc = read(path)?;
    let q = input(path, io::quadratic_from_doc::<Rational>(&doc))?;
    let pairing = q.validate();
    let t = engine!(cmd, path, double(q.algebra(), q.pairing()));
    let mut report = pairing.merge(t.validate());
    if report.passed() {
        let b = engine!(cmd, path, t.extract_qlb());
        report = report.merge(b.to_qlb().check());
    }
    Ok(symbolic(cmd, &report, value(&io::triple_to_doc(&t))))
}

pub fn transformation(path: &Path) -> Outcome {
    let cmd = "transformation-qlb";
    let doc: TransformationDoc = read(path)?;
    let t = input(path, io::triple_from_doc::<Rational>(&doc.triple))?;
    let act = input(path, io::action_from_doc(t.d().algebra().clone(), &doc.action))?;
    let (b, act) = engine!(cmd, path, act.in_triple_basis(&t));
    let (qlb, report) = engine!(cmd, path, transformation_qlb(&b, &act));
    let (pi, sym) = engine!(cmd, path, pi_s(&b, &act));
    let (base, skew) = qlb.delta().base_field();
    let mut same = Check::new("base-field-equals-pi-s");
    let base = input(path, base.with_frame(pi.frame()))?;
    same.push("π_M − Π_S", &base - &pi);
    let report = report.merge(sym).merge(skew).merge(Report::new(vec![same]));
    Ok(symbolic(cmd, &report, value(&io::qlb_to_doc(&qlb))))
}

pub fn twisted_poisson(path: &Path) -> Outcome {
    let cmd = "twisted-poisson";
    let doc: TwistedPoissonDoc = read(path)?;
    let space = input(path, io::coordinate_space::<Rational>("TM", &doc.coords, &[]))?;
    let names: Vec<String> = doc.coords.iter().map(|c| format!("d{c}")).collect();
    let dual = input(path, space.frame().dual_with("T*M", names))?;
    let pi = input(path, io::multivector_from_doc(&doc.pi, &[space.frame()]))?;
    let phi = input(path, io::multivector_from_doc(&doc.phi, &[&dual]))?;
    let tp = TwistedPoisson { space, pi, phi };
    let pre = engine!(cmd, path, tp.preconditions());
    if !pre.passed() {
        return Ok(symbolic(cmd, &pre, None));
    }
    let (qlb, report) = engine!(cmd, path, twisted_poisson_qlb(&tp));
    Ok(symbolic(cmd, &pre.merge(report), value(&io::qlb_to_doc(&qlb))))
}

pub fn hamiltonian(path: &Path) -> Outcome {
    let cmd = "check-hamiltonian";
    let doc: HamiltonianDoc = read(path)?;
    let qlb: Qlb = input(path, io::qlb_from_doc(&doc.qlb))?;
    let space = input(path, io::coordinate_space::<Rational>("TX", &doc.coords, &doc.params))?;
    let fields = doc
        .fields
        .iter()
        .map(|m| io::multivector_from_doc(m, &[space.frame()]))
        .collect::<gerstenhaber::Result<Vec<_>>>();
    let fields = input(path, fields)?;
    let momentum = doc
        .momentum
        .iter()
        .map(|m| parse_scalar(m, space.vars()))
        .collect::<gerstenhaber::Result<Vec<Poly>>>();
    let momentum = input(path, momentum)?;
    let pi = input(path, io::multivector_from_doc(&doc.pi, &[space.frame()]))?;
    let act = input(path, AlgebroidAction::new(qlb.algebroid(), &space, fields, momentum))?;
    let report = engine!(cmd, path, check_hamiltonian(&qlb, &act, &pi));
    Ok(symbolic(cmd, &report, None))
}

pub fn coisotropy(path: &Path, over: &Overrides) -> Outcome {
    let doc: CoisotropyDoc = read(path)?;
    let bad = |e: pointcheck::Error| InputError(format!("{}: {e}", path.display()));
    let mut pi = PointedMultivector::zeros(doc.dim, doc.degree);
    for t in &doc.terms {
        if t.idx.len() != doc.degree || t.idx.iter().any(|&i| i == 0 || i > doc.dim) {
            return Err(InputError(format!("{}: term index {:?} outside 1..={}", path.display(), t.idx, doc.dim)));
        }
        let idx: Vec<usize> = t.idx.iter().map(|i| i - 1).collect();
        pi.add_term(&idx, t.value);
    }
    let vectors = doc
        .subspace
        .iter()
        .map(|v| {
            if v.len() == doc.dim {
                Ok(nalgebra::DVector::from_column_slice(v))
            } else {
                Err(InputError(format!("{}: subspace vector of length {} in dimension {}", path.display(), v.len(), doc.dim)))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let w = Subspace::new(doc.dim, vectors).map_err(bad)?;
    let tol = over.tolerance.or(doc.tolerance).unwrap_or(DEFAULT_TOL);
    let r = is_coisotropic(&pi, &w, tol).map_err(bad)?;
    Ok(Output::new("coisotropy", ReportBody::Coisotropy(r), None))
}

pub fn groupoid_sample(path: &Path, over: &Overrides) -> Outcome {
    let mut set: SampleSet = read(path)?;
    if let Some(s) = over.seed {
        set.seed = s;
    }
    if let Some(c) = over.count {
        set.count = c;
    }
    if let Some(t) = over.tolerance {
        set.tolerance = t;
    }
    if let Some(h) = over.fd_step {
        set.fd_step = h;
    }
    let r = run_sample_set(&set).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(Output::new("groupoid-sample", ReportBody::Groupoid(r), None))
}
