//! Coisotropic subspaces and composition of coisotropic relations.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multivector::{combinations, PointedMultivector};

/// Singular value ratio below which a basis counts as dependent.
pub const RANK_TOL: f64 = 1e-9;

/// W ⊆ ℝ^d given by independent basis vectors.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    basis: Vec<DVector<f64>>,
}

impl Subspace {
    /// Rejects dependent bases.
    pub fn new(dim: usize, basis: Vec<DVector<f64>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != dim) {
            return Err(Error::Shape(format!("basis vectors must have length {dim}")));
        }
        if !basis.is_empty() {
            let sv = matrix_of(dim, &basis).singular_values();
            let max = sv.max();
            let min = sv.min();
            if max == 0.0 || min / max < RANK_TOL {
                return Err(Error::RankDeficient(if max == 0.0 { 0.0 } else { min / max }));
            }
        }
        Ok(Subspace { dim, basis })
    }

    /// Orthonormal basis of the span of arbitrary vectors.
    pub fn span(dim: usize, vectors: &[DVector<f64>]) -> Self {
        if vectors.is_empty() {
            return Subspace { dim, basis: vec![] };
        }
        let m = matrix_of(dim, vectors);
        let svd = m.svd(true, false);
        let u = svd.u.expect("requested U");
        let smax = svd.singular_values.max();
        let basis = (0..svd.singular_values.len())
            .filter(|&i| smax > 0.0 && svd.singular_values[i] > RANK_TOL * smax)
            .map(|i| u.column(i).into_owned())
            .collect();
        Subspace { dim, basis }
    }

    pub fn whole(dim: usize) -> Self {
        Subspace { dim, basis: (0..dim).map(|i| unit(dim, i)).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DVector<f64>] {
        &self.basis
    }

    /// Orthonormal basis of W° ⊂ (ℝ^d)* ≅ ℝ^d.
    pub fn annihilator(&self) -> Vec<DVector<f64>> {
        let d = self.dim;
        let q = Subspace::span(d, &self.basis);
        let mut proj = DMatrix::<f64>::identity(d, d);
        for u in &q.basis {
            proj -= u * u.transpose();
        }
        let eig = SymmetricEigen::new(proj);
        (0..d)
            .filter(|&i| eig.eigenvalues[i] > 0.5)
            .map(|i| eig.eigenvectors.column(i).into_owned())
            .collect()
    }
}

fn matrix_of(dim: usize, vs: &[DVector<f64>]) -> DMatrix<f64> {
    DMatrix::from_fn(dim, vs.len(), |i, j| vs[j][i])
}

pub(crate) fn unit(d: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(d, |j, _| if i == j { 1.0 } else { 0.0 })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoisotropyResult {
    pub passed: bool,
    pub max_residual: f64,
    /// ‖Π‖ (largest component) used to scale the tolerance
    pub scale: f64,
    pub tolerance: f64,
}

/// Π vanishes on all k-tuples from W°, up to `tol·‖Π‖`.
pub fn is_coisotropic(pi: &PointedMultivector, w: &Subspace, tol: f64) -> Result<CoisotropyResult> {
    if pi.dim() != w.ambient_dim() {
        return Err(Error::Shape(format!("Π lives on ℝ^{}, W in ℝ^{}", pi.dim(), w.ambient_dim())));
    }
    if pi.degree() > pi.dim() {
        return Err(Error::Degree { degree: pi.degree(), dim: pi.dim() });
    }
    let ann = w.annihilator();
    let k = pi.degree();
    let mut max = 0.0f64;
    if k == 0 {
        max = pi.max_abs();
    } else if k == 2 && ann.len() >= 2 {
        let p = pi.bivector_matrix();
        let a = matrix_of(pi.dim(), &ann);
        let r = a.transpose() * p * a;
        max = r.amax();
    } else {
        for idx in combinations(ann.len(), k) {
            let xs: Vec<DVector<f64>> = idx.iter().map(|&i| ann[i].clone()).collect();
            max = max.max(pi.eval(&xs).abs());
        }
    }
    let scale = pi.max_abs();
    Ok(CoisotropyResult { passed: max <= tol * scale, max_residual: max, scale, tolerance: tol })
}

/// R(C) = {u | ∃v∈C, (u,v)∈R} for R ⊆ V₁×V₂, C ⊆ V₂.
pub fn compose(r: &Subspace, c: &Subspace, d1: usize) -> Result<Subspace> {
    let d2 = c.ambient_dim();
    if r.ambient_dim() != d1 + d2 {
        return Err(Error::Shape("R must live in V₁×V₂".into()));
    }
    // (R ∩ V₁×C)° = R° + 0×C°
    let mut gens = r.annihilator();
    for eta in c.annihilator() {
        gens.push(DVector::from_fn(d1 + d2, |i, _| if i < d1 { 0.0 } else { eta[i - d1] }));
    }
    let inter = Subspace { dim: d1 + d2, basis: gens };
    let inter = Subspace::span(d1 + d2, &Subspace::span(d1 + d2, inter.basis()).annihilator());
    let proj: Vec<DVector<f64>> = inter.basis().iter().map(|v| v.rows(0, d1).into_owned()).collect();
    Ok(Subspace::span(d1, &proj))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompositionOutcome {
    Pass,
    /// R or C was not coisotropic, so the conclusion was not tested
    PreconditionFailed,
    ConclusionFailed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompositionReport {
    pub outcome: CompositionOutcome,
    pub relation: CoisotropyResult,
    pub argument: CoisotropyResult,
    pub conclusion: Option<CoisotropyResult>,
    pub image_rank: Option<usize>,
}

/// If R is coisotropic for Π₁⊕Π₂ and C for Π₂, then R(C) is coisotropic for Π₁.
pub fn compose_relation_check(
    pi1: &PointedMultivector,
    pi2: &PointedMultivector,
    r: &Subspace,
    c: &Subspace,
    tol: f64,
) -> Result<CompositionReport> {
    if pi1.degree() != pi2.degree() {
        return Err(Error::Shape("Π₁ and Π₂ must have the same degree".into()));
    }
    let sum = PointedMultivector::direct_sum(&[(pi1, 1.0), (pi2, 1.0)]);
    let relation = is_coisotropic(&sum, r, tol)?;
    let argument = is_coisotropic(pi2, c, tol)?;
    if !(relation.passed && argument.passed) {
        return Ok(CompositionReport {
            outcome: CompositionOutcome::PreconditionFailed,
            relation,
            argument,
            conclusion: None,
            image_rank: None,
        });
    }
    let image = compose(r, c, pi1.dim())?;
    let conclusion = is_coisotropic(pi1, &image, tol)?;
    Ok(CompositionReport {
        outcome: if conclusion.passed { CompositionOutcome::Pass } else { CompositionOutcome::ConclusionFailed },
        relation,
        argument,
        image_rank: Some(image.rank()),
        conclusion: Some(conclusion),
    })
}
