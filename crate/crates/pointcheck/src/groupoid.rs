//! Groupoid models in charts and the graph coisotropy test for
//! multiplicativity.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coisotropic::{is_coisotropic, CoisotropyResult, Subspace};
use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::multivector::PointedMultivector;

/// A Lie groupoid with charts around every arrow and a k-vector field Π.
///
/// Composable pairs (γ₁, γ₂) with β(γ₁) = α(γ₂) are parametrized by a
/// manifold of their own, moved around by [`GroupoidModel::move_pair`].
pub trait GroupoidModel {
    type Arrow: Clone;
    type Pair: Clone;

    fn arrow_dim(&self) -> usize;
    fn pair_dim(&self) -> usize;
    fn degree(&self) -> usize;
    fn random_pair(&self, rng: &mut dyn rand::RngCore) -> Self::Pair;
    /// The pair at chart coordinates z around `p`; z = 0 gives `p`.
    fn move_pair(&self, p: &Self::Pair, z: &[f64]) -> Self::Pair;
    fn factors(&self, p: &Self::Pair) -> (Self::Arrow, Self::Arrow);
    fn multiply(&self, a: &Self::Arrow, b: &Self::Arrow) -> Self::Arrow;
    /// Chart coordinates of `q` in the chart centered at `center`.
    fn chart_inv(&self, center: &Self::Arrow, q: &Self::Arrow) -> Result<DVector<f64>>;
    /// Mismatch of β(a) and α(b).
    fn composable_defect(&self, a: &Self::Arrow, b: &Self::Arrow) -> f64;
    /// Π at an arrow, in the chart centered there.
    fn multivector(&self, at: &Self::Arrow) -> PointedMultivector;
}

/// (g, h, gh) for one composable pair.
pub struct GroupoidChartSample<'a, M: GroupoidModel> {
    pub model: &'a M,
    pub pair: M::Pair,
}

impl<'a, M: GroupoidModel> GroupoidChartSample<'a, M> {
    pub fn new(model: &'a M, pair: M::Pair) -> Self {
        GroupoidChartSample { model, pair }
    }

    pub fn random(model: &'a M, rng: &mut dyn rand::RngCore) -> Self {
        let pair = model.random_pair(rng);
        Self::new(model, pair)
    }

    pub fn triple(&self) -> (M::Arrow, M::Arrow, M::Arrow) {
        let (a, b) = self.model.factors(&self.pair);
        let c = self.model.multiply(&a, &b);
        (a, b, c)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiplicativityReport {
    pub passed: bool,
    pub coisotropy: CoisotropyResult,
    /// σ_min/σ_max of the finite-difference tangent of Λ
    pub condition: f64,
    pub composable_defect: f64,
}

/// Central-difference Jacobian of f: ℝ^n → ℝ^m at 0.
pub fn fd_jacobian<F>(n: usize, h: f64, mut f: F) -> Result<DMatrix<f64>>
where
    F: FnMut(&[f64]) -> Result<DVector<f64>>,
{
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut z = vec![0.0; n];
        z[j] = h;
        let plus = f(&z)?;
        z[j] = -h;
        let minus = f(&z)?;
        cols.push((plus - minus) / (2.0 * h));
    }
    let m = cols.first().map_or(0, |c| c.len());
    Ok(DMatrix::from_fn(m, n, |i, j| cols[j][i]))
}

/// Tangent space of the graph Λ = {(γ₁, γ₂, γ₁γ₂)} at the sample.
pub fn graph_tangent<M: GroupoidModel>(sample: &GroupoidChartSample<M>, h: f64) -> Result<DMatrix<f64>> {
    let m = sample.model;
    let (c1, c2, c3) = sample.triple();
    let d = m.arrow_dim();
    fd_jacobian(m.pair_dim(), h, |z| {
        let p = m.move_pair(&sample.pair, z);
        let (a, b) = m.factors(&p);
        let c = m.multiply(&a, &b);
        let mut out = DVector::zeros(3 * d);
        out.rows_mut(0, d).copy_from(&m.chart_inv(&c1, &a)?);
        out.rows_mut(d, d).copy_from(&m.chart_inv(&c2, &b)?);
        out.rows_mut(2 * d, d).copy_from(&m.chart_inv(&c3, &c)?);
        Ok(out)
    })
}

/// Λ coisotropic for Π⊕Π⊕(−1)^{k+1}Π.
pub fn graph_multiplicativity_check<M: GroupoidModel>(
    sample: &GroupoidChartSample<M>,
    tol: f64,
    h: f64,
) -> Result<MultiplicativityReport> {
    let m = sample.model;
    let (a, b, c) = sample.triple();
    let defect = m.composable_defect(&a, &b);
    if defect > 1e-8 {
        return Err(Error::Invalid(format!("sample is not composable (defect {defect:.3e})")));
    }
    let t = graph_tangent(sample, h)?;
    let sv = t.singular_values();
    let condition = if sv.max() > 0.0 { sv.min() / sv.max() } else { 0.0 };
    if condition < 1e-6 {
        return Err(Error::Unstable(condition));
    }
    let w = Subspace::new(t.nrows(), t.column_iter().map(|c| c.into_owned()).collect())?;
    let k = m.degree();
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let (pa, pb, pc) = (m.multivector(&a), m.multivector(&b), m.multivector(&c));
    let total = PointedMultivector::direct_sum(&[(&pa, 1.0), (&pb, 1.0), (&pc, sign)]);
    let coisotropy = is_coisotropic(&total, &w, tol)?;
    Ok(MultiplicativityReport { passed: coisotropy.passed, coisotropy, condition, composable_defect: defect })
}

/// Pair groupoid M×M ⇒ M over M = ℝⁿ, arrows (x, y) with α = x, β = y and
/// (x,y)(y,z) = (x,z), carrying the constant field π ⊕ cπ.
#[derive(Clone, Debug)]
pub struct PairGroupoid {
    pub pi: PointedMultivector,
    pub second: f64,
}

impl PairGroupoid {
    /// π ⊕ (−1)^{k+1}π.
    pub fn multiplicative(pi: PointedMultivector) -> Self {
        let second = if pi.degree() % 2 == 1 { 1.0 } else { -1.0 };
        PairGroupoid { pi, second }
    }

    fn n(&self) -> usize {
        self.pi.dim()
    }
}

impl GroupoidModel for PairGroupoid {
    type Arrow = DVector<f64>;
    /// (x, y, z) for the pair ((x,y), (y,z))
    type Pair = DVector<f64>;

    fn arrow_dim(&self) -> usize {
        2 * self.n()
    }

    fn pair_dim(&self) -> usize {
        3 * self.n()
    }

    fn degree(&self) -> usize {
        self.pi.degree()
    }

    fn random_pair(&self, rng: &mut dyn rand::RngCore) -> DVector<f64> {
        DVector::from_fn(3 * self.n(), |_, _| rng.gen_range(-2.0..2.0))
    }

    fn move_pair(&self, p: &DVector<f64>, z: &[f64]) -> DVector<f64> {
        p + DVector::from_column_slice(z)
    }

    fn factors(&self, p: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
        let n = self.n();
        (p.rows(0, 2 * n).into_owned(), p.rows(n, 2 * n).into_owned())
    }

    fn multiply(&self, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        let n = self.n();
        let mut out = a.clone();
        out.rows_mut(n, n).copy_from(&b.rows(n, n));
        out
    }

    fn chart_inv(&self, center: &DVector<f64>, q: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(q - center)
    }

    fn composable_defect(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        let n = self.n();
        (a.rows(n, n) - b.rows(0, n)).amax()
    }

    fn multivector(&self, _at: &DVector<f64>) -> PointedMultivector {
        PointedMultivector::direct_sum(&[(&self.pi, 1.0), (&self.pi, self.second)])
    }
}

/// Which transcription of the G×G bivector to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    /// ½Σ ê²∧ě² − ê²∧ê¹ − (Ad_{g⁻¹}e_i)ě²∧ě¹ with ê left- and ě right-invariant
    Standard,
    /// ê and ě exchanged; the arrow field (Ad_{g⁻¹}e_i)→ stays right-invariant
    Swapped,
}

/// Source/target convention for the transformation groupoid G×G ⇒ G of
/// the conjugation action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// β(g,s) = s, α(g,s) = gsg⁻¹, (k, gsg⁻¹)·(g, s) = (kg, s)
    Standard,
    /// α(g,s) = s, β(g,s) = g⁻¹sg, (g, s)·(k, g⁻¹sg) = (gk, s)
    Flipped,
}

/// The transformation groupoid G×G ⇒ G for conjugation, with the bivector
/// integrating the double of (𝔤, K). Arrows are (g, s); the chart at
/// (a, b) is (ξ, η) ↦ (a·exp ξ, b·exp η).
#[derive(Clone, Debug)]
pub struct GxG {
    pub group: MatrixGroup,
    pub reading: Reading,
    pub convention: Convention,
}

pub type GxGArrow = (DMatrix<f64>, DMatrix<f64>);

impl GxG {
    pub fn new(group: MatrixGroup) -> Self {
        GxG { group, reading: Reading::Standard, convention: Convention::Standard }
    }

    pub fn with_reading(mut self, r: Reading) -> Self {
        self.reading = r;
        self
    }

    pub fn with_convention(mut self, c: Convention) -> Self {
        self.convention = c;
        self
    }

    fn d(&self) -> usize {
        self.group.dim()
    }

    fn embed(&self, first: bool, x: &DVector<f64>) -> DVector<f64> {
        let d = self.d();
        let mut v = DVector::zeros(2 * d);
        v.rows_mut(if first { 0 } else { d }, d).copy_from(x);
        v
    }

    /// Left-invariant field of ξ on the first (g) or second (s) factor.
    pub fn left(&self, first: bool, xi: &DVector<f64>) -> DVector<f64> {
        self.embed(first, xi)
    }

    /// Right-invariant field of ξ at the arrow, in left-trivialized
    /// components Ad_{g⁻¹}ξ.
    pub fn right(&self, at: &GxGArrow, first: bool, xi: &DVector<f64>) -> DVector<f64> {
        let g = if first { &at.0 } else { &at.1 };
        let ginv = self.group.inverse(g).expect("group element");
        self.embed(first, &self.group.adjoint(&ginv, xi).expect("group element"))
    }

    /// Π(g,s) in left-trivialized components.
    pub fn bivector(&self, at: &GxGArrow) -> PointedMultivector {
        let d = self.d();
        let kinv = self.group.metric_inv();
        let ginv = self.group.inverse(&at.0).expect("group element");
        let mut p = DMatrix::<f64>::zeros(2 * d, 2 * d);
        let wedge = |u: &DVector<f64>, v: &DVector<f64>| u * v.transpose() - v * u.transpose();
        let e = |i: usize| crate::coisotropic::unit(d, i);
        // ê/ě: invariant fields of the formula in the chosen reading
        let hat = |first: bool, x: &DVector<f64>| match self.reading {
            Reading::Standard => self.left(first, x),
            Reading::Swapped => self.right(at, first, x),
        };
        let check = |first: bool, x: &DVector<f64>| match self.reading {
            Reading::Standard => self.right(at, first, x),
            Reading::Swapped => self.left(first, x),
        };
        for i in 0..d {
            for j in 0..d {
                let c = kinv[(i, j)];
                if c == 0.0 {
                    continue;
                }
                let ei = e(i);
                let ej = e(j);
                let adi = self.group.adjoint(&ginv, &ei).expect("group element");
                let term = wedge(&hat(false, &ei), &check(false, &ej)) - wedge(&hat(false, &ei), &hat(true, &ej))
                    - wedge(&self.right(at, false, &adi), &check(true, &ej));
                p += term * (0.5 * c);
            }
        }
        PointedMultivector::from_bivector_matrix(&p)
    }

    /// Π at (a·exp ξ, b·exp η) in the coordinates (ξ, η) of the chart at (a, b).
    pub fn bivector_in_chart(&self, center: &GxGArrow, z: &[f64]) -> PointedMultivector {
        let d = self.d();
        let xi = DVector::from_column_slice(&z[..d]);
        let eta = DVector::from_column_slice(&z[d..2 * d]);
        let at = (&center.0 * self.group.exp(&xi), &center.1 * self.group.exp(&eta));
        let mut jinv = DMatrix::zeros(2 * d, 2 * d);
        let j1 = self.group.dexp_left(&xi).try_inverse().expect("chart is regular near 0");
        let j2 = self.group.dexp_left(&eta).try_inverse().expect("chart is regular near 0");
        jinv.view_mut((0, 0), (d, d)).copy_from(&j1);
        jinv.view_mut((d, d), (d, d)).copy_from(&j2);
        self.bivector(&at).push_forward(&jinv)
    }

    pub fn source(&self, at: &GxGArrow) -> DMatrix<f64> {
        match self.convention {
            Convention::Standard => at.1.clone(),
            Convention::Flipped => self.conj_inv(at),
        }
    }

    pub fn target(&self, at: &GxGArrow) -> DMatrix<f64> {
        match self.convention {
            Convention::Standard => self.conj(at),
            Convention::Flipped => at.1.clone(),
        }
    }

    /// gsg⁻¹.
    fn conj(&self, at: &GxGArrow) -> DMatrix<f64> {
        &at.0 * &at.1 * self.group.inverse(&at.0).expect("group element")
    }

    /// g⁻¹sg.
    fn conj_inv(&self, at: &GxGArrow) -> DMatrix<f64> {
        self.group.inverse(&at.0).expect("group element") * &at.1 * &at.0
    }

    pub fn inverse(&self, at: &GxGArrow) -> GxGArrow {
        let ginv = self.group.inverse(&at.0).expect("group element");
        match self.convention {
            Convention::Standard => (ginv, self.conj(at)),
            Convention::Flipped => (ginv, self.conj_inv(at)),
        }
    }

    /// Coordinates (ξ, η) of `q` in the chart at `center`.
    pub fn arrow_coords(&self, center: &GxGArrow, q: &GxGArrow) -> Result<DVector<f64>> {
        let d = self.d();
        let a = self.group.inverse(&center.0)? * &q.0;
        let b = self.group.inverse(&center.1)? * &q.1;
        let mut out = DVector::zeros(2 * d);
        out.rows_mut(0, d).copy_from(&self.group.log_near_identity(&a)?);
        out.rows_mut(d, d).copy_from(&self.group.log_near_identity(&b)?);
        Ok(out)
    }

    /// Coordinates of a point of G in the chart at `center`.
    pub fn base_coords(&self, center: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<DVector<f64>> {
        self.group.log_near_identity(&(self.group.inverse(center)? * q))
    }

    fn point(&self, center: &GxGArrow, z: &[f64]) -> GxGArrow {
        let d = self.d();
        let xi = DVector::from_column_slice(&z[..d]);
        let eta = DVector::from_column_slice(&z[d..2 * d]);
        (&center.0 * self.group.exp(&xi), &center.1 * self.group.exp(&eta))
    }

    /// F_*Π at F(p) for a map F: G×G → G×G, in the chart at F(p).
    pub fn push_arrow_map<F>(&self, at: &GxGArrow, h: f64, f: F) -> Result<PointedMultivector>
    where
        F: Fn(&GxGArrow) -> GxGArrow,
    {
        let centre = f(at);
        let jac = fd_jacobian(2 * self.d(), h, |z| self.arrow_coords(&centre, &f(&self.point(at, z))))?;
        Ok(self.bivector(at).push_forward(&jac))
    }

    /// F_*Π at F(p) for a map F: G×G → G.
    pub fn push_to_base<F>(&self, at: &GxGArrow, h: f64, f: F) -> Result<PointedMultivector>
    where
        F: Fn(&GxGArrow) -> DMatrix<f64>,
    {
        let centre = f(at);
        let jac = fd_jacobian(2 * self.d(), h, |z| self.base_coords(&centre, &f(&self.point(at, z))))?;
        Ok(self.bivector(at).push_forward(&jac))
    }
}

impl GroupoidModel for GxG {
    type Arrow = GxGArrow;
    /// (g, s, k): the pair (k, gsg⁻¹)·(g, s), or (g, s)·(k, g⁻¹sg) flipped
    type Pair = (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>);

    fn arrow_dim(&self) -> usize {
        2 * self.d()
    }

    fn pair_dim(&self) -> usize {
        3 * self.d()
    }

    fn degree(&self) -> usize {
        2
    }

    fn random_pair(&self, rng: &mut dyn rand::RngCore) -> Self::Pair {
        (self.group.random(rng), self.group.random(rng), self.group.random(rng))
    }

    fn move_pair(&self, p: &Self::Pair, z: &[f64]) -> Self::Pair {
        let d = self.d();
        let v = |o: usize| DVector::from_column_slice(&z[o..o + d]);
        (&p.0 * self.group.exp(&v(0)), &p.1 * self.group.exp(&v(d)), &p.2 * self.group.exp(&v(2 * d)))
    }

    fn factors(&self, p: &Self::Pair) -> (GxGArrow, GxGArrow) {
        let (g, s, k) = p;
        let gs = (g.clone(), s.clone());
        match self.convention {
            Convention::Standard => ((k.clone(), self.conj(&gs)), gs),
            Convention::Flipped => (gs.clone(), (k.clone(), self.conj_inv(&gs))),
        }
    }

    fn multiply(&self, a: &GxGArrow, b: &GxGArrow) -> GxGArrow {
        match self.convention {
            Convention::Standard => (&a.0 * &b.0, b.1.clone()),
            Convention::Flipped => (&a.0 * &b.0, a.1.clone()),
        }
    }

    fn chart_inv(&self, center: &GxGArrow, q: &GxGArrow) -> Result<DVector<f64>> {
        self.arrow_coords(center, q)
    }

    fn composable_defect(&self, a: &GxGArrow, b: &GxGArrow) -> f64 {
        (self.source(a) - self.target(b)).amax()
    }

    fn multivector(&self, at: &GxGArrow) -> PointedMultivector {
        self.bivector(at)
    }
}
