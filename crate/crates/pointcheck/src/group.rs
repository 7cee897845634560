//! Matrix Lie groups with an invariant inner product on the Lie algebra,
//! numerically.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupName {
    SO3,
    SL2,
}

/// G ⊂ GL(n) with a basis e_i of 𝔤 and K(e_i, e_j).
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    name: GroupName,
    n: usize,
    basis: Vec<DMatrix<f64>>,
    metric: DMatrix<f64>,
    metric_inv: DMatrix<f64>,
    /// least-squares inverse of the basis, on flattened matrices
    coords: DMatrix<f64>,
    /// ad(e_i) as d×d matrices
    ad: Vec<DMatrix<f64>>,
    /// scale of random samples, exp of ξ with entries ~ U(−s, s)
    spread: f64,
}

impl MatrixGroup {
    /// SO(3) with [e1,e2]=e3 and K = id.
    pub fn so3() -> Self {
        let hat = |v: [f64; 3]| {
            DMatrix::from_row_slice(3, 3, &[0.0, -v[2], v[1], v[2], 0.0, -v[0], -v[1], v[0], 0.0])
        };
        let basis = vec![hat([1.0, 0.0, 0.0]), hat([0.0, 1.0, 0.0]), hat([0.0, 0.0, 1.0])];
        Self::build(GroupName::SO3, basis, DMatrix::identity(3, 3), 2.0).expect("so(3) is orthonormal")
    }

    /// SL(2,ℝ) with the basis h/√2, (e+f)/√2, (e−f)/√2, orthonormal with
    /// signs (+,+,−) for K(X,Y) = tr(XY).
    pub fn sl2() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let basis = vec![
            DMatrix::from_row_slice(2, 2, &[r, 0.0, 0.0, -r]),
            DMatrix::from_row_slice(2, 2, &[0.0, r, r, 0.0]),
            DMatrix::from_row_slice(2, 2, &[0.0, r, -r, 0.0]),
        ];
        Self::build(GroupName::SL2, basis, DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, -1.0])), 0.8)
            .expect("sl(2) basis is independent")
    }

    pub fn by_name(name: GroupName) -> Self {
        match name {
            GroupName::SO3 => Self::so3(),
            GroupName::SL2 => Self::sl2(),
        }
    }

    /// `metric` is checked to be nondegenerate and ad-invariant.
    pub fn build(name: GroupName, basis: Vec<DMatrix<f64>>, metric: DMatrix<f64>, spread: f64) -> Result<Self> {
        let d = basis.len();
        let n = basis.first().map_or(0, |b| b.nrows());
        let flat = DMatrix::from_fn(n * n, d, |r, j| basis[j][(r / n, r % n)]);
        let coords = flat
            .clone()
            .pseudo_inverse(1e-12)
            .map_err(|e| Error::Invalid(format!("basis: {e}")))?;
        let metric_inv = metric.clone().try_inverse().ok_or_else(|| Error::Invalid("degenerate metric".into()))?;
        let mut g = MatrixGroup { name, n, basis, metric, metric_inv, coords, ad: vec![], spread };
        g.ad = (0..d)
            .map(|i| {
                let mut m = DMatrix::zeros(d, d);
                for j in 0..d {
                    let c = g.coords_of(&g.commutator(&g.basis[i], &g.basis[j]));
                    m.set_column(j, &c);
                }
                m
            })
            .collect();
        for i in 0..d {
            let a = &g.ad[i];
            let inv = a.transpose() * &g.metric + &g.metric * a;
            if inv.amax() > 1e-10 {
                return Err(Error::Invalid("metric is not ad-invariant".into()));
            }
        }
        Ok(g)
    }

    pub fn name(&self) -> GroupName {
        self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[DMatrix<f64>] {
        &self.basis
    }

    pub fn metric(&self) -> &DMatrix<f64> {
        &self.metric
    }

    /// K⁻¹, i.e. Σ η_i e_i⊗e_i for an orthonormal basis with signs.
    pub fn metric_inv(&self) -> &DMatrix<f64> {
        &self.metric_inv
    }

    fn commutator(&self, a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
        a * b - b * a
    }

    /// Σ ξ_i e_i.
    pub fn algebra_element(&self, xi: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (i, e) in self.basis.iter().enumerate() {
            m += e * xi[i];
        }
        m
    }

    /// Coordinates of an element of 𝔤.
    pub fn coords_of(&self, x: &DMatrix<f64>) -> DVector<f64> {
        let n = self.n;
        let flat = DVector::from_fn(n * n, |r, _| x[(r / n, r % n)]);
        &self.coords * flat
    }

    /// ad_ξ as a d×d matrix.
    pub fn ad(&self, xi: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            m += &self.ad[i] * xi[i];
        }
        m
    }

    /// [e_i, e_j] coordinates, i.e. the structure constants c_ij^k.
    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.ad(x) * y
    }

    pub fn exp(&self, xi: &DVector<f64>) -> DMatrix<f64> {
        self.algebra_element(xi).exp()
    }

    /// log of a matrix close to the identity, by the Mercator series.
    pub fn log_near_identity(&self, g: &DMatrix<f64>) -> Result<DVector<f64>> {
        let x = g - DMatrix::<f64>::identity(self.n, self.n);
        let r = x.norm();
        if r > 0.5 {
            return Err(Error::Chart(format!("point too far from the chart center (‖g−1‖ = {r:.3})")));
        }
        let mut term = x.clone();
        let mut sum = x.clone();
        for k in 2..200 {
            term = &term * &x;
            let c = if k % 2 == 0 { -1.0 } else { 1.0 } / k as f64;
            sum += &term * c;
            if term.norm() < 1e-18 {
                break;
            }
        }
        Ok(self.coords_of(&sum))
    }

    /// Ad_g ξ.
    pub fn adjoint(&self, g: &DMatrix<f64>, xi: &DVector<f64>) -> Result<DVector<f64>> {
        let inv = self.inverse(g)?;
        Ok(self.coords_of(&(g * self.algebra_element(xi) * inv)))
    }

    pub fn inverse(&self, g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        g.clone().try_inverse().ok_or_else(|| Error::Chart("singular group element".into()))
    }

    /// Left-trivialized derivative of exp: d/dt exp(ξ+tζ) = exp(ξ)·(J(ξ)ζ)^∧,
    /// J(ξ) = Σ (−ad ξ)^n/(n+1)!.
    pub fn dexp_left(&self, xi: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let a = -self.ad(xi);
        let mut term = DMatrix::<f64>::identity(d, d);
        let mut sum = term.clone();
        for n in 1..60 {
            term = &term * &a / (n as f64 + 1.0);
            sum += &term;
            if term.amax() < 1e-18 {
                break;
            }
        }
        sum
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> DMatrix<f64> {
        let xi = DVector::from_fn(self.dim(), |_, _| rng.gen_range(-self.spread..self.spread));
        self.exp(&xi)
    }

    /// Ω = ¼K(·,[·,·]) as a trivector: Ω^{ijk} = ¼K(e^i,[e^j,e^k]) with
    /// e^i = Σ_j (K⁻¹)_{ij} e_j.
    pub fn cartan_trivector(&self) -> crate::PointedMultivector {
        let d = self.dim();
        let mut out = crate::PointedMultivector::zeros(d, 3);
        let up: Vec<DVector<f64>> = (0..d).map(|i| self.metric_inv.column(i).into_owned()).collect();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let br = self.bracket(&up[j], &up[k]);
                    let v = (up[i].transpose() * &self.metric * br)[(0, 0)];
                    out.add_term(&[i, j, k], 0.25 * v);
                }
            }
        }
        out
    }
}
