//! Schouten brackets of bivector fields by central differences, and the
//! quasi-Poisson identity on G×G.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groupoid::{GxG, GxGArrow};
use crate::multivector::{combinations, PointedMultivector};

#[derive(Clone, Debug)]
pub struct FdSchouten {
    /// [A,B] at the point with step h
    pub value: PointedMultivector,
    /// ⁴⁄₃ max|D(h) − D(h/2)|, the leading error of D(h)
    pub richardson_error: f64,
    /// whether D(h) and D(h/2) agree within the instability threshold
    pub stable: bool,
}

fn partials<F>(eval: &F, point: &[f64], h: f64) -> Vec<DMatrix<f64>>
where
    F: Fn(&[f64]) -> PointedMultivector,
{
    (0..point.len())
        .map(|l| {
            let mut p = point.to_vec();
            p[l] += h;
            let plus = eval(&p).bivector_matrix();
            p[l] -= 2.0 * h;
            let minus = eval(&p).bivector_matrix();
            (plus - minus) / (2.0 * h)
        })
        .collect()
}

/// (2-subset, complement, shuffle sign) of {0,1,2}.
const SPLITS: [([usize; 2], usize, f64); 3] = [([0, 1], 2, 1.0), ([0, 2], 1, -1.0), ([1, 2], 0, 1.0)];

fn closed_bracket(a: &DMatrix<f64>, b: &DMatrix<f64>, da: &[DMatrix<f64>], db: &[DMatrix<f64>]) -> PointedMultivector {
    let n = a.nrows();
    let mut out = PointedMultivector::zeros(n, 3);
    for idx in combinations(n, 3) {
        let mut first = 0.0;
        let mut second = 0.0;
        for (pair, rest, eps) in SPLITS {
            let (p, q, r) = (idx[pair[0]], idx[pair[1]], idx[rest]);
            for l in 0..n {
                first += eps * db[l][(p, q)] * a[(l, r)];
                second += eps * da[l][(p, q)] * b[(l, r)];
            }
        }
        // (−1)^{k+1} with k = 2, and (−1)^{kk'} = 1
        out.add_term(&idx, -(first + second));
    }
    out
}

/// [A,B] of two bivector fields at `point` with all first derivatives by
/// central differences; the instability flag compares steps h and h/2
/// against `10·tol`.
pub fn fd_schouten<A, B>(eval_a: A, eval_b: B, point: &[f64], h: f64, tol: f64) -> FdSchouten
where
    A: Fn(&[f64]) -> PointedMultivector,
    B: Fn(&[f64]) -> PointedMultivector,
{
    let a = eval_a(point).bivector_matrix();
    let b = eval_b(point).bivector_matrix();
    let at = |step: f64| closed_bracket(&a, &b, &partials(&eval_a, point, step), &partials(&eval_b, point, step));
    let coarse = at(h);
    let fine = at(h / 2.0);
    let diff = coarse.sub(&fine).max_abs();
    FdSchouten { value: coarse, richardson_error: diff * 4.0 / 3.0, stable: diff <= 10.0 * tol }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuasiPoissonResidual {
    pub passed: bool,
    /// max |½[Π,Π] − (Ω⃗ − Ω⃖)|
    pub residual: f64,
    pub richardson_error: f64,
    pub stable: bool,
    pub tolerance: f64,
}

impl GxG {
    /// (Ω⃗, Ω⃖) at an arrow in left-trivialized components, for the
    /// infinitesimal action fields ξ⃗ = (−Ad_{g⁻¹}ξ, 0) and
    /// ξ⃖ = −(ξ, ξ − Ad_{s⁻¹}ξ), and Ω = ¼K(·,[·,·]).
    pub fn invariant_trivectors(&self, at: &GxGArrow) -> (PointedMultivector, PointedMultivector) {
        let d = self.group.dim();
        let omega = self.group.cartan_trivector();
        let mut right = DMatrix::zeros(2 * d, d);
        let mut left = DMatrix::zeros(2 * d, d);
        for i in 0..d {
            let e = crate::coisotropic::unit(d, i);
            right.set_column(i, &(-self.right(at, true, &e)));
            let l: DVector<f64> = self.left(true, &e) + self.left(false, &e) - self.right(at, false, &e);
            left.set_column(i, &(-l));
        }
        (omega.push_forward(&right), omega.push_forward(&left))
    }

    /// ½[Π,Π] − (Ω⃗ − Ω⃖) at `at`, with the bracket computed by
    /// [`fd_schouten`] in the exponential chart centered there.
    pub fn quasi_poisson_residual(&self, at: &GxGArrow, h: f64, tol: f64) -> Result<QuasiPoissonResidual> {
        let d = self.group.dim();
        let eval = |z: &[f64]| self.bivector_in_chart(at, z);
        let fd = fd_schouten(eval, eval, &vec![0.0; 2 * d], h, tol);
        let (r, l) = self.invariant_trivectors(at);
        let expected = r.sub(&l);
        let residual = fd.value.scale(0.5).sub(&expected).max_abs();
        Ok(QuasiPoissonResidual {
            passed: residual <= tol && fd.stable,
            residual,
            richardson_error: fd.richardson_error / 2.0,
            stable: fd.stable,
            tolerance: tol,
        })
    }
}
