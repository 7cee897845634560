//! Seeded sample sets on G×G and their reports.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{GroupName, MatrixGroup};
use crate::groupoid::{graph_multiplicativity_check, Convention, GroupoidChartSample, GxG, GxGArrow, Reading};
use crate::multivector::PointedMultivector;
use crate::{DEFAULT_FD_STEP, DEFAULT_FD_TOL, DEFAULT_TOL};

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_fd_tol() -> f64 {
    DEFAULT_FD_TOL
}

fn default_step() -> f64 {
    DEFAULT_FD_STEP
}

fn default_convention() -> Convention {
    Convention::Standard
}

fn default_reading() -> Reading {
    Reading::Standard
}

/// `{"seed":…, "count":…, "group":"SO3"|"SL2", "tolerance":…, "fd_step":…}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    #[serde(default)]
    pub seed: u64,
    pub count: usize,
    pub group: GroupName,
    #[serde(default = "default_tol")]
    pub tolerance: f64,
    #[serde(default = "default_fd_tol")]
    pub fd_tolerance: f64,
    #[serde(default = "default_step")]
    pub fd_step: f64,
    #[serde(default = "default_convention")]
    pub convention: Convention,
    #[serde(default = "default_reading")]
    pub reading: Reading,
}

impl SampleSet {
    pub fn new(group: GroupName, seed: u64, count: usize) -> Self {
        SampleSet {
            seed,
            count,
            group,
            tolerance: DEFAULT_TOL,
            fd_tolerance: DEFAULT_FD_TOL,
            fd_step: DEFAULT_FD_STEP,
            convention: Convention::Standard,
            reading: Reading::Standard,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleResidual {
    pub index: usize,
    /// graph coisotropy residual of Λ, relative tolerance `tolerance·‖Π‖`
    pub multiplicativity: f64,
    pub multiplicative: bool,
    /// |½[Π,Π] − (Ω⃗ − Ω⃖)| at the first factor of the pair
    pub quasi_poisson: f64,
    pub quasi_poisson_stable: bool,
    pub quasi_poisson_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReadingOutcome {
    pub reading: Reading,
    pub multiplicative: bool,
    pub max_residual: f64,
    /// the change of coordinates (g,s) ↦ (s⁻¹g⁻¹, g)
    pub coordinate_change: f64,
    /// |α_*Π + β_*Π| over a common base point
    pub base_projection: f64,
    /// |i_*Π + Π|
    pub inversion: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSetReport {
    pub passed: bool,
    pub settings: SampleSet,
    pub max_multiplicativity: f64,
    pub max_quasi_poisson: f64,
    pub samples: Vec<SampleResidual>,
    /// every reading of the bivector, so a failing one can be compared
    pub readings: Vec<ReadingOutcome>,
}

/// Pushforward consistency checks at one arrow; all residuals should vanish.
pub struct Consistency {
    pub coordinate_change: f64,
    pub base_projection: f64,
    pub inversion: f64,
}

impl GxG {
    /// ½Σ K⁻¹_ij (ě_i¹∧ê_j² + ê_i¹∧ě_j²), ê left- and ě right-invariant.
    pub fn transformed_bivector(&self, at: &GxGArrow) -> PointedMultivector {
        let d = self.group.dim();
        let kinv = self.group.metric_inv();
        let mut p = DMatrix::<f64>::zeros(2 * d, 2 * d);
        let wedge = |u: &nalgebra::DVector<f64>, v: &nalgebra::DVector<f64>| u * v.transpose() - v * u.transpose();
        for i in 0..d {
            for j in 0..d {
                let c = kinv[(i, j)];
                if c == 0.0 {
                    continue;
                }
                let ei = crate::coisotropic::unit(d, i);
                let ej = crate::coisotropic::unit(d, j);
                let t = wedge(&self.right(at, true, &ei), &self.left(false, &ej))
                    + wedge(&self.left(true, &ei), &self.right(at, false, &ej));
                p += t * (0.5 * c);
            }
        }
        PointedMultivector::from_bivector_matrix(&p)
    }

    /// An arrow with source x, first component h.
    pub fn arrow_with_source(&self, h: &DMatrix<f64>, x: &DMatrix<f64>) -> GxGArrow {
        match self.convention {
            Convention::Standard => (h.clone(), x.clone()),
            Convention::Flipped => (h.clone(), h * x * self.group.inverse(h).expect("group element")),
        }
    }

    /// Residuals of (g,s) ↦ (s⁻¹g⁻¹, g), α_*Π = −β_*Π and i_*Π = −Π at `at`,
    /// using `other` for the second arrow over α(at).
    pub fn consistency(&self, at: &GxGArrow, other: &DMatrix<f64>, h: f64) -> Result<Consistency> {
        let inv = |g: &DMatrix<f64>| self.group.inverse(g).expect("group element");
        let phi = |p: &GxGArrow| (inv(&p.1) * inv(&p.0), p.0.clone());
        let pushed = self.push_arrow_map(at, h, phi)?;
        let coordinate_change = pushed.sub(&self.transformed_bivector(&phi(at))).max_abs();

        let x = self.target(at);
        let alpha = self.push_to_base(at, h, |p| self.target(p))?;
        let q = self.arrow_with_source(other, &x);
        let beta = self.push_to_base(&q, h, |p| self.source(p))?;
        let base_projection = alpha.sub(&beta.scale(-1.0)).max_abs();

        let i = self.push_arrow_map(at, h, |p| self.inverse(p))?;
        let inversion = i.sub(&self.bivector(&self.inverse(at)).scale(-1.0)).max_abs();
        Ok(Consistency { coordinate_change, base_projection, inversion })
    }
}

fn run_reading(set: &SampleSet, reading: Reading) -> Result<(ReadingOutcome, Vec<SampleResidual>)> {
    let model = GxG::new(MatrixGroup::by_name(set.group)).with_reading(reading).with_convention(set.convention);
    let mut rng = ChaCha8Rng::seed_from_u64(set.seed);
    let mut samples = Vec::with_capacity(set.count);
    let mut outcome = ReadingOutcome {
        reading,
        multiplicative: true,
        max_residual: 0.0,
        coordinate_change: 0.0,
        base_projection: 0.0,
        inversion: 0.0,
    };
    for index in 0..set.count {
        let sample = GroupoidChartSample::random(&model, &mut rng);
        let other = model.group.random(&mut rng);
        let report = graph_multiplicativity_check(&sample, set.tolerance, set.fd_step)?;
        let (a, _, _) = sample.triple();
        let qp = model.quasi_poisson_residual(&a, set.fd_step, set.fd_tolerance)?;
        let cons = model.consistency(&a, &other, set.fd_step)?;
        outcome.multiplicative &= report.passed;
        outcome.max_residual = outcome.max_residual.max(report.coisotropy.max_residual);
        outcome.coordinate_change = outcome.coordinate_change.max(cons.coordinate_change);
        outcome.base_projection = outcome.base_projection.max(cons.base_projection);
        outcome.inversion = outcome.inversion.max(cons.inversion);
        samples.push(SampleResidual {
            index,
            multiplicativity: report.coisotropy.max_residual,
            multiplicative: report.passed,
            quasi_poisson: qp.residual,
            quasi_poisson_stable: qp.stable,
            quasi_poisson_ok: qp.passed,
        });
    }
    Ok((outcome, samples))
}

/// Runs the selected reading on `count` seeded composable pairs and, for
/// comparison, the other reading on the same pairs.
pub fn run_sample_set(set: &SampleSet) -> Result<SampleSetReport> {
    let (chosen, samples) = run_reading(set, set.reading)?;
    let other = match set.reading {
        Reading::Standard => Reading::Swapped,
        Reading::Swapped => Reading::Standard,
    };
    let (alt, _) = run_reading(set, other)?;
    let max_multiplicativity = samples.iter().fold(0.0f64, |m, s| m.max(s.multiplicativity));
    let max_quasi_poisson = samples.iter().fold(0.0f64, |m, s| m.max(s.quasi_poisson));
    let passed = samples.iter().all(|s| s.multiplicative && s.quasi_poisson_ok);
    Ok(SampleSetReport {
        passed,
        settings: set.clone(),
        max_multiplicativity,
        max_quasi_poisson,
        samples,
        readings: vec![chosen, alt],
    })
}
