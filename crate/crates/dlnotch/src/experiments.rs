//! Seeded Monte Carlo campaigns: sweep snapshots or INR, average the
//! sample notch depth over trials, and bundle model predictions and
//! ensemble references into curves.

use serde::Serialize;

use crate::array::{angle_decomposition, ArrayGeometry, SteeringVector};
use crate::beamformer::{ensemble_notch_depth, mvdr_weights, notch_depth, NotchDepthValue};
use crate::covariance::{diagonal_load, eigensystem, generate_snapshots, sample_cov};
use crate::error::{Error, Result};
use crate::rmt::{model_nd_vs_inr, model_nd_vs_snapshots, ModelParams};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const DB_PER_NEPER: f64 = 10.0 / std::f64::consts::LN_10;

/// Full parameterization of one experiment point.
#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub geometry: ArrayGeometry,
    pub look_u: f64,
    pub interferer_u: f64,
    pub delta: f64,
    /// Linear interferer-to-noise ratio σ₁².
    pub inr: f64,
    pub snapshots: usize,
}

impl Scenario {
    pub fn new(
        geometry: ArrayGeometry,
        look_u: f64,
        interferer_u: f64,
        delta: f64,
        inr: f64,
        snapshots: usize,
    ) -> Result<Self> {
        for &u in &[look_u, interferer_u] {
            if !(-1.0..=1.0).contains(&u) || u.is_nan() {
                return Err(Error::InvalidDirection(u));
            }
        }
        if !(delta >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "diagonal loading must be nonnegative, got {delta}"
            )));
        }
        if !(inr >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "INR must be nonnegative, got {inr}"
            )));
        }
        if snapshots == 0 {
            return Err(Error::InvalidParameter(
                "snapshot count must be at least 1".into(),
            ));
        }
        Ok(Self {
            geometry,
            look_u,
            interferer_u,
            delta,
            inr,
            snapshots,
        })
    }

    pub fn with_inr(mut self, inr: f64) -> Self {
        self.inr = inr;
        self
    }

    pub fn with_snapshots(mut self, snapshots: usize) -> Self {
        self.snapshots = snapshots;
        self
    }

    pub fn look_vector(&self) -> Result<SteeringVector> {
        self.geometry.steering_vector(self.look_u)
    }

    pub fn interferer_vector(&self) -> Result<SteeringVector> {
        self.geometry.steering_vector(self.interferer_u)
    }

    /// Model parameters matching this scenario.
    pub fn model_params(&self) -> Result<ModelParams> {
        let v0 = self.look_vector()?;
        let v1 = self.interferer_vector()?;
        let angles = angle_decomposition(&v0, &v1)?;
        ModelParams::new(
            self.geometry.n_sensors(),
            self.snapshots as f64,
            self.inr,
            self.delta,
            angles,
        )
    }

    /// Closed-form ensemble notch depth for this scenario.
    pub fn ensemble_nd(&self) -> Result<NotchDepthValue> {
        let v0 = self.look_vector()?;
        let v1 = self.interferer_vector()?;
        let cos_sq = crate::array::generalized_cosine_sq(&v0, &v1)?;
        Ok(ensemble_notch_depth(
            self.geometry.n_sensors(),
            self.delta,
            self.inr,
            cos_sq,
        ))
    }
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepAxis {
    #[serde(rename = "snapshots")]
    Snapshots,
    #[serde(rename = "inr_db")]
    Inr,
}

/// Domain in which per-trial notch depths are averaged.
///
/// `Linear` (the default) averages the linear-power notch depths and
/// converts the mean to dB, matching E[ND]; `Decibel` averages the
/// per-trial dB values instead, for sensitivity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum AveragingDomain {
    #[default]
    #[serde(rename = "linear")]
    Linear,
    #[serde(rename = "db")]
    Decibel,
}

/// A Monte Carlo sweep definition.
///
/// `scenario` carries the fixed parameters; whichever of (snapshots, inr)
/// matches `axis` is overridden point by point with `axis_values`
/// (snapshot counts, or linear INR powers).
#[derive(Debug, Clone)]
pub struct SweepSpec {
    scenario: Scenario,
    axis: SweepAxis,
    axis_values: Vec<f64>,
    trials: usize,
    master_seed: u64,
    averaging: AveragingDomain,
}

impl SweepSpec {
    pub fn new(
        scenario: Scenario,
        axis: SweepAxis,
        axis_values: Vec<f64>,
        trials: usize,
        master_seed: u64,
        averaging: AveragingDomain,
    ) -> Result<Self> {
        if axis_values.is_empty() {
            return Err(Error::InvalidParameter("sweep grid is empty".into()));
        }
        if !axis_values.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "sweep grid must be strictly increasing".into(),
            ));
        }
        for &v in &axis_values {
            if !(v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "sweep grid values must be positive, got {v}"
                )));
            }
            if axis == SweepAxis::Snapshots && (v.fract() != 0.0 || v < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "snapshot grid values must be positive integers, got {v}"
                )));
            }
        }
        if trials == 0 {
            return Err(Error::InvalidParameter(
                "trial count must be at least 1".into(),
            ));
        }
        Ok(Self {
            scenario,
            axis,
            axis_values,
            trials,
            master_seed,
            averaging,
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn axis(&self) -> SweepAxis {
        self.axis
    }

    pub fn axis_values(&self) -> &[f64] {
        &self.axis_values
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn averaging(&self) -> AveragingDomain {
        self.averaging
    }

    fn scenario_at(&self, axis_value: f64) -> Scenario {
        match self.axis {
            SweepAxis::Snapshots => self.scenario.with_snapshots(axis_value as usize),
            SweepAxis::Inr => self.scenario.with_inr(axis_value),
        }
    }
}

/// One sweep result: axis values (snapshot counts, or INR in dB), Monte
/// Carlo means with standard errors, model predictions, and ensemble
/// references, all in dB.
///
/// `mc_mean_db`/`mc_stderr_db` are empty for model-only curves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NotchDepthCurve {
    pub axis: SweepAxis,
    pub axis_values: Vec<f64>,
    pub mc_mean_db: Vec<f64>,
    pub mc_stderr_db: Vec<f64>,
    pub model_db: Vec<f64>,
    pub ensemble_db: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
}

/// Result of checking the sample principal eigenvector projection against
/// its random-matrix prediction.
#[derive(Debug, Clone, Serialize)]
pub struct RmtValidation {
    pub empirical_mean: f64,
    pub model: f64,
    pub abs_gap: f64,
    pub below_transition: bool,
    pub trials: usize,
    pub master_seed: u64,
}

/// Deterministic per-trial substream seed.
///
/// SplitMix64-style avalanche over (master_seed, axis_index, trial_index),
/// so trial streams are independent of worker count and scheduling order.
/// Reproducing curves bit-exactly across implementations requires this
/// derivation together with the ChaCha12 + ziggurat sampling used by
/// `generate_snapshots`; cross-implementation comparisons should use
/// tolerances instead.
pub fn trial_seed(master_seed: u64, axis_index: u64, trial_index: u64) -> u64 {
    const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let mut h = mix(master_seed ^ GOLDEN);
    h = mix(h ^ axis_index.wrapping_mul(GOLDEN));
    mix(h ^ trial_index.wrapping_mul(GOLDEN))
}

/// One Monte Carlo trial: L snapshots → SCM → diagonal loading → DL-MVDR
/// weights at the look direction → notch depth at the interferer.
pub fn run_trial(scenario: &Scenario, trial_seed: u64) -> Result<NotchDepthValue> {
    let v0 = scenario.look_vector()?;
    let v1 = scenario.interferer_vector()?;
    let batch = generate_snapshots(&v1, scenario.inr, scenario.snapshots, trial_seed)?;
    let loaded = diagonal_load(&sample_cov(&batch), scenario.delta)?;
    let weights = mvdr_weights(&loaded, &v0)?;
    notch_depth(&weights, &v1)
}

fn mc_point(
    scenario: &Scenario,
    trials: usize,
    seeds: impl Fn(usize) -> u64 + Sync,
    averaging: AveragingDomain,
    axis_value: f64,
) -> Result<(f64, f64)> {
    let run = |t: usize| -> Result<f64> {
        run_trial(scenario, seeds(t))
            .map(|nd| nd.linear)
            .map_err(|e| Error::TrialFailed {
                axis_value,
                trial: t,
                source: Box::new(e),
            })
    };

    #[cfg(feature = "parallel")]
    let linears: Result<Vec<f64>> = (0..trials).into_par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let linears: Result<Vec<f64>> = (0..trials).map(run).collect();
    let linears = linears?;

    // reduce sequentially in trial order so results do not depend on the
    // worker count
    let t = trials as f64;
    Ok(match averaging {
        AveragingDomain::Linear => {
            let mean = linears.iter().sum::<f64>() / t;
            let var = linears.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
                / (t - 1.0).max(1.0);
            let stderr = (var / t).sqrt();
            // delta method: d(10 log10 x) = (10/ln10) dx/x
            (10.0 * mean.log10(), DB_PER_NEPER * stderr / mean)
        }
        AveragingDomain::Decibel => {
            let dbs: Vec<f64> = linears.iter().map(|x| 10.0 * x.log10()).collect();
            let mean = dbs.iter().sum::<f64>() / t;
            let var = dbs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0).max(1.0);
            (mean, (var / t).sqrt())
        }
    })
}

fn model_and_ensemble(spec_scenario: &Scenario, axis: SweepAxis, axis_value: f64) -> Result<(f64, f64)> {
    let params = spec_scenario.model_params()?;
    let model = match axis {
        SweepAxis::Snapshots => model_nd_vs_snapshots(&params, axis_value)?,
        SweepAxis::Inr => model_nd_vs_inr(&params, axis_value)?,
    };
    let ens_scenario = match axis {
        SweepAxis::Snapshots => *spec_scenario,
        SweepAxis::Inr => spec_scenario.with_inr(axis_value),
    };
    Ok((model.db, ens_scenario.ensemble_nd()?.db))
}

fn axis_output_value(axis: SweepAxis, axis_value: f64) -> f64 {
    match axis {
        SweepAxis::Snapshots => axis_value,
        SweepAxis::Inr => 10.0 * axis_value.log10(),
    }
}

/// Run the full Monte Carlo sweep.
///
/// Each (axis point, trial) pair gets its own counter-derived substream,
/// so the curve is bit-identical across reruns and worker counts.
pub fn run_sweep(spec: &SweepSpec) -> Result<NotchDepthCurve> {
    let mut curve = NotchDepthCurve {
        axis: spec.axis,
        axis_values: Vec::with_capacity(spec.axis_values.len()),
        mc_mean_db: Vec::with_capacity(spec.axis_values.len()),
        mc_stderr_db: Vec::with_capacity(spec.axis_values.len()),
        model_db: Vec::with_capacity(spec.axis_values.len()),
        ensemble_db: Vec::with_capacity(spec.axis_values.len()),
        trials: spec.trials,
        master_seed: spec.master_seed,
    };
    for (i, &axis_value) in spec.axis_values.iter().enumerate() {
        let scenario = spec.scenario_at(axis_value);
        let (mean_db, stderr_db) = mc_point(
            &scenario,
            spec.trials,
            |t| trial_seed(spec.master_seed, i as u64, t as u64),
            spec.averaging,
            axis_value,
        )?;
        let (model_db, ensemble_db) = model_and_ensemble(&spec.scenario, spec.axis, axis_value)?;
        curve.axis_values.push(axis_output_value(spec.axis, axis_value));
        curve.mc_mean_db.push(mean_db);
        curve.mc_stderr_db.push(stderr_db);
        curve.model_db.push(model_db);
        curve.ensemble_db.push(ensemble_db);
    }
    Ok(curve)
}

/// Model and ensemble curves without any simulation (for fast plotting).
pub fn model_only_curve(
    scenario: &Scenario,
    axis: SweepAxis,
    axis_values: &[f64],
) -> Result<NotchDepthCurve> {
    if axis_values.is_empty() {
        return Err(Error::InvalidParameter("sweep grid is empty".into()));
    }
    let mut curve = NotchDepthCurve {
        axis,
        axis_values: Vec::with_capacity(axis_values.len()),
        mc_mean_db: Vec::new(),
        mc_stderr_db: Vec::new(),
        model_db: Vec::with_capacity(axis_values.len()),
        ensemble_db: Vec::with_capacity(axis_values.len()),
        trials: 0,
        master_seed: 0,
    };
    for &axis_value in axis_values {
        let (model_db, ensemble_db) = model_and_ensemble(scenario, axis, axis_value)?;
        curve.axis_values.push(axis_output_value(axis, axis_value));
        curve.model_db.push(model_db);
        curve.ensemble_db.push(ensemble_db);
    }
    Ok(curve)
}

/// Compare the Monte Carlo mean of |e₁ᴴξ₁|² (ξ₁ = v₁/√N) with its
/// random-matrix prediction.
pub fn validate_rmt_projection(
    scenario: &Scenario,
    trials: usize,
    master_seed: u64,
) -> Result<RmtValidation> {
    if trials == 0 {
        return Err(Error::InvalidParameter(
            "trial count must be at least 1".into(),
        ));
    }
    let v1 = scenario.interferer_vector()?;
    let n = scenario.geometry.n_sensors();
    let sqrt_n = (n as f64).sqrt();

    let run = |t: usize| -> Result<f64> {
        let batch = generate_snapshots(
            &v1,
            scenario.inr,
            scenario.snapshots,
            trial_seed(master_seed, 0, t as u64),
        )?;
        let eig = eigensystem(&sample_cov(&batch))?;
        let e1 = eig.principal_eigenvector();
        Ok(e1.dotc(v1.elements()).norm_sqr() / (sqrt_n * sqrt_n))
    };

    #[cfg(feature = "parallel")]
    let projections: Result<Vec<f64>> = (0..trials).into_par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let projections: Result<Vec<f64>> = (0..trials).map(run).collect();
    let projections = projections?;

    let empirical_mean = projections.iter().sum::<f64>() / trials as f64;
    let c = n as f64 / scenario.snapshots as f64;
    let model = crate::rmt::rmt_projection_sq(c, n, scenario.inr);
    let below_transition = scenario.inr <= c.sqrt() / n as f64;
    Ok(RmtValidation {
        empirical_mean,
        model,
        abs_gap: (empirical_mean - model).abs(),
        below_transition,
        trials,
        master_seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_scenario() -> Scenario {
        Scenario::new(
            ArrayGeometry::half_wavelength(50).unwrap(),
            0.0,
            0.06,
            0.5,
            100.0,
            100,
        )
        .unwrap()
    }

    #[test]
    fn trial_seed_spreads() {
        let a = trial_seed(42, 0, 0);
        let b = trial_seed(42, 0, 1);
        let c = trial_seed(42, 1, 0);
        let d = trial_seed(43, 0, 0);
        assert!(a != b && a != c && a != d && b != c);
    }

    #[test]
    fn trial_is_deterministic() {
        let s = base_scenario();
        let a = run_trial(&s, 123).unwrap();
        let b = run_trial(&s, 123).unwrap();
        assert_eq!(a.linear.to_bits(), b.linear.to_bits());
    }

    #[test]
    fn trial_propagates_singular_unloaded() {
        let s = Scenario::new(
            ArrayGeometry::half_wavelength(50).unwrap(),
            0.0,
            0.06,
            0.0, // no loading
            100.0,
            10, // L < N
        )
        .unwrap();
        assert!(matches!(run_trial(&s, 1), Err(Error::SingularMatrix)));
    }

    #[test]
    fn no_interferer_mean_stays_near_sidelobe_level() {
        // with nothing to null, the average notch sits at the CBF level
        let s = base_scenario().with_inr(0.0);
        let trials = 500;
        let mean = (0..trials)
            .map(|t| run_trial(&s, trial_seed(9, 0, t)).unwrap().linear)
            .sum::<f64>()
            / trials as f64;
        let cbf_db = 10.0 * 0.04516520771260115f64.log10();
        let mean_db = 10.0 * mean.log10();
        assert!(
            (mean_db - cbf_db).abs() < 2.0,
            "mean {mean_db:.2} dB vs CBF {cbf_db:.2} dB"
        );
    }

    #[test]
    fn sweep_rejects_bad_specs() {
        let s = base_scenario();
        assert!(SweepSpec::new(
            s,
            SweepAxis::Snapshots,
            vec![],
            10,
            1,
            AveragingDomain::Linear
        )
        .is_err());
        assert!(SweepSpec::new(
            s,
            SweepAxis::Snapshots,
            vec![100.0, 50.0],
            10,
            1,
            AveragingDomain::Linear
        )
        .is_err());
        assert!(SweepSpec::new(
            s,
            SweepAxis::Snapshots,
            vec![25.5],
            10,
            1,
            AveragingDomain::Linear
        )
        .is_err());
        assert!(SweepSpec::new(
            s,
            SweepAxis::Snapshots,
            vec![25.0],
            0,
            1,
            AveragingDomain::Linear
        )
        .is_err());
        assert!(SweepSpec::new(
            s,
            SweepAxis::Inr,
            vec![-1.0, 1.0],
            10,
            1,
            AveragingDomain::Linear
        )
        .is_err());
    }

    #[test]
    fn sweep_is_reproducible() {
        let spec = SweepSpec::new(
            base_scenario(),
            SweepAxis::Snapshots,
            vec![25.0, 50.0],
            8,
            77,
            AveragingDomain::Linear,
        )
        .unwrap();
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a, b);
        for (x, y) in a.mc_mean_db.iter().zip(&b.mc_mean_db) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn sweep_monte_carlo_sits_above_ensemble() {
        let spec = SweepSpec::new(
            base_scenario(),
            SweepAxis::Snapshots,
            vec![25.0, 100.0, 400.0],
            64,
            5,
            AveragingDomain::Linear,
        )
        .unwrap();
        let curve = run_sweep(&spec).unwrap();
        for (mc, ens) in curve.mc_mean_db.iter().zip(&curve.ensemble_db) {
            assert!(mc >= &(ens - 0.5), "mc {mc} fell below ensemble {ens}");
        }
        // monotone convergence within noise: nonincreasing in L
        for w in curve.mc_mean_db.windows(2) {
            assert!(w[1] <= w[0] + 1.0);
        }
    }

    #[test]
    fn inr_sweep_axis_in_db() {
        let spec = SweepSpec::new(
            base_scenario(),
            SweepAxis::Inr,
            vec![1.0, 10.0, 100.0],
            8,
            3,
            AveragingDomain::Linear,
        )
        .unwrap();
        let curve = run_sweep(&spec).unwrap();
        assert_eq!(curve.axis_values, vec![0.0, 10.0, 20.0]);
        // ensemble reference varies along the INR axis
        assert!(curve.ensemble_db[0] > curve.ensemble_db[2]);
    }

    #[test]
    fn model_only_curve_has_no_mc_columns() {
        let curve = model_only_curve(
            &base_scenario(),
            SweepAxis::Snapshots,
            &[25.0, 50.0, 100.0],
        )
        .unwrap();
        assert!(curve.mc_mean_db.is_empty());
        assert_eq!(curve.model_db.len(), 3);
        assert_eq!(curve.trials, 0);
    }

    #[test]
    fn averaging_domains_differ() {
        let mk = |avg| {
            SweepSpec::new(
                base_scenario(),
                SweepAxis::Snapshots,
                vec![50.0],
                64,
                11,
                avg,
            )
            .unwrap()
        };
        let lin = run_sweep(&mk(AveragingDomain::Linear)).unwrap();
        let db = run_sweep(&mk(AveragingDomain::Decibel)).unwrap();
        // Jensen: mean of logs is below log of mean
        assert!(db.mc_mean_db[0] < lin.mc_mean_db[0]);
    }

    #[test]
    fn rmt_validation_flags_transition() {
        let above = base_scenario();
        let v = validate_rmt_projection(&above, 50, 7).unwrap();
        assert!(!v.below_transition);
        assert!(v.model > 0.999);

        let c: f64 = 0.5;
        let below = base_scenario().with_inr(0.5 * c.sqrt() / 50.0);
        let v = validate_rmt_projection(&below, 50, 7).unwrap();
        assert!(v.below_transition);
        assert_eq!(v.model, 0.0);
        assert!(v.empirical_mean <= 0.1);
    }

    #[test]
    fn consistency_limit_small_c() {
        // L = 100 N: e1 is essentially unbiased
        let s = base_scenario().with_snapshots(5000);
        let v = validate_rmt_projection(&s, 16, 21).unwrap();
        assert!(v.empirical_mean >= 0.999, "got {}", v.empirical_mean);
    }
}
