//! Random-matrix projection results and the two closed-form mean notch
//! depth models (vs snapshot count and vs interferer power), with their
//! breakpoint predictions.

use serde::Serialize;

use crate::array::AngleDecomposition;
use crate::beamformer::NotchDepthValue;
use crate::error::{Error, Result};

/// Inputs shared by both mean-notch models.
///
/// `snapshots` fixes the aspect ratio c = N/L for the notch-vs-INR model;
/// `inr` is the fixed interferer power for the notch-vs-snapshots model.
/// The swept quantity is passed to the model evaluation itself.
#[derive(Debug, Clone, Copy)]
pub struct ModelParams {
    n_sensors: usize,
    snapshots: f64,
    inr: f64,
    delta: f64,
    angles: AngleDecomposition,
}

impl ModelParams {
    pub fn new(
        n_sensors: usize,
        snapshots: f64,
        inr: f64,
        delta: f64,
        angles: AngleDecomposition,
    ) -> Result<Self> {
        if n_sensors < 1 {
            return Err(Error::InvalidParameter("sensor count must be >= 1".into()));
        }
        if !(snapshots > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "snapshot count must be positive, got {snapshots}"
            )));
        }
        if !(inr >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "INR must be nonnegative, got {inr}"
            )));
        }
        if !(delta >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "diagonal loading must be nonnegative, got {delta}"
            )));
        }
        Ok(Self {
            n_sensors,
            snapshots,
            inr,
            delta,
            angles,
        })
    }

    pub fn n_sensors(&self) -> usize {
        self.n_sensors
    }

    pub fn snapshots(&self) -> f64 {
        self.snapshots
    }

    pub fn inr(&self) -> f64 {
        self.inr
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn angles(&self) -> &AngleDecomposition {
        &self.angles
    }

    /// Aspect ratio c = N/L.
    pub fn aspect(&self) -> f64 {
        self.n_sensors as f64 / self.snapshots
    }

    fn require_nondegenerate(&self) -> Result<(f64, f64)> {
        let tan_sq = self.angles.tan_sq().map_err(|_| {
            Error::DegenerateGeometry(
                "look and interferer steering vectors are orthogonal".into(),
            )
        })?;
        let cot_sq = self.angles.cot_sq().map_err(|_| {
            Error::DegenerateGeometry("look and interferer directions coincide".into())
        })?;
        Ok((tan_sq, cot_sq))
    }

    /// Model assumption checks. Violations degrade accuracy but do not
    /// prevent evaluation.
    pub fn validity_warnings(&self) -> Vec<ValidityWarning> {
        let mut warnings = Vec::new();
        let n = self.n_sensors as f64;
        if n < 10.0 {
            warnings.push(ValidityWarning::SmallArray { n: self.n_sensors });
        }
        let n_inr = n * self.inr;
        if n_inr < 10.0 {
            warnings.push(ValidityWarning::WeakInterferer { n_inr });
        }
        if let Ok(tan_sq) = self.angles.tan_sq() {
            let inr_tan_sq = self.inr * tan_sq;
            if inr_tan_sq < 10.0 {
                warnings.push(ValidityWarning::InterfererInsideMainlobe { inr_tan_sq });
            }
        }
        let c = self.aspect();
        if c <= 1.0 {
            let edge = (1.0 - c.sqrt()).powi(2);
            if self.delta <= edge {
                warnings.push(ValidityWarning::LoadingBelowBulkEdge {
                    delta: self.delta,
                    edge,
                });
            }
        }
        warnings
    }
}

/// A model assumption that does not hold for the given parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidityWarning {
    /// N ≥ 10 fails.
    SmallArray { n: usize },
    /// Nσ₁² ≥ 10 fails.
    WeakInterferer { n_inr: f64 },
    /// σ₁² tan²(v0,v1) ≥ 10 fails.
    InterfererInsideMainlobe { inr_tan_sq: f64 },
    /// Snapshot-sufficient case needs δ above the noise-bulk edge
    /// (1 − √c)².
    LoadingBelowBulkEdge { delta: f64, edge: f64 },
}

impl std::fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::SmallArray { n } => write!(f, "array too short for the model: N = {n} < 10"),
            Self::WeakInterferer { n_inr } => {
                write!(f, "interferer too weak for the model: N*INR = {n_inr:.3} < 10")
            }
            Self::InterfererInsideMainlobe { inr_tan_sq } => write!(
                f,
                "interferer effectively inside the main lobe: INR*tan^2 = {inr_tan_sq:.3} < 10"
            ),
            Self::LoadingBelowBulkEdge { delta, edge } => write!(
                f,
                "loading {delta:.4} at or below the noise-bulk edge (1-sqrt(c))^2 = {edge:.4}"
            ),
        }
    }
}

/// Predicted breakpoints of the notch-vs-snapshots model, in snapshot
/// counts (possibly below one snapshot; reported as-is).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BreakpointsL {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

/// Predicted breakpoints of the notch-vs-INR model, linear power.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BreakpointsInr {
    pub inr1: f64,
    pub inr2: f64,
}

/// Almost-sure limit of |e₁ᴴξ₁|², the squared projection of the sample
/// principal eigenvector on its ensemble counterpart, for the spiked
/// covariance with spike power σ₁² and aspect ratio c = N/L.
///
/// Zero at and below the phase transition σ₁² = √c/N; both branches meet
/// continuously there.
pub fn rmt_projection_sq(c: f64, n_sensors: usize, inr: f64) -> f64 {
    let n = n_sensors as f64;
    if inr <= c.sqrt() / n {
        return 0.0;
    }
    let t = n * inr;
    ((1.0 - c / (t * t)) / (1.0 + c / t)).clamp(0.0, 1.0)
}

/// |e₁ᴴξ⊥|² = (1 − |e₁ᴴξ₁|²)/(N − 1): the leaked energy lands uniformly
/// on the sphere orthogonal to the spike.
pub fn rmt_perp_projection_sq(proj_sq: f64, n_sensors: usize) -> Result<f64> {
    if n_sensors < 2 {
        return Err(Error::InvalidParameter(
            "orthogonal projection needs at least two sensors".into(),
        ));
    }
    if !(0.0..=1.0).contains(&proj_sq) {
        return Err(Error::InvalidParameter(format!(
            "projection must lie in [0, 1], got {proj_sq}"
        )));
    }
    Ok((1.0 - proj_sq) / (n_sensors as f64 - 1.0))
}

/// Mean notch depth as a function of snapshot count:
///
///   ND(L) ≈ cos²(1+δ)² |f₃f₂|²/|f₁|²
///   f₁ = N + L(1 + δ + Nσ₁² sin²)
///   f₂ = √L − √N cot/σ₁
///   f₃ = √L − √N σ₁ tan/(1+δ)
///
/// Fixed parameters (N, σ₁², δ, geometry) come from `params`; `l` is the
/// evaluation point.
pub fn model_nd_vs_snapshots(params: &ModelParams, l: f64) -> Result<NotchDepthValue> {
    if !(l >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "snapshot count must be at least 1, got {l}"
        )));
    }
    if !(params.inr > 0.0) {
        return Err(Error::InvalidParameter(
            "notch-vs-snapshots model needs a positive INR".into(),
        ));
    }
    let (tan_sq, cot_sq) = params.require_nondegenerate()?;
    let n = params.n_sensors as f64;
    let sigma = params.inr.sqrt();
    let delta = params.delta;
    let cos_sq = params.angles.cos_sq;
    let sin_sq = params.angles.sin_sq;

    let f1 = n + l * (1.0 + delta + n * params.inr * sin_sq);
    let f2 = l.sqrt() - n.sqrt() * cot_sq.sqrt() / sigma;
    let f3 = l.sqrt() - n.sqrt() * sigma * tan_sq.sqrt() / (1.0 + delta);
    let linear = cos_sq * (1.0 + delta).powi(2) * (f3 * f2).powi(2) / f1.powi(2);
    Ok(NotchDepthValue::from_linear(linear))
}

/// Snapshot counts where the model factors change slope:
/// L₁ = N/(δ + σ₁²N sin²), L₂ = N cot²/σ₁², L₃ = N σ₁² tan²/(1+δ)².
pub fn breakpoints_snapshots(params: &ModelParams) -> Result<BreakpointsL> {
    if !(params.inr > 0.0) {
        return Err(Error::InvalidParameter(
            "breakpoints need a positive INR".into(),
        ));
    }
    let (tan_sq, cot_sq) = params.require_nondegenerate()?;
    let n = params.n_sensors as f64;
    Ok(BreakpointsL {
        l1: n / (params.delta + params.inr * n * params.angles.sin_sq),
        l2: n * cot_sq / params.inr,
        l3: n * params.inr * tan_sq / (1.0 + params.delta).powi(2),
    })
}

/// Mean notch depth as a function of interferer power at fixed c = N/L:
///
///   ND(σ₁²) ≈ cos² |σ₁√c tan − (1+c+δ)|² / |Nσ₁² sin² + (1+c+δ)|²
pub fn model_nd_vs_inr(params: &ModelParams, inr: f64) -> Result<NotchDepthValue> {
    if !(inr >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "INR must be nonnegative, got {inr}"
        )));
    }
    let (tan_sq, _) = params.require_nondegenerate()?;
    let n = params.n_sensors as f64;
    let c = params.aspect();
    let k = 1.0 + c + params.delta;
    let cos_sq = params.angles.cos_sq;
    let sin_sq = params.angles.sin_sq;

    let numerator = (inr.sqrt() * c.sqrt() * tan_sq.sqrt() - k).powi(2);
    let denominator = (n * inr * sin_sq + k).powi(2);
    Ok(NotchDepthValue::from_linear(
        cos_sq * numerator / denominator,
    ))
}

/// Interferer powers where the INR model changes slope:
/// INR₁ = (1+c+δ)/(N sin²), INR₂ = (1+c+δ)²/(c tan²).
pub fn breakpoints_inr(params: &ModelParams) -> Result<BreakpointsInr> {
    let (tan_sq, _) = params.require_nondegenerate()?;
    let n = params.n_sensors as f64;
    let c = params.aspect();
    let k = 1.0 + c + params.delta;
    Ok(BreakpointsInr {
        inr1: k / (n * params.angles.sin_sq),
        inr2: k * k / (c * tan_sq),
    })
}
