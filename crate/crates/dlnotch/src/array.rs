//! Uniform linear array geometry, steering vectors, and generalized angles.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniform linear array: sensor count and element spacing in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    n_sensors: usize,
    spacing_wavelengths: f64,
}

impl ArrayGeometry {
    pub fn new(n_sensors: usize, spacing_wavelengths: f64) -> Result<Self> {
        if n_sensors < 1 {
            return Err(Error::InvalidParameter(
                "array needs at least one sensor".into(),
            ));
        }
        if !(spacing_wavelengths > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "element spacing must be positive, got {spacing_wavelengths}"
            )));
        }
        Ok(Self {
            n_sensors,
            spacing_wavelengths,
        })
    }

    /// Standard half-wavelength array.
    pub fn half_wavelength(n_sensors: usize) -> Result<Self> {
        Self::new(n_sensors, 0.5)
    }

    pub fn n_sensors(&self) -> usize {
        self.n_sensors
    }

    pub fn spacing_wavelengths(&self) -> f64 {
        self.spacing_wavelengths
    }

    /// Steering vector for direction cosine `u`.
    ///
    /// Element n carries phase +i 2π d n u with the first element as phase
    /// reference, so every element has unit modulus and ‖v‖² = N.
    pub fn steering_vector(&self, u: f64) -> Result<SteeringVector> {
        steering_vector(self, u)
    }
}

/// Array steering vector tagged with its direction cosine.
#[derive(Debug, Clone)]
pub struct SteeringVector {
    elements: DVector<Complex64>,
    direction_cosine: f64,
}

impl SteeringVector {
    pub fn elements(&self) -> &DVector<Complex64> {
        &self.elements
    }

    pub fn direction_cosine(&self) -> f64 {
        self.direction_cosine
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Generalized angle between two steering vectors, with the √N-scaled
/// components used by the mean-notch models.
#[derive(Debug, Clone, Copy)]
pub struct AngleDecomposition {
    pub cos_sq: f64,
    pub sin_sq: f64,
    /// √N cos(v0, v1)
    pub alpha: f64,
    /// √N sin(v0, v1)
    pub beta: f64,
}

impl AngleDecomposition {
    /// Below this, cos² or sin² is treated as an exact zero: the value is
    /// dominated by roundoff of the steering inner product.
    const DEGENERATE_TOL: f64 = 1e-12;

    /// tan²(v0, v1) = sin²/cos². Degenerate when cos² = 0.
    pub fn tan_sq(&self) -> Result<f64> {
        if self.cos_sq <= Self::DEGENERATE_TOL {
            return Err(Error::DegenerateGeometry(
                "tan undefined: steering vectors are orthogonal".into(),
            ));
        }
        Ok(self.sin_sq / self.cos_sq)
    }

    /// cot²(v0, v1) = cos²/sin². Degenerate when sin² = 0.
    pub fn cot_sq(&self) -> Result<f64> {
        if self.sin_sq <= Self::DEGENERATE_TOL {
            return Err(Error::DegenerateGeometry(
                "cot undefined: steering vectors are aligned".into(),
            ));
        }
        Ok(self.cos_sq / self.sin_sq)
    }
}

pub fn steering_vector(geometry: &ArrayGeometry, u: f64) -> Result<SteeringVector> {
    if !(-1.0..=1.0).contains(&u) || u.is_nan() {
        return Err(Error::InvalidDirection(u));
    }
    let phase_step = 2.0 * std::f64::consts::PI * geometry.spacing_wavelengths * u;
    let elements = DVector::from_fn(geometry.n_sensors, |n, _| {
        Complex64::from_polar(1.0, phase_step * n as f64)
    });
    Ok(SteeringVector {
        elements,
        direction_cosine: u,
    })
}

/// |v0ᴴv1|² / (‖v0‖²‖v1‖²), the squared generalized cosine of Cox.
pub fn generalized_cosine_sq(v0: &SteeringVector, v1: &SteeringVector) -> Result<f64> {
    if v0.len() != v1.len() {
        return Err(Error::DimensionMismatch {
            left: v0.len(),
            right: v1.len(),
        });
    }
    let inner = v0.elements.dotc(&v1.elements);
    let value = inner.norm_sqr() / (v0.elements.norm_squared() * v1.elements.norm_squared());
    // Cauchy-Schwarz bounds can be grazed by roundoff.
    Ok(value.clamp(0.0, 1.0))
}

/// Split v0 into components along and orthogonal to v1 in generalized-angle
/// terms: cos², sin² = 1 − cos², α = √N cos, β = √N sin.
pub fn angle_decomposition(v0: &SteeringVector, v1: &SteeringVector) -> Result<AngleDecomposition> {
    let cos_sq = generalized_cosine_sq(v0, v1)?;
    let sin_sq = 1.0 - cos_sq;
    let n = v0.len() as f64;
    Ok(AngleDecomposition {
        cos_sq,
        sin_sq,
        alpha: (n * cos_sq).sqrt(),
        beta: (n * sin_sq).sqrt(),
    })
}
