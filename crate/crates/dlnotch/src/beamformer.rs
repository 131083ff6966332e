//! MVDR weights, beampatterns, and notch depth (sample and ensemble).

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::array::{ArrayGeometry, SteeringVector};
use crate::covariance::{solve_hpd, CovarianceMatrix};
use crate::error::{Error, Result};

/// MVDR weight vector steered to `look_direction`.
///
/// Satisfies the distortionless constraint wᴴv₀ = 1.
#[derive(Debug, Clone)]
pub struct BeamformerWeights {
    weights: DVector<Complex64>,
    look_direction: f64,
}

impl BeamformerWeights {
    pub fn weights(&self) -> &DVector<Complex64> {
        &self.weights
    }

    pub fn look_direction(&self) -> f64 {
        self.look_direction
    }

    /// Conventional beamformer weights v₀/N (the Σ = I special case).
    pub fn conventional(v0: &SteeringVector) -> Self {
        let n = v0.len() as f64;
        Self {
            weights: v0.elements() / Complex64::new(n, 0.0),
            look_direction: v0.direction_cosine(),
        }
    }
}

/// Beampattern power at the interferer direction, in linear and dB.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NotchDepthValue {
    pub linear: f64,
    pub db: f64,
}

impl NotchDepthValue {
    pub fn from_linear(linear: f64) -> Self {
        Self {
            linear,
            db: 10.0 * linear.log10(),
        }
    }
}

/// w = Σ⁻¹v₀ / (v₀ᴴΣ⁻¹v₀) via a positive-definite solve.
pub fn mvdr_weights(cov: &CovarianceMatrix, v0: &SteeringVector) -> Result<BeamformerWeights> {
    if cov.dim() != v0.len() {
        return Err(Error::DimensionMismatch {
            left: cov.dim(),
            right: v0.len(),
        });
    }
    let y = solve_hpd(cov, v0.elements())?;
    let denom = v0.elements().dotc(&y);
    let weights = y / denom;
    let w = BeamformerWeights {
        weights,
        look_direction: v0.direction_cosine(),
    };
    debug_assert!(
        {
            let g = w.weights.dotc(v0.elements());
            (g.re - 1.0).abs() < 1e-10 && g.im.abs() < 1e-10
        },
        "distortionless constraint violated"
    );
    Ok(w)
}

/// |wᴴv(u)|² for the array that produced the weights.
pub fn beampattern(w: &BeamformerWeights, geometry: &ArrayGeometry, u: f64) -> Result<f64> {
    let v = geometry.steering_vector(u)?;
    if v.len() != w.weights.len() {
        return Err(Error::DimensionMismatch {
            left: w.weights.len(),
            right: v.len(),
        });
    }
    Ok(w.weights.dotc(v.elements()).norm_sqr())
}

/// ND = |wᴴv₁|², the beampattern at the true interferer direction.
pub fn notch_depth(w: &BeamformerWeights, v1: &SteeringVector) -> Result<NotchDepthValue> {
    if w.weights.len() != v1.len() {
        return Err(Error::DimensionMismatch {
            left: w.weights.len(),
            right: v1.len(),
        });
    }
    Ok(NotchDepthValue::from_linear(
        w.weights.dotc(v1.elements()).norm_sqr(),
    ))
}

/// Closed-form notch depth of the loaded beamformer on the ensemble
/// covariance:
///
///   cos²(v₀,v₁)(1+δ)² / (1 + δ + Nσ₁² sin²(v₀,v₁))²
///
/// This is exact algebra for Σ_δ = σ₁²v₁v₁ᴴ + (1+δ)I, the ideally
/// achievable notch when the ensemble covariance is known.
pub fn ensemble_notch_depth(
    n_sensors: usize,
    delta: f64,
    inr: f64,
    cos_sq: f64,
) -> NotchDepthValue {
    let sin_sq = 1.0 - cos_sq;
    let denom = 1.0 + delta + n_sensors as f64 * inr * sin_sq;
    NotchDepthValue::from_linear(cos_sq * (1.0 + delta).powi(2) / denom.powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::{angle_decomposition, generalized_cosine_sq};
    use crate::covariance::{diagonal_load, ensemble_cov, CovarianceKind};
    use nalgebra::DMatrix;

    fn geom() -> ArrayGeometry {
        ArrayGeometry::half_wavelength(50).unwrap()
    }

    /// Independent route to the ensemble DL-MVDR notch depth through the
    /// Sherman–Morrison rank-one inverse, bypassing both the solver and
    /// the closed form.
    fn sherman_morrison_nd(n: usize, u0: f64, u1: f64, delta: f64, inr: f64) -> f64 {
        let g = ArrayGeometry::half_wavelength(n).unwrap();
        let v0 = g.steering_vector(u0).unwrap();
        let v1 = g.steering_vector(u1).unwrap();
        let coef = |rhs: &SteeringVector| {
            let v1h_rhs = v1.elements().dotc(rhs.elements());
            let scale = inr * v1h_rhs / ((1.0 + delta) + inr * n as f64);
            (rhs.elements() - v1.elements() * scale) / Complex64::new(1.0 + delta, 0.0)
        };
        let y0 = coef(&v0);
        let w = &y0 / v0.elements().dotc(&y0);
        w.dotc(v1.elements()).norm_sqr()
    }

    #[test]
    fn identity_covariance_gives_cbf() {
        let v0 = geom().steering_vector(0.0).unwrap();
        let eye = CovarianceMatrix::from_matrix(
            DMatrix::<Complex64>::identity(50, 50),
            CovarianceKind::Ensemble,
        )
        .unwrap();
        let w = mvdr_weights(&eye, &v0).unwrap();
        let cbf = BeamformerWeights::conventional(&v0);
        assert!((w.weights() - cbf.weights()).norm() < 1e-12);
    }

    #[test]
    fn distortionless_on_random_hpd() {
        let b = DMatrix::<Complex64>::from_fn(50, 50, |i, j| {
            Complex64::new(((i * 13 + j) as f64).sin(), ((j * 7 + i) as f64).cos())
        });
        let a = &b * b.adjoint() + DMatrix::<Complex64>::identity(50, 50);
        let cov = CovarianceMatrix::from_matrix(a, CovarianceKind::Ensemble).unwrap();
        let v0 = geom().steering_vector(0.3).unwrap();
        let w = mvdr_weights(&cov, &v0).unwrap();
        let g = w.weights().dotc(v0.elements());
        assert!((g.re - 1.0).abs() < 1e-10 && g.im.abs() < 1e-10);
    }

    #[test]
    fn ensemble_dl_mvdr_notch_matches_sherman_morrison() {
        let v0 = geom().steering_vector(0.0).unwrap();
        let v1 = geom().steering_vector(0.06).unwrap();
        let loaded = diagonal_load(&ensemble_cov(&v1, 100.0).unwrap(), 0.5).unwrap();
        let w = mvdr_weights(&loaded, &v0).unwrap();
        let nd = notch_depth(&w, &v1).unwrap();

        let oracle = sherman_morrison_nd(50, 0.0, 0.06, 0.5, 100.0);
        assert!((nd.linear - oracle).abs() / oracle < 1e-10);
        // frozen: ≈ 4.456e-9, −83.51 dB
        assert!((nd.linear - 4.4557e-9).abs() < 1e-12);
        assert!((nd.db + 83.51).abs() < 0.01);
    }

    #[test]
    fn beampattern_unity_at_look_direction() {
        let v0 = geom().steering_vector(0.2).unwrap();
        let v1 = geom().steering_vector(0.5).unwrap();
        let loaded = diagonal_load(&ensemble_cov(&v1, 30.0).unwrap(), 1.0).unwrap();
        let w = mvdr_weights(&loaded, &v0).unwrap();
        let bp = beampattern(&w, &geom(), 0.2).unwrap();
        assert!((bp - 1.0).abs() < 1e-10);
        assert!(matches!(
            beampattern(&w, &geom(), 1.5),
            Err(Error::InvalidDirection(_))
        ));
    }

    #[test]
    fn cbf_beampattern_values() {
        let v0 = geom().steering_vector(0.0).unwrap();
        let w = BeamformerWeights::conventional(&v0);
        assert!(beampattern(&w, &geom(), 0.04).unwrap() < 1e-12);
        let sidelobe = beampattern(&w, &geom(), 0.06).unwrap();
        let v1 = geom().steering_vector(0.06).unwrap();
        let cos_sq = generalized_cosine_sq(&v0, &v1).unwrap();
        assert!((sidelobe - cos_sq).abs() < 1e-12);
        assert!((sidelobe - 0.045165).abs() < 1e-6);
    }

    #[test]
    fn notch_at_look_direction_is_unity() {
        let v0 = geom().steering_vector(0.1).unwrap();
        let v1 = geom().steering_vector(0.5).unwrap();
        let loaded = diagonal_load(&ensemble_cov(&v1, 10.0).unwrap(), 0.5).unwrap();
        let w = mvdr_weights(&loaded, &v0).unwrap();
        let nd = notch_depth(&w, &v0).unwrap();
        assert!((nd.linear - 1.0).abs() < 1e-10);
        assert!(nd.db.abs() < 1e-9);
    }

    #[test]
    fn cbf_notch_equals_generalized_cosine() {
        let v0 = geom().steering_vector(0.0).unwrap();
        let v1 = geom().steering_vector(0.06).unwrap();
        let w = BeamformerWeights::conventional(&v0);
        let nd = notch_depth(&w, &v1).unwrap();
        let cos_sq = generalized_cosine_sq(&v0, &v1).unwrap();
        assert!((nd.linear - cos_sq).abs() < 1e-14);
    }

    #[test]
    fn ensemble_closed_form_special_cases() {
        // zero INR: reduces to the CBF sidelobe level
        let nd = ensemble_notch_depth(50, 0.5, 0.0, 0.045165);
        assert!((nd.linear - 0.045165).abs() < 1e-12);
        // aligned interferer: distortionless direction
        let nd = ensemble_notch_depth(50, 0.5, 100.0, 1.0);
        assert!((nd.linear - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_equals_solver_route() {
        let v0 = geom().steering_vector(0.0).unwrap();
        let v1 = geom().steering_vector(0.06).unwrap();
        let cos_sq = generalized_cosine_sq(&v0, &v1).unwrap();
        let cf = ensemble_notch_depth(50, 0.5, 100.0, cos_sq);
        let loaded = diagonal_load(&ensemble_cov(&v1, 100.0).unwrap(), 0.5).unwrap();
        let w = mvdr_weights(&loaded, &v0).unwrap();
        let direct = notch_depth(&w, &v1).unwrap();
        assert!((cf.linear - direct.linear).abs() / cf.linear < 1e-9);
    }

    #[test]
    fn weights_invariant_to_covariance_scale() {
        let v0 = geom().steering_vector(0.0).unwrap();
        let v1 = geom().steering_vector(0.06).unwrap();
        let loaded = diagonal_load(&ensemble_cov(&v1, 100.0).unwrap(), 0.5).unwrap();
        let w_ref = mvdr_weights(&loaded, &v0).unwrap();
        for &c in &[0.1, 10.0] {
            let scaled = CovarianceMatrix::from_matrix(
                loaded.entries() * Complex64::new(c, 0.0),
                CovarianceKind::Loaded,
            )
            .unwrap();
            let w = mvdr_weights(&scaled, &v0).unwrap();
            assert!(
                (w.weights() - w_ref.weights()).norm() < 1e-10,
                "scale {c} changed weights"
            );
        }
    }

    #[test]
    fn ensemble_monotonicity() {
        let v0 = geom().steering_vector(0.0).unwrap();
        let v1 = geom().steering_vector(0.06).unwrap();
        let cos_sq = generalized_cosine_sq(&v0, &v1).unwrap();
        let d = angle_decomposition(&v0, &v1).unwrap();
        assert!(d.sin_sq > 0.0);
        // nonincreasing in INR
        let mut prev = f64::INFINITY;
        for k in 0..40 {
            let inr = 10f64.powf(k as f64 * 0.1);
            let nd = ensemble_notch_depth(50, 0.5, inr, cos_sq).linear;
            assert!(nd <= prev + 1e-18);
            prev = nd;
        }
        // nondecreasing in delta
        let mut prev = 0.0;
        for k in 0..30 {
            let delta = 0.05 * k as f64 + 0.01;
            let nd = ensemble_notch_depth(50, delta, 100.0, cos_sq).linear;
            assert!(nd >= prev - 1e-18);
            prev = nd;
        }
    }
}
