//! Ensemble and sample covariance matrices, snapshot generation, diagonal
//! loading, and Hermitian eigensystems / positive-definite solves.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::array::SteeringVector;
use crate::error::{Error, Result};

/// How a covariance matrix was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovarianceKind {
    Ensemble,
    Sample,
    Loaded,
}

/// N×N Hermitian positive semidefinite covariance matrix.
#[derive(Debug, Clone)]
pub struct CovarianceMatrix {
    entries: DMatrix<Complex64>,
    kind: CovarianceKind,
}

impl CovarianceMatrix {
    /// Wrap an externally built matrix, validating Hermitian symmetry to
    /// 1e-12 relative.
    pub fn from_matrix(entries: DMatrix<Complex64>, kind: CovarianceKind) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        let scale = entries
            .iter()
            .map(|z| z.norm())
            .fold(f64::MIN_POSITIVE, f64::max);
        let mut max_asymmetry = 0.0f64;
        for j in 0..entries.ncols() {
            for i in j..entries.nrows() {
                let asym = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                max_asymmetry = max_asymmetry.max(asym);
            }
        }
        if max_asymmetry > 1e-12 * scale {
            return Err(Error::NotHermitian {
                max_asymmetry: max_asymmetry / scale,
            });
        }
        Ok(Self { entries, kind })
    }

    /// Internal constructor for matrices Hermitian by construction.
    fn from_hermitian(entries: DMatrix<Complex64>, kind: CovarianceKind) -> Self {
        Self { entries, kind }
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn kind(&self) -> CovarianceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.entries[(i, i)].re).sum()
    }
}

/// Full orthonormal eigensystem, eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl EigenSystem {
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Unit-norm eigenvectors as matrix columns, ordered to match
    /// `eigenvalues`.
    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    /// Eigenvector of the largest eigenvalue.
    pub fn principal_eigenvector(&self) -> DVector<Complex64> {
        self.eigenvectors.column(0).into_owned()
    }
}

/// N×L snapshot matrix; column l is one array observation.
#[derive(Debug, Clone)]
pub struct SnapshotBatch {
    data: DMatrix<Complex64>,
    scenario_tag: String,
    seed: u64,
}

impl SnapshotBatch {
    pub fn new(data: DMatrix<Complex64>, scenario_tag: String, seed: u64) -> Result<Self> {
        if data.ncols() < 1 {
            return Err(Error::InvalidParameter(
                "snapshot batch needs at least one snapshot".into(),
            ));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "snapshot batch contains non-finite values".into(),
            ));
        }
        Ok(Self {
            data,
            scenario_tag,
            seed,
        })
    }

    pub fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn scenario_tag(&self) -> &str {
        &self.scenario_tag
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_sensors(&self) -> usize {
        self.data.nrows()
    }

    pub fn n_snapshots(&self) -> usize {
        self.data.ncols()
    }
}

/// Σ = σ₁² v₁v₁ᴴ + I for a single interferer in unit white noise.
pub fn ensemble_cov(v1: &SteeringVector, inr: f64) -> Result<CovarianceMatrix> {
    if !(inr >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "INR must be nonnegative, got {inr}"
        )));
    }
    let v = v1.elements();
    let n = v.len();
    let entries = DMatrix::from_fn(n, n, |i, j| {
        let mut z = v[i] * v[j].conj() * inr;
        if i == j {
            z += Complex64::new(1.0, 0.0);
        }
        z
    });
    Ok(CovarianceMatrix::from_hermitian(
        entries,
        CovarianceKind::Ensemble,
    ))
}

/// Draw L snapshots x_l = a_l v₁ + n_l with a_l ~ CN(0, σ₁²) and
/// n_l ~ CN(0, I).
///
/// CN(0, σ²) means independent real and imaginary parts of variance σ²/2
/// each, so E|a_l|² = σ₁². The stream is ChaCha12 keyed by `seed`; per
/// snapshot the draw order is (Re a, Im a, Re n_0, Im n_0, …), which makes
/// identical (seed, parameters) produce bit-identical batches.
pub fn generate_snapshots(
    v1: &SteeringVector,
    inr: f64,
    l: usize,
    seed: u64,
) -> Result<SnapshotBatch> {
    if l == 0 {
        return Err(Error::InvalidParameter(
            "snapshot count must be at least 1".into(),
        ));
    }
    if !(inr >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "INR must be nonnegative, got {inr}"
        )));
    }
    let v = v1.elements();
    let n = v.len();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let amp_scale = (inr / 2.0).sqrt();
    const NOISE_SCALE: f64 = std::f64::consts::FRAC_1_SQRT_2;

    let mut data = DMatrix::<Complex64>::zeros(n, l);
    for col in 0..l {
        let ar: f64 = normal.sample(&mut rng);
        let ai: f64 = normal.sample(&mut rng);
        let a = Complex64::new(ar, ai) * amp_scale;
        for row in 0..n {
            let nr: f64 = normal.sample(&mut rng);
            let ni: f64 = normal.sample(&mut rng);
            data[(row, col)] = a * v[row] + Complex64::new(nr, ni) * NOISE_SCALE;
        }
    }
    let scenario_tag = format!(
        "n={} u1={} inr={} L={}",
        n,
        v1.direction_cosine(),
        inr,
        l
    );
    Ok(SnapshotBatch {
        data,
        scenario_tag,
        seed,
    })
}

/// S = (1/L) Σ_l x_l x_lᴴ.
///
/// Accumulates the lower triangle per snapshot and mirrors the conjugate,
/// so the result is Hermitian exactly.
pub fn sample_cov(batch: &SnapshotBatch) -> CovarianceMatrix {
    let n = batch.n_sensors();
    let l = batch.n_snapshots();
    let data = &batch.data;

    let mut acc = DMatrix::<Complex64>::zeros(n, n);
    for col in 0..l {
        let x = data.column(col);
        for j in 0..n {
            let xj_conj = x[j].conj();
            for i in j..n {
                acc[(i, j)] += x[i] * xj_conj;
            }
        }
    }
    let inv_l = 1.0 / l as f64;
    for j in 0..n {
        acc[(j, j)] = Complex64::new(acc[(j, j)].re * inv_l, 0.0);
        for i in (j + 1)..n {
            acc[(i, j)] *= inv_l;
            acc[(j, i)] = acc[(i, j)].conj();
        }
    }
    CovarianceMatrix::from_hermitian(acc, CovarianceKind::Sample)
}

/// S_δ = S + δI. Shifts every eigenvalue by δ and leaves eigenvectors
/// unchanged.
pub fn diagonal_load(scm: &CovarianceMatrix, delta: f64) -> Result<CovarianceMatrix> {
    if !(delta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "diagonal loading must be nonnegative, got {delta}"
        )));
    }
    let mut entries = scm.entries.clone();
    for i in 0..entries.nrows() {
        entries[(i, i)] += Complex64::new(delta, 0.0);
    }
    Ok(CovarianceMatrix::from_hermitian(
        entries,
        CovarianceKind::Loaded,
    ))
}

/// Full Hermitian eigensystem, eigenvalues descending.
pub fn eigensystem(cov: &CovarianceMatrix) -> Result<EigenSystem> {
    let se = nalgebra::SymmetricEigen::new(cov.entries.clone());
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].total_cmp(&se.eigenvalues[a]));

    let eigenvalues = DVector::from_fn(n, |k, _| se.eigenvalues[order[k]]);
    let mut eigenvectors = DMatrix::<Complex64>::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        eigenvectors.set_column(k, &se.eigenvectors.column(src));
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Solve cov · y = rhs for Hermitian positive definite cov via Cholesky.
///
/// Requires the smallest eigenvalue to exceed 1e-12 times the largest;
/// rank-deficient sample covariances (L < N, unloaded) are rejected even
/// when the factorization happens to complete in floating point.
pub fn solve_hpd(cov: &CovarianceMatrix, rhs: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    if cov.dim() != rhs.len() {
        return Err(Error::DimensionMismatch {
            left: cov.dim(),
            right: rhs.len(),
        });
    }
    let chol = nalgebra::Cholesky::new(cov.entries.clone()).ok_or(Error::SingularMatrix)?;
    // diag(L)² spans the eigenvalue range; 1e-6 on the diagonal ratio
    // matches the 1e-12 eigenvalue-ratio precondition
    let l = chol.l_dirty();
    let mut dmin = f64::INFINITY;
    let mut dmax: f64 = 0.0;
    for i in 0..cov.dim() {
        let d = l[(i, i)].re;
        if !d.is_finite() {
            return Err(Error::SingularMatrix);
        }
        dmin = dmin.min(d);
        dmax = dmax.max(d);
    }
    if !(dmin > 1e-6 * dmax) {
        return Err(Error::SingularMatrix);
    }
    // one step of iterative refinement: the loaded spike covariances used
    // here reach condition numbers ~1e6, where a bare Cholesky solve loses
    // enough accuracy to disturb notch depths evaluated deep in a null
    let mut y = chol.solve(rhs);
    let residual = rhs - &cov.entries * &y;
    y += chol.solve(&residual);
    Ok(y)
}
