//! Browser bindings: notch-depth curves and beampatterns as JSON for a
//! static demo page.
//!
//! Each exported function takes a JSON request string and returns a JSON
//! response string; the page plots the arrays on canvases. Monte Carlo
//! sizes are capped to stay interactive on one browser thread.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use dlnotch::{
    breakpoints_inr, breakpoints_snapshots, diagonal_load, generate_snapshots, model_nd_vs_inr,
    model_nd_vs_snapshots, mvdr_weights, run_sweep, sample_cov, ArrayGeometry, AveragingDomain,
    BeamformerWeights, Scenario, SweepAxis, SweepSpec,
};

const MAX_SENSORS: usize = 256;
const MAX_TRIALS: usize = 500;
const MAX_MC_SNAPSHOTS: f64 = 5000.0;
const MODEL_POINTS: usize = 220;

fn default_spacing() -> f64 {
    0.5
}

fn default_u1() -> f64 {
    0.06
}

fn default_seed() -> u64 {
    42
}

fn default_mc_points() -> usize {
    6
}

#[derive(Deserialize)]
struct SnapshotCurveRequest {
    n: usize,
    #[serde(default = "default_spacing")]
    spacing: f64,
    #[serde(default)]
    u0: f64,
    #[serde(default = "default_u1")]
    u1: f64,
    delta: f64,
    inr_db: f64,
    l_min: f64,
    l_max: f64,
    /// 0 disables the Monte Carlo overlay
    #[serde(default)]
    mc_trials: usize,
    #[serde(default = "default_mc_points")]
    mc_points: usize,
    #[serde(default = "default_seed")]
    seed: u64,
}

#[derive(Deserialize)]
struct InrCurveRequest {
    n: usize,
    #[serde(default = "default_spacing")]
    spacing: f64,
    #[serde(default)]
    u0: f64,
    #[serde(default = "default_u1")]
    u1: f64,
    delta: f64,
    /// Snapshot count fixing the aspect ratio c = N/L
    l: usize,
    inr_min_db: f64,
    inr_max_db: f64,
    #[serde(default)]
    mc_trials: usize,
    #[serde(default = "default_mc_points")]
    mc_points: usize,
    #[serde(default = "default_seed")]
    seed: u64,
}

#[derive(Deserialize)]
struct BeampatternRequest {
    n: usize,
    #[serde(default = "default_spacing")]
    spacing: f64,
    #[serde(default)]
    u0: f64,
    #[serde(default = "default_u1")]
    u1: f64,
    delta: f64,
    inr_db: f64,
    l: usize,
    #[serde(default = "default_seed")]
    seed: u64,
    #[serde(default)]
    points: usize,
}

#[derive(Serialize)]
struct CurveResponse {
    /// Snapshot counts, or INR in dB, matching the request kind.
    axis: Vec<f64>,
    model_db: Vec<f64>,
    ensemble_db: Vec<f64>,
    mc_axis: Vec<f64>,
    mc_mean_db: Vec<f64>,
    mc_stderr_db: Vec<f64>,
    breakpoints: Breakpoints,
    warnings: Vec<String>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Breakpoints {
    Snapshots { l1: f64, l2: f64, l3: f64 },
    Inr { inr1_db: f64, inr2_db: f64 },
}

#[derive(Serialize)]
struct BeampatternResponse {
    u: Vec<f64>,
    sample_db: Vec<f64>,
    ensemble_db: Vec<f64>,
    cbf_db: Vec<f64>,
    sample_nd_db: f64,
    ensemble_nd_db: f64,
    u1: f64,
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn check_scenario_size(n: usize) -> Result<(), String> {
    if n == 0 || n > MAX_SENSORS {
        return Err(format!("sensor count must be in 1..={MAX_SENSORS}, got {n}"));
    }
    Ok(())
}

fn check_mc(trials: usize, max_l: f64) -> Result<(), String> {
    if trials > MAX_TRIALS {
        return Err(format!("at most {MAX_TRIALS} trials in the browser, got {trials}"));
    }
    if trials > 0 && max_l > MAX_MC_SNAPSHOTS {
        return Err(format!(
            "Monte Carlo overlay limited to L <= {MAX_MC_SNAPSHOTS}, got {max_l}"
        ));
    }
    Ok(())
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (lo, hi) = (lo.min(hi), lo.max(hi));
    let step = (hi / lo).log10() / (points - 1) as f64;
    (0..points).map(|i| lo * 10f64.powf(step * i as f64)).collect()
}

fn mc_overlay(
    scenario: &Scenario,
    axis: SweepAxis,
    values: Vec<f64>,
    trials: usize,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), String> {
    if trials == 0 || values.is_empty() {
        return Ok((Vec::new(), Vec::new(), Vec::new()));
    }
    let spec = SweepSpec::new(
        *scenario,
        axis,
        values,
        trials,
        seed,
        AveragingDomain::Linear,
    )
    .map_err(|e| e.to_string())?;
    let curve = run_sweep(&spec).map_err(|e| e.to_string())?;
    Ok((curve.axis_values, curve.mc_mean_db, curve.mc_stderr_db))
}

fn snapshot_curve_impl(request: &str) -> Result<String, String> {
    let req: SnapshotCurveRequest =
        serde_json::from_str(request).map_err(|e| format!("bad request: {e}"))?;
    check_scenario_size(req.n)?;
    check_mc(req.mc_trials, req.l_max)?;
    let l_min = req.l_min.max(1.0);
    let l_max = req.l_max.max(l_min * 1.01);

    let geometry = ArrayGeometry::new(req.n, req.spacing).map_err(|e| e.to_string())?;
    let scenario = Scenario::new(
        geometry,
        req.u0,
        req.u1,
        req.delta,
        db_to_linear(req.inr_db),
        l_min.round() as usize,
    )
    .map_err(|e| e.to_string())?;
    let params = scenario.model_params().map_err(|e| e.to_string())?;
    let ensemble_db = scenario.ensemble_nd().map_err(|e| e.to_string())?.db;

    let axis = log_grid(l_min, l_max, MODEL_POINTS);
    let mut model_db = Vec::with_capacity(axis.len());
    for &l in &axis {
        model_db.push(
            model_nd_vs_snapshots(&params, l)
                .map_err(|e| e.to_string())?
                .db,
        );
    }
    let bp = breakpoints_snapshots(&params).map_err(|e| e.to_string())?;

    // Monte Carlo at a coarse log subset, rounded to integer counts
    let mut mc_values: Vec<f64> = log_grid(l_min, l_max, req.mc_points.clamp(2, 16))
        .iter()
        .map(|v| v.round())
        .collect();
    mc_values.dedup();
    let (mc_axis, mc_mean_db, mc_stderr_db) = mc_overlay(
        &scenario,
        SweepAxis::Snapshots,
        mc_values,
        req.mc_trials,
        req.seed,
    )?;

    let response = CurveResponse {
        axis,
        model_db,
        ensemble_db: vec![ensemble_db; MODEL_POINTS],
        mc_axis,
        mc_mean_db,
        mc_stderr_db,
        breakpoints: Breakpoints::Snapshots {
            l1: bp.l1,
            l2: bp.l2,
            l3: bp.l3,
        },
        warnings: params
            .validity_warnings()
            .iter()
            .map(|w| w.to_string())
            .collect(),
    };
    serde_json::to_string(&response).map_err(|e| e.to_string())
}

fn inr_curve_impl(request: &str) -> Result<String, String> {
    let req: InrCurveRequest =
        serde_json::from_str(request).map_err(|e| format!("bad request: {e}"))?;
    check_scenario_size(req.n)?;
    check_mc(req.mc_trials, req.l as f64)?;
    if req.inr_max_db <= req.inr_min_db {
        return Err("inr_max_db must exceed inr_min_db".into());
    }

    let geometry = ArrayGeometry::new(req.n, req.spacing).map_err(|e| e.to_string())?;
    let scenario = Scenario::new(
        geometry,
        req.u0,
        req.u1,
        req.delta,
        1.0, // per-point values below
        req.l,
    )
    .map_err(|e| e.to_string())?;
    let params = scenario.model_params().map_err(|e| e.to_string())?;

    let step = (req.inr_max_db - req.inr_min_db) / (MODEL_POINTS - 1) as f64;
    let mut axis = Vec::with_capacity(MODEL_POINTS);
    let mut model_db = Vec::with_capacity(MODEL_POINTS);
    let mut ensemble_db = Vec::with_capacity(MODEL_POINTS);
    for i in 0..MODEL_POINTS {
        let inr_db = req.inr_min_db + step * i as f64;
        let inr = db_to_linear(inr_db);
        axis.push(inr_db);
        model_db.push(model_nd_vs_inr(&params, inr).map_err(|e| e.to_string())?.db);
        ensemble_db.push(
            scenario
                .with_inr(inr)
                .ensemble_nd()
                .map_err(|e| e.to_string())?
                .db,
        );
    }
    let bp = breakpoints_inr(&params).map_err(|e| e.to_string())?;

    let points = req.mc_points.clamp(2, 16);
    let mc_step = (req.inr_max_db - req.inr_min_db) / (points - 1) as f64;
    let mc_values: Vec<f64> = (0..points)
        .map(|i| db_to_linear(req.inr_min_db + mc_step * i as f64))
        .collect();
    let (mc_axis, mc_mean_db, mc_stderr_db) =
        mc_overlay(&scenario, SweepAxis::Inr, mc_values, req.mc_trials, req.seed)?;

    let response = CurveResponse {
        axis,
        model_db,
        ensemble_db,
        mc_axis,
        mc_mean_db,
        mc_stderr_db,
        breakpoints: Breakpoints::Inr {
            inr1_db: 10.0 * bp.inr1.log10(),
            inr2_db: 10.0 * bp.inr2.log10(),
        },
        warnings: params
            .validity_warnings()
            .iter()
            .map(|w| w.to_string())
            .collect(),
    };
    serde_json::to_string(&response).map_err(|e| e.to_string())
}

fn beampattern_impl(request: &str) -> Result<String, String> {
    let req: BeampatternRequest =
        serde_json::from_str(request).map_err(|e| format!("bad request: {e}"))?;
    check_scenario_size(req.n)?;
    if req.l as f64 > MAX_MC_SNAPSHOTS {
        return Err(format!("L <= {MAX_MC_SNAPSHOTS} in the browser, got {}", req.l));
    }
    let points = if req.points == 0 { 801 } else { req.points.clamp(101, 2001) };

    let geometry = ArrayGeometry::new(req.n, req.spacing).map_err(|e| e.to_string())?;
    let scenario = Scenario::new(
        geometry,
        req.u0,
        req.u1,
        req.delta,
        db_to_linear(req.inr_db),
        req.l,
    )
    .map_err(|e| e.to_string())?;
    let v0 = scenario.look_vector().map_err(|e| e.to_string())?;
    let v1 = scenario.interferer_vector().map_err(|e| e.to_string())?;

    // one seeded realization of the DL-MVDR weights
    let batch = generate_snapshots(&v1, scenario.inr, scenario.snapshots, req.seed)
        .map_err(|e| e.to_string())?;
    let loaded =
        diagonal_load(&sample_cov(&batch), scenario.delta).map_err(|e| e.to_string())?;
    let sample_w = mvdr_weights(&loaded, &v0).map_err(|e| e.to_string())?;

    // the ensemble-covariance weights and the conventional taper
    let ens_loaded = diagonal_load(
        &dlnotch::ensemble_cov(&v1, scenario.inr).map_err(|e| e.to_string())?,
        scenario.delta,
    )
    .map_err(|e| e.to_string())?;
    let ens_w = mvdr_weights(&ens_loaded, &v0).map_err(|e| e.to_string())?;
    let cbf_w = BeamformerWeights::conventional(&v0);

    let mut u = Vec::with_capacity(points);
    let mut sample_db = Vec::with_capacity(points);
    let mut ensemble_db = Vec::with_capacity(points);
    let mut cbf_db = Vec::with_capacity(points);
    for i in 0..points {
        let ui = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        u.push(ui);
        for (w, out) in [
            (&sample_w, &mut sample_db),
            (&ens_w, &mut ensemble_db),
            (&cbf_w, &mut cbf_db),
        ] {
            let bp = dlnotch::beampattern(w, &geometry, ui).map_err(|e| e.to_string())?;
            out.push(10.0 * bp.log10());
        }
    }

    let sample_nd = dlnotch::notch_depth(&sample_w, &v1).map_err(|e| e.to_string())?;
    let response = BeampatternResponse {
        u,
        sample_db,
        ensemble_db,
        cbf_db,
        sample_nd_db: sample_nd.db,
        ensemble_nd_db: scenario.ensemble_nd().map_err(|e| e.to_string())?.db,
        u1: req.u1,
    };
    serde_json::to_string(&response).map_err(|e| e.to_string())
}

/// Model/ensemble notch depth vs snapshot count, with optional Monte
/// Carlo markers. JSON in, JSON out.
#[wasm_bindgen]
pub fn snapshot_curve(request: &str) -> Result<String, JsError> {
    snapshot_curve_impl(request).map_err(|e| JsError::new(&e))
}

/// Model/ensemble notch depth vs INR, with optional Monte Carlo markers.
#[wasm_bindgen]
pub fn inr_curve(request: &str) -> Result<String, JsError> {
    inr_curve_impl(request).map_err(|e| JsError::new(&e))
}

/// Beampatterns of one seeded DL-MVDR realization, the ensemble weights,
/// and the conventional beamformer.
#[wasm_bindgen]
pub fn beampattern_curve(request: &str) -> Result<String, JsError> {
    beampattern_impl(request).map_err(|e| JsError::new(&e))
}
