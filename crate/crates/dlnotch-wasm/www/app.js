// Plotting and control wiring for the notch-depth demo. Vanilla JS: the
// wasm module returns JSON curves, this file draws them on canvases.

import init, { snapshot_curve, inr_curve, beampattern_curve } from "./pkg/dlnotch_wasm.js";

const $ = (id) => document.getElementById(id);
const status = $("status");

const COLORS = {
  model: "#5ab4f0",
  ensemble: "#9aa7b4",
  mc: "#f2b96b",
  cbf: "#7fd0a0",
  sample: "#5ab4f0",
  breakpoint: "#b07ccc",
};

// ---- canvas plotting -------------------------------------------------

function makePlot(canvas, opts) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height;
  const m = { l: 64, r: 14, t: 12, b: 42 };
  const xmap = opts.logX
    ? (x) => m.l + ((Math.log10(x) - Math.log10(opts.x0)) / (Math.log10(opts.x1) - Math.log10(opts.x0))) * (W - m.l - m.r)
    : (x) => m.l + ((x - opts.x0) / (opts.x1 - opts.x0)) * (W - m.l - m.r);
  const ymap = (y) => m.t + ((opts.y1 - y) / (opts.y1 - opts.y0)) * (H - m.t - m.b);

  ctx.clearRect(0, 0, W, H);
  ctx.font = "20px system-ui";
  ctx.fillStyle = "#8b98a5";
  ctx.strokeStyle = "#2a323c";
  ctx.lineWidth = 1;

  // y grid: ticks every `ystep` dB
  for (let y = Math.ceil(opts.y0 / opts.ystep) * opts.ystep; y <= opts.y1; y += opts.ystep) {
    ctx.beginPath();
    ctx.moveTo(m.l, ymap(y));
    ctx.lineTo(W - m.r, ymap(y));
    ctx.stroke();
    ctx.textAlign = "right";
    ctx.fillText(y.toFixed(0), m.l - 6, ymap(y) + 6);
  }
  // x grid
  const xticks = opts.logX ? logTicks(opts.x0, opts.x1) : linTicks(opts.x0, opts.x1);
  for (const x of xticks) {
    ctx.beginPath();
    ctx.moveTo(xmap(x), m.t);
    ctx.lineTo(xmap(x), H - m.b);
    ctx.stroke();
    ctx.textAlign = "center";
    ctx.fillText(formatTick(x), xmap(x), H - m.b + 24);
  }
  ctx.textAlign = "center";
  ctx.fillText(opts.xlabel, (m.l + W - m.r) / 2, H - 6);
  ctx.save();
  ctx.translate(16, (m.t + H - m.b) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(opts.ylabel, 0, 0);
  ctx.restore();

  const clampY = (y) => Math.max(opts.y0, Math.min(opts.y1, y));
  return {
    line(xs, ys, color, dash = []) {
      ctx.save();
      ctx.strokeStyle = color;
      ctx.lineWidth = 2.5;
      ctx.setLineDash(dash);
      ctx.beginPath();
      let pen = false;
      for (let i = 0; i < xs.length; i++) {
        if (!isFinite(ys[i])) { pen = false; continue; }
        const px = xmap(xs[i]), py = ymap(clampY(ys[i]));
        if (pen) ctx.lineTo(px, py); else { ctx.moveTo(px, py); pen = true; }
      }
      ctx.stroke();
      ctx.restore();
    },
    markers(xs, ys, errs, color) {
      ctx.save();
      ctx.fillStyle = color;
      ctx.strokeStyle = color;
      ctx.lineWidth = 2;
      for (let i = 0; i < xs.length; i++) {
        if (!isFinite(ys[i])) continue;
        const px = xmap(xs[i]), py = ymap(clampY(ys[i]));
        ctx.beginPath();
        ctx.arc(px, py, 5, 0, 2 * Math.PI);
        ctx.fill();
        if (errs && errs[i] > 0) {
          ctx.beginPath();
          ctx.moveTo(px, ymap(clampY(ys[i] - 2 * errs[i])));
          ctx.lineTo(px, ymap(clampY(ys[i] + 2 * errs[i])));
          ctx.stroke();
        }
      }
      ctx.restore();
    },
    vline(x, color, label) {
      if (!(x > opts.x0 && x < opts.x1)) return;
      ctx.save();
      ctx.strokeStyle = color;
      ctx.lineWidth = 1.5;
      ctx.setLineDash([2, 5]);
      ctx.beginPath();
      ctx.moveTo(xmap(x), m.t);
      ctx.lineTo(xmap(x), H - m.b);
      ctx.stroke();
      ctx.setLineDash([]);
      ctx.fillStyle = color;
      ctx.textAlign = "left";
      ctx.fillText(label, xmap(x) + 4, m.t + 18);
      ctx.restore();
    },
    legend(entries) {
      let y = m.t + 18;
      ctx.save();
      ctx.textAlign = "left";
      for (const [label, color, dash] of entries) {
        ctx.strokeStyle = color;
        ctx.lineWidth = 3;
        ctx.setLineDash(dash || []);
        ctx.beginPath();
        ctx.moveTo(m.l + 12, y - 6);
        ctx.lineTo(m.l + 44, y - 6);
        ctx.stroke();
        ctx.fillStyle = "#dce3ea";
        ctx.fillText(label, m.l + 52, y);
        y += 22;
      }
      ctx.restore();
    },
  };
}

function logTicks(x0, x1) {
  const out = [];
  for (let e = Math.ceil(Math.log10(x0)); Math.pow(10, e) <= x1 * 1.0001; e++) {
    out.push(Math.pow(10, e));
  }
  return out;
}

function linTicks(x0, x1) {
  const span = x1 - x0;
  const step = span > 120 ? 20 : span > 60 ? 10 : span > 24 ? 5 : span >= 2 ? Math.ceil(span / 10) : 0.25;
  const out = [];
  for (let x = Math.ceil(x0 / step) * step; x <= x1 + 1e-9; x += step) out.push(x);
  return out;
}

function formatTick(x) {
  if (x >= 10000) return `1e${Math.round(Math.log10(x))}`;
  return `${Math.round(x * 100) / 100}`;
}

function yRange(arrays, floor = -140) {
  let lo = Infinity, hi = -Infinity;
  for (const a of arrays) {
    for (const v of a) {
      if (!isFinite(v) || v < floor) continue;
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  lo = Math.floor((lo - 4) / 10) * 10;
  hi = Math.ceil((hi + 4) / 10) * 10;
  return { y0: Math.max(lo, floor), y1: hi, ystep: (hi - lo) > 80 ? 20 : 10 };
}

// ---- shared parameter state ------------------------------------------

function params() {
  return {
    n: Number($("n").value),
    u1: Number($("u1").value),
    delta: Math.pow(10, Number($("delta").value)),
    trials: Number($("trials").value),
    seed: Number($("seed").value),
  };
}

function bindOutput(id, outId, fmt) {
  const el = $(id);
  const out = $(outId);
  const update = () => { out.textContent = fmt(Number(el.value)); };
  el.addEventListener("input", () => { update(); scheduleRedraw(); });
  update();
}

// ---- panels -----------------------------------------------------------

function drawSnapshots() {
  const p = params();
  const req = {
    n: p.n, u1: p.u1, delta: p.delta,
    inr_db: Number($("snap-inr").value),
    l_min: 10, l_max: 3000,
    mc_trials: p.trials, mc_points: 7, seed: p.seed,
  };
  const res = JSON.parse(snapshot_curve(JSON.stringify(req)));
  const r = yRange([res.model_db, res.ensemble_db, res.mc_mean_db, [-10]]);
  const plot = makePlot($("snap-plot"), {
    logX: true, x0: req.l_min, x1: req.l_max,
    ...r, xlabel: "snapshots L", ylabel: "notch depth (dB)",
  });
  plot.line(res.axis, res.ensemble_db, COLORS.ensemble, [8, 6]);
  plot.line(res.axis, res.model_db, COLORS.model);
  plot.markers(res.mc_axis, res.mc_mean_db, res.mc_stderr_db, COLORS.mc);
  plot.vline(res.breakpoints.l2, COLORS.breakpoint, "L2");
  plot.vline(res.breakpoints.l3, COLORS.breakpoint, "L3");
  plot.legend([
    ["mean-notch model", COLORS.model],
    ["ensemble floor", COLORS.ensemble, [8, 6]],
    ["monte carlo (±2 se)", COLORS.mc],
  ]);
  $("snap-warns").textContent = res.warnings.join("; ");
}

function drawInr() {
  const p = params();
  const l = Math.round(Math.pow(10, Number($("inr-l").value)));
  const req = {
    n: p.n, u1: p.u1, delta: p.delta, l,
    inr_min_db: -20, inr_max_db: 40,
    mc_trials: p.trials, mc_points: 7, seed: p.seed,
  };
  const res = JSON.parse(inr_curve(JSON.stringify(req)));
  const mcAxisDb = res.mc_axis; // already dB
  const r = yRange([res.model_db, res.ensemble_db, res.mc_mean_db, [-10]]);
  const plot = makePlot($("inr-plot"), {
    logX: false, x0: req.inr_min_db, x1: req.inr_max_db,
    ...r, xlabel: "INR (dB)", ylabel: "notch depth (dB)",
  });
  plot.line(res.axis, res.ensemble_db, COLORS.ensemble, [8, 6]);
  plot.line(res.axis, res.model_db, COLORS.model);
  plot.markers(mcAxisDb, res.mc_mean_db, res.mc_stderr_db, COLORS.mc);
  plot.vline(res.breakpoints.inr1_db, COLORS.breakpoint, "INR1");
  plot.vline(res.breakpoints.inr2_db, COLORS.breakpoint, "INR2");
  plot.legend([
    ["mean-notch model", COLORS.model],
    ["ensemble", COLORS.ensemble, [8, 6]],
    ["monte carlo (±2 se)", COLORS.mc],
  ]);
  $("inr-warns").textContent = res.warnings.join("; ");
}

let bpSeedBump = 0;

function drawBeampattern() {
  const p = params();
  const req = {
    n: p.n, u1: p.u1, delta: p.delta,
    inr_db: Number($("bp-inr").value),
    l: Math.round(Math.pow(10, Number($("bp-l").value))),
    seed: p.seed + bpSeedBump,
    points: 1201,
  };
  const res = JSON.parse(beampattern_curve(JSON.stringify(req)));
  const r = yRange([res.sample_db, res.ensemble_db, res.cbf_db], -110);
  const plot = makePlot($("bp-plot"), {
    logX: false, x0: -0.25, x1: 0.45,
    y0: r.y0, y1: 5, ystep: r.ystep,
    xlabel: "direction cosine u", ylabel: "beampattern (dB)",
  });
  plot.line(res.u, res.cbf_db, COLORS.cbf, [3, 4]);
  plot.line(res.u, res.ensemble_db, COLORS.ensemble, [8, 6]);
  plot.line(res.u, res.sample_db, COLORS.sample);
  plot.vline(res.u1, COLORS.mc, "u1");
  plot.legend([
    [`sample DL-MVDR (ND ${res.sample_nd_db.toFixed(1)} dB)`, COLORS.sample],
    [`ensemble (ND ${res.ensemble_nd_db.toFixed(1)} dB)`, COLORS.ensemble, [8, 6]],
    ["conventional", COLORS.cbf, [3, 4]],
  ]);
  $("bp-warns").textContent = "";
}

// ---- wiring -----------------------------------------------------------

let pending = null;
function scheduleRedraw() {
  if (pending) clearTimeout(pending);
  pending = setTimeout(redraw, 120);
}

function redraw() {
  pending = null;
  try {
    status.textContent = "";
    drawSnapshots();
    drawInr();
    drawBeampattern();
  } catch (err) {
    status.textContent = `error: ${err.message ?? err}`;
  }
}

async function main() {
  await init();
  bindOutput("n", "n-out", (v) => v.toFixed(0));
  bindOutput("u1", "u1-out", (v) => v.toFixed(3));
  bindOutput("delta", "delta-out", (v) => Math.pow(10, v).toFixed(2));
  bindOutput("trials", "trials-out", (v) => v.toFixed(0));
  bindOutput("snap-inr", "snap-inr-out", (v) => v.toFixed(0));
  bindOutput("inr-l", "inr-l-out", (v) => Math.round(Math.pow(10, v)).toString());
  bindOutput("bp-inr", "bp-inr-out", (v) => v.toFixed(0));
  bindOutput("bp-l", "bp-l-out", (v) => Math.round(Math.pow(10, v)).toString());
  $("seed").addEventListener("input", scheduleRedraw);
  $("rerun").addEventListener("click", redraw);
  $("bp-redraw").addEventListener("click", () => { bpSeedBump += 1; drawBeampattern(); });
  redraw();
}

main().catch((err) => {
  status.textContent = `failed to load wasm module: ${err}`;
});
