//! CSV/JSON rendering with fixed six-significant-digit numeric formatting.

use dlnotch::{NotchDepthCurve, SweepAxis};

/// Format with six significant digits, positional where compact and
/// exponent notation otherwise (printf %.6g behavior, minus trailing
/// zeros).
pub fn sig6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // exponent of the value after rounding to 6 significant digits
    let rounded: f64 = format!("{x:.5e}").parse().unwrap();
    let exp = rounded.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_fraction(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, exponent) = s.split_once('e').unwrap();
        format!("{}e{}", trim_fraction(mantissa.to_string()), exponent)
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    // avoid the distinct "-0" spelling
    if s == "-0" {
        s.truncate(0);
        s.push('0');
    }
    s
}

/// CSV with one row per axis point. Monte Carlo columns are left empty
/// for model-only curves.
pub fn curve_to_csv(curve: &NotchDepthCurve) -> String {
    let axis_name = match curve.axis {
        SweepAxis::Snapshots => "L",
        SweepAxis::Inr => "inr_db",
    };
    let mut out = format!("{axis_name},mc_mean_db,mc_stderr_db,model_db,ensemble_db\n");
    let has_mc = !curve.mc_mean_db.is_empty();
    for i in 0..curve.axis_values.len() {
        let (mc, se) = if has_mc {
            (sig6(curve.mc_mean_db[i]), sig6(curve.mc_stderr_db[i]))
        } else {
            (String::new(), String::new())
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sig6(curve.axis_values[i]),
            mc,
            se,
            sig6(curve.model_db[i]),
            sig6(curve.ensemble_db[i]),
        ));
    }
    out
}

pub fn curve_to_json(curve: &NotchDepthCurve) -> String {
    let mut s = serde_json::to_string_pretty(curve).expect("curve serializes");
    s.push('\n');
    s
}
