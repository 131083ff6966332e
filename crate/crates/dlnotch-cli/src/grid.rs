//! Sweep-grid syntax: `start:stop:logK` (K points per decade),
//! `start:stop:step` (arithmetic), or a comma list of explicit values.

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("grid specification is empty".into());
    }
    if spec.contains(',') {
        let values: Result<Vec<f64>, _> = spec
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|e| format!("bad grid value '{s}': {e}")))
            .collect();
        let values = values?;
        check_increasing(&values)?;
        return Ok(values);
    }

    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!(
            "grid '{spec}' must be start:stop:step, start:stop:logK, or a comma list"
        ));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|e| format!("bad grid start '{}': {e}", parts[0]))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|e| format!("bad grid stop '{}': {e}", parts[1]))?;
    if stop <= start {
        return Err(format!("grid stop {stop} must exceed start {start}"));
    }

    if let Some(k) = parts[2].strip_prefix("log") {
        let per_decade: u32 = k
            .parse()
            .map_err(|e| format!("bad points-per-decade '{k}': {e}"))?;
        if per_decade == 0 {
            return Err("points per decade must be at least 1".into());
        }
        if start <= 0.0 {
            return Err("logarithmic grids need a positive start".into());
        }
        let mut values = Vec::new();
        let mut i = 0u32;
        loop {
            let v = start * 10f64.powf(i as f64 / per_decade as f64);
            if v > stop * (1.0 + 1e-12) {
                break;
            }
            values.push(v);
            i += 1;
        }
        if *values.last().unwrap() < stop * (1.0 - 1e-12) {
            values.push(stop);
        }
        Ok(values)
    } else {
        let step: f64 = parts[2]
            .parse()
            .map_err(|e| format!("bad grid step '{}': {e}", parts[2]))?;
        if !(step > 0.0) {
            return Err(format!("grid step must be positive, got {step}"));
        }
        let mut values = Vec::new();
        let mut i = 0u32;
        loop {
            let v = start + step * i as f64;
            if v > stop + step * 1e-9 {
                break;
            }
            values.push(v);
            i += 1;
        }
        Ok(values)
    }
}

/// Round a grid to integer snapshot counts, deduplicating collisions.
pub fn to_snapshot_grid(values: &[f64]) -> Result<Vec<f64>, String> {
    let mut out: Vec<f64> = Vec::with_capacity(values.len());
    for &v in values {
        let r = v.round();
        if r < 1.0 {
            return Err(format!("snapshot count {v} rounds below 1"));
        }
        if out.last() != Some(&r) {
            out.push(r);
        }
    }
    check_increasing(&out)?;
    Ok(out)
}

fn check_increasing(values: &[f64]) -> Result<(), String> {
    if values.is_empty() {
        return Err("grid is empty".into());
    }
    if !values.windows(2).all(|w| w[0] < w[1]) {
        return Err("grid values must be strictly increasing".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_points_per_decade() {
        let g = parse_grid("25:1000:log10").unwrap();
        assert!((g[0] - 25.0).abs() < 1e-12);
        assert!((g[1] - 25.0 * 10f64.powf(0.1)).abs() < 1e-9);
        assert!((g.last().unwrap() - 1000.0).abs() < 1e-9);
        assert!(g.len() >= 16);
    }

    #[test]
    fn arithmetic_grid_in_db() {
        let g = parse_grid("-20:40:2").unwrap();
        assert_eq!(g.len(), 31);
        assert_eq!(g[0], -20.0);
        assert_eq!(*g.last().unwrap(), 40.0);
    }

    #[test]
    fn comma_list() {
        let g = parse_grid("25,50,100,250,1000").unwrap();
        assert_eq!(g, vec![25.0, 50.0, 100.0, 250.0, 1000.0]);
        assert!(parse_grid("25,25").is_err());
        assert!(parse_grid("50,25").is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_grid("").is_err());
        assert!(parse_grid("10:5:2").is_err());
        assert!(parse_grid("1:10").is_err());
        assert!(parse_grid("1:10:log0").is_err());
        assert!(parse_grid("1:10:0").is_err());
        assert!(parse_grid("-5:10:log10").is_err());
        assert!(parse_grid("a:10:2").is_err());
    }

    #[test]
    fn snapshot_rounding_dedupes() {
        let g = to_snapshot_grid(&parse_grid("25:1000:log10").unwrap()).unwrap();
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g[0], 25.0);
        assert!(g.iter().all(|v| v.fract() == 0.0));
        assert!(to_snapshot_grid(&[0.2]).is_err());
    }
}
