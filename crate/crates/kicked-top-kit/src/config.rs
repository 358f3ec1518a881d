//! Key-value sweep configuration: `key = value` lines with `#` comments.
//!
//! Axes accept either comma lists (`0.1,0.2,0.3`) or `min:max:count`
//! ranges; step ranges are `lo:hi` or a single upper bound. Command-line
//! overrides are applied after the file, so flags win.

use std::f64::consts::PI;

use crate::sweep::{SweepGrid, TaskKind};
use crate::{Error, Result};

/// A sweep grid plus the worker count that should run it.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub grid: SweepGrid,
    pub workers: usize,
}

/// Split config text into ordered (key, value) pairs.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

/// Parse a float axis: comma list or `min:max:count`.
pub fn parse_f64_axis(s: &str) -> Result<Vec<f64>> {
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidAxis(format!("`{s}`: want min:max:count")));
        }
        let min: f64 = parse_num(parts[0])?;
        let max: f64 = parse_num(parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidAxis(format!("`{s}`: bad count")))?;
        if count == 0 {
            return Err(Error::InvalidAxis(format!("`{s}`: count must be positive")));
        }
        if count == 1 {
            return Ok(vec![min]);
        }
        let step = (max - min) / (count - 1) as f64;
        return Ok((0..count).map(|k| min + step * k as f64).collect());
    }
    s.split(',').map(parse_num).collect()
}

// Bare float with an optional `pi` suffix so configs can say `1.5pi`.
fn parse_num(s: &str) -> Result<f64> {
    let t = s.trim();
    if let Some(head) = t.strip_suffix("pi") {
        let factor = if head.is_empty() { 1.0 } else { parse_num(head)? };
        return Ok(factor * PI);
    }
    t.parse()
        .map_err(|_| Error::InvalidAxis(format!("`{s}` is not a number")))
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidAxis(format!("`{s}` is not a non-negative integer")))
}

/// Parse a step range `lo:hi`, or a single upper bound.
pub fn parse_steps(s: &str, default_lo: u64) -> Result<(u64, u64)> {
    if let Some((lo, hi)) = s.split_once(':') {
        Ok((parse_u64(lo)?, parse_u64(hi)?))
    } else {
        Ok((default_lo, parse_u64(s)?))
    }
}

/// Apply one key to the spec.
pub fn apply(spec: &mut SweepSpec, key: &str, value: &str) -> Result<()> {
    let grid = &mut spec.grid;
    match key {
        "task" => grid.task = TaskKind::parse(value)?,
        "j2" => {
            grid.j2 = value
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidAxis(format!("j2 `{v}` is not an integer")))
                })
                .collect::<Result<_>>()?;
            if grid.j2.iter().any(|&j2| j2 < 1) {
                return Err(Error::InvalidAxis("j2 must be >= 1".into()));
            }
        }
        "kappa0" => grid.kappa0 = parse_f64_axis(value)?,
        "steps" | "n" => {
            let default_lo = match grid.task {
                TaskKind::Otoc | TaskKind::Gauss | TaskKind::ClassicalLyapunov => 1,
                _ => 0,
            };
            grid.steps = parse_steps(value, default_lo)?;
        }
        "delta" => grid.delta = parse_f64_axis(value)?,
        "theta0" => grid.theta0 = parse_f64_axis(value)?,
        "phi0" => grid.phi0 = parse_f64_axis(value)?,
        "kick_angle" | "kick-angle" => grid.kick_angle = parse_num(value)?,
        "seed" => grid.seed = parse_u64(value)?,
        "samples" => grid.samples = parse_u64(value)?,
        "r" => grid.r = parse_u64(value)?,
        "s" => grid.s = parse_u64(value)?,
        "cap" => grid.cap = parse_u64(value)?,
        "workers" => {
            spec.workers = parse_u64(value)? as usize;
        }
        other => return Err(Error::Config(format!("unknown key `{other}`"))),
    }
    Ok(())
}

/// Build a sweep spec from optional config text plus overrides (applied
/// last). When no kappa0 axis is given the range of interest is used:
/// [0, 3pi/2] for a pure j2 = 3 grid, [0, 2pi] otherwise, 50 points.
pub fn build(config_text: Option<&str>, overrides: &[(String, String)]) -> Result<SweepSpec> {
    let file_pairs = config_text.map(parse_pairs).transpose()?.unwrap_or_default();
    let all: Vec<&(String, String)> = file_pairs.iter().chain(overrides).collect();
    // the task must be known before axis defaults make sense
    let task = all
        .iter()
        .rev()
        .find(|(k, _)| k == "task")
        .map(|(_, v)| TaskKind::parse(v))
        .transpose()?
        .unwrap_or(TaskKind::Otoc);
    let mut spec = SweepSpec { grid: SweepGrid::new(task), workers: 0 };
    let mut kappa0_given = false;
    for (key, value) in &all {
        if key == "kappa0" {
            kappa0_given = true;
        }
        apply(&mut spec, key, value)?;
    }
    if !kappa0_given && spec.grid.task != TaskKind::Gauss {
        let hi = if spec.grid.j2.iter().all(|&j| j == 3) { 1.5 * PI } else { 2.0 * PI };
        spec.grid.kappa0 = parse_f64_axis(&format!("0:{hi}:50"))?;
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_and_comments() {
        let text = "# comment\n task = otoc \n j2 = 3,4 # trailing\n\nkappa0 = 0:1:3\n";
        let pairs = parse_pairs(text).unwrap();
        assert_eq!(pairs.len(), 3);
        assert_eq!(pairs[1], ("j2".to_string(), "3,4".to_string()));
        assert!(parse_pairs("just words\n").is_err());
    }

    #[test]
    fn axis_forms() {
        assert_eq!(parse_f64_axis("1,2.5,3").unwrap(), vec![1.0, 2.5, 3.0]);
        let lin = parse_f64_axis("0:1:5").unwrap();
        assert_eq!(lin, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_f64_axis("2pi").unwrap(), vec![2.0 * PI]);
        assert_eq!(parse_f64_axis("0:1.5pi:2").unwrap(), vec![0.0, 1.5 * PI]);
        assert!(parse_f64_axis("0:1:0").is_err());
        assert!(parse_f64_axis("a,b").is_err());
        assert_eq!(parse_steps("12", 1).unwrap(), (1, 12));
        assert_eq!(parse_steps("3:9", 1).unwrap(), (3, 9));
    }

    #[test]
    fn build_with_overrides() {
        let cfg = "task = echo-avg\nj2 = 4\ndelta = 0.1\nsteps = 10\nworkers = 2\n";
        let overrides = vec![("delta".to_string(), "0.25".to_string())];
        let spec = build(Some(cfg), &overrides).unwrap();
        assert_eq!(spec.grid.task, TaskKind::EchoAvg);
        assert_eq!(spec.grid.delta, vec![0.25]);
        assert_eq!(spec.grid.steps, (0, 10));
        assert_eq!(spec.workers, 2);
        // default kappa0 axis for non-j2=3 grids tops out at 2pi
        assert_eq!(spec.grid.kappa0.len(), 50);
        assert!((spec.grid.kappa0[49] - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn default_axis_for_three_qubits() {
        let spec = build(Some("task = otoc\nj2 = 3\n"), &[]).unwrap();
        assert!((spec.grid.kappa0[49] - 1.5 * PI).abs() < 1e-15);
        assert!(matches!(build(Some("bogus = 1\n"), &[]), Err(Error::Config(_))));
    }
}
