//! Parsing of frequency grids and wave vectors from the command line.

use anyhow::{bail, Result};
use nalgebra::Vector3;

/// Frequency grid: either a single value "W" or "START:STOP:N[:log]".
/// Grids must be strictly increasing and positive for log spacing.
pub fn parse_omega_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [single] => {
            let w: f64 = single
                .parse()
                .map_err(|_| anyhow::anyhow!("invalid omega value '{single}'"))?;
            if !w.is_finite() {
                bail!("omega must be finite, got {w}");
            }
            Ok(vec![w])
        }
        [start, stop, count] | [start, stop, count, _] => {
            let log = match parts.as_slice() {
                [_, _, _, tag] if *tag == "log" => true,
                [_, _, _, tag] => bail!("unknown grid tag '{tag}' (expected 'log')"),
                _ => false,
            };
            let a: f64 = start.parse()?;
            let b: f64 = stop.parse()?;
            let n: usize = count.parse()?;
            if n == 0 {
                bail!("grid needs at least one point");
            }
            if !a.is_finite() || !b.is_finite() {
                bail!("omega grid endpoints must be finite");
            }
            if n > 1 && b <= a {
                bail!("omega grid must be strictly increasing: start {a}, stop {b}");
            }
            if log && a <= 0.0 {
                bail!("log-spaced grid needs start > 0, got {a}");
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            let grid = (0..n)
                .map(|i| {
                    let t = i as f64 / (n - 1) as f64;
                    if log {
                        a * (b / a).powf(t)
                    } else {
                        a + (b - a) * t
                    }
                })
                .collect();
            Ok(grid)
        }
        _ => bail!("omega grid must be 'W' or 'START:STOP:N[:log]', got '{spec}'"),
    }
}

/// Wave vector "X,Y,Z".
pub fn parse_k(spec: &str) -> Result<Vector3<f64>> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        bail!("k must be 'X,Y,Z', got '{spec}'");
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("invalid k component '{p}'"))?;
    }
    Ok(Vector3::new(v[0], v[1], v[2]))
}
