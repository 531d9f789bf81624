//! `--grid name=start:stop:count[:log]` axes for `sweep`.

use std::str::FromStr;

/// Parameters a sweep may vary.
pub const GRID_NAMES: [&str; 7] = ["h", "eps", "alpha", "beta_s", "beta_p", "lambda", "beta_eff"];

#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub name: String,
    pub values: Vec<f64>,
}

impl FromStr for GridAxis {
    type Err = String;

    fn from_str(spec: &str) -> Result<Self, String> {
        let (name, range) = spec
            .split_once('=')
            .ok_or_else(|| format!("grid `{spec}`: expected name=start:stop:count[:log]"))?;
        let name = name.trim().replace('-', "_");
        if !GRID_NAMES.contains(&name.as_str()) {
            return Err(format!(
                "grid `{spec}`: unknown parameter `{name}` (one of {})",
                GRID_NAMES.join(", ")
            ));
        }
        let parts: Vec<&str> = range.split(':').collect();
        let log = match parts.len() {
            3 => false,
            4 if parts[3] == "log" => true,
            4 => return Err(format!("grid `{spec}`: fourth field must be `log`")),
            _ => return Err(format!("grid `{spec}`: expected start:stop:count[:log]")),
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| format!("grid `{spec}`: `{s}`: {e}"))
        };
        let start = num(parts[0])?;
        let stop = num(parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|e| format!("grid `{spec}`: count `{}`: {e}", parts[2]))?;
        if count == 0 {
            return Err(format!("grid `{spec}`: count must be at least 1"));
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err(format!("grid `{spec}`: limits must be finite"));
        }
        if log && !(start > 0.0 && stop > 0.0) {
            return Err(format!("grid `{spec}`: log spacing needs positive limits"));
        }
        Ok(GridAxis {
            name,
            values: spaced(start, stop, count, log),
        })
    }
}

fn spaced(start: f64, stop: f64, count: usize, log: bool) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == 0 {
                return start;
            }
            if i == count - 1 {
                return stop;
            }
            let s = i as f64 / last;
            if log {
                (start.ln() + s * (stop.ln() - start.ln())).exp()
            } else {
                start + s * (stop - start)
            }
        })
        .collect()
}

/// Cartesian product in row-major order: the first axis varies slowest.
pub fn cartesian(axes: &[GridAxis]) -> Vec<Vec<f64>> {
    let mut points = vec![Vec::new()];
    for axis in axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    points
}
