//! Time grids for tabulation and bound verification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points per half of the default verification grid.
const HALF: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Geometric,
    Composite,
}

impl std::str::FromStr for Spacing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "geometric" => Ok(Spacing::Geometric),
            "composite" => Ok(Spacing::Composite),
            other => Err(Error::Config(format!("unknown spacing '{other}'"))),
        }
    }
}

/// `count` times on `[start, end]`.
///
/// * `linear`: evenly spaced, both ends included.
/// * `geometric`: log-spaced; with `start = 0` the first point is 0 and the rest
///   run from `end·1e−4` to `end`.
/// * `composite`: half linear on `[start, start + (end − start)/10]`, half geometric
///   up to `end`, merged and deduplicated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn build(&self) -> Result<Vec<f64>> {
        let GridSpec {
            start,
            end,
            count,
            spacing,
        } = *self;
        if count == 0 {
            return Err(Error::EmptyGrid);
        }
        if !(start.is_finite() && end.is_finite()) || start < 0.0 || end < start {
            return Err(Error::InvalidGrid(format!(
                "need 0 <= start <= end, got [{start}, {end}]"
            )));
        }
        if count == 1 {
            return Ok(vec![start]);
        }
        let pts = match spacing {
            Spacing::Linear => linspace(start, end, count),
            Spacing::Geometric => geometric_from(start, end, count),
            Spacing::Composite => {
                let n_lin = count / 2;
                let mut pts = linspace(start, start + (end - start) / 10.0, n_lin.max(1));
                pts.extend(geometric_from(start, end, count - n_lin));
                dedup_sorted(pts)
            }
        };
        Ok(pts)
    }
}

fn geometric_from(start: f64, end: f64, count: usize) -> Vec<f64> {
    if start > 0.0 {
        geomspace(start, end, count)
    } else if end == 0.0 {
        vec![0.0; 1]
    } else {
        let mut pts = vec![0.0];
        pts.extend(geomspace(end * 1e-4, end, count - 1));
        pts
    }
}

pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![start],
        _ => {
            let step = (end - start) / (count - 1) as f64;
            let mut v: Vec<f64> = (0..count).map(|i| start + step * i as f64).collect();
            v[count - 1] = end;
            v
        }
    }
}

pub fn geomspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![start],
        _ => {
            let (ls, le) = (start.ln(), end.ln());
            let step = (le - ls) / (count - 1) as f64;
            let mut v: Vec<f64> = (0..count).map(|i| (ls + step * i as f64).exp()).collect();
            v[0] = start;
            v[count - 1] = end;
            v
        }
    }
}

fn dedup_sorted(mut pts: Vec<f64>) -> Vec<f64> {
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// The 60-point verification grid: 30 linear points on `[0, 2/slow_rate]`
/// merged with 30 geometric points from `0.01/fast_rate` to `20/slow_rate`.
///
/// The geometric half resolves the short transient on the fast scale, the
/// linear half the hump on the slow scale, and the far end the exponential tail.
pub fn default_grid(slow_rate: f64, fast_rate: f64) -> Vec<f64> {
    let mut pts = linspace(0.0, 2.0 / slow_rate, HALF);
    pts.extend(geomspace(0.01 / fast_rate, 20.0 / slow_rate, HALF));
    dedup_sorted(pts)
}

/// Checks that a grid is nonempty, finite, sorted and non-negative.
pub fn validate(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidGrid("times must be finite and non-negative".into()));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidGrid("times must be sorted".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let g = default_grid(1.0, 4.0);
        assert_eq!(g.len(), 60);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 20.0);
        assert!(g.contains(&2.0));
        validate(&g).unwrap();
    }

    #[test]
    fn spec_builds() {
        let lin = GridSpec { start: 0.0, end: 1.0, count: 3, spacing: Spacing::Linear };
        assert_eq!(lin.build().unwrap(), vec![0.0, 0.5, 1.0]);
        let geo = GridSpec { start: 0.1, end: 10.0, count: 3, spacing: Spacing::Geometric };
        let g = geo.build().unwrap();
        assert_eq!(g[0], 0.1);
        assert!((g[1] - 1.0).abs() < 1e-15);
        let geo0 = GridSpec { start: 0.0, end: 10.0, count: 4, spacing: Spacing::Geometric };
        assert_eq!(geo0.build().unwrap()[0], 0.0);
        let comp = GridSpec { start: 0.0, end: 10.0, count: 10, spacing: Spacing::Composite };
        let c = comp.build().unwrap();
        validate(&c).unwrap();
        assert_eq!(*c.last().unwrap(), 10.0);
    }

    #[test]
    fn invalid_grids() {
        assert_eq!(validate(&[]), Err(Error::EmptyGrid));
        assert!(validate(&[1.0, 0.5]).is_err());
        assert!(validate(&[-1.0]).is_err());
        let bad = GridSpec { start: 2.0, end: 1.0, count: 3, spacing: Spacing::Linear };
        assert!(bad.build().is_err());
        let empty = GridSpec { start: 0.0, end: 1.0, count: 0, spacing: Spacing::Linear };
        assert_eq!(empty.build(), Err(Error::EmptyGrid));
    }
}
