//! Parameter grids such as `d=-1:1:21;H=0.5,1,2`.
//!
//! Segments are separated by `;`. Each is `key=a:b:k` (`k` evenly spaced
//! values from `a` to `b`) or `key=v1,v2,…`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cap on the size of one axis and of the whole product.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub key: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub axes: Vec<GridAxis>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn parse_number(s: &str) -> Result<f64> {
    let t = s.trim();
    let v: f64 = t.parse().map_err(|_| bad(format!("not a number: {t:?}")))?;
    if !v.is_finite() {
        return Err(bad(format!("grid values must be finite, got {t:?}")));
    }
    Ok(v)
}

fn valid_key(k: &str) -> bool {
    let mut c = k.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

fn parse_values(body: &str) -> Result<Vec<f64>> {
    if body.contains(':') {
        let parts: Vec<&str> = body.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("range must be a:b:k, got {body:?}")));
        }
        let a = parse_number(parts[0])?;
        let b = parse_number(parts[1])?;
        let k: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| bad(format!("count must be a positive integer, got {:?}", parts[2])))?;
        if k == 0 || k > MAX_GRID_POINTS {
            return Err(bad(format!("count must lie in 1..={MAX_GRID_POINTS}, got {k}")));
        }
        if k == 1 {
            if a != b {
                return Err(bad(format!("a single-point range needs a = b, got {a}:{b}")));
            }
            return Ok(vec![a]);
        }
        let step = (b - a) / (k - 1) as f64;
        if !step.is_finite() {
            return Err(bad(format!("range {a}:{b} overflows")));
        }
        Ok((0..k).map(|i| if i + 1 == k { b } else { a + step * i as f64 }).collect())
    } else {
        let vals: Vec<f64> = body.split(',').map(parse_number).collect::<Result<_>>()?;
        if vals.len() > MAX_GRID_POINTS {
            return Err(bad("too many grid values"));
        }
        Ok(vals)
    }
}

pub fn parse_grid(spec: &str) -> Result<GridSpec> {
    let mut axes: Vec<GridAxis> = Vec::new();
    for seg in spec.split(';') {
        let seg = seg.trim();
        if seg.is_empty() {
            continue;
        }
        let (key, body) = seg
            .split_once('=')
            .ok_or_else(|| bad(format!("segment {seg:?} lacks '='")))?;
        let key = key.trim();
        if !valid_key(key) {
            return Err(bad(format!("invalid grid key {key:?}")));
        }
        if axes.iter().any(|a| a.key == key) {
            return Err(bad(format!("duplicate grid key {key:?}")));
        }
        axes.push(GridAxis { key: key.to_string(), values: parse_values(body)? });
    }
    if axes.is_empty() {
        return Err(bad("empty grid specification"));
    }
    let g = GridSpec { axes };
    if g.len_checked().is_none() {
        return Err(bad(format!("grid has more than {MAX_GRID_POINTS} points")));
    }
    Ok(g)
}

impl GridSpec {
    fn len_checked(&self) -> Option<usize> {
        self.axes
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.values.len()))
            .filter(|&n| n <= MAX_GRID_POINTS)
    }

    /// Number of points of the product grid.
    pub fn len(&self) -> usize {
        self.len_checked().unwrap_or(usize::MAX)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &str) -> Option<&[f64]> {
        self.axes.iter().find(|a| a.key == key).map(|a| a.values.as_slice())
    }

    /// Product points in row-major order, the last axis varying fastest.
    pub fn points(&self) -> Vec<Vec<(String, f64)>> {
        let mut out: Vec<Vec<(String, f64)>> = vec![Vec::new()];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push((axis.key.clone(), v));
                        q
                    })
                })
                .collect();
        }
        out
    }
}
