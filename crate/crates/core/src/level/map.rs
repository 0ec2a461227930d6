use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::complex::{Level, SimplicialComplex};
use crate::error::{Error, Result};

/// A generic PL map, relabeled so that vertex `k` carries the `k`-th smallest value.
#[derive(Clone, Debug, PartialEq)]
pub struct PLMap {
    complex: SimplicialComplex,
    values: Vec<f64>,
    ids: Vec<u32>,
}

impl PLMap {
    /// The map `f(x_k) = k` on a complex whose vertices are `1..=N`.
    pub fn canonical(complex: SimplicialComplex) -> Result<PLMap> {
        let n = complex.vertex_count();
        for (k, v) in complex.simplices(0).iter().enumerate() {
            if v.first() as usize != k + 1 {
                return Err(Error::Shape(format!("vertex {} where {} was expected", v.first(), k + 1)));
            }
        }
        let ids: Vec<u32> = (1..=n as u32).collect();
        let values = ids.iter().map(|&k| f64::from(k)).collect();
        Ok(PLMap { complex, values, ids })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Number of vertices, which is also the number of critical values.
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `t_1 < … < t_N`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Id of vertex `k` in the input.
    pub fn original_id(&self, k: u32) -> u32 {
        self.ids[k as usize - 1]
    }

    pub fn top_dim(&self) -> usize {
        self.complex.dim().unwrap_or(0)
    }

    pub fn critical_levels(&self) -> impl Iterator<Item = Level> {
        (1..=self.n() as u32).map(Level::at_vertex)
    }

    /// The evaluation grid: critical values, midpoints and the two empty
    /// sentinel levels below `t_1` and above `t_N`.
    pub fn grid(&self) -> impl Iterator<Item = Level> {
        (0..=2 * self.n() as u32 + 2).map(Level)
    }

    pub fn top_level(&self) -> Level {
        Level(2 * self.n() as u32 + 2)
    }

    /// Real value of a grid level: `t_k`, a midpoint, or `t_1 - 1` / `t_N + 1`.
    pub fn value_of(&self, c: Level) -> f64 {
        let n = self.n() as u32;
        let t = |k: u32| -> f64 {
            if k == 0 {
                self.values[0] - 1.0
            } else if k > n {
                self.values[n as usize - 1] + 1.0
            } else {
                self.values[k as usize - 1]
            }
        };
        let k = c.0 / 2;
        if c.is_critical() {
            t(k)
        } else {
            (t(k) + t(k + 1)) / 2.0
        }
    }
}

/// Relabels vertices by increasing value; equal values are rejected.
pub fn check_generic(complex: &SimplicialComplex, values: &[(u32, f64)]) -> Result<PLMap> {
    let mut by_id: BTreeMap<u32, f64> = BTreeMap::new();
    for &(v, x) in values {
        if !x.is_finite() {
            return Err(Error::NonFinite(v as usize));
        }
        if by_id.insert(v, x).is_some() {
            return Err(Error::Shape(format!("vertex {v} has two values")));
        }
    }
    let mut pts: Vec<(f64, u32)> = Vec::with_capacity(complex.vertex_count());
    for s in complex.simplices(0) {
        let v = s.first();
        let x = by_id.remove(&v).ok_or(Error::MissingValue(v))?;
        pts.push((x, v));
    }
    if let Some(&v) = by_id.keys().next() {
        return Err(Error::Shape(format!("vertex {v} is not in the complex")));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    for w in pts.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::NonGeneric(w[0].1, w[1].1, w[0].0));
        }
    }
    let rank: BTreeMap<u32, u32> = pts.iter().enumerate().map(|(k, &(_, v))| (v, k as u32 + 1)).collect();
    let complex = SimplicialComplex::from_closed(complex.cells().map(|s| s.relabel(|v| rank[&v])).collect());
    Ok(PLMap { complex, values: pts.iter().map(|p| p.0).collect(), ids: pts.iter().map(|p| p.1).collect() })
}

/// Adds `k·eps·scale` to the value of the `k`-th vertex by id, where `scale`
/// is the spread of the values (or 1).
pub fn perturb(values: &[(u32, f64)], eps: f64) -> Vec<(u32, f64)> {
    let lo = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let hi = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let scale = if hi > lo { hi - lo } else { 1.0 };
    let mut out = values.to_vec();
    out.sort_by_key(|v| v.0);
    for (k, v) in out.iter_mut().enumerate() {
        v.1 += k as f64 * eps * scale;
    }
    out
}
