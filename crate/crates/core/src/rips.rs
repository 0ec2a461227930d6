//! Point clouds, epsilon schedules and Vietoris-Rips filtrations.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

pub use crate::complex::FilteredComplex;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Points in `ℝ^d`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(points: &[Vec<f64>]) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if points.is_empty() {
            return Err(Error::DegenerateCloud);
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::Shape(alloc::format!(
                    "point {} has {} coordinates, expected {dim}",
                    i + 1,
                    p.len()
                )));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite(i + 1));
            }
            coords.extend_from_slice(p);
        }
        Ok(PointCloud { dim, coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// 0-based.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn scaled(&self, factor: f64) -> PointCloud {
        PointCloud { dim: self.dim, coords: self.coords.iter().map(|x| x * factor).collect() }
    }
}

/// Pairwise Euclidean distances, upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    p: usize,
    upper: Vec<f64>,
}

impl DistanceMatrix {
    /// From a full symmetric matrix; the diagonal must be zero and the rest positive.
    pub fn from_full(d: &[Vec<f64>]) -> Result<Self> {
        let p = d.len();
        let mut upper = Vec::new();
        for i in 0..p {
            if d[i].len() != p || d[i][i] != 0.0 {
                return Err(Error::Shape("distance matrix must be square with zero diagonal".into()));
            }
            for j in i + 1..p {
                if d[i][j] != d[j][i] || !(d[i][j] > 0.0) || !d[i][j].is_finite() {
                    return Err(Error::DuplicatePoint(i + 1, j + 1));
                }
                upper.push(d[i][j]);
            }
        }
        Ok(DistanceMatrix { p, upper })
    }

    pub fn len(&self) -> usize {
        self.p
    }

    pub fn is_empty(&self) -> bool {
        self.p == 0
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        i * (2 * self.p - i - 1) / 2 + (j - i - 1)
    }

    /// 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            core::cmp::Ordering::Equal => 0.0,
            core::cmp::Ordering::Less => self.upper[self.offset(i, j)],
            core::cmp::Ordering::Greater => self.upper[self.offset(j, i)],
        }
    }

    pub fn diameter(&self) -> f64 {
        self.upper.iter().copied().fold(0.0, f64::max)
    }

    pub fn values(&self) -> &[f64] {
        &self.upper
    }
}

pub fn distance_matrix(pcd: &PointCloud) -> Result<DistanceMatrix> {
    let p = pcd.len();
    let mut upper = Vec::with_capacity(p * p.saturating_sub(1) / 2);
    for i in 0..p {
        for j in i + 1..p {
            let sq: f64 = pcd.point(i).iter().zip(pcd.point(j)).map(|(a, b)| (a - b) * (a - b)).sum();
            let d = libm::sqrt(sq);
            if d == 0.0 {
                return Err(Error::DuplicatePoint(i + 1, j + 1));
            }
            upper.push(d);
        }
    }
    Ok(DistanceMatrix { p, upper })
}

/// Thresholds used when merging and rescaling distances.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ScaleConfig {
    /// Required minimum gap between consecutive epsilons.
    pub min_gap: f64,
    /// Distances closer than `merge_factor · diam · f64::EPSILON` are merged.
    pub merge_factor: f64,
}

impl Default for ScaleConfig {
    fn default() -> Self {
        ScaleConfig { min_gap: 3e-4, merge_factor: 3.0 }
    }
}

fn merged_epsilons(d: &DistanceMatrix, cfg: &ScaleConfig) -> Vec<f64> {
    let tol = cfg.merge_factor * d.diameter() * f64::EPSILON;
    let mut v = d.values().to_vec();
    v.sort_by(f64::total_cmp);
    let mut eps = vec![0.0];
    for x in v {
        if x - eps[eps.len() - 1] >= tol && x > eps[eps.len() - 1] {
            eps.push(x);
        }
    }
    eps
}

/// Rescales so that consecutive merged epsilons are more than `min_gap` apart.
///
/// Returns the cloud together with the factor applied.
pub fn scale_points(pcd: &PointCloud, cfg: &ScaleConfig) -> Result<(PointCloud, f64)> {
    if pcd.len() < 2 {
        return Ok((pcd.clone(), 1.0));
    }
    let d = match distance_matrix(pcd) {
        Ok(d) => d,
        Err(Error::DuplicatePoint(..)) if (1..pcd.len()).all(|i| pcd.point(i) == pcd.point(0)) => {
            return Err(Error::DegenerateCloud)
        }
        Err(e) => return Err(e),
    };
    let eps = merged_epsilons(&d, cfg);
    let gap = eps.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if gap > cfg.min_gap {
        return Ok((pcd.clone(), 1.0));
    }
    let factor = 2.0 * cfg.min_gap / gap;
    Ok((pcd.scaled(factor), factor))
}

/// `0 = ε_0 < ε_1 < … < ε_N` and the midpoints `(ε_k + ε_{k+1}) / 2`, ending with `ε_N + 1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonSchedule {
    pub eps: Vec<f64>,
    pub midpoints: Vec<f64>,
}

impl EpsilonSchedule {
    /// `N`
    pub fn last(&self) -> usize {
        self.eps.len() - 1
    }

    /// Largest step `s` with `ε_s ≤ d`.
    pub fn step_of(&self, d: f64) -> usize {
        self.eps.partition_point(|&e| e <= d).saturating_sub(1)
    }
}

/// The schedule, `P = min(S, N)` and `ε_P`.
pub fn epsilon_schedule(d: &DistanceMatrix, step_cap: usize, cfg: &ScaleConfig) -> (EpsilonSchedule, usize, f64) {
    let eps = merged_epsilons(d, cfg);
    let mut midpoints: Vec<f64> = eps.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    midpoints.push(eps[eps.len() - 1] + 0.5);
    let n = eps.len() - 1;
    let p = step_cap.min(n);
    let ep = eps[p];
    (EpsilonSchedule { eps, midpoints }, p, ep)
}

/// Clique complex up to dimension `m`, restricted to steps `0..=P`.
pub fn rips_filtration(d: &DistanceMatrix, schedule: &EpsilonSchedule, m: usize, p: usize) -> Result<FilteredComplex> {
    if p > schedule.last() {
        return Err(Error::Shape(alloc::format!("step cap {p} beyond N = {}", schedule.last())));
    }
    let n = d.len();
    let step = |i: usize, j: usize| schedule.step_of(d.get(i, j));
    let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && step(i, j) <= p).collect()).collect();
    // (vertices, common later neighbours, entry step)
    let mut layer: Vec<(Vec<usize>, Vec<usize>, usize)> =
        (0..n).map(|i| (vec![i], (i + 1..n).filter(|&j| adj[i][j]).collect(), 0)).collect();
    let mut cells: Vec<(Simplex, usize)> = Vec::new();
    for dim in 0..=m {
        let mut next = Vec::new();
        for (vs, common, f) in &layer {
            cells.push((Simplex::new(vs.iter().map(|&v| v as u32 + 1).collect())?, *f));
            if dim == m {
                continue;
            }
            for (pos, &w) in common.iter().enumerate() {
                let f2 = vs.iter().map(|&v| step(v, w)).fold(*f, usize::max);
                let mut vs2 = vs.clone();
                vs2.push(w);
                let common2 = common[pos + 1..].iter().copied().filter(|&x| adj[w][x]).collect();
                next.push((vs2, common2, f2));
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    let set: BTreeSet<Simplex> = cells.iter().map(|c| c.0.clone()).collect();
    let complex = SimplicialComplex::from_closed(set);
    let mut f_ind = vec![0; complex.len()];
    for (s, f) in cells {
        f_ind[complex.index_of(&s).expect("listed cell")] = f;
    }
    FilteredComplex::new(complex, f_ind, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(pts: &[&[f64]]) -> PointCloud {
        PointCloud::new(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn equilateral() -> PointCloud {
        cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, libm::sqrt(3.0) / 2.0]])
    }

    #[test]
    fn pythagorean_distance() {
        let d = distance_matrix(&cloud(&[&[0.0, 0.0], &[3.0, 4.0]])).unwrap();
        assert_eq!(d.get(0, 1), 5.0);
        assert_eq!(d.get(1, 0), 5.0);
    }

    #[test]
    fn square_distances() {
        let d = distance_matrix(&cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]])).unwrap();
        let mut v = d.values().to_vec();
        v.sort_by(f64::total_cmp);
        assert_eq!(&v[..4], &[1.0; 4]);
        assert!((v[4] - libm::sqrt(2.0)).abs() < 1e-15 && (v[5] - libm::sqrt(2.0)).abs() < 1e-15);
        let (s, p, e) = epsilon_schedule(&d, usize::MAX, &ScaleConfig::default());
        assert_eq!(s.eps.len(), 3);
        assert_eq!((p, e), (2, s.eps[2]));
        assert_eq!(s.midpoints.len(), 3);
        assert_eq!(s.midpoints[2], s.eps[2] + 0.5);
    }

    #[test]
    fn duplicates_rejected() {
        let err = distance_matrix(&cloud(&[&[1.0, 2.0], &[0.0, 0.0], &[1.0, 2.0]]));
        assert_eq!(err, Err(Error::DuplicatePoint(1, 3)));
        let same = cloud(&[&[1.0], &[1.0]]);
        assert_eq!(scale_points(&same, &ScaleConfig::default()), Err(Error::DegenerateCloud));
    }

    #[test]
    fn equilateral_filtration() {
        let d = distance_matrix(&equilateral()).unwrap();
        assert!(d.values().iter().all(|&x| (x - 1.0).abs() < 1e-12));
        let (s, p, _) = epsilon_schedule(&d, 10, &ScaleConfig::default());
        assert_eq!((s.last(), p), (1, 1));
        let f = rips_filtration(&d, &s, 2, p).unwrap();
        assert_eq!(f.ordered_steps(), vec![0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(f.dimension_table(), vec![vec![3, 3], vec![0, 3], vec![0, 1]]);
    }

    #[test]
    fn zero_step_cap_keeps_vertices() {
        let d = distance_matrix(&equilateral()).unwrap();
        let (s, p, e) = epsilon_schedule(&d, 0, &ScaleConfig::default());
        assert_eq!((p, e), (0, 0.0));
        let f = rips_filtration(&d, &s, 2, p).unwrap();
        assert_eq!(f.complex().len(), 3);
    }

    #[test]
    fn collinear_points() {
        let d = distance_matrix(&cloud(&[&[0.0], &[1.0], &[2.0]])).unwrap();
        let (s, p, _) = epsilon_schedule(&d, 5, &ScaleConfig::default());
        let f = rips_filtration(&d, &s, 2, p).unwrap();
        let far = Simplex::new(vec![1, 3]).unwrap();
        let tri = Simplex::new(vec![1, 2, 3]).unwrap();
        assert_eq!(f.step_of(&far), Some(2));
        assert_eq!(f.step_of(&tri), Some(2));
    }

    #[test]
    fn nearly_equal_distances_merge() {
        let d = DistanceMatrix::from_full(&[
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 2.0 + 1e-16 * 2.0],
            vec![2.0, 2.0 + 1e-16 * 2.0, 0.0],
        ])
        .unwrap();
        let (s, _, _) = epsilon_schedule(&d, 9, &ScaleConfig::default());
        assert_eq!(s.eps, vec![0.0, 1.0, 2.0]);
        assert_eq!(s.step_of(2.0 + 2e-16), 2);
    }

    #[test]
    fn small_gap_triggers_rescale() {
        let pcd = cloud(&[&[0.0], &[1.0], &[2.00001]]);
        let (scaled, factor) = scale_points(&pcd, &ScaleConfig::default()).unwrap();
        assert!(factor >= 30.0);
        assert!((scaled.point(2)[0] - 2.00001 * factor).abs() < 1e-9);
        let wide = cloud(&[&[0.0], &[1.0], &[3.0]]);
        assert_eq!(scale_points(&wide, &ScaleConfig::default()).unwrap().1, 1.0);
    }
}
