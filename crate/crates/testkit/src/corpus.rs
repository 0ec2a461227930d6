//! Fixtures and seeded random inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use persistor_core::algebra::MuTable;
use persistor_core::complex::{build_complex, FilteredComplex};
use persistor_core::level::{check_generic, PLMap};
use persistor_core::rips::{distance_matrix, epsilon_schedule, rips_filtration, scale_points, PointCloud, ScaleConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Boundary of the tetrahedron with `f(x_k) = k`.
pub fn tetrahedron_surface() -> PLMap {
    PLMap::canonical(build_complex([[1u32, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap()).unwrap()
}

/// Six vertices, nine edges and the triangle 235, with `f(x_k) = k`.
pub fn six_vertex_example() -> PLMap {
    let k = build_complex([&[1u32, 2][..], &[1, 3], &[2, 4], &[3, 6], &[4, 5], &[5, 6], &[2, 3, 5]]).unwrap();
    PLMap::canonical(k).unwrap()
}

pub fn single_edge() -> PLMap {
    PLMap::canonical(build_complex([[1u32, 2]]).unwrap()).unwrap()
}

/// Uniform points in the unit square.
pub fn random_cloud(rng: &mut impl Rng, n: usize) -> PointCloud {
    let pts: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()]).collect();
    PointCloud::new(&pts).unwrap()
}

/// One Rips test case.
#[derive(Clone, Debug)]
pub struct RipsCase {
    pub cloud: PointCloud,
    pub m: usize,
    pub step_cap: usize,
    pub filtration: FilteredComplex,
}

pub fn rips_case(cloud: PointCloud, m: usize, step_cap: usize) -> RipsCase {
    let cfg = ScaleConfig::default();
    let (scaled, _) = scale_points(&cloud, &cfg).unwrap();
    let d = distance_matrix(&scaled).unwrap();
    let (sched, p, _) = epsilon_schedule(&d, step_cap, &cfg);
    let filtration = rips_filtration(&d, &sched, m, p).unwrap();
    RipsCase { cloud, m, step_cap, filtration }
}

/// `count` filtrations of at most `max_points` planar points, `m ≤ max_m`.
pub fn rips_corpus(seed: u64, count: usize, max_points: usize, max_m: usize) -> Vec<RipsCase> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(2..=max_points);
            let m = r.gen_range(1..=max_m);
            let cap = r.gen_range(1..=50);
            rips_case(random_cloud(&mut r, n), m, cap)
        })
        .collect()
}

/// A random complex on `1..=n` built from a few random simplices of dimension
/// at most `max_dim`, with distinct random vertex values.
pub fn random_pl_map(rng: &mut impl Rng, max_vertices: usize, max_dim: usize) -> PLMap {
    let n = rng.gen_range(1..=max_vertices);
    let mut simplices: Vec<Vec<u32>> = (1..=n as u32).map(|v| vec![v]).collect();
    let verts: Vec<u32> = (1..=n as u32).collect();
    for _ in 0..rng.gen_range(0..=2 * n) {
        let d = rng.gen_range(1..=max_dim).min(n - 1);
        if d == 0 {
            continue;
        }
        let mut s: Vec<u32> = verts.choose_multiple(rng, d + 1).copied().collect();
        s.sort_unstable();
        simplices.push(s);
    }
    let k = build_complex(&simplices).unwrap();
    let mut values: Vec<f64> = (0..n).map(|i| i as f64 + rng.gen::<f64>() * 0.5).collect();
    values.shuffle(rng);
    let pairs: Vec<(u32, f64)> = verts.iter().copied().zip(values).collect();
    check_generic(&k, &pairs).unwrap()
}

pub fn pl_corpus(seed: u64, count: usize, max_vertices: usize, max_dim: usize) -> Vec<PLMap> {
    let mut r = rng(seed);
    (0..count).map(|_| random_pl_map(&mut r, max_vertices, max_dim)).collect()
}

/// Nonnegative `μ` with entries below `max`, about a third of them nonzero.
pub fn random_mu(rng: &mut impl Rng, dims: usize, steps: usize, max: usize) -> MuTable {
    let mut mu = MuTable::zeros(dims, steps);
    for r in 0..dims {
        for s in 0..=steps {
            for t in s..=steps {
                if rng.gen_ratio(1, 3) {
                    mu.set(r, s, Some(t), rng.gen_range(1..max.max(2)));
                }
            }
            if rng.gen_ratio(1, 3) {
                mu.set(r, s, None, rng.gen_range(1..max.max(2)));
            }
        }
    }
    mu
}
