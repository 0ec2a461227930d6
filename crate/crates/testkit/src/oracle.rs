//! Brute-force references for the persistence pipelines.

use std::collections::BTreeMap;

use persistor_core::algebra::{mu_from_beta, BetaTable, DenseMatrix, Field, Gf2, MuTable, PersistenceModule, Rational};
use persistor_core::complex::{FilteredComplex, Simplex};
use persistor_core::rips::{DistanceMatrix, EpsilonSchedule};

use crate::linalg::{kernel, solve, Dense, Echelon, SparseRow};

fn sign<F: Field>(k: usize) -> F {
    F::from_i64(if k % 2 == 0 { 1 } else { -1 })
}

/// Cells of dimension `r` in filtration order with their entry steps.
fn cells(f: &FilteredComplex, r: usize) -> (Vec<Simplex>, Vec<usize>) {
    let c = f.simplices_in_order(r);
    let steps = c.iter().map(|s| f.step_of(s).expect("cell of the complex")).collect();
    (c, steps)
}

fn boundary_column<F: Field>(s: &Simplex, rows: &BTreeMap<Simplex, usize>) -> SparseRow<F> {
    let mut col: SparseRow<F> = s.facets().iter().enumerate().map(|(k, t)| (rows[t], sign::<F>(k))).collect();
    col.sort_by_key(|x| x.0);
    col
}

/// `rank ∂` restricted to the cells entering by each step.
fn prefix_ranks<F: Field>(cols: &[Simplex], steps: &[usize], rows: &BTreeMap<Simplex, usize>, p: usize) -> Vec<usize> {
    let mut e: Echelon<F> = Echelon::new();
    let mut out = vec![0; p + 1];
    let mut k = 0;
    for (s, slot) in out.iter_mut().enumerate() {
        while k < cols.len() && steps[k] <= s {
            if cols[k].dim() > 0 {
                e.insert(boundary_column::<F>(&cols[k], rows));
            }
            k += 1;
        }
        *slot = e.rank();
    }
    out
}

/// `β_r(s, t)` by exact elimination over `F`:
/// `dim Z_r(K_s) - rank ∂_{r+1}^t + rank(∂_{r+1}^t on the r-cells outside K_s)`.
pub fn exact_beta<F: Field>(f: &FilteredComplex) -> BetaTable {
    let top = f.complex().dim().unwrap_or(0);
    let p = f.steps();
    let mut beta = BetaTable::zeros(top + 1, p);
    for r in 0..=top {
        let (lower, _) = if r > 0 { cells(f, r - 1) } else { (Vec::new(), Vec::new()) };
        let (mid, mid_steps) = cells(f, r);
        let (upper, up_steps) = cells(f, r + 1);
        let lower_idx: BTreeMap<Simplex, usize> = lower.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mid_idx: BTreeMap<Simplex, usize> = mid.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let rank_r = if r > 0 { prefix_ranks::<F>(&mid, &mid_steps, &lower_idx, p) } else { vec![0; p + 1] };
        let rank_up = prefix_ranks::<F>(&upper, &up_steps, &mid_idx, p);
        let count = |s: usize| mid_steps.iter().filter(|&&x| x <= s).count();
        // rows of ∂_{r+1}: for each r-cell, its cofaces as (column, sign)
        let mut rows: Vec<SparseRow<F>> = vec![Vec::new(); mid.len()];
        for (j, tau) in upper.iter().enumerate() {
            for (k, face) in tau.facets().iter().enumerate() {
                rows[mid_idx[face]].push((j, sign::<F>(k)));
            }
        }
        for t in 0..=p {
            let ncols = up_steps.iter().filter(|&&x| x <= t).count();
            let mut e: Echelon<F> = Echelon::new();
            let mut restricted = vec![0; t + 1];
            let mut order: Vec<usize> = (0..mid.len()).filter(|&i| mid_steps[i] <= t).collect();
            order.sort_by_key(|&i| std::cmp::Reverse(mid_steps[i]));
            let mut k = 0;
            for s in (0..=t).rev() {
                while k < order.len() && mid_steps[order[k]] > s {
                    let row: SparseRow<F> = rows[order[k]].iter().filter(|x| x.0 < ncols).cloned().collect();
                    e.insert(row);
                    k += 1;
                }
                restricted[s] = e.rank();
            }
            for s in 0..=t {
                let z = count(s) - rank_r[s];
                beta.set(r, s, Some(t), z + restricted[s] - rank_up[t]);
            }
        }
    }
    beta.close_at_last_step();
    beta
}

pub fn exact_beta_gf2(f: &FilteredComplex) -> BetaTable {
    exact_beta::<Gf2>(f)
}

pub fn exact_beta_rational(f: &FilteredComplex) -> BetaTable {
    exact_beta::<Rational>(f)
}

/// `μ` by second differences of the exact GF(2) `β`.
pub fn exact_mu_gf2(f: &FilteredComplex) -> MuTable {
    mu_from_beta(&exact_beta_gf2(f)).expect("exact ranks give nonnegative counts")
}

fn dense_boundary<F: Field>(cols: &[Simplex], rows: &BTreeMap<Simplex, usize>, nrows: usize) -> Dense<F> {
    let mut m = vec![vec![F::zero(); cols.len()]; nrows];
    for (j, s) in cols.iter().enumerate() {
        if s.dim() == 0 {
            continue;
        }
        for (i, v) in boundary_column::<F>(s, rows) {
            m[i][j] = v;
        }
    }
    m
}

/// `H_r(K_0) → H_r(K_1) → … → H_r(K_P)` with explicit matrices in chosen
/// bases of representative cycles.
pub fn homology_module<F: Field>(f: &FilteredComplex, r: usize) -> PersistenceModule<F> {
    let p = f.steps();
    let lower = if r > 0 { cells(f, r - 1).0 } else { Vec::new() };
    let (mid, mid_steps) = cells(f, r);
    let (upper, up_steps) = cells(f, r + 1);
    let lower_idx: BTreeMap<Simplex, usize> = lower.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mid_idx: BTreeMap<Simplex, usize> = mid.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let upto = |steps: &[usize], s: usize| steps.iter().filter(|&&x| x <= s).count();
    // (representatives, boundary columns), vectors of length n_r^s
    let mut spaces: Vec<(Vec<Vec<F>>, Vec<Vec<F>>)> = Vec::new();
    for s in 0..=p {
        let (nm, nu) = (upto(&mid_steps, s), upto(&up_steps, s));
        let d_r: Dense<F> = dense_boundary::<F>(&mid[..nm], &lower_idx, lower.len());
        let cycles = if r == 0 { (0..nm).map(|i| unit::<F>(nm, i)).collect() } else { kernel(&d_r, nm) };
        let d_up = dense_boundary::<F>(&upper[..nu], &mid_idx, mid.len());
        let bounds: Vec<Vec<F>> = (0..nu).map(|j| (0..nm).map(|i| d_up[i][j].clone()).collect()).collect();
        let mut e: Echelon<F> = Echelon::new();
        for b in &bounds {
            e.insert(sparse(b));
        }
        let reps: Vec<Vec<F>> = cycles.into_iter().filter(|z| e.insert(sparse(z))).collect();
        spaces.push((reps, bounds));
    }
    let dims: Vec<usize> = spaces.iter().map(|x| x.0.len()).collect();
    let mut maps = Vec::new();
    for s in 0..p {
        let (reps, _) = &spaces[s];
        let (next, bounds) = &spaces[s + 1];
        let n1 = upto(&mid_steps, s + 1);
        let mut basis: Vec<Vec<F>> = next.clone();
        basis.extend(bounds.iter().cloned());
        let mut m = DenseMatrix::zeros(next.len(), reps.len());
        for (j, h) in reps.iter().enumerate() {
            let mut v = h.clone();
            v.resize(n1, F::zero());
            let c = solve(&basis, &v).expect("a cycle of K_s is a cycle of K_(s+1)");
            for (i, x) in c.into_iter().take(next.len()).enumerate() {
                m.set(i, j, x);
            }
        }
        maps.push(m);
    }
    PersistenceModule::new(dims, maps, p).expect("finite filtration")
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

fn sparse<F: Field>(v: &[F]) -> SparseRow<F> {
    v.iter().enumerate().filter(|x| !x.1.is_zero()).map(|(k, x)| (k, x.clone())).collect()
}

/// Every vertex set of size at most `m + 1` whose pairwise distances all enter
/// by step `p`, with its entry step.
pub fn naive_rips(d: &DistanceMatrix, schedule: &EpsilonSchedule, m: usize, p: usize) -> BTreeMap<Simplex, usize> {
    let n = d.len();
    let mut out = BTreeMap::new();
    for mask in 1u64..(1u64 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if vs.len() > m + 1 {
            continue;
        }
        let mut step = 0;
        for (a, &i) in vs.iter().enumerate() {
            for &j in &vs[a + 1..] {
                step = step.max(schedule.step_of(d.get(i, j)));
            }
        }
        if step <= p {
            out.insert(Simplex::new(vs.iter().map(|&i| i as u32 + 1).collect()).expect("distinct"), step);
        }
    }
    out
}
