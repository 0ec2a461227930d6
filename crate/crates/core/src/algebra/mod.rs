//! Bar-code intervals and the β/μ/k number algebra.

mod field;
mod module;

pub use field::{Field, Gf2, Rational};
pub use module::{decompose_module, DenseMatrix, PersistenceModule};

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint<P> {
    Closed(P),
    Open(P),
    Infinite,
}

impl<P: Copy> Endpoint<P> {
    pub fn position(&self) -> Option<P> {
        match *self {
            Endpoint::Closed(p) | Endpoint::Open(p) => Some(p),
            Endpoint::Infinite => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Endpoint::Closed(_) => "closed",
            Endpoint::Open(_) => "open",
            Endpoint::Infinite => "infinite",
        }
    }
}

/// One interval of a bar code, with multiplicity.
///
/// `P` is the position type: filtration steps for sub-level bars, levels for
/// level bars.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarcodeInterval<P> {
    pub dim: usize,
    pub left: Endpoint<P>,
    pub right: Endpoint<P>,
    pub mult: usize,
}

impl<P: Copy + Ord> BarcodeInterval<P> {
    pub fn new(dim: usize, left: Endpoint<P>, right: Endpoint<P>) -> Self {
        BarcodeInterval { dim, left, right, mult: 1 }
    }

    /// `[a, b]`
    pub fn closed(dim: usize, a: P, b: P) -> Self {
        Self::new(dim, Endpoint::Closed(a), Endpoint::Closed(b))
    }

    /// `[a, ∞)`
    pub fn infinite(dim: usize, a: P) -> Self {
        Self::new(dim, Endpoint::Closed(a), Endpoint::Infinite)
    }

    pub fn with_mult(mut self, mult: usize) -> Self {
        self.mult = mult;
        self
    }

    pub fn contains(&self, x: P) -> bool {
        self.contains_range(x, x)
    }

    /// Whether the bar contains the whole of `[a, b]`.
    pub fn contains_range(&self, a: P, b: P) -> bool {
        let left = match self.left {
            Endpoint::Closed(l) => l <= a,
            Endpoint::Open(l) => l < a,
            Endpoint::Infinite => true,
        };
        let right = match self.right {
            Endpoint::Closed(r) => b <= r,
            Endpoint::Open(r) => b < r,
            Endpoint::Infinite => true,
        };
        left && right
    }

    fn sort_key(&self) -> (usize, (u8, Option<P>, u8), (u8, Option<P>, u8)) {
        let left = match self.left {
            Endpoint::Infinite => (0, None, 0),
            Endpoint::Closed(p) => (1, Some(p), 0),
            Endpoint::Open(p) => (1, Some(p), 1),
        };
        let right = match self.right {
            Endpoint::Open(p) => (0, Some(p), 0),
            Endpoint::Closed(p) => (0, Some(p), 1),
            Endpoint::Infinite => (1, None, 0),
        };
        (self.dim, left, right)
    }
}

impl<P: Copy + Ord> PartialOrd for BarcodeInterval<P> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorted by dimension, then left end, then right end.
impl<P: Copy + Ord> Ord for BarcodeInterval<P> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key()).then(self.mult.cmp(&other.mult))
    }
}

/// Merges equal intervals and sorts; zero multiplicities vanish.
pub fn normalize<P: Copy + Ord>(bars: &[BarcodeInterval<P>]) -> Vec<BarcodeInterval<P>> {
    let mut v: Vec<BarcodeInterval<P>> = bars.iter().filter(|b| b.mult > 0).copied().collect();
    v.sort_by_key(|b| b.sort_key());
    let mut out: Vec<BarcodeInterval<P>> = Vec::new();
    for b in v {
        match out.last_mut() {
            Some(last) if last.sort_key() == b.sort_key() => last.mult += b.mult,
            _ => out.push(b),
        }
    }
    out
}

/// Multiset equality with multiplicities.
pub fn barcode_multiset_equal<P: Copy + Ord>(a: &[BarcodeInterval<P>], b: &[BarcodeInterval<P>]) -> bool {
    normalize(a) == normalize(b)
}

/// Number of bars (with multiplicity) containing `[i, j]` in dimension `dim`.
pub fn beta_from_barcode<P: Copy + Ord>(bars: &[BarcodeInterval<P>], dim: usize, i: P, j: P) -> usize {
    bars.iter().filter(|b| b.dim == dim && b.contains_range(i, j)).map(|b| b.mult).sum()
}

/// `β_r(s, t)` for `0 ≤ s ≤ t ≤ P`, plus a column for `t = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTable {
    steps: usize,
    finite: Vec<Vec<Vec<usize>>>,
    infinite: Vec<Vec<usize>>,
}

impl BetaTable {
    /// All zeros for dimensions `0..dims` and steps `0..=steps`.
    pub fn zeros(dims: usize, steps: usize) -> Self {
        BetaTable {
            steps,
            finite: vec![vec![vec![0; steps + 1]; steps + 1]; dims],
            infinite: vec![vec![0; steps + 1]; dims],
        }
    }

    pub fn dims(&self) -> usize {
        self.finite.len()
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// `t = None` is ∞.
    pub fn get(&self, r: usize, s: usize, t: Option<usize>) -> usize {
        match t {
            Some(t) => {
                debug_assert!(s <= t);
                self.finite[r][s][t]
            }
            None => self.infinite[r][s],
        }
    }

    pub fn set(&mut self, r: usize, s: usize, t: Option<usize>, v: usize) {
        match t {
            Some(t) => self.finite[r][s][t] = v,
            None => self.infinite[r][s] = v,
        }
    }

    /// Fills the ∞ column with `β(s, P)`.
    pub fn close_at_last_step(&mut self) {
        for r in 0..self.dims() {
            for s in 0..=self.steps {
                self.infinite[r][s] = self.finite[r][s][self.steps];
            }
        }
    }

    /// Checks monotonicity in both arguments.
    pub fn is_monotone(&self) -> bool {
        let p = self.steps;
        (0..self.dims()).all(|r| {
            (0..=p).all(|s| {
                (s..=p).all(|t| {
                    let v = self.get(r, s, Some(t));
                    let next_t = if t < p { self.get(r, s, Some(t + 1)) } else { self.get(r, s, None) };
                    let prev_s = if s > 0 { self.get(r, s - 1, Some(t)) } else { 0 };
                    next_t <= v && prev_s <= v
                })
            })
        })
    }
}

/// `μ_r(s, t)` for `0 ≤ s ≤ t ≤ P` and `t = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    steps: usize,
    finite: Vec<Vec<Vec<usize>>>,
    infinite: Vec<Vec<usize>>,
}

impl MuTable {
    pub fn zeros(dims: usize, steps: usize) -> Self {
        MuTable {
            steps,
            finite: vec![vec![vec![0; steps + 1]; steps + 1]; dims],
            infinite: vec![vec![0; steps + 1]; dims],
        }
    }

    pub fn dims(&self) -> usize {
        self.finite.len()
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn get(&self, r: usize, s: usize, t: Option<usize>) -> usize {
        match t {
            Some(t) => self.finite[r][s][t],
            None => self.infinite[r][s],
        }
    }

    pub fn set(&mut self, r: usize, s: usize, t: Option<usize>, v: usize) {
        match t {
            Some(t) => self.finite[r][s][t] = v,
            None => self.infinite[r][s] = v,
        }
    }

    pub fn add(&mut self, r: usize, s: usize, t: Option<usize>, v: usize) {
        let cur = self.get(r, s, t);
        self.set(r, s, t, cur + v);
    }

    /// Counts step bars `[s, t]` and `[s, ∞)`; bars of other shapes are an error.
    pub fn from_barcode(bars: &[BarcodeInterval<usize>], dims: usize, steps: usize) -> Result<Self> {
        let mut m = MuTable::zeros(dims, steps);
        for b in bars {
            let bad = || Error::Inconsistent(alloc::format!("bar {b:?} is not a step interval"));
            let s = match b.left {
                Endpoint::Closed(s) => s,
                _ => return Err(bad()),
            };
            let t = match b.right {
                Endpoint::Closed(t) => Some(t),
                Endpoint::Infinite => None,
                Endpoint::Open(_) => return Err(bad()),
            };
            if b.dim >= dims || s > steps || t.is_some_and(|t| t < s || t > steps) {
                return Err(bad());
            }
            m.add(b.dim, s, t, b.mult);
        }
        Ok(m)
    }

    /// The bars `[s, t]` and `[s, ∞)` with their multiplicities, sorted.
    pub fn to_barcode(&self) -> Vec<BarcodeInterval<usize>> {
        let mut out = Vec::new();
        for r in 0..self.dims() {
            for s in 0..=self.steps {
                for t in s..=self.steps {
                    let n = self.finite[r][s][t];
                    if n > 0 {
                        out.push(BarcodeInterval::closed(r, s, t).with_mult(n));
                    }
                }
                let n = self.infinite[r][s];
                if n > 0 {
                    out.push(BarcodeInterval::infinite(r, s).with_mult(n));
                }
            }
        }
        out
    }
}

/// `β(i, j) = Σ_{l ≤ i, m ≥ j} μ(l, m)`; `j = None` is ∞.
pub fn beta_from_mu(mu: &MuTable, r: usize, i: usize, j: Option<usize>) -> usize {
    let p = mu.steps;
    let mut sum = 0;
    for l in 0..=i {
        if let Some(j) = j {
            for m in j..=p {
                sum += mu.get(r, l, Some(m));
            }
        }
        sum += mu.get(r, l, None);
    }
    sum
}

/// The whole β table of a μ table.
pub fn beta_table_from_mu(mu: &MuTable) -> BetaTable {
    let mut b = BetaTable::zeros(mu.dims(), mu.steps);
    for r in 0..mu.dims() {
        for s in 0..=mu.steps {
            for t in s..=mu.steps {
                b.set(r, s, Some(t), beta_from_mu(mu, r, s, Some(t)));
            }
            b.set(r, s, None, beta_from_mu(mu, r, s, None));
        }
    }
    b
}

/// Second differences of β with the boundary conventions `β(-1, ·) = 0` and
/// `β(s, P + 1) = β(s, ∞)`.
pub fn mu_from_beta(beta: &BetaTable) -> Result<MuTable> {
    let p = beta.steps;
    let b = |r: usize, s: isize, t: Option<usize>| -> i64 {
        if s < 0 {
            return 0;
        }
        let t = t.filter(|&t| t <= p);
        beta.get(r, s as usize, t) as i64
    };
    let mut mu = MuTable::zeros(beta.dims(), p);
    for r in 0..beta.dims() {
        for s in 0..=p {
            let si = s as isize;
            for t in s..=p {
                let v = b(r, si, Some(t)) - b(r, si - 1, Some(t)) - b(r, si, Some(t + 1)) + b(r, si - 1, Some(t + 1));
                if v < 0 {
                    return Err(Error::NumericalRank { dim: r, s, t });
                }
                mu.set(r, s, Some(t), v as usize);
            }
            let v = b(r, si, None) - b(r, si - 1, None);
            if v < 0 {
                return Err(Error::NumericalRank { dim: r, s, t: usize::MAX });
            }
            mu.set(r, s, None, v as usize);
        }
    }
    Ok(mu)
}

/// `k(i, j) = β(i, i) - β(i, j)` and `k(i) = β(i, i)` for one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelNumbers {
    pub k_pair: Vec<Vec<usize>>,
    pub k_single: Vec<usize>,
}

pub fn kernel_numbers(beta: &BetaTable, r: usize) -> KernelNumbers {
    let p = beta.steps;
    let k_single: Vec<usize> = (0..=p).map(|i| beta.get(r, i, Some(i))).collect();
    let k_pair = (0..=p)
        .map(|i| (0..=p).map(|j| if j < i { 0 } else { k_single[i] - beta.get(r, i, Some(j)) }).collect())
        .collect();
    KernelNumbers { k_pair, k_single }
}
