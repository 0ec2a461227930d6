use alloc::vec;
use alloc::vec::Vec;

use super::relevant::{IGrid, RelevantNumbers};
use super::PLMap;
use crate::algebra::{BarcodeInterval, Endpoint, MuTable};
use crate::complex::{FilteredComplex, Level};
use crate::error::{Error, Result};
use crate::reduction::{barcodes_from_reduced, reduce};

/// Endpoint shape of a level bar.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BarKind {
    /// `(t_k, t_j)`
    Open,
    /// `(t_k, t_j]`
    OpenClosed,
    /// `[t_k, t_j)`
    ClosedOpen,
    /// `[t_k, t_j]`
    Closed,
}

impl BarKind {
    pub const ALL: [BarKind; 4] = [BarKind::Open, BarKind::OpenClosed, BarKind::ClosedOpen, BarKind::Closed];

    fn slot(self) -> usize {
        self as usize
    }
}

/// Counts `N_r⟨t_k, t_j⟩` of the four kinds, critical indices `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelBarcode {
    n: usize,
    dims: usize,
    counts: Vec<usize>,
}

impl LevelBarcode {
    pub fn zeros(dims: usize, n: usize) -> LevelBarcode {
        LevelBarcode { n, dims, counts: vec![0; dims * 4 * (n + 1) * (n + 1)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    fn at(&self, r: usize, kind: BarKind, k: usize, j: usize) -> usize {
        ((r * 4 + kind.slot()) * (self.n + 1) + k) * (self.n + 1) + j
    }

    pub fn get(&self, r: usize, kind: BarKind, k: usize, j: usize) -> usize {
        if r >= self.dims || k == 0 || j == 0 || k > self.n || j > self.n {
            return 0;
        }
        self.counts[self.at(r, kind, k, j)]
    }

    pub fn set(&mut self, r: usize, kind: BarKind, k: usize, j: usize, v: usize) {
        let i = self.at(r, kind, k, j);
        self.counts[i] = v;
    }

    /// All bars with positions as levels, sorted.
    pub fn bars(&self) -> Vec<BarcodeInterval<Level>> {
        let mut out = Vec::new();
        for r in 0..self.dims {
            for k in 1..=self.n {
                for j in k..=self.n {
                    for kind in BarKind::ALL {
                        let m = self.get(r, kind, k, j);
                        if m == 0 {
                            continue;
                        }
                        let (a, b) = (Level::at_vertex(k as u32), Level::at_vertex(j as u32));
                        let (l, rt) = match kind {
                            BarKind::Open => (Endpoint::Open(a), Endpoint::Open(b)),
                            BarKind::OpenClosed => (Endpoint::Open(a), Endpoint::Closed(b)),
                            BarKind::ClosedOpen => (Endpoint::Closed(a), Endpoint::Open(b)),
                            BarKind::Closed => (Endpoint::Closed(a), Endpoint::Closed(b)),
                        };
                        out.push(BarcodeInterval::new(r, l, rt).with_mult(m));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Bars containing `[s, t]`, by multiplicity.
    pub fn count_containing(&self, r: usize, s: Level, t: Level) -> usize {
        self.bars().iter().filter(|b| b.dim == r && b.contains_range(s, t)).map(|b| b.mult).sum()
    }

    /// `i_r(s, t)` recounted from the bars.
    pub fn i_grid(&self, top: Level) -> IGrid {
        let mut g = IGrid::zeros(self.dims, top);
        let bars = self.bars();
        for b in &bars {
            for s in 0..=top.0 {
                for t in s..=top.0 {
                    if b.contains_range(Level(s), Level(t)) {
                        let cur = g.get(b.dim, Level(s), Level(t));
                        g.set(b.dim, Level(s), Level(t), cur + b.mult);
                    }
                }
            }
        }
        g
    }
}

fn checked(x: i64, r: usize, k: usize, j: usize) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::NegativeCount { dim: r, left: k, right: j })
}

/// Level bars from `i_r` on the midpoint grid.
pub fn level_barcodes_from_i(grid: &IGrid, n: usize) -> Result<LevelBarcode> {
    let mut out = LevelBarcode::zeros(grid.dims(), n);
    let i = |r: usize, s: u32, t: u32| grid.get(r, Level(s), Level(t)) as i64;
    for r in 0..grid.dims() {
        for k in 1..=n as u32 {
            for j in k..=n as u32 {
                let (ku, ju) = (k as usize, j as usize);
                let (c, d) = (2 * k, 2 * j);
                let closed = i(r, c, d) - i(r, c - 1, d) - i(r, c, d + 1) + i(r, c - 1, d + 1);
                out.set(r, BarKind::Closed, ku, ju, checked(closed, r, ku, ju)?);
                if j == k {
                    continue;
                }
                let open = i(r, c + 1, d - 1) - i(r, c, d - 1) - i(r, c + 1, d) + i(r, c, d);
                let oc = i(r, c + 1, d) - i(r, c, d) - i(r, c + 1, d + 1) + i(r, c, d + 1);
                let co = i(r, c, d - 1) - i(r, c, d) - i(r, c - 1, d - 1) + i(r, c - 1, d);
                out.set(r, BarKind::Open, ku, ju, checked(open, r, ku, ju)?);
                out.set(r, BarKind::OpenClosed, ku, ju, checked(oc, r, ku, ju)?);
                out.set(r, BarKind::ClosedOpen, ku, ju, checked(co, r, ku, ju)?);
            }
        }
    }
    Ok(out)
}

struct Aux<'a> {
    rel: &'a RelevantNumbers,
    n: usize,
    r: usize,
}

impl Aux<'_> {
    fn t(k: usize) -> Level {
        Level::at_vertex(k as u32)
    }

    fn ok(&self, k: usize) -> bool {
        (1..=self.n).contains(&k)
    }

    /// `n{t_i, t_j)`
    fn n_right_open(&self, i: usize, j: usize) -> i64 {
        if !self.ok(i) || !self.ok(j) || i >= j {
            return 0;
        }
        let lp = |x: usize| if x <= i { 0 } else { self.rel.l_plus(self.r, Self::t(i), Self::t(x)) as i64 };
        lp(j) - lp(j - 1)
    }

    /// `n(t_i, t_j}`
    fn n_left_open(&self, i: usize, j: usize) -> i64 {
        if !self.ok(i) || !self.ok(j) || i >= j {
            return 0;
        }
        let lm = |x: usize| if x >= j { 0 } else { self.rel.l_minus(self.r, Self::t(j), Self::t(x)) as i64 };
        lm(i) - lm(i + 1)
    }

    /// `n{t_i, t_j}`
    fn n_both(&self, i: usize, j: usize) -> i64 {
        if !self.ok(i) || !self.ok(j) {
            return 0;
        }
        self.rel.i(self.r, Self::t(i), Self::t(j)) as i64
    }

    /// `n[t_i, t_j}`
    fn n_left_closed(&self, i: usize, j: usize) -> i64 {
        if !self.ok(i) || !self.ok(j) {
            return 0;
        }
        self.n_both(i, j) - self.n_both(i - 1, j) - self.n_left_open(i - 1, j)
    }

    /// `N(t_k, t_j)` from `e` at the critical value just above `t_k`.
    /// Adjacent values have no critical value in between; there the count is
    /// what the Betti numbers of `X_{t_k,t_{k+1}}` in one dimension up leave over.
    fn open(&self, k: usize, j: usize) -> i64 {
        if !self.ok(k) || !self.ok(j) || j <= k {
            return 0;
        }
        if j == k + 1 {
            let up = Aux { rel: self.rel, n: self.n, r: self.r + 1 };
            let (a, b) = (Self::t(k), Self::t(j));
            let slab = self.rel.slab_betti(up.r, a, b) as i64;
            return slab - self.rel.l(up.r, a) as i64 - self.rel.l(up.r, b) as i64
                + up.n_both(k, j)
                + up.n_right_open(k, j)
                + up.n_left_open(k, j);
        }
        let t = Self::t(k + 1);
        let e = |up: usize, down: usize| self.rel.e(self.r, t, Self::t(up), Self::t(down)) as i64;
        e(j, k) - e(j, k + 1) - e(j - 1, k) + e(j - 1, k + 1)
    }

    /// `N[t_i, t_j)`
    fn closed_open(&self, i: usize, j: usize) -> i64 {
        if !self.ok(i) || !self.ok(j) || i >= j {
            return 0;
        }
        self.n_right_open(i, j) - self.n_right_open(i - 1, j) - self.open(i - 1, j)
    }
}

/// Level bars from `l`, `l⁺`, `l⁻`, `e` and `i` at critical values.
pub fn level_barcodes_from_relevant(rel: &RelevantNumbers) -> Result<LevelBarcode> {
    let n = rel.n;
    let mut out = LevelBarcode::zeros(rel.dims, n);
    for r in 0..rel.dims {
        let a = Aux { rel, n, r };
        for k in 1..=n {
            for j in k..=n {
                let closed = a.n_left_closed(k, j) - a.n_left_closed(k, j + 1) - a.closed_open(k, j + 1);
                out.set(r, BarKind::Closed, k, j, checked(closed, r, k, j)?);
                if j == k {
                    continue;
                }
                let oc = a.n_left_open(k, j) - a.n_left_open(k, j + 1) - a.open(k, j + 1);
                out.set(r, BarKind::Open, k, j, checked(a.open(k, j), r, k, j)?);
                out.set(r, BarKind::OpenClosed, k, j, checked(oc, r, k, j)?);
                out.set(r, BarKind::ClosedOpen, k, j, checked(a.closed_open(k, j), r, k, j)?);
            }
        }
    }
    Ok(out)
}

/// Sub-level `μ_r` in steps `0..N-1` (step `s` is `t_{s+1}`):
/// `[t_i, t_j)` bars are the level bars `[t_i, t_j)`, and `[t_i, ∞)` collects
/// the closed bars starting at `t_i` and the open `(r-1)`-bars ending at `t_i`.
pub fn sublevel_from_level(level: &LevelBarcode) -> MuTable {
    let n = level.n();
    let mut mu = MuTable::zeros(level.dims(), n.saturating_sub(1));
    for r in 0..level.dims() {
        for i in 1..=n {
            for j in i + 1..=n {
                mu.set(r, i - 1, Some(j - 2), level.get(r, BarKind::ClosedOpen, i, j));
            }
            let closed: usize = (i..=n).map(|l| level.get(r, BarKind::Closed, i, l)).sum();
            let open: usize = if r == 0 { 0 } else { (1..i).map(|l| level.get(r - 1, BarKind::Open, l, i)).sum() };
            mu.set(r, i - 1, None, closed + open);
        }
    }
    mu
}

/// Sub-level `μ_r` from the lower-star filtration: a simplex enters at the
/// step of its highest vertex.
pub fn sublevel_barcodes_direct(f: &PLMap) -> Result<MuTable> {
    let k = f.complex().clone();
    let steps = f.n().saturating_sub(1);
    let f_ind: Vec<usize> = k.cells().map(|s| s.last() as usize - 1).collect();
    let fc = FilteredComplex::new(k, f_ind, steps)?;
    let red = reduce(&fc.boundary_gf2());
    let bars = barcodes_from_reduced(&red, &fc.ordered_steps(), &fc.ordered_dims())?;
    MuTable::from_barcode(&bars, f.top_dim() + 1, steps)
}
