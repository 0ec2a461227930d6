use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::barcode::{level_barcodes_from_relevant, LevelBarcode};
use super::cut::{level_complex, slab_complex, CutComplex};
use super::posneg::{posneg_at, PosNegLevel};
use super::PLMap;
use crate::complex::{cell_boundary_gf2, Cell, Level};
use crate::error::Result;
use crate::reduction::{betti_from_reduced, reduce};

/// `i_r(s, t)` for grid levels `s ≤ t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IGrid {
    size: usize,
    vals: Vec<usize>,
    dims: usize,
}

impl IGrid {
    pub fn zeros(dims: usize, top: Level) -> IGrid {
        let size = top.0 as usize + 1;
        IGrid { size, dims, vals: vec![0; dims * size * size] }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn top(&self) -> Level {
        Level(self.size as u32 - 1)
    }

    fn at(&self, r: usize, s: Level, t: Level) -> usize {
        (r * self.size + s.0 as usize) * self.size + t.0 as usize
    }

    pub fn get(&self, r: usize, s: Level, t: Level) -> usize {
        if r >= self.dims || t.0 as usize >= self.size {
            return 0;
        }
        self.vals[self.at(r, s, t)]
    }

    pub fn set(&mut self, r: usize, s: Level, t: Level, v: usize) {
        let k = self.at(r, s, t);
        self.vals[k] = v;
    }
}

/// Pos/neg data at critical levels and `i_r` at pairs of critical levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantNumbers {
    pub n: usize,
    pub dims: usize,
    levels: BTreeMap<Level, PosNegLevel>,
    joint: BTreeMap<(Level, Level), Vec<usize>>,
    slabs: BTreeMap<(Level, Level), Vec<usize>>,
}

impl RelevantNumbers {
    pub fn level(&self, t: Level) -> Option<&PosNegLevel> {
        self.levels.get(&t)
    }

    pub fn levels(&self) -> impl Iterator<Item = &PosNegLevel> {
        self.levels.values()
    }

    pub fn l(&self, r: usize, t: Level) -> usize {
        self.levels.get(&t).map_or(0, |p| p.l(r))
    }

    pub fn l_plus(&self, r: usize, t: Level, up: Level) -> usize {
        self.levels.get(&t).map_or(0, |p| p.l_plus(r, up))
    }

    pub fn l_minus(&self, r: usize, t: Level, down: Level) -> usize {
        self.levels.get(&t).map_or(0, |p| p.l_minus(r, down))
    }

    pub fn e(&self, r: usize, t: Level, up: Level, down: Level) -> usize {
        self.levels.get(&t).map_or(0, |p| p.e(r, up, down))
    }

    pub fn i(&self, r: usize, s: Level, t: Level) -> usize {
        if s == t {
            return self.l(r, s);
        }
        self.joint.get(&(s, t)).and_then(|v| v.get(r)).copied().unwrap_or(0)
    }

    pub fn set_i(&mut self, s: Level, t: Level, v: Vec<usize>) {
        self.joint.insert((s, t), v);
    }

    /// Betti numbers of `X_{s,t}`, when recorded.
    pub fn slab_betti(&self, r: usize, s: Level, t: Level) -> usize {
        self.slabs.get(&(s, t)).and_then(|v| v.get(r)).copied().unwrap_or(0)
    }

    pub fn set_slab_betti(&mut self, s: Level, t: Level, v: Vec<usize>) {
        self.slabs.insert((s, t), v);
    }
}

/// Collects pos/neg bar codes computed at any set of levels.
pub fn relevant_from_posneg(f: &PLMap, levels: Vec<PosNegLevel>) -> RelevantNumbers {
    RelevantNumbers {
        n: f.n(),
        dims: f.top_dim() + 1,
        levels: levels.into_iter().map(|p| (p.level, p)).collect(),
        joint: BTreeMap::new(),
        slabs: BTreeMap::new(),
    }
}

/// Result of a level-persistence run with its reduction count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRun {
    pub grid: IGrid,
    pub barcode: LevelBarcode,
    pub reductions: usize,
}

struct Images {
    first: Vec<usize>,
    both: Vec<usize>,
    slab: Vec<usize>,
}

/// Dimensions of the images of `H(X_s)` and `H(X_s ⊔ X_t)` in `H(X_{s,t})`,
/// and the Betti numbers of `X_{s,t}`, read from one ordering with `first` listed first.
fn images(slab: &CutComplex, first: &CutComplex, second: &CutComplex, dims: usize) -> Result<Images> {
    let mut cells: Vec<Cell> = first.cells().to_vec();
    cells.extend_from_slice(second.cells());
    let (n1, n2) = (first.len(), first.len() + second.len());
    let seen: BTreeSet<&Cell> = cells.iter().collect();
    let rest: Vec<Cell> = slab.cells().iter().filter(|c| !seen.contains(c)).cloned().collect();
    cells.extend(rest);
    let red = reduce(&cell_boundary_gf2(&cells)?);
    let mut out = Images { first: vec![0; dims], both: vec![0; dims], slab: vec![0; dims] };
    for j in 0..cells.len() {
        if red.is_zero(j) && red.killer(j).is_none() {
            let r = cells[j].dim();
            out.slab[r] += 1;
            if j < n2 {
                out.both[r] += 1;
            }
            if j < n1 {
                out.first[r] += 1;
            }
        }
    }
    Ok(out)
}

fn betti_padded(c: &CutComplex, dims: usize) -> Result<Vec<usize>> {
    let dvec: Vec<usize> = c.cells().iter().map(Cell::dim).collect();
    let mut b = betti_from_reduced(&reduce(&c.boundary()?), &dvec)?;
    b.resize(dims, 0);
    Ok(b)
}

/// `i_r(s, t)` on the whole grid from the slabs `X_{s,t}`, each reduced in two orders.
pub fn i_numbers_method1(f: &PLMap) -> Result<LevelRun> {
    let dims = f.top_dim() + 1;
    let mut grid = IGrid::zeros(dims, f.top_level());
    let mut reductions = 0;
    let live: Vec<Level> = (2..=2 * f.n() as u32).map(Level).collect();
    let fibers: Vec<CutComplex> = live.iter().map(|&t| level_complex(f, t)).collect();
    for (a, &s) in live.iter().enumerate() {
        let b = betti_padded(&fibers[a], dims)?;
        reductions += 1;
        for (r, &x) in b.iter().enumerate() {
            grid.set(r, s, s, x);
        }
        for (c, &t) in live.iter().enumerate().skip(a + 1) {
            let slab = slab_complex(f, s, t);
            let st = images(&slab, &fibers[a], &fibers[c], dims)?;
            let ts = images(&slab, &fibers[c], &fibers[a], dims)?;
            reductions += 2;
            for r in 0..dims {
                grid.set(r, s, t, st.first[r] + ts.first[r] - st.both[r]);
            }
        }
    }
    let barcode = super::barcode::level_barcodes_from_i(&grid, f.n())?;
    Ok(LevelRun { grid, barcode, reductions })
}

/// Pos/neg bar codes at every critical value and `i_r` for every pair of
/// critical values, with the number of reductions performed.
pub fn relevant_numbers(f: &PLMap) -> Result<(RelevantNumbers, usize)> {
    let dims = f.top_dim() + 1;
    let crit: Vec<Level> = f.critical_levels().collect();
    let levels = crit.iter().map(|&t| posneg_at(f, t)).collect::<Result<Vec<_>>>()?;
    let mut rel = relevant_from_posneg(f, levels);
    let mut reductions = 2 * crit.len();
    let fibers: Vec<CutComplex> = crit.iter().map(|&t| level_complex(f, t)).collect();
    for (a, &s) in crit.iter().enumerate() {
        for (c, &t) in crit.iter().enumerate().skip(a + 1) {
            let slab = slab_complex(f, s, t);
            let img = images(&slab, &fibers[a], &fibers[c], dims)?;
            reductions += 1;
            let v = (0..dims)
                .map(|r| {
                    let img_s = rel.l(r, s) - rel.l_plus(r, s, t);
                    let img_t = rel.l(r, t) - rel.l_minus(r, t, s);
                    (img_s + img_t).checked_sub(img.both[r]).ok_or_else(|| crate::error::Error::NegativeCount {
                        dim: r,
                        left: s.0 as usize / 2,
                        right: t.0 as usize / 2,
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            rel.set_i(s, t, v);
            rel.set_slab_betti(s, t, img.slab);
        }
    }
    Ok((rel, reductions))
}

/// `i_r` on the whole grid via the relevant numbers and the level bar code.
pub fn i_numbers_method2(f: &PLMap) -> Result<LevelRun> {
    let (rel, reductions) = relevant_numbers(f)?;
    let barcode = level_barcodes_from_relevant(&rel)?;
    let grid = barcode.i_grid(f.top_level());
    Ok(LevelRun { grid, barcode, reductions })
}
