use alloc::vec::Vec;
use core::cmp::Reverse;

use super::PLMap;
use crate::complex::{cell_boundary_gf2, Cell, CellKind, Level, OrderRule, Ordering};
use crate::error::Result;
use crate::gf2::Gf2Matrix;
use crate::reduction::{betti_from_reduced, reduce};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CutKind {
    /// `X_t`
    Level(Level),
    /// `X_{s,t}`
    Slab(Level, Level),
    /// `X_{i,∞}`
    Upper(Level),
    /// `X_{-∞,i}`
    Lower(Level),
    /// `Y_{s,t}`: cells of `X_{s,∞}` with `t_max ≤ t`.
    Y(Level, Level),
    /// `Z_{k,i}`: cells of `X_{-∞,i}` with `t_min ≥ k`.
    Z(Level, Level),
}

/// A finite cell complex cut out of a PL map, cells sorted by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutComplex {
    pub kind: CutKind,
    cells: Vec<Cell>,
}

impl CutComplex {
    fn new(kind: CutKind, mut cells: Vec<Cell>) -> CutComplex {
        cells.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        cells.dedup();
        CutComplex { kind, cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.iter().any(|x| x == c)
    }

    pub fn boundary(&self) -> Result<Gf2Matrix> {
        cell_boundary_gf2(&self.cells)
    }

    /// GF(2) Betti numbers `b_0, …, b_top`.
    pub fn betti(&self) -> Result<Vec<usize>> {
        let dims: Vec<usize> = self.cells.iter().map(Cell::dim).collect();
        betti_from_reduced(&reduce(&self.boundary()?), &dims)
    }
}

fn collect(f: &PLMap, kind: CutKind, g: impl Fn(&crate::complex::Simplex, &mut Vec<Cell>)) -> CutComplex {
    let mut cells = Vec::new();
    for s in f.complex().cells() {
        g(s, &mut cells);
    }
    CutComplex::new(kind, cells)
}

/// `X_t = ⋃ |σ| ∩ f⁻¹(t)`.
pub fn level_complex(f: &PLMap, t: Level) -> CutComplex {
    collect(f, CutKind::Level(t), |s, out| out.extend(Cell::cut(s, t)))
}

/// `X_{s,t} = f⁻¹[s, t]`; `s = t` gives the level.
pub fn slab_complex(f: &PLMap, s: Level, t: Level) -> CutComplex {
    assert!(s <= t);
    if s == t {
        return level_complex(f, t);
    }
    collect(f, CutKind::Slab(s, t), |x, out| {
        out.extend(Cell::mid(x, s, t));
        out.extend(Cell::cut(x, s));
        out.extend(Cell::cut(x, t));
    })
}

pub fn upper_complex(f: &PLMap, i: Level) -> CutComplex {
    collect(f, CutKind::Upper(i), |x, out| {
        out.extend(Cell::upper(x, i));
        out.extend(Cell::cut(x, i));
    })
}

pub fn lower_complex(f: &PLMap, i: Level) -> CutComplex {
    collect(f, CutKind::Lower(i), |x, out| {
        out.extend(Cell::lower(x, i));
        out.extend(Cell::cut(x, i));
    })
}

pub fn y_complex(f: &PLMap, s: Level, t: Level) -> CutComplex {
    let mut cells = upper_complex(f, s).cells;
    cells.retain(|c| c.t_max() <= t);
    CutComplex::new(CutKind::Y(s, t), cells)
}

pub fn z_complex(f: &PLMap, k: Level, i: Level) -> CutComplex {
    let mut cells = lower_complex(f, i).cells;
    cells.retain(|c| c.t_min() >= k);
    CutComplex::new(CutKind::Z(k, i), cells)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
}

/// Cells of `X_{i,∞}` (or `X_{-∞,i}`) listed class by class, with the boundary
/// matrix in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockBoundary {
    pub level: Level,
    pub side: Side,
    pub cells: Vec<Cell>,
    /// Sizes of the five classes.
    pub classes: [usize; 5],
    pub matrix: Gf2Matrix,
}

impl BlockBoundary {
    /// Number of cells in the level itself (first two classes).
    pub fn prefix(&self) -> usize {
        self.classes[0] + self.classes[1]
    }

    pub fn class(&self, k: usize) -> &[Cell] {
        let start: usize = self.classes[..k].iter().sum();
        &self.cells[start..start + self.classes[k]]
    }

    /// Cells and boundary rearranged by `order`.
    pub fn reordered(&self, order: &Ordering) -> Result<(Vec<Cell>, Gf2Matrix)> {
        let cells: Vec<Cell> = order.order.iter().map(|&k| self.cells[k].clone()).collect();
        let m = cell_boundary_gf2(&cells)?;
        Ok((cells, m))
    }
}

fn build(f: &PLMap, i: Level, side: Side) -> Result<BlockBoundary> {
    let mut classes: [Vec<Cell>; 5] = Default::default();
    if let Some(k) = i.vertex().filter(|&k| k >= 1 && k as usize <= f.n()) {
        classes[0].push(Cell::original(crate::complex::Simplex::vertex(k)));
    }
    for s in f.complex().cells() {
        let (lo, hi) = (Level::at_vertex(s.first()), Level::at_vertex(s.last()));
        if lo < i && i < hi {
            classes[1].push(Cell { base: s.clone(), kind: CellKind::LevelCut(i) });
        }
        let (slab, edge, far) = match side {
            Side::Positive => (CellKind::UpperSlab(i), lo, lo > i),
            Side::Negative => (CellKind::LowerSlab(i), hi, hi < i),
        };
        if lo < i && i < hi {
            classes[2].push(Cell { base: s.clone(), kind: slab });
        } else if s.dim() > 0 && edge == i {
            classes[3].push(Cell::original(s.clone()));
        } else if far {
            classes[4].push(Cell::original(s.clone()));
        }
    }
    let sizes = [0, 1, 2, 3, 4].map(|k| classes[k].len());
    let cells: Vec<Cell> = classes.into_iter().flatten().collect();
    let matrix = cell_boundary_gf2(&cells)?;
    Ok(BlockBoundary { level: i, side, cells, classes: sizes, matrix })
}

/// `∂_i⁺` with the classes `P_1..P_5` of `X_{i,∞}`.
pub fn build_boundary_plus(f: &PLMap, i: Level) -> Result<BlockBoundary> {
    build(f, i, Side::Positive)
}

/// `∂_i⁻` with the classes `N_1..N_5` of `X_{-∞,i}`.
pub fn build_boundary_minus(f: &PLMap, i: Level) -> Result<BlockBoundary> {
    build(f, i, Side::Negative)
}

/// Keeps the level cells first; the rest by `t_max` ascending, then by base simplex.
pub fn positive_order(b: &BlockBoundary) -> Ordering {
    let n0 = b.prefix();
    let mut order: Vec<usize> = (0..b.cells.len()).collect();
    order[n0..].sort_by_key(|&k| (b.cells[k].t_max(), b.cells[k].base.clone()));
    Ordering { order, rule: OrderRule::Positive }
}

/// Keeps the level cells first; the rest by `t_min` descending, then by base simplex.
pub fn negative_order(b: &BlockBoundary) -> Ordering {
    let n0 = b.prefix();
    let mut order: Vec<usize> = (0..b.cells.len()).collect();
    order[n0..].sort_by_key(|&k| (Reverse(b.cells[k].t_min()), b.cells[k].base.clone()));
    Ordering { order, rule: OrderRule::Negative }
}
