//! Cells cut out of simplices by levels and slabs of a PL map in canonical form.
//!
//! Vertex `k` carries the value `k`. Levels live on a doubled grid: `Level(2k)`
//! is the value of vertex `k` and odd levels lie strictly between two vertices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::Simplex;
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(pub u32);

impl Level {
    pub fn at_vertex(k: u32) -> Level {
        Level(2 * k)
    }

    /// Strictly between vertices `k` and `k + 1`.
    pub fn after_vertex(k: u32) -> Level {
        Level(2 * k + 1)
    }

    pub fn is_critical(self) -> bool {
        self.0 % 2 == 0
    }

    /// Vertex sitting exactly at this level.
    pub fn vertex(self) -> Option<u32> {
        self.is_critical().then_some(self.0 / 2)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellKind {
    Original,
    /// `|σ|` intersected with a level.
    LevelCut(Level),
    /// The part of `|σ|` at or above a level.
    UpperSlab(Level),
    /// The part of `|σ|` at or below a level.
    LowerSlab(Level),
    /// The part of `|σ|` between two levels.
    MidSlab(Level, Level),
}

/// A base simplex together with the region it is cut to.
///
/// Cells are kept canonical: a cut that reduces to a whole simplex or a vertex
/// is stored as that simplex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub base: Simplex,
    pub kind: CellKind,
}

fn lo(s: &Simplex) -> Level {
    Level::at_vertex(s.first())
}

fn hi(s: &Simplex) -> Level {
    Level::at_vertex(s.last())
}

impl Cell {
    pub fn original(base: Simplex) -> Cell {
        Cell { base, kind: CellKind::Original }
    }

    /// `|σ| ∩ f⁻¹(c)`.
    pub fn cut(s: &Simplex, c: Level) -> Option<Cell> {
        let (a, b) = (lo(s), hi(s));
        if c < a || c > b {
            None
        } else if c == a {
            Some(Cell::original(Simplex::vertex(s.first())))
        } else if c == b {
            Some(Cell::original(Simplex::vertex(s.last())))
        } else {
            Some(Cell { base: s.clone(), kind: CellKind::LevelCut(c) })
        }
    }

    /// `|σ| ∩ f⁻¹[c, ∞)`.
    pub fn upper(s: &Simplex, c: Level) -> Option<Cell> {
        let (a, b) = (lo(s), hi(s));
        if a >= c {
            Some(Cell::original(s.clone()))
        } else if b > c {
            Some(Cell { base: s.clone(), kind: CellKind::UpperSlab(c) })
        } else if b == c {
            Some(Cell::original(Simplex::vertex(s.last())))
        } else {
            None
        }
    }

    /// `|σ| ∩ f⁻¹(-∞, c]`.
    pub fn lower(s: &Simplex, c: Level) -> Option<Cell> {
        let (a, b) = (lo(s), hi(s));
        if b <= c {
            Some(Cell::original(s.clone()))
        } else if a < c {
            Some(Cell { base: s.clone(), kind: CellKind::LowerSlab(c) })
        } else if a == c {
            Some(Cell::original(Simplex::vertex(s.first())))
        } else {
            None
        }
    }

    /// `|σ| ∩ f⁻¹[c, d]` for `c < d`.
    pub fn mid(s: &Simplex, c: Level, d: Level) -> Option<Cell> {
        debug_assert!(c < d);
        let (a, b) = (lo(s), hi(s));
        if b < c || a > d {
            None
        } else if a >= c {
            Cell::lower(s, d)
        } else if b <= d {
            Cell::upper(s, c)
        } else {
            Some(Cell { base: s.clone(), kind: CellKind::MidSlab(c, d) })
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            CellKind::LevelCut(_) => self.base.dim() - 1,
            _ => self.base.dim(),
        }
    }

    pub fn t_min(&self) -> Level {
        match self.kind {
            CellKind::Original | CellKind::LowerSlab(_) => lo(&self.base),
            CellKind::LevelCut(c) | CellKind::UpperSlab(c) | CellKind::MidSlab(c, _) => c,
        }
    }

    pub fn t_max(&self) -> Level {
        match self.kind {
            CellKind::Original | CellKind::UpperSlab(_) => hi(&self.base),
            CellKind::LevelCut(c) | CellKind::LowerSlab(c) | CellKind::MidSlab(_, c) => c,
        }
    }

    /// Codimension-one faces.
    pub fn facets(&self) -> Vec<Cell> {
        let d = self.dim();
        if d == 0 {
            return Vec::new();
        }
        let taus = self.base.facets();
        let mut out: Vec<Cell> = match self.kind {
            CellKind::Original => return taus.into_iter().map(Cell::original).collect(),
            CellKind::LevelCut(c) => taus.iter().filter_map(|t| Cell::cut(t, c)).collect(),
            CellKind::UpperSlab(c) => {
                let mut v: Vec<Cell> = taus.iter().filter_map(|t| Cell::upper(t, c)).collect();
                v.extend(Cell::cut(&self.base, c));
                v
            }
            CellKind::LowerSlab(c) => {
                let mut v: Vec<Cell> = taus.iter().filter_map(|t| Cell::lower(t, c)).collect();
                v.extend(Cell::cut(&self.base, c));
                v
            }
            CellKind::MidSlab(c, e) => {
                let mut v: Vec<Cell> = taus.iter().filter_map(|t| Cell::mid(t, c, e)).collect();
                v.extend(Cell::cut(&self.base, c));
                v.extend(Cell::cut(&self.base, e));
                v
            }
        };
        out.retain(|f| f.dim() + 1 == d);
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CellKind::Original => write!(f, "{}", self.base),
            CellKind::LevelCut(c) => write!(f, "{}|{}", self.base, c),
            CellKind::UpperSlab(c) => write!(f, "{}|{},inf", self.base, c),
            CellKind::LowerSlab(c) => write!(f, "{}|-inf,{}", self.base, c),
            CellKind::MidSlab(c, d) => write!(f, "{}|{},{}", self.base, c, d),
        }
    }
}

/// GF(2) boundary of an ordered list of cells; every facet must be listed.
pub fn boundary_gf2(cells: &[Cell]) -> Result<Gf2Matrix> {
    let pos: BTreeMap<&Cell, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut cols = Vec::with_capacity(cells.len());
    for c in cells {
        let mut col = Vec::new();
        for f in c.facets() {
            match pos.get(&f) {
                Some(&i) => col.push(i),
                None => return Err(Error::Inconsistent(format!("facet {f} of {c} missing"))),
            }
        }
        cols.push(col);
    }
    Ok(Gf2Matrix::from_columns(cells.len(), cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn names(cells: &[Cell]) -> Vec<String> {
        cells.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn canonical_cuts() {
        let l4 = Level::at_vertex(4);
        assert_eq!(Cell::cut(&s(&[2, 5]), l4).unwrap().to_string(), "25|4");
        assert_eq!(Cell::cut(&s(&[4, 5]), l4).unwrap().to_string(), "4");
        assert_eq!(Cell::cut(&s(&[5, 6]), l4), None);
        assert_eq!(Cell::upper(&s(&[2, 4]), l4).unwrap().to_string(), "4");
        assert_eq!(Cell::upper(&s(&[2, 3]), l4), None);
        assert_eq!(Cell::lower(&s(&[5, 6]), l4), None);
        assert_eq!(Cell::mid(&s(&[1, 2]), Level(5), Level(7)), None);
        assert_eq!(Cell::mid(&s(&[1, 2]), Level(3), Level(5)).unwrap().to_string(), "12|1.5,inf");
    }

    #[test]
    fn slab_faces() {
        let l4 = Level::at_vertex(4);
        let t = Cell::upper(&s(&[2, 3, 5]), l4).unwrap();
        assert_eq!(names(&t.facets()), ["25|4,inf", "35|4,inf", "235|4"]);
        let e = Cell::upper(&s(&[2, 5]), l4).unwrap();
        assert_eq!(names(&e.facets()), ["5", "25|4"]);
        let c = Cell::cut(&s(&[2, 3, 5]), l4).unwrap();
        assert_eq!(names(&c.facets()), ["25|4", "35|4"]);
        assert_eq!((c.dim(), c.t_min(), c.t_max()), (1, l4, l4));
    }

    #[test]
    fn cut_through_interior_vertex() {
        let c = Cell::cut(&s(&[1, 3, 5]), Level::at_vertex(3)).unwrap();
        assert_eq!(names(&c.facets()), ["3", "15|3"]);
        let u = Cell::upper(&s(&[2, 4, 5]), Level::at_vertex(4)).unwrap();
        assert_eq!(names(&u.facets()), ["25|4,inf", "45", "245|4"]);
    }

    #[test]
    fn mid_slab_faces() {
        let e = Cell::mid(&s(&[1, 3]), Level(3), Level(5)).unwrap();
        assert_eq!(e.to_string(), "13|1.5,2.5");
        assert_eq!(names(&e.facets()), ["13|1.5", "13|2.5"]);
        let t = Cell::mid(&s(&[1, 2, 3]), Level(3), Level(5)).unwrap();
        assert_eq!(names(&t.facets()), ["12|1.5,inf", "13|1.5,2.5", "23|-inf,2.5", "123|1.5", "123|2.5"]);
    }

    #[test]
    fn boundary_squares_to_zero_on_slabs() {
        let tet = s(&[1, 2, 3, 4]);
        let mut cells: Vec<Cell> = tet.faces().iter().filter_map(|f| Cell::mid(f, Level(3), Level(7))).collect();
        for f in tet.faces() {
            cells.extend(Cell::cut(&f, Level(3)));
            cells.extend(Cell::cut(&f, Level(7)));
        }
        cells.sort_by_key(|c| (c.dim(), c.clone()));
        cells.dedup();
        let d = boundary_gf2(&cells).unwrap();
        assert!(d.mul(&d).is_zero());
        assert!(d.is_strictly_upper());
    }
}
