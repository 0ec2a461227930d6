//! Simplices, complexes, orderings and boundary matrices.

mod cell;

pub use cell::{boundary_gf2 as cell_boundary_gf2, Cell, CellKind, Level};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering as CmpOrdering;
use core::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// 1-based vertex label.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::ZeroVertex);
        }
        Ok(VertexId(index))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Strictly increasing vertex tuple.
///
/// Ordered by dimension first and lexicographically after that, which is the
/// initial order of a complex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Sorts the tuple. Repeated or zero vertices are rejected.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        if vertices.contains(&0) {
            return Err(Error::ZeroVertex);
        }
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedSimplex(vertices));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: u32) -> Self {
        assert!(v > 0);
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    /// The face omitting the vertex at 0-based position `k`.
    pub fn facet(&self, k: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(k);
        Simplex(v)
    }

    /// Codimension-one faces, in order of the omitted position.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.dim() == 0 {
            return Vec::new();
        }
        (0..self.0.len()).map(|k| self.facet(k)).collect()
    }

    /// All nonempty faces including itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| Simplex((0..n).filter(|&i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Simplex {
        let mut v: Vec<u32> = self.0.iter().map(|&x| map(x)).collect();
        v.sort_unstable();
        Simplex(v)
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.0.iter().any(|&v| v > 9);
        for (i, v) in self.0.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A face-closed set of simplices stored per dimension in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
    index: BTreeMap<Simplex, usize>,
    closure_added: bool,
}

/// Downward closure of the given tuples.
pub fn build_complex<I, S>(simplices: I) -> Result<SimplicialComplex>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[u32]>,
{
    let mut given = BTreeSet::new();
    for s in simplices {
        given.insert(Simplex::new(s.as_ref().to_vec())?);
    }
    let mut all = BTreeSet::new();
    for s in &given {
        all.extend(s.faces());
    }
    let closure_added = all.len() != given.len();
    let mut c = SimplicialComplex::from_closed(all);
    c.closure_added = closure_added;
    Ok(c)
}

impl SimplicialComplex {
    /// `cells` must already be face-closed.
    pub(crate) fn from_closed(cells: BTreeSet<Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        let mut index = BTreeMap::new();
        for (i, s) in cells.into_iter().enumerate() {
            let d = s.dim();
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            index.insert(s.clone(), i);
            by_dim[d].push(s);
        }
        SimplicialComplex { by_dim, index, closure_added: false }
    }

    /// Whether [`build_complex`] had to add missing faces.
    pub fn closure_added(&self) -> bool {
        self.closure_added
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Top dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Number of `d`-simplices.
    pub fn count(&self, d: usize) -> usize {
        self.by_dim.get(d).map_or(0, Vec::len)
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    /// All cells in initial order.
    pub fn cells(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Position in the initial order.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn cell(&self, i: usize) -> &Simplex {
        let mut i = i;
        for layer in &self.by_dim {
            if i < layer.len() {
                return &layer[i];
            }
            i -= layer.len();
        }
        panic!("cell index out of range")
    }

    /// Index of `s` among the simplices of its own dimension.
    pub fn index_in_dim(&self, s: &Simplex) -> Option<usize> {
        self.simplices(s.dim()).binary_search(s).ok()
    }

    pub fn skeleton(&self, m: usize) -> SimplicialComplex {
        let cells = self.cells().filter(|s| s.dim() <= m).cloned().collect();
        SimplicialComplex::from_closed(cells)
    }

    /// Euler characteristic.
    pub fn euler(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    pub fn initial_order(&self) -> Ordering {
        Ordering { order: (0..self.len()).collect(), rule: OrderRule::Initial }
    }

    /// GF(2) incidence matrix of the cells taken in `ordering`.
    pub fn boundary_gf2(&self, ordering: &Ordering) -> Result<Gf2Matrix> {
        if !ordering.is_permutation_of(self.len()) {
            return Err(Error::MalformedOrdering);
        }
        let mut pos = vec![0; self.len()];
        for (p, &c) in ordering.order.iter().enumerate() {
            pos[c] = p;
        }
        let cols = ordering
            .order
            .iter()
            .map(|&c| self.cell(c).facets().iter().map(|f| pos[self.index[f]]).collect())
            .collect();
        Ok(Gf2Matrix::from_columns(self.len(), cols))
    }

    /// Real boundary of dimension `r` in initial order, shape `n_{r-1} x n_r`.
    pub fn boundary_real(&self, r: usize) -> DMatrix<f64> {
        let rows = if r == 0 { &[][..] } else { self.simplices(r - 1) };
        boundary_real_between(rows, self.simplices(r))
    }
}

/// Real boundary block with the given row and column simplices.
///
/// The entry for the face omitting 1-based position `k` is `+1` for odd `k`
/// and `-1` for even `k`. Faces absent from `rows` are dropped.
pub fn boundary_real_between(rows: &[Simplex], cols: &[Simplex]) -> DMatrix<f64> {
    let pos: BTreeMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = DMatrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for k in 0..s.0.len() {
            if s.dim() == 0 {
                break;
            }
            if let Some(&i) = pos.get(&s.facet(k)) {
                m[(i, j)] = if (k + 1) % 2 == 1 { 1.0 } else { -1.0 };
            }
        }
    }
    m
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrderRule {
    Initial,
    Compatible,
    Positive,
    Negative,
}

/// `order[p]` is the initial-order index of the cell at position `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    pub order: Vec<usize>,
    pub rule: OrderRule,
}

impl Ordering {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn is_permutation_of(&self, n: usize) -> bool {
        if self.order.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &i in &self.order {
            if i >= n || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }
}

/// Orders by `f_ind`, then dimension, then lexicographically.
///
/// `f_ind[i]` is the step of the `i`-th cell in initial order.
pub fn compatible_ordering(complex: &SimplicialComplex, f_ind: &[usize]) -> Result<Ordering> {
    if f_ind.len() != complex.len() {
        return Err(Error::Shape(format!("{} steps for {} cells", f_ind.len(), complex.len())));
    }
    for (i, s) in complex.cells().enumerate() {
        for f in s.facets() {
            let fi = complex.index[&f];
            if f_ind[fi] > f_ind[i] {
                return Err(Error::InvalidFiltration { face: format!("{f}"), coface: format!("{s}") });
            }
        }
    }
    let mut order: Vec<usize> = (0..complex.len()).collect();
    order.sort_by_key(|&i| (f_ind[i], i));
    Ok(Ordering { order, rule: OrderRule::Compatible })
}

/// A complex with an entry step for every cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: SimplicialComplex,
    f_ind: Vec<usize>,
    steps: usize,
    ordering: Ordering,
}

impl FilteredComplex {
    /// `f_ind` indexed by initial order; `steps` is the last step P.
    pub fn new(complex: SimplicialComplex, f_ind: Vec<usize>, steps: usize) -> Result<Self> {
        let ordering = compatible_ordering(&complex, &f_ind)?;
        if let Some(&m) = f_ind.iter().max() {
            if m > steps {
                return Err(Error::Shape(format!("step {m} beyond last step {steps}")));
            }
        }
        Ok(FilteredComplex { complex, f_ind, steps, ordering })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn ordering(&self) -> &Ordering {
        &self.ordering
    }

    /// Step of the cell with initial index `i`.
    pub fn f_ind(&self, i: usize) -> usize {
        self.f_ind[i]
    }

    pub fn step_of(&self, s: &Simplex) -> Option<usize> {
        self.complex.index_of(s).map(|i| self.f_ind[i])
    }

    /// Cells in filtration order.
    pub fn ordered_cells(&self) -> Vec<&Simplex> {
        self.ordering.order.iter().map(|&i| self.complex.cell(i)).collect()
    }

    /// Steps in filtration order.
    pub fn ordered_steps(&self) -> Vec<usize> {
        self.ordering.order.iter().map(|&i| self.f_ind[i]).collect()
    }

    /// Dimensions in filtration order.
    pub fn ordered_dims(&self) -> Vec<usize> {
        self.ordering.order.iter().map(|&i| self.complex.cell(i).dim()).collect()
    }

    pub fn boundary_gf2(&self) -> Gf2Matrix {
        self.complex.boundary_gf2(&self.ordering).expect("ordering built from the complex")
    }

    /// `r`-simplices in filtration order.
    pub fn simplices_in_order(&self, r: usize) -> Vec<Simplex> {
        self.ordered_cells().into_iter().filter(|s| s.dim() == r).cloned().collect()
    }

    /// Real `r`-boundary with rows and columns in filtration order.
    pub fn boundary_real(&self, r: usize) -> DMatrix<f64> {
        let rows = if r == 0 { Vec::new() } else { self.simplices_in_order(r - 1) };
        boundary_real_between(&rows, &self.simplices_in_order(r))
    }

    /// `n_r^s`: number of `r`-cells present at step `s`.
    pub fn n(&self, r: usize, s: usize) -> usize {
        self.complex.cells().zip(&self.f_ind).filter(|(c, &f)| c.dim() == r && f <= s).count()
    }

    /// The `(m+1) x (P+1)` table of `n_r^s`, with `m` the top dimension.
    pub fn dimension_table(&self) -> Vec<Vec<usize>> {
        let top = self.complex.dim().unwrap_or(0);
        let mut t = vec![vec![0; self.steps + 1]; top + 1];
        for (c, &f) in self.complex.cells().zip(&self.f_ind) {
            for s in f..=self.steps {
                t[c.dim()][s] += 1;
            }
        }
        t
    }

    /// Cells present at step `s`.
    pub fn at_step(&self, s: usize) -> SimplicialComplex {
        let cells = self.complex.cells().zip(&self.f_ind).filter(|(_, &f)| f <= s).map(|(c, _)| c.clone()).collect();
        SimplicialComplex::from_closed(cells)
    }

    /// Restriction to cells of dimension at most `m`.
    pub fn skeleton(&self, m: usize) -> FilteredComplex {
        let complex = self.complex.skeleton(m);
        let f_ind = complex.cells().map(|c| self.step_of(c).expect("subcomplex")).collect();
        FilteredComplex::new(complex, f_ind, self.steps).expect("restriction stays monotone")
    }
}
