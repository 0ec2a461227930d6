//! Column reduction over GF(2), pairing, bar codes and simultaneous persistence.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BarcodeInterval, MuTable};
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::gf2::{add_into, low, Column, Gf2Matrix};

/// `R = ∂·V` with distinct lows among nonzero columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMatrix {
    r: Gf2Matrix,
    v: Option<Gf2Matrix>,
    killer: Vec<Option<usize>>,
}

impl ReducedMatrix {
    /// Wraps an already reduced matrix.
    pub fn from_parts(r: Gf2Matrix, v: Option<Gf2Matrix>) -> Result<Self> {
        let mut killer = vec![None; r.nrows()];
        for j in 0..r.ncols() {
            if let Some(l) = r.low(j) {
                if killer[l].replace(j).is_some() {
                    return Err(Error::Inconsistent(format!("row {l} is the low of two columns")));
                }
            }
        }
        Ok(ReducedMatrix { r, v, killer })
    }

    pub fn r(&self) -> &Gf2Matrix {
        &self.r
    }

    pub fn v(&self) -> Option<&Gf2Matrix> {
        self.v.as_ref()
    }

    pub fn ncols(&self) -> usize {
        self.r.ncols()
    }

    pub fn low(&self, j: usize) -> Option<usize> {
        self.r.low(j)
    }

    pub fn is_zero(&self, j: usize) -> bool {
        self.r.column(j).is_empty()
    }

    /// The column whose low is row `j`.
    pub fn killer(&self, j: usize) -> Option<usize> {
        self.killer.get(j).copied().flatten()
    }

    pub fn lows(&self) -> Vec<Option<usize>> {
        (0..self.ncols()).map(|j| self.low(j)).collect()
    }
}

fn reduce_impl(d: &Gf2Matrix, track: bool) -> ReducedMatrix {
    let n = d.ncols();
    let mut cols: Vec<Column> = d.columns().to_vec();
    let mut vcols: Vec<Column> = if track { (0..n).map(|j| vec![j]).collect() } else { Vec::new() };
    let mut pivot: Vec<Option<usize>> = vec![None; d.nrows()];
    for j in 0..n {
        while let Some(l) = low(&cols[j]) {
            let Some(j0) = pivot[l] else {
                pivot[l] = Some(j);
                break;
            };
            let src = core::mem::take(&mut cols[j0]);
            add_into(&mut cols[j], &src);
            cols[j0] = src;
            if track {
                let src = core::mem::take(&mut vcols[j0]);
                add_into(&mut vcols[j], &src);
                vcols[j0] = src;
            }
        }
    }
    let r = Gf2Matrix::from_columns(d.nrows(), cols);
    let v = track.then(|| Gf2Matrix::from_columns(n, vcols));
    ReducedMatrix::from_parts(r, v).expect("pivot table keeps lows distinct")
}

/// Adds earlier columns into later ones until all lows are distinct.
pub fn reduce(d: &Gf2Matrix) -> ReducedMatrix {
    reduce_impl(d, false)
}

/// [`reduce`], also recording `V` with `R = ∂·V`.
pub fn reduce_tracked(d: &Gf2Matrix) -> ReducedMatrix {
    reduce_impl(d, true)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub birth: usize,
    pub death: Option<usize>,
    pub dim: usize,
}

/// Every zero column with its killer, if any.
pub fn persistence_pairs(r: &ReducedMatrix, dims: &[usize]) -> Vec<Pair> {
    (0..r.ncols()).filter(|&j| r.is_zero(j)).map(|j| Pair { birth: j, death: r.killer(j), dim: dims[j] }).collect()
}

/// `b_k` = zero `k`-columns minus nonzero `(k+1)`-columns.
pub fn betti_from_reduced(r: &ReducedMatrix, dims: &[usize]) -> Result<Vec<usize>> {
    let top = dims.iter().copied().max().map_or(0, |d| d + 1);
    let mut b = vec![0i64; top];
    for (j, &d) in dims.iter().enumerate() {
        if r.is_zero(j) {
            b[d] += 1;
        } else if d > 0 {
            b[d - 1] -= 1;
        }
    }
    b.iter()
        .enumerate()
        .map(|(k, &x)| usize::try_from(x).map_err(|_| Error::Inconsistent(format!("b_{k} = {x}"))))
        .collect()
}

/// Step bars `[f(σ_j), f(σ_k) - 1]` and `[f(σ_j), ∞)` read from a reduced matrix.
pub fn barcodes_from_reduced(
    r: &ReducedMatrix,
    f_ind: &[usize],
    dims: &[usize],
) -> Result<Vec<BarcodeInterval<usize>>> {
    let mut bars = Vec::new();
    for p in persistence_pairs(r, dims) {
        let birth = f_ind[p.birth];
        match p.death {
            None => bars.push(BarcodeInterval::infinite(p.dim, birth)),
            Some(k) => {
                let death = f_ind[k];
                if death < birth {
                    return Err(Error::InvalidOrdering { birth: p.birth, death: k });
                }
                if death > birth {
                    bars.push(BarcodeInterval::closed(p.dim, birth, death - 1));
                }
            }
        }
    }
    Ok(bars)
}

/// Reduces the filtration's boundary and counts its step bars.
pub fn mu_gf2(f: &FilteredComplex) -> Result<MuTable> {
    let red = reduce(&f.boundary_gf2());
    let bars = barcodes_from_reduced(&red, &f.ordered_steps(), &f.ordered_dims())?;
    MuTable::from_barcode(&bars, f.complex().dim().map_or(1, |d| d + 1), f.steps())
}

/// Homology of the complex spanned by the first `n0` columns of a tracked reduction.
#[derive(Clone, Debug)]
pub struct PrefixHomology<'a> {
    red: &'a ReducedMatrix,
    n0: usize,
    generators: Vec<usize>,
    coordinate: Vec<Option<usize>>,
}

impl<'a> PrefixHomology<'a> {
    pub fn new(red: &'a ReducedMatrix, n0: usize) -> Self {
        assert!(red.v().is_some(), "prefix homology needs V");
        let mut coordinate = vec![None; n0];
        let mut generators = Vec::new();
        for j in 0..n0 {
            if red.is_zero(j) && red.killer(j).is_none_or(|k| k >= n0) {
                coordinate[j] = Some(generators.len());
                generators.push(j);
            }
        }
        PrefixHomology { red, n0, generators, coordinate }
    }

    /// Zero columns of the prefix that survive inside it, one per homology class.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Coordinates of a prefix cycle's class in the generator basis.
    pub fn coordinates(&self, cycle: &[usize]) -> Result<Column> {
        let mut x: Column = cycle.to_vec();
        let mut coords = Vec::new();
        while let Some(l) = low(&x) {
            if l >= self.n0 {
                return Err(Error::Inconsistent(format!("row {l} lies outside the prefix")));
            }
            if let Some(k) = self.red.killer(l).filter(|&k| k < self.n0) {
                add_into(&mut x, self.red.r().column(k));
            } else if let Some(c) = self.coordinate[l] {
                add_into(&mut x, self.red.v().expect("tracked").column(l));
                coords.push(c);
            } else {
                return Err(Error::Inconsistent(format!("chain with low {l} is not a cycle")));
            }
        }
        coords.sort_unstable();
        Ok(coords)
    }

    /// Classes killed by the columns `ks` (whose lows must lie in the prefix).
    pub fn killed(&self, ks: impl IntoIterator<Item = usize>) -> Result<Vec<Column>> {
        ks.into_iter().map(|k| self.coordinates(self.red.r().column(k))).collect()
    }
}

/// `dim(A ∩ B)` for subspaces spanned by independent coordinate vectors.
pub fn intersection_dim(n: usize, a: &[Column], b: &[Column]) -> usize {
    let both: Vec<Column> = a.iter().chain(b).cloned().collect();
    let joint = Gf2Matrix::from_columns(n, both).rank();
    let ra = Gf2Matrix::from_columns(n, a.to_vec()).rank();
    let rb = Gf2Matrix::from_columns(n, b.to_vec()).rank();
    ra + rb - joint
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Group {
    /// `X₀`
    Base,
    /// `X⁻ ∖ X₀`
    Minus,
    /// `X⁺ ∖ X₀`
    Plus,
}

/// Independent reductions of the `I ∪ II` and `I ∪ III` blocks of `M`.
#[derive(Clone, Debug)]
pub struct RelativeReducedMatrix {
    n0: usize,
    minus_cols: Vec<usize>,
    plus_cols: Vec<usize>,
    minus: ReducedMatrix,
    plus: ReducedMatrix,
}

impl RelativeReducedMatrix {
    pub fn minus(&self) -> &ReducedMatrix {
        &self.minus
    }

    pub fn plus(&self) -> &ReducedMatrix {
        &self.plus
    }

    /// Columns of `M` making up the `I ∪ II` block.
    pub fn minus_columns(&self) -> &[usize] {
        &self.minus_cols
    }

    pub fn plus_columns(&self) -> &[usize] {
        &self.plus_cols
    }

    pub fn base_len(&self) -> usize {
        self.n0
    }
}

/// `groups` must list all of `I`, then `II`, then `III`.
pub fn relative_reduce(m: &Gf2Matrix, groups: &[Group]) -> Result<RelativeReducedMatrix> {
    if groups.len() != m.ncols() {
        return Err(Error::Shape(format!("{} groups for {} columns", groups.len(), m.ncols())));
    }
    let rank = |g: Group| match g {
        Group::Base => 0,
        Group::Minus => 1,
        Group::Plus => 2,
    };
    if groups.windows(2).any(|w| rank(w[0]) > rank(w[1])) {
        return Err(Error::MalformedOrdering);
    }
    let n0 = groups.iter().filter(|&&g| g == Group::Base).count();
    let pick = |g: Group| -> Vec<usize> {
        (0..groups.len()).filter(|&j| groups[j] == Group::Base || groups[j] == g).collect()
    };
    let minus_cols = pick(Group::Minus);
    let plus_cols = pick(Group::Plus);
    let block = |cols: &[usize]| m.select_columns(cols).select_rows(cols);
    let minus = reduce_tracked(&block(&minus_cols));
    let plus = reduce_tracked(&block(&plus_cols));
    if !minus.r().is_reduced() || !plus.r().is_reduced() {
        return Err(Error::Inconsistent("relative blocks not reduced".into()));
    }
    Ok(RelativeReducedMatrix { n0, minus_cols, plus_cols, minus, plus })
}

/// `ω_r(i, j)` for `1 ≤ i ≤ P⁻`, `1 ≤ j ≤ P⁺`: classes of `H_r(X₀)` that die
/// at step `i` in `X⁻` and at step `j` in `X⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega {
    pub table: Vec<Vec<Vec<usize>>>,
}

impl Omega {
    pub fn get(&self, r: usize, i: usize, j: usize) -> usize {
        self.table.get(r).and_then(|t| t.get(i)).and_then(|t| t.get(j)).copied().unwrap_or(0)
    }
}

/// `steps[c]` is the step of column `c` of `M` (zero for `X₀`), `dims[c]` its dimension.
///
/// `ω` is the second difference of `dim(K⁻(i) ∩ K⁺(j))`, where `K^±(i)` is the
/// kernel of `H(X₀) → H(X^±_i)`.
pub fn simultaneous_numbers(rel: &RelativeReducedMatrix, steps: &[usize], dims: &[usize]) -> Result<Omega> {
    let n0 = rel.n0;
    let top = dims.iter().copied().max().unwrap_or(0);
    let pm = rel.minus_cols.iter().map(|&c| steps[c]).max().unwrap_or(0);
    let pp = rel.plus_cols.iter().map(|&c| steps[c]).max().unwrap_or(0);
    let base = PrefixHomology::new(&rel.minus, n0);
    let other = PrefixHomology::new(&rel.plus, n0);
    if base.generators() != other.generators() {
        return Err(Error::Inconsistent("the two blocks disagree on X0".into()));
    }
    let killed = |red: &ReducedMatrix, cols: &[usize]| -> Vec<(usize, usize, usize)> {
        (n0..red.ncols()).filter_map(|k| red.low(k).filter(|&l| l < n0).map(|l| (k, steps[cols[k]], dims[l]))).collect()
    };
    let kill_minus = killed(&rel.minus, &rel.minus_cols);
    let kill_plus = killed(&rel.plus, &rel.plus_cols);
    let g = base.rank();
    let mut table = vec![vec![vec![0; pp + 1]; pm + 1]; top + 1];
    for (r, layer) in table.iter_mut().enumerate() {
        let km: Vec<(usize, Column)> = kill_minus
            .iter()
            .filter(|t| t.2 == r)
            .map(|&(k, s, _)| Ok((s, base.coordinates(rel.minus.r().column(k))?)))
            .collect::<Result<_>>()?;
        let kp: Vec<(usize, Column)> = kill_plus
            .iter()
            .filter(|t| t.2 == r)
            .map(|&(k, s, _)| Ok((s, base.coordinates(rel.plus.r().column(k))?)))
            .collect::<Result<_>>()?;
        let d = |i: usize, j: usize| -> i64 {
            let a: Vec<Column> = km.iter().filter(|t| t.0 <= i).map(|t| t.1.clone()).collect();
            let b: Vec<Column> = kp.iter().filter(|t| t.0 <= j).map(|t| t.1.clone()).collect();
            intersection_dim(g, &a, &b) as i64
        };
        for i in 1..=pm {
            for j in 1..=pp {
                let w = d(i, j) - d(i - 1, j) - d(i, j - 1) + d(i - 1, j - 1);
                layer[i][j] = usize::try_from(w).map_err(|_| Error::NegativeCount { dim: r, left: i, right: j })?;
            }
        }
    }
    Ok(Omega { table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, FilteredComplex};

    fn hollow_triangle() -> Gf2Matrix {
        let k = build_complex([[1u32, 2], [1, 3], [2, 3]]).unwrap();
        k.boundary_gf2(&k.initial_order()).unwrap()
    }

    #[test]
    fn zero_matrix_unchanged() {
        let d = Gf2Matrix::zeros(3, 3);
        let r = reduce(&d);
        assert_eq!(r.r(), &d);
        assert!(r.lows().iter().all(Option::is_none));
    }

    #[test]
    fn single_edge() {
        let k = build_complex([[1u32, 2]]).unwrap();
        let r = reduce(&k.boundary_gf2(&k.initial_order()).unwrap());
        assert_eq!(r.lows(), vec![None, None, Some(1)]);
    }

    #[test]
    fn hollow_triangle_has_one_cycle() {
        let d = hollow_triangle();
        let r = reduce_tracked(&d);
        let zero_edges = (3..6).filter(|&j| r.is_zero(j)).count();
        assert_eq!(zero_edges, 1);
        assert_eq!(d.mul(r.v().unwrap()), *r.r());
        assert_eq!(betti_from_reduced(&r, &[0, 0, 0, 1, 1, 1]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn sphere_betti() {
        let k = build_complex([[1u32, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let d = k.boundary_gf2(&k.initial_order()).unwrap();
        let dims: Vec<usize> = k.cells().map(|s| s.dim()).collect();
        assert_eq!(betti_from_reduced(&reduce(&d), &dims).unwrap(), vec![1, 0, 1]);
        let disk = build_complex([[1u32, 2, 3]]).unwrap();
        let d = disk.boundary_gf2(&disk.initial_order()).unwrap();
        assert_eq!(betti_from_reduced(&reduce(&d), &[0, 0, 0, 1, 1, 1, 2]).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn triangle_rips_bars() {
        let k = build_complex([[1u32, 2, 3]]).unwrap();
        let f = FilteredComplex::new(k, vec![0, 0, 0, 1, 1, 1, 1], 1).unwrap();
        let r = reduce(&f.boundary_gf2());
        let mut bars = barcodes_from_reduced(&r, &f.ordered_steps(), &f.ordered_dims()).unwrap();
        bars.sort();
        assert_eq!(
            bars,
            vec![BarcodeInterval::closed(0, 0, 0), BarcodeInterval::closed(0, 0, 0), BarcodeInterval::infinite(0, 0)]
        );
    }

    #[test]
    fn killer_before_birth_is_rejected() {
        let d = Gf2Matrix::from_columns(3, vec![vec![], vec![], vec![0, 1]]);
        let r = reduce(&d);
        let err = barcodes_from_reduced(&r, &[0, 2, 1], &[0, 0, 1]);
        assert!(matches!(err, Err(Error::InvalidOrdering { .. })));
    }

    /// a, b in X₀; edge ab in X⁻; apex c with edges ac, bc in X⁺.
    fn fork() -> (Gf2Matrix, Vec<Group>) {
        let m = Gf2Matrix::from_columns(6, vec![vec![], vec![], vec![0, 1], vec![], vec![0, 3], vec![1, 3]]);
        let g = vec![Group::Base, Group::Base, Group::Minus, Group::Plus, Group::Plus, Group::Plus];
        (m, g)
    }

    #[test]
    fn plain_reduce_mixes_blocks() {
        let (m, _) = fork();
        let r = reduce(&m);
        assert!(r.is_zero(5), "plain reduction pulls the II column into a III column");
        let (m, g) = fork();
        let rel = relative_reduce(&m, &g).unwrap();
        assert_eq!(rel.plus().low(4), Some(1));
    }

    #[test]
    fn two_arcs_between_two_points() {
        let (m, g) = fork();
        let steps = [0, 0, 1, 1, 1, 1];
        let dims = [0, 0, 1, 0, 1, 1];
        let w = simultaneous_numbers(&relative_reduce(&m, &g).unwrap(), &steps, &dims).unwrap();
        assert_eq!(w.get(0, 1, 1), 1);
    }

    #[test]
    fn edge_on_both_sides() {
        let m = Gf2Matrix::from_columns(4, vec![vec![], vec![], vec![0, 1], vec![0, 1]]);
        let g = [Group::Base, Group::Base, Group::Minus, Group::Plus];
        let w = simultaneous_numbers(&relative_reduce(&m, &g).unwrap(), &[0, 0, 1, 1], &[0, 0, 1, 1]).unwrap();
        assert_eq!(w.get(0, 1, 1), 1);
    }

    #[test]
    fn nothing_dies_when_both_sides_are_base() {
        let d = hollow_triangle();
        let g = vec![Group::Base; 6];
        let w = simultaneous_numbers(&relative_reduce(&d, &g).unwrap(), &[0; 6], &[0, 0, 0, 1, 1, 1]).unwrap();
        assert!(w.table.iter().flatten().flatten().all(|&x| x == 0));
    }

    #[test]
    fn cone_kills_cycle_on_one_side_only() {
        // hollow triangle on 1,2,3 in X₀; cone with apex 4 in X⁺
        let k = build_complex([[1u32, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let base = ["1", "2", "3", "12", "13", "23"];
        let mut order: Vec<usize> = Vec::new();
        for (i, s) in k.cells().enumerate() {
            if base.contains(&alloc::format!("{s}").as_str()) {
                order.push(i);
            }
        }
        for i in 0..k.len() {
            if !order.contains(&i) {
                order.push(i);
            }
        }
        let o = crate::complex::Ordering { order: order.clone(), rule: crate::complex::OrderRule::Compatible };
        let m = k.boundary_gf2(&o).unwrap();
        let groups: Vec<Group> = (0..k.len()).map(|p| if p < 6 { Group::Base } else { Group::Plus }).collect();
        let dims: Vec<usize> = order.iter().map(|&i| k.cell(i).dim()).collect();
        let steps: Vec<usize> = (0..k.len()).map(|p| usize::from(p >= 6)).collect();
        let w = simultaneous_numbers(&relative_reduce(&m, &groups).unwrap(), &steps, &dims).unwrap();
        assert_eq!(w.get(1, 0, 1), 0);
        assert!(w.table.iter().flatten().flatten().all(|&x| x == 0));
    }
}
