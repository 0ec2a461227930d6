//! Sparse GF(2) matrices stored as sorted row-index columns.

use alloc::vec;
use alloc::vec::Vec;

/// A sorted set of row indices; addition is symmetric difference.
pub type Column = Vec<usize>;

/// `target += source` over GF(2).
pub fn add_into(target: &mut Column, source: &[usize]) {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        let (a, b) = (target[i], source[j]);
        if a < b {
            out.push(a);
            i += 1;
        } else if b < a {
            out.push(b);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&source[j..]);
    *target = out;
}

/// Row index of the lowest one.
pub fn low(col: &[usize]) -> Option<usize> {
    col.last().copied()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gf2Matrix {
    nrows: usize,
    cols: Vec<Column>,
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Gf2Matrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    /// Columns are sorted and deduplicated (pairs cancel).
    pub fn from_columns(nrows: usize, cols: Vec<Column>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                let mut out: Column = Vec::with_capacity(c.len());
                for r in c {
                    assert!(r < nrows, "row {r} out of range");
                    if out.last() == Some(&r) {
                        out.pop();
                    } else {
                        out.push(r);
                    }
                }
                out
            })
            .collect();
        Gf2Matrix { nrows, cols }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix { nrows: n, cols: (0..n).map(|i| vec![i]).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<Column> {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cols[j].binary_search(&i).is_ok()
    }

    pub fn low(&self, j: usize) -> Option<usize> {
        low(&self.cols[j])
    }

    /// `col j0 += col j`
    pub fn add_column(&mut self, j: usize, j0: usize) {
        assert_ne!(j, j0);
        let src = core::mem::take(&mut self.cols[j]);
        add_into(&mut self.cols[j0], &src);
        self.cols[j] = src;
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Strictly upper triangular: every entry (i, j) has i < j.
    pub fn is_strictly_upper(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| c.iter().all(|&i| i < j))
    }

    /// No two nonzero columns share a low.
    pub fn is_reduced(&self) -> bool {
        let mut seen = vec![false; self.nrows];
        for c in &self.cols {
            if let Some(l) = low(c) {
                if seen[l] {
                    return false;
                }
                seen[l] = true;
            }
        }
        true
    }

    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.ncols(), rhs.nrows, "shape mismatch in product");
        let cols = rhs
            .cols
            .iter()
            .map(|rc| {
                let mut acc = Vec::new();
                for &k in rc {
                    add_into(&mut acc, &self.cols[k]);
                }
                acc
            })
            .collect();
        Gf2Matrix { nrows: self.nrows, cols }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &i in c {
                cols[i].push(j);
            }
        }
        Gf2Matrix { nrows: self.ncols(), cols }
    }

    /// Rows restricted to `keep` (renumbered in order) and all columns kept.
    pub fn select_rows(&self, keep: &[usize]) -> Gf2Matrix {
        let mut map = vec![usize::MAX; self.nrows];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut v: Column = c.iter().map(|&i| map[i]).filter(|&i| i != usize::MAX).collect();
                v.sort_unstable();
                v
            })
            .collect();
        Gf2Matrix { nrows: keep.len(), cols }
    }

    pub fn select_columns(&self, keep: &[usize]) -> Gf2Matrix {
        Gf2Matrix { nrows: self.nrows, cols: keep.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    pub fn rank(&self) -> usize {
        let mut pivots: Vec<Option<Column>> = vec![None; self.nrows];
        let mut r = 0;
        for c in &self.cols {
            let mut c = c.clone();
            while let Some(l) = low(&c) {
                match &pivots[l] {
                    Some(p) => add_into(&mut c, p),
                    None => {
                        pivots[l] = Some(c);
                        r += 1;
                        break;
                    }
                }
            }
        }
        r
    }

    pub fn to_dense(&self) -> Vec<Vec<bool>> {
        let mut d = vec![vec![false; self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &i in c {
                d[i][j] = true;
            }
        }
        d
    }
}
