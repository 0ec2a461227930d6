//! Persistence vector spaces with explicit matrices, and their interval decomposition.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{BarcodeInterval, Field};
use crate::error::{Error, Result};

/// Row-major dense matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).fold(F::zero(), |acc, j| acc.add(&self.get(i, j).mul(&x[j])))).collect()
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self.get(row, col).inv();
            for j in 0..self.cols {
                let v = self.get(row, j).mul(&inv);
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let factor = self.get(i, col).clone();
                for j in 0..self.cols {
                    let v = self.get(i, j).sub(&factor.mul(self.get(row, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = DenseMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.echelon();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p >= n) {
            return None;
        }
        Some(DenseMatrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }
}

/// `V_0 → V_1 → … → V_M`, extended by identities after `V_M`.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceModule<F> {
    dims: Vec<usize>,
    maps: Vec<DenseMatrix<F>>,
}

impl<F: Field> PersistenceModule<F> {
    /// `maps[n]` sends `V_n` to `V_{n+1}`. Every map from index `stable_from`
    /// on must be invertible.
    pub fn new(dims: Vec<usize>, maps: Vec<DenseMatrix<F>>, stable_from: usize) -> Result<Self> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(Error::Shape(format!("{} spaces need {} maps", dims.len(), dims.len().saturating_sub(1))));
        }
        for (n, m) in maps.iter().enumerate() {
            if m.rows() != dims[n + 1] || m.cols() != dims[n] {
                return Err(Error::Shape(format!("map {n} is {}x{}", m.rows(), m.cols())));
            }
            if n >= stable_from && (dims[n] != dims[n + 1] || m.rank() != dims[n]) {
                return Err(Error::NotTame(format!("map {n} is not an isomorphism")));
            }
        }
        Ok(PersistenceModule { dims, maps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, n: usize) -> &DenseMatrix<F> {
        &self.maps[n]
    }

    /// Index of the last stored space.
    pub fn last(&self) -> usize {
        self.dims.len() - 1
    }

    /// `φ_{i,j}: V_i → V_j`; beyond the last space the maps are identities.
    pub fn composite(&self, i: usize, j: usize) -> DenseMatrix<F> {
        assert!(i <= j);
        let j = j.min(self.last());
        let i = i.min(j);
        let mut m = DenseMatrix::identity(self.dims[i]);
        for n in i..j {
            m = self.maps[n].mul(&m);
        }
        m
    }

    /// Same module in new coordinates: `V_n` is rewritten by `bases[n]`.
    pub fn conjugate(&self, bases: &[DenseMatrix<F>]) -> Result<Self> {
        if bases.len() != self.dims.len() {
            return Err(Error::Shape(format!("{} bases for {} spaces", bases.len(), self.dims.len())));
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for (n, m) in self.maps.iter().enumerate() {
            let inv = bases[n].inverse().ok_or_else(|| Error::Shape(format!("basis {n} is singular")))?;
            maps.push(bases[n + 1].mul(&m.mul(&inv)));
        }
        Ok(PersistenceModule { dims: self.dims.clone(), maps })
    }
}

/// Quotient of `κ^d` by the line through `v`, dropping the first coordinate where `v` is nonzero.
struct LineQuotient<F> {
    pivot: usize,
    v: Vec<F>,
}

impl<F: Field> LineQuotient<F> {
    fn new(v: Vec<F>) -> Self {
        let pivot = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
        LineQuotient { pivot, v }
    }

    fn project(&self) -> DenseMatrix<F> {
        let d = self.v.len();
        let scale = self.v[self.pivot].inv();
        DenseMatrix::from_fn(d - 1, d, |i, j| {
            let row = if i < self.pivot { i } else { i + 1 };
            let e = if row == j { F::one() } else { F::zero() };
            if j == self.pivot {
                e.sub(&self.v[row].mul(&scale))
            } else {
                e
            }
        })
    }

    fn section(&self) -> DenseMatrix<F> {
        let d = self.v.len();
        DenseMatrix::from_fn(d, d - 1, |i, j| {
            let col = if j < self.pivot { j } else { j + 1 };
            if i == col {
                F::one()
            } else {
                F::zero()
            }
        })
    }
}

/// Splits off one basic summand at a time, generated by the first basis
/// vector of the earliest nonzero space, until nothing is left.
pub fn decompose_module<F: Field>(module: &PersistenceModule<F>) -> Vec<BarcodeInterval<usize>> {
    let mut dims = module.dims.clone();
    let mut maps = module.maps.clone();
    let last = dims.len() - 1;
    let mut bars = Vec::new();
    while let Some(k) = dims.iter().position(|&d| d > 0) {
        let mut v = vec![F::zero(); dims[k]];
        v[0] = F::one();
        let mut orbit = vec![v];
        let mut death = None;
        for n in k..last {
            let next = maps[n].apply(&orbit[orbit.len() - 1]);
            if next.iter().all(F::is_zero) {
                death = Some(n + 1);
                break;
            }
            orbit.push(next);
        }
        match death {
            Some(j) => bars.push(BarcodeInterval::closed(0, k, j - 1)),
            None => bars.push(BarcodeInterval::infinite(0, k)),
        }
        let quotients: Vec<LineQuotient<F>> = orbit.into_iter().map(LineQuotient::new).collect();
        let end = k + quotients.len();
        for n in k.saturating_sub(1)..last {
            let pre = if n >= k && n < end { Some(quotients[n - k].section()) } else { None };
            let post = if n + 1 >= k && n + 1 < end { Some(quotients[n + 1 - k].project()) } else { None };
            if pre.is_none() && post.is_none() {
                continue;
            }
            let mut m = maps[n].clone();
            if let Some(s) = pre {
                m = m.mul(&s);
            }
            if let Some(q) = post {
                m = q.mul(&m);
            }
            maps[n] = m;
        }
        for n in k..end {
            dims[n] -= 1;
        }
    }
    bars
}

#[cfg(test)]
mod tests {
    use super::super::{barcode_multiset_equal, Gf2, Rational};
    use super::*;

    fn scalar<F: Field>(v: i64) -> DenseMatrix<F> {
        DenseMatrix::from_fn(1, 1, |_, _| F::from_i64(v))
    }

    #[test]
    fn free_module() {
        let m = PersistenceModule::new(vec![1, 1, 1], vec![scalar::<Gf2>(1), scalar(1)], 0).unwrap();
        assert_eq!(decompose_module(&m), vec![BarcodeInterval::infinite(0, 0)]);
    }

    #[test]
    fn zero_map_splits() {
        let m = PersistenceModule::new(vec![1, 1, 1], vec![scalar::<Rational>(0), scalar(1)], 1).unwrap();
        let bars = decompose_module(&m);
        assert!(barcode_multiset_equal(&bars, &[BarcodeInterval::closed(0, 0, 0), BarcodeInterval::infinite(0, 1)]));
    }

    #[test]
    fn two_points_merge() {
        let merge = DenseMatrix::from_fn(1, 2, |_, _| Gf2(true));
        let m = PersistenceModule::new(vec![2, 1], vec![merge], 1).unwrap();
        let bars = decompose_module(&m);
        assert!(barcode_multiset_equal(&bars, &[BarcodeInterval::closed(0, 0, 0), BarcodeInterval::infinite(0, 0)]));
    }

    #[test]
    fn non_tame_tail_rejected() {
        let r = PersistenceModule::new(vec![1, 1], vec![scalar::<Gf2>(0)], 0);
        assert!(matches!(r, Err(Error::NotTame(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = DenseMatrix::from_fn(2, 2, |i, j| Rational::from_i64([[2, 1], [1, 1]][i][j]));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), DenseMatrix::identity(2));
        assert!(DenseMatrix::<Rational>::zeros(2, 2).inverse().is_none());
        assert_eq!(DenseMatrix::<Gf2>::zeros(0, 0).inverse(), Some(DenseMatrix::identity(0)));
    }
}
