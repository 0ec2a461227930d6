//! Small exact linear algebra over any [`Field`].

use std::collections::BTreeMap;

use persistor_core::algebra::Field;

/// Sparse row, sorted by column.
pub type SparseRow<F> = Vec<(usize, F)>;

fn axpy<F: Field>(row: &SparseRow<F>, c: &F, basis: &SparseRow<F>) -> SparseRow<F> {
    // row - c * basis
    let mut out = Vec::with_capacity(row.len() + basis.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < basis.len() {
        let take_row = j == basis.len() || (i < row.len() && row[i].0 < basis[j].0);
        let take_basis = i == row.len() || (j < basis.len() && basis[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_basis {
            out.push((basis[j].0, F::zero().sub(&c.mul(&basis[j].1))));
            j += 1;
        } else {
            let v = row[i].1.sub(&c.mul(&basis[j].1));
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row-echelon basis grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon<F> {
    rows: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `row`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, mut row: SparseRow<F>) -> bool {
        row.retain(|x| !x.1.is_zero());
        while let Some((p, c)) = row.first().cloned() {
            match self.rows.get(&p) {
                Some(b) => row = axpy(&row, &c, b),
                None => {
                    let inv = c.inv();
                    let row = row.into_iter().map(|(k, v)| (k, v.mul(&inv))).collect();
                    self.rows.insert(p, row);
                    return true;
                }
            }
        }
        false
    }
}

/// Dense row-major matrix used by the homology-module builder.
pub type Dense<F> = Vec<Vec<F>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Dense<F>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{x : A x = 0}` for `A` with `cols` columns.
pub fn kernel<F: Field>(a: &Dense<F>, cols: usize) -> Vec<Vec<F>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![F::zero(); cols];
            x[fc] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = F::zero().sub(&m[row][fc]);
            }
            x
        })
        .collect()
}

/// Solves `[columns] · c = b`; `None` when `b` is outside the span.
pub fn solve<F: Field>(columns: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = columns.len();
    let rows = b.len();
    let mut m: Dense<F> = (0..rows)
        .map(|i| {
            let mut r: Vec<F> = columns.iter().map(|c| c[i].clone()).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][n].clone();
    }
    Some(x)
}

pub fn rank<F: Field>(columns: &[Vec<F>]) -> usize {
    let mut e = Echelon::new();
    columns
        .iter()
        .filter(|c| e.insert(c.iter().enumerate().filter(|x| !x.1.is_zero()).map(|(k, v)| (k, v.clone())).collect()))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use persistor_core::algebra::{Gf2, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn echelon_rank() {
        let mut e: Echelon<Rational> = Echelon::new();
        assert!(e.insert(vec![(0, q(1)), (1, q(1))]));
        assert!(e.insert(vec![(1, q(1)), (2, q(1))]));
        assert!(!e.insert(vec![(0, q(1)), (2, q(-1))]));
        assert!(e.insert(vec![(0, q(1)), (2, q(1))]));
        let mut g: Echelon<Gf2> = Echelon::new();
        assert!(g.insert(vec![(0, Gf2(true)), (1, Gf2(true))]));
        assert!(g.insert(vec![(1, Gf2(true)), (2, Gf2(true))]));
        assert!(!g.insert(vec![(0, Gf2(true)), (2, Gf2(true))]));
    }

    #[test]
    fn kernel_and_solve() {
        let a = vec![vec![q(1), q(-1), q(0)], vec![q(0), q(1), q(-1)]];
        let k = kernel(&a, 3);
        assert_eq!(k, vec![vec![q(1), q(1), q(1)]]);
        let cols = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        assert_eq!(solve(&cols, &[q(3), q(2)]), Some(vec![q(1), q(2)]));
        assert_eq!(solve(&[vec![q(1), q(1)]], &[q(1), q(0)]), None);
        assert_eq!(rank(&[vec![q(2), q(4)], vec![q(1), q(2)]]), 1);
    }
}
