//! Real coefficients through orthogonal projections onto harmonic chains.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};

pub use crate::algebra::mu_from_beta;
use crate::algebra::BetaTable;
use crate::complex::{FilteredComplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Eigenvalue threshold for numerical rank.
pub const RANK_TOL: f64 = 1e-8;

/// Orthonormal columns spanning the image of a matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalFrame {
    pub q: DMatrix<f64>,
}

impl OrthonormalFrame {
    pub fn rank(&self) -> usize {
        self.q.ncols()
    }
}

/// Modified Gram-Schmidt with column pivoting and a second orthogonalization
/// pass; a column is dropped once its residual norm is at most `sqrt(tol)`.
pub fn orthonormalize(a: &DMatrix<f64>, tol: f64) -> OrthonormalFrame {
    let (m, n) = a.shape();
    let drop = libm::sqrt(tol);
    let mut work: Vec<nalgebra::DVector<f64>> = (0..n).map(|j| a.column(j).into_owned()).collect();
    let mut basis: Vec<nalgebra::DVector<f64>> = Vec::new();
    while !work.is_empty() && basis.len() < m {
        let (best, norm) =
            work.iter()
                .enumerate()
                .map(|(i, v)| (i, v.norm()))
                .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if norm <= drop {
            break;
        }
        let mut q = work.swap_remove(best);
        for b in &basis {
            let c = b.dot(&q);
            q.axpy(-c, b, 1.0);
        }
        let nq = q.norm();
        if nq <= drop {
            continue;
        }
        q /= nq;
        for _ in 0..2 {
            for w in work.iter_mut() {
                let c = q.dot(w);
                w.axpy(-c, &q, 1.0);
            }
        }
        basis.push(q);
    }
    let q = if basis.is_empty() { DMatrix::zeros(m, 0) } else { DMatrix::from_columns(&basis) };
    OrthonormalFrame { q }
}

/// `[A][A]ᵀ`, the orthogonal projection onto `im(A)`.
pub fn projection_onto_image(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let f = orthonormalize(a, tol);
    &f.q * f.q.transpose()
}

/// Number of eigenvalues of `AAᵀ` (or `AᵀA`, whichever is smaller) above `tol`.
pub fn rank_psd(a: &DMatrix<f64>, tol: f64) -> usize {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return 0;
    }
    let g = if m <= n { a * a.transpose() } else { a.transpose() * a };
    SymmetricEigen::new(g).eigenvalues.iter().filter(|&&x| x > tol).count()
}

/// The three projections splitting `C_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeProjections {
    /// Onto `im ∂_{r+1}`.
    pub plus: DMatrix<f64>,
    /// Onto `im ∂_rᵀ`.
    pub minus: DMatrix<f64>,
    /// Onto the harmonic chains.
    pub harmonic: DMatrix<f64>,
}

/// `d_next` is `∂_{r+1}` (`n_r` rows) and `d_r` is `∂_r` (`n_r` columns).
pub fn hodge_projections(d_next: &DMatrix<f64>, d_r: &DMatrix<f64>, tol: f64) -> Result<HodgeProjections> {
    let n = d_next.nrows();
    if d_r.ncols() != n {
        return Err(Error::Shape(format!("∂_(r+1) has {n} rows but ∂_r has {} columns", d_r.ncols())));
    }
    let plus = projection_onto_image(d_next, tol);
    let minus = projection_onto_image(&d_r.transpose(), tol);
    let harmonic = DMatrix::identity(n, n) - &plus - &minus;
    Ok(HodgeProjections { plus, minus, harmonic })
}

pub fn harmonic_projection(d_next: &DMatrix<f64>, d_r: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    hodge_projections(d_next, d_r, tol).map(|p| p.harmonic)
}

/// `dim C_r - rank ∂_{r+1} - rank ∂_r`.
pub fn betti_real(complex: &SimplicialComplex, r: usize, tol: f64) -> usize {
    let n = complex.count(r);
    n - rank_psd(&complex.boundary_real(r + 1), tol) - rank_psd(&complex.boundary_real(r), tol)
}

fn block(m: &DMatrix<f64>, rows: usize, cols: usize) -> DMatrix<f64> {
    m.view((0, 0), (rows, cols)).into_owned()
}

/// Upper-left blocks of the filtration-ordered boundaries at step `s`:
/// `(∂_{r+1}^s, ∂_r^s)`.
pub fn boundaries_at(
    f: &FilteredComplex,
    full: &[DMatrix<f64>],
    table: &[Vec<usize>],
    r: usize,
    s: usize,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = |d: usize| table.get(d).map_or(0, |row| row[s]);
    let d_next = block(&full[r + 1], n(r), n(r + 1));
    let d_r = if r == 0 { DMatrix::zeros(0, n(0)) } else { block(&full[r], n(r - 1), n(r)) };
    debug_assert_eq!(full[r + 1].nrows(), f.complex().count(r));
    (d_next, d_r)
}

/// `β_r(s, t) = rank(p_H^t ∘ i ∘ p_H^s)` for all `s ≤ t ≤ P`; `β_r(s, ∞) = β_r(s, P)`.
pub fn beta_table(f: &FilteredComplex, tol: f64) -> Result<BetaTable> {
    let top = f.complex().dim().unwrap_or(0);
    let p = f.steps();
    let table = f.dimension_table();
    let full: Vec<DMatrix<f64>> = (0..=top + 2).map(|r| f.boundary_real(r)).collect();
    let mut beta = BetaTable::zeros(top + 1, p);
    for r in 0..=top {
        let mut harmonic = Vec::with_capacity(p + 1);
        let mut betti = Vec::with_capacity(p + 1);
        for s in 0..=p {
            let (d_next, d_r) = boundaries_at(f, &full, &table, r, s);
            let b = d_next.nrows() - rank_psd(&d_next, tol) - rank_psd(&d_r, tol);
            harmonic.push(harmonic_projection(&d_next, &d_r, tol)?);
            betti.push(b);
        }
        for s in 0..=p {
            beta.set(r, s, Some(s), betti[s]);
            let ns = table[r][s];
            for t in s + 1..=p {
                if beta.get(r, s, Some(t - 1)) == 0 || betti[t] == 0 {
                    break;
                }
                let composed = harmonic[t].columns(0, ns) * &harmonic[s];
                beta.set(r, s, Some(t), rank_psd(&composed, tol));
            }
        }
    }
    beta.close_at_last_step();
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use alloc::vec;

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0, |a, &x| a.max(x.abs()))
    }

    #[test]
    fn identity_frame() {
        let f = orthonormalize(&DMatrix::identity(3, 3), RANK_TOL);
        assert_eq!(f.rank(), 3);
        assert!(max_abs(&(f.q.transpose() * &f.q - DMatrix::<f64>::identity(3, 3))) < 1e-12);
    }

    #[test]
    fn repeated_column() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 2.0, 2.0]);
        assert_eq!(orthonormalize(&a, RANK_TOL).rank(), 1);
    }

    #[test]
    fn hollow_triangle_frame_and_harmonic() {
        let k = build_complex([[1u32, 2], [1, 3], [2, 3]]).unwrap();
        assert_eq!(orthonormalize(&k.boundary_real(1), RANK_TOL).rank(), 2);
        let h = harmonic_projection(&k.boundary_real(2), &k.boundary_real(1), RANK_TOL).unwrap();
        assert!((h.trace() - 1.0).abs() < 1e-12);
        // the cycle 12 - 13 + 23
        let z = nalgebra::DVector::from_vec(vec![1.0, -1.0, 1.0]);
        assert!((&h * &z - &z).amax() < 1e-12);
    }

    #[test]
    fn disk_has_no_harmonic_edges() {
        let k = build_complex([[1u32, 2, 3]]).unwrap();
        let p = hodge_projections(&k.boundary_real(2), &k.boundary_real(1), RANK_TOL).unwrap();
        assert!(p.harmonic.trace().abs() < 1e-12);
        assert_eq!(rank_psd(&p.plus, RANK_TOL), 1);
        let h0 = harmonic_projection(&k.boundary_real(1), &k.boundary_real(0), RANK_TOL).unwrap();
        assert!((h0.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projections_of_small_matrices() {
        let e1 = DMatrix::from_column_slice(2, 1, &[1.0, 0.0]);
        assert_eq!(projection_onto_image(&e1, RANK_TOL), DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]));
        let full = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0]);
        assert!(max_abs(&(projection_onto_image(&full, RANK_TOL) - DMatrix::<f64>::identity(2, 2))) < 1e-12);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_psd(&DMatrix::zeros(3, 4), RANK_TOL), 0);
        assert_eq!(rank_psd(&DMatrix::identity(4, 4), RANK_TOL), 4);
        let k = build_complex([[1u32, 2, 3, 4]]).unwrap();
        let r: Vec<usize> = (1..=3).map(|d| rank_psd(&k.boundary_real(d), RANK_TOL)).collect();
        assert_eq!(r, vec![3, 3, 1]);
    }

    #[test]
    fn betti_numbers() {
        let sphere = build_complex([[1u32, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let b: Vec<usize> = (0..3).map(|r| betti_real(&sphere, r, RANK_TOL)).collect();
        assert_eq!(b, vec![1, 0, 1]);
        let ex = build_complex([&[1u32, 2][..], &[1, 3], &[2, 3, 5], &[2, 4], &[3, 6], &[4, 5], &[5, 6]]).unwrap();
        assert_eq!((betti_real(&ex, 0, RANK_TOL), betti_real(&ex, 1, RANK_TOL)), (1, 3));
    }

    #[test]
    fn constant_filtration() {
        let k = build_complex([[1u32, 2], [2, 3], [1, 3]]).unwrap();
        let n = k.len();
        let f = FilteredComplex::new(k, vec![0; n], 2).unwrap();
        let b = beta_table(&f, RANK_TOL).unwrap();
        for s in 0..=2 {
            for t in s..=2 {
                assert_eq!((b.get(0, s, Some(t)), b.get(1, s, Some(t))), (1, 1));
            }
        }
        let mu = mu_from_beta(&b).unwrap();
        assert_eq!((mu.get(0, 0, None), mu.get(1, 0, None)), (1, 1));
        assert_eq!(mu.to_barcode().len(), 2);
    }

    #[test]
    fn two_points_joined() {
        let k = build_complex([[1u32, 2]]).unwrap();
        let f = FilteredComplex::new(k, vec![0, 0, 1], 1).unwrap();
        let b = beta_table(&f, RANK_TOL).unwrap();
        assert_eq!((b.get(0, 0, Some(0)), b.get(0, 0, Some(1)), b.get(0, 1, Some(1))), (2, 1, 1));
        let mu = mu_from_beta(&b).unwrap();
        assert_eq!((mu.get(0, 0, Some(0)), mu.get(0, 0, None)), (1, 1));
        assert_eq!(mu.to_barcode().iter().map(|b| b.mult).sum::<usize>(), 2);
    }

    #[test]
    fn shape_mismatch() {
        let r = hodge_projections(&DMatrix::zeros(3, 1), &DMatrix::zeros(1, 2), RANK_TOL);
        assert!(matches!(r, Err(Error::Shape(_))));
    }
}
