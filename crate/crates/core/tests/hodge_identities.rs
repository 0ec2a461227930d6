use nalgebra::DMatrix;
use proptest::prelude::*;

use persistor_core::algebra::{Field, Rational};
use persistor_core::complex::FilteredComplex;
use persistor_core::hodge::{beta_table, betti_real, boundaries_at, hodge_projections, orthonormalize, RANK_TOL};
use persistor_testkit::linalg::rank;
use persistor_testkit::rips_corpus;

fn exact_rank(m: &DMatrix<f64>) -> usize {
    let cols: Vec<Vec<Rational>> =
        m.column_iter().map(|c| c.iter().map(|&x| Rational::from_i64(x as i64)).collect()).collect();
    rank(&cols)
}

fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.amax()
}

fn full_boundaries(f: &FilteredComplex) -> Vec<DMatrix<f64>> {
    let top = f.complex().dim().unwrap_or(0);
    (0..=top + 1).map(|d| f.boundary_real(d)).collect()
}

#[derive(Default)]
struct Worst {
    sum: f64,
    idem: f64,
    orth: f64,
    sym: f64,
    trace: f64,
}

#[test]
fn projections_decompose_the_chain_space() {
    let mut w = Worst::default();
    for (k, case) in rips_corpus(11, 200, 10, 3).iter().enumerate() {
        let f = &case.filtration;
        let full = full_boundaries(f);
        let table = f.dimension_table();
        for r in 0..table.len() {
            for s in 0..=f.steps() {
                let (d_next, d_r) = boundaries_at(f, &full, &table, r, s);
                let n = table[r][s];
                let h = hodge_projections(&d_next, &d_r, RANK_TOL).unwrap();
                let (p, m, z) = (&h.plus, &h.minus, &h.harmonic);
                let id = DMatrix::<f64>::identity(n, n);
                w.sum = w.sum.max(inf_norm(&(p + m + z - &id)));
                for q in [p, m, z] {
                    w.idem = w.idem.max(inf_norm(&(q * q - q)));
                    w.sym = w.sym.max(inf_norm(&(q - q.transpose())));
                }
                for (a, b) in [(p, m), (p, z), (m, z)] {
                    w.orth = w.orth.max(inf_norm(&(a * b)));
                }
                let b = n - exact_rank(&d_next) - exact_rank(&d_r);
                w.trace = w.trace.max((z.trace() - b as f64).abs());
                assert!((z.trace() - b as f64).abs() <= 1e-4, "case {k} r {r} s {s}");
            }
        }
    }
    eprintln!("residuals: sum {:e} idem {:e} orth {:e} sym {:e} trace {:e}", w.sum, w.idem, w.orth, w.sym, w.trace);
    assert!(w.sum <= 1e-6 && w.idem <= 1e-6 && w.orth <= 1e-6 && w.sym <= 1e-6);
}

#[test]
fn beta_is_monotone_and_diagonal_is_betti() {
    for case in rips_corpus(12, 100, 10, 3) {
        let f = &case.filtration;
        let beta = beta_table(f, RANK_TOL).unwrap();
        assert!(beta.is_monotone());
        for s in 0..=f.steps() {
            let k = f.at_step(s);
            for r in 0..beta.dims() {
                assert_eq!(beta.get(r, s, Some(s)), betti_real(&k, r, RANK_TOL));
                for t in s..f.steps() {
                    assert!(beta.get(r, s, Some(t)) >= beta.get(r, s, Some(t + 1)));
                    if s > 0 {
                        assert!(beta.get(r, s - 1, Some(t)) <= beta.get(r, s, Some(t)));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frames_are_orthonormal_and_span(
        rows in 1usize..8,
        cols in 1usize..8,
        entries in prop::collection::vec(-3i32..=3, 64),
        dup in any::<bool>(),
    ) {
        let mut a = DMatrix::from_fn(rows, cols, |i, j| entries[(i * cols + j) % 64] as f64);
        if dup && cols > 1 {
            let c0 = a.column(0).clone_owned();
            a.set_column(cols - 1, &(c0 * 2.0));
        }
        let q = orthonormalize(&a, RANK_TOL).q;
        let k = q.ncols();
        prop_assert!((q.transpose() * &q - DMatrix::<f64>::identity(k, k)).amax() <= 1e-9);
        prop_assert!((&q * (q.transpose() * &a) - &a).amax() <= 1e-8);
        prop_assert_eq!(k, exact_rank(&a));
    }
}
