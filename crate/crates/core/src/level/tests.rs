use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::algebra::{BarcodeInterval, Endpoint};
use crate::complex::{build_complex, Cell, Level};
use crate::gf2::Gf2Matrix;
use crate::reduction::reduce;

fn canonical(simplices: &[&[u32]]) -> PLMap {
    PLMap::canonical(build_complex(simplices.iter().copied()).unwrap()).unwrap()
}

fn example() -> PLMap {
    canonical(&[&[1, 2], &[1, 3], &[2, 4], &[3, 6], &[4, 5], &[5, 6], &[2, 3, 5]])
}

fn tetra_surface() -> PLMap {
    canonical(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
}

fn edge() -> PLMap {
    canonical(&[&[1, 2]])
}

fn v(k: u32) -> Level {
    Level::at_vertex(k)
}

fn names(cells: &[Cell]) -> Vec<String> {
    cells.iter().map(ToString::to_string).collect()
}

fn up(dim: usize, i: u32, b: Option<u32>) -> BarcodeInterval<Level> {
    let right = b.map_or(Endpoint::Infinite, |b| Endpoint::Open(v(b)));
    BarcodeInterval::new(dim, Endpoint::Closed(v(i)), right)
}

fn down(dim: usize, a: Option<u32>, i: u32) -> BarcodeInterval<Level> {
    let left = a.map_or(Endpoint::Infinite, |a| Endpoint::Open(v(a)));
    BarcodeInterval::new(dim, left, Endpoint::Closed(v(i)))
}

fn sorted(mut b: Vec<BarcodeInterval<Level>>) -> Vec<BarcodeInterval<Level>> {
    b.sort();
    b
}

#[test]
fn relabels_by_value() {
    let k = build_complex([[7u32, 8], [8, 9]]).unwrap();
    let f = check_generic(&k, &[(7, 3.0), (8, 1.0), (9, 2.0)]).unwrap();
    assert_eq!(f.values(), &[1.0, 2.0, 3.0]);
    assert_eq!((f.original_id(1), f.original_id(2), f.original_id(3)), (8, 9, 7));
    let edges: Vec<String> = f.complex().simplices(1).iter().map(ToString::to_string).collect();
    assert_eq!(edges, ["12", "13"]);
    assert_eq!(f.value_of(Level(3)), 1.5);
    assert_eq!((f.value_of(Level(0)), f.value_of(Level(8))), (0.0, 4.0));
}

#[test]
fn rejects_equal_values() {
    let k = build_complex([[1u32, 2], [2, 3]]).unwrap();
    let e = check_generic(&k, &[(1, 1.0), (2, 1.0), (3, 2.0)]).unwrap_err();
    assert!(matches!(e, crate::Error::NonGeneric(1, 2, _)));
    assert!(matches!(check_generic(&k, &[(1, 1.0), (2, 2.0)]), Err(crate::Error::MissingValue(3))));
    let p = perturb(&[(1, 1.0), (2, 1.0), (3, 2.0)], 1e-6);
    assert!(check_generic(&k, &p).is_ok());
}

#[test]
fn level_and_slab_complexes() {
    let e = edge();
    let x = level_complex(&e, Level(3));
    assert_eq!(names(x.cells()), ["12|1.5"]);
    assert_eq!(x.betti().unwrap(), vec![1]);
    assert_eq!(names(level_complex(&e, v(1)).cells()), ["1"]);
    let s = slab_complex(&e, Level(3), Level(3));
    assert_eq!(s, level_complex(&e, Level(3)));

    let f = tetra_surface();
    let ring = level_complex(&f, Level(5));
    assert_eq!(ring.len(), 8);
    assert_eq!(ring.betti().unwrap(), vec![1, 1]);
    assert_eq!(level_complex(&f, v(1)).len(), 1);
    assert_eq!(slab_complex(&f, Level(3), Level(7)).betti().unwrap(), vec![1, 1, 0]);
}

#[test]
fn y_and_z_match_slabs() {
    let f = tetra_surface();
    let y = y_complex(&f, Level(3), v(4));
    assert_eq!(y.cells(), upper_complex(&f, Level(3)).cells());
    for (s, t) in [(3, 5), (3, 6), (4, 7), (2, 8), (5, 7)] {
        let (s, t) = (Level(s), Level(t));
        let x = slab_complex(&f, s, t).betti().unwrap();
        let mut yb = y_complex(&f, s, t).betti().unwrap();
        let mut zb = z_complex(&f, s, t).betti().unwrap();
        yb.resize(x.len(), 0);
        zb.resize(x.len(), 0);
        assert_eq!((yb, zb), (x.clone(), x));
    }
    let e = edge();
    assert_eq!(names(y_complex(&e, Level(3), v(2)).cells()), ["2", "12|1.5", "12|1.5,inf"]);
}

#[test]
fn example_classes_and_positive_order() {
    let f = example();
    let b = build_boundary_plus(&f, v(4)).unwrap();
    assert_eq!(names(b.class(0)), ["4"]);
    assert_eq!(names(b.class(1)), ["25|4", "35|4", "36|4", "235|4"]);
    assert_eq!(names(b.class(2)), ["25|4,inf", "35|4,inf", "36|4,inf", "235|4,inf"]);
    assert_eq!(names(b.class(3)), ["45"]);
    assert_eq!(names(b.class(4)), ["5", "6", "56"]);
    let (cells, _) = b.reordered(&positive_order(&b)).unwrap();
    assert_eq!(
        names(&cells),
        ["4", "25|4", "35|4", "36|4", "235|4", "5", "25|4,inf", "35|4,inf", "45", "235|4,inf", "6", "36|4,inf", "56"]
    );
}

#[test]
fn example_reduced_matrix() {
    let f = example();
    let red = reduce_side(&f, v(4), Side::Positive).unwrap();
    let pos = |name: &str| red.cells.iter().position(|c| c.to_string() == name).unwrap();
    let mut expected: Vec<Vec<usize>> = vec![Vec::new(); red.cells.len()];
    for (col, rows) in [
        ("235|4", &["25|4", "35|4"][..]),
        ("25|4,inf", &["25|4", "5"]),
        ("45", &["4", "25|4"]),
        ("235|4,inf", &["235|4", "25|4,inf", "35|4,inf"]),
        ("36|4,inf", &["36|4", "6"]),
        ("56", &["25|4", "36|4"]),
    ] {
        expected[pos(col)] = rows.iter().map(|r| pos(r)).collect();
    }
    assert_eq!(red.reduced.r(), &Gf2Matrix::from_columns(red.cells.len(), expected));
    assert_eq!(sorted(read_positive_barcode(&red)), sorted(vec![up(0, 4, None), up(0, 4, Some(5)), up(0, 4, Some(6))]));
}

#[test]
fn single_vertex_block() {
    let f = canonical(&[&[1]]);
    let b = build_boundary_plus(&f, v(1)).unwrap();
    assert_eq!((b.classes, b.matrix.nrows(), b.matrix.ncols()), ([1, 0, 0, 0, 0], 1, 1));
    assert!(b.matrix.is_zero());
}

#[test]
fn reduce_level_keeps_reduced_input() {
    let m = Gf2Matrix::from_columns(3, vec![vec![], vec![0], vec![1]]);
    assert_eq!(reduce_level(&m, false).r(), &m);
    let m = Gf2Matrix::from_columns(4, vec![vec![], vec![], vec![0, 1], vec![0, 1], vec![1]]);
    let a = reduce_level(&m, true);
    assert_eq!(a.lows(), reduce(&m).lows());
    assert_eq!(&m.mul(a.v().unwrap()), a.r());
}

#[test]
fn tetrahedron_surface_posneg() {
    let f = tetra_surface();
    for i in 1..=4 {
        let p = posneg_at(&f, v(i)).unwrap();
        let p0: Vec<_> = p.positive.iter().filter(|b| b.dim == 0).copied().collect();
        let n0: Vec<_> = p.negative.iter().filter(|b| b.dim == 0).copied().collect();
        assert_eq!((p0, n0), (vec![up(0, i, None)], vec![down(0, None, i)]));
        let p1: Vec<_> = p.positive.iter().filter(|b| b.dim == 1).copied().collect();
        let n1: Vec<_> = p.negative.iter().filter(|b| b.dim == 1).copied().collect();
        match i {
            2 | 3 => assert_eq!((p1, n1), (vec![up(1, i, Some(4))], vec![down(1, Some(1), i)])),
            _ => assert!(p1.is_empty() && n1.is_empty()),
        }
    }
}

#[test]
fn relevant_numbers_at_a_midpoint() {
    let f = tetra_surface();
    let p = posneg_at(&f, Level(5)).unwrap();
    assert_eq!((p.l(1), p.l_plus(1, v(4)), p.l_minus(1, v(1)), p.e(1, v(4), v(1))), (1, 1, 1, 1));
    assert_eq!((p.l_plus(1, v(3)), p.l_minus(1, v(2))), (0, 0));
    assert_eq!(p.paired_intervals(1), vec![(Some(v(1)), Some(v(4)), 1)]);
    let e = posneg_at(&edge(), Level(3)).unwrap();
    assert_eq!((e.l(0), e.l_plus(0, v(2)), e.l_minus(0, v(1))), (1, 0, 0));
}

#[test]
fn edge_posneg() {
    let p = posneg_at(&edge(), v(1)).unwrap();
    assert_eq!((p.positive.clone(), p.negative.clone()), (vec![up(0, 1, None)], vec![down(0, None, 1)]));
}

#[test]
fn both_methods_on_tetrahedron_surface() {
    let f = tetra_surface();
    let m1 = i_numbers_method1(&f).unwrap();
    let m2 = i_numbers_method2(&f).unwrap();
    assert_eq!(m1.grid, m2.grid);
    assert_eq!(m1.barcode, m2.barcode);
    let bars = m1.barcode.bars();
    assert_eq!(
        bars,
        vec![
            BarcodeInterval::closed(0, v(1), v(4)),
            BarcodeInterval::new(1, Endpoint::Open(v(1)), Endpoint::Open(v(4))),
        ]
    );
    assert_eq!(m1.grid.get(1, Level(3), Level(7)), 1);
    assert!(m2.reductions <= 4 * 4 / 2 + 2 * 4);
    assert!(m1.reductions > m2.reductions);
}

#[test]
fn edge_level_bar() {
    let run = i_numbers_method1(&edge()).unwrap();
    assert_eq!(run.barcode.bars(), vec![BarcodeInterval::closed(0, v(1), v(2))]);
    assert_eq!(run.grid.get(0, Level(3), Level(3)), 1);
    assert_eq!(i_numbers_method2(&edge()).unwrap().barcode, run.barcode);
}

#[test]
fn sublevel_routes() {
    let f = tetra_surface();
    let lb = i_numbers_method2(&f).unwrap().barcode;
    let mu = sublevel_from_level(&lb);
    assert_eq!((mu.get(0, 0, None), mu.get(2, 3, None)), (1, 1));
    assert_eq!(mu.to_barcode().len(), 2);
    assert_eq!(sublevel_barcodes_direct(&f).unwrap(), mu);
    let e = edge();
    let mu = sublevel_barcodes_direct(&e).unwrap();
    assert_eq!(mu.to_barcode(), vec![BarcodeInterval::infinite(0, 0)]);
    assert_eq!(sublevel_from_level(&i_numbers_method1(&e).unwrap().barcode), mu);
}

#[test]
fn example_map_methods_agree() {
    let f = example();
    let m1 = i_numbers_method1(&f).unwrap();
    let m2 = i_numbers_method2(&f).unwrap();
    assert_eq!(m1.grid, m2.grid);
    assert_eq!(sublevel_from_level(&m1.barcode), sublevel_barcodes_direct(&f).unwrap());
    let p = posneg_at(&f, v(4)).unwrap();
    assert_eq!(sorted(p.positive), sorted(vec![up(0, 4, None), up(0, 4, Some(5)), up(0, 4, Some(6))]));
}
