//! Level persistence of generic PL maps: cut complexes, positive and negative
//! bar codes, relevant persistence numbers and the level bar code.
//!
//! Homology here is over GF(2).

mod barcode;
mod cut;
mod map;
mod posneg;
mod relevant;

pub use barcode::{
    level_barcodes_from_i, level_barcodes_from_relevant, sublevel_barcodes_direct, sublevel_from_level, BarKind,
    LevelBarcode,
};
pub use cut::{
    build_boundary_minus, build_boundary_plus, level_complex, lower_complex, negative_order, positive_order,
    slab_complex, upper_complex, y_complex, z_complex, BlockBoundary, CutComplex, CutKind, Side,
};
pub use map::{check_generic, perturb, PLMap};
pub use posneg::{
    posneg_at, read_negative_barcode, read_positive_barcode, reduce_level, reduce_side, LevelPair, LevelReduction,
    PosNegLevel,
};
pub use relevant::{
    i_numbers_method1, i_numbers_method2, relevant_from_posneg, relevant_numbers, IGrid, LevelRun, RelevantNumbers,
};

#[cfg(test)]
mod tests;
