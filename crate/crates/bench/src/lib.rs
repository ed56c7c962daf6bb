//! Fixtures shared by the benchmarks.

use qkd_core::{standard_quandle_list, KnotCatalog, Quandle};

/// Catalog knots used for single-count benchmarks, from small to large.
pub const SAMPLE_KNOTS: [&str; 4] = ["3_1", "7_4", "9_35", "10_123"];

pub fn sample_codes(catalog: &KnotCatalog) -> Vec<(&'static str, qkd_core::GaussCode)> {
    SAMPLE_KNOTS
        .iter()
        .map(|&name| {
            (
                name,
                catalog.by_name(name).expect("bundled knot").code.clone(),
            )
        })
        .collect()
}

/// R_3, Z_3[T]/(T^2+1) and R_9: smallest, a non-prime field, and the non-field.
pub fn sample_quandles() -> Vec<(usize, Quandle)> {
    let list = standard_quandle_list();
    [1, 5, 10]
        .iter()
        .map(|&i| (i, list.get(i).unwrap().clone()))
        .collect()
}
