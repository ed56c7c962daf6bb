//! Quandle coloring invariants for knots given by signed Gauss codes.
//!
//! The crate counts colorings of knot diagrams by finite quandles, either
//! by constraint propagation with backtracking (any quandle) or by linear
//! algebra over a finite field (Alexander quandles on fields). On top of the
//! counts it builds per-knot profiles over a fixed list of ten quandles and
//! the matrix recording, for each pair of knots, the first quandle that tells
//! them apart.
//!
//! ```
//! use qkd_core::{build_system, count_colorings, make_dihedral, parse_gauss_code, Convention};
//!
//! let trefoil = parse_gauss_code("{1, -3, 5, -1, 3, -5}").unwrap();
//! let r3 = make_dihedral(3).unwrap();
//! let sys = build_system(&trefoil, Convention::DEFAULT);
//! assert_eq!(count_colorings(&sys, &r3).count, 9);
//! ```

pub mod catalog;
pub mod error;
pub mod gauss;
pub mod linear;
pub mod matrix;
pub mod quandle;
pub mod ring;
pub mod solver;

pub use catalog::{CatalogEntry, KnotCatalog, Repair};
pub use error::{Error, Result};
pub use gauss::{
    decompose, parse_gauss_code, validate, Arc, CrossingRelation, Decomposition, GaussCode, Parity,
    ValidationReport,
};
pub use linear::{count_colorings_linear, FieldQuandle};
pub use matrix::{
    build_matrix, build_matrix_aligned, fenn_rourke_distinguishes, first_distinguisher,
    profile_all, summarize, verify_against_reference, ColoringProfile, DiffReport,
    DistinguishMatrix, Mismatch, ProfileOptions, ReferenceMatrix, SummaryStats, TableAlignment,
};
pub use quandle::{
    make_alexander, make_dihedral, standard_quandle_list, verify_quandle, AxiomReport, Descriptor,
    Quandle, StandardQuandleList,
};
pub use ring::{AlexanderElement, FiniteField, MonicPoly, QuotientRing};
pub use solver::{
    build_system, count_colorings, enumerate_colorings, has_nontrivial, Coloring, ColoringSystem,
    Convention, CountResult, SolverTag,
};

/// `gauss::GaussCode::rotate` as a free function.
pub fn rotate(code: &GaussCode, k: isize) -> GaussCode {
    code.rotate(k)
}

/// Loads the bundled catalog or a catalog file.
pub fn load_catalog(path: Option<&std::path::Path>) -> Result<KnotCatalog> {
    match path {
        Some(p) => KnotCatalog::from_path(p),
        None => Ok(KnotCatalog::bundled()),
    }
}
