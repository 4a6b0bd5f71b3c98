pub mod digraph;
pub mod error;
pub mod families;
pub mod intmath;
pub mod lshape;
pub mod procedures;
pub mod search;
pub mod snf;
pub mod tables;

pub use digraph::{
    canonicalize_group, find_mdds, is_mdd_for, AbelianGroup2, CayleyDigraph2, Element,
};
pub use error::{Error, Result};
pub use lshape::{enumerate_lshapes, LShape, TessellationVectors};
pub use snf::{digraph_of, matrix_of, smith_normal_form, IntMatrix2, SnfDecomposition};
pub use procedures::{
    extend, extension_coefficient, has_infinite_tight_extensions, interval_ceil,
    is_tight_extension, max_coefficient, quotient, TightnessReport,
};
pub use search::{
    brute_oracle, optimal_diameters, qe_improve, GroupKind, ImprovementRecord, OptimalityResult,
    Witness,
};
pub use families::{
    ac_bound, extended_family, gamma_infinite, gamma_max_coeff, table2_family, table4_family,
    FamilyId, FamilyMember, Table2Member,
};
