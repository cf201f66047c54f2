//! Exact symbolic engine for characteristic classes in formal Chern roots,
//! Lie algebroid cohomology, and Riemann-Roch index evaluation.
//!
//! Everything is computed over arbitrary-precision rationals; results are
//! exact and deterministic (no floating point, no randomized algorithms,
//! no hash-order dependence). The crate is organized in four layers:
//!
//! * [`series`] / [`classes`] — truncated series in Chern generators
//!   `c_j(B)` and the characteristic classes built from per-root scalar
//!   series (total Chern, Chern character, Todd, Euler, wedge characters),
//!   including the mechanical verification of the Riemann-Roch curvature
//!   identity.
//! * [`algebroid`] — constant-structure Lie algebroid presentations, their
//!   validation, the Koszul differential of the associated cochain complex,
//!   exact cohomology dimensions, connection curvature, and the Nijenhuis
//!   integrability check.
//! * [`index`] — integration functionals, foliation descriptors with
//!   weighted compact leaves, normalized Riemann-Roch index values,
//!   average Euler characteristics, a positivity obstruction, and the
//!   exact prefactor comparison against the (2π)-normalized convention.
//! * [`expr`] / [`descriptor`] / [`canonical`] — the textual class
//!   expression language (parse, print, evaluate), JSON problem
//!   descriptors with precise error locations, and canonical, byte-stable
//!   JSON serialization of results.

pub mod algebroid;
pub mod bundle;
pub mod canonical;
pub mod classes;
pub mod descriptor;
pub mod expr;
pub mod index;
pub mod linalg;
pub mod rational;
mod roots;
pub mod series;
pub mod univariate;

pub use algebroid::{
    cohomology_dims, connection_curvature, koszul_differential, nijenhuis_check, AlgebroidError,
    Anchor, CurvatureReport, NijenhuisReport, Presentation, Representation, ValidationReport,
};
pub use bundle::{Bundle, BundleError, Context};
pub use classes::{
    characteristic_class, verify_rr_identity, verify_rr_identity_perturbed, wedge_power_ch,
    ClassKind, Discrepancy, IdentityReport,
};
pub use descriptor::{
    load_bundle_table, load_descriptor, parse_bundle_table_text, parse_descriptor_text,
    DescriptorError, ProblemDescriptor,
};
pub use expr::{
    eval_class_expr, parse_bundle_expr, parse_class_expr, print_class_expr, BundleExpr, ClassExpr,
    EvalError, ParseError,
};
pub use index::{
    algebroid_rr_index, average_euler, build_suspension, connes_comparison, foliated_rr_index,
    positivity_obstruction, ConnesReport, FoliationDescriptor, GaussRat, IndexError,
    IntegrationFunctional, LeafSpec, NormalizedIndex, PiTerm, PositivityReport, PositivityVerdict,
    RawPrefactor,
};
pub use rational::{parse_rational, Rat};
pub use series::{ChernSeries, SeriesError};
