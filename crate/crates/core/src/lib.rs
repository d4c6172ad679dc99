//! Exact-arithmetic workbench for fractional analytic indices.
//!
//! Two halves:
//!
//! * a characteristic-number engine — exact rational cohomology-ring models,
//!   multiplicative sequences (A-hat, Todd, L), the Chern character, a
//!   catalog of manifolds (projective spaces, hypersurfaces, products,
//!   cobordism records) and the Dirac / spin^c / Dolbeault index formulas,
//!   all over arbitrary-precision fractions;
//! * an operator laboratory — Toeplitz compressions of elliptic circle
//!   symbols where the trace-commutator index Tr(AB-Id)-Tr(BA-Id) is
//!   finitely computable, with homotopy-invariance, additivity, adjoint and
//!   McKean-Singer experiments.

pub mod catalog;
pub mod engine;
pub mod error;
pub mod genera;
pub mod lab;
pub mod rational;
pub mod ring;
pub mod series;

pub use catalog::{
    builtin, builtin_names, cobordism_record, cp, hopkins_surgery, hypersurface, load_bundle,
    load_manifold, load_manifold_json, parse_class, point, product, to_document, BundleDoc,
    ManifoldDoc, ManifoldModel,
};
pub use engine::{
    dirac_index, dolbeault_index, fractionality_report, spinc_index, FractionRow, IndexReport,
    TwistSpec,
};
pub use error::{Error, Result};
pub use genera::{
    chern_character, genus_class, genus_of, genus_series, pontryagin_from_chern, CharData,
    CharMode, GenusKind, GenusSeries,
};
pub use rational::{format_rational, is_integer, parse_rational, Rational};
pub use ring::{CohClass, Generator, Monomial, RingModel};
