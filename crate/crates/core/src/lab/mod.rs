//! Desk-scale operator laboratory for the trace-commutator index
//! Tr(AB - Id) - Tr(BA - Id): Toeplitz compression of circle symbols,
//! parametrices, winding numbers, homotopy/additivity/adjoint experiments
//! and finite-dimensional McKean-Singer.

pub mod docs;
pub mod experiments;
pub mod heat;
pub mod mat;
pub mod scalar;
pub mod symbol;
pub mod toeplitz;

pub use docs::{HeatDoc, PathDoc, SymbolDoc};
pub use experiments::{
    adjoint_index_check, certify_elliptic, composition_additivity_check, homotopy_sweep,
    homotopy_sweep_with, symbol_index, winding_number, AdjointReport, LabIndex, LabParams,
    LabSymbol,
};
pub use heat::{mckean_singer_check, GradedOperator, McKeanSingerReport, DEFAULT_T_GRID};
pub use mat::Mat;
pub use scalar::{parse_complex_rational, GaussRational, LabScalar};
pub use symbol::{parse_symbol_expr, LoopSymbol};
pub use toeplitz::{
    parametrix_exact, parametrix_numeric, toeplitz_compress, trace_commutator_index,
    HalfLineOperator,
};
