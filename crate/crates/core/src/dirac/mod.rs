//! Symplectic Dirac–Dolbeault operators on `CP^n` for the `χ_k` twisted
//! spinor bundle, reduced to scalar matrices on each `su(n+1)`-isotypic block.

mod intertwiner;
mod operators;
mod report;
mod spec;

pub use intertwiner::{normalized_intertwiner, solve_intertwiner, IntertwinerSpace, INTERTWINER_THRESHOLD};
pub use operators::{closed_form_eigenvalue, SpinorModule, KERNEL_THRESHOLD, PROJECTION_TOLERANCE};
pub use report::{analyze_spec, BlockAnalysis, KernelSummary, SpectrumRow};
pub use spec::{hom_dimension, SpinorBlockSpec};
