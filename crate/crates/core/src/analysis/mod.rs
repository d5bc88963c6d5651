//! Diagnostics: coordinate error bounds, node deviation rates, moduli of
//! continuity and error budgets, and `(f0, f1)`-convexity tests.

mod convexity;
mod coordinates;
mod deviation;
mod modulus;

pub use convexity::{composition_concavity, convexity_determinant, convexity_scan, ConvexityWitness, WITNESS_TOL};
pub use coordinates::{coordinate_error_report, CoordinateErrorReport};
pub use deviation::{
    deviation_study, holder_order, node_deviation_report, rate_fit, DeviationReport, DeviationStudy, HolderReport,
    RateFit,
};
pub use modulus::{
    classical_error_constant, error_budget, grid_sup, modulus_of_continuity, operator_distance, ErrorBudget, GridSup,
    ModulusEstimate, DEFAULT_GRID,
};
