//! Minor models, their verification and composition, and exact search.

mod model;
pub mod search;

pub use model::{
    compose_models, product_of_models, MinorModel, VerificationReport, Violation, ViolationKind,
};
pub use search::{has_minor, hadwiger_exact, Budget, HadwigerResult, MinorSearch};

/// Verifies a model; see [`MinorModel::verify`].
pub fn verify_model(m: &MinorModel) -> VerificationReport {
    m.verify()
}
