//! Metabolizers of diagonal linking forms on `(Z_{pⁿ})^d`.

mod enumerate;
mod form;
mod normal_form;
mod structure;

use thiserror::Error;

pub use enumerate::{
    candidate_profiles, enumerate_metabolizers, enumerate_with, Enumeration, EnumerationOptions,
    ENUMERATION_BUDGET,
};
pub use form::PrimaryForm;
pub use normal_form::{normal_form, MetabolizerNormalForm};
pub use structure::{
    is_isotropic, quotient_group, require_metabolizer, subgroup_group, verify_structure,
    StructureReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("enumeration budget exceeded: |H| = {size} > {limit}")]
    BudgetExceeded { size: String, limit: u64 },
    #[error("not a metabolizer: {0}")]
    NotAMetabolizer(String),
}
