//! Deciding whether an independent transversal exists: propagation
//! certificates for non-existence and exact search for ground truth.

mod certificate;
mod search;
mod ww;

pub use certificate::{
    certify_construction, check_certificate, propagate_certificate, propagate_certificate_filtered, Certificate,
    ConstructionCertificate, Step,
};
pub use search::{
    count_transversals, find_transversal, find_transversal_with, is_independent_transversal, SearchOptions,
    SearchOutcome, TransversalReport,
};
pub use ww::{check_ww_bound, WwOutcome};
