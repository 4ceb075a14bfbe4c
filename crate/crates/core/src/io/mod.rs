//! File formats: versioned JSON for instances and certificates, DOT export.

mod dot;
mod json;

pub use dot::export_dot;
pub use json::{
    certificate_to_string, instance_to_string, parse_certificate, parse_instance, read_instance, save_certificate,
    save_instance, write_atomic, write_instance, FORMAT_VERSION,
};
