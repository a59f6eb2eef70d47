//! Three-state range-2 web CA.

pub mod evolve;
pub mod rules;
pub mod solid2d;

pub use evolve::{evolve_web, step_periodic, step_web, WebDiagram};
pub use rules::{builtin_rule, classify_compliance, validate_web_rule, BuiltinRule, ComplianceReport, WebRule};
pub use solid2d::{derive_two_level_ebd, solidify_2d, Grid2D, Rule2d};
