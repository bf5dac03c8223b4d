//! Cohesion (LCOM5, NHD) and complexity (cyclomatic, cognitive) metrics for
//! Java classes, and a corpus study comparing classes named `*Utils`,
//! `*er`/`*or` and everything else.

pub mod classify;
pub mod corpus;
pub mod error;
pub mod metrics;
pub mod report;
pub mod source;

pub use error::{AuditError, Result};
