//! Structural facts about Java classes, extracted from source text.

mod access;
mod lines;
mod model;
mod parse;
mod profile;

pub use access::{extract_attribute_accesses, ClassContext};
pub use lines::count_loc_and_blank;
pub use model::{
    AttributeDecl, CognitiveEvent, ConstructKind, DecisionProfile, LineSpan, MethodView,
    SourceClass,
};
pub use parse::parse_compilation_unit;
pub use profile::{build_decision_profile, MethodSignature};
