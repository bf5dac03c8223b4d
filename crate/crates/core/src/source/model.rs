use std::collections::BTreeSet;

use serde::Serialize;

/// Inclusive, 1-based line range of a declaration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LineSpan {
    pub first: usize,
    pub last: usize,
}

impl LineSpan {
    pub fn new(first: usize, last: usize) -> Self {
        Self { first, last }
    }

    pub fn line_count(&self) -> usize {
        self.last + 1 - self.first
    }
}

/// Structural view of one Java `class` declaration.
///
/// Constructors never appear in `methods`. Members of nested named classes
/// belong to their own `SourceClass`, although the nested class's lines stay
/// inside the enclosing class's `line_span`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceClass {
    pub name: String,
    pub qualified_name: String,
    pub attributes: Vec<AttributeDecl>,
    pub methods: Vec<MethodView>,
    pub has_static_member: bool,
    pub line_span: LineSpan,
    pub loc: usize,
    pub blank_lines: usize,
}

impl SourceClass {
    pub fn attribute_names(&self) -> impl Iterator<Item = &str> {
        self.attributes.iter().map(|a| a.name.as_str())
    }

    /// Lines of code minus blank lines.
    pub fn ncloc(&self) -> usize {
        self.loc - self.blank_lines
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttributeDecl {
    pub name: String,
    pub is_static: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodView {
    pub name: String,
    pub is_static: bool,
    /// Normalized parameter types in declaration order (duplicates kept).
    pub parameter_types: Vec<String>,
    pub accessed_attributes: BTreeSet<String>,
    pub decision_profile: DecisionProfile,
    pub cognitive_events: Vec<CognitiveEvent>,
}

/// Counts of the branching constructs in one method body.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DecisionProfile {
    pub ifs: u32,
    pub loops: u32,
    pub case_labels: u32,
    pub catch_clauses: u32,
    pub ternaries: u32,
    /// Every `&&` / `||` token.
    pub short_circuit_ops: u32,
}

impl DecisionProfile {
    pub fn decisions(&self) -> u32 {
        self.ifs
            + self.loops
            + self.case_labels
            + self.catch_clauses
            + self.ternaries
            + self.short_circuit_ops
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructKind {
    If,
    ElseIf,
    Else,
    Loop,
    Switch,
    Catch,
    Ternary,
    /// A maximal run of identical `&&` or `||` operators.
    LogicalSequence,
    Recursion,
}

impl ConstructKind {
    /// Constructs whose increment grows with the nesting depth.
    pub fn is_nesting(self) -> bool {
        matches!(
            self,
            ConstructKind::If
                | ConstructKind::Loop
                | ConstructKind::Switch
                | ConstructKind::Catch
                | ConstructKind::Ternary
        )
    }
}

/// One cognitive-complexity increment and the nesting depth it occurred at.
///
/// The depth is recorded for every event but only contributes for
/// [`ConstructKind::is_nesting`] kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CognitiveEvent {
    pub kind: ConstructKind,
    pub depth: u32,
}
