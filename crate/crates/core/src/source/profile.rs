//! Branching constructs of a method body, for both complexity metrics.
//!
//! Nesting depth grows inside the bodies of `if`/`else` branches, loops,
//! `switch` blocks, `catch` blocks, ternary branches, lambdas and anonymous
//! class bodies. Conditions and loop headers stay at the construct's own
//! depth.

use tree_sitter::Node;

use super::model::{CognitiveEvent, ConstructKind, DecisionProfile};

/// The method whose body is being profiled, for recursion detection.
#[derive(Debug, Clone, Copy)]
pub struct MethodSignature<'a> {
    pub name: &'a str,
    pub arity: usize,
}

pub fn build_decision_profile(
    body: Node<'_>,
    source: &str,
    method: MethodSignature<'_>,
) -> (DecisionProfile, Vec<CognitiveEvent>) {
    let mut walker = Walker {
        source,
        method,
        profile: DecisionProfile::default(),
        events: Vec::new(),
        recursive: false,
    };
    walker.visit(body, 0);
    if walker.recursive {
        walker.events.push(CognitiveEvent {
            kind: ConstructKind::Recursion,
            depth: 0,
        });
    }
    (walker.profile, walker.events)
}

struct Walker<'a> {
    source: &'a str,
    method: MethodSignature<'a>,
    profile: DecisionProfile,
    events: Vec<CognitiveEvent>,
    recursive: bool,
}

fn logical_operator(node: Node<'_>) -> Option<&'static str> {
    if node.kind() != "binary_expression" {
        return None;
    }
    match node.child_by_field_name("operator")?.kind() {
        "&&" => Some("&&"),
        "||" => Some("||"),
        _ => None,
    }
}

/// In-order operator tokens of a logical expression tree. Parenthesized
/// operands start their own sequence and are not descended into.
fn operator_sequence(node: Node<'_>, out: &mut Vec<&'static str>) {
    let Some(op) = logical_operator(node) else {
        return;
    };
    if let Some(left) = node.child_by_field_name("left") {
        operator_sequence(left, out);
    }
    out.push(op);
    if let Some(right) = node.child_by_field_name("right") {
        operator_sequence(right, out);
    }
}

impl Walker<'_> {
    fn event(&mut self, kind: ConstructKind, depth: u32) {
        self.events.push(CognitiveEvent { kind, depth });
    }

    fn visit_children(&mut self, node: Node<'_>, depth: u32) {
        let mut cursor = node.walk();
        for child in node.named_children(&mut cursor) {
            self.visit(child, depth);
        }
    }

    /// Visits children, nesting the ones under field `body` one level deeper.
    fn visit_with_nested_body(&mut self, node: Node<'_>, depth: u32) {
        let mut cursor = node.walk();
        for (i, child) in node.children(&mut cursor).enumerate() {
            if !child.is_named() {
                continue;
            }
            let nested = node.field_name_for_child(i as u32) == Some("body");
            self.visit(child, if nested { depth + 1 } else { depth });
        }
    }

    fn visit(&mut self, node: Node<'_>, depth: u32) {
        match node.kind() {
            "if_statement" => self.if_statement(node, depth, false),
            "for_statement" | "enhanced_for_statement" | "while_statement" | "do_statement" => {
                self.profile.loops += 1;
                self.event(ConstructKind::Loop, depth);
                self.visit_with_nested_body(node, depth);
            }
            "switch_expression" => {
                self.event(ConstructKind::Switch, depth);
                self.visit_with_nested_body(node, depth);
            }
            "switch_label" => {
                let is_case = node.child(0).is_some_and(|c| c.kind() == "case");
                if is_case {
                    let mut cursor = node.walk();
                    let values = node
                        .named_children(&mut cursor)
                        .filter(|c| c.kind() != "guard")
                        .count() as u32;
                    self.profile.case_labels += values.max(1);
                }
                self.visit_children(node, depth);
            }
            "catch_clause" => {
                self.profile.catch_clauses += 1;
                self.event(ConstructKind::Catch, depth);
                self.visit_with_nested_body(node, depth);
            }
            "ternary_expression" => {
                self.profile.ternaries += 1;
                self.event(ConstructKind::Ternary, depth);
                if let Some(condition) = node.child_by_field_name("condition") {
                    self.visit(condition, depth);
                }
                for field in ["consequence", "alternative"] {
                    if let Some(branch) = node.child_by_field_name(field) {
                        self.visit(branch, depth + 1);
                    }
                }
            }
            "binary_expression" => {
                if logical_operator(node).is_some() {
                    self.profile.short_circuit_ops += 1;
                    let is_root = node.parent().and_then(logical_operator).is_none();
                    if is_root {
                        let mut ops = Vec::new();
                        operator_sequence(node, &mut ops);
                        let runs = 1 + ops.windows(2).filter(|w| w[0] != w[1]).count();
                        for _ in 0..runs {
                            self.event(ConstructKind::LogicalSequence, depth);
                        }
                    }
                }
                self.visit_children(node, depth);
            }
            "lambda_expression" => {
                if let Some(body) = node.child_by_field_name("body") {
                    self.visit(body, depth + 1);
                }
            }
            "class_body" => self.visit_children(node, depth + 1),
            "method_invocation" => {
                self.check_recursion(node);
                self.visit_children(node, depth);
            }
            "class_declaration"
            | "interface_declaration"
            | "enum_declaration"
            | "record_declaration"
            | "annotation_type_declaration" => {}
            _ => self.visit_children(node, depth),
        }
    }

    fn if_statement(&mut self, node: Node<'_>, depth: u32, else_if: bool) {
        self.profile.ifs += 1;
        let kind = if else_if {
            ConstructKind::ElseIf
        } else {
            ConstructKind::If
        };
        self.event(kind, depth);
        if let Some(condition) = node.child_by_field_name("condition") {
            self.visit(condition, depth);
        }
        if let Some(consequence) = node.child_by_field_name("consequence") {
            self.visit(consequence, depth + 1);
        }
        if let Some(alternative) = node.child_by_field_name("alternative") {
            if alternative.kind() == "if_statement" {
                self.if_statement(alternative, depth, true);
            } else {
                self.event(ConstructKind::Else, depth);
                self.visit(alternative, depth + 1);
            }
        }
    }

    fn check_recursion(&mut self, call: Node<'_>) {
        let unqualified = match call.child_by_field_name("object") {
            None => true,
            Some(object) => object.kind() == "this",
        };
        let same_name = call
            .child_by_field_name("name")
            .is_some_and(|n| &self.source[n.byte_range()] == self.method.name);
        let arity = call
            .child_by_field_name("arguments")
            .map(|args| args.named_child_count())
            .unwrap_or(0);
        if unqualified && same_name && arity == self.method.arity {
            self.recursive = true;
        }
    }
}
