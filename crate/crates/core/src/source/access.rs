//! Lexical resolution of attribute accesses inside a method body.
//!
//! An identifier resolves to an attribute of the owning class when it is
//! written as `this.f`, or as a bare `f` that no parameter or earlier local
//! declaration in an enclosing block shadows. Nothing is type checked, so
//! inherited fields and fields of other objects never count.

use std::collections::{BTreeSet, HashSet};

use tree_sitter::Node;

/// The names visible to a method body before its first statement.
#[derive(Debug, Clone, Default)]
pub struct ClassContext {
    pub attributes: HashSet<String>,
    pub parameters: Vec<String>,
}

impl ClassContext {
    pub fn new<A, P>(attributes: A, parameters: P) -> Self
    where
        A: IntoIterator,
        A::Item: Into<String>,
        P: IntoIterator,
        P::Item: Into<String>,
    {
        Self {
            attributes: attributes.into_iter().map(Into::into).collect(),
            parameters: parameters.into_iter().map(Into::into).collect(),
        }
    }
}

/// Collects the owning class's attributes referenced from `body`.
pub fn extract_attribute_accesses(
    body: Node<'_>,
    source: &str,
    context: &ClassContext,
) -> BTreeSet<String> {
    let mut resolver = Resolver {
        source,
        attributes: &context.attributes,
        scopes: vec![context.parameters.iter().cloned().collect()],
        found: BTreeSet::new(),
    };
    resolver.visit(body);
    resolver.found
}

struct Resolver<'a> {
    source: &'a str,
    attributes: &'a HashSet<String>,
    scopes: Vec<HashSet<String>>,
    found: BTreeSet<String>,
}

impl<'a> Resolver<'a> {
    fn text(&self, node: Node<'_>) -> &'a str {
        &self.source[node.byte_range()]
    }

    fn shadowed(&self, name: &str) -> bool {
        self.scopes.iter().any(|scope| scope.contains(name))
    }

    fn declare(&mut self, name: Node<'_>) {
        let name = self.text(name).to_owned();
        if let Some(scope) = self.scopes.last_mut() {
            scope.insert(name);
        }
    }

    fn reference(&mut self, name: &str) {
        if self.attributes.contains(name) && !self.shadowed(name) {
            self.found.insert(name.to_owned());
        }
    }

    fn scoped(&mut self, f: impl FnOnce(&mut Self)) {
        self.scopes.push(HashSet::new());
        f(self);
        self.scopes.pop();
    }

    fn visit_children(&mut self, node: Node<'_>) {
        let mut cursor = node.walk();
        for child in node.named_children(&mut cursor) {
            self.visit(child);
        }
    }

    fn visit(&mut self, node: Node<'_>) {
        match node.kind() {
            "identifier" => {
                let name = self.text(node);
                self.reference(name);
            }
            "field_access" => {
                let object = node.child_by_field_name("object");
                let field = node.child_by_field_name("field");
                match (object, field) {
                    (Some(object), Some(field)) if object.kind() == "this" => {
                        let name = self.text(field);
                        if self.attributes.contains(name) {
                            self.found.insert(name.to_owned());
                        }
                    }
                    (Some(object), _) => self.visit(object),
                    _ => {}
                }
            }
            "method_invocation" => {
                if let Some(object) = node.child_by_field_name("object") {
                    self.visit(object);
                }
                if let Some(args) = node.child_by_field_name("arguments") {
                    self.visit(args);
                }
            }
            "method_reference" => {
                if let Some(target) = node.named_child(0) {
                    self.visit(target);
                }
            }
            "block" | "switch_block" | "constructor_body" => {
                self.scoped(|r| r.visit_children(node));
            }
            "local_variable_declaration" | "field_declaration" => {
                let mut cursor = node.walk();
                for declarator in node.children_by_field_name("declarator", &mut cursor) {
                    self.variable_declarator(declarator);
                }
            }
            "for_statement" => self.scoped(|r| r.visit_children(node)),
            "enhanced_for_statement" => {
                if let Some(value) = node.child_by_field_name("value") {
                    self.visit(value);
                }
                self.scoped(|r| {
                    if let Some(name) = node.child_by_field_name("name") {
                        r.declare(name);
                    }
                    if let Some(body) = node.child_by_field_name("body") {
                        r.visit(body);
                    }
                });
            }
            "catch_clause" => self.scoped(|r| {
                let mut cursor = node.walk();
                for child in node.named_children(&mut cursor) {
                    match child.kind() {
                        "catch_formal_parameter" => {
                            if let Some(name) = child.child_by_field_name("name") {
                                r.declare(name);
                            }
                        }
                        _ => r.visit(child),
                    }
                }
            }),
            "try_with_resources_statement" => {
                self.scoped(|r| {
                    if let Some(resources) = node.child_by_field_name("resources") {
                        let mut cursor = resources.walk();
                        for resource in resources.named_children(&mut cursor) {
                            r.resource(resource);
                        }
                    }
                    if let Some(body) = node.child_by_field_name("body") {
                        r.visit(body);
                    }
                });
                let mut cursor = node.walk();
                for child in node.named_children(&mut cursor) {
                    if matches!(child.kind(), "catch_clause" | "finally_clause") {
                        self.visit(child);
                    }
                }
            }
            "lambda_expression" => self.scoped(|r| {
                if let Some(params) = node.child_by_field_name("parameters") {
                    r.lambda_parameters(params);
                }
                if let Some(body) = node.child_by_field_name("body") {
                    r.visit(body);
                }
            }),
            "instanceof_expression" => {
                if let Some(left) = node.child_by_field_name("left") {
                    self.visit(left);
                }
                if let Some(name) = node.child_by_field_name("name") {
                    self.declare(name);
                }
            }
            "class_body" => self.anonymous_body(node),
            "labeled_statement" => {
                let mut cursor = node.walk();
                for child in node.named_children(&mut cursor) {
                    if child.kind() != "identifier" {
                        self.visit(child);
                    }
                }
            }
            // Labels, annotations and nested type declarations hold no accesses
            // of the owning class.
            "break_statement"
            | "continue_statement"
            | "marker_annotation"
            | "annotation"
            | "class_declaration"
            | "interface_declaration"
            | "enum_declaration"
            | "record_declaration"
            | "annotation_type_declaration" => {}
            _ => self.visit_children(node),
        }
    }

    fn variable_declarator(&mut self, declarator: Node<'_>) {
        if let Some(value) = declarator.child_by_field_name("value") {
            self.visit(value);
        }
        if let Some(name) = declarator.child_by_field_name("name") {
            self.declare(name);
        }
    }

    fn resource(&mut self, resource: Node<'_>) {
        match (
            resource.child_by_field_name("name"),
            resource.child_by_field_name("value"),
        ) {
            (Some(name), Some(value)) => {
                self.visit(value);
                self.declare(name);
            }
            _ => self.visit_children(resource),
        }
    }

    fn lambda_parameters(&mut self, params: Node<'_>) {
        match params.kind() {
            "identifier" => self.declare(params),
            _ => {
                let mut cursor = params.walk();
                for param in params.named_children(&mut cursor) {
                    match param.kind() {
                        "identifier" => self.declare(param),
                        _ => {
                            if let Some(name) = param.child_by_field_name("name") {
                                self.declare(name);
                            } else if let Some(declarator) =
                                find_child(param, "variable_declarator")
                            {
                                if let Some(name) = declarator.child_by_field_name("name") {
                                    self.declare(name);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Anonymous class body: its own fields shadow, its methods open a
    /// parameter scope.
    fn anonymous_body(&mut self, body: Node<'_>) {
        let mut own_fields = HashSet::new();
        let mut cursor = body.walk();
        for member in body.named_children(&mut cursor) {
            if member.kind() == "field_declaration" {
                let mut inner = member.walk();
                for declarator in member.children_by_field_name("declarator", &mut inner) {
                    if let Some(name) = declarator.child_by_field_name("name") {
                        own_fields.insert(self.text(name).to_owned());
                    }
                }
            }
        }
        self.scopes.push(own_fields);
        let mut cursor = body.walk();
        for member in body.named_children(&mut cursor) {
            match member.kind() {
                "method_declaration" | "constructor_declaration" => self.scoped(|r| {
                    if let Some(params) = member.child_by_field_name("parameters") {
                        for name in parameter_names(params, r.source) {
                            if let Some(scope) = r.scopes.last_mut() {
                                scope.insert(name);
                            }
                        }
                    }
                    if let Some(body) = member.child_by_field_name("body") {
                        r.visit(body);
                    }
                }),
                "field_declaration" | "block" | "static_initializer" => self.visit(member),
                _ => {}
            }
        }
        self.scopes.pop();
    }
}

fn find_child<'t>(node: Node<'t>, kind: &str) -> Option<Node<'t>> {
    let mut cursor = node.walk();
    let found = node.named_children(&mut cursor).find(|c| c.kind() == kind);
    found
}

/// Declared names of a `formal_parameters` node, including varargs.
pub(crate) fn parameter_names(params: Node<'_>, source: &str) -> Vec<String> {
    let mut names = Vec::new();
    let mut cursor = params.walk();
    for param in params.named_children(&mut cursor) {
        let name = match param.kind() {
            "formal_parameter" => param.child_by_field_name("name"),
            "spread_parameter" => {
                find_child(param, "variable_declarator").and_then(|d| d.child_by_field_name("name"))
            }
            _ => None,
        };
        if let Some(name) = name {
            names.push(source[name.byte_range()].to_owned());
        }
    }
    names
}
