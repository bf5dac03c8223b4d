use std::collections::HashSet;
use std::path::Path;

use tree_sitter::{Node, Parser};

use crate::error::{AuditError, Result};

use super::access::{extract_attribute_accesses, parameter_names, ClassContext};
use super::lines::count_loc_and_blank;
use super::model::{AttributeDecl, LineSpan, MethodView, SourceClass};
use super::profile::{build_decision_profile, MethodSignature};

const TYPE_DECLARATIONS: &[&str] = &[
    "class_declaration",
    "interface_declaration",
    "enum_declaration",
    "record_declaration",
    "annotation_type_declaration",
];

/// Extracts one [`SourceClass`] per named `class` declaration in `source`.
///
/// Classes come out in source order, enclosing classes before the classes
/// nested in them. Interfaces, enums, records, annotation types and
/// anonymous classes produce nothing, though classes nested inside them do.
pub fn parse_compilation_unit(source: &str, file: &Path) -> Result<Vec<SourceClass>> {
    let mut parser = Parser::new();
    parser
        .set_language(&tree_sitter_java::LANGUAGE.into())
        .map_err(|e| AuditError::Parse {
            file: file.to_path_buf(),
            line: 0,
            message: format!("cannot load Java grammar: {e}"),
        })?;
    let tree = parser
        .parse(source, None)
        .ok_or_else(|| AuditError::Parse {
            file: file.to_path_buf(),
            line: 0,
            message: "parser produced no tree".to_owned(),
        })?;
    let root = tree.root_node();
    if root.has_error() {
        let (line, message) = first_error(root, source);
        return Err(AuditError::Parse {
            file: file.to_path_buf(),
            line,
            message,
        });
    }

    let package = package_name(root, source);
    let mut extractor = Extractor {
        source,
        classes: Vec::new(),
    };
    let mut path = Vec::new();
    extractor.walk(root, &mut path)?;

    if let Some(package) = package {
        for class in &mut extractor.classes {
            class.qualified_name = format!("{package}.{}", class.qualified_name);
        }
    }
    Ok(extractor.classes)
}

fn first_error(root: Node<'_>, source: &str) -> (usize, String) {
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        if node.is_missing() {
            return (
                node.start_position().row + 1,
                format!("syntax error: missing `{}`", node.kind()),
            );
        }
        if node.is_error() {
            let text: String = source[node.byte_range()]
                .chars()
                .take(24)
                .take_while(|c| *c != '\n')
                .collect();
            return (
                node.start_position().row + 1,
                format!("syntax error near `{}`", text.trim()),
            );
        }
        if node.has_error() {
            let mut cursor = node.walk();
            let children: Vec<_> = node.children(&mut cursor).collect();
            stack.extend(children.into_iter().rev());
        }
    }
    (root.start_position().row + 1, "syntax error".to_owned())
}

fn package_name(root: Node<'_>, source: &str) -> Option<String> {
    let mut cursor = root.walk();
    let package = root
        .named_children(&mut cursor)
        .find(|n| n.kind() == "package_declaration")?;
    let mut inner = package.walk();
    let name = package
        .named_children(&mut inner)
        .find(|n| matches!(n.kind(), "scoped_identifier" | "identifier"))?;
    Some(source[name.byte_range()].to_owned())
}

fn has_modifier(node: Node<'_>, modifier: &str) -> bool {
    let mut cursor = node.walk();
    let found = node
        .named_children(&mut cursor)
        .filter(|c| c.kind() == "modifiers")
        .any(|m| {
            let mut inner = m.walk();
            let hit = m.children(&mut inner).any(|c| c.kind() == modifier);
            hit
        });
    found
}

fn strip_whitespace(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Normalized parameter types: source text without whitespace, generics and
/// array brackets kept, varargs written with a trailing `...`.
fn parameter_types(params: Node<'_>, source: &str) -> Vec<String> {
    let mut types = Vec::new();
    let mut cursor = params.walk();
    for param in params.named_children(&mut cursor) {
        match param.kind() {
            "formal_parameter" => {
                let Some(ty) = param.child_by_field_name("type") else {
                    continue;
                };
                let mut normalized = strip_whitespace(&source[ty.byte_range()]);
                if let Some(dims) = param.child_by_field_name("dimensions") {
                    normalized.push_str(&strip_whitespace(&source[dims.byte_range()]));
                }
                types.push(normalized);
            }
            "spread_parameter" => {
                let mut inner = param.walk();
                let ty = param
                    .named_children(&mut inner)
                    .find(|c| !matches!(c.kind(), "modifiers" | "variable_declarator"));
                if let Some(ty) = ty {
                    types.push(format!("{}...", strip_whitespace(&source[ty.byte_range()])));
                }
            }
            _ => {}
        }
    }
    types
}

struct Extractor<'s> {
    source: &'s str,
    classes: Vec<SourceClass>,
}

impl Extractor<'_> {
    fn walk(&mut self, node: Node<'_>, path: &mut Vec<String>) -> Result<()> {
        let kind = node.kind();
        if TYPE_DECLARATIONS.contains(&kind) {
            let name = node
                .child_by_field_name("name")
                .map(|n| self.source[n.byte_range()].to_owned())
                .unwrap_or_default();
            path.push(name);
            if kind == "class_declaration" {
                let class = self.class(node, path)?;
                self.classes.push(class);
            }
            let mut cursor = node.walk();
            for child in node.named_children(&mut cursor) {
                self.walk(child, path)?;
            }
            path.pop();
            return Ok(());
        }
        let mut cursor = node.walk();
        for child in node.named_children(&mut cursor) {
            self.walk(child, path)?;
        }
        Ok(())
    }

    fn class(&self, node: Node<'_>, path: &[String]) -> Result<SourceClass> {
        let source = self.source;
        let name = path.last().cloned().unwrap_or_default();
        let mut attributes: Vec<AttributeDecl> = Vec::new();
        let mut seen = HashSet::new();
        let mut method_nodes = Vec::new();

        if let Some(body) = node.child_by_field_name("body") {
            let mut cursor = body.walk();
            for member in body.named_children(&mut cursor) {
                match member.kind() {
                    "field_declaration" => {
                        let is_static = has_modifier(member, "static");
                        let mut inner = member.walk();
                        for declarator in member.children_by_field_name("declarator", &mut inner) {
                            let Some(field) = declarator.child_by_field_name("name") else {
                                continue;
                            };
                            let field = source[field.byte_range()].to_owned();
                            if seen.insert(field.clone()) {
                                attributes.push(AttributeDecl {
                                    name: field,
                                    is_static,
                                });
                            }
                        }
                    }
                    "method_declaration" => method_nodes.push(member),
                    _ => {}
                }
            }
        }

        let attribute_names: HashSet<String> = attributes.iter().map(|a| a.name.clone()).collect();
        let methods: Vec<MethodView> = method_nodes
            .into_iter()
            .map(|m| self.method(m, &attribute_names))
            .collect();

        let has_static_member =
            attributes.iter().any(|a| a.is_static) || methods.iter().any(|m| m.is_static);
        let line_span = LineSpan::new(node.start_position().row + 1, node.end_position().row + 1);
        let (loc, blank_lines) = count_loc_and_blank(source, line_span)?;

        Ok(SourceClass {
            name,
            qualified_name: path.join("."),
            attributes,
            methods,
            has_static_member,
            line_span,
            loc,
            blank_lines,
        })
    }

    fn method(&self, node: Node<'_>, attributes: &HashSet<String>) -> MethodView {
        let source = self.source;
        let name = node
            .child_by_field_name("name")
            .map(|n| source[n.byte_range()].to_owned())
            .unwrap_or_default();
        let params = node.child_by_field_name("parameters");
        let parameter_types = params
            .map(|p| parameter_types(p, source))
            .unwrap_or_default();
        let parameter_names = params
            .map(|p| parameter_names(p, source))
            .unwrap_or_default();

        let (accessed_attributes, (decision_profile, cognitive_events)) =
            match node.child_by_field_name("body") {
                Some(body) => {
                    let context = ClassContext {
                        attributes: attributes.clone(),
                        parameters: parameter_names,
                    };
                    let signature = MethodSignature {
                        name: &name,
                        arity: parameter_types.len(),
                    };
                    (
                        extract_attribute_accesses(body, source, &context),
                        build_decision_profile(body, source, signature),
                    )
                }
                // abstract and native methods
                None => Default::default(),
            };

        MethodView {
            is_static: has_modifier(node, "static"),
            name,
            parameter_types,
            accessed_attributes,
            decision_profile,
            cognitive_events,
        }
    }
}
