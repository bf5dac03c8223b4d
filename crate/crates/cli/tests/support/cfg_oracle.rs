//! Cyclomatic complexity by explicit control-flow graph: E - N + 2.
//!
//! Built straight from the tree-sitter syntax tree, without the library's
//! decision counting. Short-circuit operators are split into one decision
//! node per operand, a switch dispatch node has one edge per case constant
//! (plus one for a missing default), and a try entry node has one edge into
//! the body and one into each catch. Methods containing lambdas or anonymous
//! classes are reported as unsupported.

use std::collections::VecDeque;

use tree_sitter::{Node, Parser};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodCfg {
    pub class: String,
    pub method: String,
    /// Position among the class's methods, constructors excluded.
    pub index: usize,
    /// `None` when the body uses a construct the oracle does not model.
    pub cc: Option<u32>,
}

#[derive(Debug)]
struct Unsupported;

type Flow<T> = Result<T, Unsupported>;

#[derive(Default)]
struct Jump {
    label: Option<String>,
    is_loop: bool,
    is_switch: bool,
    breaks: Vec<usize>,
    continues: Vec<usize>,
}

#[derive(Default)]
struct Graph<'s> {
    src: &'s [u8],
    nodes: usize,
    edges: Vec<(usize, usize)>,
    jumps: Vec<Jump>,
    returns: Vec<usize>,
    pending_label: Option<String>,
}

impl<'s> Graph<'s> {
    fn node(&mut self, preds: &[usize]) -> usize {
        let n = self.nodes;
        self.nodes += 1;
        for &p in preds {
            self.edges.push((p, n));
        }
        n
    }

    fn text(&self, node: Node) -> String {
        node.utf8_text(self.src).unwrap_or_default().to_owned()
    }

    /// Splits a boolean expression into decision nodes. Returns the open
    /// exits taken when it is true and when it is false.
    fn cond(&mut self, expr: Node, preds: Vec<usize>) -> Flow<(Vec<usize>, Vec<usize>)> {
        match expr.kind() {
            "parenthesized_expression" => {
                let inner = expr.named_child(0).expect("parenthesized operand");
                self.cond(inner, preds)
            }
            "unary_expression"
                if expr.child_by_field_name("operator").map(|o| o.kind()) == Some("!") =>
            {
                let operand = expr.child_by_field_name("operand").unwrap();
                let (t, f) = self.cond(operand, preds)?;
                Ok((f, t))
            }
            "binary_expression" => {
                let op = expr.child_by_field_name("operator").unwrap().kind();
                let left = expr.child_by_field_name("left").unwrap();
                let right = expr.child_by_field_name("right").unwrap();
                match op {
                    "&&" => {
                        let (lt, mut lf) = self.cond(left, preds)?;
                        let (rt, rf) = self.cond(right, lt)?;
                        lf.extend(rf);
                        Ok((rt, lf))
                    }
                    "||" => {
                        let (mut lt, lf) = self.cond(left, preds)?;
                        let (rt, rf) = self.cond(right, lf)?;
                        lt.extend(rt);
                        Ok((lt, rf))
                    }
                    _ => self.atom(expr, preds),
                }
            }
            _ => self.atom(expr, preds),
        }
    }

    fn atom(&mut self, expr: Node, preds: Vec<usize>) -> Flow<(Vec<usize>, Vec<usize>)> {
        let preds = self.expr(expr, preds)?;
        let d = self.node(&preds);
        Ok((vec![d], vec![d]))
    }

    /// Flow through an expression evaluated for its value.
    fn expr(&mut self, expr: Node, preds: Vec<usize>) -> Flow<Vec<usize>> {
        match expr.kind() {
            "lambda_expression" | "class_body" => Err(Unsupported),
            "binary_expression"
                if matches!(
                    expr.child_by_field_name("operator").map(|o| o.kind()),
                    Some("&&" | "||")
                ) =>
            {
                // as a value only the left operand is tested; the right one
                // is evaluated, not branched on
                let op = expr.child_by_field_name("operator").unwrap().kind();
                let left = expr.child_by_field_name("left").unwrap();
                let right = expr.child_by_field_name("right").unwrap();
                let (t, f) = self.cond(left, preds)?;
                let (evaluate, mut skip) = if op == "&&" { (t, f) } else { (f, t) };
                skip.extend(self.expr(right, evaluate)?);
                Ok(skip)
            }
            "ternary_expression" => {
                let (t, f) = self.cond(expr.child_by_field_name("condition").unwrap(), preds)?;
                let mut a = self.expr(expr.child_by_field_name("consequence").unwrap(), t)?;
                let b = self.expr(expr.child_by_field_name("alternative").unwrap(), f)?;
                a.extend(b);
                Ok(a)
            }
            "switch_expression" => self.switch(expr, preds),
            _ => {
                let mut preds = preds;
                let mut cursor = expr.walk();
                let children: Vec<Node> = expr.named_children(&mut cursor).collect();
                for child in children {
                    preds = self.expr(child, preds)?;
                }
                Ok(preds)
            }
        }
    }

    fn stmts<'t>(
        &mut self,
        nodes: impl IntoIterator<Item = Node<'t>>,
        mut preds: Vec<usize>,
    ) -> Flow<Vec<usize>> {
        for node in nodes {
            preds = self.stmt(node, preds)?;
        }
        Ok(preds)
    }

    fn children<'t>(node: Node<'t>) -> Vec<Node<'t>> {
        let mut cursor = node.walk();
        node.named_children(&mut cursor)
            .filter(|c| !c.is_extra())
            .collect()
    }

    fn field<'t>(node: Node<'t>, name: &str) -> Node<'t> {
        node.child_by_field_name(name)
            .unwrap_or_else(|| panic!("{} without {name}", node.kind()))
    }

    fn take_label(&mut self) -> Option<String> {
        self.pending_label.take()
    }

    fn jump_target(&mut self, label: Option<&str>, for_continue: bool) -> &mut Jump {
        let index = self
            .jumps
            .iter()
            .rposition(|j| match label {
                Some(l) => j.label.as_deref() == Some(l),
                None if for_continue => j.is_loop,
                None => j.is_loop || j.is_switch,
            })
            .expect("jump target in scope");
        &mut self.jumps[index]
    }

    fn stmt(&mut self, node: Node, preds: Vec<usize>) -> Flow<Vec<usize>> {
        match node.kind() {
            "block" => self.stmts(Self::children(node), preds),
            "if_statement" => {
                let (t, f) = self.cond(Self::field(node, "condition"), preds)?;
                let mut exits = self.stmt(Self::field(node, "consequence"), t)?;
                match node.child_by_field_name("alternative") {
                    Some(alt) => exits.extend(self.stmt(alt, f)?),
                    None => exits.extend(f),
                }
                Ok(exits)
            }
            "while_statement" => {
                let label = self.take_label();
                let head = self.node(&preds);
                let (t, f) = self.cond(Self::field(node, "condition"), vec![head])?;
                let jump = self.loop_body(label, Self::field(node, "body"), t, head)?;
                Ok(f.into_iter().chain(jump.breaks).collect())
            }
            "do_statement" => {
                let label = self.take_label();
                let entry = self.node(&preds);
                self.jumps.push(Jump {
                    label,
                    is_loop: true,
                    ..Jump::default()
                });
                let body = self.stmt(Self::field(node, "body"), vec![entry]);
                let jump = self.jumps.pop().unwrap();
                let mut into_cond = body?;
                into_cond.extend(jump.continues);
                let check = self.node(&into_cond);
                let (t, f) = self.cond(Self::field(node, "condition"), vec![check])?;
                for p in t {
                    self.edges.push((p, entry));
                }
                Ok(f.into_iter().chain(jump.breaks).collect())
            }
            "for_statement" => {
                let label = self.take_label();
                let mut cursor = node.walk();
                let init: Vec<Node> = node.children_by_field_name("init", &mut cursor).collect();
                let mut preds = preds;
                for i in init {
                    preds = self.expr(i, preds)?;
                }
                let head = self.node(&preds);
                let (t, f) = match node.child_by_field_name("condition") {
                    Some(c) => self.cond(c, vec![head])?,
                    // no condition: an implicit `true` test
                    None => {
                        let d = self.node(&[head]);
                        (vec![d], vec![d])
                    }
                };
                self.jumps.push(Jump {
                    label,
                    is_loop: true,
                    ..Jump::default()
                });
                let body = self.stmt(Self::field(node, "body"), t);
                let jump = self.jumps.pop().unwrap();
                let mut tail = body?;
                tail.extend(jump.continues);
                let update_entry = self.node(&tail);
                let mut cursor = node.walk();
                let updates: Vec<Node> =
                    node.children_by_field_name("update", &mut cursor).collect();
                let mut preds = vec![update_entry];
                for u in updates {
                    preds = self.expr(u, preds)?;
                }
                for p in preds {
                    self.edges.push((p, head));
                }
                Ok(f.into_iter().chain(jump.breaks).collect())
            }
            "enhanced_for_statement" => {
                let label = self.take_label();
                let preds = self.expr(Self::field(node, "value"), preds)?;
                let head = self.node(&preds);
                let jump = self.loop_body(label, Self::field(node, "body"), vec![head], head)?;
                Ok(std::iter::once(head).chain(jump.breaks).collect())
            }
            "labeled_statement" => {
                let children = Self::children(node);
                let label = self.text(children[0]);
                let inner = children[1];
                if matches!(
                    inner.kind(),
                    "for_statement" | "enhanced_for_statement" | "while_statement" | "do_statement"
                ) {
                    self.pending_label = Some(label);
                    self.stmt(inner, preds)
                } else {
                    self.jumps.push(Jump {
                        label: Some(label),
                        ..Jump::default()
                    });
                    let exits = self.stmt(inner, preds);
                    let jump = self.jumps.pop().unwrap();
                    Ok(exits?.into_iter().chain(jump.breaks).collect())
                }
            }
            "break_statement" | "continue_statement" => {
                let label = node
                    .named_child(0)
                    .filter(|c| c.kind() == "identifier")
                    .map(|c| self.text(c));
                let is_continue = node.kind() == "continue_statement";
                let jump = self.jump_target(label.as_deref(), is_continue);
                if is_continue {
                    jump.continues.extend(preds);
                } else {
                    jump.breaks.extend(preds);
                }
                Ok(Vec::new())
            }
            "yield_statement" => {
                let preds = self.stmts_expr(node, preds)?;
                let index = self.jumps.iter().rposition(|j| j.is_switch).unwrap();
                self.jumps[index].breaks.extend(preds);
                Ok(Vec::new())
            }
            "return_statement" | "throw_statement" => {
                let preds = self.stmts_expr(node, preds)?;
                self.returns.extend(preds);
                Ok(Vec::new())
            }
            "switch_expression" => self.switch(node, preds),
            "try_statement" | "try_with_resources_statement" => self.try_stmt(node, preds),
            "synchronized_statement" => {
                let children = Self::children(node);
                let preds = self.expr(children[0], preds)?;
                self.stmt(Self::field(node, "body"), preds)
            }
            "class_declaration"
            | "interface_declaration"
            | "enum_declaration"
            | "record_declaration"
            | "local_class_declaration" => Ok(preds),
            ";" | "empty_statement" => Ok(preds),
            _ => self.stmts_expr(node, preds),
        }
    }

    /// Expression statements, declarations and the operands of
    /// return/throw/yield.
    fn stmts_expr(&mut self, node: Node, preds: Vec<usize>) -> Flow<Vec<usize>> {
        let mut preds = preds;
        for child in Self::children(node) {
            preds = self.expr(child, preds)?;
        }
        Ok(preds)
    }

    fn loop_body(
        &mut self,
        label: Option<String>,
        body: Node,
        entry: Vec<usize>,
        head: usize,
    ) -> Flow<Jump> {
        self.jumps.push(Jump {
            label,
            is_loop: true,
            ..Jump::default()
        });
        let exits = self.stmt(body, entry);
        let jump = self.jumps.pop().unwrap();
        for p in exits?.into_iter().chain(jump.continues.iter().copied()) {
            self.edges.push((p, head));
        }
        Ok(jump)
    }

    fn case_constants(label: Node) -> usize {
        Self::children(label)
            .iter()
            .filter(|c| c.kind() != "guard")
            .count()
    }

    fn switch(&mut self, node: Node, preds: Vec<usize>) -> Flow<Vec<usize>> {
        let label = self.take_label();
        let preds = self.expr(Self::field(node, "condition"), preds)?;
        let dispatch = self.node(&preds);
        self.jumps.push(Jump {
            label,
            is_switch: true,
            ..Jump::default()
        });
        let result = self.switch_arms(Self::field(node, "body"), dispatch);
        let jump = self.jumps.pop().unwrap();
        let (mut exits, has_default) = result?;
        if !has_default {
            exits.push(dispatch);
        }
        exits.extend(jump.breaks);
        Ok(exits)
    }

    fn switch_arms(&mut self, body: Node, dispatch: usize) -> Flow<(Vec<usize>, bool)> {
        let mut has_default = false;
        let mut fallthrough = Vec::new();
        let mut exits = Vec::new();
        for arm in Self::children(body) {
            let children = Self::children(arm);
            let mut entries = Vec::new();
            let mut rest = Vec::new();
            for child in &children {
                if child.kind() == "switch_label" {
                    let constants = Self::case_constants(*child);
                    if constants == 0 {
                        has_default = true;
                        entries.push(dispatch);
                    } else {
                        entries.extend(std::iter::repeat_n(dispatch, constants));
                    }
                } else {
                    rest.push(*child);
                }
            }
            match arm.kind() {
                "switch_block_statement_group" => {
                    entries.append(&mut fallthrough);
                    let entry = self.node(&entries);
                    fallthrough = self.stmts(rest, vec![entry])?;
                }
                "switch_rule" => {
                    let entry = self.node(&entries);
                    let body = rest[0];
                    let out = if body.kind() == "expression_statement"
                        || body.kind() == "block"
                        || body.kind() == "throw_statement"
                    {
                        self.stmt(body, vec![entry])?
                    } else {
                        self.expr(body, vec![entry])?
                    };
                    exits.extend(out);
                }
                other => panic!("unexpected switch arm {other}"),
            }
        }
        exits.extend(fallthrough);
        Ok((exits, has_default))
    }

    fn try_stmt(&mut self, node: Node, preds: Vec<usize>) -> Flow<Vec<usize>> {
        let preds = match node.child_by_field_name("resources") {
            Some(r) => self.expr(r, preds)?,
            None => preds,
        };
        let entry = self.node(&preds);
        let mut exits = self.stmt(Self::field(node, "body"), vec![entry])?;
        let mut finally = None;
        for child in Self::children(node) {
            match child.kind() {
                "catch_clause" => {
                    let handler = self.node(&[entry]);
                    exits.extend(self.stmt(Self::field(child, "body"), vec![handler])?);
                }
                "finally_clause" => finally = Some(child),
                _ => {}
            }
        }
        match finally {
            Some(f) => {
                let block = Self::children(f)
                    .into_iter()
                    .find(|c| c.kind() == "block")
                    .unwrap();
                self.stmt(block, exits)
            }
            None => Ok(exits),
        }
    }

    fn connected(&self) -> bool {
        if self.nodes == 0 {
            return true;
        }
        let mut adjacent = vec![Vec::new(); self.nodes];
        for &(a, b) in &self.edges {
            adjacent[a].push(b);
            adjacent[b].push(a);
        }
        let mut seen = vec![false; self.nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(n) = queue.pop_front() {
            for &m in &adjacent[n] {
                if !seen[m] {
                    seen[m] = true;
                    queue.push_back(m);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// E - N + 2 for one method body, or `None` if unsupported.
pub fn method_cc(body: Node, src: &str) -> Option<u32> {
    let mut g = Graph {
        src: src.as_bytes(),
        ..Graph::default()
    };
    let entry = g.node(&[]);
    let exits = g.stmt(body, vec![entry]).ok()?;
    let mut into_exit = exits;
    into_exit.append(&mut g.returns);
    g.node(&into_exit);
    assert!(g.connected(), "control-flow graph is disconnected");
    let cc = g.edges.len() as i64 - g.nodes as i64 + 2;
    Some(u32::try_from(cc).expect("positive complexity"))
}

/// Every method of every class declared in `src`.
pub fn analyze(src: &str) -> Vec<MethodCfg> {
    let mut parser = Parser::new();
    parser
        .set_language(&tree_sitter_java::LANGUAGE.into())
        .expect("java grammar");
    let tree = parser.parse(src, None).expect("parse");
    assert!(!tree.root_node().has_error(), "fixture does not parse");
    let mut out = Vec::new();
    collect(tree.root_node(), src, &mut out);
    out
}

fn collect(node: Node, src: &str, out: &mut Vec<MethodCfg>) {
    if node.kind() == "class_declaration" {
        let class = node
            .child_by_field_name("name")
            .and_then(|n| n.utf8_text(src.as_bytes()).ok())
            .unwrap_or_default()
            .to_owned();
        let body = node.child_by_field_name("body").unwrap();
        let mut cursor = body.walk();
        let mut index = 0;
        for member in body.named_children(&mut cursor) {
            if member.kind() != "method_declaration" {
                continue;
            }
            let method = member
                .child_by_field_name("name")
                .and_then(|n| n.utf8_text(src.as_bytes()).ok())
                .unwrap_or_default()
                .to_owned();
            let cc = match member.child_by_field_name("body") {
                Some(b) => method_cc(b, src),
                None => Some(1),
            };
            out.push(MethodCfg {
                class: class.clone(),
                method,
                index,
                cc,
            });
            index += 1;
        }
    }
    let mut cursor = node.walk();
    for child in node.named_children(&mut cursor) {
        collect(child, src, out);
    }
}
