//! Structural AST comparison: boolean equality and field-level diff.
//!
//! `ast_equals` and `ast_diff` are deliberately independent routes —
//! equality is structural (`PartialEq`), the diff walks fields — and the
//! test suite holds them to `diff empty ⇔ equal`.

use thiserror::Error;

use super::ast::*;

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("cannot compare a {left} with a {right}")]
pub struct KindMismatch {
    pub left: &'static str,
    pub right: &'static str,
}

/// One differing field: the path from the entry node and both printed
/// fragments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub path: String,
    pub expected: String,
    pub actual: String,
}

/// The mismatches between two nodes, in traversal order. Empty exactly when
/// the nodes are structurally equal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AstDiff {
    pub mismatches: Vec<Mismatch>,
}

impl AstDiff {
    pub fn is_empty(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Human-readable rendering, one mismatch per line.
    pub fn rendered(&self) -> String {
        self.mismatches
            .iter()
            .map(|m| format!("{}: expected `{}`, actual `{}`", m.path, m.expected, m.actual))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// True iff the nodes match field by field: modifiers as sets, member order
/// significant, whitespace and comments already erased by parsing.
pub fn ast_equals(a: &JtlNode, b: &JtlNode) -> Result<bool, KindMismatch> {
    check_kinds(a, b)?;
    Ok(a == b)
}

/// Field-level differences between `actual` and `expected`, paths rooted at
/// the entry node. Recursion descends into composites of the same kind; a
/// composite of a different kind is reported as one mismatch for the whole
/// subtree.
pub fn ast_diff(actual: &JtlNode, expected: &JtlNode) -> Result<AstDiff, KindMismatch> {
    check_kinds(actual, expected)?;
    let mut diff = AstDiff::default();
    match (actual, expected) {
        (JtlNode::Unit(a), JtlNode::Unit(e)) => diff_unit(&mut diff, a, e),
        (JtlNode::Class(a), JtlNode::Class(e)) => diff_class(&mut diff, "", a, e),
        (JtlNode::Field(a), JtlNode::Field(e)) => diff_field(&mut diff, "", a, e),
        (JtlNode::Method(a), JtlNode::Method(e)) => diff_method(&mut diff, "", a, e),
        (JtlNode::Statements(a), JtlNode::Statements(e)) => {
            diff_stmt_list(&mut diff, "statements", a, e)
        }
        _ => unreachable!("kinds checked above"),
    }
    Ok(diff)
}

fn check_kinds(a: &JtlNode, b: &JtlNode) -> Result<(), KindMismatch> {
    if std::mem::discriminant(a) != std::mem::discriminant(b) {
        return Err(KindMismatch {
            left: a.kind_name(),
            right: b.kind_name(),
        });
    }
    Ok(())
}

fn join(prefix: &str, field: &str) -> String {
    if prefix.is_empty() {
        field.to_string()
    } else {
        format!("{prefix}.{field}")
    }
}

fn push_if_differs(diff: &mut AstDiff, path: String, actual: String, expected: String) {
    if actual != expected {
        diff.mismatches.push(Mismatch {
            path,
            expected,
            actual,
        });
    }
}

fn printed_option(value: &Option<String>) -> String {
    value.clone().unwrap_or_else(|| "<none>".to_string())
}

fn printed_init(init: &Option<ExprTokens>) -> String {
    init.as_ref()
        .map(|e| e.printed())
        .unwrap_or_else(|| "<none>".to_string())
}

fn diff_unit(diff: &mut AstDiff, actual: &JtlCompilationUnit, expected: &JtlCompilationUnit) {
    push_if_differs(
        diff,
        "package".to_string(),
        printed_option(&actual.package),
        printed_option(&expected.package),
    );
    push_if_differs(
        diff,
        "imports".to_string(),
        actual.imports.join(", "),
        expected.imports.join(", "),
    );
    if actual.types.len() != expected.types.len() {
        push_if_differs(
            diff,
            "types".to_string(),
            format!("{} type(s)", actual.types.len()),
            format!("{} type(s)", expected.types.len()),
        );
        return;
    }
    for (i, (a, e)) in actual.types.iter().zip(&expected.types).enumerate() {
        diff_class(diff, &format!("types[{i}]"), a, e);
    }
}

fn diff_class(diff: &mut AstDiff, prefix: &str, actual: &JtlClassDecl, expected: &JtlClassDecl) {
    push_if_differs(
        diff,
        join(prefix, "modifiers"),
        print_modifiers(&actual.modifiers),
        print_modifiers(&expected.modifiers),
    );
    push_if_differs(
        diff,
        join(prefix, "name"),
        actual.name.clone(),
        expected.name.clone(),
    );
    push_if_differs(
        diff,
        join(prefix, "superclass"),
        printed_option(&actual.superclass),
        printed_option(&expected.superclass),
    );
    push_if_differs(
        diff,
        join(prefix, "interfaces"),
        actual.interfaces.join(", "),
        expected.interfaces.join(", "),
    );
    if actual.members.len() != expected.members.len() {
        push_if_differs(
            diff,
            join(prefix, "members"),
            format!("{} member(s)", actual.members.len()),
            format!("{} member(s)", expected.members.len()),
        );
        return;
    }
    for (i, (a, e)) in actual.members.iter().zip(&expected.members).enumerate() {
        let path = join(prefix, &format!("members[{i}]"));
        match (a, e) {
            (JtlMember::Field(af), JtlMember::Field(ef)) => diff_field(diff, &path, af, ef),
            (JtlMember::Method(am), JtlMember::Method(em)) => diff_method(diff, &path, am, em),
            (a, e) => {
                // Different member kinds: one entry for the whole subtree.
                diff.mismatches.push(Mismatch {
                    path,
                    expected: format!("a {}", e.kind_name()),
                    actual: format!("a {}", a.kind_name()),
                });
            }
        }
    }
}

fn diff_field(diff: &mut AstDiff, prefix: &str, actual: &JtlFieldDecl, expected: &JtlFieldDecl) {
    push_if_differs(
        diff,
        join(prefix, "modifiers"),
        print_modifiers(&actual.modifiers),
        print_modifiers(&expected.modifiers),
    );
    push_if_differs(
        diff,
        join(prefix, "type"),
        actual.ty.printed(),
        expected.ty.printed(),
    );
    push_if_differs(
        diff,
        join(prefix, "name"),
        actual.name.clone(),
        expected.name.clone(),
    );
    push_if_differs(
        diff,
        join(prefix, "initializer"),
        printed_init(&actual.initializer),
        printed_init(&expected.initializer),
    );
}

fn diff_method(diff: &mut AstDiff, prefix: &str, actual: &JtlMethodDecl, expected: &JtlMethodDecl) {
    push_if_differs(
        diff,
        join(prefix, "modifiers"),
        print_modifiers(&actual.modifiers),
        print_modifiers(&expected.modifiers),
    );
    push_if_differs(
        diff,
        join(prefix, "returnType"),
        actual.return_type.printed(),
        expected.return_type.printed(),
    );
    push_if_differs(
        diff,
        join(prefix, "name"),
        actual.name.clone(),
        expected.name.clone(),
    );
    push_if_differs(
        diff,
        join(prefix, "constructor"),
        actual.constructor.to_string(),
        expected.constructor.to_string(),
    );
    if actual.params.len() != expected.params.len() {
        push_if_differs(
            diff,
            join(prefix, "params"),
            format!("{} parameter(s)", actual.params.len()),
            format!("{} parameter(s)", expected.params.len()),
        );
    } else {
        for (i, (a, e)) in actual.params.iter().zip(&expected.params).enumerate() {
            push_if_differs(
                diff,
                join(prefix, &format!("params[{i}].type")),
                a.ty.printed(),
                e.ty.printed(),
            );
            push_if_differs(
                diff,
                join(prefix, &format!("params[{i}].name")),
                a.name.clone(),
                e.name.clone(),
            );
        }
    }
    push_if_differs(
        diff,
        join(prefix, "throws"),
        actual.throws.join(", "),
        expected.throws.join(", "),
    );
    match (&actual.body, &expected.body) {
        (None, None) => {}
        (Some(a), Some(e)) => diff_stmt_list(diff, &join(prefix, "body"), a, e),
        (a, e) => {
            let describe = |body: &Option<Vec<JtlStmt>>| match body {
                Some(stmts) => format!("{{ {} }}", print_stmt_list(stmts)),
                None => "<none>".to_string(),
            };
            push_if_differs(diff, join(prefix, "body"), describe(a), describe(e));
        }
    }
}

fn diff_stmt_list(diff: &mut AstDiff, prefix: &str, actual: &[JtlStmt], expected: &[JtlStmt]) {
    if actual.len() != expected.len() {
        push_if_differs(
            diff,
            prefix.to_string(),
            format!("{} statement(s)", actual.len()),
            format!("{} statement(s)", expected.len()),
        );
        return;
    }
    for (i, (a, e)) in actual.iter().zip(expected).enumerate() {
        let path = format!("{prefix}[{i}]");
        match (a, e) {
            (
                JtlStmt::LocalVarDecl {
                    ty: at,
                    name: an,
                    initializer: ai,
                },
                JtlStmt::LocalVarDecl {
                    ty: et,
                    name: en,
                    initializer: ei,
                },
            ) => {
                push_if_differs(diff, format!("{path}.type"), at.printed(), et.printed());
                push_if_differs(diff, format!("{path}.name"), an.clone(), en.clone());
                push_if_differs(
                    diff,
                    format!("{path}.initializer"),
                    printed_init(ai),
                    printed_init(ei),
                );
            }
            (JtlStmt::ExprStmt(a), JtlStmt::ExprStmt(e)) => {
                push_if_differs(diff, format!("{path}.expr"), a.printed(), e.printed());
            }
            (JtlStmt::Return(a), JtlStmt::Return(e)) => {
                let printed = |x: &Option<ExprTokens>| {
                    x.as_ref()
                        .map(|e| e.printed())
                        .unwrap_or_else(|| "<none>".to_string())
                };
                push_if_differs(diff, format!("{path}.expr"), printed(a), printed(e));
            }
            (JtlStmt::Block(a), JtlStmt::Block(e)) => diff_stmt_list(diff, &path, a, e),
            (a, e) => {
                diff.mismatches.push(Mismatch {
                    path,
                    expected: format!("a {}", e.kind_name()),
                    actual: format!("a {}", a.kind_name()),
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jtl::{partial_parse, EntryPoint};

    fn field(source: &str) -> JtlNode {
        partial_parse(EntryPoint::FieldDecl, source).unwrap()
    }

    fn method(source: &str) -> JtlNode {
        partial_parse(EntryPoint::MethodDecl, source).unwrap()
    }

    #[test]
    fn whitespace_only_difference_is_equal() {
        let a = field("public int x =5;");
        let b = field("public  int x = 5 ;");
        assert!(ast_equals(&a, &b).unwrap());
    }

    #[test]
    fn node_equals_itself() {
        let a = field("public int x = 5;");
        assert!(ast_equals(&a, &a).unwrap());
    }

    #[test]
    fn different_name_and_type_are_not_equal() {
        let a = field("int attributeName;");
        let b = field("String otherName;");
        assert!(!ast_equals(&a, &b).unwrap());
    }

    #[test]
    fn modifier_order_is_formatting() {
        let a = method("static public void run() {}");
        let b = method("public static void run() {}");
        assert!(ast_equals(&a, &b).unwrap());
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let a = field("int x;");
        let b = method("void run();");
        assert!(ast_equals(&a, &b).is_err());
        assert!(ast_diff(&a, &b).is_err());
    }

    #[test]
    fn diff_reports_name_and_type() {
        let generated = field("public int attributeName = 5;");
        let expected = field("public String otherName = 5;");
        let diff = ast_diff(&generated, &expected).unwrap();
        assert_eq!(diff.mismatches.len(), 2);
        let paths: Vec<&str> = diff.mismatches.iter().map(|m| m.path.as_str()).collect();
        assert!(paths.contains(&"type"));
        assert!(paths.contains(&"name"));
        let type_mismatch = diff.mismatches.iter().find(|m| m.path == "type").unwrap();
        assert_eq!(type_mismatch.actual, "int");
        assert_eq!(type_mismatch.expected, "String");
    }

    #[test]
    fn equal_nodes_have_empty_diff() {
        let a = field("int x = 5;");
        let b = field("int  x  =  5 ;");
        assert!(ast_diff(&a, &b).unwrap().is_empty());
    }

    #[test]
    fn parameter_type_difference_has_indexed_path() {
        let a = method("void m(int a, String b) {}");
        let b = method("void m(int a, Object b) {}");
        let diff = ast_diff(&a, &b).unwrap();
        assert_eq!(diff.mismatches.len(), 1);
        assert_eq!(diff.mismatches[0].path, "params[1].type");
    }

    #[test]
    fn body_presence_difference_is_one_entry() {
        let a = method("void m();");
        let b = method("void m() {}");
        let diff = ast_diff(&a, &b).unwrap();
        assert_eq!(diff.mismatches.len(), 1);
        assert_eq!(diff.mismatches[0].path, "body");
    }

    #[test]
    fn statement_kind_difference_is_one_entry() {
        let a = method("void m() { return x; }");
        let b = method("void m() { x; }");
        let diff = ast_diff(&a, &b).unwrap();
        assert_eq!(diff.mismatches.len(), 1);
        assert_eq!(diff.mismatches[0].path, "body[0]");
    }

    /// The two comparison routes must agree: the diff is empty exactly
    /// when structural equality holds, and every mismatch shows two
    /// different printed fragments.
    #[test]
    fn diff_emptiness_coincides_with_equality_across_pairs() {
        let fields = [
            "int x;",
            "int x = 5;",
            "public int x = 5;",
            "public static int x = 5;",
            "String x = \"a b\";",
            "int[] x;",
        ];
        let methods = [
            "void m();",
            "void m() {}",
            "void m(int a) {}",
            "void m(int b) {}",
            "int m(int a) { return a; }",
            "int m(int a) throws E { return a; }",
            "public void m() { int a = 1; { a; } }",
        ];
        let mut nodes: Vec<JtlNode> = Vec::new();
        for f in fields {
            nodes.push(crate::jtl::partial_parse(crate::jtl::EntryPoint::FieldDecl, f).unwrap());
            nodes.push(crate::jtl::partial_parse(crate::jtl::EntryPoint::FieldDecl, f).unwrap());
        }
        let field_count = nodes.len();
        for m in methods {
            nodes.push(crate::jtl::partial_parse(crate::jtl::EntryPoint::MethodDecl, m).unwrap());
        }
        for (i, a) in nodes.iter().enumerate() {
            for (j, b) in nodes.iter().enumerate() {
                let same_kind = (i < field_count) == (j < field_count);
                if !same_kind {
                    continue;
                }
                let equal = ast_equals(a, b).unwrap();
                let diff = ast_diff(a, b).unwrap();
                assert_eq!(equal, diff.is_empty(), "pair {i}/{j}: {}", diff.rendered());
                for m in &diff.mismatches {
                    assert_ne!(m.expected, m.actual, "mismatch at {} shows no difference", m.path);
                }
            }
        }
    }

    #[test]
    fn canonical_printing_matches_the_stated_forms() {
        use crate::jtl::{partial_parse, print_node, EntryPoint};
        let field = partial_parse(EntryPoint::FieldDecl, "public  int x=5 ;").unwrap();
        assert_eq!(print_node(&field), "public int x = 5;");
        let bare = partial_parse(EntryPoint::FieldDecl, "int x;").unwrap();
        assert_eq!(print_node(&bare), "int x;");
        let method = partial_parse(EntryPoint::MethodDecl, "void m ( ) { }").unwrap();
        assert_eq!(print_node(&method), "void m() {}");
    }
}
