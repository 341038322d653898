//! Target-language context conditions.
//!
//! CC1 — an identifier used in a method body must be declared by an earlier
//! local variable in a live enclosing block, be a parameter, or (when
//! checking a class or compilation unit) be a field of the enclosing class.
//!
//! CC2 — a class must not declare two fields with the same name or two
//! methods with the same signature. The parser accepts such classes on
//! purpose: generated code is exactly what these checks are for.

use std::collections::HashSet;

use super::ast::*;

/// One broken context condition. Violations are values, never errors; all
/// of them are reported, in document order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: &'static str,
    pub path: String,
    pub message: String,
}

pub fn check_context_conditions(node: &JtlNode) -> Vec<Violation> {
    let mut violations = Vec::new();
    match node {
        JtlNode::Unit(unit) => {
            for (i, class) in unit.types.iter().enumerate() {
                check_class(&mut violations, &format!("types[{i}]"), class);
            }
        }
        JtlNode::Class(class) => check_class(&mut violations, "", class),
        JtlNode::Method(method) => check_method(&mut violations, "", method, &HashSet::new()),
        JtlNode::Statements(stmts) => {
            let mut scopes = vec![HashSet::new()];
            check_stmts(&mut violations, "statements", stmts, &mut scopes);
        }
        JtlNode::Field(_) => {}
    }
    violations
}

fn join(prefix: &str, field: &str) -> String {
    if prefix.is_empty() {
        field.to_string()
    } else {
        format!("{prefix}.{field}")
    }
}

fn check_class(violations: &mut Vec<Violation>, prefix: &str, class: &JtlClassDecl) {
    let mut field_names: HashSet<&str> = HashSet::new();
    let mut method_sigs: HashSet<String> = HashSet::new();
    for (i, member) in class.members.iter().enumerate() {
        match member {
            JtlMember::Field(field) => {
                if !field_names.insert(&field.name) {
                    violations.push(Violation {
                        code: "CC2",
                        path: join(prefix, &format!("members[{i}]")),
                        message: format!(
                            "class `{}` declares field `{}` more than once",
                            class.name, field.name
                        ),
                    });
                }
            }
            JtlMember::Method(method) => {
                let sig = format!(
                    "{}({})",
                    method.name,
                    method
                        .params
                        .iter()
                        .map(|p| p.ty.printed())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                if !method_sigs.insert(sig.clone()) {
                    violations.push(Violation {
                        code: "CC2",
                        path: join(prefix, &format!("members[{i}]")),
                        message: format!(
                            "class `{}` declares method `{sig}` more than once",
                            class.name
                        ),
                    });
                }
            }
        }
    }
    let fields: HashSet<String> = class
        .members
        .iter()
        .filter_map(|m| match m {
            JtlMember::Field(f) => Some(f.name.clone()),
            JtlMember::Method(_) => None,
        })
        .collect();
    for (i, member) in class.members.iter().enumerate() {
        if let JtlMember::Method(method) = member {
            check_method(
                violations,
                &join(prefix, &format!("members[{i}]")),
                method,
                &fields,
            );
        }
    }
}

fn check_method(
    violations: &mut Vec<Violation>,
    prefix: &str,
    method: &JtlMethodDecl,
    fields: &HashSet<String>,
) {
    let Some(body) = &method.body else { return };
    let mut outer: HashSet<String> = fields.clone();
    outer.extend(method.params.iter().map(|p| p.name.clone()));
    let mut scopes = vec![outer, HashSet::new()];
    check_stmts(violations, &join(prefix, "body"), body, &mut scopes);
}

/// Walks statements in order: uses are checked against the live scopes
/// before the statement's own declaration becomes visible, so `int a = a;`
/// is a violation.
fn check_stmts(
    violations: &mut Vec<Violation>,
    prefix: &str,
    stmts: &[JtlStmt],
    scopes: &mut Vec<HashSet<String>>,
) {
    for (i, stmt) in stmts.iter().enumerate() {
        let path = format!("{prefix}[{i}]");
        if let JtlStmt::Block(inner) = stmt {
            scopes.push(HashSet::new());
            check_stmts(violations, &path, inner, scopes);
            scopes.pop();
            continue;
        }
        for ident in stmt.used_idents() {
            if !scopes.iter().any(|s| s.contains(ident)) {
                violations.push(Violation {
                    code: "CC1",
                    path: path.clone(),
                    message: format!("identifier `{ident}` used before definition"),
                });
            }
        }
        if let JtlStmt::LocalVarDecl { name, .. } = stmt {
            scopes
                .last_mut()
                .expect("scope stack is never empty")
                .insert(name.clone());
        }
    }
}
