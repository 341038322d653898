//! The assertion families: normalized string comparison, AST equality, and
//! query-style checks on parsed output.
//!
//! Every assertion returns a [`Verdict`] value — pass or fail plus an
//! explanation — and never panics or throws. How verdicts are reported is
//! the caller's business, which keeps these functions embeddable in any
//! harness.

mod normalize;

pub use normalize::NormalizationPolicy;

use std::fmt;

use crate::jtl::{
    ast_diff, ast_equals, partial_parse, EntryPoint, JtlClassDecl, JtlCompilationUnit,
    JtlMethodDecl, JtlNode,
};

/// Which assertion produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssertionKind {
    StringEquals,
    AstEquals,
    HasClass,
    HasAttribute,
    HasMethod,
    MethodSignature,
    ContextConditions,
    OutputCount,
}

impl AssertionKind {
    /// Manifest spelling.
    pub fn name(self) -> &'static str {
        match self {
            AssertionKind::StringEquals => "string_equals",
            AssertionKind::AstEquals => "ast_equals",
            AssertionKind::HasClass => "has_class",
            AssertionKind::HasAttribute => "has_attribute",
            AssertionKind::HasMethod => "has_method",
            AssertionKind::MethodSignature => "method_signature",
            AssertionKind::ContextConditions => "context_conditions_clean",
            AssertionKind::OutputCount => "output_count",
        }
    }
}

impl fmt::Display for AssertionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The structured result of one assertion. A failed verdict always carries
/// a non-empty explanation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub kind: AssertionKind,
    pub explanation: String,
}

impl Verdict {
    pub fn pass(kind: AssertionKind) -> Self {
        Verdict {
            passed: true,
            kind,
            explanation: String::new(),
        }
    }

    pub fn fail(kind: AssertionKind, explanation: impl Into<String>) -> Self {
        let explanation = explanation.into();
        debug_assert!(!explanation.is_empty());
        Verdict {
            passed: false,
            kind,
            explanation,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "[{}] pass", self.kind)
        } else {
            write!(f, "[{}] FAIL: {}", self.kind, self.explanation)
        }
    }
}

/// Compares two texts after applying `policy` to both. On failure the
/// explanation names the first differing normalized line and column.
pub fn compare_strings(actual: &str, expected: &str, policy: &NormalizationPolicy) -> Verdict {
    let actual_n = policy.normalize(actual);
    let expected_n = policy.normalize(expected);
    if actual_n == expected_n {
        return Verdict::pass(AssertionKind::StringEquals);
    }
    let (line, col, actual_line, expected_line) = first_difference(&actual_n, &expected_n);
    Verdict::fail(
        AssertionKind::StringEquals,
        format!(
            "first difference at line {line}, column {col}: actual {actual_line:?} vs expected {expected_line:?}"
        ),
    )
}

/// First differing position between two normalized texts (1-based line and
/// column, in characters), plus both offending lines.
fn first_difference(actual: &str, expected: &str) -> (usize, usize, String, String) {
    let actual_lines: Vec<&str> = actual.split('\n').collect();
    let expected_lines: Vec<&str> = expected.split('\n').collect();
    for (i, (a, e)) in actual_lines.iter().zip(&expected_lines).enumerate() {
        if a == e {
            continue;
        }
        let col = a
            .chars()
            .zip(e.chars())
            .take_while(|(x, y)| x == y)
            .count()
            + 1;
        return (i + 1, col, (*a).to_string(), (*e).to_string());
    }
    // One text is a prefix of the other: the difference is the first
    // line the shorter one lacks.
    let line = actual_lines.len().min(expected_lines.len()) + 1;
    let at = |lines: &[&str]| {
        lines
            .get(line - 1)
            .map(|l| (*l).to_string())
            .unwrap_or_else(|| "<missing line>".to_string())
    };
    (line, 1, at(&actual_lines), at(&expected_lines))
}

/// Parses both texts at `entry` and compares the ASTs structurally. Parse
/// failures become fail verdicts naming the side, flagged as syntactic; an
/// AST mismatch renders the full diff.
pub fn assert_ast_equals(actual_text: &str, expected_text: &str, entry: EntryPoint) -> Verdict {
    let actual = match partial_parse(entry, actual_text) {
        Ok(node) => node,
        Err(e) => {
            return Verdict::fail(
                AssertionKind::AstEquals,
                format!("syntactic: actual output does not parse as {entry}: {e}"),
            )
        }
    };
    let expected = match partial_parse(entry, expected_text) {
        Ok(node) => node,
        Err(e) => {
            return Verdict::fail(
                AssertionKind::AstEquals,
                format!("syntactic: expected text does not parse as {entry}: {e}"),
            )
        }
    };
    let equal = ast_equals(&actual, &expected)
        .expect("one entry point always yields one node kind");
    if equal {
        return Verdict::pass(AssertionKind::AstEquals);
    }
    let diff = ast_diff(&actual, &expected).expect("kinds match");
    Verdict::fail(
        AssertionKind::AstEquals,
        format!(
            "ASTs differ ({} mismatch(es)):\n{}",
            diff.mismatches.len(),
            diff.rendered()
        ),
    )
}

/// Passes iff the unit declares a class with exactly this name.
pub fn assert_has_class(unit: &JtlCompilationUnit, name: &str) -> Verdict {
    if unit.types.iter().any(|c| c.name == name) {
        return Verdict::pass(AssertionKind::HasClass);
    }
    let found: Vec<&str> = unit.types.iter().map(|c| c.name.as_str()).collect();
    Verdict::fail(
        AssertionKind::HasClass,
        if found.is_empty() {
            format!("no class `{name}`: the compilation unit declares no classes")
        } else {
            format!("no class `{name}`: unit declares {}", found.join(", "))
        },
    )
}

/// Passes iff the class has a field with this name whose printed type
/// equals `printed_type`.
pub fn assert_has_attribute(class: &JtlClassDecl, name: &str, printed_type: &str) -> Verdict {
    let fields: Vec<_> = class
        .members
        .iter()
        .filter_map(|m| match m {
            crate::jtl::JtlMember::Field(f) => Some(f),
            _ => None,
        })
        .collect();
    match fields.iter().find(|f| f.name == name) {
        Some(field) if field.ty.printed() == printed_type => {
            Verdict::pass(AssertionKind::HasAttribute)
        }
        Some(field) => Verdict::fail(
            AssertionKind::HasAttribute,
            format!(
                "attribute `{name}` has type `{}`, expected `{printed_type}`",
                field.ty.printed()
            ),
        ),
        None => Verdict::fail(
            AssertionKind::HasAttribute,
            format!(
                "class `{}` has no attribute `{name}`{}",
                class.name,
                if fields.is_empty() {
                    String::new()
                } else {
                    format!(
                        " (attributes: {})",
                        fields.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(", ")
                    )
                }
            ),
        ),
    }
}

/// Passes iff the class has a method matching name, printed return type,
/// and the exact ordered parameter-type list.
pub fn assert_has_method(
    class: &JtlClassDecl,
    name: &str,
    printed_return_type: &str,
    printed_param_types: &[String],
) -> Verdict {
    let methods: Vec<&JtlMethodDecl> = class
        .members
        .iter()
        .filter_map(|m| match m {
            crate::jtl::JtlMember::Method(m) => Some(m),
            _ => None,
        })
        .collect();
    let named: Vec<&&JtlMethodDecl> = methods.iter().filter(|m| m.name == name).collect();
    if named.is_empty() {
        return Verdict::fail(
            AssertionKind::HasMethod,
            format!("class `{}` has no method `{name}`", class.name),
        );
    }
    for method in &named {
        let param_types: Vec<String> = method.params.iter().map(|p| p.ty.printed()).collect();
        if method.return_type.printed() == printed_return_type
            && param_types == printed_param_types
        {
            return Verdict::pass(AssertionKind::HasMethod);
        }
    }
    let candidates: Vec<String> = named
        .iter()
        .map(|m| {
            format!(
                "{} {name}({})",
                m.return_type.printed(),
                m.params
                    .iter()
                    .map(|p| p.ty.printed())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    Verdict::fail(
        AssertionKind::HasMethod,
        format!(
            "no method `{printed_return_type} {name}({})`; found {}",
            printed_param_types.join(", "),
            candidates.join("; ")
        ),
    )
}

/// A single check against one method declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MethodSignatureCheck {
    ReturnTypeEquals(String),
    NameEquals(String),
    HasParameter {
        printed_type: String,
        name: String,
    },
}

pub fn assert_method_signature(method: &JtlMethodDecl, check: &MethodSignatureCheck) -> Verdict {
    let kind = AssertionKind::MethodSignature;
    match check {
        MethodSignatureCheck::ReturnTypeEquals(expected) => {
            let actual = method.return_type.printed();
            if &actual == expected {
                Verdict::pass(kind)
            } else {
                Verdict::fail(
                    kind,
                    format!("return type is `{actual}`, expected `{expected}`"),
                )
            }
        }
        MethodSignatureCheck::NameEquals(expected) => {
            if &method.name == expected {
                Verdict::pass(kind)
            } else {
                Verdict::fail(
                    kind,
                    format!("method name is `{}`, expected `{expected}`", method.name),
                )
            }
        }
        MethodSignatureCheck::HasParameter { printed_type, name } => {
            if method
                .params
                .iter()
                .any(|p| &p.ty.printed() == printed_type && &p.name == name)
            {
                Verdict::pass(kind)
            } else {
                let found: Vec<String> = method
                    .params
                    .iter()
                    .map(|p| format!("{} {}", p.ty.printed(), p.name))
                    .collect();
                Verdict::fail(
                    kind,
                    format!(
                        "no parameter `{printed_type} {name}`; parameters are ({})",
                        found.join(", ")
                    ),
                )
            }
        }
    }
}

/// Parses `text` at `entry` and passes iff no context condition is
/// violated. A parse failure is a (syntactic) fail verdict.
pub fn assert_context_conditions_clean(text: &str, entry: EntryPoint) -> Verdict {
    let kind = AssertionKind::ContextConditions;
    let node: JtlNode = match partial_parse(entry, text) {
        Ok(node) => node,
        Err(e) => {
            return Verdict::fail(kind, format!("syntactic: output does not parse as {entry}: {e}"))
        }
    };
    let violations = crate::jtl::check_context_conditions(&node);
    if violations.is_empty() {
        return Verdict::pass(kind);
    }
    let lines: Vec<String> = violations
        .iter()
        .map(|v| format!("{} at {}: {}", v.code, v.path, v.message))
        .collect();
    Verdict::fail(
        kind,
        format!("{} context condition violation(s):\n{}", lines.len(), lines.join("\n")),
    )
}
