//! Test case execution and assertion evaluation.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use thiserror::Error;

use crate::assertions::{
    assert_ast_equals, assert_context_conditions_clean, assert_has_attribute, assert_has_class,
    assert_has_method, assert_method_signature, compare_strings, AssertionKind, Verdict,
};
use crate::cd::{collect_nodes, QualifiedRef};
use crate::jtl::{partial_parse, EntryPoint};
use crate::mock::{assemble_context, load_model, mock_symbol_table};
use crate::tgl::{render, TemplateRegistry};

use super::{AssertionSpec, CheckSpec, OutputTrace, TargetSpec, TestCase, TestResult, TraceEntry};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TraceLookupError {
    #[error("no output for `{0}`")]
    NotFound(QualifiedRef),
    #[error("more than one output for `{0}`")]
    Ambiguous(QualifiedRef),
}

/// The rendered text recorded for the element `reference` addresses.
pub fn output_for<'t>(
    trace: &'t OutputTrace,
    reference: &QualifiedRef,
) -> Result<&'t str, TraceLookupError> {
    let mut matches = trace.entries.iter().filter(|e| &e.reference == reference);
    let first = matches
        .next()
        .ok_or_else(|| TraceLookupError::NotFound(reference.clone()))?;
    if matches.next().is_some() {
        return Err(TraceLookupError::Ambiguous(reference.clone()));
    }
    Ok(&first.rendered)
}

/// Output file name for the element at traversal index `index`:
/// `NNN_<sanitized-ref>.out`, where every character outside
/// `[A-Za-z0-9._-]` of the reference becomes `_`.
pub fn output_file_name(index: usize, reference: &QualifiedRef) -> String {
    let sanitized: String = reference
        .as_str()
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("{index:03}_{sanitized}.out")
}

/// Runs one test case: parse the model, render the template under test for
/// every node of the case's kind, write one output file per node, then
/// evaluate every assertion against the trace.
///
/// Pipeline errors (unreadable files, parse failures, render errors) are
/// collected as diagnostics and fail the case, but never abort the
/// remaining elements or assertions.
pub fn run_test_case(case: &TestCase) -> (OutputTrace, TestResult) {
    let mut diagnostics: Vec<String> = Vec::new();
    let mut trace = OutputTrace::default();

    let model = match load_model(&case.input_model) {
        Ok(model) => Some(model),
        Err(e) => {
            diagnostics.push(format!("input model: {e}"));
            None
        }
    };

    let mut registry = TemplateRegistry::new();
    for (name, path) in &case.templates {
        match fs::read_to_string(path) {
            Ok(source) => {
                if let Err(e) = registry.insert_source(name, &source) {
                    diagnostics.push(format!("template `{name}`: {e}"));
                }
            }
            Err(e) => diagnostics.push(format!("template `{name}`: {}: {e}", path.display())),
        }
    }
    let registry = Arc::new(registry);

    let symbols = match mock_symbol_table(&case.symbol_table_paths) {
        Ok(table) => Arc::new(table),
        Err(e) => {
            diagnostics.push(format!("symbol table: {e}"));
            Arc::new(crate::cd::SymbolTable::new())
        }
    };

    if let Err(e) = prepare_output_dir(&case.output_dir) {
        diagnostics.push(format!("output directory: {e}"));
    }

    if let Some(model) = &model {
        let nodes = collect_nodes(model, case.node_type);
        for (index, (node, reference)) in nodes.into_iter().enumerate() {
            let ctx = match assemble_context(
                node,
                case.variables.clone(),
                &case.helpers,
                Arc::clone(&symbols),
                Arc::clone(&registry),
                &case.substitution_policy,
            ) {
                Ok(ctx) => ctx,
                Err(e) => {
                    diagnostics.push(format!("context for `{reference}`: {e}"));
                    continue;
                }
            };
            let template = match ctx.registry().get(&case.template_under_test) {
                Some(t) => t.clone(),
                None => {
                    // Registration failed above; already diagnosed once.
                    continue;
                }
            };
            match render(&template, &ctx) {
                Ok(rendered) => {
                    let file_path = case.output_dir.join(output_file_name(index, &reference));
                    if let Err(e) = fs::write(&file_path, &rendered) {
                        diagnostics.push(format!("writing {}: {e}", file_path.display()));
                    }
                    trace.entries.push(TraceEntry {
                        index,
                        reference,
                        file_path,
                        rendered,
                    });
                }
                Err(e) => diagnostics.push(format!("rendering `{reference}`: {e}")),
            }
        }
    }

    let per_assertion = case
        .assertions
        .iter()
        .map(|spec| (spec.clone(), evaluate_assertion(spec, &trace)))
        .collect();

    (
        trace,
        TestResult {
            case_name: case.name.clone(),
            per_assertion,
            diagnostics,
        },
    )
}

fn prepare_output_dir(dir: &PathBuf) -> std::io::Result<()> {
    // Stale files from earlier runs would survive renames in the input
    // model, so the case's directory is wiped first.
    match fs::remove_dir_all(dir) {
        Ok(()) => {}
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => return Err(e),
    }
    fs::create_dir_all(dir)
}

fn evaluate_assertion(spec: &AssertionSpec, trace: &OutputTrace) -> Verdict {
    if let CheckSpec::OutputCount { count } = &spec.check {
        return if trace.entries.len() == *count {
            Verdict::pass(AssertionKind::OutputCount)
        } else {
            Verdict::fail(
                AssertionKind::OutputCount,
                format!("expected {count} output(s), found {}", trace.entries.len()),
            )
        };
    }

    let kind = check_kind(&spec.check);
    let targets: Vec<&TraceEntry> = match &spec.target {
        Some(TargetSpec::All) => trace.entries.iter().collect(),
        Some(TargetSpec::Ref(r)) => trace
            .entries
            .iter()
            .filter(|e| &e.reference == r)
            .collect(),
        None => Vec::new(),
    };
    if targets.is_empty() {
        let target = spec
            .target
            .as_ref()
            .map(|t| t.display())
            .unwrap_or_else(|| "<missing>".to_string());
        return Verdict::fail(kind, format!("target not found: `{target}` matches no output"));
    }

    let mut failures: Vec<String> = Vec::new();
    for entry in targets {
        let verdict = evaluate_check(&spec.check, &entry.rendered);
        if !verdict.passed {
            failures.push(format!("{}: {}", entry.reference, verdict.explanation));
        }
    }
    if failures.is_empty() {
        Verdict::pass(kind)
    } else {
        Verdict::fail(kind, failures.join("\n"))
    }
}

fn check_kind(check: &CheckSpec) -> AssertionKind {
    match check {
        CheckSpec::StringEquals { .. } => AssertionKind::StringEquals,
        CheckSpec::AstEquals { .. } => AssertionKind::AstEquals,
        CheckSpec::HasClass { .. } => AssertionKind::HasClass,
        CheckSpec::HasAttribute { .. } => AssertionKind::HasAttribute,
        CheckSpec::HasMethod { .. } => AssertionKind::HasMethod,
        CheckSpec::MethodSignature(_) => AssertionKind::MethodSignature,
        CheckSpec::ContextConditionsClean { .. } => AssertionKind::ContextConditions,
        CheckSpec::OutputCount { .. } => AssertionKind::OutputCount,
    }
}

fn evaluate_check(check: &CheckSpec, rendered: &str) -> Verdict {
    match check {
        CheckSpec::StringEquals { expected, policy } => {
            compare_strings(rendered, expected, policy)
        }
        CheckSpec::AstEquals {
            expected,
            entry_point,
        } => assert_ast_equals(rendered, expected, *entry_point),
        CheckSpec::HasClass { name } => {
            match partial_parse(EntryPoint::CompilationUnit, rendered) {
                Ok(node) => assert_has_class(node.as_unit().expect("entry kind"), name),
                Err(e) => Verdict::fail(
                    AssertionKind::HasClass,
                    format!("syntactic: output does not parse as compilation_unit: {e}"),
                ),
            }
        }
        CheckSpec::HasAttribute { name, printed_type } => {
            match partial_parse(EntryPoint::ClassDecl, rendered) {
                Ok(node) => {
                    assert_has_attribute(node.as_class().expect("entry kind"), name, printed_type)
                }
                Err(e) => Verdict::fail(
                    AssertionKind::HasAttribute,
                    format!("syntactic: output does not parse as class_decl: {e}"),
                ),
            }
        }
        CheckSpec::HasMethod {
            name,
            return_type,
            param_types,
        } => match partial_parse(EntryPoint::ClassDecl, rendered) {
            Ok(node) => assert_has_method(
                node.as_class().expect("entry kind"),
                name,
                return_type,
                param_types,
            ),
            Err(e) => Verdict::fail(
                AssertionKind::HasMethod,
                format!("syntactic: output does not parse as class_decl: {e}"),
            ),
        },
        CheckSpec::MethodSignature(check) => {
            match partial_parse(EntryPoint::MethodDecl, rendered) {
                Ok(node) => assert_method_signature(node.as_method().expect("entry kind"), check),
                Err(e) => Verdict::fail(
                    AssertionKind::MethodSignature,
                    format!("syntactic: output does not parse as method_decl: {e}"),
                ),
            }
        }
        CheckSpec::ContextConditionsClean { entry_point } => {
            assert_context_conditions_clean(rendered, *entry_point)
        }
        CheckSpec::OutputCount { .. } => unreachable!("handled before target resolution"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_names_are_zero_padded_and_sanitized() {
        assert_eq!(
            output_file_name(0, &QualifiedRef::new("A.attributeName")),
            "000_A.attributeName.out"
        );
        assert_eq!(output_file_name(1, &QualifiedRef::new("A.b")), "001_A.b.out");
        assert_eq!(
            output_file_name(0, &QualifiedRef::new("A.m(String)")),
            "000_A.m_String_.out"
        );
        assert_eq!(
            output_file_name(0, &QualifiedRef::new("A.m(int[],a.b.C)")),
            "000_A.m_int___a.b.C_.out"
        );
    }

    #[test]
    fn output_for_distinguishes_found_and_not_found() {
        let entry = |reference: &str| TraceEntry {
            index: 0,
            reference: QualifiedRef::new(reference),
            file_path: PathBuf::from("000.out"),
            rendered: "text".to_string(),
        };
        let trace = OutputTrace {
            entries: vec![entry("A.a")],
        };
        assert_eq!(output_for(&trace, &QualifiedRef::new("A.a")).unwrap(), "text");
        assert_eq!(
            output_for(&trace, &QualifiedRef::new("A.z")).unwrap_err(),
            TraceLookupError::NotFound(QualifiedRef::new("A.z"))
        );
        // Cannot happen through run_test_case (the trace is a bijection),
        // but the lookup still reports it rather than picking one.
        let dup = OutputTrace {
            entries: vec![entry("A.a"), entry("A.a")],
        };
        assert_eq!(
            output_for(&dup, &QualifiedRef::new("A.a")).unwrap_err(),
            TraceLookupError::Ambiguous(QualifiedRef::new("A.a"))
        );
    }

    #[test]
    fn output_count_and_missing_targets_evaluate_against_empty_trace() {
        let trace = OutputTrace::default();
        let count0 = AssertionSpec {
            target: None,
            check: CheckSpec::OutputCount { count: 0 },
        };
        assert!(evaluate_assertion(&count0, &trace).passed);
        let targeted = AssertionSpec {
            target: Some(TargetSpec::Ref(QualifiedRef::new("A.a"))),
            check: CheckSpec::StringEquals {
                expected: String::new(),
                policy: crate::assertions::NormalizationPolicy::none(),
            },
        };
        let verdict = evaluate_assertion(&targeted, &trace);
        assert!(!verdict.passed);
        assert!(verdict.explanation.contains("target not found"));
        let all = AssertionSpec {
            target: Some(TargetSpec::All),
            check: CheckSpec::OutputCount { count: 0 },
        };
        assert!(evaluate_assertion(&all, &trace).passed);
    }
}

/// Options for running a whole suite.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Overrides every case's output directory with `<root>/<case-name>`.
    pub output_root: Option<PathBuf>,
    /// Stop after the first failing case.
    pub fail_fast: bool,
    /// Run only cases whose name contains this substring.
    pub filter: Option<String>,
}

/// Runs the cases of a suite in order. Cases are independent: a failure in
/// one never alters another's verdicts.
pub fn run_suite(cases: &[TestCase], options: &RunOptions) -> Vec<(OutputTrace, TestResult)> {
    let mut results = Vec::new();
    for case in cases {
        if let Some(filter) = &options.filter {
            if !case.name.contains(filter.as_str()) {
                continue;
            }
        }
        let mut case = case.clone();
        if let Some(root) = &options.output_root {
            case.output_dir = root.join(&case.name);
        }
        let (trace, result) = run_test_case(&case);
        let failed = !result.passed();
        results.push((trace, result));
        if failed && options.fail_fast {
            break;
        }
    }
    results
}
