//! Acceptance suite: every capability exercised end to end, one printed
//! pass/fail line per check (visible with `cargo test -- --nocapture`).

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use tempfile::TempDir;

use tunit::assertions::{
    assert_ast_equals, assert_method_signature, compare_strings, MethodSignatureCheck,
    NormalizationPolicy,
};
use tunit::cd::{collect_nodes, parse_model, NodeKind, QualifiedRef, SymbolTable};
use tunit::jtl::{
    ast_diff, ast_equals, partial_parse, tokenize, EntryPoint, JtlNode, TokenKind,
};
use tunit::mock::{
    assemble_context, mock_symbol_table, HelperMock, MockError, PerCallRule, Replacement,
    SubstitutionPolicy,
};
use tunit::runner::{
    cli_main, output_for, run_test_case, AssertionSpec, CheckSpec, TargetSpec, TestCase,
};
use tunit::tgl::{render, RenderContext, TemplateRegistry};

/// Runs one acceptance check, printing its verdict before propagating any
/// failure to the test harness.
fn check(name: &str, f: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(()) => println!("acceptance {name}: PASS"),
        Err(e) => {
            println!("acceptance {name}: FAIL");
            resume_unwind(e);
        }
    }
}

const ATTRIBUTE_TEMPLATE: &str =
    "public ${ast.printType()} ${ast.name}<#if ast.value??> = ${ast.printValue()}</#if>;";

fn attribute_node(model: &str, index: usize) -> tunit::cd::CdNode {
    let model = parse_model(model).unwrap();
    collect_nodes(&model, NodeKind::Attribute).remove(index).0
}

fn bare_registry(entries: &[(&str, &str)]) -> Arc<TemplateRegistry> {
    let mut registry = TemplateRegistry::new();
    for (name, source) in entries {
        registry.insert_source(name, source).unwrap();
    }
    Arc::new(registry)
}

fn render_with(
    registry: &Arc<TemplateRegistry>,
    template: &str,
    ast: tunit::cd::CdNode,
    variables: &[(&str, &str)],
    helpers: &[HelperMock],
    symbols: Arc<SymbolTable>,
    policy: &SubstitutionPolicy,
) -> String {
    let variables: BTreeMap<String, String> = variables
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let ctx = assemble_context(
        ast,
        variables,
        helpers,
        symbols,
        Arc::clone(registry),
        policy,
    )
    .unwrap();
    render(registry.get(template).unwrap(), &ctx).unwrap()
}

// 1. The attribute template renders `int attributeName = 5;` into a field
//    declaration structurally equal to `public int attributeName = 5;`,
//    and renders the no-initializer variant without an `=` segment.
#[test]
fn attribute_template_reproduction() {
    check("01 attribute template reproduction", || {
        let registry = bare_registry(&[("JavaAttribute", ATTRIBUTE_TEMPLATE)]);
        let node = attribute_node(
            "classdiagram D { class A { int attributeName = 5; int noValue; } }",
            0,
        );
        let ctx = RenderContext::bare(node, Arc::clone(&registry));
        let rendered = render(registry.get("JavaAttribute").unwrap(), &ctx).unwrap();
        let verdict = assert_ast_equals(
            &rendered,
            "public int attributeName = 5;",
            EntryPoint::FieldDecl,
        );
        assert!(verdict.passed, "{}", verdict.explanation);

        let node = attribute_node(
            "classdiagram D { class A { int attributeName = 5; int noValue; } }",
            1,
        );
        let ctx = RenderContext::bare(node, Arc::clone(&registry));
        let rendered = render(registry.get("JavaAttribute").unwrap(), &ctx).unwrap();
        assert_eq!(rendered, "public int noValue;");
        assert!(!rendered.contains('='), "no-initializer render must have no `=`");
    });
}

// 2. One output file per matching element, addressable through the trace by
//    qualified reference; renaming an element changes only its own file.
#[test]
fn output_traceability() {
    check("02 per-element output files and traceability", || {
        let dir = TempDir::new().unwrap();
        let write = |rel: &str, content: &str| -> PathBuf {
            let path = dir.path().join(rel);
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, content).unwrap();
            path
        };
        let case = |name: &str, model_file: PathBuf| TestCase {
            name: name.to_string(),
            template_under_test: "T".to_string(),
            node_type: NodeKind::Attribute,
            input_model: model_file,
            templates: BTreeMap::from([("T".to_string(), write("T.tgl", ATTRIBUTE_TEMPLATE))]),
            variables: BTreeMap::new(),
            helpers: Vec::new(),
            symbol_table_paths: Vec::new(),
            substitution_policy: SubstitutionPolicy::Passthrough,
            assertions: Vec::new(),
            output_dir: dir.path().join(name),
        };

        let model = write("two.cd", "classdiagram D { class A { int a = 1; int b = 2; } }");
        let (trace, result) = run_test_case(&case("two", model));
        assert!(result.passed(), "{:?}", result.diagnostics);
        assert_eq!(trace.entries.len(), 2, "exactly two output files");
        let refs: Vec<&str> = trace.entries.iter().map(|e| e.reference.as_str()).collect();
        assert_eq!(refs, ["A.a", "A.b"]);
        for entry in &trace.entries {
            assert_eq!(fs::read_to_string(&entry.file_path).unwrap(), entry.rendered);
        }
        assert_eq!(output_for(&trace, &QualifiedRef::new("A.a")).unwrap(), "public int a = 1;");
        assert_eq!(output_for(&trace, &QualifiedRef::new("A.b")).unwrap(), "public int b = 2;");

        let renamed = write("renamed.cd", "classdiagram D { class A { int c = 1; int b = 2; } }");
        let (trace2, _) = run_test_case(&case("renamed", renamed));
        let file_name = |t: &tunit::runner::OutputTrace, i: usize| {
            t.entries[i].file_path.file_name().unwrap().to_str().unwrap().to_string()
        };
        assert_eq!(file_name(&trace, 0), "000_A.a.out");
        assert_eq!(file_name(&trace2, 0), "000_A.c.out");
        assert_eq!(file_name(&trace, 1), file_name(&trace2, 1));
        assert_eq!(trace.entries[1].rendered, trace2.entries[1].rendered);
    });
}

// 3. The structural diff between the generated field and an expected field
//    differing in name and type reports exactly those two paths, and the
//    assertion explanation renders both.
#[test]
fn ast_diff_names_the_differing_fields() {
    check("03 AST diff on name and type", || {
        let registry = bare_registry(&[("JavaAttribute", ATTRIBUTE_TEMPLATE)]);
        let node = attribute_node("classdiagram D { class A { int attributeName = 5; } }", 0);
        let ctx = RenderContext::bare(node, Arc::clone(&registry));
        let rendered = render(registry.get("JavaAttribute").unwrap(), &ctx).unwrap();

        let generated = partial_parse(EntryPoint::FieldDecl, &rendered).unwrap();
        let expected = partial_parse(EntryPoint::FieldDecl, "public String otherName = 5;").unwrap();
        let diff = ast_diff(&generated, &expected).unwrap();
        assert_eq!(diff.mismatches.len(), 2, "{}", diff.rendered());
        let mut paths: Vec<&str> = diff.mismatches.iter().map(|m| m.path.as_str()).collect();
        paths.sort_unstable();
        assert_eq!(paths, ["name", "type"]);

        let verdict =
            assert_ast_equals(&rendered, "public String otherName = 5;", EntryPoint::FieldDecl);
        assert!(!verdict.passed);
        for fragment in ["name", "type", "`int`", "`String`", "`attributeName`", "`otherName`"] {
            assert!(
                verdict.explanation.contains(fragment),
                "explanation lacks {fragment}: {}",
                verdict.explanation
            );
        }
    });
}

// 4. The four substitution policies, plus a per-call rule with a fallback,
//    each produce exactly the expected bytes for a parent with includes.
#[test]
fn substitution_policy_matrix() {
    check("04 substitution policy matrix", || {
        let registry = bare_registry(&[
            ("Parent", "A${tc.include(\"Body\", ast)}B"),
            ("Parent2", "A${tc.include(\"Body\", ast)}${tc.include(\"Other\", ast)}B"),
            ("Body", "<${ast.name}>"),
            ("Other", "never"),
            ("Sub", "S"),
        ]);
        let node = || attribute_node("classdiagram D { class A { int a; } }", 0);
        let empty = Arc::new(SymbolTable::new());
        let run = |template: &str, policy: &SubstitutionPolicy| {
            render_with(&registry, template, node(), &[], &[], Arc::clone(&empty), policy)
        };

        assert_eq!(run("Parent", &SubstitutionPolicy::Passthrough), "A<a>B");
        assert_eq!(run("Parent", &SubstitutionPolicy::ReplaceWithEmpty), "AB");
        assert_eq!(
            run("Parent", &SubstitutionPolicy::ReplaceAllWithTemplate("Sub".to_string())),
            "ASB"
        );
        assert_eq!(
            run("Parent", &SubstitutionPolicy::ReplaceWithString("/*body*/".to_string())),
            "A/*body*/B"
        );
        let per_call = SubstitutionPolicy::PerCall {
            rules: vec![PerCallRule {
                template: "Body".to_string(),
                node: None,
                replacement: Replacement::Text("X".to_string()),
            }],
            fallback: Box::new(SubstitutionPolicy::ReplaceWithEmpty),
        };
        assert_eq!(run("Parent2", &per_call), "AXB");
    });
}

// 5. The method template rendered with mocked variables, a lenient helper,
//    and a string-replaced body parses as a method declaration satisfying
//    the signature checks.
#[test]
fn method_template_with_mocked_context() {
    check("05 method template with mocked context", || {
        let registry = bare_registry(&[(
            "JavaMethod",
            "public ${ast.printReturnType()} ${ast.printName()}\n  (${paramType} ${paramName})\n  ${methodHelper.printThrowsDecl(ast)}\n  ${tc.include(\"cd2data.core.templates.JavaMethodBody\", ast)}",
        )]);
        let model = parse_model("classdiagram D { class A { void methodName(String param); } }")
            .unwrap();
        let node = collect_nodes(&model, NodeKind::Method).remove(0).0;
        let rendered = render_with(
            &registry,
            "JavaMethod",
            node,
            &[("paramType", "String"), ("paramName", "param")],
            &[HelperMock::lenient("methodHelper")],
            Arc::new(SymbolTable::new()),
            &SubstitutionPolicy::ReplaceWithString("{}".to_string()),
        );

        let parsed = partial_parse(EntryPoint::MethodDecl, &rendered)
            .unwrap_or_else(|e| panic!("rendered method does not parse: {e}\n{rendered}"));
        let method = parsed.as_method().unwrap();
        let checks = [
            (MethodSignatureCheck::ReturnTypeEquals("void".to_string()), true),
            (MethodSignatureCheck::NameEquals("methodName".to_string()), true),
            (
                MethodSignatureCheck::HasParameter {
                    printed_type: "String".to_string(),
                    name: "param".to_string(),
                },
                true,
            ),
            (
                MethodSignatureCheck::HasParameter {
                    printed_type: "int".to_string(),
                    name: "param".to_string(),
                },
                false,
            ),
        ];
        for (signature_check, expected) in checks {
            let verdict = assert_method_signature(method, &signature_check);
            assert_eq!(verdict.passed, expected, "{signature_check:?}: {}", verdict.explanation);
        }
    });
}

// 6. Symbol tables mocked from auxiliary model files: both names resolve, a
//    template reads entries through `st`, duplicates are rejected.
#[test]
fn symbol_table_mocking() {
    check("06 symbol table mocking", || {
        let dir = TempDir::new().unwrap();
        fs::write(dir.path().join("b.cd"), "classdiagram AuxB { class B { } }").unwrap();
        fs::write(dir.path().join("c.cd"), "classdiagram AuxC { class C { } }").unwrap();
        let table = mock_symbol_table(&[dir.path().to_path_buf()]).unwrap();
        assert_eq!(table.len(), 2);
        assert!(table.resolve("B").is_some());
        assert!(table.resolve("C").is_some());

        let registry = bare_registry(&[("Probe", "${st.resolve(\"B\").name}")]);
        let rendered = render_with(
            &registry,
            "Probe",
            attribute_node("classdiagram D { class A { int a; } }", 0),
            &[],
            &[],
            Arc::new(table),
            &SubstitutionPolicy::Passthrough,
        );
        assert_eq!(rendered, "B");

        fs::write(dir.path().join("dup.cd"), "classdiagram Dup { class B { } }").unwrap();
        let err = mock_symbol_table(&[dir.path().to_path_buf()]).unwrap_err();
        assert!(matches!(err, MockError::Symbols(_)), "{err:?}");
    });
}

// ---------------------------------------------------------------------------
// Whitespace perturbation machinery for checks 7 and 8.

struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed | 1)
    }

    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn pick<'a>(&mut self, items: &'a [&'a str]) -> &'a str {
        items[(self.next() % items.len() as u64) as usize]
    }

    fn chance(&mut self, one_in: u64) -> bool {
        self.next().is_multiple_of(one_in)
    }
}

/// Fragments covering every entry point; all parseable.
fn corpus() -> Vec<(EntryPoint, &'static str)> {
    use EntryPoint::*;
    vec![
        (FieldDecl, "public int attributeName = 5;"),
        (FieldDecl, "int x;"),
        (FieldDecl, "private static final String GREETING = \"hello  world\";"),
        (FieldDecl, "protected long[] counts;"),
        (FieldDecl, "java.util.Date created = now;"),
        (FieldDecl, "int total = a + b * 2;"),
        (FieldDecl, "boolean ready = true;"),
        (MethodDecl, "public void methodName(String param) {}"),
        (MethodDecl, "abstract int size();"),
        (MethodDecl, "static String join(String left, String right) { return left; }"),
        (MethodDecl, "void run() throws java.io.IOException, Oops {}"),
        (MethodDecl, "public int[] copy(int[] source, int count) { int i = 0; return source; }"),
        (MethodDecl, "void fill(long value) { long v = value; { long w = v; w; } }"),
        (ClassDecl, "class Empty {}"),
        (ClassDecl, "public class Point { int x; int y; Point(int x0) {} }"),
        (ClassDecl, "final class Named extends Base implements Cmp, Show { String name; }"),
        (CompilationUnit, "package a.b; import java.util.List; class C { int n; }"),
        (CompilationUnit, "class One {} class Two {}"),
        (Statements, "int a = 1; return a;"),
        (Statements, "int a = 0; a = a + 1; { int b = a; b; }"),
        (Statements, "return;"),
    ]
}

/// Rebuilds a fragment from its tokens with random whitespace in the gaps,
/// preserving the token stream. Word-word and punct-punct gaps keep at
/// least one space so tokens never merge.
fn perturb(source: &str, rng: &mut Rng) -> String {
    let tokens = tokenize(source).unwrap();
    let required: &[&str] = &[" ", "  ", "\t", "\n", " \t ", "\n  "];
    let optional: &[&str] = &["", "", " ", "  ", "\t", "\n", "   "];
    let mut out = String::new();
    if rng.chance(4) {
        out.push_str(rng.pick(&[" ", "\n", "  "]));
    }
    for (i, token) in tokens.iter().enumerate() {
        if i > 0 {
            let prev = &tokens[i - 1];
            let word = |k: TokenKind| {
                matches!(k, TokenKind::Ident | TokenKind::Keyword | TokenKind::Number)
            };
            let hazard = (word(prev.kind) && word(token.kind))
                || (prev.kind == TokenKind::Punct && token.kind == TokenKind::Punct)
                || (prev.kind == TokenKind::Number && token.text == ".");
            out.push_str(if hazard { rng.pick(required) } else { rng.pick(optional) });
        }
        out.push_str(&token.text);
    }
    if rng.chance(4) {
        out.push_str(rng.pick(&[" ", "\n", " \n"]));
    }
    out
}

// 7. Formatting invariance: AST equality survives arbitrary token-safe
//    whitespace perturbation, while exact string comparison does not.
#[test]
fn formatting_invariance_property() {
    check("07 formatting invariance under whitespace perturbation", || {
        let corpus = corpus();
        assert!(corpus.len() >= 20, "corpus must hold at least 20 fragments");
        for (fragment_index, (entry, source)) in corpus.iter().enumerate() {
            let original = partial_parse(*entry, source)
                .unwrap_or_else(|e| panic!("corpus fragment `{source}` must parse: {e}"));
            let mut rng = Rng::new(0x5eed + fragment_index as u64);
            let mut any_changed_bytes = false;
            for _ in 0..100 {
                let perturbed = perturb(source, &mut rng);
                let reparsed = partial_parse(*entry, &perturbed).unwrap_or_else(|e| {
                    panic!("perturbation of `{source}` stopped parsing: {e}\n{perturbed:?}")
                });
                assert!(
                    ast_equals(&original, &reparsed).unwrap(),
                    "AST changed under whitespace perturbation of `{source}`:\n{perturbed:?}"
                );
                if perturbed != *source {
                    any_changed_bytes = true;
                    let strict = compare_strings(source, &perturbed, &NormalizationPolicy::none());
                    assert!(
                        !strict.passed,
                        "byte comparison must fail for `{source}` vs {perturbed:?}"
                    );
                }
            }
            assert!(
                any_changed_bytes,
                "perturbations of `{source}` never changed any bytes"
            );
        }
    });
}

/// Independent token-sequence oracle: maximal word runs and string/char
/// literals are tokens, every other non-whitespace character is its own
/// token. Written against the raw text, not the production lexer.
fn oracle_tokens(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '"' || c == '\'' {
            let quote = c;
            let mut tok = String::new();
            tok.push(chars.next().unwrap());
            while let Some(&c) = chars.peek() {
                tok.push(chars.next().unwrap());
                if c == '\\' {
                    if let Some(esc) = chars.next() {
                        tok.push(esc);
                    }
                    continue;
                }
                if c == quote {
                    break;
                }
            }
            tokens.push(tok);
            continue;
        }
        if c.is_alphanumeric() || c == '_' || c == '$' {
            let mut tok = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' || c == '$' {
                    tok.push(chars.next().unwrap());
                } else {
                    break;
                }
            }
            tokens.push(tok);
            continue;
        }
        tokens.push(chars.next().unwrap().to_string());
    }
    tokens
}

/// Perturbations limited to what the structural normalization flags erase:
/// widened inner runs, extra indentation, inserted blank lines, CRLF.
fn normalization_safe_perturb(source: &str, rng: &mut Rng) -> String {
    let mut out = String::new();
    let mut in_string = false;
    let mut chars = source.chars().peekable();
    // Widen existing space/tab runs outside string literals.
    while let Some(c) = chars.next() {
        if in_string {
            out.push(c);
            if c == '\\' {
                if let Some(esc) = chars.next() {
                    out.push(esc);
                }
                continue;
            }
            if c == '"' {
                in_string = false;
            }
            continue;
        }
        match c {
            '"' => {
                in_string = true;
                out.push(c);
            }
            ' ' | '\t' => {
                while matches!(chars.peek(), Some(' ' | '\t')) {
                    chars.next();
                }
                out.push_str(rng.pick(&[" ", "  ", "\t", " \t ", "    "]));
            }
            other => out.push(other),
        }
    }
    // Indent every line and sometimes insert blank lines at line breaks.
    let mut result = String::new();
    for (i, line) in out.split('\n').enumerate() {
        if i > 0 {
            result.push('\n');
            if rng.chance(2) {
                result.push_str(rng.pick(&["\n", " \n", "\t\n"]));
            }
        }
        result.push_str(rng.pick(&["", "  ", "\t", "    "]));
        result.push_str(line);
    }
    if rng.chance(2) {
        result = result.replace('\n', "\r\n");
    }
    result
}

// 8. Under line-ending, indentation, blank-line, and inner-run
//    normalization, string comparison agrees with an independent
//    token-sequence oracle on every corpus pair.
#[test]
fn string_comparison_agrees_with_token_oracle() {
    check("08 normalized string comparison matches token oracle", || {
        let policy = NormalizationPolicy::structural();
        let mut texts: Vec<String> = Vec::new();
        for (i, (_, source)) in corpus().iter().enumerate() {
            texts.push((*source).to_string());
            let mut rng = Rng::new(0xacce55 + i as u64);
            for _ in 0..5 {
                texts.push(normalization_safe_perturb(source, &mut rng));
            }
        }
        let mut agreements = 0usize;
        let mut matches = 0usize;
        for a in &texts {
            for b in &texts {
                let by_strings = compare_strings(a, b, &policy).passed;
                let by_tokens = oracle_tokens(a) == oracle_tokens(b);
                assert_eq!(
                    by_strings, by_tokens,
                    "verdicts disagree for {a:?} vs {b:?}"
                );
                agreements += 1;
                if by_strings {
                    matches += 1;
                }
            }
        }
        // Sanity: the corpus produced both matching and differing pairs.
        assert!(matches > texts.len(), "perturbed variants must match their originals");
        assert!(matches < agreements, "distinct fragments must differ");
    });
}

// 9. Context conditions on rendered method bodies: an undeclared identifier
//    is exactly one violation naming it; declaring it first is clean; the
//    runner-level assertion reflects both.
#[test]
fn context_conditions_on_rendered_bodies() {
    check("09 use-before-definition context condition", || {
        let registry = bare_registry(&[
            ("UseOnly", "return ${varName};"),
            ("DeclareFirst", "int ${varName} = 0; return ${varName};"),
        ]);
        let node = || attribute_node("classdiagram D { class A { int a; } }", 0);
        let empty = Arc::new(SymbolTable::new());
        let undeclared = render_with(
            &registry,
            "UseOnly",
            node(),
            &[("varName", "b")],
            &[],
            Arc::clone(&empty),
            &SubstitutionPolicy::Passthrough,
        );
        let parsed = partial_parse(EntryPoint::Statements, &undeclared).unwrap();
        let violations = tunit::jtl::check_context_conditions(&parsed);
        assert_eq!(violations.len(), 1, "{violations:?}");
        assert_eq!(violations[0].code, "CC1");
        assert!(violations[0].message.contains("`b`"), "{}", violations[0].message);

        let declared = render_with(
            &registry,
            "DeclareFirst",
            node(),
            &[("varName", "b")],
            &[],
            Arc::clone(&empty),
            &SubstitutionPolicy::Passthrough,
        );
        let parsed = partial_parse(EntryPoint::Statements, &declared).unwrap();
        assert!(tunit::jtl::check_context_conditions(&parsed).is_empty());

        // The declarative assertion reflects both outcomes.
        let dir = TempDir::new().unwrap();
        let run_case = |name: &str, template: &str, expect_pass: bool| {
            let model = dir.path().join(format!("{name}.cd"));
            fs::write(&model, "classdiagram D { class A { int a; } }").unwrap();
            let tgl = dir.path().join(format!("{name}.tgl"));
            fs::write(&tgl, template).unwrap();
            let case = TestCase {
                name: name.to_string(),
                template_under_test: "T".to_string(),
                node_type: NodeKind::Attribute,
                input_model: model,
                templates: BTreeMap::from([("T".to_string(), tgl)]),
                variables: BTreeMap::from([("varName".to_string(), "b".to_string())]),
                helpers: Vec::new(),
                symbol_table_paths: Vec::new(),
                substitution_policy: SubstitutionPolicy::Passthrough,
                assertions: vec![AssertionSpec {
                    target: Some(TargetSpec::All),
                    check: CheckSpec::ContextConditionsClean {
                        entry_point: EntryPoint::Statements,
                    },
                }],
                output_dir: dir.path().join(name).join("out"),
            };
            let (_, result) = run_test_case(&case);
            assert_eq!(result.per_assertion[0].1.passed, expect_pass, "case {name}");
        };
        run_case("clean", "int ${varName} = 0; return ${varName};", true);
        run_case("dirty", "return ${varName};", false);
    });
}

// 10. End-to-end CLI: the shipped suite passes with exit 0; corrupting one
//     expected value flips exactly one assertion and the exit code; the
//     jsonl report validates line by line.
#[test]
fn cli_end_to_end() {
    check("10 CLI end to end", || {
        let fixture_root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/accept_suite");
        let out_root = TempDir::new().unwrap();

        let run = |manifest: &Path, out: &Path, extra: &[&str]| -> (i32, String, String) {
            let mut args = vec![
                "tunit".to_string(),
                "run".to_string(),
                manifest.display().to_string(),
                "--output-dir".to_string(),
                out.display().to_string(),
            ];
            args.extend(extra.iter().map(|s| s.to_string()));
            let mut stdout = Vec::new();
            let mut stderr = Vec::new();
            let code = cli_main(args, &mut stdout, &mut stderr);
            (
                code,
                String::from_utf8(stdout).unwrap(),
                String::from_utf8(stderr).unwrap(),
            )
        };

        let (code, stdout, stderr) = run(&fixture_root.join("suite.json"), &out_root.path().join("ok"), &[]);
        assert_eq!(code, 0, "stdout:\n{stdout}\nstderr:\n{stderr}");
        assert_eq!(stdout.matches("PASS ").count(), 10, "{stdout}");

        // Corrupt exactly one expected value in a copy of the suite.
        let copy_root = TempDir::new().unwrap();
        copy_tree(&fixture_root, copy_root.path());
        let manifest_path = copy_root.path().join("suite.json");
        let manifest = fs::read_to_string(&manifest_path).unwrap();
        let corrupted = manifest.replace("public int a = 1;", "public int a = 9;");
        assert_ne!(manifest, corrupted, "corruption target must exist");
        fs::write(&manifest_path, corrupted).unwrap();

        let (code, stdout, _) = run(&manifest_path, &out_root.path().join("bad"), &["--report", "jsonl"]);
        assert_eq!(code, 1, "{stdout}");
        let lines: Vec<serde_json::Value> = stdout
            .lines()
            .map(|l| serde_json::from_str(l).expect("every report line is JSON"))
            .collect();
        let (summary, assertions) = lines.split_last().unwrap();
        let mut failed_lines = 0;
        for line in assertions {
            let obj = line.as_object().unwrap();
            assert!(obj["case"].is_string());
            assert!(obj["target"].is_string() || obj["target"].is_null());
            assert!(obj["check"].is_string());
            assert!(obj["explanation"].is_string());
            if !obj["passed"].as_bool().unwrap() {
                failed_lines += 1;
                assert_eq!(obj["check"], "string_equals");
                assert_eq!(obj["target"], "A.a");
            }
        }
        assert_eq!(failed_lines, 1, "exactly one assertion flips\n{stdout}");
        let summary = &summary["summary"];
        assert_eq!(summary["cases"], 10);
        assert_eq!(summary["failed"], 1);
        assert_eq!(summary["passed"], 9);

        // A missing manifest is a configuration error.
        let code = cli_main(
            ["tunit", "run", "definitely-missing.json"].map(String::from),
            &mut Vec::new(),
            &mut Vec::new(),
        );
        assert_eq!(code, 2);
    });
}

fn copy_tree(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_tree(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), &target).unwrap();
        }
    }
}

// The parsed fragment kinds round-trip through the canonical printer; kept
// here because the acceptance corpus doubles as the round-trip corpus.
#[test]
fn corpus_round_trips_through_printing() {
    check("print/parse round trip over the corpus", || {
        for (entry, source) in corpus() {
            let parsed = partial_parse(entry, source).unwrap();
            let printed = tunit::jtl::print_node(&parsed);
            let reparsed = partial_parse(entry, &printed)
                .unwrap_or_else(|e| panic!("printed `{printed}` does not reparse: {e}"));
            assert!(
                ast_equals(&parsed, &reparsed).unwrap(),
                "round trip changed `{source}`"
            );
            assert!(matches!(
                (&parsed, &reparsed),
                (JtlNode::Unit(_), JtlNode::Unit(_))
                    | (JtlNode::Class(_), JtlNode::Class(_))
                    | (JtlNode::Field(_), JtlNode::Field(_))
                    | (JtlNode::Method(_), JtlNode::Method(_))
                    | (JtlNode::Statements(_), JtlNode::Statements(_))
            ));
        }
    });
}
