//! Unit testing for template-based code generators.
//!
//! A code generator template is rarely testable on its own: it needs an AST
//! node to work on, variables, helper objects, a symbol table, and the
//! sub-templates it includes. `tunit` lets you run one template in isolation
//! by supplying that context explicitly — real where you want depth, mocked
//! where you want isolation — and then validate the rendered output three
//! ways:
//!
//! * normalized string comparison ([`assertions::compare_strings`]),
//! * structural AST comparison of parsed fragments ([`jtl::ast_diff`]),
//! * query-style assertions on the parsed output ([`assertions::assert_has_method`] etc.).
//!
//! The pieces:
//!
//! * [`cd`] — the class-diagram input DSL: parser, AST, symbol tables,
//!   qualified element references.
//! * [`tgl`] — the template language: `${...}` interpolation, `<#if>`,
//!   `<#list>`, and `tc.include(...)` sub-template calls, every include
//!   routed through an interceptor.
//! * [`jtl`] — the Java-like target language: partial parsing of fragments,
//!   structural equality and diff, context conditions.
//! * [`assertions`] — verdict-producing assertion functions.
//! * [`mock`] — mock helpers, mock symbol tables, variable bindings, and the
//!   sub-template substitution policies.
//! * [`runner`] — declarative JSON test manifests, per-element output files
//!   with traceability, reporting, and the `tunit` CLI.
//!
//! The `examples/` directory has one runnable example per capability; start
//! with `render_attribute`.

pub mod assertions;
pub mod cd;
pub mod jtl;
pub mod mock;
pub mod runner;
pub mod tgl;

pub use assertions::{NormalizationPolicy, Verdict};
pub use cd::{parse_model, CdModel, CdNode, NodeKind, QualifiedRef, SymbolTable};
pub use jtl::{partial_parse, EntryPoint, JtlNode};
pub use mock::{HelperMock, SubstitutionPolicy};
pub use runner::{load_manifest, run_test_case, TestCase, TestResult};
pub use tgl::{parse_template, render, RenderContext, Template, TemplateRegistry};
