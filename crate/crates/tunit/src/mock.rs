//! Mocking the template engine context.
//!
//! A template under test rarely runs on the real generator context. This
//! module builds the mocked counterpart piece by piece: text variable
//! bindings, helpers answering from canned response tables, symbol tables
//! loaded from auxiliary models, and — the part that controls test depth —
//! a substitution policy deciding what every `tc.include` call produces.
//! Mocking an include prunes the sub-template: its real output stays out of
//! the test at the price of not testing it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use crate::cd::{
    build_symbol_table, parse_model, CdError, CdModel, QualifiedRef, SymbolError, SymbolTable,
};
use crate::tgl::{
    render_sub_template, ContextError, Helper, HelperError, IncludeError, IncludeInterceptor,
    RenderContext, TemplateRegistry, Value,
};

/// How sub-template calls are handled during a test.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum SubstitutionPolicy {
    /// Includes are not mocked: the real sub-template renders.
    #[default]
    Passthrough,
    /// Every include yields the empty string.
    ReplaceWithEmpty,
    /// Every include renders this substitute template instead.
    ReplaceAllWithTemplate(String),
    /// Every include yields this literal text.
    ReplaceWithString(String),
    /// Per-call rules, checked in order, first match wins; calls matching
    /// no rule fall back to one of the other policies.
    PerCall {
        rules: Vec<PerCallRule>,
        fallback: Box<SubstitutionPolicy>,
    },
}

/// One per-call substitution rule. `node`, when present, restricts the rule
/// to includes whose argument node has that qualified reference.
#[derive(Clone, Debug, PartialEq)]
pub struct PerCallRule {
    pub template: String,
    pub node: Option<QualifiedRef>,
    pub replacement: Replacement,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Replacement {
    Text(String),
    Template(String),
}

/// A canned-response helper definition. Rows are matched in order by method
/// name and, when `arg` is present, by the qualified reference of the first
/// node argument of the call.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HelperMock {
    pub name: String,
    /// When strict, an invocation matching no row is an error; when
    /// lenient (the default), it answers with empty text.
    pub strict: bool,
    pub responses: Vec<MockResponse>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MockResponse {
    pub method: String,
    pub arg: Option<QualifiedRef>,
    pub response: String,
}

impl HelperMock {
    pub fn lenient(name: impl Into<String>) -> Self {
        HelperMock {
            name: name.into(),
            strict: false,
            responses: Vec::new(),
        }
    }

    pub fn strict(name: impl Into<String>) -> Self {
        HelperMock {
            strict: true,
            ..Self::lenient(name)
        }
    }

    pub fn respond(mut self, method: impl Into<String>, response: impl Into<String>) -> Self {
        self.responses.push(MockResponse {
            method: method.into(),
            arg: None,
            response: response.into(),
        });
        self
    }

    pub fn respond_for(
        mut self,
        method: impl Into<String>,
        arg: QualifiedRef,
        response: impl Into<String>,
    ) -> Self {
        self.responses.push(MockResponse {
            method: method.into(),
            arg: Some(arg),
            response: response.into(),
        });
        self
    }
}

#[derive(Debug, Error)]
pub enum MockError {
    #[error("substitution policy references template `{0}`, which is not in the registry")]
    TemplateNotFound(String),
    #[error("a per-call fallback must be one of the non-per-call policies")]
    PerCallFallback,
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Model { path: PathBuf, source: CdError },
    #[error(transparent)]
    Symbols(#[from] SymbolError),
    #[error(transparent)]
    Context(#[from] ContextError),
}

/// The interceptor realizing a [`SubstitutionPolicy`]. Built eagerly so a
/// policy referencing a missing substitute template fails at assembly, not
/// mid-render.
pub struct PolicyInterceptor {
    policy: SubstitutionPolicy,
}

impl IncludeInterceptor for PolicyInterceptor {
    fn include(
        &self,
        ctx: &RenderContext,
        template: &str,
        arg: &Value,
    ) -> Result<String, IncludeError> {
        apply_policy(&self.policy, ctx, template, arg)
    }
}

fn apply_policy(
    policy: &SubstitutionPolicy,
    ctx: &RenderContext,
    template: &str,
    arg: &Value,
) -> Result<String, IncludeError> {
    match policy {
        SubstitutionPolicy::Passthrough => render_sub_template(ctx, template, arg),
        SubstitutionPolicy::ReplaceWithEmpty => Ok(String::new()),
        SubstitutionPolicy::ReplaceWithString(text) => Ok(text.clone()),
        SubstitutionPolicy::ReplaceAllWithTemplate(substitute) => {
            render_sub_template(ctx, substitute, arg)
        }
        SubstitutionPolicy::PerCall { rules, fallback } => {
            let arg_ref = arg.as_node().and_then(|n| n.qualified_ref());
            for rule in rules {
                if rule.template != template {
                    continue;
                }
                if let Some(wanted) = &rule.node {
                    if arg_ref.as_ref() != Some(wanted) {
                        continue;
                    }
                }
                return match &rule.replacement {
                    Replacement::Text(text) => Ok(text.clone()),
                    Replacement::Template(substitute) => render_sub_template(ctx, substitute, arg),
                };
            }
            apply_policy(fallback, ctx, template, arg)
        }
    }
}

/// Builds the include interceptor for `policy`, eagerly checking that every
/// template the policy itself names exists in `registry`. (Includes under
/// passthrough are still resolved per call — which names a template asks
/// for is only known at render time.)
pub fn build_interceptor(
    policy: &SubstitutionPolicy,
    registry: &TemplateRegistry,
) -> Result<PolicyInterceptor, MockError> {
    validate_policy(policy, registry, true)?;
    Ok(PolicyInterceptor {
        policy: policy.clone(),
    })
}

fn validate_policy(
    policy: &SubstitutionPolicy,
    registry: &TemplateRegistry,
    allow_per_call: bool,
) -> Result<(), MockError> {
    match policy {
        SubstitutionPolicy::Passthrough
        | SubstitutionPolicy::ReplaceWithEmpty
        | SubstitutionPolicy::ReplaceWithString(_) => Ok(()),
        SubstitutionPolicy::ReplaceAllWithTemplate(name) => {
            if registry.contains(name) {
                Ok(())
            } else {
                Err(MockError::TemplateNotFound(name.clone()))
            }
        }
        SubstitutionPolicy::PerCall { rules, fallback } => {
            if !allow_per_call {
                return Err(MockError::PerCallFallback);
            }
            for rule in rules {
                if let Replacement::Template(name) = &rule.replacement {
                    if !registry.contains(name) {
                        return Err(MockError::TemplateNotFound(name.clone()));
                    }
                }
            }
            validate_policy(fallback, registry, false)
        }
    }
}

/// Loads every listed model and merges them into one symbol table. A
/// directory path expands to all its `.cd` files in lexicographic order.
pub fn mock_symbol_table(paths: &[PathBuf]) -> Result<SymbolTable, MockError> {
    let mut files: Vec<PathBuf> = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(path)
                .map_err(|source| MockError::Io {
                    path: path.clone(),
                    source,
                })?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|ext| ext == "cd"))
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    let mut models: Vec<CdModel> = Vec::new();
    for file in files {
        models.push(load_model(&file)?);
    }
    Ok(build_symbol_table(&models)?)
}

/// A [`Helper`] answering from a response table.
pub struct MockedHelper {
    mock: HelperMock,
}

impl Helper for MockedHelper {
    fn invoke(&self, method: &str, args: &[Value]) -> Result<String, HelperError> {
        let first_node_ref = args
            .iter()
            .find_map(|v| v.as_node())
            .and_then(|n| n.qualified_ref());
        for row in &self.mock.responses {
            if row.method != method {
                continue;
            }
            if let Some(wanted) = &row.arg {
                if first_node_ref.as_ref() != Some(wanted) {
                    continue;
                }
            }
            return Ok(row.response.clone());
        }
        if self.mock.strict {
            Err(HelperError {
                helper: self.mock.name.clone(),
                method: method.to_string(),
                message: "unmatched invocation: no mock response matches".to_string(),
            })
        } else {
            Ok(String::new())
        }
    }
}

/// Wraps a mock definition as a live [`Helper`].
pub fn mock_helper(mock: HelperMock) -> MockedHelper {
    MockedHelper { mock }
}

/// Assembles a complete render context from its mockable pieces. Reserved
/// names and variable/helper collisions are rejected; the policy's template
/// references are checked against the registry.
pub fn assemble_context(
    ast: crate::cd::CdNode,
    variables: BTreeMap<String, String>,
    helper_mocks: &[HelperMock],
    symbols: Arc<SymbolTable>,
    registry: Arc<TemplateRegistry>,
    policy: &SubstitutionPolicy,
) -> Result<RenderContext, MockError> {
    let interceptor = build_interceptor(policy, &registry)?;
    let mut helpers: BTreeMap<String, Arc<dyn Helper>> = BTreeMap::new();
    for mock in helper_mocks {
        helpers.insert(mock.name.clone(), Arc::new(mock_helper(mock.clone())));
    }
    Ok(RenderContext::new(
        ast,
        variables,
        helpers,
        symbols,
        registry,
        Arc::new(interceptor),
    )?)
}

/// Convenience for reading and parsing one model file.
pub fn load_model(path: &Path) -> Result<CdModel, MockError> {
    let source = fs::read_to_string(path).map_err(|source| MockError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_model(&source).map_err(|source| MockError::Model {
        path: path.to_path_buf(),
        source,
    })
}
