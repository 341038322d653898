//! The template engine context: values, helpers, include interception.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cd::{CdNode, SymbolEntry, SymbolTable};

use super::eval::{render, RenderError};
use super::{TemplateRegistry, RESERVED_NAMES};

/// A value produced by expression evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Text(String),
    Bool(bool),
    Node(CdNode),
    List(Vec<Value>),
    Symbol(SymbolEntry),
    /// A missing optional (`ast.value` without an initializer, an
    /// unresolved symbol). `expr??` maps it to `false`.
    Absent,
}

impl Value {
    /// Short description used in error messages.
    pub fn kind_name(&self) -> String {
        match self {
            Value::Text(_) => "text".to_string(),
            Value::Bool(_) => "boolean".to_string(),
            Value::Node(n) => format!("node ({})", n.kind_name()),
            Value::List(_) => "list".to_string(),
            Value::Symbol(_) => "symbol entry".to_string(),
            Value::Absent => "absent".to_string(),
        }
    }

    pub fn as_node(&self) -> Option<&CdNode> {
        match self {
            Value::Node(n) => Some(n),
            _ => None,
        }
    }

    /// Text this value contributes when interpolated. Text interpolates
    /// as-is, booleans as `true`/`false`, type nodes as their printed form;
    /// everything else has no textual form and must not be interpolated.
    pub fn printable(&self) -> Option<String> {
        match self {
            Value::Text(s) => Some(s.clone()),
            Value::Bool(b) => Some(b.to_string()),
            Value::Node(CdNode::Type(t)) => Some(t.printed()),
            _ => None,
        }
    }
}

/// A helper object callable from templates (`${helperName.method(args)}`).
/// Invocation must be deterministic for equal inputs within one render.
/// Helpers are `Send + Sync` so contexts can serve concurrent test
/// executions; a helper with interior mutability must synchronize it.
pub trait Helper: Send + Sync {
    fn invoke(&self, method: &str, args: &[Value]) -> Result<String, HelperError>;
}

/// Failure raised by a helper invocation.
#[derive(Clone, Debug, Error, PartialEq)]
#[error("helper `{helper}`: {message} (method `{method}`)")]
pub struct HelperError {
    pub helper: String,
    pub method: String,
    pub message: String,
}

/// Receives every sub-template call made during rendering. Nothing a
/// sub-template would produce reaches the output except through this trait.
/// Same `Send + Sync` contract as [`Helper`].
pub trait IncludeInterceptor: Send + Sync {
    fn include(
        &self,
        ctx: &RenderContext,
        template: &str,
        arg: &Value,
    ) -> Result<String, IncludeError>;
}

#[derive(Debug, Error)]
pub enum IncludeError {
    #[error("template `{0}` not found in registry")]
    TemplateNotFound(String),
    #[error("include argument must be a model node, got {0}")]
    ArgNotNode(String),
    #[error(transparent)]
    Render(Box<RenderError>),
}

/// The default interceptor: includes really render the registered
/// sub-template, with the argument node bound as its `ast`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Passthrough;

impl IncludeInterceptor for Passthrough {
    fn include(
        &self,
        ctx: &RenderContext,
        template: &str,
        arg: &Value,
    ) -> Result<String, IncludeError> {
        render_sub_template(ctx, template, arg)
    }
}

/// Looks `template` up in the context registry and renders it with `arg`
/// bound as `ast`; variables, helpers, and the symbol table are inherited
/// unchanged. Shared by every policy that renders a real template.
pub fn render_sub_template(
    ctx: &RenderContext,
    template: &str,
    arg: &Value,
) -> Result<String, IncludeError> {
    let sub = ctx
        .registry()
        .get(template)
        .ok_or_else(|| IncludeError::TemplateNotFound(template.to_string()))?;
    let node = arg
        .as_node()
        .ok_or_else(|| IncludeError::ArgNotNode(arg.kind_name()))?;
    render(sub, &ctx.with_ast(node.clone())).map_err(|e| IncludeError::Render(Box::new(e)))
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ContextError {
    #[error("`{0}` is reserved and cannot be used as a variable or helper name")]
    ReservedName(String),
    #[error("`{0}` is bound both as a variable and as a helper")]
    NameCollision(String),
}

/// Everything a template evaluation can see: the bound `ast` node, text
/// variables, helpers, the symbol table, the template registry, and the
/// include interceptor. Immutable during render; rebinding `ast` for a
/// sub-template is a cheap clone.
#[derive(Clone)]
pub struct RenderContext {
    ast: CdNode,
    variables: Arc<BTreeMap<String, String>>,
    helpers: Arc<BTreeMap<String, Arc<dyn Helper>>>,
    symbols: Arc<SymbolTable>,
    registry: Arc<TemplateRegistry>,
    interceptor: Arc<dyn IncludeInterceptor>,
    depth: u32,
}

impl fmt::Debug for RenderContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RenderContext")
            .field("ast", &self.ast.qualified_ref())
            .field("variables", &self.variables)
            .field("helpers", &self.helpers.keys().collect::<Vec<_>>())
            .field("depth", &self.depth)
            .finish_non_exhaustive()
    }
}

impl RenderContext {
    /// Assembles a context, rejecting reserved-name and variable/helper
    /// name collisions.
    pub fn new(
        ast: CdNode,
        variables: BTreeMap<String, String>,
        helpers: BTreeMap<String, Arc<dyn Helper>>,
        symbols: Arc<SymbolTable>,
        registry: Arc<TemplateRegistry>,
        interceptor: Arc<dyn IncludeInterceptor>,
    ) -> Result<Self, ContextError> {
        for reserved in RESERVED_NAMES {
            if variables.contains_key(reserved) || helpers.contains_key(reserved) {
                return Err(ContextError::ReservedName(reserved.to_string()));
            }
        }
        if let Some(name) = variables.keys().find(|n| helpers.contains_key(*n)) {
            return Err(ContextError::NameCollision(name.clone()));
        }
        Ok(Self {
            ast,
            variables: Arc::new(variables),
            helpers: Arc::new(helpers),
            symbols,
            registry,
            interceptor,
            depth: 0,
        })
    }

    /// A minimal context for self-contained templates: no variables, no
    /// helpers, empty symbol table, passthrough includes against `registry`.
    pub fn bare(ast: CdNode, registry: Arc<TemplateRegistry>) -> Self {
        Self::new(
            ast,
            BTreeMap::new(),
            BTreeMap::new(),
            Arc::new(SymbolTable::new()),
            registry,
            Arc::new(Passthrough),
        )
        .expect("empty maps cannot collide")
    }

    /// The same context with a different `ast` binding, one include level
    /// deeper.
    pub fn with_ast(&self, ast: CdNode) -> Self {
        Self {
            ast,
            depth: self.depth + 1,
            ..self.clone()
        }
    }

    pub fn ast(&self) -> &CdNode {
        &self.ast
    }

    pub fn variable(&self, name: &str) -> Option<&str> {
        self.variables.get(name).map(String::as_str)
    }

    pub fn helper(&self, name: &str) -> Option<&Arc<dyn Helper>> {
        self.helpers.get(name)
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn registry(&self) -> &TemplateRegistry {
        &self.registry
    }

    pub fn interceptor(&self) -> &dyn IncludeInterceptor {
        self.interceptor.as_ref()
    }

    pub(crate) fn depth(&self) -> u32 {
        self.depth
    }
}
