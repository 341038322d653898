//! The template language and its evaluation engine.
//!
//! Templates are target text interleaved with a small set of constructs:
//!
//! * `${expr}` — interpolation
//! * `<#if expr> ... <#else> ... </#if>` — conditional
//! * `<#list expr as name> ... </#list>` — iteration
//! * `${tc.include("TemplateName", expr)}` — sub-template call
//!
//! Rendering happens against a [`RenderContext`] holding the bound model
//! node (`ast`), text variables, helper objects, the symbol table (`st`),
//! the template registry, and an [`IncludeInterceptor`]. Every sub-template
//! call goes through the interceptor — that is the hook the mocking layer
//! uses to prune, replace, or pass through includes.
//!
//! Directives contribute nothing to the output and literal text contributes
//! everything: there is no whitespace trimming. Normalization is the
//! assertion layer's job.

mod context;
mod eval;
mod parse;

pub use context::{
    render_sub_template, ContextError, Helper, HelperError, IncludeError, IncludeInterceptor,
    Passthrough, RenderContext, Value,
};
pub use eval::{eval_expr, include_call, render, EvalError, RenderError};
pub use parse::parse_template;

use std::collections::BTreeMap;

use thiserror::Error;

/// Names with fixed meaning inside templates: the bound node, the symbol
/// table, and the template controller. They can never be used as variable
/// or helper names.
pub const RESERVED_NAMES: [&str; 3] = ["ast", "st", "tc"];

/// A parsed template. `name` is the key under which the registry and
/// `tc.include` calls find it.
#[derive(Clone, Debug, PartialEq)]
pub struct Template {
    pub name: String,
    pub parts: Vec<Part>,
}

/// One segment of a template body.
#[derive(Clone, Debug, PartialEq)]
pub enum Part {
    /// Raw target text, preserved byte-exact.
    Literal(String),
    Interp { expr: Expr, line: u32 },
    If {
        cond: Expr,
        then_parts: Vec<Part>,
        else_parts: Option<Vec<Part>>,
        line: u32,
    },
    List {
        items: Expr,
        var: String,
        body: Vec<Part>,
        line: u32,
    },
    /// A `${tc.include("Name", expr)}` call. The template name is a string
    /// literal so substitution rules can match it statically.
    Include {
        template: String,
        arg: Expr,
        line: u32,
    },
}

/// A side-effect-free template expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(String),
    Str(String),
    Path { base: Box<Expr>, member: String },
    Call {
        base: Box<Expr>,
        method: String,
        args: Vec<Expr>,
    },
    /// The `expr??` presence test.
    Exists(Box<Expr>),
    Eq(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TemplateParseError {
    #[error("{template}:{line}:{col}: unbalanced directive: {message}")]
    UnbalancedDirective {
        template: String,
        line: u32,
        col: u32,
        message: String,
    },
    #[error("{template}:{line}:{col}: malformed expression: {message}")]
    MalformedExpr {
        template: String,
        line: u32,
        col: u32,
        message: String,
    },
}

/// Named collection of parsed templates; the lookup target of `tc.include`.
#[derive(Clone, Debug, Default)]
pub struct TemplateRegistry {
    templates: BTreeMap<String, Template>,
}

impl TemplateRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a template under its name, replacing any previous entry.
    pub fn insert(&mut self, template: Template) {
        self.templates.insert(template.name.clone(), template);
    }

    /// Parses `source` and registers it under `name`.
    pub fn insert_source(&mut self, name: &str, source: &str) -> Result<(), TemplateParseError> {
        self.insert(parse_template(name, source)?);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Template> {
        self.templates.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.templates.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.templates.keys().map(String::as_str)
    }
}
