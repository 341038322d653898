//! Expression evaluation and template rendering.
//!
//! Bare names resolve in a fixed order: reserved (`ast`, `st`, `tc`), then
//! loop bindings, then variables, then helpers. Property and method access
//! on nodes follows a fixed table per node kind; there is no reflection and
//! no silent coercion — interpolating a value without a textual form is an
//! error.

use thiserror::Error;

use crate::cd::CdNode;

use super::context::{IncludeError, RenderContext, Value};
use super::{Expr, Part, Template};

/// Highest include nesting allowed before a cycle is assumed.
const MAX_INCLUDE_DEPTH: u32 = 64;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{kind}` has no property or method `{member}`")]
    UnknownProperty { kind: String, member: String },
    #[error("`{method}` expects {expected} argument(s), got {got}")]
    ArityMismatch {
        method: String,
        expected: usize,
        got: usize,
    },
    #[error("cannot interpolate a {0} value")]
    NotPrintable(String),
    #[error("`<#if>` condition must be a boolean, got {0}")]
    CondNotBool(String),
    #[error("`<#list>` needs a list, got {0}")]
    NotIterable(String),
    #[error("`!` needs a boolean, got {0}")]
    NotBool(String),
    #[error("`{0}` is a helper and must be invoked as `{0}.method(...)`")]
    HelperNotCalled(String),
    #[error("`st` is only usable as `st.resolve(name)`")]
    StUsage,
    #[error("`tc.include` is only supported as a standalone `${{tc.include(...)}}` interpolation")]
    TcUsage,
    #[error("`st.resolve` needs a text argument, got {0}")]
    ResolveArg(String),
    #[error("template `{0}` not found in registry")]
    TemplateNotFound(String),
    #[error("include argument must be a model node, got {0}")]
    IncludeArg(String),
    #[error("includes nested deeper than {MAX_INCLUDE_DEPTH} levels; include cycle?")]
    IncludeDepth,
    #[error("helper `{helper}`: {message} (method `{method}`)")]
    Helper {
        helper: String,
        method: String,
        message: String,
    },
}

/// An evaluation failure located at the template and line it came from.
#[derive(Clone, Debug, Error, PartialEq)]
#[error("template `{template}` line {line}: {kind}")]
pub struct RenderError {
    pub template: String,
    pub line: u32,
    pub kind: EvalError,
}

/// Loop-variable bindings, innermost last.
#[derive(Default)]
struct Scope(Vec<(String, Value)>);

impl Scope {
    fn lookup(&self, name: &str) -> Option<&Value> {
        self.0.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

/// Evaluates one expression against a context (no loop bindings in scope).
pub fn eval_expr(expr: &Expr, ctx: &RenderContext) -> Result<Value, EvalError> {
    eval_in(expr, ctx, &Scope::default())
}

fn eval_in(expr: &Expr, ctx: &RenderContext, scope: &Scope) -> Result<Value, EvalError> {
    match expr {
        Expr::Str(s) => Ok(Value::Text(s.clone())),
        Expr::Var(name) => eval_name(name, ctx, scope),
        Expr::Path { base, member } => {
            reject_reserved_base(base)?;
            let value = eval_in(base, ctx, scope)?;
            node_property(&value, member)
        }
        Expr::Call { base, method, args } => eval_call(base, method, args, ctx, scope),
        Expr::Exists(inner) => match eval_in(inner, ctx, scope) {
            Ok(Value::Absent) => Ok(Value::Bool(false)),
            Ok(_) => Ok(Value::Bool(true)),
            // `x??` asks exactly "does this name resolve"; an unknown name
            // is the negative answer, not an error.
            Err(EvalError::UnknownName(_)) => Ok(Value::Bool(false)),
            Err(e) => Err(e),
        },
        Expr::Eq(left, right) => {
            let l = eval_in(left, ctx, scope)?;
            let r = eval_in(right, ctx, scope)?;
            Ok(Value::Bool(l == r))
        }
        Expr::Not(inner) => match eval_in(inner, ctx, scope)? {
            Value::Bool(b) => Ok(Value::Bool(!b)),
            other => Err(EvalError::NotBool(other.kind_name())),
        },
    }
}

fn eval_name(name: &str, ctx: &RenderContext, scope: &Scope) -> Result<Value, EvalError> {
    match name {
        "ast" => return Ok(Value::Node(ctx.ast().clone())),
        "st" => return Err(EvalError::StUsage),
        "tc" => return Err(EvalError::TcUsage),
        _ => {}
    }
    if let Some(v) = scope.lookup(name) {
        return Ok(v.clone());
    }
    if let Some(text) = ctx.variable(name) {
        return Ok(Value::Text(text.to_string()));
    }
    if ctx.helper(name).is_some() {
        return Err(EvalError::HelperNotCalled(name.to_string()));
    }
    Err(EvalError::UnknownName(name.to_string()))
}

fn reject_reserved_base(base: &Expr) -> Result<(), EvalError> {
    match base {
        Expr::Var(n) if n == "st" => Err(EvalError::StUsage),
        Expr::Var(n) if n == "tc" => Err(EvalError::TcUsage),
        _ => Ok(()),
    }
}

fn eval_call(
    base: &Expr,
    method: &str,
    args: &[Expr],
    ctx: &RenderContext,
    scope: &Scope,
) -> Result<Value, EvalError> {
    if let Expr::Var(name) = base {
        if name == "tc" {
            return Err(EvalError::TcUsage);
        }
        if name == "st" {
            if method != "resolve" {
                return Err(EvalError::UnknownProperty {
                    kind: "st".to_string(),
                    member: method.to_string(),
                });
            }
            if args.len() != 1 {
                return Err(EvalError::ArityMismatch {
                    method: "st.resolve".to_string(),
                    expected: 1,
                    got: args.len(),
                });
            }
            let arg = eval_in(&args[0], ctx, scope)?;
            let Value::Text(symbol_name) = arg else {
                return Err(EvalError::ResolveArg(arg.kind_name()));
            };
            return Ok(match ctx.symbols().resolve(&symbol_name) {
                Some(entry) => Value::Symbol(entry.clone()),
                None => Value::Absent,
            });
        }
        // Helper invocation; variables and loop bindings shadow helpers,
        // but collisions are rejected at assembly so the name is unique.
        if scope.lookup(name).is_none() && ctx.variable(name).is_none() {
            if let Some(helper) = ctx.helper(name) {
                let mut values = Vec::with_capacity(args.len());
                for arg in args {
                    values.push(eval_in(arg, ctx, scope)?);
                }
                return helper
                    .invoke(method, &values)
                    .map(Value::Text)
                    .map_err(|e| EvalError::Helper {
                        helper: e.helper,
                        method: e.method,
                        message: e.message,
                    });
            }
        }
    }
    let value = eval_in(base, ctx, scope)?;
    node_method(&value, method, args.len())
}

/// Property table for `value.member` access.
fn node_property(value: &Value, member: &str) -> Result<Value, EvalError> {
    let node = match value {
        Value::Node(n) => n,
        Value::Symbol(entry) => {
            return match member {
                "name" => Ok(Value::Text(entry.name.clone())),
                "kind" => Ok(Value::Text(entry.kind.to_string())),
                _ => Err(EvalError::UnknownProperty {
                    kind: "symbol entry".to_string(),
                    member: member.to_string(),
                }),
            }
        }
        other => {
            return Err(EvalError::UnknownProperty {
                kind: other.kind_name(),
                member: member.to_string(),
            })
        }
    };
    let result = match node {
        CdNode::Attribute { attr, .. } => match member {
            "name" => Some(Value::Text(attr.name.clone())),
            "type" => Some(Value::Node(CdNode::Type(attr.ty.clone()))),
            "value" => Some(match &attr.value {
                Some(v) => Value::Text(v.clone()),
                None => Value::Absent,
            }),
            _ => None,
        },
        CdNode::Method { owner, method: m } => match member {
            "name" => Some(Value::Text(m.name.clone())),
            "returnType" => Some(Value::Node(CdNode::Type(m.return_type.clone()))),
            "parameters" => Some(Value::List(
                m.parameters
                    .iter()
                    .map(|p| {
                        Value::Node(CdNode::Parameter {
                            owner: owner.clone(),
                            method: m.clone(),
                            param: p.clone(),
                        })
                    })
                    .collect(),
            )),
            "exceptions" => Some(Value::List(
                m.exceptions.iter().cloned().map(Value::Text).collect(),
            )),
            _ => None,
        },
        CdNode::Parameter { param, .. } => match member {
            "name" => Some(Value::Text(param.name.clone())),
            "type" => Some(Value::Node(CdNode::Type(param.ty.clone()))),
            _ => None,
        },
        CdNode::Class(c) => match member {
            "name" => Some(Value::Text(c.name.clone())),
            "superclass" => Some(match &c.superclass {
                Some(s) => Value::Text(s.clone()),
                None => Value::Absent,
            }),
            "attributes" => Some(Value::List(
                c.attributes
                    .iter()
                    .map(|a| {
                        Value::Node(CdNode::Attribute {
                            owner: c.name.clone(),
                            attr: a.clone(),
                        })
                    })
                    .collect(),
            )),
            "methods" => Some(Value::List(
                c.methods
                    .iter()
                    .map(|m| {
                        Value::Node(CdNode::Method {
                            owner: c.name.clone(),
                            method: m.clone(),
                        })
                    })
                    .collect(),
            )),
            _ => None,
        },
        CdNode::Interface(i) => match member {
            "name" => Some(Value::Text(i.name.clone())),
            "methods" => Some(Value::List(
                i.methods
                    .iter()
                    .map(|m| {
                        Value::Node(CdNode::Method {
                            owner: i.name.clone(),
                            method: m.clone(),
                        })
                    })
                    .collect(),
            )),
            _ => None,
        },
        CdNode::Enum(e) => match member {
            "name" => Some(Value::Text(e.name.clone())),
            "constants" => Some(Value::List(
                e.constants.iter().cloned().map(Value::Text).collect(),
            )),
            _ => None,
        },
        CdNode::Type(_) => None,
    };
    result.ok_or_else(|| EvalError::UnknownProperty {
        kind: node.kind_name().to_string(),
        member: member.to_string(),
    })
}

/// Method table for `value.method(...)` calls on nodes. All node methods
/// are zero-argument print helpers.
fn node_method(value: &Value, method: &str, arg_count: usize) -> Result<Value, EvalError> {
    let Value::Node(node) = value else {
        return Err(EvalError::UnknownProperty {
            kind: value.kind_name(),
            member: method.to_string(),
        });
    };
    let result = match node {
        CdNode::Attribute { attr, .. } => match method {
            "printType" => Some(Value::Text(attr.ty.printed())),
            "printValue" => Some(match &attr.value {
                Some(v) => Value::Text(v.clone()),
                None => Value::Absent,
            }),
            _ => None,
        },
        CdNode::Method { method: m, .. } => match method {
            "printName" => Some(Value::Text(m.name.clone())),
            "printReturnType" => Some(Value::Text(m.return_type.printed())),
            _ => None,
        },
        CdNode::Parameter { param, .. } => match method {
            "printType" => Some(Value::Text(param.ty.printed())),
            _ => None,
        },
        _ => None,
    };
    let value = result.ok_or_else(|| EvalError::UnknownProperty {
        kind: node.kind_name().to_string(),
        member: method.to_string(),
    })?;
    if arg_count != 0 {
        return Err(EvalError::ArityMismatch {
            method: method.to_string(),
            expected: 0,
            got: arg_count,
        });
    }
    Ok(value)
}

/// Renders a template: the concatenation of its evaluated parts, in order.
/// Sub-template calls produce exactly the text the context's interceptor
/// returns.
pub fn render(template: &Template, ctx: &RenderContext) -> Result<String, RenderError> {
    if ctx.depth() > MAX_INCLUDE_DEPTH {
        return Err(RenderError {
            template: template.name.clone(),
            line: 1,
            kind: EvalError::IncludeDepth,
        });
    }
    let mut out = String::new();
    let mut scope = Scope::default();
    render_parts(&template.parts, ctx, &mut scope, &mut out, &template.name)?;
    Ok(out)
}

fn render_parts(
    parts: &[Part],
    ctx: &RenderContext,
    scope: &mut Scope,
    out: &mut String,
    template_name: &str,
) -> Result<(), RenderError> {
    let err = |line: u32, kind: EvalError| RenderError {
        template: template_name.to_string(),
        line,
        kind,
    };
    for part in parts {
        match part {
            Part::Literal(text) => out.push_str(text),
            Part::Interp { expr, line } => {
                let value = eval_in(expr, ctx, scope).map_err(|e| err(*line, e))?;
                let text = value
                    .printable()
                    .ok_or_else(|| err(*line, EvalError::NotPrintable(value.kind_name())))?;
                out.push_str(&text);
            }
            Part::If {
                cond,
                then_parts,
                else_parts,
                line,
            } => {
                let value = eval_in(cond, ctx, scope).map_err(|e| err(*line, e))?;
                let Value::Bool(cond) = value else {
                    return Err(err(*line, EvalError::CondNotBool(value.kind_name())));
                };
                if cond {
                    render_parts(then_parts, ctx, scope, out, template_name)?;
                } else if let Some(else_parts) = else_parts {
                    render_parts(else_parts, ctx, scope, out, template_name)?;
                }
            }
            Part::List {
                items,
                var,
                body,
                line,
            } => {
                let value = eval_in(items, ctx, scope).map_err(|e| err(*line, e))?;
                let Value::List(values) = value else {
                    return Err(err(*line, EvalError::NotIterable(value.kind_name())));
                };
                for item in values {
                    scope.0.push((var.clone(), item));
                    let result = render_parts(body, ctx, scope, out, template_name);
                    scope.0.pop();
                    result?;
                }
            }
            Part::Include {
                template: sub_name,
                arg,
                line,
            } => {
                let arg_value = eval_in(arg, ctx, scope).map_err(|e| err(*line, e))?;
                let text = include_call(ctx, sub_name, &arg_value).map_err(|e| match e {
                    IncludeError::TemplateNotFound(name) => {
                        err(*line, EvalError::TemplateNotFound(name))
                    }
                    IncludeError::ArgNotNode(kind) => err(*line, EvalError::IncludeArg(kind)),
                    IncludeError::Render(inner) => *inner,
                })?;
                out.push_str(&text);
            }
        }
    }
    Ok(())
}

/// Routes one sub-template call through the context's interceptor.
pub fn include_call(
    ctx: &RenderContext,
    template: &str,
    arg: &Value,
) -> Result<String, IncludeError> {
    ctx.interceptor().include(ctx, template, arg)
}
