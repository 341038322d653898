//! Abstract syntax of the target-language subset, plus canonical printing.

use std::collections::BTreeSet;
use std::fmt;

/// A parsed fragment. The variant matches the entry point it was parsed
/// with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JtlNode {
    Unit(JtlCompilationUnit),
    Class(JtlClassDecl),
    Field(JtlFieldDecl),
    Method(JtlMethodDecl),
    Statements(Vec<JtlStmt>),
}

impl JtlNode {
    pub fn kind_name(&self) -> &'static str {
        match self {
            JtlNode::Unit(_) => "compilation unit",
            JtlNode::Class(_) => "class declaration",
            JtlNode::Field(_) => "field declaration",
            JtlNode::Method(_) => "method declaration",
            JtlNode::Statements(_) => "statement list",
        }
    }

    pub fn as_unit(&self) -> Option<&JtlCompilationUnit> {
        match self {
            JtlNode::Unit(u) => Some(u),
            _ => None,
        }
    }

    pub fn as_class(&self) -> Option<&JtlClassDecl> {
        match self {
            JtlNode::Class(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_method(&self) -> Option<&JtlMethodDecl> {
        match self {
            JtlNode::Method(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JtlCompilationUnit {
    pub package: Option<String>,
    pub imports: Vec<String>,
    pub types: Vec<JtlClassDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JtlClassDecl {
    pub modifiers: BTreeSet<Modifier>,
    pub name: String,
    pub superclass: Option<String>,
    pub interfaces: Vec<String>,
    pub members: Vec<JtlMember>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JtlMember {
    Field(JtlFieldDecl),
    Method(JtlMethodDecl),
}

impl JtlMember {
    pub fn kind_name(&self) -> &'static str {
        match self {
            JtlMember::Field(_) => "field",
            JtlMember::Method(_) => "method",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JtlFieldDecl {
    pub modifiers: BTreeSet<Modifier>,
    pub ty: JtlType,
    pub name: String,
    pub initializer: Option<ExprTokens>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JtlMethodDecl {
    pub modifiers: BTreeSet<Modifier>,
    pub return_type: JtlType,
    pub name: String,
    pub params: Vec<JtlParam>,
    pub throws: Vec<String>,
    /// `None` for a bodyless declaration terminated by `;`.
    pub body: Option<Vec<JtlStmt>>,
    /// Constructors parse as methods whose return type repeats the name;
    /// this marker keeps them distinguishable.
    pub constructor: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JtlParam {
    pub ty: JtlType,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JtlStmt {
    LocalVarDecl {
        ty: JtlType,
        name: String,
        initializer: Option<ExprTokens>,
    },
    ExprStmt(ExprTokens),
    Return(Option<ExprTokens>),
    Block(Vec<JtlStmt>),
}

impl JtlStmt {
    pub fn kind_name(&self) -> &'static str {
        match self {
            JtlStmt::LocalVarDecl { .. } => "local variable declaration",
            JtlStmt::ExprStmt(_) => "expression statement",
            JtlStmt::Return(_) => "return statement",
            JtlStmt::Block(_) => "block",
        }
    }

    /// Bare identifiers this statement's expressions use, in order.
    pub fn used_idents(&self) -> &[String] {
        match self {
            JtlStmt::LocalVarDecl {
                initializer: Some(init),
                ..
            } => &init.used_idents,
            JtlStmt::ExprStmt(expr) | JtlStmt::Return(Some(expr)) => &expr.used_idents,
            _ => &[],
        }
    }
}

/// An expression kept as its token sequence plus the bare identifiers it
/// uses (keywords excluded; `a.b` contributes only `a`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprTokens {
    pub tokens: Vec<String>,
    pub used_idents: Vec<String>,
}

impl ExprTokens {
    pub fn printed(&self) -> String {
        self.tokens.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JtlType {
    pub base: String,
    pub array_dims: usize,
}

impl JtlType {
    pub fn new(base: impl Into<String>, array_dims: usize) -> Self {
        Self {
            base: base.into(),
            array_dims,
        }
    }

    pub fn printed(&self) -> String {
        let mut s = self.base.clone();
        for _ in 0..self.array_dims {
            s.push_str("[]");
        }
        s
    }
}

impl fmt::Display for JtlType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.printed())
    }
}

/// Declaration modifiers. Stored as a set: source order is formatting, not
/// structure. The `Ord` derive fixes the canonical printing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Modifier {
    Public,
    Protected,
    Private,
    Abstract,
    Static,
    Final,
}

impl Modifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Modifier::Public => "public",
            Modifier::Protected => "protected",
            Modifier::Private => "private",
            Modifier::Abstract => "abstract",
            Modifier::Static => "static",
            Modifier::Final => "final",
        }
    }

    pub fn parse(text: &str) -> Option<Modifier> {
        Some(match text {
            "public" => Modifier::Public,
            "protected" => Modifier::Protected,
            "private" => Modifier::Private,
            "abstract" => Modifier::Abstract,
            "static" => Modifier::Static,
            "final" => Modifier::Final,
            _ => return None,
        })
    }
}

pub(crate) fn print_modifiers(mods: &BTreeSet<Modifier>) -> String {
    mods.iter()
        .map(|m| m.keyword())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical one-line rendering of a node. Re-parsing the result yields a
/// structurally equal node.
pub fn print_node(node: &JtlNode) -> String {
    match node {
        JtlNode::Unit(u) => print_unit(u),
        JtlNode::Class(c) => print_class(c),
        JtlNode::Field(f) => print_field(f),
        JtlNode::Method(m) => print_method(m),
        JtlNode::Statements(stmts) => print_stmt_list(stmts),
    }
}

pub(crate) fn print_unit(unit: &JtlCompilationUnit) -> String {
    let mut parts = Vec::new();
    if let Some(package) = &unit.package {
        parts.push(format!("package {package};"));
    }
    for import in &unit.imports {
        parts.push(format!("import {import};"));
    }
    parts.extend(unit.types.iter().map(print_class));
    parts.join(" ")
}

pub(crate) fn print_class(class: &JtlClassDecl) -> String {
    let mut s = String::new();
    let mods = print_modifiers(&class.modifiers);
    if !mods.is_empty() {
        s.push_str(&mods);
        s.push(' ');
    }
    s.push_str("class ");
    s.push_str(&class.name);
    if let Some(superclass) = &class.superclass {
        s.push_str(&format!(" extends {superclass}"));
    }
    if !class.interfaces.is_empty() {
        s.push_str(&format!(" implements {}", class.interfaces.join(", ")));
    }
    if class.members.is_empty() {
        s.push_str(" {}");
    } else {
        let members: Vec<String> = class
            .members
            .iter()
            .map(|m| match m {
                JtlMember::Field(f) => print_field(f),
                JtlMember::Method(m) => print_method(m),
            })
            .collect();
        s.push_str(&format!(" {{ {} }}", members.join(" ")));
    }
    s
}

pub(crate) fn print_field(field: &JtlFieldDecl) -> String {
    let mut s = String::new();
    let mods = print_modifiers(&field.modifiers);
    if !mods.is_empty() {
        s.push_str(&mods);
        s.push(' ');
    }
    s.push_str(&format!("{} {}", field.ty.printed(), field.name));
    if let Some(init) = &field.initializer {
        s.push_str(&format!(" = {}", init.printed()));
    }
    s.push(';');
    s
}

pub(crate) fn print_method(method: &JtlMethodDecl) -> String {
    let mut s = String::new();
    let mods = print_modifiers(&method.modifiers);
    if !mods.is_empty() {
        s.push_str(&mods);
        s.push(' ');
    }
    if !method.constructor {
        s.push_str(&method.return_type.printed());
        s.push(' ');
    }
    s.push_str(&method.name);
    let params: Vec<String> = method
        .params
        .iter()
        .map(|p| format!("{} {}", p.ty.printed(), p.name))
        .collect();
    s.push_str(&format!("({})", params.join(", ")));
    if !method.throws.is_empty() {
        s.push_str(&format!(" throws {}", method.throws.join(", ")));
    }
    match &method.body {
        None => s.push(';'),
        Some(body) if body.is_empty() => s.push_str(" {}"),
        Some(body) => s.push_str(&format!(" {{ {} }}", print_stmt_list(body))),
    }
    s
}

pub(crate) fn print_stmt(stmt: &JtlStmt) -> String {
    match stmt {
        JtlStmt::LocalVarDecl {
            ty,
            name,
            initializer,
        } => match initializer {
            Some(init) => format!("{} {name} = {};", ty.printed(), init.printed()),
            None => format!("{} {name};", ty.printed()),
        },
        JtlStmt::ExprStmt(expr) => format!("{};", expr.printed()),
        JtlStmt::Return(Some(expr)) => format!("return {};", expr.printed()),
        JtlStmt::Return(None) => "return;".to_string(),
        JtlStmt::Block(stmts) if stmts.is_empty() => "{}".to_string(),
        JtlStmt::Block(stmts) => format!("{{ {} }}", print_stmt_list(stmts)),
    }
}

pub(crate) fn print_stmt_list(stmts: &[JtlStmt]) -> String {
    stmts.iter().map(print_stmt).collect::<Vec<_>>().join(" ")
}
