//! The Java-like target language.
//!
//! Rendered template output is usually a fragment — a field declaration, a
//! method, a statement list — not a whole source file. [`partial_parse`]
//! parses exactly the fragment kind a test asks for, producing an AST with
//! whitespace and comments already erased, so structural comparison
//! ([`ast_equals`], [`ast_diff`]) ignores formatting entirely.
//!
//! [`check_context_conditions`] runs well-formedness rules of the target
//! language on a parsed node: use-before-definition of identifiers (CC1)
//! and duplicate members in a class (CC2).
//!
//! The grammar is a deliberately small Java subset: no generics,
//! annotations, or lambdas, and expressions are kept as normalized token
//! sequences plus the identifiers they use rather than full trees.

mod ast;
mod compare;
mod conditions;
mod lexer;
mod parser;

pub use ast::{
    print_node, ExprTokens, JtlClassDecl, JtlCompilationUnit, JtlFieldDecl, JtlMember,
    JtlMethodDecl, JtlNode, JtlParam, JtlStmt, JtlType, Modifier,
};
pub use compare::{ast_diff, ast_equals, AstDiff, KindMismatch, Mismatch};
pub use conditions::{check_context_conditions, Violation};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{partial_parse, JtlError};

use std::fmt;

/// The fragment kinds [`partial_parse`] accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryPoint {
    CompilationUnit,
    ClassDecl,
    FieldDecl,
    MethodDecl,
    Statements,
}

impl EntryPoint {
    pub const ALL: [EntryPoint; 5] = [
        EntryPoint::CompilationUnit,
        EntryPoint::ClassDecl,
        EntryPoint::FieldDecl,
        EntryPoint::MethodDecl,
        EntryPoint::Statements,
    ];

    /// Manifest spelling (`field_decl`, `method_decl`, ...).
    pub fn name(self) -> &'static str {
        match self {
            EntryPoint::CompilationUnit => "compilation_unit",
            EntryPoint::ClassDecl => "class_decl",
            EntryPoint::FieldDecl => "field_decl",
            EntryPoint::MethodDecl => "method_decl",
            EntryPoint::Statements => "statements",
        }
    }

    pub fn parse(name: &str) -> Option<EntryPoint> {
        Self::ALL.iter().copied().find(|e| e.name() == name)
    }
}

impl fmt::Display for EntryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
