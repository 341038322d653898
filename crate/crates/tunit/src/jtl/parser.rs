//! Partial parser: parses exactly the requested fragment kind.

use std::collections::BTreeSet;

use thiserror::Error;

use super::ast::*;
use super::lexer::{tokenize, Token, TokenKind};
use super::EntryPoint;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum JtlError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: u32, col: u32, message: String },
    #[error("expected a {expected} but found a {found} at {line}:{col}")]
    WrongFragmentKind {
        expected: &'static str,
        found: &'static str,
        line: u32,
        col: u32,
    },
}

impl JtlError {
    pub(crate) fn syntax(line: u32, col: u32, message: &str) -> Self {
        JtlError::Syntax {
            line,
            col,
            message: message.to_string(),
        }
    }
}

/// Parses `source` as the fragment kind `entry` names. Anything but
/// whitespace or comments after the fragment is an error.
pub fn partial_parse(entry: EntryPoint, source: &str) -> Result<JtlNode, JtlError> {
    let tokens = tokenize(source)?;
    let end = end_position(source);
    let mut p = Parser {
        tokens,
        pos: 0,
        end,
    };
    let node = match entry {
        EntryPoint::CompilationUnit => JtlNode::Unit(p.compilation_unit()?),
        EntryPoint::ClassDecl => JtlNode::Class(p.class_decl()?),
        EntryPoint::FieldDecl => JtlNode::Field(p.field_decl()?),
        EntryPoint::MethodDecl => JtlNode::Method(p.method_decl()?),
        EntryPoint::Statements => {
            let mut stmts = Vec::new();
            while !p.at_end() {
                stmts.push(p.statement()?);
            }
            JtlNode::Statements(stmts)
        }
    };
    if !p.at_end() {
        return Err(p.error("expected end of input after the fragment"));
    }
    Ok(node)
}

fn end_position(source: &str) -> (u32, u32) {
    let mut line = 1u32;
    let mut col = 1u32;
    for c in source.chars() {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (u32, u32),
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&Token> {
        self.tokens.get(self.pos + offset)
    }

    fn position(&self) -> (u32, u32) {
        self.peek().map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn error(&self, message: &str) -> JtlError {
        let (line, col) = self.position();
        let found = match self.peek() {
            Some(t) => format!("{message}, found `{}`", t.text),
            None => format!("{message}, found end of input"),
        };
        JtlError::syntax(line, col, &found)
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        self.pos += 1;
        t
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(t) if t.kind == TokenKind::Punct && t.text == p)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), JtlError> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{p}`")))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(t) if t.kind == TokenKind::Keyword && t.text == kw)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.at_keyword(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_ident(&self) -> bool {
        matches!(self.peek(), Some(t) if t.kind == TokenKind::Ident)
    }

    fn expect_ident(&mut self, what: &str) -> Result<Token, JtlError> {
        if self.at_ident() {
            Ok(self.bump())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn modifiers(&mut self) -> Result<BTreeSet<Modifier>, JtlError> {
        let mut mods = BTreeSet::new();
        while let Some(t) = self.peek() {
            if t.kind != TokenKind::Keyword {
                break;
            }
            let Some(m) = Modifier::parse(&t.text) else { break };
            let (line, col) = (t.line, t.col);
            self.pos += 1;
            if !mods.insert(m) {
                return Err(JtlError::syntax(
                    line,
                    col,
                    &format!("duplicate modifier `{}`", m.keyword()),
                ));
            }
        }
        Ok(mods)
    }

    fn dotted_name(&mut self, what: &str) -> Result<String, JtlError> {
        let mut name = self.expect_ident(what)?.text;
        while self.at_punct(".") {
            if !matches!(self.peek_at(1), Some(t) if t.kind == TokenKind::Ident) {
                break;
            }
            self.bump();
            name.push('.');
            name.push_str(&self.bump().text);
        }
        Ok(name)
    }

    fn type_ref(&mut self) -> Result<JtlType, JtlError> {
        let base = self.dotted_name("a type name")?;
        let mut dims = 0;
        while self.at_punct("[") && matches!(self.peek_at(1), Some(t) if t.text == "]") {
            self.bump();
            self.bump();
            dims += 1;
        }
        Ok(JtlType::new(base, dims))
    }

    fn compilation_unit(&mut self) -> Result<JtlCompilationUnit, JtlError> {
        let package = if self.eat_keyword("package") {
            let name = self.dotted_name("a package name")?;
            self.expect_punct(";")?;
            Some(name)
        } else {
            None
        };
        let mut imports = Vec::new();
        while self.eat_keyword("import") {
            imports.push(self.dotted_name("an import path")?);
            self.expect_punct(";")?;
        }
        let mut types = Vec::new();
        while !self.at_end() {
            types.push(self.class_decl()?);
        }
        Ok(JtlCompilationUnit {
            package,
            imports,
            types,
        })
    }

    fn class_decl(&mut self) -> Result<JtlClassDecl, JtlError> {
        let modifiers = self.modifiers()?;
        if !self.at_keyword("class") {
            return Err(self.error("expected `class`"));
        }
        self.bump();
        let name = self.expect_ident("a class name")?.text;
        let superclass = if self.eat_keyword("extends") {
            Some(self.dotted_name("a superclass name")?)
        } else {
            None
        };
        let mut interfaces = Vec::new();
        if self.eat_keyword("implements") {
            loop {
                interfaces.push(self.dotted_name("an interface name")?);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct("{")?;
        let mut members = Vec::new();
        while !self.at_punct("}") {
            if self.at_end() {
                return Err(self.error("expected `}` closing the class body"));
            }
            members.push(self.member(&name)?);
        }
        self.expect_punct("}")?;
        Ok(JtlClassDecl {
            modifiers,
            name,
            superclass,
            interfaces,
            members,
        })
    }

    fn member(&mut self, _class_name: &str) -> Result<JtlMember, JtlError> {
        let modifiers = self.modifiers()?;
        // An identifier directly followed by `(` is a constructor.
        if self.at_ident() && matches!(self.peek_at(1), Some(t) if t.text == "(") {
            let name = self.bump().text;
            let method = self.method_tail(modifiers, JtlType::new(name.clone(), 0), name, true)?;
            return Ok(JtlMember::Method(method));
        }
        let ty = self.type_ref()?;
        let name = self.expect_ident("a member name")?.text;
        if self.at_punct("(") {
            let method = self.method_tail(modifiers, ty, name, false)?;
            return Ok(JtlMember::Method(method));
        }
        let field = self.field_tail(modifiers, ty, name)?;
        Ok(JtlMember::Field(field))
    }

    fn field_decl(&mut self) -> Result<JtlFieldDecl, JtlError> {
        let modifiers = self.modifiers()?;
        let ty = self.type_ref()?;
        let name = self.expect_ident("a field name")?.text;
        if self.at_punct("(") {
            let (line, col) = self.position();
            return Err(JtlError::WrongFragmentKind {
                expected: "field declaration",
                found: "method declaration",
                line,
                col,
            });
        }
        self.field_tail(modifiers, ty, name)
    }

    fn field_tail(
        &mut self,
        modifiers: BTreeSet<Modifier>,
        ty: JtlType,
        name: String,
    ) -> Result<JtlFieldDecl, JtlError> {
        let initializer = if self.eat_punct("=") {
            Some(self.expr_tokens_until_semi()?)
        } else {
            None
        };
        self.expect_punct(";")?;
        Ok(JtlFieldDecl {
            modifiers,
            ty,
            name,
            initializer,
        })
    }

    fn method_decl(&mut self) -> Result<JtlMethodDecl, JtlError> {
        let modifiers = self.modifiers()?;
        if self.at_ident() && matches!(self.peek_at(1), Some(t) if t.text == "(") {
            let name = self.bump().text;
            return self.method_tail(modifiers, JtlType::new(name.clone(), 0), name, true);
        }
        let ty = self.type_ref()?;
        let name = self.expect_ident("a method name")?.text;
        if self.at_punct("=") || self.at_punct(";") {
            let (line, col) = self.position();
            return Err(JtlError::WrongFragmentKind {
                expected: "method declaration",
                found: "field declaration",
                line,
                col,
            });
        }
        self.method_tail(modifiers, ty, name, false)
    }

    fn method_tail(
        &mut self,
        modifiers: BTreeSet<Modifier>,
        return_type: JtlType,
        name: String,
        constructor: bool,
    ) -> Result<JtlMethodDecl, JtlError> {
        self.expect_punct("(")?;
        let mut params = Vec::new();
        if !self.at_punct(")") {
            loop {
                let ty = self.type_ref()?;
                let name = self.expect_ident("a parameter name")?.text;
                params.push(JtlParam { ty, name });
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        let mut throws = Vec::new();
        if self.eat_keyword("throws") {
            loop {
                throws.push(self.dotted_name("an exception type")?);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        let body = if self.eat_punct(";") {
            None
        } else {
            Some(self.block_body()?)
        };
        Ok(JtlMethodDecl {
            modifiers,
            return_type,
            name,
            params,
            throws,
            body,
            constructor,
        })
    }

    fn block_body(&mut self) -> Result<Vec<JtlStmt>, JtlError> {
        self.expect_punct("{")?;
        let mut stmts = Vec::new();
        while !self.at_punct("}") {
            if self.at_end() {
                return Err(self.error("expected `}` closing the block"));
            }
            stmts.push(self.statement()?);
        }
        self.expect_punct("}")?;
        Ok(stmts)
    }

    fn statement(&mut self) -> Result<JtlStmt, JtlError> {
        if self.at_punct("{") {
            return Ok(JtlStmt::Block(self.block_body()?));
        }
        if self.eat_keyword("return") {
            if self.eat_punct(";") {
                return Ok(JtlStmt::Return(None));
            }
            let expr = self.expr_tokens_until_semi()?;
            self.expect_punct(";")?;
            return Ok(JtlStmt::Return(Some(expr)));
        }
        // Local variable declaration: type then name then `=` or `;`.
        // Anything else rolls back to an expression statement.
        let saved = self.pos;
        if self.at_ident() {
            if let Ok(ty) = self.type_ref() {
                if self.at_ident() {
                    let name = self.bump().text;
                    if self.at_punct("=") || self.at_punct(";") {
                        let initializer = if self.eat_punct("=") {
                            Some(self.expr_tokens_until_semi()?)
                        } else {
                            None
                        };
                        self.expect_punct(";")?;
                        return Ok(JtlStmt::LocalVarDecl {
                            ty,
                            name,
                            initializer,
                        });
                    }
                }
            }
            self.pos = saved;
        }
        let expr = self.expr_tokens_until_semi()?;
        self.expect_punct(";")?;
        Ok(JtlStmt::ExprStmt(expr))
    }

    /// Collects expression tokens up to (not consuming) the `;` that ends
    /// the statement, tracking nesting so `;` inside parentheses, brackets,
    /// or braces does not end it.
    fn expr_tokens_until_semi(&mut self) -> Result<ExprTokens, JtlError> {
        let mut tokens: Vec<Token> = Vec::new();
        let mut depth = 0usize;
        loop {
            let Some(t) = self.peek() else {
                return Err(self.error("expected `;` after the expression"));
            };
            if t.kind == TokenKind::Punct {
                match t.text.as_str() {
                    "(" | "[" | "{" => depth += 1,
                    ")" | "]" | "}" => {
                        if depth == 0 {
                            if t.text == "}" {
                                return Err(self.error("expected `;` after the expression"));
                            }
                            // Tolerated at token level: the fragment check
                            // or a later `expect_punct` reports it.
                        } else {
                            depth -= 1;
                        }
                    }
                    ";" if depth == 0 => break,
                    _ => {}
                }
            }
            tokens.push(self.bump());
        }
        if tokens.is_empty() {
            return Err(self.error("expected an expression"));
        }
        Ok(collect_expr(&tokens))
    }
}

/// Builds [`ExprTokens`] from raw tokens: the identifiers used are every
/// `Ident` token not preceded by `.` (keywords are not `Ident` tokens).
fn collect_expr(tokens: &[Token]) -> ExprTokens {
    let mut used_idents = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        if t.kind != TokenKind::Ident {
            continue;
        }
        let after_dot = i > 0 && tokens[i - 1].kind == TokenKind::Punct && tokens[i - 1].text == ".";
        if !after_dot {
            used_idents.push(t.text.clone());
        }
    }
    ExprTokens {
        tokens: tokens.iter().map(|t| t.text.clone()).collect(),
        used_idents,
    }
}
