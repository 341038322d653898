//! Template source parser.

use super::{Expr, Part, Template, TemplateParseError, RESERVED_NAMES};

/// Parses template source into a [`Template`] named `name`.
///
/// Literal text between directives is preserved byte-exact; nothing is
/// trimmed. Directive and expression errors carry 1-based line/column.
pub fn parse_template(name: &str, source: &str) -> Result<Template, TemplateParseError> {
    let mut p = TemplateParser {
        template: name,
        source,
        bytes: source.as_bytes(),
        pos: 0,
    };
    let parts = p.parts(&mut Vec::new())?;
    Ok(Template {
        name: name.to_string(),
        parts,
    })
}

/// What closed a nested block scan.
enum BlockEnd {
    Eof,
    Else { line: u32, col: u32 },
    EndIf,
    EndList,
}

struct TemplateParser<'s> {
    template: &'s str,
    source: &'s str,
    bytes: &'s [u8],
    pos: usize,
}

impl<'s> TemplateParser<'s> {
    fn line_col(&self, offset: usize) -> (u32, u32) {
        let mut line = 1u32;
        let mut col = 1u32;
        for c in self.source[..offset].chars() {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn unbalanced(&self, offset: usize, message: impl Into<String>) -> TemplateParseError {
        let (line, col) = self.line_col(offset);
        TemplateParseError::UnbalancedDirective {
            template: self.template.to_string(),
            line,
            col,
            message: message.into(),
        }
    }

    fn malformed(&self, offset: usize, message: impl Into<String>) -> TemplateParseError {
        let (line, col) = self.line_col(offset);
        TemplateParseError::MalformedExpr {
            template: self.template.to_string(),
            line,
            col,
            message: message.into(),
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        self.source[self.pos..].starts_with(s)
    }

    /// Scans parts until EOF or a block-closing tag; the `stack` only tracks
    /// open-construct offsets for error messages.
    fn parts(&mut self, stack: &mut Vec<(usize, &'static str)>) -> Result<Vec<Part>, TemplateParseError> {
        let (parts, end) = self.parts_until(stack)?;
        match end {
            BlockEnd::Eof => Ok(parts),
            BlockEnd::Else { line, col } => Err(TemplateParseError::UnbalancedDirective {
                template: self.template.to_string(),
                line,
                col,
                message: "`<#else>` outside `<#if>`".to_string(),
            }),
            BlockEnd::EndIf => Err(self.unbalanced(self.pos, "`</#if>` without matching `<#if>`")),
            BlockEnd::EndList => {
                Err(self.unbalanced(self.pos, "`</#list>` without matching `<#list>`"))
            }
        }
    }

    fn parts_until(
        &mut self,
        stack: &mut Vec<(usize, &'static str)>,
    ) -> Result<(Vec<Part>, BlockEnd), TemplateParseError> {
        let mut parts = Vec::new();
        let mut literal = String::new();
        macro_rules! flush {
            () => {
                if !literal.is_empty() {
                    parts.push(Part::Literal(std::mem::take(&mut literal)));
                }
            };
        }
        while self.pos < self.bytes.len() {
            if self.starts_with("${") {
                flush!();
                parts.push(self.interp()?);
                continue;
            }
            if self.starts_with("<#if ") || self.starts_with("<#if\t") {
                flush!();
                parts.push(self.if_block(stack)?);
                continue;
            }
            if self.starts_with("<#list ") || self.starts_with("<#list\t") {
                flush!();
                parts.push(self.list_block(stack)?);
                continue;
            }
            if self.starts_with("<#else>") {
                flush!();
                let (line, col) = self.line_col(self.pos);
                self.pos += "<#else>".len();
                return Ok((parts, BlockEnd::Else { line, col }));
            }
            if self.starts_with("</#if>") {
                flush!();
                self.pos += "</#if>".len();
                return Ok((parts, BlockEnd::EndIf));
            }
            if self.starts_with("</#list>") {
                flush!();
                self.pos += "</#list>".len();
                return Ok((parts, BlockEnd::EndList));
            }
            if self.starts_with("<#") || self.starts_with("</#") {
                return Err(self.malformed(self.pos, "unsupported directive"));
            }
            let c = self.source[self.pos..].chars().next().unwrap();
            literal.push(c);
            self.pos += c.len_utf8();
        }
        if !literal.is_empty() {
            parts.push(Part::Literal(literal));
        }
        Ok((parts, BlockEnd::Eof))
    }

    /// Parses `${...}`, turning a top-level `tc.include("Name", expr)` call
    /// into an [`Part::Include`].
    fn interp(&mut self) -> Result<Part, TemplateParseError> {
        let open = self.pos;
        let (line, _) = self.line_col(open);
        self.pos += 2;
        let expr_start = self.pos;
        let expr_end = self
            .scan_expr_text(expr_start, b'}')
            .ok_or_else(|| self.unbalanced(open, "`${` without closing `}`"))?;
        let expr_text = &self.source[expr_start..expr_end];
        let expr = self.parse_expr_text(expr_text, expr_start)?;
        self.pos = expr_end + 1;
        if let Expr::Call { base, method, args } = &expr {
            if matches!(base.as_ref(), Expr::Var(n) if n == "tc") {
                if method != "include" {
                    return Err(self.malformed(
                        expr_start,
                        format!("`tc.{method}` is not supported; only `tc.include(name, node)`"),
                    ));
                }
                if args.len() != 2 {
                    return Err(self.malformed(
                        expr_start,
                        "`tc.include` takes a template name literal and a node argument",
                    ));
                }
                let Expr::Str(template) = &args[0] else {
                    return Err(self.malformed(
                        expr_start,
                        "`tc.include` requires a string literal template name",
                    ));
                };
                return Ok(Part::Include {
                    template: template.clone(),
                    arg: args[1].clone(),
                    line,
                });
            }
        }
        Ok(Part::Interp { expr, line })
    }

    fn if_block(&mut self, stack: &mut Vec<(usize, &'static str)>) -> Result<Part, TemplateParseError> {
        let open = self.pos;
        let (line, _) = self.line_col(open);
        self.pos += "<#if".len();
        let expr_start = self.pos;
        let expr_end = self
            .scan_expr_text(expr_start, b'>')
            .ok_or_else(|| self.unbalanced(open, "`<#if` without closing `>`"))?;
        let cond = self.parse_expr_text(&self.source[expr_start..expr_end], expr_start)?;
        self.pos = expr_end + 1;
        stack.push((open, "<#if>"));
        let (then_parts, end) = self.parts_until(stack)?;
        let (else_parts, end) = match end {
            BlockEnd::Else { .. } => {
                let (else_parts, end) = self.parts_until(stack)?;
                (Some(else_parts), end)
            }
            end => (None, end),
        };
        stack.pop();
        match end {
            BlockEnd::EndIf => Ok(Part::If {
                cond,
                then_parts,
                else_parts,
                line,
            }),
            BlockEnd::Eof => Err(self.unbalanced(open, "`<#if>` is never closed by `</#if>`")),
            BlockEnd::Else { line, col } => Err(TemplateParseError::UnbalancedDirective {
                template: self.template.to_string(),
                line,
                col,
                message: "second `<#else>` in one `<#if>`".to_string(),
            }),
            BlockEnd::EndList => {
                Err(self.unbalanced(open, "`<#if>` closed by `</#list>`"))
            }
        }
    }

    fn list_block(&mut self, stack: &mut Vec<(usize, &'static str)>) -> Result<Part, TemplateParseError> {
        let open = self.pos;
        let (line, _) = self.line_col(open);
        self.pos += "<#list".len();
        let expr_start = self.pos;
        let expr_end = self
            .scan_expr_text(expr_start, b'>')
            .ok_or_else(|| self.unbalanced(open, "`<#list` without closing `>`"))?;
        let header = &self.source[expr_start..expr_end];
        let Some(as_pos) = find_as_keyword(header) else {
            return Err(self.malformed(expr_start, "`<#list>` needs the form `<#list expr as name>`"));
        };
        let items = self.parse_expr_text(&header[..as_pos], expr_start)?;
        let var = header[as_pos + 4..].trim();
        if var.is_empty() || !is_ident(var) {
            return Err(self.malformed(expr_start, "`<#list>` loop variable must be an identifier"));
        }
        if RESERVED_NAMES.contains(&var) {
            return Err(self.malformed(
                expr_start,
                format!("`{var}` is a reserved name and cannot be a loop variable"),
            ));
        }
        self.pos = expr_end + 1;
        stack.push((open, "<#list>"));
        let (body, end) = self.parts_until(stack)?;
        stack.pop();
        match end {
            BlockEnd::EndList => Ok(Part::List {
                items,
                var: var.to_string(),
                body,
                line,
            }),
            BlockEnd::Eof => Err(self.unbalanced(open, "`<#list>` is never closed by `</#list>`")),
            BlockEnd::Else { line, col } => Err(TemplateParseError::UnbalancedDirective {
                template: self.template.to_string(),
                line,
                col,
                message: "`<#else>` inside `<#list>`".to_string(),
            }),
            BlockEnd::EndIf => Err(self.unbalanced(open, "`<#list>` closed by `</#if>`")),
        }
    }

    /// Finds the byte offset of `close` at top level, skipping over string
    /// literals. Returns `None` at EOF.
    fn scan_expr_text(&self, from: usize, close: u8) -> Option<usize> {
        let mut i = from;
        let mut in_string = false;
        while i < self.bytes.len() {
            let b = self.bytes[i];
            if in_string {
                if b == b'\\' {
                    i += 2;
                    continue;
                }
                if b == b'"' {
                    in_string = false;
                }
            } else if b == b'"' {
                in_string = true;
            } else if b == close {
                return Some(i);
            }
            i += 1;
        }
        None
    }

    fn parse_expr_text(&self, text: &str, base_offset: usize) -> Result<Expr, TemplateParseError> {
        let tokens = lex_expr(text).map_err(|(off, msg)| self.malformed(base_offset + off, msg))?;
        let mut ep = ExprParser { tokens, pos: 0 };
        let expr = ep
            .expr()
            .map_err(|(off, msg)| self.malformed(base_offset + off, msg))?;
        if ep.pos < ep.tokens.len() {
            let (off, text) = (ep.tokens[ep.pos].offset, ep.tokens[ep.pos].text.clone());
            return Err(self.malformed(base_offset + off, format!("unexpected `{text}`")));
        }
        Ok(expr)
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Locates ` as ` in a list header at top level (outside strings).
fn find_as_keyword(header: &str) -> Option<usize> {
    let bytes = header.as_bytes();
    let mut in_string = false;
    let mut i = 0;
    while i + 4 <= bytes.len() {
        match bytes[i] {
            b'\\' if in_string => {
                i += 2;
                continue;
            }
            b'"' => in_string = !in_string,
            _ => {}
        }
        if !in_string && header[i..].starts_with(" as ") {
            return Some(i);
        }
        i += 1;
    }
    None
}

#[derive(Clone, Debug)]
struct ExprTok {
    text: String,
    offset: usize,
    is_string: bool,
}

type ExprError = (usize, String);

fn lex_expr(text: &str) -> Result<Vec<ExprTok>, ExprError> {
    let mut tokens = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c == '"' {
            let start = i;
            i += 1;
            let mut value = String::new();
            let mut closed = false;
            while i < bytes.len() {
                let c = text[i..].chars().next().unwrap();
                i += c.len_utf8();
                if c == '\\' {
                    let Some(esc) = text[i..].chars().next() else { break };
                    i += esc.len_utf8();
                    match esc {
                        '"' => value.push('"'),
                        '\\' => value.push('\\'),
                        'n' => value.push('\n'),
                        't' => value.push('\t'),
                        other => return Err((i, format!("unknown escape `\\{other}`"))),
                    }
                    continue;
                }
                if c == '"' {
                    closed = true;
                    break;
                }
                value.push(c);
            }
            if !closed {
                return Err((start, "unterminated string literal".to_string()));
            }
            tokens.push(ExprTok {
                text: value,
                offset: start,
                is_string: true,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() {
                let c = text[i..].chars().next().unwrap();
                if c.is_alphanumeric() || c == '_' {
                    i += c.len_utf8();
                } else {
                    break;
                }
            }
            tokens.push(ExprTok {
                text: text[start..i].to_string(),
                offset: start,
                is_string: false,
            });
            continue;
        }
        let punct = ["??", "==", ".", "(", ")", ",", "!"]
            .into_iter()
            .find(|p| text[i..].starts_with(p));
        match punct {
            Some(p) => {
                tokens.push(ExprTok {
                    text: p.to_string(),
                    offset: i,
                    is_string: false,
                });
                i += p.len();
            }
            None => return Err((i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(tokens)
}

struct ExprParser {
    tokens: Vec<ExprTok>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<&ExprTok> {
        self.tokens.get(self.pos)
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(t) if !t.is_string && t.text == p)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn end_offset(&self) -> usize {
        self.tokens
            .last()
            .map(|t| t.offset + t.text.len())
            .unwrap_or(0)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let left = self.unary()?;
        if self.eat_punct("==") {
            let right = self.unary()?;
            return Ok(Expr::Eq(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat_punct("!") {
            let inner = self.unary()?;
            return Ok(Expr::Not(Box::new(inner)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ExprError> {
        let mut expr = self.primary()?;
        loop {
            if self.eat_punct(".") {
                let Some(tok) = self.peek().cloned() else {
                    return Err((self.end_offset(), "expected a member name after `.`".to_string()));
                };
                if tok.is_string || !is_ident(&tok.text) {
                    return Err((tok.offset, "expected a member name after `.`".to_string()));
                }
                self.pos += 1;
                if self.eat_punct("(") {
                    let mut args = Vec::new();
                    if !self.at_punct(")") {
                        loop {
                            args.push(self.expr()?);
                            if !self.eat_punct(",") {
                                break;
                            }
                        }
                    }
                    if !self.eat_punct(")") {
                        return Err((self.end_offset(), "expected `)`".to_string()));
                    }
                    expr = Expr::Call {
                        base: Box::new(expr),
                        method: tok.text,
                        args,
                    };
                } else {
                    expr = Expr::Path {
                        base: Box::new(expr),
                        member: tok.text,
                    };
                }
                continue;
            }
            if self.eat_punct("??") {
                expr = Expr::Exists(Box::new(expr));
                continue;
            }
            break;
        }
        Ok(expr)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let Some(tok) = self.peek().cloned() else {
            return Err((self.end_offset(), "expected an expression".to_string()));
        };
        if tok.is_string {
            self.pos += 1;
            return Ok(Expr::Str(tok.text));
        }
        if tok.text == "(" {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat_punct(")") {
                return Err((self.end_offset(), "expected `)`".to_string()));
            }
            return Ok(inner);
        }
        if is_ident(&tok.text) {
            self.pos += 1;
            return Ok(Expr::Var(tok.text));
        }
        Err((tok.offset, format!("unexpected `{}`", tok.text)))
    }
}
