//! Tokenizer for the Java-like target language.
//!
//! Comments are skipped like whitespace. String and character literals are
//! lexed as single tokens (quotes and escapes kept verbatim), so whitespace
//! inside them is never confused with formatting.

use super::parser::JtlError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Keyword,
    Number,
    Str,
    Char,
    Punct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: u32,
    pub col: u32,
}

pub(crate) const KEYWORDS: [&str; 17] = [
    "abstract", "class", "extends", "false", "final", "implements", "import", "new", "null",
    "package", "private", "protected", "public", "return", "static", "throws", "true",
];

/// Multi-character operators, longest first.
const OPERATORS: [&str; 21] = [
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "->", "<", ">",
    "!", "?", ":", "&", "|",
];

pub fn tokenize(source: &str) -> Result<Vec<Token>, JtlError> {
    let mut tokens = Vec::new();
    let mut chars = source.char_indices().peekable();
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! bump {
        () => {{
            let (_, c) = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        }};
    }

    while let Some(&(offset, c)) = chars.peek() {
        if c.is_whitespace() {
            bump!();
            continue;
        }
        let (tok_line, tok_col) = (line, col);
        if c == '/' {
            let rest = &source[offset..];
            if rest.starts_with("//") {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
                continue;
            }
            if rest.starts_with("/*") {
                bump!();
                bump!();
                let mut closed = false;
                while chars.peek().is_some() {
                    if bump!() == '*' {
                        if let Some(&(_, '/')) = chars.peek() {
                            bump!();
                            closed = true;
                            break;
                        }
                    }
                }
                if !closed {
                    return Err(JtlError::syntax(tok_line, tok_col, "unterminated block comment"));
                }
                continue;
            }
        }
        if c.is_alphabetic() || c == '_' || c == '$' {
            let mut text = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_alphanumeric() || c == '_' || c == '$' {
                    text.push(bump!());
                } else {
                    break;
                }
            }
            let kind = if KEYWORDS.contains(&text.as_str()) {
                TokenKind::Keyword
            } else {
                TokenKind::Ident
            };
            tokens.push(Token {
                kind,
                text,
                line: tok_line,
                col: tok_col,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut text = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    text.push(bump!());
                } else {
                    break;
                }
            }
            if let Some(&(off, '.')) = chars.peek() {
                if source[off + 1..].starts_with(|c: char| c.is_ascii_digit()) {
                    text.push(bump!());
                    while let Some(&(_, c)) = chars.peek() {
                        if c.is_ascii_digit() {
                            text.push(bump!());
                        } else {
                            break;
                        }
                    }
                }
            }
            tokens.push(Token {
                kind: TokenKind::Number,
                text,
                line: tok_line,
                col: tok_col,
            });
            continue;
        }
        if c == '"' || c == '\'' {
            let quote = c;
            let mut text = String::new();
            text.push(bump!());
            let mut closed = false;
            while let Some(&(_, c)) = chars.peek() {
                if c == '\\' {
                    text.push(bump!());
                    if chars.peek().is_some() {
                        text.push(bump!());
                    }
                    continue;
                }
                if c == '\n' {
                    break;
                }
                text.push(bump!());
                if c == quote {
                    closed = true;
                    break;
                }
            }
            if !closed {
                return Err(JtlError::syntax(
                    tok_line,
                    tok_col,
                    if quote == '"' {
                        "unterminated string literal"
                    } else {
                        "unterminated character literal"
                    },
                ));
            }
            tokens.push(Token {
                kind: if quote == '"' {
                    TokenKind::Str
                } else {
                    TokenKind::Char
                },
                text,
                line: tok_line,
                col: tok_col,
            });
            continue;
        }
        if "{}()[];,.=+-*/%".contains(c) || OPERATORS.iter().any(|op| op.starts_with(c)) {
            let rest = &source[offset..];
            let op = OPERATORS.iter().find(|op| rest.starts_with(**op));
            let text = match op {
                Some(op) => {
                    for _ in 0..op.len() {
                        bump!();
                    }
                    (*op).to_string()
                }
                None => bump!().to_string(),
            };
            tokens.push(Token {
                kind: TokenKind::Punct,
                text,
                line: tok_line,
                col: tok_col,
            });
            continue;
        }
        return Err(JtlError::syntax(
            tok_line,
            tok_col,
            &format!("unexpected character `{c}`"),
        ));
    }
    Ok(tokens)
}
