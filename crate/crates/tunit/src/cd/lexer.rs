//! Tokenizer for the class-diagram DSL.

use super::parser::CdError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum TokKind {
    Ident,
    Number,
    Str,
    Punct,
    Eof,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub kind: TokKind,
    pub text: String,
    pub line: u32,
    pub col: u32,
}

pub(crate) fn tokenize(source: &str) -> Result<Vec<Token>, CdError> {
    let mut tokens = Vec::new();
    let mut chars = source.chars().peekable();
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! bump {
        () => {{
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            bump!();
            continue;
        }
        let (tok_line, tok_col) = (line, col);
        if c == '/' {
            // Line and block comments are skipped like whitespace.
            let mut lookahead = chars.clone();
            lookahead.next();
            match lookahead.peek() {
                Some('/') => {
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        bump!();
                    }
                    continue;
                }
                Some('*') => {
                    bump!();
                    bump!();
                    let mut closed = false;
                    while chars.peek().is_some() {
                        if bump!() == '*' {
                            if let Some('/') = chars.peek() {
                                bump!();
                                closed = true;
                                break;
                            }
                        }
                    }
                    if !closed {
                        return Err(CdError::syntax(tok_line, tok_col, "`*/`", "end of input"));
                    }
                    continue;
                }
                _ => {
                    return Err(CdError::syntax(tok_line, tok_col, "a token", "`/`"));
                }
            }
        }
        if c.is_alphabetic() || c == '_' {
            let mut text = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    text.push(bump!());
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokKind::Ident,
                text,
                line: tok_line,
                col: tok_col,
            });
            continue;
        }
        if c.is_ascii_digit() || c == '-' {
            let mut text = String::new();
            if c == '-' {
                text.push(bump!());
                if !matches!(chars.peek(), Some(d) if d.is_ascii_digit()) {
                    return Err(CdError::syntax(tok_line, tok_col, "a digit", "`-`"));
                }
            }
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    text.push(bump!());
                } else {
                    break;
                }
            }
            if let Some('.') = chars.peek() {
                let mut lookahead = chars.clone();
                lookahead.next();
                if matches!(lookahead.peek(), Some(d) if d.is_ascii_digit()) {
                    text.push(bump!());
                    while let Some(&c) = chars.peek() {
                        if c.is_ascii_digit() {
                            text.push(bump!());
                        } else {
                            break;
                        }
                    }
                }
            }
            tokens.push(Token {
                kind: TokKind::Number,
                text,
                line: tok_line,
                col: tok_col,
            });
            continue;
        }
        if c == '"' {
            let mut text = String::new();
            text.push(bump!());
            let mut closed = false;
            while let Some(&c) = chars.peek() {
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
                if c == '"' {
                    closed = true;
                    break;
                }
            }
            if !closed {
                return Err(CdError::syntax(tok_line, tok_col, "closing `\"`", "end of line"));
            }
            tokens.push(Token {
                kind: TokKind::Str,
                text,
                line: tok_line,
                col: tok_col,
            });
            continue;
        }
        if "{}();,=.[]".contains(c) {
            bump!();
            tokens.push(Token {
                kind: TokKind::Punct,
                text: c.to_string(),
                line: tok_line,
                col: tok_col,
            });
            continue;
        }
        return Err(CdError::syntax(
            tok_line,
            tok_col,
            "a token",
            &format!("`{c}`"),
        ));
    }
    tokens.push(Token {
        kind: TokKind::Eof,
        text: String::new(),
        line,
        col,
    });
    Ok(tokens)
}
