//! Recursive-descent parser for the class-diagram DSL.

use std::collections::HashSet;

use thiserror::Error;

use super::ast::*;
use super::lexer::{tokenize, TokKind, Token};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CdError {
    #[error("syntax error at {line}:{col}: expected {expected}, found {found}")]
    Syntax {
        line: u32,
        col: u32,
        expected: String,
        found: String,
    },
    #[error("duplicate name `{name}` at {line}:{col}")]
    DuplicateName { name: String, line: u32, col: u32 },
}

impl CdError {
    pub(crate) fn syntax(line: u32, col: u32, expected: &str, found: &str) -> Self {
        CdError::Syntax {
            line,
            col,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

/// Parses model source text into a [`CdModel`], preserving document order.
///
/// Errors carry the 1-based line and column of the first offending token.
pub fn parse_model(source: &str) -> Result<CdModel, CdError> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens, pos: 0 };
    let model = p.model()?;
    p.expect_eof()?;
    Ok(model)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn found_text(tok: &Token) -> String {
        match tok.kind {
            TokKind::Eof => "end of input".to_string(),
            _ => format!("`{}`", tok.text),
        }
    }

    fn error(&self, expected: &str) -> CdError {
        let tok = self.peek();
        CdError::syntax(tok.line, tok.col, expected, &Self::found_text(tok))
    }

    fn expect_punct(&mut self, punct: &str) -> Result<(), CdError> {
        if self.peek().kind == TokKind::Punct && self.peek().text == punct {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{punct}`")))
        }
    }

    fn at_punct(&self, punct: &str) -> bool {
        self.peek().kind == TokKind::Punct && self.peek().text == punct
    }

    fn at_keyword(&self, kw: &str) -> bool {
        self.peek().kind == TokKind::Ident && self.peek().text == kw
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), CdError> {
        if self.at_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<Token, CdError> {
        if self.peek().kind == TokKind::Ident {
            Ok(self.bump())
        } else {
            Err(self.error(what))
        }
    }

    fn expect_eof(&self) -> Result<(), CdError> {
        if self.peek().kind == TokKind::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn model(&mut self) -> Result<CdModel, CdError> {
        self.expect_keyword("classdiagram")?;
        let name = self.expect_ident("a model name")?.text;
        self.expect_punct("{")?;
        let mut model = CdModel {
            name,
            classes: Vec::new(),
            interfaces: Vec::new(),
            enums: Vec::new(),
        };
        let mut top_level: HashSet<String> = HashSet::new();
        while !self.at_punct("}") {
            let tok = self.peek().clone();
            if self.at_keyword("class") {
                let class = self.class_decl()?;
                Self::check_unique(&mut top_level, &class.name, &tok)?;
                model.classes.push(class);
            } else if self.at_keyword("interface") {
                let iface = self.interface_decl()?;
                Self::check_unique(&mut top_level, &iface.name, &tok)?;
                model.interfaces.push(iface);
            } else if self.at_keyword("enum") {
                let en = self.enum_decl()?;
                Self::check_unique(&mut top_level, &en.name, &tok)?;
                model.enums.push(en);
            } else {
                return Err(self.error("`class`, `interface`, `enum`, or `}`"));
            }
        }
        self.expect_punct("}")?;
        Ok(model)
    }

    fn check_unique(seen: &mut HashSet<String>, name: &str, at: &Token) -> Result<(), CdError> {
        if !seen.insert(name.to_string()) {
            return Err(CdError::DuplicateName {
                name: name.to_string(),
                line: at.line,
                col: at.col,
            });
        }
        Ok(())
    }

    fn class_decl(&mut self) -> Result<CdClass, CdError> {
        self.expect_keyword("class")?;
        let name = self.expect_ident("a class name")?.text;
        let superclass = if self.at_keyword("extends") {
            self.bump();
            Some(self.expect_ident("a superclass name")?.text)
        } else {
            None
        };
        self.expect_punct("{")?;
        let mut class = CdClass {
            name,
            superclass,
            attributes: Vec::new(),
            methods: Vec::new(),
        };
        let mut attr_names: HashSet<String> = HashSet::new();
        let mut method_sigs: HashSet<String> = HashSet::new();
        while !self.at_punct("}") {
            self.member(&class.name.clone(), &mut class, &mut attr_names, &mut method_sigs)?;
        }
        self.expect_punct("}")?;
        Ok(class)
    }

    fn interface_decl(&mut self) -> Result<CdInterface, CdError> {
        self.expect_keyword("interface")?;
        let name = self.expect_ident("an interface name")?.text;
        self.expect_punct("{")?;
        let mut iface = CdInterface {
            name,
            methods: Vec::new(),
        };
        let mut sigs: HashSet<String> = HashSet::new();
        while !self.at_punct("}") {
            let tok = self.peek().clone();
            let visibility = self.visibility();
            let return_type = self.type_ref()?;
            let name_tok = self.expect_ident("a method name")?;
            if !self.at_punct("(") {
                return Err(self.error("`(`"));
            }
            let method = self.method_tail(visibility, return_type, name_tok)?;
            if !sigs.insert(method.signature()) {
                return Err(CdError::DuplicateName {
                    name: format!("{}.{}", iface.name, method.signature()),
                    line: tok.line,
                    col: tok.col,
                });
            }
            iface.methods.push(method);
        }
        self.expect_punct("}")?;
        Ok(iface)
    }

    fn enum_decl(&mut self) -> Result<CdEnum, CdError> {
        self.expect_keyword("enum")?;
        let name = self.expect_ident("an enum name")?.text;
        self.expect_punct("{")?;
        let mut constants = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        if !self.at_punct("}") {
            loop {
                let tok = self.peek().clone();
                let constant = self.expect_ident("an enum constant")?.text;
                if !seen.insert(constant.clone()) {
                    return Err(CdError::DuplicateName {
                        name: format!("{name}.{constant}"),
                        line: tok.line,
                        col: tok.col,
                    });
                }
                constants.push(constant);
                if self.at_punct(",") {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect_punct("}")?;
        Ok(CdEnum { name, constants })
    }

    fn member(
        &mut self,
        class_name: &str,
        class: &mut CdClass,
        attr_names: &mut HashSet<String>,
        method_sigs: &mut HashSet<String>,
    ) -> Result<(), CdError> {
        let tok = self.peek().clone();
        let visibility = self.visibility();
        let ty = self.type_ref()?;
        let name_tok = self.expect_ident("a member name")?;
        if self.at_punct("(") {
            let method = self.method_tail(visibility, ty, name_tok)?;
            if !method_sigs.insert(method.signature()) {
                return Err(CdError::DuplicateName {
                    name: format!("{class_name}.{}", method.signature()),
                    line: tok.line,
                    col: tok.col,
                });
            }
            class.methods.push(method);
            return Ok(());
        }
        // Attribute: optional initializer, then `;`.
        let value = if self.at_punct("=") {
            self.bump();
            Some(self.literal()?)
        } else {
            None
        };
        self.expect_punct(";")?;
        if !attr_names.insert(name_tok.text.clone()) {
            return Err(CdError::DuplicateName {
                name: format!("{class_name}.{}", name_tok.text),
                line: tok.line,
                col: tok.col,
            });
        }
        class.attributes.push(CdAttribute {
            visibility,
            ty,
            name: name_tok.text,
            value,
        });
        Ok(())
    }

    fn method_tail(
        &mut self,
        visibility: Option<Visibility>,
        return_type: CdType,
        name_tok: Token,
    ) -> Result<CdMethod, CdError> {
        self.expect_punct("(")?;
        let mut parameters = Vec::new();
        let mut param_names: HashSet<String> = HashSet::new();
        if !self.at_punct(")") {
            loop {
                let ty = self.type_ref()?;
                let p_tok = self.expect_ident("a parameter name")?;
                if !param_names.insert(p_tok.text.clone()) {
                    return Err(CdError::DuplicateName {
                        name: p_tok.text,
                        line: p_tok.line,
                        col: p_tok.col,
                    });
                }
                parameters.push(CdParameter {
                    ty,
                    name: p_tok.text,
                });
                if self.at_punct(",") {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        let mut exceptions = Vec::new();
        if self.at_keyword("throws") {
            self.bump();
            loop {
                exceptions.push(self.dotted_name()?);
                if self.at_punct(",") {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect_punct(";")?;
        Ok(CdMethod {
            visibility,
            return_type,
            name: name_tok.text,
            parameters,
            exceptions,
        })
    }

    fn visibility(&mut self) -> Option<Visibility> {
        let v = match self.peek().text.as_str() {
            "public" => Visibility::Public,
            "private" => Visibility::Private,
            "protected" => Visibility::Protected,
            _ => return None,
        };
        if self.peek().kind == TokKind::Ident {
            self.bump();
            Some(v)
        } else {
            None
        }
    }

    fn dotted_name(&mut self) -> Result<String, CdError> {
        let mut name = self.expect_ident("a name")?.text;
        while self.at_punct(".") {
            self.bump();
            name.push('.');
            name.push_str(&self.expect_ident("a name segment")?.text);
        }
        Ok(name)
    }

    fn type_ref(&mut self) -> Result<CdType, CdError> {
        let base_name = self.dotted_name()?;
        let mut array_dims = 0;
        while self.at_punct("[") {
            self.bump();
            self.expect_punct("]")?;
            array_dims += 1;
        }
        Ok(CdType {
            base_name,
            array_dims,
        })
    }

    fn literal(&mut self) -> Result<String, CdError> {
        let tok = self.peek().clone();
        match tok.kind {
            TokKind::Number | TokKind::Str => {
                self.bump();
                Ok(tok.text)
            }
            TokKind::Ident if matches!(tok.text.as_str(), "true" | "false" | "null") => {
                self.bump();
                Ok(tok.text)
            }
            _ => Err(self.error("a literal")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_attribute_with_initializer() {
        let model =
            parse_model("classdiagram D { class A { int attributeName = 5; } }").unwrap();
        assert_eq!(model.name, "D");
        assert_eq!(model.classes.len(), 1);
        let class = &model.classes[0];
        assert_eq!(class.name, "A");
        assert_eq!(class.attributes.len(), 1);
        let attr = &class.attributes[0];
        assert_eq!(attr.ty, CdType::new("int", 0));
        assert_eq!(attr.name, "attributeName");
        assert_eq!(attr.value.as_deref(), Some("5"));
    }

    #[test]
    fn parses_empty_model() {
        let model = parse_model("classdiagram D { }").unwrap();
        assert_eq!(model.name, "D");
        assert!(model.classes.is_empty());
        assert!(model.interfaces.is_empty());
        assert!(model.enums.is_empty());
    }

    #[test]
    fn parses_method_declaration() {
        let model =
            parse_model("classdiagram D { class A { void methodName(String param); } }").unwrap();
        let class = &model.classes[0];
        assert_eq!(class.methods.len(), 1);
        let method = &class.methods[0];
        assert_eq!(method.return_type, CdType::new("void", 0));
        assert_eq!(method.name, "methodName");
        assert_eq!(method.parameters.len(), 1);
        assert_eq!(method.parameters[0].ty, CdType::new("String", 0));
        assert_eq!(method.parameters[0].name, "param");
        assert!(method.exceptions.is_empty());
    }

    #[test]
    fn parses_throws_and_visibility() {
        let model = parse_model(
            "classdiagram D { class A { protected int[] run(int a, String b) throws java.io.IOException, Oops; } }",
        )
        .unwrap();
        let method = &model.classes[0].methods[0];
        assert_eq!(method.visibility, Some(Visibility::Protected));
        assert_eq!(method.return_type, CdType::new("int", 1));
        assert_eq!(
            method.exceptions,
            vec!["java.io.IOException".to_string(), "Oops".to_string()]
        );
    }

    #[test]
    fn parses_interface_and_enum() {
        let model = parse_model(
            "classdiagram D { interface I { void run(); } enum Color { RED, GREEN } }",
        )
        .unwrap();
        assert_eq!(model.interfaces[0].name, "I");
        assert_eq!(model.interfaces[0].methods.len(), 1);
        assert_eq!(model.enums[0].constants, vec!["RED", "GREEN"]);
    }

    #[test]
    fn syntax_error_carries_location() {
        let err = parse_model("classdiagram D {\n  class A {\n    int;\n  }\n}").unwrap_err();
        match err {
            CdError::Syntax { line, col, .. } => {
                assert_eq!(line, 3);
                assert_eq!(col, 8);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_attribute_rejected() {
        let err =
            parse_model("classdiagram D { class A { int x; int x; } }").unwrap_err();
        assert!(matches!(err, CdError::DuplicateName { ref name, .. } if name == "A.x"));
    }

    #[test]
    fn duplicate_method_signature_rejected() {
        let err = parse_model(
            "classdiagram D { class A { void m(int a); void m(int b); } }",
        )
        .unwrap_err();
        assert!(matches!(err, CdError::DuplicateName { ref name, .. } if name == "A.m(int)"));
    }

    #[test]
    fn overload_with_different_types_allowed() {
        let model = parse_model(
            "classdiagram D { class A { void m(int a); void m(String b); } }",
        )
        .unwrap();
        assert_eq!(model.classes[0].methods.len(), 2);
    }

    #[test]
    fn duplicate_top_level_names_rejected() {
        let err = parse_model("classdiagram D { class A { } enum A { } }").unwrap_err();
        assert!(matches!(err, CdError::DuplicateName { ref name, .. } if name == "A"));
    }

    #[test]
    fn comments_and_crlf_are_skipped() {
        let model = parse_model(
            "classdiagram D {\r\n // a line comment\r\n class A { /* block */ int x; }\r\n}",
        )
        .unwrap();
        assert_eq!(model.classes[0].attributes[0].name, "x");
    }
}
