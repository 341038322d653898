//! Abstract syntax of the class-diagram DSL.

use std::fmt;

/// A parsed class-diagram model. Top-level type names are unique; each list
/// keeps its members in document order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdModel {
    pub name: String,
    pub classes: Vec<CdClass>,
    pub interfaces: Vec<CdInterface>,
    pub enums: Vec<CdEnum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdClass {
    pub name: String,
    pub superclass: Option<String>,
    pub attributes: Vec<CdAttribute>,
    pub methods: Vec<CdMethod>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdInterface {
    pub name: String,
    pub methods: Vec<CdMethod>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdEnum {
    pub name: String,
    pub constants: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdAttribute {
    pub visibility: Option<Visibility>,
    pub ty: CdType,
    pub name: String,
    /// Initializer literal, verbatim as written (`5`, `"text"`, `true`, ...).
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdMethod {
    pub visibility: Option<Visibility>,
    pub return_type: CdType,
    pub name: String,
    pub parameters: Vec<CdParameter>,
    pub exceptions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdParameter {
    pub ty: CdType,
    pub name: String,
}

/// A type reference: dotted base name plus zero or more `[]` suffixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdType {
    pub base_name: String,
    pub array_dims: usize,
}

impl CdType {
    pub fn new(base_name: impl Into<String>, array_dims: usize) -> Self {
        Self {
            base_name: base_name.into(),
            array_dims,
        }
    }

    /// Printed form, e.g. `java.util.List` or `int[][]`.
    pub fn printed(&self) -> String {
        let mut s = self.base_name.clone();
        for _ in 0..self.array_dims {
            s.push_str("[]");
        }
        s
    }
}

impl fmt::Display for CdType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.printed())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visibility {
    Public,
    Private,
    Protected,
}

impl Visibility {
    pub fn keyword(self) -> &'static str {
        match self {
            Visibility::Public => "public",
            Visibility::Private => "private",
            Visibility::Protected => "protected",
        }
    }
}

impl CdMethod {
    /// Signature text used in qualified references: `name(T1,T2)`, printed
    /// parameter types, no spaces.
    pub fn signature(&self) -> String {
        let params: Vec<String> = self.parameters.iter().map(|p| p.ty.printed()).collect();
        format!("{}({})", self.name, params.join(","))
    }
}
