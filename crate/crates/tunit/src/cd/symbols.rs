//! Symbol tables over one or more models.
//!
//! Templates reference elements of other models through the symbol table
//! (`st.resolve(...)`), so tests can stand in context by loading auxiliary
//! models instead of hand-crafting entries.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::ast::CdModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Class,
    Interface,
    Enum,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolKind::Class => "class",
            SymbolKind::Interface => "interface",
            SymbolKind::Enum => "enum",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemberKind {
    Attribute,
    Method,
    Constant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberSummary {
    pub name: String,
    pub kind: MemberKind,
    /// Printed attribute type or method return type; empty for constants.
    pub printed_type: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolEntry {
    pub kind: SymbolKind,
    pub name: String,
    pub members: Vec<MemberSummary>,
    /// Name of the model that declared the symbol.
    pub declared_in: String,
}

/// Map from qualified type name to entry. Immutable once built; lookups are
/// total (an absent name is a `None`, never an error).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    entries: BTreeMap<String, SymbolEntry>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exact-match, case-sensitive lookup.
    pub fn resolve(&self, name: &str) -> Option<&SymbolEntry> {
        self.entries.get(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SymbolError {
    #[error("duplicate symbol `{name}` (declared in {first} and {second})")]
    Duplicate {
        name: String,
        first: String,
        second: String,
    },
}

/// Builds one table holding every top-level type of every model. A name
/// declared twice — in one model or across models — is an error naming both
/// declaring models.
pub fn build_symbol_table(models: &[CdModel]) -> Result<SymbolTable, SymbolError> {
    let mut table = SymbolTable::new();
    for model in models {
        for entry in model_entries(model) {
            if let Some(existing) = table.entries.get(&entry.name) {
                return Err(SymbolError::Duplicate {
                    name: entry.name,
                    first: existing.declared_in.clone(),
                    second: model.name.clone(),
                });
            }
            table.entries.insert(entry.name.clone(), entry);
        }
    }
    Ok(table)
}

fn model_entries(model: &CdModel) -> Vec<SymbolEntry> {
    let mut entries = Vec::new();
    for class in &model.classes {
        let mut members: Vec<MemberSummary> = class
            .attributes
            .iter()
            .map(|a| MemberSummary {
                name: a.name.clone(),
                kind: MemberKind::Attribute,
                printed_type: a.ty.printed(),
            })
            .collect();
        members.extend(class.methods.iter().map(|m| MemberSummary {
            name: m.name.clone(),
            kind: MemberKind::Method,
            printed_type: m.return_type.printed(),
        }));
        entries.push(SymbolEntry {
            kind: SymbolKind::Class,
            name: class.name.clone(),
            members,
            declared_in: model.name.clone(),
        });
    }
    for iface in &model.interfaces {
        entries.push(SymbolEntry {
            kind: SymbolKind::Interface,
            name: iface.name.clone(),
            members: iface
                .methods
                .iter()
                .map(|m| MemberSummary {
                    name: m.name.clone(),
                    kind: MemberKind::Method,
                    printed_type: m.return_type.printed(),
                })
                .collect(),
            declared_in: model.name.clone(),
        });
    }
    for en in &model.enums {
        entries.push(SymbolEntry {
            kind: SymbolKind::Enum,
            name: en.name.clone(),
            members: en
                .constants
                .iter()
                .map(|c| MemberSummary {
                    name: c.clone(),
                    kind: MemberKind::Constant,
                    printed_type: String::new(),
                })
                .collect(),
            declared_in: model.name.clone(),
        });
    }
    entries
}
