//! The class-diagram input DSL.
//!
//! Models are UTF-8 text files (`.cd` by convention) of the form
//!
//! ```text
//! classdiagram Name {
//!   class A extends B {
//!     public int attributeName = 5;
//!     void methodName(String param) throws SomeError;
//!   }
//!   interface I { void run(); }
//!   enum Color { RED, GREEN }
//! }
//! ```
//!
//! [`parse_model`] turns source text into a [`CdModel`]; [`collect_nodes`]
//! walks the model for every element of one kind, pairing each node with the
//! [`QualifiedRef`] that addresses it (`A`, `A.attributeName`,
//! `A.methodName(String)`); [`build_symbol_table`] merges one or more models
//! into a name-to-entry lookup for cross-model references.

mod ast;
mod lexer;
mod node;
mod parser;
mod print;
mod symbols;

pub use ast::{
    CdAttribute, CdClass, CdEnum, CdInterface, CdMethod, CdModel, CdParameter, CdType, Visibility,
};
pub use node::{collect_nodes, find_by_ref, CdNode, NodeKind, QualifiedRef};
pub use parser::{parse_model, CdError};
pub use print::print_model;
pub use symbols::{
    build_symbol_table, MemberKind, MemberSummary, SymbolEntry, SymbolError, SymbolKind,
    SymbolTable,
};
