//! Mock the symbol table by loading auxiliary models, then let the
//! template under test resolve cross-model references through `st`.
//!
//! ```bash
//! cargo run -p tunit --example symbol_table_mock
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use tunit::cd::{collect_nodes, parse_model, NodeKind};
use tunit::mock::{assemble_context, mock_symbol_table, SubstitutionPolicy};
use tunit::tgl::{render, TemplateRegistry};

fn main() {
    // Auxiliary models define the symbols the input model may reference.
    let dir = tempfile::tempdir().expect("temp dir");
    fs::write(
        dir.path().join("numbers.cd"),
        "classdiagram Numbers { class Amount { int value; } }",
    )
    .unwrap();
    fs::write(
        dir.path().join("people.cd"),
        "classdiagram People { class Person { String name; } interface Greeter { } }",
    )
    .unwrap();

    // A directory path expands to all its .cd files.
    let table = mock_symbol_table(&[dir.path().to_path_buf()]).expect("models load");
    println!("symbols loaded: {}", table.names().collect::<Vec<_>>().join(", "));

    let mut registry = TemplateRegistry::new();
    registry
        .insert_source(
            "Reference",
            "${ast.name} refers to ${st.resolve(ast.printType()).name} (${st.resolve(ast.printType()).kind})",
        )
        .unwrap();
    let registry = Arc::new(registry);

    let model = parse_model("classdiagram Main { class Order { Person buyer; Amount total; } }")
        .unwrap();
    for (node, _) in collect_nodes(&model, NodeKind::Attribute) {
        let ctx = assemble_context(
            node,
            BTreeMap::new(),
            &[],
            Arc::new(table.clone()),
            Arc::clone(&registry),
            &SubstitutionPolicy::Passthrough,
        )
        .unwrap();
        println!("{}", render(registry.get("Reference").unwrap(), &ctx).unwrap());
    }
}
