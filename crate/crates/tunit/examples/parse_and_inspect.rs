//! Parse a class-diagram model, walk its elements, and look names up in a
//! symbol table.
//!
//! ```bash
//! cargo run -p tunit --example parse_and_inspect
//! ```

use tunit::cd::{build_symbol_table, collect_nodes, parse_model, NodeKind};

fn main() {
    let source = r#"
classdiagram Shop {
  class Order extends Document {
    private int id = 1;
    String note;
    void addItem(String sku, int count) throws OutOfStock;
  }
  interface Printable {
    String print();
  }
  enum Status { OPEN, SHIPPED }
}
"#;
    let model = parse_model(source).expect("model parses");
    println!("model `{}`:", model.name);

    for kind in NodeKind::ALL {
        let nodes = collect_nodes(&model, kind);
        if nodes.is_empty() {
            continue;
        }
        println!("  {kind}:");
        for (index, (_, reference)) in nodes.iter().enumerate() {
            println!("    [{index}] {reference}");
        }
    }

    let table = build_symbol_table(&[model]).expect("no duplicate symbols");
    for name in ["Order", "Status", "Missing"] {
        match table.resolve(name) {
            Some(entry) => println!("resolve {name:>8} -> {} with {} member(s)", entry.kind, entry.members.len()),
            None => println!("resolve {name:>8} -> not found"),
        }
    }
}
