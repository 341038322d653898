//! Run a single attribute template over every attribute of a model — the
//! smallest useful template test: no variables, no helpers, no includes.
//!
//! ```bash
//! cargo run -p tunit --example render_attribute
//! ```

use std::sync::Arc;

use tunit::cd::{collect_nodes, parse_model, NodeKind};
use tunit::tgl::{RenderContext, TemplateRegistry};

fn main() {
    let mut registry = TemplateRegistry::new();
    registry
        .insert_source(
            "JavaAttribute",
            "public ${ast.printType()} ${ast.name}<#if ast.value??> = ${ast.printValue()}</#if>;",
        )
        .expect("template parses");
    let registry = Arc::new(registry);

    let model = parse_model(
        "classdiagram Demo { class A { int attributeName = 5; String label; boolean[] flags = null; } }",
    )
    .expect("model parses");

    for (node, reference) in collect_nodes(&model, NodeKind::Attribute) {
        let ctx = RenderContext::bare(node, Arc::clone(&registry));
        let template = ctx.registry().get("JavaAttribute").unwrap().clone();
        let rendered = tunit::tgl::render(&template, &ctx).expect("renders");
        println!("{reference:<16} => {rendered}");
    }
}
