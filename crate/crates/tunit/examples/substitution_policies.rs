//! The sub-template substitution policies: how much of the template
//! hierarchy a test executes is a per-test choice.
//!
//! ```bash
//! cargo run -p tunit --example substitution_policies
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use tunit::cd::{collect_nodes, parse_model, NodeKind, SymbolTable};
use tunit::mock::{assemble_context, PerCallRule, Replacement, SubstitutionPolicy};
use tunit::tgl::{render, TemplateRegistry};

fn main() {
    let mut registry = TemplateRegistry::new();
    registry
        .insert_source("Parent", "A${tc.include(\"Body\", ast)}B")
        .unwrap();
    registry
        .insert_source(
            "Parent2",
            "A${tc.include(\"Body\", ast)}${tc.include(\"Other\", ast)}B",
        )
        .unwrap();
    registry.insert_source("Body", "<${ast.name}>").unwrap();
    registry.insert_source("Other", "(other)").unwrap();
    registry.insert_source("Sub", "S").unwrap();
    let registry = Arc::new(registry);

    let model = parse_model("classdiagram D { class A { int a; } }").unwrap();
    let node = || collect_nodes(&model, NodeKind::Attribute).remove(0).0;

    let run = |template: &str, policy: &SubstitutionPolicy| -> String {
        let ctx = assemble_context(
            node(),
            BTreeMap::new(),
            &[],
            Arc::new(SymbolTable::new()),
            Arc::clone(&registry),
            policy,
        )
        .expect("policy validates");
        render(registry.get(template).unwrap(), &ctx).expect("renders")
    };

    println!("parent template: A${{tc.include(\"Body\", ast)}}B\n");
    let policies: [(&str, SubstitutionPolicy); 4] = [
        ("passthrough", SubstitutionPolicy::Passthrough),
        ("replace_with_empty", SubstitutionPolicy::ReplaceWithEmpty),
        (
            "replace_all_with_template(Sub)",
            SubstitutionPolicy::ReplaceAllWithTemplate("Sub".to_string()),
        ),
        (
            "replace_with_string(\"/*body*/\")",
            SubstitutionPolicy::ReplaceWithString("/*body*/".to_string()),
        ),
    ];
    for (label, policy) in &policies {
        println!("{label:<34} => {:?}", run("Parent", policy));
    }

    // Per-call: one include mocked by name, everything else follows the
    // fallback.
    let per_call = SubstitutionPolicy::PerCall {
        rules: vec![PerCallRule {
            template: "Body".to_string(),
            node: None,
            replacement: Replacement::Text("X".to_string()),
        }],
        fallback: Box::new(SubstitutionPolicy::Passthrough),
    };
    println!("\nparent2 with two includes, per-call rule on `Body` only:");
    println!("per_call(Body -> \"X\", fallback passthrough) => {:?}", run("Parent2", &per_call));
}
