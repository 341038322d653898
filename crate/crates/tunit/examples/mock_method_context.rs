//! Testing a template that needs context: variables, a mocked helper, and
//! a pruned sub-template call, then signature assertions on the result.
//!
//! ```bash
//! cargo run -p tunit --example mock_method_context
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use tunit::assertions::{assert_method_signature, MethodSignatureCheck};
use tunit::cd::{collect_nodes, parse_model, NodeKind, SymbolTable};
use tunit::jtl::{partial_parse, EntryPoint};
use tunit::mock::{assemble_context, HelperMock, SubstitutionPolicy};
use tunit::tgl::{render, TemplateRegistry};

const METHOD_TEMPLATE: &str = "public ${ast.printReturnType()} ${ast.printName()}
  (${paramType} ${paramName})
  ${methodHelper.printThrowsDecl(ast)}
  ${tc.include(\"JavaMethodBody\", ast)}";

fn main() {
    let mut registry = TemplateRegistry::new();
    registry
        .insert_source("JavaMethod", METHOD_TEMPLATE)
        .expect("template parses");
    let registry = Arc::new(registry);

    let model =
        parse_model("classdiagram M { class A { void methodName(String param); } }").unwrap();
    let node = collect_nodes(&model, NodeKind::Method).remove(0).0;

    // The context the real generator would provide, mocked piece by piece:
    // the two variables, a helper answering from a canned table, and the
    // body sub-template replaced by a literal string.
    let variables = BTreeMap::from([
        ("paramType".to_string(), "String".to_string()),
        ("paramName".to_string(), "param".to_string()),
    ]);
    let helper = HelperMock::lenient("methodHelper")
        .respond("printThrowsDecl", "throws java.io.IOException");
    let ctx = assemble_context(
        node,
        variables,
        &[helper],
        Arc::new(SymbolTable::new()),
        Arc::clone(&registry),
        &SubstitutionPolicy::ReplaceWithString("{}".to_string()),
    )
    .expect("context assembles");

    let rendered = render(registry.get("JavaMethod").unwrap(), &ctx).expect("renders");
    println!("rendered method:\n{rendered}\n");

    let parsed = partial_parse(EntryPoint::MethodDecl, &rendered).expect("output parses");
    let method = parsed.as_method().unwrap();
    for check in [
        MethodSignatureCheck::ReturnTypeEquals("void".to_string()),
        MethodSignatureCheck::NameEquals("methodName".to_string()),
        MethodSignatureCheck::HasParameter {
            printed_type: "String".to_string(),
            name: "param".to_string(),
        },
        MethodSignatureCheck::HasParameter {
            printed_type: "int".to_string(),
            name: "param".to_string(),
        },
    ] {
        println!("{:<60} {}", format!("{check:?}"), assert_method_signature(method, &check));
    }
}
