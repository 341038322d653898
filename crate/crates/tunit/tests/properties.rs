//! Cross-cutting property tests: model print/parse round trips, traversal
//! counts, template literal fidelity, and symbol-table merge behavior.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use tunit::cd::{
    build_symbol_table, collect_nodes, find_by_ref, parse_model, print_model, CdAttribute,
    CdClass, CdEnum, CdInterface, CdMethod, CdModel, CdParameter, CdType, NodeKind, Visibility,
};
use tunit::tgl::{parse_template, render, RenderContext, TemplateRegistry};

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{0,4}"
}

fn type_name() -> impl Strategy<Value = CdType> {
    ("[A-Z][a-z0-9]{0,3}(\\.[a-z][a-z0-9]{0,2}){0,2}", 0usize..3)
        .prop_map(|(base, dims)| CdType::new(base, dims))
}

fn visibility() -> impl Strategy<Value = Option<Visibility>> {
    prop::option::of(prop::sample::select(vec![
        Visibility::Public,
        Visibility::Private,
        Visibility::Protected,
    ]))
}

fn literal() -> impl Strategy<Value = Option<String>> {
    prop::option::of(prop::sample::select(vec![
        "5".to_string(),
        "-12".to_string(),
        "3.25".to_string(),
        "\"text with  spaces\"".to_string(),
        "true".to_string(),
        "false".to_string(),
        "null".to_string(),
    ]))
}

fn method(name: String) -> impl Strategy<Value = CdMethod> {
    (
        visibility(),
        type_name(),
        prop::collection::btree_set(ident(), 0..3),
        prop::collection::vec(type_name(), 3),
        prop::collection::vec("[A-Z][a-z]{0,3}", 0..3),
    )
        .prop_map(move |(visibility, return_type, param_names, param_types, exceptions)| {
            let parameters = param_names
                .into_iter()
                .zip(param_types)
                .map(|(name, ty)| CdParameter { ty, name })
                .collect();
            CdMethod {
                visibility,
                return_type,
                name: name.clone(),
                parameters,
                exceptions,
            }
        })
}

fn class(name: String) -> impl Strategy<Value = CdClass> {
    let attributes = prop::collection::btree_set(ident(), 0..4).prop_flat_map(|names| {
        names
            .into_iter()
            .map(|name| {
                (visibility(), type_name(), literal()).prop_map(move |(v, ty, value)| {
                    CdAttribute {
                        visibility: v,
                        ty,
                        name: name.clone(),
                        value,
                    }
                })
            })
            .collect::<Vec<_>>()
    });
    // Unique method names sidestep the signature-uniqueness rule.
    let methods = prop::collection::btree_set(ident(), 0..3)
        .prop_flat_map(|names| names.into_iter().map(method).collect::<Vec<_>>());
    (prop::option::of("[A-Z][a-z]{0,4}"), attributes, methods).prop_map(
        move |(superclass, attributes, methods)| CdClass {
            name: name.clone(),
            superclass,
            attributes,
            methods,
        },
    )
}

fn model() -> impl Strategy<Value = CdModel> {
    prop::collection::btree_set("[A-Z][a-z0-9]{0,4}", 1..6).prop_flat_map(|names| {
        let names: Vec<String> = names.into_iter().collect();
        // Split the unique top-level names between classes, interfaces,
        // and enums.
        let class_names: Vec<String> = names.iter().step_by(3).cloned().collect();
        let iface_names: Vec<String> = names.iter().skip(1).step_by(3).cloned().collect();
        let enum_names: Vec<String> = names.iter().skip(2).step_by(3).cloned().collect();
        let classes = class_names.into_iter().map(class).collect::<Vec<_>>();
        let interfaces = iface_names
            .into_iter()
            .map(|name| {
                prop::collection::btree_set(ident(), 0..3).prop_flat_map(move |ms| {
                    let name = name.clone();
                    ms.into_iter()
                        .map(method)
                        .collect::<Vec<_>>()
                        .prop_map(move |methods| CdInterface {
                            name: name.clone(),
                            methods,
                        })
                })
            })
            .collect::<Vec<_>>();
        let enums = enum_names
            .into_iter()
            .map(|name| {
                prop::collection::btree_set("[A-Z]{1,4}", 1..4).prop_map(move |constants| {
                    CdEnum {
                        name: name.clone(),
                        constants: constants.into_iter().collect(),
                    }
                })
            })
            .collect::<Vec<_>>();
        ("[A-Z][a-z]{0,5}", classes, interfaces, enums).prop_map(
            |(name, classes, interfaces, enums)| CdModel {
                name,
                classes,
                interfaces,
                enums,
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    /// Pretty-printing a model and re-parsing it yields a structurally
    /// equal model.
    #[test]
    fn model_print_parse_round_trip(m in model()) {
        let printed = print_model(&m);
        let reparsed = parse_model(&printed)
            .unwrap_or_else(|e| panic!("printed model failed to parse: {e}\n{printed}"));
        prop_assert_eq!(m, reparsed);
    }

    /// Traversal returns exactly one entry per declaration of the kind, in
    /// declaration order, and every qualified reference resolves back to
    /// its own node and nothing else.
    #[test]
    fn traversal_counts_and_refs_match_declarations(m in model()) {
        let attr_count: usize = m.classes.iter().map(|c| c.attributes.len()).sum();
        let method_count: usize = m.classes.iter().map(|c| c.methods.len()).sum::<usize>()
            + m.interfaces.iter().map(|i| i.methods.len()).sum::<usize>();
        prop_assert_eq!(collect_nodes(&m, NodeKind::Attribute).len(), attr_count);
        prop_assert_eq!(collect_nodes(&m, NodeKind::Method).len(), method_count);
        prop_assert_eq!(collect_nodes(&m, NodeKind::Class).len(), m.classes.len());
        prop_assert_eq!(collect_nodes(&m, NodeKind::Interface).len(), m.interfaces.len());
        prop_assert_eq!(collect_nodes(&m, NodeKind::Enum).len(), m.enums.len());

        for kind in NodeKind::ALL {
            let collected = collect_nodes(&m, kind);
            let refs: BTreeSet<&str> = collected.iter().map(|(_, r)| r.as_str()).collect();
            prop_assert_eq!(refs.len(), collected.len(), "references must be unique");
            for (node, reference) in collected {
                let found = find_by_ref(&m, &reference);
                prop_assert_eq!(found, vec![node]);
            }
        }
    }

    /// Merging symbol tables over disjoint models is order-independent.
    #[test]
    fn symbol_table_merge_is_order_independent(m1 in model(), m2 in model()) {
        let names1: BTreeSet<String> = m1.classes.iter().map(|c| c.name.clone())
            .chain(m1.interfaces.iter().map(|i| i.name.clone()))
            .chain(m1.enums.iter().map(|e| e.name.clone()))
            .collect();
        let disjoint = !m2.classes.iter().any(|c| names1.contains(&c.name))
            && !m2.interfaces.iter().any(|i| names1.contains(&i.name))
            && !m2.enums.iter().any(|e| names1.contains(&e.name));
        prop_assume!(disjoint);
        prop_assume!(m1.name != m2.name);
        let forward = build_symbol_table(&[m1.clone(), m2.clone()]).unwrap();
        let backward = build_symbol_table(&[m2, m1]).unwrap();
        prop_assert_eq!(forward, backward);
    }

    /// A template without directives renders byte-identical to its source.
    #[test]
    fn directive_free_templates_render_verbatim(
        text in "[ -~\\n\\t]{0,60}".prop_filter(
            "no template constructs",
            |s| !s.contains("${") && !s.contains("<#") && !s.contains("</#"),
        )
    ) {
        let template = parse_template("t", &text).unwrap();
        let model = parse_model("classdiagram D { class A { int a; } }").unwrap();
        let node = collect_nodes(&model, NodeKind::Attribute).remove(0).0;
        let ctx = RenderContext::bare(node, Arc::new(TemplateRegistry::new()));
        prop_assert_eq!(render(&template, &ctx).unwrap(), text);
    }
}
