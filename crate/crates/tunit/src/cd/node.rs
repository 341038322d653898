//! Node kinds, traversal, and qualified element references.

use std::fmt;

use super::ast::*;

/// The node kinds a test can select. The manifest spelling is the
/// `CD`-prefixed form (`CDAttribute`, `CDMethod`, ...).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Class,
    Attribute,
    Method,
    Parameter,
    Interface,
    Enum,
}

impl NodeKind {
    pub const ALL: [NodeKind; 6] = [
        NodeKind::Class,
        NodeKind::Attribute,
        NodeKind::Method,
        NodeKind::Parameter,
        NodeKind::Interface,
        NodeKind::Enum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Class => "CDClass",
            NodeKind::Attribute => "CDAttribute",
            NodeKind::Method => "CDMethod",
            NodeKind::Parameter => "CDParameter",
            NodeKind::Interface => "CDInterface",
            NodeKind::Enum => "CDEnum",
        }
    }

    pub fn parse(name: &str) -> Option<NodeKind> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Textual address of a single model element: `ClassName`,
/// `ClassName.attrName`, `ClassName.method(T1,T2)`, or
/// `ClassName.method(T1,T2).paramName`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QualifiedRef(String);

impl QualifiedRef {
    pub fn new(text: impl Into<String>) -> Self {
        QualifiedRef(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for QualifiedRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One model element, self-contained: member nodes carry the name of the
/// type that owns them so the node can produce its own qualified reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CdNode {
    Class(CdClass),
    Interface(CdInterface),
    Enum(CdEnum),
    Attribute { owner: String, attr: CdAttribute },
    Method { owner: String, method: CdMethod },
    Parameter {
        owner: String,
        method: CdMethod,
        param: CdParameter,
    },
    /// A type reference (`ast.type`, `ast.returnType`). Not addressable and
    /// never returned by traversal.
    Type(CdType),
}

impl CdNode {
    pub fn kind_name(&self) -> &'static str {
        match self {
            CdNode::Class(_) => "CdClass",
            CdNode::Interface(_) => "CdInterface",
            CdNode::Enum(_) => "CdEnum",
            CdNode::Attribute { .. } => "CdAttribute",
            CdNode::Method { .. } => "CdMethod",
            CdNode::Parameter { .. } => "CdParameter",
            CdNode::Type(_) => "CdType",
        }
    }

    /// The reference addressing this node, or `None` for type references.
    pub fn qualified_ref(&self) -> Option<QualifiedRef> {
        let text = match self {
            CdNode::Class(c) => c.name.clone(),
            CdNode::Interface(i) => i.name.clone(),
            CdNode::Enum(e) => e.name.clone(),
            CdNode::Attribute { owner, attr } => format!("{owner}.{}", attr.name),
            CdNode::Method { owner, method } => format!("{owner}.{}", method.signature()),
            CdNode::Parameter {
                owner,
                method,
                param,
            } => format!("{owner}.{}.{}", method.signature(), param.name),
            CdNode::Type(_) => return None,
        };
        Some(QualifiedRef(text))
    }
}

/// Collects every node of `kind` in document order (depth-first, classes
/// before interfaces before enums), paired with its qualified reference.
/// The position in the returned list is the node's traversal index, which
/// the runner uses for output file naming.
pub fn collect_nodes(model: &CdModel, kind: NodeKind) -> Vec<(CdNode, QualifiedRef)> {
    let mut out = Vec::new();
    let mut push = |node: CdNode| {
        let r = node.qualified_ref().expect("collected nodes are addressable");
        out.push((node, r));
    };
    match kind {
        NodeKind::Class => {
            for c in &model.classes {
                push(CdNode::Class(c.clone()));
            }
        }
        NodeKind::Interface => {
            for i in &model.interfaces {
                push(CdNode::Interface(i.clone()));
            }
        }
        NodeKind::Enum => {
            for e in &model.enums {
                push(CdNode::Enum(e.clone()));
            }
        }
        NodeKind::Attribute => {
            for c in &model.classes {
                for a in &c.attributes {
                    push(CdNode::Attribute {
                        owner: c.name.clone(),
                        attr: a.clone(),
                    });
                }
            }
        }
        NodeKind::Method => {
            for c in &model.classes {
                for m in &c.methods {
                    push(CdNode::Method {
                        owner: c.name.clone(),
                        method: m.clone(),
                    });
                }
            }
            for i in &model.interfaces {
                for m in &i.methods {
                    push(CdNode::Method {
                        owner: i.name.clone(),
                        method: m.clone(),
                    });
                }
            }
        }
        NodeKind::Parameter => {
            let mut methods: Vec<(String, &CdMethod)> = Vec::new();
            for c in &model.classes {
                methods.extend(c.methods.iter().map(|m| (c.name.clone(), m)));
            }
            for i in &model.interfaces {
                methods.extend(i.methods.iter().map(|m| (i.name.clone(), m)));
            }
            for (owner, m) in methods {
                for p in &m.parameters {
                    push(CdNode::Parameter {
                        owner: owner.clone(),
                        method: m.clone(),
                        param: p.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Finds every node of the model whose qualified reference equals `r`.
/// Well-formed models yield at most one match.
pub fn find_by_ref(model: &CdModel, r: &QualifiedRef) -> Vec<CdNode> {
    NodeKind::ALL
        .iter()
        .flat_map(|&k| collect_nodes(model, k))
        .filter(|(_, node_ref)| node_ref == r)
        .map(|(node, _)| node)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::parse_model;

    #[test]
    fn collects_attributes_in_document_order() {
        let model = parse_model("classdiagram D { class A { int a; int b; } }").unwrap();
        let nodes = collect_nodes(&model, NodeKind::Attribute);
        let refs: Vec<&str> = nodes.iter().map(|(_, r)| r.as_str()).collect();
        assert_eq!(refs, vec!["A.a", "A.b"]);
    }

    #[test]
    fn kind_without_instances_yields_empty_list() {
        let model = parse_model("classdiagram D { class A { int a; } }").unwrap();
        assert!(collect_nodes(&model, NodeKind::Enum).is_empty());
    }

    #[test]
    fn methods_collected_across_classes_in_source_order() {
        let model = parse_model(
            "classdiagram D { class A { void f(); } class B { void g(); } }",
        )
        .unwrap();
        let nodes = collect_nodes(&model, NodeKind::Method);
        let refs: Vec<&str> = nodes.iter().map(|(_, r)| r.as_str()).collect();
        assert_eq!(refs, vec!["A.f()", "B.g()"]);
    }

    #[test]
    fn method_refs_use_printed_parameter_types() {
        let model = parse_model(
            "classdiagram D { class A { void m(String s, int[] xs); } }",
        )
        .unwrap();
        let nodes = collect_nodes(&model, NodeKind::Method);
        assert_eq!(nodes[0].1.as_str(), "A.m(String,int[])");
    }

    #[test]
    fn node_kind_names_round_trip() {
        for kind in NodeKind::ALL {
            assert_eq!(NodeKind::parse(kind.name()), Some(kind));
        }
        assert_eq!(NodeKind::parse("CDAssociation"), None);
    }

    #[test]
    fn qualified_refs_resolve_back_to_their_node() {
        let model = parse_model(
            "classdiagram D { class A { int attributeName = 5; void m(String p); } }",
        )
        .unwrap();
        for kind in NodeKind::ALL {
            for (node, r) in collect_nodes(&model, kind) {
                let found = find_by_ref(&model, &r);
                assert_eq!(found, vec![node]);
            }
        }
    }
}
