//! Pretty printer for parsed models. Printing a model and parsing the
//! result yields a structurally equal model.

use super::ast::*;

pub fn print_model(model: &CdModel) -> String {
    let mut out = String::new();
    out.push_str(&format!("classdiagram {} {{\n", model.name));
    for class in &model.classes {
        print_class(&mut out, class);
    }
    for iface in &model.interfaces {
        out.push_str(&format!("  interface {} {{\n", iface.name));
        for method in &iface.methods {
            out.push_str("    ");
            print_method(&mut out, method);
        }
        out.push_str("  }\n");
    }
    for en in &model.enums {
        out.push_str(&format!("  enum {} {{ {} }}\n", en.name, en.constants.join(", ")));
    }
    out.push_str("}\n");
    out
}

fn print_class(out: &mut String, class: &CdClass) {
    out.push_str(&format!("  class {}", class.name));
    if let Some(superclass) = &class.superclass {
        out.push_str(&format!(" extends {superclass}"));
    }
    out.push_str(" {\n");
    for attr in &class.attributes {
        out.push_str("    ");
        if let Some(v) = attr.visibility {
            out.push_str(v.keyword());
            out.push(' ');
        }
        out.push_str(&format!("{} {}", attr.ty.printed(), attr.name));
        if let Some(value) = &attr.value {
            out.push_str(&format!(" = {value}"));
        }
        out.push_str(";\n");
    }
    for method in &class.methods {
        out.push_str("    ");
        print_method(out, method);
    }
    out.push_str("  }\n");
}

fn print_method(out: &mut String, method: &CdMethod) {
    if let Some(v) = method.visibility {
        out.push_str(v.keyword());
        out.push(' ');
    }
    let params: Vec<String> = method
        .parameters
        .iter()
        .map(|p| format!("{} {}", p.ty.printed(), p.name))
        .collect();
    out.push_str(&format!(
        "{} {}({})",
        method.return_type.printed(),
        method.name,
        params.join(", ")
    ));
    if !method.exceptions.is_empty() {
        out.push_str(&format!(" throws {}", method.exceptions.join(", ")));
    }
    out.push_str(";\n");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::parse_model;

    #[test]
    fn print_then_parse_is_identity() {
        let source = "classdiagram D { class A extends B { public int x = 5; String s = \"hi\"; void m(int a, String[] b) throws E, f.G; } interface I { int size(); } enum C { RED, GREEN } }";
        let model = parse_model(source).unwrap();
        let reparsed = parse_model(&print_model(&model)).unwrap();
        assert_eq!(model, reparsed);
    }
}
