//! Partial parsing and structural comparison: why AST assertions are less
//! fragile than string assertions, and what a diff looks like when the
//! structure really differs.
//!
//! ```bash
//! cargo run -p tunit --example ast_compare
//! ```

use tunit::jtl::{ast_diff, ast_equals, partial_parse, print_node, EntryPoint};

fn main() {
    // Same declaration, wildly different formatting.
    let generated = "public int attributeName=5;";
    let expected = "public  int\n    attributeName = 5 ;";
    let a = partial_parse(EntryPoint::FieldDecl, generated).unwrap();
    let b = partial_parse(EntryPoint::FieldDecl, expected).unwrap();
    println!("formatting-only difference:");
    println!("  bytes equal:  {}", generated == expected);
    println!("  ASTs equal:   {}", ast_equals(&a, &b).unwrap());
    println!("  canonical:    {}", print_node(&a));

    // A real difference: the diff names each mismatching field.
    let expected = "public String otherName = 5;";
    let b = partial_parse(EntryPoint::FieldDecl, expected).unwrap();
    let diff = ast_diff(&a, &b).unwrap();
    println!("\nstructural difference against `{expected}`:");
    for line in diff.rendered().lines() {
        println!("  {line}");
    }

    // Methods work the same way through the method_decl entry point.
    let m1 = partial_parse(
        EntryPoint::MethodDecl,
        "void copy ( String from , String to ) { return ; }",
    )
    .unwrap();
    let m2 = partial_parse(EntryPoint::MethodDecl, "void copy(String from, int to) {return;}")
        .unwrap();
    let diff = ast_diff(&m1, &m2).unwrap();
    println!("\nmethod parameter difference:");
    for line in diff.rendered().lines() {
        println!("  {line}");
    }
}
