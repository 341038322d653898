//! The three assertion families side by side: exact strings, normalized
//! strings, and structural comparison.
//!
//! ```bash
//! cargo run -p tunit --example string_vs_ast_assertions
//! ```

use tunit::assertions::{assert_ast_equals, compare_strings, NormalizationPolicy};
use tunit::jtl::EntryPoint;

fn main() {
    let actual = "public int   x =\t5;";
    let expected = "public int x = 5;";

    let strict = compare_strings(actual, expected, &NormalizationPolicy::none());
    println!("exact bytes:           {strict}");

    let collapsing = NormalizationPolicy {
        collapse_inner_whitespace: true,
        ..Default::default()
    };
    let relaxed = compare_strings(actual, expected, &collapsing);
    println!("collapsed whitespace:  {relaxed}");

    let structural = assert_ast_equals(actual, expected, EntryPoint::FieldDecl);
    println!("AST comparison:        {structural}");

    // Normalization cannot save a real difference; the explanation points
    // at the first differing position.
    let wrong = compare_strings("public int x;", "public int y;", &collapsing);
    println!("\nreal difference:\n  {wrong}");

    // And an AST mismatch explains itself structurally.
    let wrong = assert_ast_equals("public int x;", "public int y = 2;", EntryPoint::FieldDecl);
    println!("\nstructural mismatch:\n{}", indent(&wrong.to_string()));
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}
