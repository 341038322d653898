//! JSON test manifest loading and validation.
//!
//! Manifest shape (all paths relative to the manifest file):
//!
//! ```json
//! {
//!   "templates": { "JavaAttribute": "templates/JavaAttribute.tgl" },
//!   "symbol_table_path": ["models/aux"],
//!   "input_model": "models/default.cd",
//!   "tests": [
//!     {
//!       "name": "attribute-renders",
//!       "template_under_test": "JavaAttribute",
//!       "node_type": "CDAttribute",
//!       "input_model": "models/attr.cd",
//!       "variables": { "paramType": "String" },
//!       "helpers": {
//!         "methodHelper": {
//!           "strict": false,
//!           "table": [ { "method": "printThrowsDecl", "response": "" } ]
//!         }
//!       },
//!       "substitution_policy": { "kind": "replace_with_string", "value": "{}" },
//!       "assertions": [
//!         { "target": "A.x", "check": "string_equals", "expected": "public int x;",
//!           "policy": ["collapse_inner_whitespace"] },
//!         { "target": "*", "check": "ast_equals", "expected": "public int x;",
//!           "entry_point": "field_decl" },
//!         { "check": "output_count", "count": 1 }
//!       ]
//!     }
//!   ]
//! }
//! ```
//!
//! Validation is strict: unknown keys, bad enum spellings, and references
//! to missing files are all errors, reported with a JSON pointer. Defaults:
//! passthrough substitution, no variables, no helpers, empty symbol table,
//! all normalization flags off, output under `./tunit-out/<case-name>/`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde_json::Value;
use thiserror::Error;

use crate::assertions::{MethodSignatureCheck, NormalizationPolicy};
use crate::cd::{NodeKind, QualifiedRef};
use crate::jtl::EntryPoint;
use crate::mock::{HelperMock, MockResponse, PerCallRule, Replacement, SubstitutionPolicy};

use super::{AssertionSpec, CheckSpec, TargetSpec, TestCase};

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: not valid JSON: {message}")]
    Json { path: PathBuf, message: String },
    #[error("schema error at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },
    #[error("referenced file does not exist: {path} (at `{pointer}`)")]
    MissingFile { pointer: String, path: PathBuf },
}

fn schema(pointer: &str, message: impl Into<String>) -> ManifestError {
    ManifestError::Schema {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

/// Loads and validates a manifest, returning fully resolved test cases.
/// Every referenced file is checked for existence eagerly.
pub fn load_manifest(path: &Path) -> Result<Vec<TestCase>, ManifestError> {
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let root: Value = serde_json::from_str(&text).map_err(|e| ManifestError::Json {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_root(&root, base)
}

fn parse_root(root: &Value, base: &Path) -> Result<Vec<TestCase>, ManifestError> {
    let obj = as_object(root, "")?;
    check_keys(
        obj,
        "",
        &["templates", "symbol_table_path", "input_model", "tests"],
    )?;

    let templates = parse_templates(required(obj, "", "templates")?, base)?;
    let suite_symbols = match obj.get("symbol_table_path") {
        Some(v) => parse_path_list(v, "/symbol_table_path", base)?,
        None => Vec::new(),
    };
    let suite_model = match obj.get("input_model") {
        Some(v) => Some(parse_existing_path(v, "/input_model", base)?),
        None => None,
    };

    let tests = required(obj, "", "tests")?;
    let Value::Array(tests) = tests else {
        return Err(schema("/tests", "expected an array of test cases"));
    };
    if tests.is_empty() {
        return Err(schema("/tests", "at least one test case is required"));
    }
    let mut seen_names: BTreeSet<String> = BTreeSet::new();
    let mut cases = Vec::new();
    for (i, test) in tests.iter().enumerate() {
        let pointer = format!("/tests/{i}");
        let case = parse_test(
            test,
            &pointer,
            base,
            &templates,
            &suite_symbols,
            suite_model.as_deref(),
        )?;
        if !seen_names.insert(case.name.clone()) {
            return Err(schema(
                &format!("{pointer}/name"),
                format!("duplicate test case name `{}` (cases own their output directories exclusively)", case.name),
            ));
        }
        cases.push(case);
    }
    Ok(cases)
}

fn parse_templates(
    value: &Value,
    base: &Path,
) -> Result<BTreeMap<String, PathBuf>, ManifestError> {
    let obj = as_object(value, "/templates")?;
    if obj.is_empty() {
        return Err(schema("/templates", "at least one template is required"));
    }
    let mut map = BTreeMap::new();
    for (name, path_value) in obj {
        let pointer = format!("/templates/{name}");
        let path = parse_existing_path(path_value, &pointer, base)?;
        map.insert(name.clone(), path);
    }
    Ok(map)
}

#[allow(clippy::too_many_arguments)]
fn parse_test(
    value: &Value,
    pointer: &str,
    base: &Path,
    templates: &BTreeMap<String, PathBuf>,
    suite_symbols: &[PathBuf],
    suite_model: Option<&Path>,
) -> Result<TestCase, ManifestError> {
    let obj = as_object(value, pointer)?;
    check_keys(
        obj,
        pointer,
        &[
            "name",
            "template_under_test",
            "node_type",
            "input_model",
            "variables",
            "helpers",
            "substitution_policy",
            "assertions",
        ],
    )?;

    let name = string_field(obj, pointer, "name")?;
    if name.is_empty() {
        return Err(schema(&format!("{pointer}/name"), "name must be non-empty"));
    }
    let template_under_test = string_field(obj, pointer, "template_under_test")?;
    if !templates.contains_key(&template_under_test) {
        return Err(schema(
            &format!("{pointer}/template_under_test"),
            format!("template `{template_under_test}` is not declared under /templates"),
        ));
    }
    let node_type_name = string_field(obj, pointer, "node_type")?;
    let node_type = NodeKind::parse(&node_type_name).ok_or_else(|| {
        schema(
            &format!("{pointer}/node_type"),
            format!(
                "unknown node type `{node_type_name}`; expected one of {}",
                NodeKind::ALL.map(|k| k.name()).join(", ")
            ),
        )
    })?;
    let input_model = match obj.get("input_model") {
        Some(v) => parse_existing_path(v, &format!("{pointer}/input_model"), base)?,
        None => suite_model
            .map(Path::to_path_buf)
            .ok_or_else(|| {
                schema(
                    &format!("{pointer}/input_model"),
                    "no input model: set it on the test or suite level",
                )
            })?,
    };
    let variables = match obj.get("variables") {
        Some(v) => parse_string_map(v, &format!("{pointer}/variables"))?,
        None => BTreeMap::new(),
    };
    let helpers = match obj.get("helpers") {
        Some(v) => parse_helpers(v, &format!("{pointer}/helpers"))?,
        None => Vec::new(),
    };
    let substitution_policy = match obj.get("substitution_policy") {
        Some(v) => parse_policy(v, &format!("{pointer}/substitution_policy"), true)?,
        None => SubstitutionPolicy::Passthrough,
    };
    let assertions = match obj.get("assertions") {
        Some(Value::Array(items)) => {
            let mut specs = Vec::new();
            for (i, item) in items.iter().enumerate() {
                specs.push(parse_assertion(item, &format!("{pointer}/assertions/{i}"))?);
            }
            specs
        }
        Some(_) => {
            return Err(schema(
                &format!("{pointer}/assertions"),
                "expected an array",
            ))
        }
        None => Vec::new(),
    };

    Ok(TestCase {
        output_dir: PathBuf::from("tunit-out").join(&name),
        name,
        template_under_test,
        node_type,
        input_model,
        templates: templates.clone(),
        variables,
        helpers,
        symbol_table_paths: suite_symbols.to_vec(),
        substitution_policy,
        assertions,

    })
}

fn parse_helpers(value: &Value, pointer: &str) -> Result<Vec<HelperMock>, ManifestError> {
    let obj = as_object(value, pointer)?;
    let mut mocks = Vec::new();
    for (name, spec) in obj {
        let pointer = format!("{pointer}/{name}");
        let spec = as_object(spec, &pointer)?;
        check_keys(spec, &pointer, &["strict", "table"])?;
        let strict = match spec.get("strict") {
            Some(Value::Bool(b)) => *b,
            Some(_) => return Err(schema(&format!("{pointer}/strict"), "expected a boolean")),
            None => false,
        };
        let mut responses = Vec::new();
        match spec.get("table") {
            Some(Value::Array(rows)) => {
                for (i, row) in rows.iter().enumerate() {
                    let pointer = format!("{pointer}/table/{i}");
                    let row = as_object(row, &pointer)?;
                    check_keys(row, &pointer, &["method", "arg", "response"])?;
                    let method = string_field(row, &pointer, "method")?;
                    let response = string_field(row, &pointer, "response")?;
                    let arg = match row.get("arg") {
                        Some(Value::String(s)) => Some(QualifiedRef::new(s.clone())),
                        Some(_) => {
                            return Err(schema(&format!("{pointer}/arg"), "expected a string"))
                        }
                        None => None,
                    };
                    responses.push(MockResponse {
                        method,
                        arg,
                        response,
                    });
                }
            }
            Some(_) => return Err(schema(&format!("{pointer}/table"), "expected an array")),
            None => {}
        }
        mocks.push(HelperMock {
            name: name.clone(),
            strict,
            responses,
        });
    }
    Ok(mocks)
}

fn parse_policy(
    value: &Value,
    pointer: &str,
    allow_per_call: bool,
) -> Result<SubstitutionPolicy, ManifestError> {
    let obj = as_object(value, pointer)?;
    check_keys(obj, pointer, &["kind", "value", "rules", "fallback"])?;
    let kind = string_field(obj, pointer, "kind")?;
    let value_field = |name: &str| -> Result<String, ManifestError> {
        match obj.get("value") {
            Some(Value::String(s)) => Ok(s.clone()),
            _ => Err(schema(
                &format!("{pointer}/value"),
                format!("policy `{name}` needs a string `value`"),
            )),
        }
    };
    let reject_extras = |allowed: &[&str]| -> Result<(), ManifestError> {
        for key in ["value", "rules", "fallback"] {
            if obj.contains_key(key) && !allowed.contains(&key) {
                return Err(schema(
                    &format!("{pointer}/{key}"),
                    format!("`{key}` is not valid for policy `{kind}`"),
                ));
            }
        }
        Ok(())
    };
    match kind.as_str() {
        "passthrough" => {
            reject_extras(&[])?;
            Ok(SubstitutionPolicy::Passthrough)
        }
        "replace_with_empty" => {
            reject_extras(&[])?;
            Ok(SubstitutionPolicy::ReplaceWithEmpty)
        }
        "replace_with_string" => {
            reject_extras(&["value"])?;
            Ok(SubstitutionPolicy::ReplaceWithString(value_field(
                "replace_with_string",
            )?))
        }
        "replace_all_with_template" => {
            reject_extras(&["value"])?;
            Ok(SubstitutionPolicy::ReplaceAllWithTemplate(value_field(
                "replace_all_with_template",
            )?))
        }
        "per_call" => {
            if !allow_per_call {
                return Err(schema(pointer, "a per_call fallback must not be per_call"));
            }
            reject_extras(&["rules", "fallback"])?;
            let mut rules = Vec::new();
            match obj.get("rules") {
                Some(Value::Array(items)) => {
                    for (i, item) in items.iter().enumerate() {
                        rules.push(parse_rule(item, &format!("{pointer}/rules/{i}"))?);
                    }
                }
                Some(_) => return Err(schema(&format!("{pointer}/rules"), "expected an array")),
                None => {}
            }
            let fallback = match obj.get("fallback") {
                Some(v) => parse_policy(v, &format!("{pointer}/fallback"), false)?,
                None => SubstitutionPolicy::Passthrough,
            };
            Ok(SubstitutionPolicy::PerCall {
                rules,
                fallback: Box::new(fallback),
            })
        }
        other => Err(schema(
            &format!("{pointer}/kind"),
            format!("unknown policy kind `{other}`"),
        )),
    }
}

fn parse_rule(value: &Value, pointer: &str) -> Result<PerCallRule, ManifestError> {
    let obj = as_object(value, pointer)?;
    check_keys(
        obj,
        pointer,
        &["template", "node", "replacement_string", "replacement_template"],
    )?;
    let template = string_field(obj, pointer, "template")?;
    let node = match obj.get("node") {
        Some(Value::String(s)) => Some(QualifiedRef::new(s.clone())),
        Some(_) => return Err(schema(&format!("{pointer}/node"), "expected a string")),
        None => None,
    };
    let replacement = match (obj.get("replacement_string"), obj.get("replacement_template")) {
        (Some(Value::String(s)), None) => Replacement::Text(s.clone()),
        (None, Some(Value::String(s))) => Replacement::Template(s.clone()),
        _ => {
            return Err(schema(
                pointer,
                "exactly one of `replacement_string` or `replacement_template` is required",
            ))
        }
    };
    Ok(PerCallRule {
        template,
        node,
        replacement,
    })
}

fn parse_assertion(value: &Value, pointer: &str) -> Result<AssertionSpec, ManifestError> {
    let obj = as_object(value, pointer)?;
    let check_name = string_field(obj, pointer, "check")?;
    let target = match obj.get("target") {
        Some(Value::String(s)) if s == "*" => Some(TargetSpec::All),
        Some(Value::String(s)) => Some(TargetSpec::Ref(QualifiedRef::new(s.clone()))),
        Some(_) => return Err(schema(&format!("{pointer}/target"), "expected a string")),
        None => None,
    };
    let entry_point = |field: &str| -> Result<EntryPoint, ManifestError> {
        let name = string_field(obj, pointer, field)?;
        EntryPoint::parse(&name).ok_or_else(|| {
            schema(
                &format!("{pointer}/{field}"),
                format!(
                    "unknown entry point `{name}`; expected one of {}",
                    EntryPoint::ALL.map(|e| e.name()).join(", ")
                ),
            )
        })
    };
    let check = match check_name.as_str() {
        "string_equals" => {
            check_keys(obj, pointer, &["target", "check", "expected", "policy"])?;
            let policy = match obj.get("policy") {
                Some(v) => parse_policy_flags(v, &format!("{pointer}/policy"))?,
                None => NormalizationPolicy::none(),
            };
            CheckSpec::StringEquals {
                expected: string_field(obj, pointer, "expected")?,
                policy,
            }
        }
        "ast_equals" => {
            check_keys(obj, pointer, &["target", "check", "expected", "entry_point"])?;
            CheckSpec::AstEquals {
                expected: string_field(obj, pointer, "expected")?,
                entry_point: entry_point("entry_point")?,
            }
        }
        "has_class" => {
            check_keys(obj, pointer, &["target", "check", "name"])?;
            CheckSpec::HasClass {
                name: string_field(obj, pointer, "name")?,
            }
        }
        "has_attribute" => {
            check_keys(obj, pointer, &["target", "check", "name", "type"])?;
            CheckSpec::HasAttribute {
                name: string_field(obj, pointer, "name")?,
                printed_type: string_field(obj, pointer, "type")?,
            }
        }
        "has_method" => {
            check_keys(
                obj,
                pointer,
                &["target", "check", "name", "return_type", "param_types"],
            )?;
            let param_types = match obj.get("param_types") {
                Some(Value::Array(items)) => {
                    let mut types = Vec::new();
                    for (i, item) in items.iter().enumerate() {
                        let Value::String(s) = item else {
                            return Err(schema(
                                &format!("{pointer}/param_types/{i}"),
                                "expected a string",
                            ));
                        };
                        types.push(s.clone());
                    }
                    types
                }
                Some(_) => {
                    return Err(schema(
                        &format!("{pointer}/param_types"),
                        "expected an array of strings",
                    ))
                }
                None => Vec::new(),
            };
            CheckSpec::HasMethod {
                name: string_field(obj, pointer, "name")?,
                return_type: string_field(obj, pointer, "return_type")?,
                param_types,
            }
        }
        "method_signature" => {
            check_keys(
                obj,
                pointer,
                &["target", "check", "kind", "value", "type", "name"],
            )?;
            let kind = string_field(obj, pointer, "kind")?;
            let check = match kind.as_str() {
                "return_type_equals" => {
                    MethodSignatureCheck::ReturnTypeEquals(string_field(obj, pointer, "value")?)
                }
                "name_equals" => {
                    MethodSignatureCheck::NameEquals(string_field(obj, pointer, "value")?)
                }
                "has_parameter" => MethodSignatureCheck::HasParameter {
                    printed_type: string_field(obj, pointer, "type")?,
                    name: string_field(obj, pointer, "name")?,
                },
                other => {
                    return Err(schema(
                        &format!("{pointer}/kind"),
                        format!("unknown signature check `{other}`"),
                    ))
                }
            };
            CheckSpec::MethodSignature(check)
        }
        "context_conditions_clean" => {
            check_keys(obj, pointer, &["target", "check", "entry_point"])?;
            CheckSpec::ContextConditionsClean {
                entry_point: entry_point("entry_point")?,
            }
        }
        "output_count" => {
            check_keys(obj, pointer, &["target", "check", "count"])?;
            let count = match obj.get("count") {
                Some(Value::Number(n)) if n.as_u64().is_some() => n.as_u64().unwrap() as usize,
                _ => {
                    return Err(schema(
                        &format!("{pointer}/count"),
                        "expected a non-negative integer",
                    ))
                }
            };
            CheckSpec::OutputCount { count }
        }
        other => {
            return Err(schema(
                &format!("{pointer}/check"),
                format!("unknown check `{other}`"),
            ))
        }
    };
    if target.is_none() && !matches!(check, CheckSpec::OutputCount { .. }) {
        return Err(schema(
            &format!("{pointer}/target"),
            "this check needs a target (a qualified reference or `*`)",
        ));
    }
    Ok(AssertionSpec { target, check })
}

fn parse_policy_flags(value: &Value, pointer: &str) -> Result<NormalizationPolicy, ManifestError> {
    let Value::Array(items) = value else {
        return Err(schema(pointer, "expected an array of flag names"));
    };
    let mut policy = NormalizationPolicy::none();
    for (i, item) in items.iter().enumerate() {
        let Value::String(flag) = item else {
            return Err(schema(&format!("{pointer}/{i}"), "expected a string"));
        };
        match flag.as_str() {
            "normalize_line_endings" => policy.normalize_line_endings = true,
            "ignore_trailing_whitespace" => policy.ignore_trailing_whitespace = true,
            "ignore_indentation" => policy.ignore_indentation = true,
            "ignore_blank_lines" => policy.ignore_blank_lines = true,
            "collapse_inner_whitespace" => policy.collapse_inner_whitespace = true,
            other => {
                return Err(schema(
                    &format!("{pointer}/{i}"),
                    format!("unknown normalization flag `{other}`"),
                ))
            }
        }
    }
    Ok(policy)
}

fn parse_path_list(value: &Value, pointer: &str, base: &Path) -> Result<Vec<PathBuf>, ManifestError> {
    let Value::Array(items) = value else {
        return Err(schema(pointer, "expected an array of paths"));
    };
    let mut paths = Vec::new();
    for (i, item) in items.iter().enumerate() {
        paths.push(parse_existing_path(item, &format!("{pointer}/{i}"), base)?);
    }
    Ok(paths)
}

fn parse_existing_path(value: &Value, pointer: &str, base: &Path) -> Result<PathBuf, ManifestError> {
    let Value::String(s) = value else {
        return Err(schema(pointer, "expected a path string"));
    };
    let path = base.join(s);
    if !path.exists() {
        return Err(ManifestError::MissingFile {
            pointer: pointer.to_string(),
            path,
        });
    }
    Ok(path)
}

fn parse_string_map(
    value: &Value,
    pointer: &str,
) -> Result<BTreeMap<String, String>, ManifestError> {
    let obj = as_object(value, pointer)?;
    let mut map = BTreeMap::new();
    for (k, v) in obj {
        let Value::String(s) = v else {
            return Err(schema(&format!("{pointer}/{k}"), "expected a string value"));
        };
        map.insert(k.clone(), s.clone());
    }
    Ok(map)
}

fn as_object<'v>(
    value: &'v Value,
    pointer: &str,
) -> Result<&'v serde_json::Map<String, Value>, ManifestError> {
    value
        .as_object()
        .ok_or_else(|| schema(pointer, "expected an object"))
}

fn check_keys(
    obj: &serde_json::Map<String, Value>,
    pointer: &str,
    allowed: &[&str],
) -> Result<(), ManifestError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(schema(
                &format!("{pointer}/{key}"),
                format!("unknown key `{key}`"),
            ));
        }
    }
    Ok(())
}

fn required<'v>(
    obj: &'v serde_json::Map<String, Value>,
    pointer: &str,
    key: &str,
) -> Result<&'v Value, ManifestError> {
    obj.get(key)
        .ok_or_else(|| schema(&format!("{pointer}/{key}"), format!("missing required key `{key}`")))
}

fn string_field(
    obj: &serde_json::Map<String, Value>,
    pointer: &str,
    key: &str,
) -> Result<String, ManifestError> {
    match obj.get(key) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(schema(&format!("{pointer}/{key}"), "expected a string")),
        None => Err(schema(
            &format!("{pointer}/{key}"),
            format!("missing required key `{key}`"),
        )),
    }
}
