//! Manifest-driven test execution.
//!
//! A JSON manifest declares the test cases: which template is under test,
//! which node kind it runs on, the input model, the mocked context, and
//! the assertions. [`run_test_case`] executes one case — parse the model,
//! collect the matching nodes, render the template once per node, write
//! one output file per node — and evaluates every assertion against the
//! resulting [`OutputTrace`]. The trace maps each model element to its
//! output file, so assertions address outputs by qualified reference
//! instead of brittle file names.

mod cli;
mod manifest;
mod report;
mod run;

pub use cli::cli_main;
pub use manifest::{load_manifest, ManifestError};
pub use report::{write_report, ReportFormat};
pub use run::{
    output_file_name, output_for, run_suite, run_test_case, RunOptions, TraceLookupError,
};

use std::path::PathBuf;

use crate::assertions::{MethodSignatureCheck, NormalizationPolicy, Verdict};
use crate::cd::{NodeKind, QualifiedRef};
use crate::jtl::EntryPoint;
use crate::mock::{HelperMock, SubstitutionPolicy};

/// One manifest-defined test case, fully resolved: paths are absolute or
/// relative to the process working directory, defaults applied.
#[derive(Clone, Debug)]
pub struct TestCase {
    pub name: String,
    /// Registry name of the template this case executes.
    pub template_under_test: String,
    /// The node kind the template runs on, once per matching node.
    pub node_type: NodeKind,
    pub input_model: PathBuf,
    /// Template registry: name to template file.
    pub templates: std::collections::BTreeMap<String, PathBuf>,
    pub variables: std::collections::BTreeMap<String, String>,
    pub helpers: Vec<HelperMock>,
    pub symbol_table_paths: Vec<PathBuf>,
    pub substitution_policy: SubstitutionPolicy,
    pub assertions: Vec<AssertionSpec>,
    /// Wiped and re-created on every run of the case.
    pub output_dir: PathBuf,
}

/// Which rendered outputs an assertion applies to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSpec {
    /// Every output of the case (`*` in the manifest).
    All,
    /// The output of one element, addressed by qualified reference.
    Ref(QualifiedRef),
}

impl TargetSpec {
    pub fn display(&self) -> String {
        match self {
            TargetSpec::All => "*".to_string(),
            TargetSpec::Ref(r) => r.as_str().to_string(),
        }
    }
}

/// One declarative assertion.
#[derive(Clone, Debug)]
pub struct AssertionSpec {
    /// `None` only for checks that address the whole trace
    /// (`output_count`).
    pub target: Option<TargetSpec>,
    pub check: CheckSpec,
}

#[derive(Clone, Debug)]
pub enum CheckSpec {
    StringEquals {
        expected: String,
        policy: NormalizationPolicy,
    },
    AstEquals {
        expected: String,
        entry_point: EntryPoint,
    },
    HasClass {
        name: String,
    },
    HasAttribute {
        name: String,
        printed_type: String,
    },
    HasMethod {
        name: String,
        return_type: String,
        param_types: Vec<String>,
    },
    MethodSignature(MethodSignatureCheck),
    ContextConditionsClean {
        entry_point: EntryPoint,
    },
    OutputCount {
        count: usize,
    },
}

impl CheckSpec {
    /// Manifest spelling of the check.
    pub fn name(&self) -> &'static str {
        match self {
            CheckSpec::StringEquals { .. } => "string_equals",
            CheckSpec::AstEquals { .. } => "ast_equals",
            CheckSpec::HasClass { .. } => "has_class",
            CheckSpec::HasAttribute { .. } => "has_attribute",
            CheckSpec::HasMethod { .. } => "has_method",
            CheckSpec::MethodSignature(_) => "method_signature",
            CheckSpec::ContextConditionsClean { .. } => "context_conditions_clean",
            CheckSpec::OutputCount { .. } => "output_count",
        }
    }
}

/// The record of which output file was created for which model element.
#[derive(Clone, Debug, Default)]
pub struct OutputTrace {
    pub entries: Vec<TraceEntry>,
}

#[derive(Clone, Debug)]
pub struct TraceEntry {
    /// 0-based traversal index of the element.
    pub index: usize,
    pub reference: QualifiedRef,
    pub file_path: PathBuf,
    pub rendered: String,
}

/// Everything one case run produced.
#[derive(Clone, Debug)]
pub struct TestResult {
    pub case_name: String,
    pub per_assertion: Vec<(AssertionSpec, Verdict)>,
    /// Render, parse, and IO errors hit during the pipeline. Any
    /// diagnostic fails the case, whatever the assertions say.
    pub diagnostics: Vec<String>,
}

impl TestResult {
    pub fn passed(&self) -> bool {
        self.diagnostics.is_empty() && self.per_assertion.iter().all(|(_, v)| v.passed)
    }
}
