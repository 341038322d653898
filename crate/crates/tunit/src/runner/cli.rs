//! The `tunit` command line.
//!
//! `tunit run <manifest>` executes every case of a suite; `tunit list
//! <manifest>` prints the case names without executing anything. Exit
//! codes: 0 all cases passed, 1 at least one case failed, 2 the suite
//! could not be loaded or the arguments were invalid.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use super::{load_manifest, run_suite, write_report, ReportFormat, RunOptions};

#[derive(Parser)]
#[command(name = "tunit", about = "Unit tests for code generator templates", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every test case of a manifest.
    Run {
        /// Path to the suite manifest (JSON).
        manifest: PathBuf,
        /// Root for output files; each case writes to <dir>/<case-name>/.
        /// Default: ./tunit-out/<case-name>/.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Report format.
        #[arg(long, value_enum, default_value_t = ReportArg::Text)]
        report: ReportArg,
        /// Stop after the first failing case.
        #[arg(long)]
        fail_fast: bool,
        /// Run only cases whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Print the case names of a manifest without executing them.
    List {
        /// Path to the suite manifest (JSON).
        manifest: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportArg {
    Text,
    Jsonl,
}

impl From<ReportArg> for ReportFormat {
    fn from(arg: ReportArg) -> Self {
        match arg {
            ReportArg::Text => ReportFormat::Text,
            ReportArg::Jsonl => ReportFormat::Jsonl,
        }
    }
}

/// Runs the CLI against explicit arguments and streams, returning the
/// process exit code. `args` includes the program name, like `std::env::args`.
pub fn cli_main<I>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match cli.command {
        Command::List { manifest } => {
            let cases = match load_manifest(&manifest) {
                Ok(cases) => cases,
                Err(e) => {
                    let _ = writeln!(stderr, "tunit: {e}");
                    return 2;
                }
            };
            for case in &cases {
                let _ = writeln!(stdout, "{}", case.name);
            }
            0
        }
        Command::Run {
            manifest,
            output_dir,
            report,
            fail_fast,
            filter,
        } => {
            let cases = match load_manifest(&manifest) {
                Ok(cases) => cases,
                Err(e) => {
                    let _ = writeln!(stderr, "tunit: {e}");
                    return 2;
                }
            };
            let options = RunOptions {
                output_root: output_dir,
                fail_fast,
                filter,
            };
            let results: Vec<_> = run_suite(&cases, &options)
                .into_iter()
                .map(|(_, result)| result)
                .collect();
            if write_report(stdout, &results, report.into()).is_err() {
                return 2;
            }
            if results.iter().all(|r| r.passed()) {
                0
            } else {
                1
            }
        }
    }
}
