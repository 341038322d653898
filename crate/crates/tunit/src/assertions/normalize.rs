//! Configurable string normalization.

/// Five independent normalization flags, all off by default. Applying a
/// policy twice gives the same result as applying it once.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NormalizationPolicy {
    /// `\r\n` becomes `\n`.
    pub normalize_line_endings: bool,
    /// Spaces, tabs, and stray carriage returns at the end of each line are
    /// dropped. The `\r` is part of the trim set so trimming can never
    /// leave a line-final `\r` that would re-form a CRLF on rejoin.
    pub ignore_trailing_whitespace: bool,
    /// Leading whitespace of each line is dropped.
    pub ignore_indentation: bool,
    /// Lines that are empty or whitespace-only are dropped.
    pub ignore_blank_lines: bool,
    /// Every run of spaces and tabs becomes a single space.
    pub collapse_inner_whitespace: bool,
}

impl NormalizationPolicy {
    /// Everything off: plain byte equality.
    pub fn none() -> Self {
        Self::default()
    }

    /// Every flag on.
    pub fn all() -> Self {
        Self {
            normalize_line_endings: true,
            ignore_trailing_whitespace: true,
            ignore_indentation: true,
            ignore_blank_lines: true,
            collapse_inner_whitespace: true,
        }
    }

    /// The combination that makes string comparison agree with
    /// token-sequence equality as long as no whitespace run crosses zero:
    /// line endings, indentation, blank lines, and inner runs.
    pub fn structural() -> Self {
        Self {
            normalize_line_endings: true,
            ignore_trailing_whitespace: false,
            ignore_indentation: true,
            ignore_blank_lines: true,
            collapse_inner_whitespace: true,
        }
    }

    pub fn normalize(&self, text: &str) -> String {
        let text = if self.normalize_line_endings {
            convert_line_endings(text)
        } else {
            text.to_string()
        };
        let mut lines: Vec<String> = text.split('\n').map(|l| l.to_string()).collect();
        for line in &mut lines {
            if self.ignore_indentation {
                *line = line.trim_start_matches([' ', '\t']).to_string();
            }
            if self.ignore_trailing_whitespace {
                *line = line.trim_end_matches([' ', '\t', '\r']).to_string();
            }
            if self.collapse_inner_whitespace {
                *line = collapse_runs(line);
            }
        }
        if self.ignore_blank_lines {
            lines.retain(|l| !l.trim_matches([' ', '\t', '\r']).is_empty());
        }
        lines.join("\n")
    }
}

/// Drops every carriage return directly preceding a line feed. Runs of
/// `\r` before one `\n` are dropped as a whole — a naive `\r\n` → `\n`
/// replacement would re-form a CRLF from `\r\r\n` and not be idempotent.
fn convert_line_endings(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_crs = 0usize;
    for c in text.chars() {
        match c {
            '\r' => pending_crs += 1,
            '\n' => {
                pending_crs = 0;
                out.push('\n');
            }
            other => {
                for _ in 0..pending_crs {
                    out.push('\r');
                }
                pending_crs = 0;
                out.push(other);
            }
        }
    }
    for _ in 0..pending_crs {
        out.push('\r');
    }
    out
}

fn collapse_runs(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let mut in_run = false;
    for c in line.chars() {
        if c == ' ' || c == '\t' {
            if !in_run {
                out.push(' ');
                in_run = true;
            }
        } else {
            out.push(c);
            in_run = false;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policies() -> Vec<NormalizationPolicy> {
        // All 32 flag combinations.
        (0..32u8)
            .map(|bits| NormalizationPolicy {
                normalize_line_endings: bits & 1 != 0,
                ignore_trailing_whitespace: bits & 2 != 0,
                ignore_indentation: bits & 4 != 0,
                ignore_blank_lines: bits & 8 != 0,
                collapse_inner_whitespace: bits & 16 != 0,
            })
            .collect()
    }

    #[test]
    fn default_policy_is_identity() {
        let text = "  a\tb \r\n\n c ";
        assert_eq!(NormalizationPolicy::none().normalize(text), text);
    }

    #[test]
    fn each_flag_does_its_job() {
        let p = NormalizationPolicy {
            normalize_line_endings: true,
            ..Default::default()
        };
        assert_eq!(p.normalize("a\r\nb"), "a\nb");

        let p = NormalizationPolicy {
            ignore_trailing_whitespace: true,
            ..Default::default()
        };
        assert_eq!(p.normalize("a \t\nb"), "a\nb");

        let p = NormalizationPolicy {
            ignore_indentation: true,
            ..Default::default()
        };
        assert_eq!(p.normalize("  a\n\tb"), "a\nb");

        let p = NormalizationPolicy {
            ignore_blank_lines: true,
            ..Default::default()
        };
        assert_eq!(p.normalize("a\n \n\nb"), "a\nb");

        let p = NormalizationPolicy {
            collapse_inner_whitespace: true,
            ..Default::default()
        };
        assert_eq!(p.normalize("a  \t b"), "a b");
    }

    #[test]
    fn normalization_is_idempotent_for_every_policy() {
        let samples = [
            "public  int x ;",
            "  indented\r\n\r\n  and blank\t\t\n",
            "a\n\n\n b\t c  \n",
            "",
            "\r\n",
            "one line",
        ];
        for policy in policies() {
            for s in samples {
                let once = policy.normalize(s);
                let twice = policy.normalize(&once);
                assert_eq!(once, twice, "policy {policy:?} not idempotent on {s:?}");
            }
        }
    }
}
