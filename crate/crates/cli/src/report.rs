//! Run reports: named checks with pass/fail status, a counterexample when
//! one exists, and timing. The JSON and text renderings carry the same
//! data.

use std::time::{Duration, Instant};

use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Short human detail; holds the counterexample when the check failed.
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Runs a closure as a named check: `Ok(None)` passes, `Ok(Some(msg))`
    /// fails with a counterexample message, `Err` fails with the error.
    pub fn run<F>(&mut self, name: &str, f: F)
    where
        F: FnOnce() -> Result<Option<String>, cable_core::Error>,
    {
        let start = Instant::now();
        let (passed, detail) = match f() {
            Ok(None) => (true, String::new()),
            Ok(Some(counterexample)) => (false, counterexample),
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check {
            name: name.to_owned(),
            passed,
            detail,
            elapsed: start.elapsed(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "[{status}] {} ({:.3}s)",
                c.name,
                c.elapsed.as_secs_f64()
            ));
            if !c.detail.is_empty() {
                out.push_str(&format!(": {}", c.detail));
            }
            out.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            failed
        ));
        out
    }

    pub fn render_json(&self) -> Value {
        json!({
            "command": self.command,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": if c.passed { "pass" } else { "fail" },
                "detail": c.detail,
                "elapsed_ms": c.elapsed.as_millis() as u64,
            })).collect::<Vec<_>>(),
            "failed": self.checks.iter().filter(|c| !c.passed).count(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings_agree() {
        let mut r = RunReport::new("demo");
        r.run("ok-check", || Ok(None));
        r.run("bad-check", || Ok(Some("x^2 - 1".into())));
        assert!(!r.all_passed());
        let text = r.render_text();
        assert!(text.contains("[PASS] ok-check"));
        assert!(text.contains("[FAIL] bad-check"));
        assert!(text.contains("x^2 - 1"));
        let j = r.render_json();
        assert_eq!(j["checks"][0]["status"], "pass");
        assert_eq!(j["checks"][1]["status"], "fail");
        assert_eq!(j["checks"][1]["detail"], "x^2 - 1");
        assert_eq!(j["failed"], 1);
    }
}
