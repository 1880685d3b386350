//! Text reports: tool version, input digests, named sections, exit status.
//! Rendering depends only on the fields, so fixed inputs give fixed bytes.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    ChecksFailed = 1,
    Usage = 2,
    GuardExceeded = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// The more severe of two statuses; failed checks outrank a guard.
    pub fn worst(self, other: ExitStatus) -> ExitStatus {
        let rank = |s: ExitStatus| match s {
            ExitStatus::Ok => 0,
            ExitStatus::GuardExceeded => 1,
            ExitStatus::ChecksFailed => 2,
            ExitStatus::Usage => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    /// `(name, sha256)` in argument order.
    pub inputs: Vec<(String, String)>,
    pub parameters: Vec<(String, String)>,
    pub sections: Vec<Section>,
    pub status: ExitStatus,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: Vec::new(), parameters: Vec::new(), sections: Vec::new(), status: ExitStatus::Ok }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push((name.into(), sha256_hex(bytes)));
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.push((key.into(), value.to_string()));
    }

    pub fn section(&mut self, name: impl Into<String>, lines: Vec<String>) {
        self.sections.push(Section { name: name.into(), lines });
    }

    pub fn section_mut(&mut self, name: &str) -> Option<&mut Section> {
        self.sections.iter_mut().find(|s| s.name == name)
    }

    pub fn escalate(&mut self, status: ExitStatus) {
        self.status = self.status.worst(status);
    }

    pub fn render(&self) -> String {
        let mut s = format!("tool hypercx {TOOL_VERSION}\ncommand {}\n", self.command);
        for (name, digest) in &self.inputs {
            let _ = writeln!(s, "input {name} sha256 {digest}");
        }
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "param {k} {v}");
        }
        for sec in &self.sections {
            let _ = writeln!(s, "[{}]", sec.name);
            for l in &sec.lines {
                let _ = writeln!(s, "  {l}");
            }
        }
        let _ = writeln!(s, "exit {}", self.status.code());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_stable() {
        let mut r = Report::new("demo");
        r.input("a.g", b"a:\n");
        r.param("seed", 7);
        r.section("s", vec!["x 1".into()]);
        r.escalate(ExitStatus::GuardExceeded);
        r.escalate(ExitStatus::ChecksFailed);
        r.escalate(ExitStatus::GuardExceeded);
        let text = r.render();
        assert_eq!(text, r.clone().render());
        assert!(text.starts_with(&format!("tool hypercx {TOOL_VERSION}\ncommand demo\ninput a.g sha256 ")));
        assert!(text.ends_with("param seed 7\n[s]\n  x 1\nexit 1\n"));
        assert_eq!(sha256_hex(b"").len(), 64);
    }
}
