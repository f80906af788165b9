//! Command reports: a human-readable text view and a JSON mirror with sorted
//! keys, both deterministic for fixed input.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Ok,
    ParseError,
    CheckFailed,
    Precondition,
}

impl Status {
    /// 0 success, 1 parse error, 2 failed mathematical check, 3 violated
    /// precondition.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::ParseError => 1,
            Status::CheckFailed => 2,
            Status::Precondition => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::ParseError => "parse error",
            Status::CheckFailed => "check failed",
            Status::Precondition => "precondition violated",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub lines: Vec<String>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            status: Status::Ok,
            lines: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.to_string(), value.into());
    }

    /// Records a failure; the first failure decides the status.
    pub fn fail(&mut self, status: Status, message: impl Into<String>) {
        let message = message.into();
        if self.status == Status::Ok {
            self.status = status;
        }
        self.lines.push(format!("error: {message}"));
        let errors = self.data.entry("errors").or_insert_with(|| Value::Array(Vec::new()));
        if let Value::Array(v) = errors {
            v.push(Value::String(message));
        }
    }

    /// Shorthand for a report that stops at an error.
    pub fn error(command: impl Into<String>, status: Status, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        r.fail(status, message);
        r
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn text(&self) -> String {
        let mut out = format!("$ cdga-config {}\n", self.command);
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!("status: {}\n", self.status.as_str()));
        out
    }

    pub fn json(&self) -> String {
        let mut m = self.data.clone();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("status".into(), Value::String(self.status.as_str().into()));
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Betti vector as `1 0 1`.
pub fn betti_line(b: &[usize]) -> String {
    b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted() {
        let mut r = Report::new("check s2");
        r.set("zeta", 1);
        r.set("alpha", "a");
        let j = r.json();
        let a = j.find("\"alpha\"").unwrap();
        let c = j.find("\"command\"").unwrap();
        let z = j.find("\"zeta\"").unwrap();
        assert!(a < c && c < z);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn first_failure_wins() {
        let mut r = Report::new("x");
        r.fail(Status::Precondition, "a");
        r.fail(Status::CheckFailed, "b");
        assert_eq!(r.exit_code(), 3);
        assert!(r.text().contains("error: b"));
    }
}
