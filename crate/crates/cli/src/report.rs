//! Reports rendered either as text or as a JSON tree with the same content.

use serde_json::{json, Map, Value};

use modext_core::{Check, ConditionReport, Matrix, Rational, Subspace, Violation};

use crate::format::{vector_value, write_value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A hypothesis or axiom does not hold; exit status 1.
    Failure(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Item {
    pub key: String,
    pub lines: Vec<String>,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_sha256: Option<String>,
    pub anchors: Vec<String>,
    pub items: Vec<Item>,
    pub status: Status,
}

impl Report {
    pub fn new(command: String, input_sha256: Option<String>) -> Self {
        Report {
            command,
            input_sha256,
            anchors: Vec::new(),
            items: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn anchor(&mut self, text: &str) {
        self.anchors.push(text.to_string());
    }

    pub fn push(&mut self, key: &str, lines: Vec<String>, data: Value) {
        self.items.push(Item {
            key: key.to_string(),
            lines,
            data,
        });
    }

    pub fn line(&mut self, key: &str, line: String, data: Value) {
        self.push(key, vec![line], data);
    }

    pub fn fail(&mut self, reason: impl Into<String>) {
        if self.status == Status::Ok {
            self.status = Status::Failure(reason.into());
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Failure(_) => 1,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("$ modext {}\n", self.command);
        if let Some(d) = &self.input_sha256 {
            out.push_str(&format!("input sha256: {d}\n"));
        }
        for a in &self.anchors {
            out.push_str(&format!("anchor: \"{a}\"\n"));
        }
        for item in &self.items {
            for l in &item.lines {
                out.push_str(l);
                out.push('\n');
            }
        }
        match &self.status {
            Status::Ok => out.push_str("status: ok\n"),
            Status::Failure(r) => out.push_str(&format!("status: failure ({r})\n")),
        }
        out
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert(
            "input_sha256".into(),
            self.input_sha256.clone().map_or(Value::Null, Value::String),
        );
        root.insert(
            "anchors".into(),
            Value::Array(self.anchors.iter().cloned().map(Value::String).collect()),
        );
        let items = self
            .items
            .iter()
            .map(|i| {
                json!({
                    "key": i.key,
                    "summary": i.lines,
                    "data": i.data,
                })
            })
            .collect();
        root.insert("results".into(), Value::Array(items));
        let (status, reason) = match &self.status {
            Status::Ok => ("ok", Value::Null),
            Status::Failure(r) => ("failure", Value::String(r.clone())),
        };
        root.insert("status".into(), Value::String(status.into()));
        root.insert("failure".into(), reason);
        Value::Object(root)
    }

    pub fn render_json(&self) -> String {
        let mut out = String::new();
        write_value(&mut out, &self.to_value(), 0);
        out.push('\n');
        out
    }
}

pub fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn fmt_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// `2·e1 - (1/2)·e3`, or `0`.
pub fn fmt_combination(names: &[String], v: &[Rational]) -> String {
    use num_traits::{One, Signed, Zero};
    let mut out = String::new();
    for (name, c) in names.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() {
            if a.is_integer() {
                out.push_str(&format!("{a}·"));
            } else {
                out.push_str(&format!("({a})·"));
            }
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn fmt_span(names: &[String], s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.basis().iter().map(|v| fmt_combination(names, v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

pub fn subspace_value(s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis().iter().map(|v| vector_value(v)).collect::<Vec<_>>(),
    })
}

pub fn violation_value(v: &Violation) -> Value {
    json!({
        "identity": v.identity,
        "indices": v.indices,
        "lhs": vector_value(&v.lhs),
        "rhs": vector_value(&v.rhs),
    })
}

pub fn fmt_violation(v: &Violation) -> String {
    let idx: Vec<String> = v.indices.iter().map(ToString::to_string).collect();
    format!(
        "{} fails at ({}): lhs = {}, rhs = {}",
        v.identity,
        idx.join(", "),
        fmt_vec(&v.lhs),
        fmt_vec(&v.rhs)
    )
}

pub fn check_value(c: &Check) -> Value {
    json!({
        "name": c.name,
        "description": c.description,
        "checked": c.checked,
        "failures": c.failures,
        "informational": c.informational,
        "skipped": c.skipped,
        "witness": c.witness.as_ref().map(violation_value),
    })
}

/// `name: k/n identities hold`, with the identity itself when `describe` is set.
pub fn check_line(c: &Check, describe: bool) -> String {
    let label = if describe {
        format!("{} [{}]", c.name, c.description)
    } else {
        c.name.clone()
    };
    let tag = if c.informational { " (informational)" } else { "" };
    if let Some(reason) = &c.skipped {
        return format!("{label}{tag}: skipped, {reason}");
    }
    let mut line = format!(
        "{label}{tag}: {}/{} identities hold",
        c.checked - c.failures,
        c.checked
    );
    if let Some(w) = &c.witness {
        line.push_str(&format!("; {}", fmt_violation(w)));
    }
    line
}

pub fn push_checks(report: &mut Report, key: &str, r: &ConditionReport, describe: bool) {
    report.push(
        key,
        r.checks.iter().map(|c| check_line(c, describe)).collect(),
        Value::Array(r.checks.iter().map(check_value).collect()),
    );
}
