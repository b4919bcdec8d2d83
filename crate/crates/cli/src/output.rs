//! Result documents and their JSON and text renderings.

use bpfkit::abelian::GroupElement;
use bpfkit::mds::Face;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ResultDocument {
    pub command: String,
    pub files: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub values: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Timing {
    pub elapsed_micros: u64,
}

impl ResultDocument {
    pub fn new(command: &str, files: Vec<String>) -> Self {
        ResultDocument { command: command.to_owned(), files, ..Default::default() }
    }

    pub fn value(&mut self, key: &str, v: Value) -> &mut Self {
        self.values.insert(key.to_owned(), v);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        out += &format!("files: {}\n", self.files.join(" "));
        if let Some(v) = self.verdict {
            out += &format!("verdict: {v}\n");
        }
        for (k, v) in &self.values {
            out += &format!("{k}: {}\n", text(v));
        }
        if let Some(w) = &self.witness {
            out += &format!("witness: {}\n", text(w));
        }
        for w in &self.warnings {
            out += &format!("warning: {w}\n");
        }
        if let Some(t) = &self.timing {
            out += &format!("elapsed: {} us\n", t.elapsed_micros);
        }
        out
    }
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn element(g: &GroupElement) -> Value {
    json!({ "free": ints(g.free()), "torsion": ints(g.torsion()) })
}

/// Elements sorted by coordinates, so the output does not depend on
/// internal ordering.
pub fn elements(gs: &[GroupElement]) -> Value {
    let mut gs: Vec<&GroupElement> = gs.iter().collect();
    gs.sort_by_key(|g| g.coords());
    Value::Array(gs.into_iter().map(element).collect())
}

pub fn face(f: Face) -> Value {
    Value::Array(f.indices().into_iter().map(|i| Value::from(i + 1)).collect())
}

pub fn faces(fs: &[Face]) -> Value {
    Value::Array(fs.iter().map(|&f| face(f)).collect())
}

pub fn vectors(vs: &[Vec<BigInt>]) -> Value {
    Value::Array(vs.iter().map(|v| ints(v)).collect())
}

/// Compact text form. Elements print in the `free;torsion` syntax.
fn text(v: &Value) -> String {
    match v {
        Value::Object(m) if m.len() == 2 && m.contains_key("free") && m.contains_key("torsion") => {
            let join = |v: &Value| v.as_array().map(|a| a.iter().map(text).collect::<Vec<_>>().join(",")).unwrap_or_default();
            let t = join(&m["torsion"]);
            if t.is_empty() {
                format!("[{}]", join(&m["free"]))
            } else {
                format!("[{};{t}]", join(&m["free"]))
            }
        }
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", text(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        Value::Array(a) => format!("[{}]", a.iter().map(text).collect::<Vec<_>>().join(",")),
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}
