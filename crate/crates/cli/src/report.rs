//! Deterministic report rendering: every verb fills one `Report`, which is
//! emitted once, in full, as text or JSON (schema 1). JSON keys are sorted
//! (serde_json's default map), so identical inputs give identical bytes.

use algk_core::algebra::{FdAlgebra, Morphism};
use algk_core::linalg::Matrix;
use serde_json::{json, Map, Value};

pub struct Report {
    verb: &'static str,
    fields: Map<String, Value>,
    lines: Vec<String>,
}

impl Report {
    pub fn new(verb: &'static str) -> Self {
        Report {
            verb,
            fields: Map::new(),
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn field(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    pub fn bool_field(&mut self, key: &str, value: bool) {
        self.field(key, Value::Bool(value));
        self.line(format!("{key}: {value}"));
    }

    pub fn dim_field(&mut self, key: &str, value: usize) {
        self.field(key, json!(value));
        self.line(format!("{key}: {value}"));
    }

    pub fn text_field(&mut self, key: &str, value: &str) {
        self.field(key, Value::String(value.to_string()));
        self.line(format!("{key}: {value}"));
    }

    /// Adds an algebra in both representations under the given key.
    pub fn algebra(&mut self, key: &str, a: &FdAlgebra) {
        self.field(key, algebra_json(a));
        self.line(format!("{key}:"));
        for l in a.to_string().lines() {
            self.line(format!("  {l}"));
        }
    }

    pub fn morphism(&mut self, key: &str, f: &Morphism) {
        let mut obj = Map::new();
        obj.insert("matrix".into(), matrix_json(f.matrix()));
        obj.insert("injective".into(), Value::Bool(f.is_injective()));
        obj.insert("surjective".into(), Value::Bool(f.is_surjective()));
        obj.insert("isomorphism".into(), Value::Bool(f.is_isomorphism()));
        self.field(key, Value::Object(obj));
        self.line(format!(
            "{key}: {} (injective: {}, surjective: {})",
            matrix_text(f.matrix()),
            f.is_injective(),
            f.is_surjective()
        ));
    }

    pub fn render(&self, json_mode: bool) -> String {
        if json_mode {
            let mut top = Map::new();
            top.insert("schema".into(), json!(1));
            top.insert("verb".into(), Value::String(self.verb.to_string()));
            for (k, v) in &self.fields {
                top.insert(k.clone(), v.clone());
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
            s.push('\n');
            s
        } else {
            let mut s = String::new();
            for l in &self.lines {
                s.push_str(l);
                s.push('\n');
            }
            s
        }
    }
}

pub fn algebra_json(a: &FdAlgebra) -> Value {
    let dim = a.dim();
    let mut products = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let v = a.basis_product_dense(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                products.push(json!({
                    "left": a.basis_names()[i],
                    "right": a.basis_names()[j],
                    "value": v.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }));
            }
        }
    }
    json!({
        "field": a.field().to_string(),
        "dim": dim,
        "basis": a.basis_names(),
        "products": products,
    })
}

pub fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|c| c.to_string()).collect())
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
}

pub fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = m.row(i).iter().map(|c| c.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(" "))
}
