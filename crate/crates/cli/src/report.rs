use bidouble_core::verify::Check;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, results: Value, checks: Vec<Check>) -> Self {
        RunReport { command: command.to_string(), inputs, results, checks }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let v = normalize(serde_json::to_value(self).expect("report serializes"));
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        if let Some(criteria) = self.results.get("criteria").and_then(Value::as_array).filter(|a| a.iter().all(Value::is_object)) {
            for c in criteria {
                let pass = c["pass"].as_bool().unwrap_or(false);
                out.push_str(&format!("criterion {:>2} {} {}\n", c["id"], if pass { "PASS" } else { "FAIL" }, c["title"].as_str().unwrap_or("")));
            }
            return out;
        }
        let mut lines = Vec::new();
        flatten("", &normalize(self.results.clone()), &mut lines);
        for l in lines {
            out.push_str(&format!("  {l}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("[{}] {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name));
            if !c.pass {
                out.push_str(&format!("       witness: {}\n", normalize(c.witness.clone())));
            }
        }
        out
    }
}

/// Round a float to 15 significant digits; `-0` becomes `0`.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Apply [`round15`] to every float in a JSON tree.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().unwrap_or(0.0));
            serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array() && x.as_array().is_some_and(|y| y.iter().any(Value::is_object))) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix} = {s}")),
        other => out.push(format!("{prefix} = {other}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding_and_negative_zero() {
        assert_eq!(round15(-0.0).to_string(), "0");
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(round15(1.0 / 3.0).to_string(), "0.333333333333333");
    }

    #[test]
    fn normalize_walks_nested_values() {
        let v = normalize(json!({ "a": [0.1 + 0.2, { "b": -0.0 }], "c": 3 }));
        assert_eq!(v.to_string(), r#"{"a":[0.3,{"b":0.0}],"c":3}"#);
    }
}
