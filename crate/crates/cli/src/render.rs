use serde_json::Value;

/// JSON reports are pretty-printed with sorted keys, so equal inputs give
/// equal bytes.
pub fn json(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn walk(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                walk(out, &key, x);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                walk(out, &format!("{prefix}[{i}]"), x);
            }
        }
        other => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&inline(other));
            out.push('\n');
        }
    }
}

/// One `path: value` line per leaf.
pub fn text(report: &Value, timestamp: Option<String>) -> String {
    let mut out = String::new();
    if let Some(t) = timestamp {
        out.push_str(&format!("generated: {t}\n"));
    }
    walk(&mut out, "", report);
    out
}
