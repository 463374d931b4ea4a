//! Single-field mutations of certificate JSON, for tamper testing.

use rand::Rng;
use serde_json::Value;

fn leaves(v: &Value, path: &mut Vec<String>, out: &mut Vec<(String, Vec<String>)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                path.push(k.clone());
                leaves(x, path, out);
                path.pop();
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                path.push(i.to_string());
                leaves(x, path, out);
                path.pop();
            }
        }
        Value::Null => {}
        _ => {
            let field = path
                .iter()
                .map(|p| if p.parse::<usize>().is_ok() { "[]" } else { p.as_str() })
                .collect::<Vec<_>>()
                .join(".");
            out.push((field, path.clone()));
        }
    }
}

/// Changes one leaf of `doc`: numbers move by one, booleans flip, strings
/// grow a character. The field is chosen uniformly among distinct field
/// paths (array positions collapsed), then the leaf uniformly within it.
/// Returns the concrete path of the mutated leaf.
pub fn mutate_one<R: Rng + ?Sized>(doc: &mut Value, rng: &mut R) -> String {
    let mut all = Vec::new();
    leaves(doc, &mut Vec::new(), &mut all);
    let mut fields: Vec<&str> = all.iter().map(|(f, _)| f.as_str()).collect();
    fields.sort_unstable();
    fields.dedup();
    let field = fields[rng.random_range(0..fields.len())].to_string();
    let candidates: Vec<&Vec<String>> = all.iter().filter(|(f, _)| *f == field).map(|(_, p)| p).collect();
    let path = candidates[rng.random_range(0..candidates.len())].clone();
    let mut slot = &mut *doc;
    for p in &path {
        slot = match slot {
            Value::Object(map) => map.get_mut(p).unwrap(),
            Value::Array(xs) => &mut xs[p.parse::<usize>().unwrap()],
            _ => unreachable!(),
        };
    }
    *slot = match slot.take() {
        Value::Bool(b) => Value::Bool(!b),
        Value::Number(n) => {
            let v = n.as_u64().expect("certificates hold unsigned integers");
            Value::from(if v > 0 && rng.random_bool(0.5) { v - 1 } else { v + 1 })
        }
        Value::String(s) => Value::String(s + "~"),
        other => other,
    };
    path.join(".")
}
