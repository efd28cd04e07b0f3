use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use arens_core::algebra::StructureAlgebra;
use arens_core::io::{algebra_from_json, module_from_json};
use arens_core::modules::RModule;
use serde_json::Value;

use crate::Failure;

pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::input(format!(
            "{}: malformed JSON at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn relative_to(base: &Path, name: &str) -> PathBuf {
    let p = Path::new(name);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(p)
    }
}

pub fn algebra_value(v: &Value, path: &Path) -> Result<StructureAlgebra, Failure> {
    algebra_from_json(v).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn load_algebra(path: &Path) -> Result<StructureAlgebra, Failure> {
    algebra_value(&read_json(path)?, path)
}

/// The `"algebra"` entry may be inline or a path relative to the module file.
pub fn module_value(v: &Value, path: &Path) -> Result<RModule, Failure> {
    let algebra = match v.get("algebra") {
        Some(Value::String(name)) => load_algebra(&relative_to(path, name))?,
        Some(inline @ Value::Object(_)) => algebra_value(inline, path)?,
        _ => {
            return Err(Failure::input(format!(
                "{}: module needs an \"algebra\" object or path",
                path.display()
            )))
        }
    };
    module_from_json(v, Arc::new(algebra)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn load_module(path: &Path) -> Result<RModule, Failure> {
    module_value(&read_json(path)?, path)
}

/// A string under `key` names an algebra file, relative to `base` when given.
pub fn inline_algebra_param(
    params: &mut BTreeMap<String, Value>,
    key: &str,
    base: Option<&Path>,
) -> Result<(), Failure> {
    if let Some(Value::String(name)) = params.get(key) {
        let path = match base {
            Some(b) => relative_to(b, name),
            None => PathBuf::from(name),
        };
        params.insert(key.to_string(), read_json(&path)?);
    }
    Ok(())
}

/// Resolves string entries of a tower's `"algebras"` list against the spec file.
pub fn inline_tower(params: &mut serde_json::Map<String, Value>, path: &Path) -> Result<(), Failure> {
    if let Some(Value::Array(items)) = params.get_mut("algebras") {
        for item in items.iter_mut() {
            if let Value::String(name) = item {
                *item = read_json(&relative_to(path, name))?;
            }
        }
    }
    Ok(())
}
