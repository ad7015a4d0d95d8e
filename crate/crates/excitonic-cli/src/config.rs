//! Config document loading and `--set` overrides.
//!
//! Every invocation reads one JSON document (or starts from `{}`), applies
//! dotted-path overrides, and deserializes the result into the command's
//! typed config. Keeping the whole input in one diffable document is what
//! makes sweep runs reproducible.

use std::path::Path;

use serde_json::Value;

use crate::CliError;

/// Load the config document, or an empty object when no path is given.
pub fn load(path: Option<&Path>) -> Result<Value, CliError> {
    match path {
        None => Ok(Value::Object(serde_json::Map::new())),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::config(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::config(format!("invalid JSON in {}: {e}", p.display())))
        }
    }
}

/// Apply `--set path.to.key=value` overrides. Values parse as JSON when
/// possible and fall back to strings.
pub fn apply_overrides(doc: &mut Value, sets: &[String]) -> Result<(), CliError> {
    for s in sets {
        let (path, raw) = s
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("--set needs key=value, got {s:?}")))?;
        let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
        set_path(doc, path, value)?;
    }
    Ok(())
}

/// Set a dotted path inside a JSON document, creating intermediate objects.
pub fn set_path(doc: &mut Value, path: &str, value: Value) -> Result<(), CliError> {
    let mut cursor = doc;
    let parts: Vec<&str> = path.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::config(format!("bad override path {path:?}")));
    }
    for key in &parts[..parts.len() - 1] {
        if !cursor.is_object() {
            return Err(CliError::config(format!(
                "override path {path:?} crosses a non-object"
            )));
        }
        cursor = cursor
            .as_object_mut()
            .expect("checked object")
            .entry(key.to_string())
            .or_insert_with(|| Value::Object(serde_json::Map::new()));
    }
    match cursor.as_object_mut() {
        Some(map) => {
            map.insert(parts[parts.len() - 1].to_string(), value);
            Ok(())
        }
        None => Err(CliError::config(format!(
            "override path {path:?} crosses a non-object"
        ))),
    }
}

/// Deserialize the document into the command's typed config.
pub fn parse<T: serde::de::DeserializeOwned>(doc: Value) -> Result<T, CliError> {
    serde_json::from_value(doc).map_err(|e| CliError::config(format!("invalid config: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn overrides_create_and_replace_nested_values() {
        let mut doc = json!({"drive": {"epsilon": 1.0}});
        apply_overrides(
            &mut doc,
            &[
                "drive.epsilon=2.5".to_string(),
                "drive.amplitude=0.3".to_string(),
                "integrator.scheme=fourth-order-magnus".to_string(),
            ],
        )
        .unwrap();
        assert_eq!(doc["drive"]["epsilon"], json!(2.5));
        assert_eq!(doc["drive"]["amplitude"], json!(0.3));
        assert_eq!(doc["integrator"]["scheme"], json!("fourth-order-magnus"));
    }

    #[test]
    fn overrides_reject_bad_shapes() {
        let mut doc = json!({"time": 1.0});
        assert!(apply_overrides(&mut doc, &["no_equals_sign".to_string()]).is_err());
        assert!(apply_overrides(&mut doc, &["time.nested=1".to_string()]).is_err());
        assert!(apply_overrides(&mut doc, &["a..b=1".to_string()]).is_err());
    }
}
