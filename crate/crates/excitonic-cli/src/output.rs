//! Output serialization: matrices as row-major [re, im] pairs, deterministic
//! CSV with 17-significant-digit floats, and output-path resolution.

use std::path::{Path, PathBuf};

use excitonic::{ComplexVector, UnitaryMatrix};
use serde_json::{json, Value};

use crate::CliError;

/// Environment variable that redirects relative output paths.
pub const OUT_DIR_ENV: &str = "EXCITONIC_OUT_DIR";

/// Matrix as nested arrays of [re, im] pairs, row-major.
pub fn matrix_json(u: &UnitaryMatrix<f64>) -> Value {
    let n = u.dim();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            let row: Vec<Value> = (0..n)
                .map(|j| {
                    let z = u[(i, j)];
                    json!([z.re, z.im])
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

pub fn vector_populations(v: &ComplexVector<f64>) -> Vec<f64> {
    v.data().iter().map(|z| z.norm_sqr()).collect()
}

pub fn vector_phases(v: &ComplexVector<f64>) -> Vec<f64> {
    v.data().iter().map(|z| z.arg()).collect()
}

/// 17 significant digits; round-trip exact for f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Quote a CSV field when needed (commas, quotes, newlines).
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Resolve an output path against the directory override, if any.
pub fn resolve_out(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

/// Write to the resolved path, or stdout when no path is given.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => {
            let resolved = resolve_out(p);
            if let Some(parent) = resolved.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).map_err(|e| {
                        CliError::config(format!("cannot create {}: {e}", parent.display()))
                    })?;
                }
            }
            std::fs::write(&resolved, content).map_err(|e| {
                CliError::config(format!("cannot write {}: {e}", resolved.display()))
            })
        }
    }
}

pub fn to_pretty_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serialization");
    s.push('\n');
    s
}
