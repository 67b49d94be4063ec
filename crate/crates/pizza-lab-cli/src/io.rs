use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.into(), msg: e.to_string() })
}

/// Fails early when the directory that would receive `path` does not exist.
pub fn check_writable(path: &Path) -> Result<(), CliError> {
    let dir = parent(path);
    if dir.is_dir() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("output directory {} does not exist", dir.display())))
    }
}

fn parent(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.into(), source };
    let mut tmp = tempfile::NamedTempFile::new_in(parent(path)).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes JSON to `out`, or prints it when no path is given.
pub fn emit<T: Serialize>(out: Option<&Path>, v: &T) -> Result<(), CliError> {
    let s = to_json(v);
    match out {
        Some(p) => write_atomic(p, &s),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}
