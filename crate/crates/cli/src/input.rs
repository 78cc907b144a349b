use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;

use crate::error::{CliError, CliResult};

/// `@path` reads a file; anything else is taken literally.
pub fn text(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => read(Path::new(path)),
        None => Ok(arg.to_string()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: PathBuf::from(path),
        source,
    })
}

/// Contents of `@path` or of an existing file `path`, else the argument
/// itself; paired with a name for error messages.
pub fn source(arg: &str) -> CliResult<(String, String)> {
    if let Some(path) = arg.strip_prefix('@') {
        Ok((path.to_string(), read(Path::new(path))?))
    } else if !arg.trim_start().starts_with('{') && Path::new(arg).is_file() {
        Ok((arg.to_string(), read(Path::new(arg))?))
    } else {
        Ok(("argument".to_string(), arg.to_string()))
    }
}

pub fn looks_like_json(src: &str) -> bool {
    src.trim_start().starts_with('{')
}

pub fn parse_json<T: DeserializeOwned>(origin: &str, src: &str) -> CliResult<T> {
    serde_json::from_str(src).map_err(|source| CliError::Json {
        origin: origin.to_string(),
        source,
    })
}

/// JSON from `@path`, a plain path, or an inline object. A bare argument
/// that is neither is reported as a missing file.
pub fn json<T: DeserializeOwned>(arg: &str) -> CliResult<T> {
    let (origin, src) = source(arg)?;
    if origin == "argument" && !looks_like_json(&src) {
        return Err(CliError::Io {
            path: PathBuf::from(arg),
            source: std::io::Error::from(std::io::ErrorKind::NotFound),
        });
    }
    parse_json(&origin, &src)
}
