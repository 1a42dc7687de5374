//! All-or-nothing output: data lands under its final name only once complete.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

pub enum Sink<'a> {
    Stdout,
    File(&'a Path),
}

impl<'a> From<Option<&'a Path>> for Sink<'a> {
    fn from(p: Option<&'a Path>) -> Self {
        p.map_or(Sink::Stdout, Sink::File)
    }
}

impl Sink<'_> {
    pub fn write(&self, text: &str) -> Result<(), CliError> {
        match self {
            Sink::Stdout => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
            Sink::File(p) => write_file_atomic(p, text),
        }
    }
}

fn parent(path: &Path) -> &Path {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    }
}

/// `data.csv` -> `data.csv.manifest.json`.
pub fn manifest_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(OsString::from).unwrap_or_default();
    name.push(".manifest.json");
    path.with_file_name(name)
}

pub fn write_file_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let mut tmp = tempfile::NamedTempFile::new_in(parent(path))?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

/// Writes `files` into a fresh directory that replaces `dir` in one rename.
pub fn write_dir_atomic(dir: &Path, files: &[(String, String)]) -> Result<(), CliError> {
    let tmp = tempfile::Builder::new().prefix(".udw-out-").tempdir_in(parent(dir))?;
    for (name, text) in files {
        std::fs::write(tmp.path().join(name), text)?;
    }
    if dir.is_dir() {
        std::fs::remove_dir_all(dir)?;
    } else if dir.exists() {
        return Err(CliError::Io(format!("{} exists and is not a directory", dir.display())));
    }
    let staged = tmp.keep();
    std::fs::rename(&staged, dir).map_err(|e| {
        let _ = std::fs::remove_dir_all(&staged);
        CliError::Io(e.to_string())
    })?;
    Ok(())
}
