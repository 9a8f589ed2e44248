use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hammer_core::{CutGraph, Distribution};

use crate::error::{CliError, CliResult};

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))
}

pub fn read_distribution(path: &Path) -> CliResult<Distribution> {
    let text = read_text(path)?;
    Distribution::from_json_str(&text).map_err(|e| CliError::from(e).context(path.display()))
}

pub fn read_graph(path: &Path) -> CliResult<CutGraph> {
    let text = read_text(path)?;
    CutGraph::from_json_str(&text).map_err(|e| CliError::from(e).context(path.display()))
}

/// Fails unless the directory that would hold `path` exists.
pub fn check_writable(path: &Path) -> CliResult<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    if !parent.is_dir() {
        return Err(CliError::Usage(format!(
            "cannot write {}: directory {} does not exist",
            path.display(),
            parent.display()
        )));
    }
    if path.is_dir() {
        return Err(CliError::Usage(format!(
            "cannot write {}: is a directory",
            path.display()
        )));
    }
    Ok(())
}

/// Buffered outputs, written only after every computation has succeeded.
#[derive(Default)]
pub struct Outputs {
    pending: Vec<(Option<PathBuf>, String)>,
}

impl Outputs {
    /// `None` means standard output.
    pub fn push(&mut self, path: Option<&Path>, contents: String) {
        self.pending.push((path.map(Path::to_path_buf), contents));
    }

    pub fn flush(self) -> CliResult<()> {
        for (path, contents) in self.pending {
            match path {
                Some(p) => fs::write(&p, contents)
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?,
                None => {
                    let mut stdout = std::io::stdout().lock();
                    stdout
                        .write_all(contents.as_bytes())
                        .and_then(|_| stdout.flush())
                        .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))?;
                }
            }
        }
        Ok(())
    }
}

pub fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}
