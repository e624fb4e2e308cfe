use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use barron_core::error::Error as CoreError;
use barron_core::{BandlimitedFunction, FourierCoefficients, GridFunction};
use serde::de::DeserializeOwned;

/// A failure carrying its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

pub const INPUT: u8 = 2;
pub const PRECISION: u8 = 3;

impl Failure {
    pub fn input(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: INPUT, error: error.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

/// Precision errors exit with 3, every other library error with 2.
impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = if matches!(e, CoreError::Precision(_)) { PRECISION } else { INPUT };
        Failure { code, error: e.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        match error.downcast_ref::<CoreError>() {
            Some(CoreError::Precision(_)) => Failure { code: PRECISION, error },
            _ => Failure::input(error),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::input)
}

/// Deserializes `text`; the message keeps serde's line and column.
pub fn parse<T: DeserializeOwned>(text: &str, path: &Path) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Failure::input(anyhow!("{}: {e}", path.display())))
}

/// Any of the three self-describing file kinds.
pub enum Input {
    Grid(GridFunction),
    Coefficients(FourierCoefficients),
    Function(BandlimitedFunction),
}

/// Picks the file kind by its distinguishing key: `samples`, `data` or `modes`.
pub fn load_input(path: &Path) -> CliResult<Input> {
    let text = read_text(path)?;
    let value: serde_json::Value = parse(&text, path)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Failure::input(anyhow!("{}: top level must be a JSON object", path.display())))?;
    if obj.contains_key("samples") {
        parse(&text, path).map(Input::Grid)
    } else if obj.contains_key("data") {
        parse(&text, path).map(Input::Coefficients)
    } else if obj.contains_key("modes") {
        parse(&text, path).map(Input::Function)
    } else {
        Err(Failure::input(anyhow!(
            "{}: expected a grid (\"samples\"), coefficients (\"data\") or function (\"modes\") file",
            path.display()
        )))
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut builder = tempfile::Builder::new();
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        builder.permissions(fs::Permissions::from_mode(0o644));
    }
    let mut tmp = builder
        .prefix(".barron-")
        .tempfile_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes).with_context(|| format!("cannot write {}", path.display()))?;
    tmp.persist(path)
        .map_err(|e| anyhow!("cannot write {}: {}", path.display(), e.error))?;
    Ok(())
}

/// Pretty JSON with a trailing newline, to `path` or stdout.
pub fn emit<T: serde::Serialize>(value: &T, path: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::input(anyhow!(e)))?;
    text.push('\n');
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
