//! Output plumbing: 17-significant-digit float serialization (lossless
//! for f64), CSV/JSON emission, and atomic file writes.

use crate::CliError;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Render with 17 significant digits; parsing the result recovers the
/// exact bit pattern.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

// serde_json formatter that writes every float through `fmt_f64`.
struct PreciseFloats;

impl serde_json::ser::Formatter for PreciseFloats {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize to a JSON string with lossless floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFloats);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Build a CSV document (header + rows, `\n` line endings) from
/// pre-formatted fields.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer
        .write_record(header)
        .and_then(|_| rows.iter().try_for_each(|row| writer.write_record(row)))
        .map_err(|e| CliError::Input(format!("csv write failed: {e}")))?;
    let buf = writer
        .into_inner()
        .map_err(|e| CliError::Input(format!("csv flush failed: {e}")))?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

/// Write to stdout, or atomically (temp file + rename) to `--output`.
pub fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => write_atomic(path, content),
    }
}

fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
        .map_err(CliError::Io)?;
    tmp.write_all(content.as_bytes()).map_err(CliError::Io)?;
    tmp.persist(path)
        .map_err(|e| CliError::Io(e.error))?;
    Ok(())
}
