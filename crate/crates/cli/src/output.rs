use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;

/// The invocation as a shell-like string.
pub fn command_line() -> String {
    let mut parts = vec!["genbern".to_string()];
    for arg in std::env::args().skip(1) {
        let plain = !arg.is_empty() && arg.chars().all(|c| c.is_ascii_alphanumeric() || "-_./:=,+".contains(c));
        parts.push(if plain { arg } else { format!("'{}'", arg.replace('\'', "'\\''")) });
    }
    parts.join(" ")
}

fn emit(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Pretty JSON; object keys come out sorted.
pub fn json(value: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(text.as_bytes(), out)
}

/// RFC 4180 CSV preceded by comment rows (`# ...`) holding the command line
/// and any notes.
pub fn csv(notes: &[String], header: &[&str], rows: &[Vec<String>], out: Option<&Path>) -> Result<()> {
    let mut buf = Vec::new();
    writeln!(buf, "# {}", command_line())?;
    for note in notes {
        writeln!(buf, "# {note}")?;
    }
    {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(&mut buf);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    emit(&buf, out)
}
