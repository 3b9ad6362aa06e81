//! One JSON value per line.

use std::io::{BufRead, Write};

use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum JsonlError {
    #[error("line {line}: {error}")]
    Parse {
        line: usize,
        error: serde_json::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Serialize(serde_json::Error),
}

pub fn write_jsonl<T: Serialize, W: Write>(mut out: W, records: &[T]) -> Result<(), JsonlError> {
    for r in records {
        serde_json::to_writer(&mut out, r).map_err(JsonlError::Serialize)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn to_jsonl_string<T: Serialize>(records: &[T]) -> Result<String, JsonlError> {
    let mut buf = Vec::new();
    write_jsonl(&mut buf, records)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Blank lines are skipped; line numbers in errors are 1-based.
pub fn read_jsonl<T: DeserializeOwned, R: BufRead>(input: R) -> Result<Vec<T>, JsonlError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line)
                .map_err(|error| JsonlError::Parse { line: i + 1, error })?,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_line_numbers() {
        let text = to_jsonl_string(&[1u32, 2, 3]).unwrap();
        assert_eq!(text, "1\n2\n3\n");
        let back: Vec<u32> = read_jsonl(text.as_bytes()).unwrap();
        assert_eq!(back, [1, 2, 3]);
        let err = read_jsonl::<u32, _>("1\n\nx\n".as_bytes()).unwrap_err();
        assert!(matches!(err, JsonlError::Parse { line: 3, .. }));
    }
}
