//! Sample files.
//!
//! `Text` is one decimal literal per line; blank lines and lines whose first
//! non-space character is `#` are skipped. A leading U+2212 minus sign is
//! read as `-` (and then rejected, since samples live on `[0, ∞)`).
//! `RawF64` is packed little-endian IEEE-754 doubles.
//!
//! File data is split four ways round-robin on input order: sample `j` goes
//! to split `j mod 4` and a remainder of fewer than four trailing samples is
//! dropped. This keeps exchangeability for i.i.d. input. Time-ordered data
//! should be shuffled first.

use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::slice::ParallelSliceMut;
use tailprobe_core::SortedSampleSplit;

use crate::error::{Error, Result};

/// On-disk sample encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum SampleFormat {
    /// Newline-delimited decimals.
    #[default]
    Text,
    /// Little-endian 64-bit floats.
    #[value(name = "f64")]
    RawF64,
}

fn check(value: f64, location: impl FnOnce() -> String) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::SampleDomain {
            location: location(),
            value,
        })
    }
}

/// Parses text samples in input order.
pub fn parse_text(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let normalised;
        let token = match line.strip_prefix('\u{2212}') {
            Some(rest) => {
                normalised = format!("-{rest}");
                normalised.as_str()
            }
            None => line,
        };
        let value: f64 = token.parse().map_err(|_| Error::Parse {
            line: n + 1,
            text: line.to_string(),
        })?;
        out.push(check(value, || format!("line {}", n + 1))?);
    }
    Ok(out)
}

/// Decodes packed little-endian doubles in input order.
pub fn parse_raw(bytes: &[u8]) -> Result<Vec<f64>> {
    let tail = bytes.len() % 8;
    if tail != 0 {
        return Err(Error::RawLength {
            len: bytes.len(),
            offset: bytes.len() - tail,
        });
    }
    bytes
        .chunks_exact(8)
        .enumerate()
        .map(|(j, c)| {
            let v = f64::from_le_bytes(c.try_into().expect("chunk of 8"));
            check(v, || format!("byte offset {}", 8 * j))
        })
        .collect()
}

/// Reads every sample of a file, in file order.
pub fn read_samples(path: &Path, format: SampleFormat) -> Result<Vec<f64>> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    match format {
        SampleFormat::Text => parse_text(&fs::read_to_string(path).map_err(io_err)?),
        SampleFormat::RawF64 => parse_raw(&fs::read(path).map_err(io_err)?),
    }
}

/// Sorts in parallel and wraps the result.
pub fn sort_split(mut values: Vec<f64>) -> Result<SortedSampleSplit> {
    values.par_sort_unstable_by(f64::total_cmp);
    Ok(SortedSampleSplit::from_sorted(values)?)
}

/// Deals `values` into `parts` piles round-robin, dropping the remainder.
pub fn split_round_robin(values: &[f64], parts: usize) -> Vec<Vec<f64>> {
    let per = values.len() / parts;
    (0..parts)
        .map(|p| {
            values
                .iter()
                .skip(p)
                .step_by(parts)
                .take(per)
                .copied()
                .collect()
        })
        .collect()
}

/// Four sorted splits from `values`, dealt round-robin.
pub fn four_splits(values: &[f64]) -> Result<[SortedSampleSplit; 4]> {
    let mut piles = split_round_robin(values, 4).into_iter();
    let mut next = || sort_split(piles.next().expect("four piles"));
    Ok([next()?, next()?, next()?, next()?])
}

/// Loads one sorted split holding the whole file.
pub fn load_samples(path: &Path, format: SampleFormat) -> Result<SortedSampleSplit> {
    sort_split(read_samples(path, format)?)
}

/// Loads four sorted splits, dealt round-robin from the file.
pub fn load_four_splits(path: &Path, format: SampleFormat) -> Result<[SortedSampleSplit; 4]> {
    four_splits(&read_samples(path, format)?)
}

/// Encodes samples. Text uses the shortest round-trip representation.
pub fn encode_samples(values: &[f64], format: SampleFormat) -> Vec<u8> {
    match format {
        SampleFormat::Text => {
            let mut out = String::with_capacity(values.len() * 20);
            for v in values {
                out.push_str(&format!("{v:?}\n"));
            }
            out.into_bytes()
        }
        SampleFormat::RawF64 => values.iter().flat_map(|v| v.to_le_bytes()).collect(),
    }
}

/// Writes `bytes` to a temporary file next to `path`, then renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
