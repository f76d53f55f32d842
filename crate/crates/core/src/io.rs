//! Vector files: `.txt` holds one decimal per line, `.f64` holds a
//! little-endian `u64` length followed by that many little-endian `f64`s.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorFormat {
    Text,
    Binary,
}

impl VectorFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("txt") => Ok(VectorFormat::Text),
            Some("f64") => Ok(VectorFormat::Binary),
            _ => Err(Error::arg(format!(
                "cannot infer vector format of {}; use a .txt or .f64 extension",
                path.display()
            ))),
        }
    }
}

pub fn read_vector(path: &Path) -> Result<Vec<f64>> {
    let format = VectorFormat::from_path(path)?;
    let bytes = fs::read(path).map_err(|e| with_path(e, path))?;
    match format {
        VectorFormat::Text => parse_text(&String::from_utf8_lossy(&bytes)),
        VectorFormat::Binary => decode_binary(&bytes),
    }
}

pub fn write_vector(path: &Path, x: &[f64]) -> Result<()> {
    let bytes = match VectorFormat::from_path(path)? {
        VectorFormat::Text => format_text(x).into_bytes(),
        VectorFormat::Binary => encode_binary(x),
    };
    fs::write(path, bytes).map_err(|e| with_path(e, path))?;
    Ok(())
}

fn with_path(e: std::io::Error, path: &Path) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

/// Blank lines are skipped. Values are written with the shortest
/// representation that parses back to the same `f64`.
pub fn parse_text(s: &str) -> Result<Vec<f64>> {
    s.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse::<f64>()
                .map_err(|e| Error::Format(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

pub fn format_text(x: &[f64]) -> String {
    let mut out = String::with_capacity(x.len() * 20);
    for v in x {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

pub fn encode_binary(x: &[f64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 8 * x.len());
    out.extend_from_slice(&(x.len() as u64).to_le_bytes());
    for v in x {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_binary(bytes: &[u8]) -> Result<Vec<f64>> {
    if bytes.len() < 8 {
        return Err(Error::Format("missing length prefix".into()));
    }
    let (head, body) = bytes.split_at(8);
    let n = u64::from_le_bytes(head.try_into().unwrap());
    if body.len() as u64 != n.saturating_mul(8) {
        return Err(Error::Format(format!(
            "length prefix says {n} values but {} bytes follow",
            body.len()
        )));
    }
    Ok(body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}
