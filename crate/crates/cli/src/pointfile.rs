//! Plain-text point files.
//!
//! ```text
//! # maxdist v1 dim=2 n=3 seed=7 dist=uniform
//! 0.5 0.25
//! 1 0
//! 0.1 3e-7
//! ```
//!
//! Coordinates use the shortest decimal that parses back to the same `f64`,
//! so a read/write cycle is bit-exact. Unknown header keys are ignored.

use std::io::{BufRead, Write};

use maxdist_core::PointSet;
use thiserror::Error;

const MAGIC: &str = "# maxdist v1";

#[derive(Debug, Error)]
pub enum PointFileError {
    #[error("missing `{MAGIC}` header")]
    MissingHeader,
    #[error("header: {0}")]
    BadHeader(String),
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    TokenCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: cannot parse `{token}` as a number")]
    BadNumber { line: usize, token: String },
    #[error("header declares n={declared} but file has {found} points")]
    CountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Core(#[from] maxdist_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub dim: usize,
    pub n: usize,
    pub seed: u64,
    pub dist: String,
}

impl Header {
    pub fn for_set(ps: &PointSet, seed: u64, dist: &str) -> Self {
        Self { dim: ps.dim(), n: ps.len(), seed, dist: dist.to_owned() }
    }

    fn parse(line: &str) -> Result<Self, PointFileError> {
        let rest = line.strip_prefix(MAGIC).ok_or(PointFileError::MissingHeader)?;
        let mut dim = None;
        let mut n = None;
        let mut seed = 0;
        let mut dist = String::from("unknown");
        for kv in rest.split_whitespace() {
            let Some((key, value)) = kv.split_once('=') else { continue };
            let bad = || PointFileError::BadHeader(format!("invalid value in `{kv}`"));
            match key {
                "dim" => dim = Some(value.parse().map_err(|_| bad())?),
                "n" => n = Some(value.parse().map_err(|_| bad())?),
                "seed" => seed = value.parse().map_err(|_| bad())?,
                "dist" => dist = value.to_owned(),
                _ => {}
            }
        }
        Ok(Self {
            dim: dim.ok_or_else(|| PointFileError::BadHeader("missing dim".into()))?,
            n: n.ok_or_else(|| PointFileError::BadHeader("missing n".into()))?,
            seed,
            dist,
        })
    }
}

/// Shortest round-trip decimal for `x`, without a trailing `.0`.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(t) => t.to_owned(),
        None => s,
    }
}

pub fn write_point_file<W: Write>(mut out: W, ps: &PointSet, seed: u64, dist: &str) -> std::io::Result<()> {
    writeln!(out, "{MAGIC} dim={} n={} seed={seed} dist={dist}", ps.dim(), ps.len())?;
    let mut line = String::new();
    for p in ps.iter() {
        line.clear();
        for (j, c) in p.iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            line.push_str(&fmt_f64(*c));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()
}

pub fn read_point_file<R: BufRead>(input: R) -> Result<(Header, PointSet), PointFileError> {
    let mut lines = input.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break Header::parse(line.trim_end())?;
                }
            }
            None => return Err(PointFileError::MissingHeader),
        }
    };
    let mut ps = PointSet::empty(header.dim)?;
    let mut coords = Vec::with_capacity(header.dim);
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        coords.clear();
        for token in line.split_whitespace() {
            let v: f64 = token
                .parse()
                .map_err(|_| PointFileError::BadNumber { line: idx + 1, token: token.to_owned() })?;
            coords.push(v);
        }
        if coords.len() != header.dim {
            return Err(PointFileError::TokenCount { line: idx + 1, expected: header.dim, found: coords.len() });
        }
        ps.push(&coords)?;
    }
    if ps.len() != header.n {
        return Err(PointFileError::CountMismatch { declared: header.n, found: ps.len() });
    }
    Ok((header, ps))
}
