//! Point, simplex-list and vertex-value files.

use std::fs;
use std::path::Path;

use persistor_core::complex::{build_complex, SimplicialComplex};

use crate::error::{CliError, Result};

/// An input file's name and contents.
#[derive(Clone, Debug)]
pub struct Source {
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn read(path: &Path) -> Result<Source> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Ok(Source { name: path.display().to_string(), text })
    }

    pub fn inline(name: &str, text: &str) -> Source {
        Source { name: name.to_string(), text: text.to_string() }
    }

    fn err(&self, line: usize, msg: impl Into<String>) -> CliError {
        CliError::Parse { path: self.name.clone(), line, msg: msg.into() }
    }

    /// Non-empty lines with comments stripped, numbered from 1.
    fn lines(&self) -> impl Iterator<Item = (usize, &str)> {
        self.text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
    }
}

fn fields(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty())
}

/// One point per line, comma- or whitespace-separated coordinates.
pub fn parse_points(src: &Source) -> Result<Vec<Vec<f64>>> {
    let mut pts: Vec<Vec<f64>> = Vec::new();
    for (n, line) in src.lines() {
        let p = fields(line)
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| src.err(n, format!("bad coordinate {t:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = pts.first() {
            if first.len() != p.len() {
                return Err(src.err(n, format!("{} coordinates, expected {}", p.len(), first.len())));
            }
        }
        pts.push(p);
    }
    if pts.is_empty() {
        return Err(src.err(0, "no points"));
    }
    Ok(pts)
}

/// One simplex per line as increasing 1-based vertex ids.
pub fn parse_complex(src: &Source) -> Result<SimplicialComplex> {
    let mut simplices = Vec::new();
    for (n, line) in src.lines() {
        let s = fields(line)
            .map(|t| t.parse::<u32>().ok().filter(|&v| v > 0).ok_or_else(|| src.err(n, format!("bad vertex id {t:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(src.err(n, "vertex ids must be strictly increasing"));
        }
        simplices.push(s);
    }
    if simplices.is_empty() {
        return Err(src.err(0, "no simplices"));
    }
    Ok(build_complex(&simplices)?)
}

/// Lines `vertex_id value`.
pub fn parse_values(src: &Source) -> Result<Vec<(u32, f64)>> {
    let mut out = Vec::new();
    for (n, line) in src.lines() {
        let parts: Vec<&str> = fields(line).collect();
        let [id, value] = parts[..] else {
            return Err(src.err(n, "expected `vertex_id value`"));
        };
        let id =
            id.parse::<u32>().ok().filter(|&v| v > 0).ok_or_else(|| src.err(n, format!("bad vertex id {id:?}")))?;
        let value = value
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| src.err(n, format!("bad value {value:?}")))?;
        out.push((id, value));
    }
    Ok(out)
}
