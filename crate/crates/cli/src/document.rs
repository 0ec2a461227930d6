//! The JSON bar-code document.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Number, Value};
use sha2::{Digest, Sha256};

use persistor_core::algebra::{normalize, BarcodeInterval, Endpoint, MuTable};
use persistor_core::complex::Level;
use persistor_core::level::PLMap;

use crate::error::{CliError, Result};
use crate::input::Source;

/// Where an endpoint sits.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Index {
    /// A filtration step or a critical index.
    At(usize),
    /// Strictly between critical indices `k` and `k + 1`.
    Between(usize),
    NegInf,
    PosInf,
}

impl Index {
    /// Position on a plot axis; infinite ends have none.
    pub fn coord(self) -> Option<f64> {
        match self {
            Index::At(k) => Some(k as f64),
            Index::Between(k) => Some(k as f64 + 0.5),
            Index::NegInf | Index::PosInf => None,
        }
    }

    fn to_json(self) -> Value {
        match self {
            Index::At(k) => Value::from(k),
            Index::Between(k) => Value::from(vec![k, k + 1]),
            Index::NegInf => Value::from("-inf"),
            Index::PosInf => Value::from("inf"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct End {
    pub index: Index,
    pub value: Option<f64>,
    pub kind: &'static str,
}

impl End {
    fn to_json(self) -> Value {
        let mut m = Map::new();
        m.insert("index".into(), self.index.to_json());
        m.insert("value".into(), self.value.map_or(Value::Null, number));
        m.insert("kind".into(), self.kind.into());
        Value::Object(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bar {
    pub dim: usize,
    /// `positive` or `negative` for pos/neg documents.
    pub side: Option<&'static str>,
    pub left: End,
    pub right: End,
    pub mult: usize,
}

impl Bar {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("dim".into(), self.dim.into());
        m.insert("left".into(), self.left.to_json());
        m.insert("right".into(), self.right.to_json());
        m.insert("mult".into(), self.mult.into());
        if let Some(s) = self.side {
            m.insert("side".into(), s.into());
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, Default)]
pub struct BarcodeDocument {
    pub meta: Map<String, Value>,
    pub bars: Vec<Bar>,
    /// Extra top-level arrays, keyed by name.
    pub extra: Map<String, Value>,
}

impl BarcodeDocument {
    pub fn new(pipeline: &str, field: &str, sources: &[Source]) -> Self {
        let mut meta = Map::new();
        meta.insert("pipeline".into(), pipeline.into());
        meta.insert("field".into(), field.into());
        meta.insert("input_sha256".into(), input_hash(sources).into());
        BarcodeDocument { meta, bars: Vec::new(), extra: Map::new() }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.meta.insert(key.into(), v.into());
    }

    /// Pretty-printed with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut root = self.extra.clone();
        root.insert("meta".into(), Value::Object(self.meta.clone()));
        root.insert("bars".into(), Value::Array(self.bars.iter().map(Bar::to_json).collect()));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("plain JSON values");
        s.push('\n');
        s
    }
}

/// Seventeen significant digits.
pub fn number(x: f64) -> Value {
    let x = if x == 0.0 { 0.0 } else { x };
    Value::Number(format!("{x:.16e}").parse::<Number>().expect("finite float"))
}

pub fn numbers(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(number).collect())
}

/// SHA-256 over the input files, each prefixed by its length.
pub fn input_hash(sources: &[Source]) -> String {
    let mut h = Sha256::new();
    for s in sources {
        h.update((s.text.len() as u64).to_le_bytes());
        h.update(s.text.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Bars on filtration steps, with `values[i]` the parameter of step `i`.
pub fn step_bars(bars: &[BarcodeInterval<usize>], values: &[f64]) -> Vec<Bar> {
    let end = |e: Endpoint<usize>, inf: Index| match e {
        Endpoint::Closed(i) => End { index: Index::At(i), value: Some(values[i]), kind: "closed" },
        Endpoint::Open(i) => End { index: Index::At(i), value: Some(values[i]), kind: "open" },
        Endpoint::Infinite => End { index: inf, value: None, kind: "infinite" },
    };
    normalize(bars)
        .iter()
        .map(|b| Bar {
            dim: b.dim,
            side: None,
            left: end(b.left, Index::NegInf),
            right: end(b.right, Index::PosInf),
            mult: b.mult,
        })
        .collect()
}

fn level_index(t: Level) -> Index {
    match t.vertex() {
        Some(k) => Index::At(k as usize),
        None => Index::Between(t.0 as usize / 2),
    }
}

/// Bars on levels of `f`, indexed by critical value.
pub fn level_bars(bars: &[BarcodeInterval<Level>], f: &PLMap, side: Option<&'static str>) -> Vec<Bar> {
    let end = |e: Endpoint<Level>, inf: Index| match e {
        Endpoint::Closed(t) => End { index: level_index(t), value: Some(f.value_of(t)), kind: "closed" },
        Endpoint::Open(t) => End { index: level_index(t), value: Some(f.value_of(t)), kind: "open" },
        Endpoint::Infinite => End { index: inf, value: None, kind: "infinite" },
    };
    normalize(bars)
        .iter()
        .map(|b| Bar {
            dim: b.dim,
            side,
            left: end(b.left, Index::NegInf),
            right: end(b.right, Index::PosInf),
            mult: b.mult,
        })
        .collect()
}

/// Sub-level `μ` with step `s` read as the critical value `t_{s+1}`: the
/// step bar `[s, e]` is `[t_{s+1}, t_{e+2})`.
pub fn sublevel_bars(mu: &MuTable, f: &PLMap) -> Vec<Bar> {
    let bars: Vec<BarcodeInterval<Level>> = mu
        .to_barcode()
        .into_iter()
        .map(|b| {
            let left = match b.left {
                Endpoint::Closed(s) => Endpoint::Closed(Level::at_vertex(s as u32 + 1)),
                _ => unreachable!("sub-level bars are left-closed"),
            };
            let right = match b.right {
                Endpoint::Closed(e) => Endpoint::Open(Level::at_vertex(e as u32 + 2)),
                _ => Endpoint::Infinite,
            };
            BarcodeInterval::new(b.dim, left, right).with_mult(b.mult)
        })
        .collect();
    level_bars(&bars, f, None)
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_float_format() {
        assert_eq!(number(1.0).to_string(), "1.0000000000000000e+0");
        assert_eq!(number(-0.0).to_string(), "0.0000000000000000e+0");
        assert_eq!(number(0.1).to_string(), "1.0000000000000001e-1");
    }

    #[test]
    fn step_bar_json() {
        let bars =
            [BarcodeInterval::infinite(0, 0), BarcodeInterval::closed(0, 0, 0), BarcodeInterval::closed(0, 0, 0)];
        let doc = BarcodeDocument { bars: step_bars(&bars, &[0.0, 1.0]), ..Default::default() };
        let v: Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["bars"][0]["mult"], 2);
        assert_eq!(v["bars"][0]["right"]["index"], 0);
        assert_eq!(v["bars"][1]["right"]["index"], "inf");
        assert_eq!(v["bars"][1]["right"]["value"], Value::Null);
    }

    #[test]
    fn midpoint_index_is_a_pair() {
        assert_eq!(level_index(Level(5)).to_json(), serde_json::json!([2, 3]));
        assert_eq!(level_index(Level(4)).to_json(), serde_json::json!(2));
    }
}
