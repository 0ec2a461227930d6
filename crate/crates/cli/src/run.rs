//! The four pipelines, each producing one document.

use serde_json::{Map, Value};

use persistor_core::algebra::mu_from_beta;
use persistor_core::complex::Level;
use persistor_core::hodge::{beta_table, RANK_TOL};
use persistor_core::level::{
    check_generic, i_numbers_method1, i_numbers_method2, perturb, posneg_at, sublevel_barcodes_direct,
    sublevel_from_level, LevelPair, PLMap,
};
use persistor_core::reduction::mu_gf2;
use persistor_core::rips::{distance_matrix, epsilon_schedule, rips_filtration, scale_points, PointCloud, ScaleConfig};

use crate::document::{level_bars, number, numbers, step_bars, sublevel_bars, BarcodeDocument};
use crate::error::{CliError, Result};
use crate::input::{parse_complex, parse_points, parse_values, Source};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Gf2,
    Real,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Via {
    Direct,
    Level,
}

/// The rank threshold, overridden by `PERSISTOR_RANK_TOL`.
pub fn rank_tol() -> Result<f64> {
    match std::env::var("PERSISTOR_RANK_TOL") {
        Err(_) => Ok(RANK_TOL),
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite() && *x > 0.0)
            .ok_or_else(|| CliError::Usage(format!("PERSISTOR_RANK_TOL={s:?} is not a positive number"))),
    }
}

pub fn cmd_rips(points: &Source, max_dim: usize, max_steps: usize, coeff: Coeff, tol: f64) -> Result<BarcodeDocument> {
    if max_dim == 0 {
        return Err(CliError::Usage("--max-dim must be at least 1".into()));
    }
    let cloud = PointCloud::new(&parse_points(points)?)?;
    let cfg = ScaleConfig::default();
    let (scaled, factor) = scale_points(&cloud, &cfg)?;
    let d = distance_matrix(&scaled)?;
    let (sched, p, _) = epsilon_schedule(&d, max_steps, &cfg);
    let f = rips_filtration(&d, &sched, max_dim, p)?;
    let mu = match coeff {
        Coeff::Gf2 => mu_gf2(&f)?,
        Coeff::Real => mu_from_beta(&beta_table(&f, tol)?)?,
    };
    log::info!("rips: {} points, {} cells, P = {p}, N = {}", cloud.len(), f.complex().len(), sched.last());
    let eps: Vec<f64> = sched.eps[..=p].iter().map(|e| e / factor).collect();
    let mut doc =
        BarcodeDocument::new("rips", if coeff == Coeff::Gf2 { "gf2" } else { "real" }, std::slice::from_ref(points));
    doc.set("m", max_dim);
    doc.set("steps", p);
    doc.set("n", sched.last());
    doc.set("points", cloud.len());
    doc.set("epsilons", numbers(&eps));
    doc.set("scale", number(factor));
    doc.set("valid_max_dim", max_dim - 1);
    if coeff == Coeff::Real {
        doc.set("rank_tol", number(tol));
    }
    doc.bars = step_bars(&mu.to_barcode(), &eps);
    Ok(doc)
}

/// Reads a complex and vertex values, optionally nudging ties apart.
pub fn load_map(complex: &Source, values: &Source, nudge: Option<f64>) -> Result<PLMap> {
    let k = parse_complex(complex)?;
    let mut v = parse_values(values)?;
    if let Some(eps) = nudge {
        v = perturb(&v, eps);
    }
    Ok(check_generic(&k, &v)?)
}

fn map_doc(pipeline: &str, f: &PLMap, sources: &[Source], nudge: Option<f64>) -> BarcodeDocument {
    let mut doc = BarcodeDocument::new(pipeline, "gf2", sources);
    doc.set("n", f.n());
    doc.set("critical_values", numbers(f.values()));
    doc.set("vertex_ids", (1..=f.n() as u32).map(|k| f.original_id(k)).collect::<Vec<u32>>());
    if let Some(eps) = nudge {
        doc.set("perturb", number(eps));
    }
    doc
}

pub fn cmd_level(complex: &Source, values: &Source, method: u8, nudge: Option<f64>) -> Result<BarcodeDocument> {
    let f = load_map(complex, values, nudge)?;
    let run = match method {
        1 => i_numbers_method1(&f)?,
        2 => i_numbers_method2(&f)?,
        _ => return Err(CliError::Usage(format!("unknown method {method}"))),
    };
    log::info!("level: N = {}, method {method}, {} reductions", f.n(), run.reductions);
    let mut doc = map_doc("level", &f, &[complex.clone(), values.clone()], nudge);
    doc.set("method", method);
    doc.set("reductions", run.reductions);
    doc.bars = level_bars(&run.barcode.bars(), &f, None);
    Ok(doc)
}

/// `k` for a critical value, `k+1/2` or `k.5` for the midpoint after it.
pub fn parse_level(spec: &str, n: usize) -> Result<Level> {
    let bad = || CliError::Usage(format!("level {spec:?} is not in 1..={n} or a midpoint k+1/2 with k < {n}"));
    let spec = spec.trim();
    let (k, mid) = match spec.strip_suffix("+1/2").or_else(|| spec.strip_suffix(".5")) {
        Some(k) => (k, true),
        None => (spec, false),
    };
    let k: u32 = k.parse().map_err(|_| bad())?;
    let top = n as u32;
    match mid {
        false if (1..=top).contains(&k) => Ok(Level::at_vertex(k)),
        true if (1..top).contains(&k) => Ok(Level::after_vertex(k)),
        _ => Err(bad()),
    }
}

fn level_json(t: Option<Level>, f: &PLMap) -> Value {
    match t {
        None => Value::Null,
        Some(t) => {
            let mut m = Map::new();
            let index = match t.vertex() {
                Some(k) => Value::from(k),
                None => Value::from(vec![t.0 / 2, t.0 / 2 + 1]),
            };
            m.insert("index".into(), index);
            m.insert("value".into(), number(f.value_of(t)));
            Value::Object(m)
        }
    }
}

fn pair_json(p: &LevelPair, f: &PLMap) -> Value {
    let mut m = Map::new();
    m.insert("dim".into(), p.dim.into());
    m.insert("lower".into(), level_json(p.lower, f));
    m.insert("upper".into(), level_json(p.upper, f));
    m.insert("mult".into(), p.mult.into());
    Value::Object(m)
}

pub fn cmd_posneg(complex: &Source, values: &Source, level: &str, nudge: Option<f64>) -> Result<BarcodeDocument> {
    let f = load_map(complex, values, nudge)?;
    let t = parse_level(level, f.n())?;
    let p = posneg_at(&f, t)?;
    let mut doc = map_doc("posneg", &f, &[complex.clone(), values.clone()], nudge);
    doc.set("level", level_json(Some(t), &f));
    doc.bars = level_bars(&p.positive, &f, Some("positive"));
    doc.bars.extend(level_bars(&p.negative, &f, Some("negative")));
    let mut pairs = p.pairs.clone();
    pairs.sort_by_key(|q| (q.dim, q.lower.is_some(), q.lower, q.upper.is_none(), q.upper));
    doc.extra.insert("pairs".into(), Value::Array(pairs.iter().map(|q| pair_json(q, &f)).collect()));
    Ok(doc)
}

pub fn cmd_sublevel(complex: &Source, values: &Source, via: Via, nudge: Option<f64>) -> Result<BarcodeDocument> {
    let f = load_map(complex, values, nudge)?;
    let mu = match via {
        Via::Direct => sublevel_barcodes_direct(&f)?,
        Via::Level => sublevel_from_level(&i_numbers_method2(&f)?.barcode),
    };
    let mut doc = map_doc("sublevel", &f, &[complex.clone(), values.clone()], nudge);
    doc.set("via", if via == Via::Direct { "direct" } else { "level" });
    doc.bars = sublevel_bars(&mu, &f);
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_specs() {
        assert_eq!(parse_level("2", 4).unwrap(), Level(4));
        assert_eq!(parse_level("2+1/2", 4).unwrap(), Level(5));
        assert_eq!(parse_level("3.5", 4).unwrap(), Level(7));
        assert!(parse_level("4.5", 4).is_err());
        assert!(parse_level("0", 4).is_err());
        assert!(parse_level("x", 4).is_err());
    }
}
