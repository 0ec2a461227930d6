use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::cut::{build_boundary_minus, build_boundary_plus, negative_order, positive_order, Side};
use super::PLMap;
use crate::algebra::{BarcodeInterval, Endpoint};
use crate::complex::{Cell, Level};
use crate::error::{Error, Result};
use crate::gf2::{add_into, low, Column, Gf2Matrix};
use crate::reduction::{intersection_dim, reduce_tracked, PrefixHomology, ReducedMatrix};

/// Reduction that pushes each nonzero column rightward into every later column
/// sharing its low, then does the same for the earlier columns with smaller
/// lows, largest low first.
///
/// Falls back to [`crate::reduction::reduce`] if the result is not reduced.
pub fn reduce_level(d: &Gf2Matrix, track: bool) -> ReducedMatrix {
    let n = d.ncols();
    let mut cols: Vec<Column> = d.columns().to_vec();
    let mut vcols: Vec<Column> = if track { (0..n).map(|j| vec![j]).collect() } else { Vec::new() };
    let mut owners: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); d.nrows()];
    for (j, c) in cols.iter().enumerate() {
        if let Some(l) = low(c) {
            owners[l].insert(j);
        }
    }
    let mut done: BTreeMap<usize, usize> = BTreeMap::new();
    for j in 0..n {
        let Some(lj) = low(&cols[j]) else { continue };
        let mut sources = vec![(lj, j)];
        sources.extend(done.range(..lj).rev().map(|(&l, &i)| (l, i)));
        for (l, src) in sources {
            let targets: Vec<usize> = owners[l].range(j + 1..).copied().collect();
            for t in targets {
                owners[l].remove(&t);
                let s = cols[src].clone();
                add_into(&mut cols[t], &s);
                if track {
                    let s = vcols[src].clone();
                    add_into(&mut vcols[t], &s);
                }
                if let Some(nl) = low(&cols[t]) {
                    owners[nl].insert(t);
                }
            }
        }
        done.insert(lj, j);
    }
    let r = Gf2Matrix::from_columns(d.nrows(), cols);
    if !r.is_reduced() {
        log::warn!("level reduction left repeated lows on a {}x{} matrix; using standard reduction", d.nrows(), n);
        return if track { reduce_tracked(d) } else { crate::reduction::reduce(d) };
    }
    let v = track.then(|| Gf2Matrix::from_columns(n, vcols));
    ReducedMatrix::from_parts(r, v).expect("checked reduced")
}

/// `∂̃_i^±` in positive or negative order, reduced with `V` tracked.
#[derive(Clone, Debug)]
pub struct LevelReduction {
    pub level: Level,
    pub side: Side,
    pub cells: Vec<Cell>,
    pub prefix: usize,
    pub reduced: ReducedMatrix,
}

pub fn reduce_side(f: &PLMap, level: Level, side: Side) -> Result<LevelReduction> {
    let b = match side {
        Side::Positive => build_boundary_plus(f, level)?,
        Side::Negative => build_boundary_minus(f, level)?,
    };
    let order = match side {
        Side::Positive => positive_order(&b),
        Side::Negative => negative_order(&b),
    };
    let (cells, m) = b.reordered(&order)?;
    Ok(LevelReduction { level, side, cells, prefix: b.prefix(), reduced: reduce_level(&m, true) })
}

fn read(red: &LevelReduction) -> Vec<(usize, BarcodeInterval<Level>)> {
    let mut out = Vec::new();
    for j in 0..red.prefix {
        if !red.reduced.is_zero(j) {
            continue;
        }
        let dim = red.cells[j].dim();
        let far = match red.reduced.killer(j) {
            Some(k) if k < red.prefix => continue,
            Some(k) => Some(&red.cells[k]),
            None => None,
        };
        let bar = match (red.side, far) {
            (Side::Positive, None) => BarcodeInterval::new(dim, Endpoint::Closed(red.level), Endpoint::Infinite),
            (Side::Positive, Some(c)) => {
                BarcodeInterval::new(dim, Endpoint::Closed(red.level), Endpoint::Open(c.t_max()))
            }
            (Side::Negative, None) => BarcodeInterval::new(dim, Endpoint::Infinite, Endpoint::Closed(red.level)),
            (Side::Negative, Some(c)) => {
                BarcodeInterval::new(dim, Endpoint::Open(c.t_min()), Endpoint::Closed(red.level))
            }
        };
        out.push((j, bar));
    }
    out
}

/// `B⁺(f;i)`: `[i, ∞)` for a surviving generator, `[i, t_max)` of its killer otherwise.
pub fn read_positive_barcode(red: &LevelReduction) -> Vec<BarcodeInterval<Level>> {
    read(red).into_iter().map(|x| x.1).collect()
}

/// `B⁻(f;i)`: `(-∞, i]` or `(t_min, i]` of the killer.
pub fn read_negative_barcode(red: &LevelReduction) -> Vec<BarcodeInterval<Level>> {
    read(red).into_iter().map(|x| x.1).collect()
}

/// A generator that dies downward at `lower` and upward at `upper`
/// (`None` for never).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LevelPair {
    pub dim: usize,
    pub lower: Option<Level>,
    pub upper: Option<Level>,
    pub mult: usize,
}

/// Positive and negative bar codes at one level, with their pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosNegLevel {
    pub level: Level,
    pub positive: Vec<BarcodeInterval<Level>>,
    pub negative: Vec<BarcodeInterval<Level>>,
    pub pairs: Vec<LevelPair>,
}

impl PosNegLevel {
    /// `l_r(t)`
    pub fn l(&self, r: usize) -> usize {
        self.positive.iter().filter(|b| b.dim == r).count()
    }

    /// `l_r⁺(t; t')`: generators dying upward by `t'`.
    pub fn l_plus(&self, r: usize, up: Level) -> usize {
        self.positive.iter().filter(|b| b.dim == r && matches!(b.right, Endpoint::Open(x) if x <= up)).count()
    }

    /// `l_r⁻(t; t'')`: generators dying downward by `t''`.
    pub fn l_minus(&self, r: usize, down: Level) -> usize {
        self.negative.iter().filter(|b| b.dim == r && matches!(b.left, Endpoint::Open(x) if x >= down)).count()
    }

    /// `e_r(t; t', t'')`
    pub fn e(&self, r: usize, up: Level, down: Level) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.dim == r && p.upper.is_some_and(|b| b <= up) && p.lower.is_some_and(|a| a >= down))
            .map(|p| p.mult)
            .sum()
    }

    /// Intervals `(a, b)` of `B_r(f;t)`, `None` standing for `∓∞`.
    pub fn paired_intervals(&self, r: usize) -> Vec<(Option<Level>, Option<Level>, usize)> {
        self.pairs.iter().filter(|p| p.dim == r).map(|p| (p.lower, p.upper, p.mult)).collect()
    }
}

struct Killers {
    at: Vec<(Level, Column)>,
}

impl Killers {
    fn collect(red: &LevelReduction, h: &PrefixHomology<'_>, r: usize) -> Result<Killers> {
        let mut at = Vec::new();
        for k in red.prefix..red.reduced.ncols() {
            let Some(l) = red.reduced.low(k) else { continue };
            if l >= red.prefix || red.cells[l].dim() != r {
                continue;
            }
            let c = &red.cells[k];
            let when = if red.side == Side::Positive { c.t_max() } else { c.t_min() };
            at.push((when, h.coordinates(red.reduced.r().column(k))?));
        }
        Ok(Killers { at })
    }

    fn upto(&self, keep: impl Fn(Level) -> bool) -> Vec<Column> {
        self.at.iter().filter(|x| keep(x.0)).map(|x| x.1.clone()).collect()
    }

    fn times(&self) -> Vec<Level> {
        let mut t: Vec<Level> = self.at.iter().map(|x| x.0).collect();
        t.sort();
        t.dedup();
        t
    }
}

/// Pairs generators by second differences of `dim(K⁺(b) ∩ K⁻(a))`, where
/// `K⁺(b)` and `K⁻(a)` are the classes dead upward by `b` and downward by `a`.
fn pair_up(pos: &LevelReduction, neg: &LevelReduction, top: usize) -> Result<Vec<LevelPair>> {
    let hp = PrefixHomology::new(&pos.reduced, pos.prefix);
    let hn = PrefixHomology::new(&neg.reduced, neg.prefix);
    if hp.generators() != hn.generators() {
        return Err(Error::Inconsistent(format!("level {} has different generators on the two sides", pos.level)));
    }
    let n = hp.rank();
    let mut out = Vec::new();
    for r in 0..=top {
        let all: Vec<Column> = hp
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, &j)| pos.cells[j].dim() == r)
            .map(|(c, _)| vec![c])
            .collect();
        if all.is_empty() {
            continue;
        }
        let kp = Killers::collect(pos, &hp, r)?;
        let kn = Killers::collect(neg, &hp, r)?;
        // `None` in the upper slot is "every class", in the lower slot "nothing".
        let plus = |b: Option<Option<Level>>| -> Vec<Column> {
            match b {
                None => Vec::new(),
                Some(None) => all.clone(),
                Some(Some(b)) => kp.upto(|x| x <= b),
            }
        };
        let minus = |a: Option<Option<Level>>| -> Vec<Column> {
            match a {
                None => Vec::new(),
                Some(None) => all.clone(),
                Some(Some(a)) => kn.upto(|x| x >= a),
            }
        };
        let e = |b, a| {
            let (p, m) = (plus(b), minus(a));
            if p.is_empty() || m.is_empty() {
                0
            } else {
                intersection_dim(n, &p, &m)
            }
        };
        let mut ups: Vec<Option<Level>> = kp.times().into_iter().map(Some).collect();
        ups.push(None);
        let mut downs: Vec<Option<Level>> = vec![None];
        downs.extend(kn.times().into_iter().map(Some));
        for (bi, &b) in ups.iter().enumerate() {
            let b_prev = if bi == 0 { None } else { Some(ups[bi - 1]) };
            for (ai, &a) in downs.iter().enumerate() {
                let a_next = downs.get(ai + 1).copied();
                let cnt = e(Some(b), Some(a)) as i64 - e(b_prev, Some(a)) as i64 - e(Some(b), a_next) as i64
                    + e(b_prev, a_next) as i64;
                if cnt < 0 {
                    return Err(Error::Inconsistent(format!("negative pair count at level {}", pos.level)));
                }
                if cnt > 0 {
                    out.push(LevelPair { dim: r, lower: a, upper: b, mult: cnt as usize });
                }
            }
        }
    }
    Ok(out)
}

fn check_marginals(p: &PosNegLevel) -> Result<()> {
    let mut up: BTreeMap<(usize, Option<Level>), i64> = BTreeMap::new();
    let mut down: BTreeMap<(usize, Option<Level>), i64> = BTreeMap::new();
    for b in &p.positive {
        *up.entry((b.dim, b.right.position())).or_default() += 1;
    }
    for b in &p.negative {
        *down.entry((b.dim, b.left.position())).or_default() += 1;
    }
    for q in &p.pairs {
        *up.entry((q.dim, q.upper)).or_default() -= q.mult as i64;
        *down.entry((q.dim, q.lower)).or_default() -= q.mult as i64;
    }
    if up.values().chain(down.values()).any(|&x| x != 0) {
        return Err(Error::Inconsistent(format!("pairing at level {} does not match the bar codes", p.level)));
    }
    Ok(())
}

/// Both reductions at `level`, the two bar codes and their pairing.
pub fn posneg_at(f: &PLMap, level: Level) -> Result<PosNegLevel> {
    let pos = reduce_side(f, level, Side::Positive)?;
    let neg = reduce_side(f, level, Side::Negative)?;
    if pos.cells[..pos.prefix] != neg.cells[..neg.prefix] {
        return Err(Error::Inconsistent(format!("level {level} cells differ between the two sides")));
    }
    let out = PosNegLevel {
        level,
        positive: read_positive_barcode(&pos),
        negative: read_negative_barcode(&neg),
        pairs: pair_up(&pos, &neg, f.top_dim())?,
    };
    check_marginals(&out)?;
    Ok(out)
}
