//! Optimal diameters over all 2-Cayley digraphs of a given order, and the
//! quotient-extension improvement.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::digraph::{AbelianGroup2, CayleyDigraph2, DEFAULT_BFS_CAP};
use crate::error::{Error, Result};
use crate::intmath::{is_square_free, lower_bound_diameter, square_divisors_desc};
use crate::lshape::{enumerate_lshapes, LShape};
use crate::procedures::{extend, TightnessReport};
use crate::snf::digraph_of;

/// Largest order the brute-force oracle accepts by default.
pub const BRUTE_ORACLE_CAP: u64 = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Cyclic,
    NonCyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub mdd: LShape,
    pub digraph: CayleyDigraph2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityResult {
    pub n: u64,
    pub lb: u64,
    pub d1: Option<u64>,
    /// `None` for square-free orders, where no non-cyclic group exists.
    pub d2: Option<u64>,
    pub d3: u64,
    pub witnesses: BTreeMap<GroupKind, Witness>,
}

/// Before and after a quotient-extension step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprovementRecord {
    /// Absent when only the order and tightness of the original are known.
    pub original: Option<CayleyDigraph2>,
    pub original_report: TightnessReport,
    pub m: u64,
    pub intermediate_area: u64,
    /// MDD of area `N / m^2` whose `m`-scaling is the improved diagram.
    pub intermediate: LShape,
    pub improved: CayleyDigraph2,
    pub improved_mdd: LShape,
    pub improved_report: TightnessReport,
}

fn kind_of(shape: &LShape) -> GroupKind {
    if shape.gcd() == 1 {
        GroupKind::Cyclic
    } else {
        GroupKind::NonCyclic
    }
}

/// `D1`, `D2`, `D3` via the diagram side: every digraph has an L-shaped MDD
/// whose diameter is the digraph's, and the cyclic/non-cyclic split follows the
/// gcd of the sides. Shapes that do not come from a digraph with two distinct
/// non-zero generators are skipped.
pub fn optimal_diameters(n: u64) -> Result<OptimalityResult> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("optimal diameters need N >= 3, got {n}")));
    }
    let lb = lower_bound_diameter(n);
    let want_noncyclic = !is_square_free(n);
    let mut best: BTreeMap<GroupKind, (u64, Witness)> = BTreeMap::new();
    let mut bound = lb;
    loop {
        for shape in enumerate_lshapes(n, Some(bound)) {
            let kind = kind_of(&shape);
            let d = shape.diameter_unchecked();
            if matches!(best.get(&kind), Some((bd, w)) if (*bd, w.mdd) <= (d, shape)) {
                continue;
            }
            let Ok(digraph) = digraph_of(&shape) else {
                continue;
            };
            best.insert(kind, (d, Witness { mdd: shape, digraph }));
        }
        let done_cyclic = best.contains_key(&GroupKind::Cyclic);
        let done_noncyclic = !want_noncyclic || best.contains_key(&GroupKind::NonCyclic);
        if done_cyclic && done_noncyclic {
            break;
        }
        bound += 1;
    }
    let d1 = best.get(&GroupKind::Cyclic).map(|(d, _)| *d);
    let d2 = best.get(&GroupKind::NonCyclic).map(|(d, _)| *d);
    let d3 = match (d1, d2) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!("the cyclic bucket always fills"),
    };
    Ok(OptimalityResult {
        n,
        lb,
        d1,
        d2,
        d3,
        witnesses: best.into_iter().map(|(k, (_, w))| (k, w)).collect(),
    })
}

/// Exact `(D1, D2)` by BFS over every canonical group of order `N` and every
/// unordered pair of valid generators.
pub fn brute_oracle(n: u64) -> Result<(Option<u64>, Option<u64>)> {
    brute_oracle_capped(n, BRUTE_ORACLE_CAP)
}

pub fn brute_oracle_capped(n: u64, cap: u64) -> Result<(Option<u64>, Option<u64>)> {
    if n > cap {
        return Err(Error::OrderCapExceeded { order: n, cap });
    }
    if n < 3 {
        return Err(Error::OutOfRange(format!("optimal diameters need N >= 3, got {n}")));
    }
    let lb = lower_bound_diameter(n);
    let mut d1 = None;
    let mut d2 = None;
    for s1 in (1..=n).take_while(|s| s * s <= n) {
        if n % (s1 * s1) != 0 {
            continue;
        }
        let g = AbelianGroup2::new(s1, n / s1)?;
        let slot = if s1 == 1 { &mut d1 } else { &mut d2 };
        'pairs: for i in 1..n as usize {
            for j in i + 1..n as usize {
                if *slot == Some(lb) {
                    break 'pairs;
                }
                let Ok(d) = CayleyDigraph2::new(g, g.element_at(i), g.element_at(j)) else {
                    continue;
                };
                let limit = slot.map_or(u64::MAX, |b: u64| b - 1);
                if let Some(diam) = d.diameter_at_most(limit, DEFAULT_BFS_CAP)? {
                    *slot = Some(diam);
                }
            }
        }
    }
    Ok((d1, d2))
}

/// Quotient-extension: look for an MDD `H` of area `N / m^2` with
/// `m * (d_H + 2) < lb(N) + k + 2`, then `m * H` belongs to a digraph of order
/// `N` with diameter below the current one.
///
/// For every `m` the smallest `d_H` is taken (then the lexicographically least
/// `H`), and across `m` the smallest resulting diameter wins, ties going to the
/// larger `m`.
pub fn qe_improve(n: u64, k: u64, current_diameter: u64) -> Result<Option<ImprovementRecord>> {
    qe_improve_from(n, k, current_diameter, None)
}

/// As [`qe_improve`], recording a known original digraph.
pub fn qe_improve_digraph(original: &CayleyDigraph2) -> Result<Option<ImprovementRecord>> {
    let report = TightnessReport::of(original)?;
    qe_improve_from(report.order, report.k, report.diameter, Some(*original))
}

pub(crate) fn qe_improve_from(
    n: u64,
    k: u64,
    current_diameter: u64,
    original: Option<CayleyDigraph2>,
) -> Result<Option<ImprovementRecord>> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("quotient-extension needs N >= 4, got {n}")));
    }
    let original_report = TightnessReport::new(n, current_diameter)?;
    if original_report.k != k {
        return Err(Error::OutOfRange(format!(
            "diameter {current_diameter} is {}-tight for N = {n}, not {k}-tight",
            original_report.k
        )));
    }
    let target = original_report.lower_bound + k + 2;
    let mut best: Option<(u64, u64, LShape, CayleyDigraph2)> = None;
    for m in square_divisors_desc(n).into_iter().filter(|&m| m >= 2) {
        // m * (d_H + 2) < target  <=>  d_H <= ceil(target / m) - 3
        let Some(max_dh) = target.div_ceil(m).checked_sub(3) else {
            continue;
        };
        let area = n / (m * m);
        let mut found: Option<(u64, LShape, CayleyDigraph2)> = None;
        for shape in enumerate_lshapes(area, Some(max_dh)) {
            let dh = shape.diameter_unchecked();
            if matches!(&found, Some((fd, fs, _)) if (*fd, *fs) <= (dh, shape)) {
                continue;
            }
            if let Some(d) = improved_digraph(&shape, m) {
                found = Some((dh, shape, d));
            }
        }
        if let Some((dh, shape, d)) = found {
            let diam = m * (dh + 2) - 2;
            if best.as_ref().map_or(true, |(bd, ..)| diam < *bd) {
                best = Some((diam, m, shape, d));
            }
        }
    }
    let Some((diam, m, shape, improved)) = best else {
        return Ok(None);
    };
    Ok(Some(ImprovementRecord {
        original,
        original_report,
        m,
        intermediate_area: shape.area(),
        intermediate: shape,
        improved,
        improved_mdd: shape.scale(m)?,
        improved_report: TightnessReport::new(n, diam)?,
    }))
}

/// `m * digraph_of(H)`, or the digraph of `m * H` directly when `H` alone is
/// too small to carry two distinct non-zero generators.
fn improved_digraph(shape: &LShape, m: u64) -> Option<CayleyDigraph2> {
    match digraph_of(shape) {
        Ok(d) => extend(&d, m).ok(),
        Err(_) => digraph_of(&shape.scale(m).ok()?).ok(),
    }
}
