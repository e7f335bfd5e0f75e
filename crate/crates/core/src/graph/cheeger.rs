use num_rational::Ratio;

use super::multigraph::MultiGraph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by the subset enumeration.
pub const CHEEGER_BRUTE_FORCE_CAP: usize = 16;

/// Denominator used by the Cheeger ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheegerNormalization {
    /// `|∂S| / vol(S)` over nonempty `S` with `vol(S) <= vol(V) / 2`.
    #[default]
    Volume,
    /// `|∂S| / |S|` over nonempty `S` with `|S| <= |V| / 2`.
    EdgeExpansion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub subset: Vec<usize>,
    pub boundary_size: usize,
    pub volume: usize,
}

impl Cut {
    pub fn of(g: &MultiGraph, subset: &[usize]) -> Cut {
        let mut member = vec![false; g.vertex_count()];
        for &v in subset {
            member[v] = true;
        }
        let boundary_size = g.half_edges().iter().filter(|he| member[he.tail] && !member[he.head]).count();
        let volume = subset.iter().map(|&v| g.degree(v)).sum();
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        Cut { subset, boundary_size, volume }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheegerResult {
    pub value: Ratio<i64>,
    pub cut: Cut,
}

/// Exact Cheeger constant by enumeration of all vertex subsets.
pub fn cheeger_constant(g: &MultiGraph) -> Result<CheegerResult> {
    cheeger_constant_with(g, CheegerNormalization::Volume)
}

pub fn cheeger_constant_with(g: &MultiGraph, normalization: CheegerNormalization) -> Result<CheegerResult> {
    let n = g.vertex_count();
    if n > CHEEGER_BRUTE_FORCE_CAP {
        return Err(Error::SizeCap {
            what: "exact Cheeger constant (no approximation offered)",
            size: n,
            cap: CHEEGER_BRUTE_FORCE_CAP,
        });
    }
    if n < 2 {
        return Err(Error::invalid("Cheeger constant needs at least two vertices"));
    }
    g.require_connected()?;

    // Each edge as a bitmask pair; loops never cross a cut.
    let crossing: Vec<(u32, u32)> =
        g.edges().into_iter().filter(|(u, v)| u != v).map(|(u, v)| (1u32 << u, 1u32 << v)).collect();
    let degree = g.degrees();
    let total_volume: usize = degree.iter().sum();

    let mut best: Option<(Ratio<i64>, u32)> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        let volume: usize = (0..n).filter(|&v| mask & (1 << v) != 0).map(|v| degree[v]).sum();
        let (denominator, admissible) = match normalization {
            CheegerNormalization::Volume => (volume, 2 * volume <= total_volume),
            CheegerNormalization::EdgeExpansion => (size, 2 * size <= n),
        };
        if !admissible || denominator == 0 {
            continue;
        }
        let boundary = crossing.iter().filter(|&&(a, b)| (mask & a != 0) != (mask & b != 0)).count();
        let ratio = Ratio::new(boundary as i64, denominator as i64);
        if best.as_ref().is_none_or(|(r, _)| ratio < *r) {
            best = Some((ratio, mask));
        }
    }
    let (value, mask) = best.ok_or_else(|| Error::invalid("no admissible vertex subset for the Cheeger ratio"))?;
    let subset: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
    Ok(CheegerResult { value, cut: Cut::of(g, &subset) })
}
