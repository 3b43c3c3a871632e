//! Neighbor counts and component sizes of `G_b` over growing windows.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::window::{ComponentStats, Window, WindowGraph};
use crate::arith::{gcd_b, zeta_exact, Exponent, LatticePoint, VisibilityColumn};
use crate::error::{Error, Result};
use crate::lattice::{RawSum, WindowStats};

/// Experimental density of the largest component of `G_1` in `T_N`.
pub const LARGEST_COMPONENT_DENSITY_B1: f64 = 0.58368;
/// Experimental share of visible points in the largest component of `G_1`.
pub const LARGEST_COMPONENT_RATIO_B1: f64 = 0.96;

/// The four unit offsets, in the order left, right, down, up.
pub const EDGE_OFFSETS: [(i64, i64); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];

/// Number of b-visible points among the (up to four) lattice neighbors of `p`.
pub fn visible_neighbor_count(p: LatticePoint, b: Exponent) -> u8 {
    EDGE_OFFSETS
        .iter()
        .filter_map(|&(dr, ds)| p.offset(dr, ds))
        .filter(|&q| gcd_b(q, b) == 1)
        .count() as u8
}

/// Mean of [`visible_neighbor_count`] over `T_N`, against `4/ζ(b+1)`.
///
/// Each visible `q` in `[1, N+1]²` is counted once per neighbor it has in
/// `T_N`, so the sum reduces to per-column visible counts with endpoint
/// corrections.
pub fn mean_connectivity_estimate(b: Exponent, n: u64) -> Result<WindowStats> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "mean connectivity needs N >= 3, got {n}"
        )));
    }
    let len = (n + 1) as usize;
    let sum: u64 = (1..=n + 1)
        .into_par_iter()
        .map(|r| {
            let col = VisibilityColumn::new(r, b, 1, len);
            let all = col.count_visible();
            let at = |s: u64| u64::from(col.get(s));
            // Visible points of the column with s in [1, N].
            let inner = all - at(n + 1);
            let horizontal = inner * (u64::from(r >= 2) + u64::from(r < n));
            let vertical = if r <= n {
                // Down-neighbors from s in [2, N+1], up-neighbors from s in [1, N−1].
                (all - at(1)) + (all - at(n) - at(n + 1))
            } else {
                0
            };
            horizontal + vertical
        })
        .sum();
    let target = 4.0 / zeta_exact(b.zeta_argument());
    Ok(WindowStats::over_square(
        "mean_connectivity",
        b,
        n,
        RawSum::Exact(sum.into()),
        target,
    ))
}

/// Component statistics of `G_b` restricted to `T_N`.
pub fn largest_component_density(b: Exponent, n: u64) -> Result<ComponentStats> {
    if n < 100 {
        return Err(Error::InvalidArgument(format!(
            "largest component density needs N >= 100, got {n}"
        )));
    }
    Ok(WindowGraph::new(b, Window::square(n)?)?.stats())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendPoint {
    #[serde(rename = "N")]
    pub n: u64,
    pub visible: u64,
    pub components: u64,
    pub largest: u64,
    pub largest_density: f64,
    pub largest_ratio: f64,
    pub largest_touches_boundary: bool,
}

/// Experimental values the `b = 1` trend is compared with.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentalReference {
    pub density: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentTrend {
    pub b: u32,
    pub points: Vec<TrendPoint>,
    /// Present only for `b = 1`; no reference values exist for larger `b`.
    pub reference: Option<ExperimentalReference>,
}

/// [`largest_component_density`] for every `N` of `schedule`, windows in
/// parallel, reported in schedule order.
pub fn component_trend(b: Exponent, schedule: &[u64]) -> Result<ComponentTrend> {
    let points = schedule
        .par_iter()
        .map(|&n| {
            largest_component_density(b, n).map(|st| TrendPoint {
                n,
                visible: st.visible,
                components: st.components,
                largest: st.largest,
                largest_density: st.largest_density,
                largest_ratio: st.largest_ratio,
                largest_touches_boundary: st.largest_touches_boundary,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let reference = (b.get() == 1).then_some(ExperimentalReference {
        density: LARGEST_COMPONENT_DENSITY_B1,
        ratio: LARGEST_COMPONENT_RATIO_B1,
    });
    Ok(ComponentTrend {
        b: b.get(),
        points,
        reference,
    })
}
