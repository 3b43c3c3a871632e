//! The graph `G_b`: vertices are b-visible points, edges join points at
//! distance 1.

mod connectivity;
mod lonesome;
mod window;

pub use connectivity::{
    component_trend, largest_component_density, mean_connectivity_estimate, visible_neighbor_count, ComponentTrend,
    ExperimentalReference, TrendPoint, EDGE_OFFSETS, LARGEST_COMPONENT_DENSITY_B1, LARGEST_COMPONENT_RATIO_B1,
};
pub use lonesome::{
    find_lonesome, lonesome_certificate, LonesomeCertificate, LonesomeStrategy, Method, RingCell, RING_OFFSETS,
};
pub use window::{ComponentStats, Components, Window, WindowGraph};
