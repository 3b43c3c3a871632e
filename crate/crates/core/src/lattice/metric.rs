//! The `gcd_b` norm on `L ∪ {O}` and the metric `d_b` it induces.
//!
//! Two nonzero points share a *b-curve of vision* when they lie on the same
//! curve `y = a·x^b` through the origin. Dividing a point by its norm
//! (`(r/k, s/k^b)` with `k = ‖A‖_b`) yields the first lattice point on that
//! curve, so curve membership is an exact integer comparison.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_b, Exponent, LatticePoint};

/// A lattice point or the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtendedPoint {
    Origin,
    Point(LatticePoint),
}

impl From<LatticePoint> for ExtendedPoint {
    fn from(p: LatticePoint) -> Self {
        Self::Point(p)
    }
}

/// `‖A‖_b`: `gcd_b` for lattice points, 0 at the origin.
pub fn norm_b(a: ExtendedPoint, b: Exponent) -> u64 {
    match a {
        ExtendedPoint::Origin => 0,
        ExtendedPoint::Point(p) => gcd_b(p, b),
    }
}

/// The b-visible point on `p`'s curve of vision: `(r/k, s/k^b)`, `k = ‖p‖_b`.
pub fn curve_base(p: LatticePoint, b: Exponent) -> (u64, u64) {
    let k = gcd_b(p, b);
    // k^b divides s, so it cannot overflow.
    (p.r() / k, p.s() / k.pow(b.get()))
}

/// Whether `a` and `b` lie on the same curve `y = c·x^b`.
pub fn same_b_curve(a: LatticePoint, b_pt: LatticePoint, b: Exponent) -> bool {
    curve_base(a, b) == curve_base(b_pt, b)
}

/// `|‖B‖ − ‖A‖|` on a shared curve (the origin lies on every curve),
/// `‖A‖ + ‖B‖` otherwise.
pub fn d_b(a: ExtendedPoint, b_pt: ExtendedPoint, b: Exponent) -> u64 {
    let (na, nb) = (norm_b(a, b), norm_b(b_pt, b));
    let shared = match (a, b_pt) {
        (ExtendedPoint::Point(p), ExtendedPoint::Point(q)) => same_b_curve(p, q, b),
        _ => true,
    };
    if shared {
        na.abs_diff(nb)
    } else {
        na + nb
    }
}
