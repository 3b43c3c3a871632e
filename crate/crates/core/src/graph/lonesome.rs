//! Lonesome points: b-visible points whose eight surrounding points are all
//! b-invisible. The ring uses the 8-neighborhood, unlike the edges of `G_b`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::window::{Window, WindowGraph};
use crate::arith::{try_gcd_b, Exponent, LatticePoint};
use crate::error::Result;
use crate::patterns::{decimal, realize, BPattern, CellStatus, RealizeOptions};

/// The ring offsets `(i, j)`, `i` major.
pub const RING_OFFSETS: [(i64, i64); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];

#[derive(Clone, Debug, PartialEq)]
pub enum LonesomeStrategy {
    /// First lonesome point of the window in row-major order, among points
    /// with `r, s ≥ 2`.
    Scan(Window),
    /// Realize the ring-of-crosses pattern and take its center.
    Construct(RealizeOptions),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingCell {
    pub di: i64,
    pub dj: i64,
    pub visible: bool,
    /// Known when the gcd factored completely.
    #[serde(with = "decimal::option")]
    pub gcd_b: Option<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Every `gcd_b` computed directly.
    Direct,
    /// Read off the verifier's report for a realized pattern.
    Realization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LonesomeCertificate {
    pub b: u32,
    #[serde(with = "decimal")]
    pub r: BigUint,
    #[serde(with = "decimal")]
    pub s: BigUint,
    pub method: Method,
    pub center: RingCell,
    /// In [`RING_OFFSETS`] order.
    pub ring: Vec<RingCell>,
}

impl LonesomeCertificate {
    /// The center is visible and every ring point is invisible.
    pub fn is_lonesome(&self) -> bool {
        self.center.visible && self.ring.len() == 8 && self.ring.iter().all(|c| !c.visible)
    }
}

fn direct_cell(p: LatticePoint, di: i64, dj: i64, b: Exponent) -> Result<RingCell> {
    let g = try_gcd_b(
        p.r().saturating_add_signed(di),
        p.s().saturating_add_signed(dj),
        b.get(),
    )?;
    Ok(RingCell {
        di,
        dj,
        visible: g == 1,
        gcd_b: Some(g.into()),
    })
}

/// Certificate for `p` by direct evaluation; `p` needs `r, s ≥ 2`.
pub fn lonesome_certificate(p: LatticePoint, b: Exponent) -> Result<LonesomeCertificate> {
    let ring = RING_OFFSETS
        .iter()
        .map(|&(di, dj)| direct_cell(p, di, dj, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(LonesomeCertificate {
        b: b.get(),
        r: p.r().into(),
        s: p.s().into(),
        method: Method::Direct,
        center: direct_cell(p, 0, 0, b)?,
        ring,
    })
}

fn scan(b: Exponent, window: Window) -> Result<Option<LonesomeCertificate>> {
    let (r0, s0) = (window.r0.max(2), window.s0.max(2));
    if r0 > window.r1 || s0 > window.s1 {
        return Ok(None);
    }
    let padded = Window::new(r0 - 1, window.r1 + 1, s0 - 1, window.s1 + 1)?;
    let g = WindowGraph::new(b, padded)?;
    for s in s0..=window.s1 {
        for r in r0..=window.r1 {
            let lonesome = g.is_visible(r, s)
                && RING_OFFSETS
                    .iter()
                    .all(|&(di, dj)| !g.is_visible(r.wrapping_add_signed(di), s.wrapping_add_signed(dj)));
            if lonesome {
                return lonesome_certificate(LatticePoint::new(r, s)?, b).map(Some);
            }
        }
    }
    Ok(None)
}

fn construct(b: Exponent, opts: &RealizeOptions) -> Result<LonesomeCertificate> {
    let pattern = BPattern::lonesome(b);
    let real = realize(&pattern, opts)?;
    let check = real.verify(&pattern, opts.verify_bound);
    let (cr, cs) = pattern.circles()[0];
    let cell_at = |di: i64, dj: i64| {
        let (r, s) = (cr.wrapping_add_signed(di), cs.wrapping_add_signed(dj));
        let verdict = check
            .cells
            .iter()
            .find(|c| (c.r, c.s) == (r, s))
            .expect("the ring lies inside the pattern");
        RingCell {
            di,
            dj,
            visible: verdict.status == CellStatus::Visible,
            gcd_b: verdict.gcd_b.clone(),
        }
    };
    Ok(LonesomeCertificate {
        b: b.get(),
        r: &real.u + cr,
        s: &real.v + cs,
        method: Method::Realization,
        center: cell_at(0, 0),
        ring: RING_OFFSETS.iter().map(|&(di, dj)| cell_at(di, dj)).collect(),
    })
}

/// A lonesome point found by `strategy`. A scan that finds nothing returns
/// `None`; lonesome points need not occur in small windows.
pub fn find_lonesome(b: Exponent, strategy: &LonesomeStrategy) -> Result<Option<LonesomeCertificate>> {
    match strategy {
        LonesomeStrategy::Scan(window) => scan(b, *window),
        LonesomeStrategy::Construct(opts) => construct(b, opts).map(Some),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn first_b1_scan_hit_checked_with_plain_gcd() {
        let window = Window::square(200).unwrap();
        let cert = find_lonesome(Exponent::ONE, &LonesomeStrategy::Scan(window))
            .unwrap()
            .unwrap();
        assert!(cert.is_lonesome());
        let (r, s) = (cert.r.to_u64().unwrap(), cert.s.to_u64().unwrap());
        assert_eq!(num_integer::gcd(r, s), 1);
        for (di, dj) in RING_OFFSETS {
            assert_ne!(
                num_integer::gcd(r.wrapping_add_signed(di), s.wrapping_add_signed(dj)),
                1
            );
        }
        // Nothing earlier in row-major order qualifies.
        for s2 in 2..=s {
            for r2 in 2..=200 {
                if (s2, r2) >= (s, r) {
                    break;
                }
                let c = lonesome_certificate(LatticePoint::new(r2, s2).unwrap(), Exponent::ONE).unwrap();
                assert!(!c.is_lonesome(), "({r2}, {s2})");
            }
        }
    }

    #[test]
    fn non_lonesome_point() {
        let cert = lonesome_certificate(LatticePoint::new(2, 2).unwrap(), Exponent::ONE).unwrap();
        assert!(!cert.is_lonesome());
        assert_eq!(cert.ring[1].gcd_b, Some(BigUint::from(1u32)));
    }

    #[test]
    fn constructed_point_b2() {
        let cert = find_lonesome(Exponent::TWO, &LonesomeStrategy::Construct(RealizeOptions::default()))
            .unwrap()
            .unwrap();
        assert!(cert.is_lonesome());
        assert_eq!(cert.method, Method::Realization);
    }

    #[test]
    fn empty_scan_window() {
        let window = Window::new(1, 1, 1, 50).unwrap();
        assert_eq!(
            find_lonesome(Exponent::ONE, &LonesomeStrategy::Scan(window)).unwrap(),
            None
        );
    }
}
