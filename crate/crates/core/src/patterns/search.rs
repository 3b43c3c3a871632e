//! Translate searches over `1 ≤ u ≤ bound`, `0 ≤ v ≤ bound`, scanned with `u`
//! outermost so the first hit is the lexicographically smallest `(u, v)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BPattern, Cell, PatternError};
use crate::arith::{Exponent, VisibilityColumn};

/// `w` consecutive columns `u + 1, …, u + w`, each holding rows `1..=len`.
struct ColumnWindow {
    b: Exponent,
    cols: Vec<VisibilityColumn>,
    u: u64,
}

impl ColumnWindow {
    fn new(b: Exponent, w: u64, u: u64, len: usize) -> Self {
        let cols = (1..=w).map(|k| VisibilityColumn::new(u + k, b, 1, len)).collect();
        Self { b, cols, u }
    }

    fn advance(&mut self) {
        self.u += 1;
        self.cols.rotate_left(1);
        let w = self.cols.len() as u64;
        let last = self.cols.last_mut().expect("w ≥ 1");
        last.fill(self.u + w, self.b);
    }
}

/// Per-column `(mask, value)` chunks of 64 rows: the marked rows and which of
/// them must be visible.
fn column_requirements(pattern: &BPattern) -> Vec<Vec<(u64, u64)>> {
    let chunks = pattern.height().div_ceil(64) as usize;
    (1..=pattern.width())
        .map(|r| {
            let mut req = vec![(0u64, 0u64); chunks];
            for s in 1..=pattern.height() {
                let (i, bit) = (((s - 1) / 64) as usize, (s - 1) % 64);
                match pattern.cell(r, s) {
                    Cell::Circle => {
                        req[i].0 |= 1 << bit;
                        req[i].1 |= 1 << bit;
                    }
                    Cell::Cross => req[i].0 |= 1 << bit,
                    Cell::Blank => {}
                }
            }
            req
        })
        .collect()
}

/// The first translate `(u, v) + P` matching every marked cell, checked by
/// direct visibility. `None` means nothing under the bound, which is not the
/// same as unrealizable.
pub fn brute_force_realize(pattern: &BPattern, bound: u64) -> Option<(u64, u64)> {
    let h = pattern.height();
    let req = column_requirements(pattern);
    let len = (bound + h) as usize;
    let mut window = ColumnWindow::new(pattern.b(), pattern.width(), 1, len);
    for u in 1..=bound {
        if u > 1 {
            window.advance();
        }
        for v in 0..=bound as usize {
            let fits = window.cols.iter().zip(&req).all(|(col, chunks)| {
                chunks.iter().enumerate().all(|(i, &(mask, value))| {
                    let count = (h - 64 * i as u64).min(64) as u32;
                    (col.bits(v + 64 * i, count) ^ value) & mask == 0
                })
            });
            if fits {
                return Some((u, v as u64));
            }
        }
    }
    None
}

/// Largest `w·h` a census will tabulate.
pub const MAX_CENSUS_CELLS: u64 = 24;

const UNSEEN: u64 = u64::MAX;
const CENSUS_BLOCK: u64 = 2048;

/// For every circle/cross assignment of a `w × h` block, the first translate
/// at which it occurs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub b: Exponent,
    pub w: u64,
    pub h: u64,
    pub bound: u64,
    /// Indexed by signature: bit `(s − 1)·w + (r − 1)` set iff the cell is a circle.
    first: Vec<Option<(u64, u64)>>,
}

impl Census {
    /// Scans all translates with `1 ≤ u ≤ bound`, `0 ≤ v ≤ bound` once.
    pub fn sweep(b: Exponent, w: u64, h: u64, bound: u64) -> Result<Self, PatternError> {
        if w == 0 || h == 0 {
            return Err(PatternError::EmptyPattern { w, h });
        }
        if w * h > MAX_CENSUS_CELLS || bound >= u64::from(u32::MAX) {
            return Err(PatternError::CensusTooLarge { w, h, bound });
        }
        let cells = (w * h) as u32;
        let blocks: Vec<u64> = (0..bound.div_ceil(CENSUS_BLOCK))
            .map(|i| 1 + i * CENSUS_BLOCK)
            .collect();
        let tables: Vec<Vec<u64>> = blocks
            .par_iter()
            .map(|&u0| sweep_block(b, w, h, u0, (u0 + CENSUS_BLOCK - 1).min(bound), bound))
            .collect();
        // Column-major signatures from the sweep, reordered row-major.
        let mut first = vec![None; 1 << cells];
        for sig in 0..first.len() {
            let packed = tables.iter().map(|t| t[sig]).min().unwrap_or(UNSEEN);
            if packed == UNSEEN {
                continue;
            }
            let mut row_major = 0usize;
            for k in 0..w {
                for s in 0..h {
                    if sig >> (k * h + s) & 1 == 1 {
                        row_major |= 1 << (s * w + k);
                    }
                }
            }
            first[row_major] = Some((packed >> 32, packed & 0xFFFF_FFFF));
        }
        Ok(Self { b, w, h, bound, first })
    }

    /// First translate of the block with this row-major signature.
    pub fn first(&self, signature: usize) -> Option<(u64, u64)> {
        self.first[signature]
    }

    /// How many of the `2^{w·h}` blocks occur under the bound.
    pub fn occurring(&self) -> usize {
        self.first.iter().filter(|f| f.is_some()).count()
    }

    /// First translate of a pattern that fits in the census block, taking the
    /// minimum over all full blocks agreeing with its marked cells.
    pub fn find(&self, pattern: &BPattern) -> Option<(u64, u64)> {
        assert!(pattern.b() == self.b, "census and pattern use different exponents");
        assert!(
            pattern.width() <= self.w && pattern.height() <= self.h,
            "pattern exceeds the census block"
        );
        let (mut mask, mut value) = (0usize, 0usize);
        for ((r, s), cell) in pattern.cells() {
            let bit = 1usize << ((s - 1) * self.w + (r - 1));
            match cell {
                Cell::Circle => {
                    mask |= bit;
                    value |= bit;
                }
                Cell::Cross => mask |= bit,
                Cell::Blank => {}
            }
        }
        (0..self.first.len())
            .filter(|sig| sig & mask == value)
            .filter_map(|sig| self.first[sig])
            .min()
    }
}

/// `out[v]` = the `h` visibility bits of rows `v + 1, …, v + h`, for `0 ≤ v ≤ bound`.
fn row_windows(col: &VisibilityColumn, h: u64, bound: u64, out: &mut Vec<u32>) {
    out.clear();
    let mask = (1u64 << h) - 1;
    let n = bound as usize + 1;
    for j in 0..n.div_ceil(64) {
        let x = u128::from(col.bits(64 * j, 64)) | u128::from(col.bits(64 * j + 64, 64)) << 64;
        let rows = (n - 64 * j).min(64);
        out.extend((0..rows).map(|o| ((x >> o) as u64 & mask) as u32));
    }
}

fn sweep_block(b: Exponent, w: u64, h: u64, u_start: u64, u_end: u64, bound: u64) -> Vec<u64> {
    match w {
        1 => sweep_block_fixed::<1>(b, h, u_start, u_end, bound),
        2 => sweep_block_fixed::<2>(b, h, u_start, u_end, bound),
        3 => sweep_block_fixed::<3>(b, h, u_start, u_end, bound),
        4 => sweep_block_fixed::<4>(b, h, u_start, u_end, bound),
        _ => sweep_block_any(b, w, h, u_start, u_end, bound),
    }
}

/// Rotates the per-column row windows as `u` advances by one.
struct WindowRing {
    b: Exponent,
    h: u64,
    bound: u64,
    col: VisibilityColumn,
    ring: Vec<Vec<u32>>,
}

impl WindowRing {
    fn new(b: Exponent, w: u64, h: u64, u: u64, bound: u64) -> Self {
        let len = (bound + h + 128) as usize;
        let mut this = Self {
            b,
            h,
            bound,
            col: VisibilityColumn::new(1, b, 1, len),
            ring: vec![Vec::new(); w as usize],
        };
        for k in 0..w {
            this.load(k as usize, u + 1 + k);
        }
        this
    }

    fn load(&mut self, slot: usize, r: u64) {
        self.col.fill(r, self.b);
        row_windows(&self.col, self.h, self.bound, &mut self.ring[slot]);
    }

    /// Moves from `u` to `u + 1`.
    fn advance(&mut self, u: u64) {
        self.ring.rotate_left(1);
        let w = self.ring.len();
        self.load(w - 1, u + 1 + w as u64);
    }
}

fn record(table: &mut [u64], sig: u32, u: u64, v: usize) {
    let slot = &mut table[sig as usize];
    if *slot == UNSEEN {
        *slot = u << 32 | v as u64;
    }
}

fn sweep_block_fixed<const W: usize>(b: Exponent, h: u64, u_start: u64, u_end: u64, bound: u64) -> Vec<u64> {
    let mut table = vec![UNSEEN; 1 << (W as u64 * h)];
    let mut ring = WindowRing::new(b, W as u64, h, u_start, bound);
    let n = bound as usize + 1;
    let shift = h as u32;
    for u in u_start..=u_end {
        if u > u_start {
            ring.advance(u - 1);
        }
        let cols: [&[u32]; W] = std::array::from_fn(|k| &ring.ring[k][..n]);
        for v in 0..n {
            let mut sig = 0u32;
            for (k, c) in cols.iter().enumerate() {
                sig |= c[v] << (k as u32 * shift);
            }
            record(&mut table, sig, u, v);
        }
    }
    table
}

fn sweep_block_any(b: Exponent, w: u64, h: u64, u_start: u64, u_end: u64, bound: u64) -> Vec<u64> {
    let mut table = vec![UNSEEN; 1 << (w * h)];
    let mut ring = WindowRing::new(b, w, h, u_start, bound);
    for u in u_start..=u_end {
        if u > u_start {
            ring.advance(u - 1);
        }
        for v in 0..=bound as usize {
            let sig = ring
                .ring
                .iter()
                .enumerate()
                .fold(0u32, |acc, (k, c)| acc | c[v] << (k as u64 * h));
            record(&mut table, sig, u, v);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::try_gcd_b;

    fn naive(pattern: &BPattern, bound: u64) -> Option<(u64, u64)> {
        let b = pattern.b().get();
        (1..=bound)
            .flat_map(|u| (0..=bound).map(move |v| (u, v)))
            .find(|&(u, v)| {
                pattern.cells().all(|((r, s), cell)| {
                    let visible = try_gcd_b(u + r, v + s, b).unwrap() == 1;
                    match cell {
                        Cell::Circle => visible,
                        Cell::Cross => !visible,
                        Cell::Blank => true,
                    }
                })
            })
    }

    #[test]
    fn two_by_two_square() {
        let p = BPattern::square(Exponent::TWO, 2).unwrap();
        assert_eq!(brute_force_realize(&p, 100), Some((1, 0)));
    }

    #[test]
    fn single_circle_at_origin_translate() {
        let p = BPattern::filled(Exponent::TWO, 1, 1, Cell::Circle).unwrap();
        assert_eq!(brute_force_realize(&p, 10), Some((1, 0)));
    }

    #[test]
    fn agrees_with_naive_search() {
        let b = Exponent::TWO;
        for text in [
            "b=2 w=2 h=3\nxo\nox\nxx",
            "b=2 w=3 h=2\nx.x\n.o.",
            "b=2 w=2 h=2\nxx\nxx",
        ] {
            let p: BPattern = text.parse().unwrap();
            assert_eq!(brute_force_realize(&p, 300), naive(&p, 300), "{text}");
        }
        let tall = BPattern::from_fn(
            b,
            9,
            70,
            |r, s| if (r + s) % 5 == 0 { Cell::Cross } else { Cell::Blank },
        )
        .unwrap();
        assert_eq!(brute_force_realize(&tall, 40), naive(&tall, 40));
    }

    #[test]
    fn census_matches_direct_search() {
        let b = Exponent::TWO;
        let census = Census::sweep(b, 2, 3, 150).unwrap();
        for sig in 0..64usize {
            let p = BPattern::from_fn(b, 2, 3, |r, s| {
                if sig >> ((s - 1) * 2 + (r - 1)) & 1 == 1 {
                    Cell::Circle
                } else {
                    Cell::Cross
                }
            })
            .unwrap();
            assert_eq!(census.first(sig), naive(&p, 150), "signature {sig:06b}");
            assert_eq!(census.find(&p), census.first(sig));
        }
        let sub: BPattern = "b=2 w=2 h=1\nxo".parse().unwrap();
        assert_eq!(census.find(&sub), naive(&sub, 150));
    }

    #[test]
    fn wide_census_matches_direct_search() {
        let b = Exponent::ONE;
        let census = Census::sweep(b, 6, 1, 80).unwrap();
        for sig in [0usize, 0b101010, 0b111111, 0b010101, 0b100001] {
            let p = BPattern::from_fn(b, 6, 1, |r, _| {
                if sig >> (r - 1) & 1 == 1 {
                    Cell::Circle
                } else {
                    Cell::Cross
                }
            })
            .unwrap();
            assert_eq!(census.first(sig), naive(&p, 80), "signature {sig:06b}");
        }
    }
}
