//! The graph `G_b` restricted to a rectangular window: vertices are the
//! b-visible points, edges join points at Euclidean distance 1.

use std::collections::BTreeMap;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Exponent, VisibilityColumn};
use crate::error::{Error, Result};

/// The rectangle `[r0, r1] × [s0, s1]`, all coordinates at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub r0: u64,
    pub r1: u64,
    pub s0: u64,
    pub s1: u64,
}

impl Window {
    pub fn new(r0: u64, r1: u64, s0: u64, s1: u64) -> Result<Self> {
        if r0 == 0 || s0 == 0 || r1 < r0 || s1 < s0 {
            return Err(Error::InvalidArgument(format!(
                "window [{r0}, {r1}] × [{s0}, {s1}] must be nonempty with positive corners"
            )));
        }
        Ok(Self { r0, r1, s0, s1 })
    }

    /// `T_N = [1, N]²`.
    pub fn square(n: u64) -> Result<Self> {
        Self::new(1, n, 1, n)
    }

    pub fn width(&self) -> u64 {
        self.r1 - self.r0 + 1
    }

    pub fn height(&self) -> u64 {
        self.s1 - self.s0 + 1
    }

    pub fn area(&self) -> u64 {
        self.width() * self.height()
    }

    pub fn contains(&self, r: u64, s: u64) -> bool {
        (self.r0..=self.r1).contains(&r) && (self.s0..=self.s1).contains(&s)
    }

    fn on_boundary(&self, r: u64, s: u64) -> bool {
        r == self.r0 || r == self.r1 || s == self.s0 || s == self.s1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowGraph {
    b: Exponent,
    window: Window,
    /// Row-major from `s = s0`: index `(s − s0)·width + (r − r0)`.
    visible: Vec<bool>,
}

/// Component labels in first-appearance order of a row-major scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// `labels[i]` for visible cells, `None` otherwise.
    pub labels: Vec<Option<u32>>,
    pub sizes: Vec<u64>,
    pub touches_boundary: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub b: u32,
    pub window: Window,
    pub visible: u64,
    pub edges: u64,
    pub components: u64,
    /// `size → number of components of that size`.
    pub size_histogram: BTreeMap<u64, u64>,
    pub largest: u64,
    /// `largest / visible`.
    pub largest_ratio: f64,
    /// `largest / area`.
    pub largest_density: f64,
    /// Components reaching the window edge may merge outside it.
    pub boundary_components: u64,
    pub largest_touches_boundary: bool,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        // The smaller index stays root, so roots do not depend on merge order.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi as usize] = lo;
    }
}

impl WindowGraph {
    /// Visibility of every window point, sieved column by column.
    pub fn new(b: Exponent, window: Window) -> Result<Self> {
        let (w, h) = (window.width() as usize, window.height() as usize);
        if (w as u64).checked_mul(h as u64).is_none_or(|a| a > u32::MAX as u64) {
            return Err(Error::InvalidArgument(format!(
                "window area {w}×{h} is too large for a bitmap"
            )));
        }
        let columns: Vec<VisibilityColumn> = (window.r0..=window.r1)
            .into_par_iter()
            .map(|r| VisibilityColumn::new(r, b, window.s0, h))
            .collect();
        let mut visible = vec![false; w * h];
        for (x, col) in columns.iter().enumerate() {
            for y in 0..h {
                visible[y * w + x] = col.get(window.s0 + y as u64);
            }
        }
        Ok(Self { b, window, visible })
    }

    /// A graph over an explicit bitmap, row-major from `s = s0`.
    pub fn from_bitmap(b: Exponent, window: Window, visible: Vec<bool>) -> Result<Self> {
        if visible.len() as u64 != window.area() {
            return Err(Error::InvalidArgument(format!(
                "bitmap has {} cells, window has {}",
                visible.len(),
                window.area()
            )));
        }
        Ok(Self { b, window, visible })
    }

    pub fn b(&self) -> Exponent {
        self.b
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn index(&self, r: u64, s: u64) -> usize {
        ((s - self.window.s0) * self.window.width() + (r - self.window.r0)) as usize
    }

    /// Visibility of a window point; `false` outside the window.
    pub fn is_visible(&self, r: u64, s: u64) -> bool {
        self.window.contains(r, s) && self.visible[self.index(r, s)]
    }

    pub fn visible_count(&self) -> u64 {
        self.visible.iter().filter(|&&v| v).count() as u64
    }

    /// Edges with both endpoints visible and inside the window.
    pub fn edge_count(&self) -> u64 {
        let (w, h) = (self.window.width() as usize, self.window.height() as usize);
        let mut edges = 0;
        for y in 0..h {
            for x in 0..w {
                let i = y * w + x;
                if !self.visible[i] {
                    continue;
                }
                edges += u64::from(x + 1 < w && self.visible[i + 1]) + u64::from(y + 1 < h && self.visible[i + w]);
            }
        }
        edges
    }

    pub fn components(&self) -> Components {
        let (w, h) = (self.window.width() as usize, self.window.height() as usize);
        let mut parent: Vec<u32> = (0..(w * h) as u32).collect();
        for y in 0..h {
            for x in 0..w {
                let i = y * w + x;
                if !self.visible[i] {
                    continue;
                }
                if x + 1 < w && self.visible[i + 1] {
                    union(&mut parent, i as u32, (i + 1) as u32);
                }
                if y + 1 < h && self.visible[i + w] {
                    union(&mut parent, i as u32, (i + w) as u32);
                }
            }
        }
        let mut root_label: Vec<Option<u32>> = vec![None; w * h];
        let mut labels = vec![None; w * h];
        let mut sizes = Vec::new();
        let mut touches_boundary = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let i = y * w + x;
                if !self.visible[i] {
                    continue;
                }
                let root = find(&mut parent, i as u32) as usize;
                let label = *root_label[root].get_or_insert_with(|| {
                    sizes.push(0);
                    touches_boundary.push(false);
                    (sizes.len() - 1) as u32
                });
                labels[i] = Some(label);
                sizes[label as usize] += 1;
                let (r, s) = (self.window.r0 + x as u64, self.window.s0 + y as u64);
                if self.window.on_boundary(r, s) {
                    touches_boundary[label as usize] = true;
                }
            }
        }
        Components {
            labels,
            sizes,
            touches_boundary,
        }
    }

    /// Component label of a window point, if it is visible.
    pub fn label_of(&self, components: &Components, r: u64, s: u64) -> Option<u32> {
        if !self.window.contains(r, s) {
            return None;
        }
        components.labels[self.index(r, s)]
    }

    pub fn stats(&self) -> ComponentStats {
        let comps = self.components();
        let visible = self.visible_count();
        let mut size_histogram = BTreeMap::new();
        for &size in &comps.sizes {
            *size_histogram.entry(size).or_insert(0) += 1;
        }
        // Ties go to the first label in scan order.
        let largest_label = comps
            .sizes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i);
        let largest = largest_label.map_or(0, |i| comps.sizes[i]);
        ComponentStats {
            b: self.b.get(),
            window: self.window,
            visible,
            edges: self.edge_count(),
            components: comps.sizes.len() as u64,
            size_histogram,
            largest,
            largest_ratio: if visible == 0 {
                0.0
            } else {
                largest as f64 / visible as f64
            },
            largest_density: largest as f64 / self.window.area() as f64,
            boundary_components: comps.touches_boundary.iter().filter(|&&t| t).count() as u64,
            largest_touches_boundary: largest_label.is_some_and(|i| comps.touches_boundary[i]),
        }
    }

    /// Plain PBM (`P1`) with black for visible points, top row `s = s1`.
    pub fn write_pbm(&self, mut out: impl Write) -> io::Result<()> {
        let (w, h) = (self.window.width() as usize, self.window.height() as usize);
        writeln!(out, "P1\n{w} {h}")?;
        for y in (0..h).rev() {
            let row: Vec<&str> = (0..w)
                .map(|x| if self.visible[y * w + x] { "1" } else { "0" })
                .collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }

    /// Plain PGM (`P2`) of component labels: 0 for invisible points, label + 1
    /// otherwise (capped at 65535), top row `s = s1`.
    pub fn write_label_pgm(&self, components: &Components, mut out: impl Write) -> io::Result<()> {
        let (w, h) = (self.window.width() as usize, self.window.height() as usize);
        let max = components.sizes.len().min(65_535);
        writeln!(out, "P2\n{w} {h}\n{}", max.max(1))?;
        for y in (0..h).rev() {
            let row: Vec<String> = (0..w)
                .map(|x| {
                    components.labels[y * w + x]
                        .map_or(0, |l| (l as usize + 1).min(65_535))
                        .to_string()
                })
                .collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
