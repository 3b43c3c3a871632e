use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PatternError;
use crate::arith::Exponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cell {
    /// Must be b-visible.
    Circle,
    /// Must be b-invisible.
    Cross,
    /// Unconstrained.
    Blank,
}

impl Cell {
    pub fn symbol(self) -> char {
        match self {
            Cell::Circle => 'o',
            Cell::Cross => 'x',
            Cell::Blank => '.',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            'o' => Some(Cell::Circle),
            'x' => Some(Cell::Cross),
            '.' => Some(Cell::Blank),
            _ => None,
        }
    }
}

/// A `w × h` grid of cells at `1 ≤ r ≤ w`, `1 ≤ s ≤ h`, with `h ≤ w^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BPattern {
    b: Exponent,
    w: u64,
    h: u64,
    /// Row-major from `s = 1`: index `(s − 1)·w + (r − 1)`.
    cells: Vec<Cell>,
}

impl BPattern {
    /// A pattern with every cell set by `cell(r, s)`.
    pub fn from_fn(b: Exponent, w: u64, h: u64, mut cell: impl FnMut(u64, u64) -> Cell) -> Result<Self, PatternError> {
        if w == 0 || h == 0 {
            return Err(PatternError::EmptyPattern { w, h });
        }
        if b.checked_pow(w).is_some_and(|limit| h > limit) {
            return Err(PatternError::TooTall { b: b.get(), w, h });
        }
        let mut cells = Vec::with_capacity((w * h) as usize);
        for s in 1..=h {
            for r in 1..=w {
                cells.push(cell(r, s));
            }
        }
        Ok(Self { b, w, h, cells })
    }

    pub fn filled(b: Exponent, w: u64, h: u64, cell: Cell) -> Result<Self, PatternError> {
        Self::from_fn(b, w, h, |_, _| cell)
    }

    /// The `n × n` square of circles.
    pub fn square(b: Exponent, n: u64) -> Result<Self, PatternError> {
        Self::filled(b, n, n, Cell::Circle)
    }

    /// The `m × n` rectangle with circles on its boundary and crosses inside.
    pub fn fenced(b: Exponent, m: u64, n: u64) -> Result<Self, PatternError> {
        Self::from_fn(b, m, n, |r, s| {
            if r == 1 || r == m || s == 1 || s == n {
                Cell::Circle
            } else {
                Cell::Cross
            }
        })
    }

    /// A single circle at the center of a `3 × 3` (b = 1) or `3 × 9` (b ≥ 2)
    /// block of crosses.
    pub fn lonesome(b: Exponent) -> Self {
        let h: u64 = if b.get() == 1 { 3 } else { 9 };
        let center = (2, h.div_ceil(2));
        Self::from_fn(
            b,
            3,
            h,
            |r, s| {
                if (r, s) == center {
                    Cell::Circle
                } else {
                    Cell::Cross
                }
            },
        )
        .expect("3 × 9 fits under 3^b for b ≥ 2")
    }

    pub fn b(&self) -> Exponent {
        self.b
    }

    pub fn width(&self) -> u64 {
        self.w
    }

    pub fn height(&self) -> u64 {
        self.h
    }

    /// The cell at `(r, s)`; panics outside `1..=w × 1..=h`.
    pub fn cell(&self, r: u64, s: u64) -> Cell {
        assert!(
            (1..=self.w).contains(&r) && (1..=self.h).contains(&s),
            "({r}, {s}) outside the pattern"
        );
        self.cells[((s - 1) * self.w + (r - 1)) as usize]
    }

    /// `((r, s), cell)` in row-major order from `s = 1`.
    pub fn cells(&self) -> impl Iterator<Item = ((u64, u64), Cell)> + '_ {
        self.cells.iter().enumerate().map(|(i, &c)| {
            let i = i as u64;
            ((i % self.w + 1, i / self.w + 1), c)
        })
    }

    pub fn positions(&self, kind: Cell) -> Vec<(u64, u64)> {
        self.cells().filter(|&(_, c)| c == kind).map(|(p, _)| p).collect()
    }

    pub fn circles(&self) -> Vec<(u64, u64)> {
        self.positions(Cell::Circle)
    }

    pub fn crosses(&self) -> Vec<(u64, u64)> {
        self.positions(Cell::Cross)
    }

    /// The text form read by [`BPattern::from_str`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "b={} w={} h={}", self.b, self.w, self.h)?;
        for s in (1..=self.h).rev() {
            let line: String = (1..=self.w).map(|r| self.cell(r, s).symbol()).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn header_field(token: Option<&str>, key: &str, header: &str) -> Result<u64, PatternError> {
    let malformed = || PatternError::MalformedHeader(header.to_string());
    let value = token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(malformed)?;
    value.parse().map_err(|_| malformed())
}

/// Parses `b=<int> w=<int> h=<int>` followed by `h` lines of `w` characters
/// from `o`, `x`, `.`; the top line holds `s = h`.
impl FromStr for BPattern {
    type Err = PatternError;

    fn from_str(text: &str) -> Result<Self, PatternError> {
        let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
        let header = lines.next().unwrap_or("").trim();
        let mut tokens = header.split_whitespace();
        let b = header_field(tokens.next(), "b", header)?;
        let w = header_field(tokens.next(), "w", header)?;
        let h = header_field(tokens.next(), "h", header)?;
        if tokens.next().is_some() {
            return Err(PatternError::MalformedHeader(header.to_string()));
        }
        let b = u32::try_from(b)
            .ok()
            .and_then(|b| Exponent::new(b).ok())
            .ok_or_else(|| PatternError::MalformedHeader(header.to_string()))?;
        if w == 0 || h == 0 {
            return Err(PatternError::EmptyPattern { w, h });
        }
        if b.checked_pow(w).is_some_and(|limit| h > limit) {
            return Err(PatternError::TooTall { b: b.get(), w, h });
        }

        let mut rows: Vec<&str> = lines.collect();
        while rows.last().is_some_and(|l| l.trim().is_empty()) {
            rows.pop();
        }
        if rows.len() as u64 != h {
            return Err(PatternError::WrongLineCount {
                expected: h,
                found: rows.len() as u64,
            });
        }
        let mut grid = vec![Cell::Blank; (w * h) as usize];
        for (i, line) in rows.iter().enumerate() {
            let chars: Vec<char> = line.chars().collect();
            if chars.len() as u64 != w {
                return Err(PatternError::WrongLineLength {
                    line: i + 2,
                    expected: w,
                    found: chars.len() as u64,
                });
            }
            let s = h - i as u64;
            for (j, &c) in chars.iter().enumerate() {
                let cell = Cell::from_symbol(c).ok_or(PatternError::IllegalCharacter {
                    line: i + 2,
                    column: j + 1,
                    found: c,
                })?;
                grid[((s - 1) * w + j as u64) as usize] = cell;
            }
        }
        Ok(Self { b, w, h, cells: grid })
    }
}
