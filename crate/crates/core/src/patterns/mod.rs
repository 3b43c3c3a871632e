//! Realizability of b-patterns: grids of cells that must be b-visible
//! (circles), b-invisible (crosses) or are unconstrained (blanks).
//!
//! A pattern is realizable iff for every prime `p` its circles miss some
//! residue class modulo `(p, p^b)`. [`realize`] turns that criterion into an
//! explicit translate through the Chinese remainder theorem, and
//! [`verify_realization`] checks any translate independently.

mod corollary;
mod crt;
mod pattern;
mod realize;
mod residue;
mod search;
mod verify;

pub use corollary::{boundary_corollary_check, square_corollary_check, ConditionVerdict, CorollaryReport};
pub use crt::{crt, decimal, Congruence, CongruenceSystem, Origin};
pub use pattern::{BPattern, Cell};
pub use realize::{realize, Realization, RealizeOptions};
pub use residue::{
    contains_complete_rectangle, find_missing_residue, is_realizable, Realizability, Representative, ResiduePair,
};
pub use search::{brute_force_realize, Census, MAX_CENSUS_CELLS};
pub use verify::{verify_realization, CellStatus, CellVerdict, Verification, DEFAULT_VERIFY_BOUND};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("malformed pattern header {0:?}; expected \"b=<int> w=<int> h=<int>\" with b ≥ 1")]
    MalformedHeader(String),

    #[error("pattern must have positive width and height, got w={w} h={h}")]
    EmptyPattern { w: u64, h: u64 },

    #[error("pattern height {h} exceeds w^b = {w}^{b}")]
    TooTall { b: u32, w: u64, h: u64 },

    #[error("expected {expected} pattern rows, found {found}")]
    WrongLineCount { expected: u64, found: u64 },

    #[error("line {line}: expected {expected} cells, found {found}")]
    WrongLineLength { line: usize, expected: u64, found: u64 },

    #[error("line {line}, column {column}: illegal cell {found:?}; use 'o', 'x' or '.'")]
    IllegalCharacter { line: usize, column: usize, found: char },

    #[error("points cover every residue class modulo ({prime}, {prime}^b)")]
    CompleteRectangle { prime: u64 },

    #[error("pattern is not realizable: circles form a complete rectangle modulo ({prime}, {prime}^b)")]
    NotRealizable { prime: u64 },

    #[error("moduli {left} and {right} are not coprime")]
    ModuliNotCoprime { left: String, right: String },

    #[error("constructed translate failed verification: {failures} failed, {unverified} unverified cells")]
    VerificationFailed { failures: usize, unverified: usize },

    #[error("census of {w}×{h} blocks up to {bound} is too large")]
    CensusTooLarge { w: u64, h: u64, bound: u64 },
}
