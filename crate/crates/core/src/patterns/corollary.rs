//! Closed-form realizability conditions for two pattern families, each
//! checked against the residue criterion.
//!
//! For the all-circle `N × N` square the criterion reduces to `N < 2^b`: only
//! `p = 2` can be complete, exactly when `N ≥ 2` and `N ≥ 2^b`. The condition
//! `N² < 2^b` is evaluated alongside it. For the fenced `M × N` rectangle with
//! `b ≥ 2` the criterion reduces to "`M` odd or `N < 2^b`", evaluated alongside
//! "`M` odd or `N ≥ 2^b`". Every disagreement with the computed verdict is
//! reported, never reconciled.

use serde::{Deserialize, Serialize};

use super::search::brute_force_realize;
use super::{is_realizable, BPattern, PatternError, Realizability};
use crate::arith::Exponent;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: String,
    pub predicts_realizable: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub family: String,
    pub b: u32,
    pub width: u64,
    pub height: u64,
    pub realizability: Realizability,
    /// The closed-form condition under test.
    pub stated: ConditionVerdict,
    /// The condition the residue criterion reduces to.
    pub derived: ConditionVerdict,
    /// First translate found by direct search, when one was run.
    pub brute_force: Option<(u64, u64)>,
    pub search_bound: Option<u64>,
    pub discrepancies: Vec<String>,
}

impl CorollaryReport {
    pub fn has_discrepancy(&self) -> bool {
        !self.discrepancies.is_empty()
    }
}

fn verdict(condition: String, predicts: bool, actual: bool) -> ConditionVerdict {
    ConditionVerdict {
        condition,
        predicts_realizable: predicts,
        agrees: predicts == actual,
    }
}

fn report(
    family: &str,
    pattern: &BPattern,
    stated: (String, bool),
    derived: (String, bool),
    search_bound: Option<u64>,
) -> CorollaryReport {
    let realizability = is_realizable(pattern);
    let actual = realizability.is_realizable();
    let stated = verdict(stated.0, stated.1, actual);
    let derived = verdict(derived.0, derived.1, actual);
    let brute_force = search_bound.and_then(|bound| brute_force_realize(pattern, bound));
    let mut discrepancies = Vec::new();
    for (label, v) in [("stated", &stated), ("derived", &derived)] {
        if !v.agrees {
            discrepancies.push(format!(
                "{label} condition `{}` predicts realizable = {}, residue criterion gives {}",
                v.condition, v.predicts_realizable, actual
            ));
        }
    }
    if let Some(bound) = search_bound {
        match (brute_force, actual) {
            (Some((u, v)), false) => discrepancies.push(format!(
                "direct search found ({u}, {v}) for a pattern the residue criterion rejects"
            )),
            (None, true) => discrepancies.push(format!("no translate found with u, v ≤ {bound} (inconclusive)")),
            _ => {}
        }
    }
    CorollaryReport {
        family: family.to_string(),
        b: pattern.b().get(),
        width: pattern.width(),
        height: pattern.height(),
        realizability,
        stated,
        derived,
        brute_force,
        search_bound,
        discrepancies,
    }
}

/// `2^b ≤ n`, without overflow.
fn two_pow_at_most(b: Exponent, n: u64) -> bool {
    b.get() < 64 && 1u64 << b.get() <= n
}

/// The all-circle `n × n` square.
pub fn square_corollary_check(n: u64, b: Exponent, search_bound: Option<u64>) -> Result<CorollaryReport, PatternError> {
    let pattern = BPattern::square(b, n)?;
    let n2 = u128::from(n) * u128::from(n);
    let stated = b.get() >= 128 || n2 < 1u128 << b.get();
    let derived = !two_pow_at_most(b, n);
    Ok(report(
        "square",
        &pattern,
        ("N^2 < 2^b".into(), stated),
        ("N < 2^b".into(), derived),
        search_bound,
    ))
}

/// The `m × n` rectangle fenced by circles with crosses inside.
pub fn boundary_corollary_check(
    m: u64,
    n: u64,
    b: Exponent,
    search_bound: Option<u64>,
) -> Result<CorollaryReport, PatternError> {
    if m < 2 || n < 2 {
        return Err(PatternError::EmptyPattern { w: m, h: n });
    }
    let pattern = BPattern::fenced(b, m, n)?;
    let (stated, derived) = if b.get() == 1 {
        let both_odd = m % 2 == 1 && n % 2 == 1;
        (
            ("M and N both odd".to_string(), both_odd),
            ("M and N both odd".to_string(), both_odd),
        )
    } else {
        let m_odd = m % 2 == 1;
        (
            ("M odd or N >= 2^b".to_string(), m_odd || two_pow_at_most(b, n)),
            ("M odd or N < 2^b".to_string(), m_odd || !two_pow_at_most(b, n)),
        )
    };
    Ok(report("boundary", &pattern, stated, derived, search_bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fenced_odd_square_b1() {
        let rep = boundary_corollary_check(3, 3, Exponent::ONE, None).unwrap();
        assert!(rep.realizability.is_realizable());
        assert!(!rep.has_discrepancy());
    }

    #[test]
    fn fenced_four_by_four() {
        let rep = boundary_corollary_check(4, 4, Exponent::TWO, None).unwrap();
        assert!(!rep.realizability.is_realizable());
        assert!(rep.derived.agrees);
        assert!(!rep.stated.agrees);
    }

    #[test]
    fn two_by_two_square_contradicts_stated_condition() {
        let rep = square_corollary_check(2, Exponent::TWO, Some(100)).unwrap();
        assert!(rep.realizability.is_realizable());
        assert_eq!(rep.brute_force, Some((1, 0)));
        assert!(!rep.stated.agrees);
        assert!(rep.derived.agrees);
        assert_eq!(rep.discrepancies.len(), 1);
    }

    #[test]
    fn derived_conditions_always_agree() {
        for b in 1..=4 {
            let e = Exponent::new(b).unwrap();
            for n in 1..=12 {
                assert!(
                    square_corollary_check(n, e, None).unwrap().derived.agrees,
                    "square n={n} b={b}"
                );
            }
            for m in 2..=10 {
                for n in 2..=10u64 {
                    if e.checked_pow(m).is_some_and(|lim| n > lim) {
                        continue;
                    }
                    let rep = boundary_corollary_check(m, n, e, None).unwrap();
                    assert!(rep.derived.agrees, "boundary {m}×{n} b={b}");
                }
            }
        }
    }
}
