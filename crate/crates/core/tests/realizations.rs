use std::collections::HashSet;

use gcdb_core::arith::Exponent;
use gcdb_core::patterns::{is_realizable, realize, verify_realization, BPattern, Cell, RealizeOptions};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pattern(rng: &mut ChaCha8Rng, b: Exponent) -> BPattern {
    let w = rng.gen_range(1..=3u64);
    let h = rng.gen_range(1..=b.checked_pow(w).unwrap().min(5));
    BPattern::from_fn(b, w, h, |_, _| match rng.gen_range(0..10) {
        0..=3 => Cell::Circle,
        4..=7 => Cell::Cross,
        _ => Cell::Blank,
    })
    .unwrap()
}

/// Random realizable patterns: each realization verifies, and so do the
/// shifted translates `(u, v + V)` and the next class representatives of `u`.
#[test]
fn realizations_repeat_along_their_congruence_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    while done < 12 {
        let b = Exponent::new(rng.gen_range(1..=3)).unwrap();
        let pattern = random_pattern(&mut rng, b);
        if !is_realizable(&pattern).is_realizable() {
            assert!(realize(&pattern, &RealizeOptions::default()).is_err());
            continue;
        }
        let mut seen = HashSet::new();
        for class_index in 0..3 {
            let opts = RealizeOptions {
                class_index,
                ..RealizeOptions::default()
            };
            let real = realize(&pattern, &opts).unwrap_or_else(|e| panic!("{pattern}: {e}"));
            let check = real.verify(&pattern, opts.verify_bound);
            assert!(check.passed(), "{pattern}");
            assert_eq!(check.unverified(), 0);
            assert!(seen.insert((real.u.clone(), real.v.clone())));

            let shifted_v: BigUint = &real.v + &real.v_modulus;
            let shifted = verify_realization(&pattern, &real.u, &shifted_v, &Default::default(), opts.verify_bound);
            assert!(shifted.passed(), "{pattern} at (u, v + V)");
        }
        done += 1;
    }
}
