use gcdb_core::arith::{ArithFunction, Exponent};
use gcdb_core::graph::mean_connectivity_estimate;
use gcdb_core::lattice::{avg_gcd_b_exact, avg_gcd_b_main_term, density_estimate, mean_value_estimate};

fn ratio_error(b: Exponent, x: u64) -> f64 {
    let exact: f64 = avg_gcd_b_exact(b, x).unwrap().to_string().parse().unwrap();
    (exact / avg_gcd_b_main_term(b, x as f64).unwrap() - 1.0).abs()
}

#[test]
fn mean_connectivity_error_shrinks() {
    for b in [Exponent::ONE, Exponent::TWO] {
        let small = mean_connectivity_estimate(b, 500).unwrap().abs_error;
        let large = mean_connectivity_estimate(b, 4000).unwrap().abs_error;
        assert!(large < small, "b={b}: {large} vs {small}");
    }
}

#[test]
fn density_error_shrinks_over_decades() {
    for b in 1..=3 {
        let e = Exponent::new(b).unwrap();
        let coarse = density_estimate(e, 1, 30).unwrap().abs_error;
        let fine = density_estimate(e, 1, 3000).unwrap().abs_error;
        assert!(fine < coarse, "b={b}");
    }
}

#[test]
fn mobius_mean_matches_inverse_zeta_squared() {
    // The target is ζ_μ(3)/ζ(3) = 1/ζ(3)².
    let e = Exponent::TWO;
    let stats = mean_value_estimate(ArithFunction::Mobius, e, 2000).unwrap();
    assert!(stats.abs_error < 5e-3, "{stats:?}");
}

#[test]
fn gcd_sum_ratio_approaches_one() {
    let b = Exponent::new(3).unwrap();
    let errors: Vec<f64> = [20, 40, 80].iter().map(|&x| ratio_error(b, x)).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}
