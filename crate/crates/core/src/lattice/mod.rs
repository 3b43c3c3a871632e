//! Window statistics over `T_N`: mean values, `gcd_b` densities, sphere
//! averages and the average order of `gcd_b`.

pub mod average;
pub mod metric;
pub mod sphere;
pub mod window;

pub use average::{
    avg_gcd_1_main_term, avg_gcd_1_square_main_term, avg_gcd_b_exact, avg_gcd_b_main_term, avg_gcd_b_naive,
    phi_partial_sum, PhiPartialSum,
};
pub use metric::{d_b, norm_b, same_b_curve, ExtendedPoint};
pub use sphere::{sphere_average, zeta_lambda_estimate, SphereAverage, ZetaLambdaEstimate};
pub use window::{
    density_estimate, density_target, gcd_b_count, gcd_b_histogram, lambda_f_sum_fast, lambda_f_sum_naive,
    mean_value_estimate, set_density_estimate, RawSum, WindowStats,
};
