//! Exact integer arithmetic underlying every lattice computation.

pub mod column;
pub mod condition;
pub mod factor;
pub mod point;
pub mod sieve;
pub mod sum;
pub mod table;
pub mod zeta;

pub use column::VisibilityColumn;
pub use condition::{mean_value_condition_diagnostic, ConditionDiagnostic};
pub use point::{gcd_b, is_b_visible, try_gcd_b, Exponent, GcdB, LatticePoint};
pub use sieve::{mobius_sieve, phi_sieve, primes_up_to, SpfSieve};
pub use sum::{compensated_sum, CompensatedSum};
pub use table::{dirichlet_convolve, ArithFunction, ArithTable};
pub use zeta::{zeta, zeta_exact, zeta_f, DirichletSeries, ZetaValue, EULER_GAMMA, ZETA_PRIME_2};
