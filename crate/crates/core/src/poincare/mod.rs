mod integral;
mod verify;
mod window;

pub use integral::{euler_integral, x_series, IntegralMode};
pub use verify::{verify_curve, CheckResult, CheckStatus, VerifyOptions, VerifyReport};
pub use window::{
    adaptive_window, build_laurent_window, p_prime, poincare_from_jets, product_minus_one, window_from_graph,
    LaurentWindow, PoincareSeries,
};
