//! Shared numerical kernels.

pub mod chebyshev;
pub mod elliptic;
pub mod jacobi;
pub mod roots;
pub mod simplex;
pub mod theta;

pub use chebyshev::{
    cheb_fit, cheb_points, integral_cheb_weight, integral_endpoint_sqrt, ChebSeries, QuadConfig,
};
pub use elliptic::{elliptic_ke, EllipticPair};
pub use jacobi::jacobi_sncndn;
pub use roots::{bisect, solve_system, Mode, SystemOptions, SystemSolution};
pub use simplex::{simplex_minimize, SimplexOptions, SimplexResult};
pub use theta::theta3;

/// Double-exponential quadrature on `[a, b]`; endpoint singularities of
/// inverse-square-root type are fine since the nodes never touch `a` or `b`.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    quadrature::double_exponential::integrate(f, a, b, tol).integral
}
