//! Small-dispersion KdV and its one-phase Whitham asymptotics.
//!
//! The crate solves
//!
//! ```text
//! u_t + 6 u u_x + ε² u_xxx = 0,   u(x, 0) = u0(x)
//! ```
//!
//! with a Fourier pseudospectral method, builds the leading-order small-ε
//! approximation (Hopf solution outside the oscillation zone, modulated
//! elliptic wave inside it, with the modulation from the Whitham equations)
//! and measures how the two differ.
//!
//! Modules, bottom up:
//!
//! - [`numerics`]: Chebyshev quadrature, AGM elliptic integrals, Jacobi and
//!   theta functions, Nelder-Mead.
//! - [`profile`]: single-hump initial data, inverse branches, the kernel Φ.
//! - [`kdv`]: the spectral solver.
//! - [`hopf`]: the dispersionless solution by characteristics.
//! - [`whitham`]: speeds, phase, hodograph solves, edges.
//! - [`asymptotic`]: the composite approximate solution.
//! - [`compare`]: difference fields, error metrics, log-log fits.
//!
//! ```
//! use kdv_whitham::profile::Profile;
//!
//! let p = Profile::sech2();
//! let cp = p.critical_point().unwrap();
//! assert!((cp.t_c - 3f64.sqrt() / 8.0).abs() < 1e-12);
//! ```

// `!(a > b)` is used on purpose: NaN has to fail these checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotic;
pub mod compare;
pub mod hopf;
pub mod kdv;
pub mod numerics;
pub mod profile;
pub mod whitham;

mod error;
pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/initial-data.md")]
    pub mod initial_data {}
    #[doc = include_str!("../../../book/src/kdv-solver.md")]
    pub mod kdv_solver {}
    #[doc = include_str!("../../../book/src/whitham.md")]
    pub mod whitham {}
    #[doc = include_str!("../../../book/src/asymptotics.md")]
    pub mod asymptotics {}
    #[doc = include_str!("../../../book/src/comparison.md")]
    pub mod comparison {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    pub mod numerics {}
}
