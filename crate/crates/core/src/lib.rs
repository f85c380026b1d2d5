//! Forward-mode automatic differentiation with hyper-dual numbers.
//!
//! A [`HyperDual`] carries a value, two independent first-order
//! perturbations and their cross second-order perturbation. Evaluating a
//! function written against [`AdScalar`] with hyper-dual inputs yields its
//! exact first and second directional derivatives, with no step size and no
//! truncation error. The [`drivers`] seed Cartesian unit vectors to assemble
//! whole Jacobians and Hessians; [`expr`] turns text such as
//! `x1 + x2^2*x3 - x1/x3 + x2^x1` into such a function.
//!
//! Everything is generic over the base [`Field`]: `f64` or
//! [`num_complex::Complex64`].
//!
//! ```
//! use hdiff::{drivers, AdScalar, HyperDual};
//!
//! // f(x, y) = x² y
//! let f = drivers::from_fn(2, |x: &[HyperDual<f64>]| Ok(x[0] * x[0] * x[1]));
//! let report = drivers::hessian(&f, &[1.0, 1.0]).unwrap();
//! assert_eq!(report.jacobian, vec![2.0, 1.0]);
//! assert_eq!(report.hessian.unwrap(), vec![vec![2.0, 2.0], vec![2.0, 0.0]]);
//! assert_eq!(report.invocations, 3);
//! ```

pub mod drivers;
mod dual;
mod error;
pub mod expr;
mod field;
mod hyperdual;
pub mod oracle;
mod rules;
mod scalar;

pub use drivers::{DerivativeReport, DiffFunction, DriverOptions};
pub use dual::Dual;
pub use error::{DomainError, Error};
pub use expr::{Expr, ParseDiagnostic};
pub use field::{Elementary, Field};
pub use hyperdual::HyperDual;
pub use num_complex::Complex64;
pub use scalar::{AdScalar, DomainMode};
