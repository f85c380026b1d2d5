//! The scalar abstraction shared by plain field values, [`Dual`] and
//! [`HyperDual`] numbers.
//!
//! Arithmetic through `std::ops` and the unchecked methods follow IEEE
//! semantics. The `try_*` methods check the primal against the domain of
//! the primitive first when the [`DomainMode`] is strict.
//!
//! [`Dual`]: crate::Dual
//! [`HyperDual`]: crate::HyperDual

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::DomainError;
use crate::field::{Elementary, Field};

/// How primitives react to a primal outside their differentiable domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DomainMode {
    /// Raise a [`DomainError`].
    #[default]
    Strict,
    /// Evaluate anyway and let NaN and infinities propagate.
    Propagate,
}

impl DomainMode {
    pub fn is_strict(self) -> bool {
        self == DomainMode::Strict
    }
}

pub trait AdScalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Field: Field;

    /// A value with every perturbation part zero.
    fn constant(c: Self::Field) -> Self;

    fn from_real(v: f64) -> Self {
        Self::constant(Self::Field::from_f64(v))
    }

    fn primal(&self) -> Self::Field;

    /// True when every perturbation part is exactly zero.
    fn is_constant(&self) -> bool;

    fn elementary(self, f: Elementary) -> Self;

    /// `self^exponent`. A perturbation-free integer exponent takes the
    /// integer-power path.
    fn pow(self, exponent: Self) -> Self;

    fn sqrt(self) -> Self {
        self.elementary(Elementary::Sqrt)
    }

    fn exp(self) -> Self {
        self.elementary(Elementary::Exp)
    }

    fn ln(self) -> Self {
        self.elementary(Elementary::Log)
    }

    fn sin(self) -> Self {
        self.elementary(Elementary::Sin)
    }

    fn cos(self) -> Self {
        self.elementary(Elementary::Cos)
    }

    fn tan(self) -> Self {
        self.elementary(Elementary::Tan)
    }

    fn sinh(self) -> Self {
        self.elementary(Elementary::Sinh)
    }

    fn cosh(self) -> Self {
        self.elementary(Elementary::Cosh)
    }

    fn tanh(self) -> Self {
        self.elementary(Elementary::Tanh)
    }

    fn asin(self) -> Self {
        self.elementary(Elementary::Asin)
    }

    fn acos(self) -> Self {
        self.elementary(Elementary::Acos)
    }

    fn atan(self) -> Self {
        self.elementary(Elementary::Atan)
    }

    fn try_elementary(self, f: Elementary, mode: DomainMode) -> Result<Self, DomainError> {
        if mode.is_strict() {
            Self::Field::check_elementary(f, self.primal())?;
        }
        Ok(self.elementary(f))
    }

    fn try_div(self, rhs: Self, mode: DomainMode) -> Result<Self, DomainError> {
        if mode.is_strict() {
            Self::Field::check_div(rhs.primal())?;
        }
        Ok(self / rhs)
    }

    fn try_pow(self, exponent: Self, mode: DomainMode) -> Result<Self, DomainError> {
        if mode.is_strict() {
            Self::Field::check_pow(self.primal(), exponent.primal(), exponent.is_constant())?;
        }
        Ok(self.pow(exponent))
    }

    /// Orders by primal value only. Fails over the complex field.
    fn compare(&self, other: &Self) -> Result<Ordering, DomainError> {
        if Self::Field::COMPLEX {
            return Err(DomainError::new(
                "compare",
                "complex values have no ordering",
            ));
        }
        self.primal().partial_order(other.primal()).ok_or_else(|| {
            DomainError::new("compare", "cannot order NaN")
        })
    }
}

macro_rules! plain_scalar {
    ($t:ty) => {
        impl AdScalar for $t {
            type Field = $t;

            fn constant(c: $t) -> Self {
                c
            }

            fn primal(&self) -> $t {
                *self
            }

            fn is_constant(&self) -> bool {
                true
            }

            fn elementary(self, f: Elementary) -> Self {
                Field::elementary(self, f)
            }

            fn pow(self, exponent: Self) -> Self {
                Field::pow(self, exponent)
            }
        }
    };
}

plain_scalar!(f64);
plain_scalar!(Complex64);
