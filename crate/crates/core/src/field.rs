//! Base fields the AD scalars are built over.
//!
//! Two instantiations ship: `f64` for the real field and [`Complex64`] for
//! the complex field. Complex square roots, logarithms and non-integer
//! powers use the principal branch.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::DomainError;

/// Elementary functions shared by every scalar type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    Sqrt,
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Asin,
    Acos,
    Atan,
}

impl Elementary {
    pub const ALL: [Elementary; 12] = [
        Elementary::Sqrt,
        Elementary::Exp,
        Elementary::Log,
        Elementary::Sin,
        Elementary::Cos,
        Elementary::Tan,
        Elementary::Sinh,
        Elementary::Cosh,
        Elementary::Tanh,
        Elementary::Asin,
        Elementary::Acos,
        Elementary::Atan,
    ];

    /// Name as written in expressions.
    pub fn name(self) -> &'static str {
        match self {
            Elementary::Sqrt => "sqrt",
            Elementary::Exp => "exp",
            Elementary::Log => "log",
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Tan => "tan",
            Elementary::Sinh => "sinh",
            Elementary::Cosh => "cosh",
            Elementary::Tanh => "tanh",
            Elementary::Asin => "asin",
            Elementary::Acos => "acos",
            Elementary::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Elementary> {
        Elementary::ALL.into_iter().find(|f| f.name() == name)
    }

    /// First and second derivative of the function at `x`, given `y = f(x)`.
    ///
    /// Dual and hyper-dual scalars share this table so their first-order
    /// parts are produced by the same floating-point operations.
    pub fn derivatives<F: Field>(self, x: F, y: F) -> (F, F) {
        let one = F::one();
        let two = F::from_f64(2.0);
        match self {
            Elementary::Sqrt => {
                let g1 = F::from_f64(0.5) / y;
                let g2 = -(F::from_f64(0.25) / (x * y));
                (g1, g2)
            }
            Elementary::Exp => (y, y),
            Elementary::Log => {
                let g1 = one / x;
                (g1, -(g1 * g1))
            }
            Elementary::Sin => (x.elementary(Elementary::Cos), -y),
            Elementary::Cos => (-x.elementary(Elementary::Sin), -y),
            Elementary::Tan => {
                let g1 = one + y * y;
                (g1, two * y * g1)
            }
            Elementary::Sinh => (x.elementary(Elementary::Cosh), y),
            Elementary::Cosh => (x.elementary(Elementary::Sinh), y),
            Elementary::Tanh => {
                let g1 = one - y * y;
                (g1, -(two * y * g1))
            }
            Elementary::Asin => {
                let g1 = one / (one - x * x).elementary(Elementary::Sqrt);
                (g1, x * (g1 * g1 * g1))
            }
            Elementary::Acos => {
                let g1 = -(one / (one - x * x).elementary(Elementary::Sqrt));
                (g1, x * (g1 * g1 * g1))
            }
            Elementary::Atan => {
                let g1 = one / (one + x * x);
                (g1, -(two * x * (g1 * g1)))
            }
        }
    }
}

impl Display for Elementary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A base field element: real or complex double precision.
pub trait Field:
    Copy
    + Debug
    + Display
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
    /// True for the complex field.
    const COMPLEX: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    /// `None` when `im != 0` and the field has no imaginary unit.
    fn from_parts(re: f64, im: f64) -> Option<Self>;
    /// The imaginary unit, if the field has one.
    fn imaginary_unit() -> Option<Self>;

    fn re(self) -> f64;
    fn im(self) -> f64;
    /// Absolute value (real) or modulus (complex).
    fn modulus(self) -> f64;
    fn is_finite(self) -> bool;

    /// Bitwise identity of the underlying doubles.
    fn same_bits(self, other: Self) -> bool;

    /// The value as an `i32` when it is an exact, real integer.
    fn as_integer(self) -> Option<i32>;

    fn elementary(self, f: Elementary) -> Self;
    fn powi(self, n: i32) -> Self;
    fn powf(self, e: Self) -> Self;

    /// `self^e`, taking the integer-power path whenever `e` is an exact integer.
    fn pow(self, e: Self) -> Self {
        match e.as_integer() {
            Some(n) => self.powi(n),
            None => self.powf(e),
        }
    }

    /// Ordering of values; `None` when the field is unordered or a value is NaN.
    fn partial_order(self, other: Self) -> Option<Ordering>;

    fn check_elementary(f: Elementary, x: Self) -> Result<(), DomainError>;

    fn check_div(denominator: Self) -> Result<(), DomainError> {
        if denominator == Self::zero() {
            return Err(DomainError::new("div", "division by zero"));
        }
        Ok(())
    }

    /// `exponent_constant` is true when the exponent carries no perturbation.
    fn check_pow(base: Self, exponent: Self, exponent_constant: bool) -> Result<(), DomainError>;
}

fn is_integral(v: f64) -> bool {
    v.is_finite() && v.fract() == 0.0 && v.abs() <= i32::MAX as f64
}

impl Field for f64 {
    const COMPLEX: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        (im == 0.0).then_some(re)
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn re(self) -> f64 {
        self
    }

    fn im(self) -> f64 {
        0.0
    }

    fn modulus(self) -> f64 {
        self.abs()
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn same_bits(self, other: Self) -> bool {
        self.to_bits() == other.to_bits()
    }

    fn as_integer(self) -> Option<i32> {
        is_integral(self).then_some(self as i32)
    }

    fn elementary(self, f: Elementary) -> Self {
        match f {
            Elementary::Sqrt => f64::sqrt(self),
            Elementary::Exp => f64::exp(self),
            Elementary::Log => f64::ln(self),
            Elementary::Sin => f64::sin(self),
            Elementary::Cos => f64::cos(self),
            Elementary::Tan => f64::tan(self),
            Elementary::Sinh => f64::sinh(self),
            Elementary::Cosh => f64::cosh(self),
            Elementary::Tanh => f64::tanh(self),
            Elementary::Asin => f64::asin(self),
            Elementary::Acos => f64::acos(self),
            Elementary::Atan => f64::atan(self),
        }
    }

    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }

    fn powf(self, e: Self) -> Self {
        f64::powf(self, e)
    }

    fn partial_order(self, other: Self) -> Option<Ordering> {
        self.partial_cmp(&other)
    }

    fn check_elementary(f: Elementary, x: Self) -> Result<(), DomainError> {
        let ok = match f {
            Elementary::Sqrt | Elementary::Log => x > 0.0,
            Elementary::Asin | Elementary::Acos => x.abs() < 1.0,
            Elementary::Tan => f64::cos(x) != 0.0 && f64::tan(x).is_finite(),
            _ => !x.is_nan(),
        };
        if ok {
            Ok(())
        } else {
            Err(DomainError::outside(f.name(), x))
        }
    }

    fn check_pow(base: Self, exponent: Self, exponent_constant: bool) -> Result<(), DomainError> {
        match exponent.as_integer() {
            Some(n) if exponent_constant => {
                if base == 0.0 && n < 0 {
                    Err(DomainError::new("pow", "zero base with negative exponent"))
                } else {
                    Ok(())
                }
            }
            _ if base > 0.0 => Ok(()),
            _ => Err(DomainError::new(
                "pow",
                format!("base {base} must be positive for exponent {exponent}"),
            )),
        }
    }
}

impl Field for Complex64 {
    const COMPLEX: bool = true;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        Some(Complex64::new(re, im))
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Complex64::i())
    }

    fn re(self) -> f64 {
        self.re
    }

    fn im(self) -> f64 {
        self.im
    }

    fn modulus(self) -> f64 {
        self.norm()
    }

    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }

    fn same_bits(self, other: Self) -> bool {
        self.re.to_bits() == other.re.to_bits() && self.im.to_bits() == other.im.to_bits()
    }

    fn as_integer(self) -> Option<i32> {
        (self.im == 0.0 && is_integral(self.re)).then_some(self.re as i32)
    }

    fn elementary(self, f: Elementary) -> Self {
        match f {
            Elementary::Sqrt => Complex64::sqrt(self),
            Elementary::Exp => Complex64::exp(self),
            Elementary::Log => Complex64::ln(self),
            Elementary::Sin => Complex64::sin(self),
            Elementary::Cos => Complex64::cos(self),
            Elementary::Tan => Complex64::tan(self),
            Elementary::Sinh => Complex64::sinh(self),
            Elementary::Cosh => Complex64::cosh(self),
            Elementary::Tanh => Complex64::tanh(self),
            Elementary::Asin => Complex64::asin(self),
            Elementary::Acos => Complex64::acos(self),
            Elementary::Atan => Complex64::atan(self),
        }
    }

    fn powi(self, n: i32) -> Self {
        Complex64::powi(&self, n)
    }

    fn powf(self, e: Self) -> Self {
        Complex64::powc(self, e)
    }

    fn partial_order(self, _other: Self) -> Option<Ordering> {
        None
    }

    fn check_elementary(f: Elementary, x: Self) -> Result<(), DomainError> {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        let ok = match f {
            Elementary::Sqrt | Elementary::Log => x != Complex64::new(0.0, 0.0),
            Elementary::Asin | Elementary::Acos => x != one && x != -one,
            Elementary::Atan => x != i && x != -i,
            Elementary::Tan => Complex64::cos(x) != Complex64::new(0.0, 0.0) && x.tan().is_finite(),
            Elementary::Tanh => {
                Complex64::cosh(x) != Complex64::new(0.0, 0.0) && x.tanh().is_finite()
            }
            _ => !x.is_nan(),
        };
        if ok {
            Ok(())
        } else {
            Err(DomainError::outside(f.name(), x))
        }
    }

    fn check_pow(base: Self, exponent: Self, exponent_constant: bool) -> Result<(), DomainError> {
        let zero = Complex64::new(0.0, 0.0);
        match exponent.as_integer() {
            Some(n) if exponent_constant && base == zero && n < 0 => Err(DomainError::new(
                "pow",
                "zero base with negative exponent",
            )),
            Some(_) if exponent_constant => Ok(()),
            _ if base != zero => Ok(()),
            _ => Err(DomainError::new(
                "pow",
                format!("zero base is singular for exponent {exponent}"),
            )),
        }
    }
}
