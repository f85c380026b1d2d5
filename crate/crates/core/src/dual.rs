//! First-order dual numbers `⟨x, δx⟩`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::field::{Elementary, Field};
use crate::rules;
use crate::scalar::AdScalar;

/// A value and one first-order perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<F> {
    pub primal: F,
    pub d: F,
}

impl<F: Field> Dual<F> {
    pub fn new(primal: F, d: F) -> Self {
        Dual { primal, d }
    }

    /// An independent variable: perturbation one.
    pub fn variable(primal: F) -> Self {
        Dual::new(primal, F::one())
    }

    fn chain(self, value: F, g1: F) -> Self {
        Dual::new(value, g1 * self.d)
    }
}

impl<F: Field> fmt::Display for Dual<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.primal, self.d)
    }
}

impl<F: Field> Add for Dual<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Dual::new(self.primal + rhs.primal, self.d + rhs.d)
    }
}

impl<F: Field> Sub for Dual<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.primal - rhs.primal, self.d - rhs.d)
    }
}

impl<F: Field> Neg for Dual<F> {
    type Output = Self;

    fn neg(self) -> Self {
        Dual::new(-self.primal, -self.d)
    }
}

impl<F: Field> Mul for Dual<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Dual::new(
            self.primal * rhs.primal,
            self.primal * rhs.d + rhs.primal * self.d,
        )
    }
}

impl<F: Field> Div for Dual<F> {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        let p = rules::quotient(self.primal, rhs.primal);
        Dual::new(p.value, p.gu * self.d + p.gv * rhs.d)
    }
}

impl<F: Field> AdScalar for Dual<F> {
    type Field = F;

    fn constant(c: F) -> Self {
        Dual::new(c, F::zero())
    }

    fn primal(&self) -> F {
        self.primal
    }

    fn is_constant(&self) -> bool {
        self.d == F::zero()
    }

    fn elementary(self, f: Elementary) -> Self {
        let value = self.primal.elementary(f);
        let (g1, _) = f.derivatives(self.primal, value);
        self.chain(value, g1)
    }

    fn pow(self, exponent: Self) -> Self {
        if exponent.is_constant() {
            if let Some(n) = exponent.primal.as_integer() {
                let (g1, _) = rules::integer_power(self.primal, n);
                return self.chain(self.primal.powi(n), g1);
            }
        }
        let p = rules::power(self.primal, exponent.primal);
        Dual::new(p.value, p.gu * self.d + p.gv * exponent.d)
    }
}
