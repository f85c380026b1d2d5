//! Hyper-dual numbers `⟨x, δx₁, δx₂, δδx⟩`.
//!
//! Every primitive `g` maps its arguments by the second-order chain rule.
//! For a unary `g`:
//!
//! ```text
//! y   = g(x)
//! δy₁ = g'(x)·δx₁
//! δy₂ = g'(x)·δx₂
//! δδy = g''(x)·(δx₁·δx₂) + g'(x)·δδx
//! ```
//!
//! and for a binary `g(u, v)`:
//!
//! ```text
//! δδy = g_uu·(δu₁·δu₂) + g_uv·(δu₁·δv₂ + δv₁·δu₂) + g_vv·(δv₁·δv₂)
//!     + g_u·δδu + g_v·δδv
//! ```
//!
//! Products of the two first-order parts are always formed pairwise before
//! being scaled, so swapping `δ₁` and `δ₂` in every input swaps them in the
//! output and leaves `δδy` bitwise unchanged.
//!
//! Seeding the inputs of a function with `⟨x, v₁, v₂, w⟩` yields
//! `⟨f(x), ∇f·v₁, ∇f·v₂, v₁ᵀ·∇²f·v₂ + ∇f·w⟩`; see [`crate::drivers`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::field::{Elementary, Field};
use crate::rules::{self, Partials};
use crate::scalar::AdScalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperDual<F> {
    pub primal: F,
    pub d1: F,
    pub d2: F,
    pub d12: F,
}

impl<F: Field> HyperDual<F> {
    pub fn new(primal: F, d1: F, d2: F, d12: F) -> Self {
        HyperDual {
            primal,
            d1,
            d2,
            d12,
        }
    }

    /// The same number with the two first-order parts exchanged.
    pub fn swap_seeds(self) -> Self {
        HyperDual::new(self.primal, self.d2, self.d1, self.d12)
    }

    fn chain(self, value: F, g1: F, g2: F) -> Self {
        HyperDual::new(
            value,
            g1 * self.d1,
            g1 * self.d2,
            g2 * (self.d1 * self.d2) + g1 * self.d12,
        )
    }

    fn binary(u: Self, v: Self, p: Partials<F>) -> Self {
        HyperDual::new(
            p.value,
            p.gu * u.d1 + p.gv * v.d1,
            p.gu * u.d2 + p.gv * v.d2,
            p.guu * (u.d1 * u.d2)
                + p.guv * (u.d1 * v.d2 + v.d1 * u.d2)
                + p.gvv * (v.d1 * v.d2)
                + p.gu * u.d12
                + p.gv * v.d12,
        )
    }
}

impl<F: Field> fmt::Display for HyperDual<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "⟨{}, {}, {}, {}⟩",
            self.primal, self.d1, self.d2, self.d12
        )
    }
}

impl<F: Field> Add for HyperDual<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        HyperDual::new(
            self.primal + rhs.primal,
            self.d1 + rhs.d1,
            self.d2 + rhs.d2,
            self.d12 + rhs.d12,
        )
    }
}

impl<F: Field> Sub for HyperDual<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        HyperDual::new(
            self.primal - rhs.primal,
            self.d1 - rhs.d1,
            self.d2 - rhs.d2,
            self.d12 - rhs.d12,
        )
    }
}

impl<F: Field> Neg for HyperDual<F> {
    type Output = Self;

    fn neg(self) -> Self {
        HyperDual::new(-self.primal, -self.d1, -self.d2, -self.d12)
    }
}

impl<F: Field> Mul for HyperDual<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self, rhs);
        HyperDual::new(
            a.primal * b.primal,
            a.primal * b.d1 + b.primal * a.d1,
            a.primal * b.d2 + b.primal * a.d2,
            (a.d1 * b.d2 + b.d1 * a.d2) + (a.primal * b.d12 + b.primal * a.d12),
        )
    }
}

impl<F: Field> Div for HyperDual<F> {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        HyperDual::binary(self, rhs, rules::quotient(self.primal, rhs.primal))
    }
}

impl<F: Field> AdScalar for HyperDual<F> {
    type Field = F;

    fn constant(c: F) -> Self {
        HyperDual::new(c, F::zero(), F::zero(), F::zero())
    }

    fn primal(&self) -> F {
        self.primal
    }

    fn is_constant(&self) -> bool {
        let zero = F::zero();
        self.d1 == zero && self.d2 == zero && self.d12 == zero
    }

    fn elementary(self, f: Elementary) -> Self {
        let value = self.primal.elementary(f);
        let (g1, g2) = f.derivatives(self.primal, value);
        self.chain(value, g1, g2)
    }

    fn pow(self, exponent: Self) -> Self {
        if exponent.is_constant() {
            if let Some(n) = exponent.primal.as_integer() {
                let (g1, g2) = rules::integer_power(self.primal, n);
                return self.chain(self.primal.powi(n), g1, g2);
            }
        }
        HyperDual::binary(self, exponent, rules::power(self.primal, exponent.primal))
    }
}
