//! Partial-derivative tables for the binary primitives and the integer
//! power fast path.

use crate::field::Field;

/// First and second partial derivatives of `g(u, v)` at a point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Partials<F> {
    pub value: F,
    pub gu: F,
    pub gv: F,
    pub guu: F,
    pub guv: F,
    pub gvv: F,
}

/// `g(u, v) = u / v`.
pub(crate) fn quotient<F: Field>(u: F, v: F) -> Partials<F> {
    let value = u / v;
    let gu = F::one() / v;
    let gu_sq = gu * gu;
    Partials {
        value,
        gu,
        gv: -(value * gu),
        guu: F::zero(),
        guv: -gu_sq,
        gvv: F::from_f64(2.0) * value * gu_sq,
    }
}

/// `g(u, v) = u^v` for a perturbed or non-integer exponent.
pub(crate) fn power<F: Field>(u: F, v: F) -> Partials<F> {
    let one = F::one();
    let value = u.pow(v);
    let log_u = u.elementary(crate::field::Elementary::Log);
    let u_vm1 = u.pow(v - one);
    Partials {
        value,
        gu: v * u_vm1,
        gv: value * log_u,
        guu: v * (v - one) * u.pow(v - F::from_f64(2.0)),
        guv: u_vm1 * (one + v * log_u),
        gvv: value * (log_u * log_u),
    }
}

/// First and second derivative of `u^n` for a constant integer `n`.
pub(crate) fn integer_power<F: Field>(u: F, n: i32) -> (F, F) {
    let n64 = i64::from(n);
    let g1 = if n == 0 {
        F::zero()
    } else {
        F::from_f64(n as f64) * u.powi(n - 1)
    };
    let g2 = if n == 0 || n == 1 {
        F::zero()
    } else {
        F::from_f64((n64 * (n64 - 1)) as f64) * u.powi(n - 2)
    };
    (g1, g2)
}
