//! Jacobian and Hessian extraction by repeated hyper-dual calls.
//!
//! Calling `f` with the seed `⟨x, e_j, e_k, 0⟩` returns `∂f/∂x_j` in the
//! first perturbation part and `∂²f/∂x_j∂x_k` in the cross part. The
//! Jacobian takes `n` calls with seeds `⟨x, e_j, 0, 0⟩`; the Hessian takes
//! `n(n+1)/2` calls over `j = 1..n`, `k = 1..j`, mirroring each entry to
//! the upper triangle.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::Error;
use crate::field::Field;
use crate::hyperdual::HyperDual;

/// A pure scalar function evaluated on hyper-dual points.
pub trait DiffFunction<F: Field>: Sync {
    fn arity(&self) -> usize;

    fn call(&self, x: &[HyperDual<F>]) -> Result<HyperDual<F>, Error>;
}

impl<F: Field, D: DiffFunction<F> + ?Sized> DiffFunction<F> for &D {
    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn call(&self, x: &[HyperDual<F>]) -> Result<HyperDual<F>, Error> {
        (**self).call(x)
    }
}

/// Adapts a closure into a [`DiffFunction`].
pub struct FnDiff<C> {
    arity: usize,
    f: C,
}

pub fn from_fn<F, C>(arity: usize, f: C) -> FnDiff<C>
where
    F: Field,
    C: Fn(&[HyperDual<F>]) -> Result<HyperDual<F>, Error> + Sync,
{
    FnDiff { arity, f }
}

impl<F, C> DiffFunction<F> for FnDiff<C>
where
    F: Field,
    C: Fn(&[HyperDual<F>]) -> Result<HyperDual<F>, Error> + Sync,
{
    fn arity(&self) -> usize {
        self.arity
    }

    fn call(&self, x: &[HyperDual<F>]) -> Result<HyperDual<F>, Error> {
        (self.f)(x)
    }
}

/// Wraps a function and counts how often it is called.
pub struct Counting<D> {
    inner: D,
    calls: AtomicUsize,
}

impl<D> Counting<D> {
    pub fn new(inner: D) -> Self {
        Counting {
            inner,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }
}

impl<F: Field, D: DiffFunction<F>> DiffFunction<F> for Counting<D> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn call(&self, x: &[HyperDual<F>]) -> Result<HyperDual<F>, Error> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.inner.call(x)
    }
}

/// Value, first and second derivatives of a function at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeReport<F> {
    pub value: F,
    pub jacobian: Vec<F>,
    /// Row-major `n × n`; `None` for Jacobian-only runs.
    pub hessian: Option<Vec<Vec<F>>>,
    pub invocations: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DriverOptions {
    /// Evaluate the seeds concurrently. Results are identical either way.
    pub parallel: bool,
}

/// Builds the point `⟨x, v₁, v₂, w⟩`.
pub fn seed_point<F: Field>(x: &[F], v1: &[F], v2: &[F], w: &[F]) -> Vec<HyperDual<F>> {
    x.iter()
        .zip(v1)
        .zip(v2)
        .zip(w)
        .map(|(((&x, &a), &b), &c)| HyperDual::new(x, a, b, c))
        .collect()
}

/// The point `⟨x, e_j, e_k, 0⟩`; `k = None` leaves the second seed at zero.
pub fn unit_seed<F: Field>(x: &[F], j: usize, k: Option<usize>) -> Vec<HyperDual<F>> {
    let unit = |i: usize, at: Option<usize>| {
        if at == Some(i) {
            F::one()
        } else {
            F::zero()
        }
    };
    x.iter()
        .enumerate()
        .map(|(i, &xi)| HyperDual::new(xi, unit(i, Some(j)), unit(i, k), F::zero()))
        .collect()
}

fn check_point<F: Field, D: DiffFunction<F> + ?Sized>(f: &D, x: &[F]) -> Result<(), Error> {
    if x.is_empty() {
        return Err(Error::EmptyPoint);
    }
    if x.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: x.len(),
        });
    }
    Ok(())
}

fn evaluate_seeds<F, D>(
    f: &D,
    x: &[F],
    seeds: &[(usize, Option<usize>)],
    opts: DriverOptions,
) -> Result<Vec<HyperDual<F>>, Error>
where
    F: Field,
    D: DiffFunction<F> + ?Sized,
{
    let run = |&(j, k): &(usize, Option<usize>)| f.call(&unit_seed(x, j, k));
    let outputs: Vec<HyperDual<F>> = if opts.parallel {
        seeds.par_iter().map(run).collect::<Result<_, _>>()?
    } else {
        seeds.iter().map(run).collect::<Result<_, _>>()?
    };
    let first = outputs[0].primal;
    if let Some(call) = outputs.iter().position(|y| !y.primal.same_bits(first)) {
        return Err(Error::InconsistentPrimal { call });
    }
    Ok(outputs)
}

pub fn jacobian<F: Field, D: DiffFunction<F> + ?Sized>(
    f: &D,
    x: &[F],
) -> Result<DerivativeReport<F>, Error> {
    jacobian_with(f, x, DriverOptions::default())
}

pub fn jacobian_with<F: Field, D: DiffFunction<F> + ?Sized>(
    f: &D,
    x: &[F],
    opts: DriverOptions,
) -> Result<DerivativeReport<F>, Error> {
    check_point(f, x)?;
    let seeds: Vec<_> = (0..x.len()).map(|j| (j, None)).collect();
    let outputs = evaluate_seeds(f, x, &seeds, opts)?;
    Ok(DerivativeReport {
        value: outputs[0].primal,
        jacobian: outputs.iter().map(|y| y.d1).collect(),
        hessian: None,
        invocations: outputs.len(),
    })
}

/// Full report: value, Jacobian and Hessian from `n(n+1)/2` calls.
pub fn hessian<F: Field, D: DiffFunction<F> + ?Sized>(
    f: &D,
    x: &[F],
) -> Result<DerivativeReport<F>, Error> {
    jacobian_and_hessian_with(f, x, DriverOptions::default())
}

pub fn jacobian_and_hessian<F: Field, D: DiffFunction<F> + ?Sized>(
    f: &D,
    x: &[F],
) -> Result<DerivativeReport<F>, Error> {
    jacobian_and_hessian_with(f, x, DriverOptions::default())
}

pub fn jacobian_and_hessian_with<F: Field, D: DiffFunction<F> + ?Sized>(
    f: &D,
    x: &[F],
    opts: DriverOptions,
) -> Result<DerivativeReport<F>, Error> {
    check_point(f, x)?;
    let n = x.len();
    let seeds: Vec<_> = (0..n)
        .flat_map(|j| (0..=j).map(move |k| (j, Some(k))))
        .collect();
    let outputs = evaluate_seeds(f, x, &seeds, opts)?;

    let mut jacobian = vec![F::zero(); n];
    let mut hessian = vec![vec![F::zero(); n]; n];
    for (&(j, k), y) in seeds.iter().zip(&outputs) {
        let k = k.expect("hessian seeds carry a second direction");
        if k == 0 {
            jacobian[j] = y.d1;
        }
        hessian[j][k] = y.d12;
        hessian[k][j] = y.d12;
    }
    Ok(DerivativeReport {
        value: outputs[0].primal,
        jacobian,
        hessian: Some(hessian),
        invocations: outputs.len(),
    })
}
