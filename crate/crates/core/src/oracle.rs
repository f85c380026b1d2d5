//! Reference derivatives from plain function values.
//!
//! Central finite differences work over both fields. Over the complex
//! field each stencil is applied once along the real axis and once along
//! the imaginary axis of the perturbed coordinates, and the two estimates
//! are combined assuming the function is holomorphic. The complex-step
//! method applies to functions that are real-valued on real inputs.
//!
//! These routines never touch the dual or hyper-dual types, so they can
//! check them.

use num_complex::Complex64;

use crate::error::Error;
use crate::field::Field;

/// Step sizes for the central-difference stencils.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    h1: f64,
    h2: f64,
    relative: bool,
}

impl Default for FdConfig {
    /// `h1 = ε^(1/3)` and `h2 = ε^(1/4)`, both scaled by `max(1, |x_j|)`.
    fn default() -> Self {
        FdConfig {
            h1: f64::EPSILON.cbrt(),
            h2: f64::EPSILON.powf(0.25),
            relative: true,
        }
    }
}

impl FdConfig {
    pub fn new(h1: f64, h2: f64, relative: bool) -> Result<Self, Error> {
        if !(h1 > 0.0 && h2 > 0.0 && h1.is_finite() && h2.is_finite()) {
            return Err(Error::NotApplicable(format!(
                "finite-difference steps must be positive, got h1 = {h1}, h2 = {h2}"
            )));
        }
        Ok(FdConfig { h1, h2, relative })
    }

    pub fn h1(&self) -> f64 {
        self.h1
    }

    pub fn h2(&self) -> f64 {
        self.h2
    }

    pub fn relative(&self) -> bool {
        self.relative
    }

    fn scaled(&self, h: f64, xj: impl Field) -> f64 {
        if self.relative {
            h * xj.modulus().max(1.0)
        } else {
            h
        }
    }
}

/// Perturbation directions: `1` and, for the complex field, `i`.
fn directions<F: Field>() -> Vec<F> {
    std::iter::once(F::one())
        .chain(F::imaginary_unit())
        .collect()
}

fn shifted<F: Field>(x: &[F], moves: &[(usize, F)]) -> Vec<F> {
    let mut p = x.to_vec();
    for &(j, delta) in moves {
        p[j] = p[j] + delta;
    }
    p
}

/// Central first differences `(f(x + h·e_j) − f(x − h·e_j)) / 2h`.
pub fn fd_jacobian<F, G>(f: G, x: &[F], cfg: &FdConfig) -> Result<Vec<F>, Error>
where
    F: Field,
    G: Fn(&[F]) -> Result<F, Error>,
{
    let dirs = directions::<F>();
    let weight = F::from_f64(1.0 / dirs.len() as f64);
    let mut out = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        let h = cfg.scaled(cfg.h1, x[j]);
        let mut acc = F::zero();
        for &dir in &dirs {
            let step = dir * F::from_f64(h);
            let plus = f(&shifted(x, &[(j, step)]))?;
            let minus = f(&shifted(x, &[(j, -step)]))?;
            acc = acc + (plus - minus) / (F::from_f64(2.0 * h) * dir);
        }
        out.push(acc * weight);
    }
    Ok(out)
}

/// Second differences: three-point on the diagonal, four-point off it,
/// symmetrized by averaging the `(j, k)` and `(k, j)` stencils.
pub fn fd_hessian<F, G>(f: G, x: &[F], cfg: &FdConfig) -> Result<Vec<Vec<F>>, Error>
where
    F: Field,
    G: Fn(&[F]) -> Result<F, Error>,
{
    let n = x.len();
    let dirs = directions::<F>();
    let weight = F::from_f64(1.0 / dirs.len() as f64);
    let two = F::from_f64(2.0);
    let center = f(x)?;
    let mut out = vec![vec![F::zero(); n]; n];
    for j in 0..n {
        let hj = cfg.scaled(cfg.h2, x[j]);
        for k in 0..=j {
            let hk = cfg.scaled(cfg.h2, x[k]);
            let mut acc = F::zero();
            for &dir in &dirs {
                let sj = dir * F::from_f64(hj);
                let sk = dir * F::from_f64(hk);
                let estimate = if j == k {
                    let plus = f(&shifted(x, &[(j, sj)]))?;
                    let minus = f(&shifted(x, &[(j, -sj)]))?;
                    (plus - two * center + minus) / (sj * sj)
                } else {
                    let pp = f(&shifted(x, &[(j, sj), (k, sk)]))?;
                    let pm = f(&shifted(x, &[(j, sj), (k, -sk)]))?;
                    let mp = f(&shifted(x, &[(j, -sj), (k, sk)]))?;
                    let mm = f(&shifted(x, &[(j, -sj), (k, -sk)]))?;
                    let denom = F::from_f64(4.0) * sj * sk;
                    let jk = (pp - pm - mp + mm) / denom;
                    let kj = (pp - mp - pm + mm) / denom;
                    (jk + kj) / two
                };
                acc = acc + estimate;
            }
            let entry = acc * weight;
            out[j][k] = entry;
            out[k][j] = entry;
        }
    }
    Ok(out)
}

/// `Im f(x + i·h·e_j) / h` for a function that is real on real inputs.
pub fn complex_step_jacobian<G>(f: G, x: &[f64], h: f64) -> Result<Vec<f64>, Error>
where
    G: Fn(&[Complex64]) -> Result<Complex64, Error>,
{
    if h.is_nan() || h <= 0.0 {
        return Err(Error::NotApplicable(format!("complex step must be positive, got {h}")));
    }
    let base: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let value = f(&base)?;
    if value.im != 0.0 {
        return Err(Error::NotApplicable(format!(
            "function value {value} is not real at a real point"
        )));
    }
    (0..x.len())
        .map(|j| {
            let y = f(&shifted(&base, &[(j, Complex64::new(0.0, h))]))?;
            Ok(y.im / h)
        })
        .collect()
}

/// `|value − reference| / max(1, |value|, |reference|)`.
///
/// Relative for large magnitudes, absolute below one, so entries whose
/// exact value is zero can be compared.
pub fn rel_dev<F: Field>(value: F, reference: F) -> f64 {
    let scale = value.modulus().max(reference.modulus()).max(1.0);
    (value - reference).modulus() / scale
}

/// Largest [`rel_dev`] over paired entries. NaN anywhere yields NaN.
pub fn max_rel_dev<'a, F: Field>(
    values: impl IntoIterator<Item = &'a F>,
    references: impl IntoIterator<Item = &'a F>,
) -> f64 {
    values
        .into_iter()
        .zip(references)
        .map(|(&a, &b)| rel_dev(a, b))
        .fold(0.0, |m, d| if d.is_nan() || m.is_nan() { f64::NAN } else { m.max(d) })
}
