//! Test support shared by the property and acceptance suites: a corpus of
//! functions with well-conditioned points, a random expression generator and
//! the domain-margin check that decides whether a finite-difference oracle
//! can be trusted at a point.

#![allow(dead_code)]

use hdiff::expr::{BinaryOp, Node};
use hdiff::{Complex64, Elementary, Expr};
use rand::Rng;

pub const MIXED_F: &str = "x1 + x2^2*x3 - x1/x3 + x2^x1";
pub const FOO: &str = "(x1+sqrt(x1))/sqrt(x1)";

pub fn mixed_point() -> Vec<Complex64> {
    vec![
        Complex64::new(1.0, 1.0),
        Complex64::new(2.3, 0.0),
        Complex64::new(std::f64::consts::PI, 0.0),
    ]
}

/// A corpus entry: expression text and a well-conditioned point.
pub struct Case {
    pub expr: &'static str,
    pub point: Vec<Complex64>,
    pub complex: bool,
}

impl Case {
    pub fn real_point(&self) -> Vec<f64> {
        self.point.iter().map(|z| z.re).collect()
    }
}

fn real(expr: &'static str, point: &[f64]) -> Case {
    Case {
        expr,
        point: point.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        complex: false,
    }
}

/// Polynomials, rationals, transcendental compositions, the three-variable
/// complex example and the square-root example.
pub fn corpus() -> Vec<Case> {
    vec![
        Case {
            expr: MIXED_F,
            point: mixed_point(),
            complex: true,
        },
        real(FOO, &[4.0]),
        real("x1*x2", &[1.5, -2.0]),
        real("x1^3*x2 - 2*x1*x2^2 + x3", &[0.7, -1.3, 2.0]),
        real("x1/(1 + x2^2) - x2/(x1 + 3)", &[0.4, 1.1]),
        real("exp(x1)*sin(x2) + cos(x1*x2)", &[0.3, -0.8]),
        real("log(x1 + x2^2) * tanh(x3)", &[1.2, 0.5, -0.4]),
        real("atan(x1/x2) + asin(x1/3) - acos(x2/4)", &[1.1, 1.7]),
        real("sqrt(x1^2 + x2^2 + x3^2)", &[1.0, -2.0, 2.0]),
        real("sinh(x1)*cosh(x2) - tan(x1*x2/4)", &[0.6, 0.9]),
        real("x1^x2 * x2^x1", &[1.3, 2.1]),
        Case {
            expr: "exp(x1*x2) / (x1 + 2i) + sqrt(x2)",
            point: vec![Complex64::new(0.5, -0.3), Complex64::new(-1.0, 0.4)],
            complex: true,
        },
    ]
}

/// Random expression over `x1..x{arity}` with tree depth at most `depth`.
/// Literals are non-negative so the printed form re-parses to the same tree.
pub fn random_node<R: Rng>(rng: &mut R, depth: usize, arity: usize) -> Node {
    if depth <= 1 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.75) {
            Node::var(rng.gen_range(1..=arity))
        } else {
            Node::literal((rng.gen_range(0.5f64..3.0) * 100.0).round() / 100.0)
        };
    }
    match rng.gen_range(0..10) {
        0..=4 => {
            let op = [
                BinaryOp::Add,
                BinaryOp::Sub,
                BinaryOp::Mul,
                BinaryOp::Div,
                BinaryOp::Pow,
            ][rng.gen_range(0..5)];
            Node::binary(
                op,
                random_node(rng, depth - 1, arity),
                random_node(rng, depth - 1, arity),
            )
        }
        5 => Node::negate(random_node(rng, depth - 1, arity)),
        _ => {
            let f = Elementary::ALL[rng.gen_range(0..Elementary::ALL.len())];
            Node::call(f, random_node(rng, depth - 1, arity))
        }
    }
}

/// Number of primitive applications (interior nodes).
pub fn primitive_count(node: &Node) -> usize {
    match node {
        Node::Literal { .. } | Node::Variable(_) => 0,
        Node::Unary(_, c) | Node::Call(_, c) => 1 + primitive_count(c),
        Node::Binary(_, l, r) => 1 + primitive_count(l) + primitive_count(r),
    }
}

/// Keeps every primitive at least this far from its singular set.
pub const MARGIN: f64 = 0.25;
/// Largest intermediate magnitude accepted.
pub const MAGNITUDE: f64 = 50.0;

/// Evaluates `node` over the reals and returns `None` when some primitive
/// is within [`MARGIN`] of a singularity or branch point, or some
/// intermediate value or gradient entry exceeds [`MAGNITUDE`]. Finite
/// differences with the default steps are only trusted at points that pass.
pub fn margin_eval(node: &Node, x: &[f64]) -> Option<f64> {
    margin_grad(node, x).map(|(v, _)| v)
}

/// Value and gradient by a plain forward sweep, with the margin checks.
fn margin_grad(node: &Node, x: &[f64]) -> Option<(f64, Vec<f64>)> {
    let n = x.len();
    let scale = |g: &[f64], c: f64| g.iter().map(|d| c * d).collect::<Vec<_>>();
    let (v, g) = match node {
        Node::Literal { re, .. } => (*re, vec![0.0; n]),
        Node::Variable(i) => {
            let mut g = vec![0.0; n];
            g[*i - 1] = 1.0;
            (x[*i - 1], g)
        }
        Node::Unary(_, c) => {
            let (a, ga) = margin_grad(c, x)?;
            (-a, scale(&ga, -1.0))
        }
        Node::Binary(op, l, r) => {
            let (a, ga) = margin_grad(l, x)?;
            let (b, gb) = margin_grad(r, x)?;
            let combine = |ca: f64, cb: f64| -> Vec<f64> {
                ga.iter().zip(&gb).map(|(u, w)| ca * u + cb * w).collect()
            };
            match op {
                BinaryOp::Add => (a + b, combine(1.0, 1.0)),
                BinaryOp::Sub => (a - b, combine(1.0, -1.0)),
                BinaryOp::Mul => (a * b, combine(b, a)),
                BinaryOp::Div => {
                    if b.abs() < MARGIN {
                        return None;
                    }
                    (a / b, combine(1.0 / b, -a / (b * b)))
                }
                BinaryOp::Pow => {
                    if a < MARGIN || b.abs() > 4.0 {
                        return None;
                    }
                    let v = a.powf(b);
                    (v, combine(b * a.powf(b - 1.0), v * a.ln()))
                }
            }
        }
        Node::Call(f, c) => {
            let (a, ga) = margin_grad(c, x)?;
            let ok = match f {
                Elementary::Sqrt | Elementary::Log => a >= MARGIN,
                Elementary::Asin | Elementary::Acos => a.abs() <= 1.0 - MARGIN,
                Elementary::Tan => a.cos().abs() >= MARGIN,
                Elementary::Exp | Elementary::Sinh | Elementary::Cosh => a.abs() <= 4.0,
                _ => true,
            };
            if !ok {
                return None;
            }
            let (v, d) = match f {
                Elementary::Sqrt => (a.sqrt(), 0.5 / a.sqrt()),
                Elementary::Exp => (a.exp(), a.exp()),
                Elementary::Log => (a.ln(), 1.0 / a),
                Elementary::Sin => (a.sin(), a.cos()),
                Elementary::Cos => (a.cos(), -a.sin()),
                Elementary::Tan => (a.tan(), 1.0 / (a.cos() * a.cos())),
                Elementary::Sinh => (a.sinh(), a.cosh()),
                Elementary::Cosh => (a.cosh(), a.sinh()),
                Elementary::Tanh => (a.tanh(), 1.0 - a.tanh() * a.tanh()),
                Elementary::Asin => (a.asin(), 1.0 / (1.0 - a * a).sqrt()),
                Elementary::Acos => (a.acos(), -1.0 / (1.0 - a * a).sqrt()),
                Elementary::Atan => (a.atan(), 1.0 / (1.0 + a * a)),
            };
            (v, scale(&ga, d))
        }
    };
    let bounded = |t: f64| t.is_finite() && t.abs() <= MAGNITUDE;
    (bounded(v) && g.iter().all(|&d| bounded(d))).then_some((v, g))
}

/// Parses every corpus expression, panicking with context on failure.
pub fn parse(text: &str) -> Expr {
    Expr::parse(text).unwrap_or_else(|d| panic!("{text}: {d}"))
}

/// Every primitive, for per-primitive invariant sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prim {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    /// Perturbed exponent.
    Pow,
    /// Constant integer exponent.
    PowInt,
    Elem(Elementary),
}

pub fn all_prims() -> Vec<Prim> {
    let mut v = vec![
        Prim::Add,
        Prim::Sub,
        Prim::Mul,
        Prim::Div,
        Prim::Neg,
        Prim::Pow,
        Prim::PowInt,
    ];
    v.extend(Elementary::ALL.into_iter().map(Prim::Elem));
    v
}

impl Prim {
    pub fn is_binary(self) -> bool {
        matches!(
            self,
            Prim::Add | Prim::Sub | Prim::Mul | Prim::Div | Prim::Pow | Prim::PowInt
        )
    }

    /// Whether the second operand must stay perturbation-free.
    pub fn constant_rhs(self) -> bool {
        self == Prim::PowInt
    }

    pub fn apply<T: hdiff::AdScalar>(self, a: T, b: T) -> T {
        match self {
            Prim::Add => a + b,
            Prim::Sub => a - b,
            Prim::Mul => a * b,
            Prim::Div => a / b,
            Prim::Neg => -a,
            Prim::Pow | Prim::PowInt => a.pow(b),
            Prim::Elem(f) => a.elementary(f),
        }
    }

    /// Primal operands well inside the real domain.
    pub fn sample_real<R: Rng>(self, rng: &mut R) -> (f64, f64) {
        let away_from_zero = |rng: &mut R| {
            let m = rng.gen_range(0.3..3.0);
            if rng.gen_bool(0.5) {
                m
            } else {
                -m
            }
        };
        match self {
            Prim::Div => (rng.gen_range(-3.0..3.0), away_from_zero(rng)),
            Prim::Pow => (rng.gen_range(0.3..3.0), rng.gen_range(-2.5..2.5)),
            Prim::PowInt => (away_from_zero(rng), f64::from(rng.gen_range(-3i32..=4))),
            Prim::Elem(Elementary::Sqrt | Elementary::Log) => (rng.gen_range(0.2..5.0), 0.0),
            Prim::Elem(Elementary::Asin | Elementary::Acos) => (rng.gen_range(-0.9..0.9), 0.0),
            Prim::Elem(Elementary::Tan) => (rng.gen_range(-1.2..1.2), 0.0),
            _ => (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
        }
    }

    /// Primal operands for the complex field, kept away from singular points.
    pub fn sample_complex<R: Rng>(self, rng: &mut R) -> (Complex64, Complex64) {
        let (a, b) = self.sample_real(rng);
        let wiggle = |rng: &mut R| rng.gen_range(-0.5..0.5);
        let a = Complex64::new(a, wiggle(rng));
        let b = if self.constant_rhs() {
            Complex64::new(b, 0.0)
        } else {
            Complex64::new(b, wiggle(rng))
        };
        (a, b)
    }
}

/// Finite-difference Jacobian and Hessian, or `None` when halving the steps
/// moves either estimate by more than a quarter of the tolerance used to
/// compare against it. Truncation error shrinks fourfold when the step
/// halves, so a stable estimate is within a third of the tolerance.
pub fn trusted_fd<F, G>(f: G, x: &[F], tol_jac: f64, tol_hess: f64) -> Option<FdEstimate<F>>
where
    F: hdiff::Field,
    G: Fn(&[F]) -> Result<F, hdiff::Error> + Copy,
{
    use hdiff::oracle::{self, FdConfig};
    let cfg = FdConfig::default();
    let half = FdConfig::new(cfg.h1() / 2.0, cfg.h2() / 2.0, cfg.relative()).ok()?;
    let jac = oracle::fd_jacobian(f, x, &cfg).ok()?;
    let hess = oracle::fd_hessian(f, x, &cfg).ok()?;
    let jac_half = oracle::fd_jacobian(f, x, &half).ok()?;
    let hess_half = oracle::fd_hessian(f, x, &half).ok()?;
    let stable = oracle::max_rel_dev(&jac, &jac_half) <= tol_jac / 4.0
        && oracle::max_rel_dev(hess.iter().flatten(), hess_half.iter().flatten()) <= tol_hess / 4.0;
    stable.then_some(FdEstimate { jac, hess })
}

pub struct FdEstimate<F> {
    pub jac: Vec<F>,
    pub hess: Vec<Vec<F>>,
}
