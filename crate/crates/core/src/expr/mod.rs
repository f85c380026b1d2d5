//! Textual expressions over `x1..xN`, evaluated with any [`AdScalar`].
//!
//! Evaluation calls exactly the primitives the expression spells out, in
//! source order. There is no constant folding, so the derivative parts of
//! the result come from the same chain of primitive calls a hand-written
//! function would make.

mod parser;

use std::fmt;

pub use parser::ParseDiagnostic;

use crate::drivers::DiffFunction;
use crate::error::{DomainError, Error};
use crate::field::{Elementary, Field};
use crate::hyperdual::HyperDual;
use crate::scalar::{AdScalar, DomainMode};

/// Deepest expression tree the parser accepts.
pub const MAX_DEPTH: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => " + ",
            BinaryOp::Sub => " - ",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// `re` or `im·i`; the parser never produces both parts nonzero.
    Literal { re: f64, im: f64 },
    /// One-based: `Variable(1)` is `x1`.
    Variable(usize),
    Unary(UnaryOp, Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
    Call(Elementary, Box<Node>),
}

impl Node {
    pub fn literal(v: f64) -> Node {
        Node::Literal { re: v, im: 0.0 }
    }

    pub fn var(index: usize) -> Node {
        Node::Variable(index)
    }

    pub fn negate(child: Node) -> Node {
        Node::Unary(UnaryOp::Neg, Box::new(child))
    }

    pub fn binary(op: BinaryOp, lhs: Node, rhs: Node) -> Node {
        Node::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn call(f: Elementary, arg: Node) -> Node {
        Node::Call(f, Box::new(arg))
    }

    fn max_variable(&self) -> usize {
        match self {
            Node::Literal { .. } => 0,
            Node::Variable(i) => *i,
            Node::Unary(_, c) | Node::Call(_, c) => c.max_variable(),
            Node::Binary(_, l, r) => l.max_variable().max(r.max_variable()),
        }
    }

    fn depth(&self) -> usize {
        match self {
            Node::Literal { .. } | Node::Variable(_) => 1,
            Node::Unary(_, c) | Node::Call(_, c) => 1 + c.depth(),
            Node::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    fn has_imaginary_literal(&self) -> bool {
        match self {
            Node::Literal { im, .. } => *im != 0.0,
            Node::Variable(_) => false,
            Node::Unary(_, c) | Node::Call(_, c) => c.has_imaginary_literal(),
            Node::Binary(_, l, r) => l.has_imaginary_literal() || r.has_imaginary_literal(),
        }
    }

    /// Binding strength when printed: higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Node::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 1,
            Node::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 2,
            Node::Unary(..) => 3,
            Node::Binary(BinaryOp::Pow, ..) => 4,
            Node::Literal { re, im } if *re < 0.0 || *im < 0.0 || (*re != 0.0 && *im != 0.0) => 0,
            _ => 5,
        }
    }

    fn eval<T: AdScalar>(&self, point: &[T], mode: DomainMode) -> Result<T, Error> {
        Ok(match self {
            Node::Literal { re, im } => {
                let c = T::Field::from_parts(*re, *im).ok_or_else(|| {
                    DomainError::new("literal", format!("{im}i is not a real number"))
                })?;
                T::constant(c)
            }
            Node::Variable(i) => point[*i - 1],
            Node::Unary(UnaryOp::Neg, c) => -c.eval(point, mode)?,
            Node::Binary(op, l, r) => {
                let a = l.eval(point, mode)?;
                let b = r.eval(point, mode)?;
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => a.try_div(b, mode)?,
                    BinaryOp::Pow => a.try_pow(b, mode)?,
                }
            }
            Node::Call(f, c) => c.eval(point, mode)?.try_elementary(*f, mode)?,
        })
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Node, parenthesize: bool) -> fmt::Result {
    if parenthesize {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Literal { re, im } => match (*re == 0.0, *im == 0.0) {
                (_, true) => write!(f, "{re:?}"),
                (true, false) => write!(f, "{im:?}i"),
                (false, false) => write!(f, "{re:?} + {im:?}i"),
            },
            Node::Variable(i) => write!(f, "x{i}"),
            Node::Unary(UnaryOp::Neg, c) => {
                f.write_str("-")?;
                write_child(f, c, c.precedence() < 3)
            }
            Node::Call(func, c) => write!(f, "{func}({c})"),
            Node::Binary(BinaryOp::Pow, l, r) => {
                write_child(f, l, l.precedence() < 5)?;
                f.write_str("^")?;
                write_child(f, r, r.precedence() < 3)
            }
            Node::Binary(op, l, r) => {
                let p = self.precedence();
                write_child(f, l, l.precedence() < p)?;
                f.write_str(op.symbol())?;
                write_child(f, r, r.precedence() <= p)
            }
        }
    }
}

/// A parsed expression with its arity.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
    arity: usize,
}

impl Expr {
    /// The arity is the highest variable index used; `x2` alone has arity 2.
    pub fn new(root: Node) -> Expr {
        let arity = root.max_variable();
        Expr { root, arity }
    }

    pub fn parse(input: &str) -> Result<Expr, ParseDiagnostic> {
        parser::parse(input).map(Expr::new)
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    /// True when a literal has a nonzero imaginary part.
    pub fn has_imaginary_literal(&self) -> bool {
        self.root.has_imaginary_literal()
    }

    pub fn eval<T: AdScalar>(&self, point: &[T], mode: DomainMode) -> Result<T, Error> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        self.root.eval(point, mode)
    }

    pub fn to_diff_function(&self, mode: DomainMode) -> ExprFunction<'_> {
        ExprFunction { expr: self, mode }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

/// An expression viewed as a [`DiffFunction`].
#[derive(Debug, Clone, Copy)]
pub struct ExprFunction<'a> {
    expr: &'a Expr,
    mode: DomainMode,
}

impl<F: Field> DiffFunction<F> for ExprFunction<'_> {
    fn arity(&self) -> usize {
        self.expr.arity
    }

    fn call(&self, x: &[HyperDual<F>]) -> Result<HyperDual<F>, Error> {
        self.expr.eval(x, self.mode)
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::drivers::jacobian;
    use crate::Dual;

    const MIXED_F: &str = "x1 + x2^2*x3 - x1/x3 + x2^x1";

    fn hd(x: f64, d1: f64, d2: f64, d12: f64) -> HyperDual<f64> {
        HyperDual::new(x, d1, d2, d12)
    }

    #[test]
    fn mixed_function_structure() {
        let e = Expr::parse(MIXED_F).unwrap();
        assert_eq!(e.arity(), 3);
        let v = |i| Node::var(i);
        let expected = Node::binary(
            BinaryOp::Add,
            Node::binary(
                BinaryOp::Sub,
                Node::binary(
                    BinaryOp::Add,
                    v(1),
                    Node::binary(
                        BinaryOp::Mul,
                        Node::binary(BinaryOp::Pow, v(2), Node::literal(2.0)),
                        v(3),
                    ),
                ),
                Node::binary(BinaryOp::Div, v(1), v(3)),
            ),
            Node::binary(BinaryOp::Pow, v(2), v(1)),
        );
        assert_eq!(e.root(), &expected);
    }

    #[test]
    fn eval_examples() {
        let sum = Expr::parse("x1+x2").unwrap();
        let r = sum
            .eval(&[hd(1.0, 1.0, 0.0, 0.0), hd(2.0, 0.0, 0.0, 0.0)], DomainMode::Strict)
            .unwrap();
        assert_eq!(r, hd(3.0, 1.0, 0.0, 0.0));

        let root = Expr::parse("sqrt(x1)").unwrap();
        let r = root.eval(&[hd(4.0, 1.0, 1.0, 0.0)], DomainMode::Strict).unwrap();
        assert_eq!(r, hd(2.0, 0.25, 0.25, -0.03125));

        let foo = Expr::parse("(x1+sqrt(x1))/sqrt(x1)").unwrap();
        let r = foo.eval(&[hd(4.0, 1.0, 1.0, 0.0)], DomainMode::Strict).unwrap();
        assert_eq!(r, hd(3.0, 0.25, 0.25, -0.03125));
    }

    #[test]
    fn eval_checks_arity() {
        let e = Expr::parse("x1*x2").unwrap();
        assert_eq!(
            e.eval(&[1.0f64], DomainMode::Strict),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn eval_reports_domain_errors() {
        let e = Expr::parse("log(x1 - 1)").unwrap();
        assert!(matches!(
            e.eval(&[1.0f64], DomainMode::Strict),
            Err(Error::Domain(_))
        ));
        assert_eq!(e.eval(&[1.0f64], DomainMode::Propagate), Ok(f64::NEG_INFINITY));
    }

    #[test]
    fn imaginary_literal_needs_complex_field() {
        let e = Expr::parse("x1 + 2i").unwrap();
        assert!(e.has_imaginary_literal());
        assert!(e.eval(&[1.0f64], DomainMode::Strict).is_err());
        let z = e.eval(&[Complex64::new(1.0, 0.0)], DomainMode::Strict).unwrap();
        assert_eq!(z, Complex64::new(1.0, 2.0));
    }

    #[test]
    fn constants() {
        let e = Expr::parse("pi + e").unwrap();
        assert_eq!(e.arity(), 0);
        assert_eq!(
            e.eval::<f64>(&[], DomainMode::Strict).unwrap(),
            std::f64::consts::PI + std::f64::consts::E
        );
    }

    #[test]
    fn diff_function_wrapping() {
        let mixed = Expr::parse(MIXED_F).unwrap();
        assert_eq!(DiffFunction::<f64>::arity(&mixed.to_diff_function(DomainMode::Strict)), 3);

        let id = Expr::parse("x1").unwrap();
        let r = jacobian(&id.to_diff_function(DomainMode::Strict), &[0.7]).unwrap();
        assert_eq!(r.jacobian, vec![1.0]);

        let prod = Expr::parse("x1*x2").unwrap();
        let r = jacobian(&prod.to_diff_function(DomainMode::Strict), &[2.0, 3.0]).unwrap();
        assert_eq!(r.jacobian, vec![3.0, 2.0]);
    }

    #[test]
    fn printing() {
        let cases = [
            ("x1 + x2^2*x3 - x1/x3 + x2^x1", "x1 + x2^2.0*x3 - x1/x3 + x2^x1"),
            ("-x1^2", "-x1^2.0"),
            ("(-x1)^2", "(-x1)^2.0"),
            ("x1 - (x2 - x3)", "x1 - (x2 - x3)"),
            ("x1/(x2*x3)", "x1/(x2*x3)"),
            ("2^3^2", "2.0^3.0^2.0"),
            ("(2^3)^2", "(2.0^3.0)^2.0"),
            ("2^-x1", "2.0^-x1"),
            ("--x1", "--x1"),
            ("-(x1+x2)", "-(x1 + x2)"),
            ("sin(x1)^2 * 2i", "sin(x1)^2.0*2.0i"),
        ];
        for (input, printed) in cases {
            let e = Expr::parse(input).unwrap();
            assert_eq!(e.to_string(), printed, "{input}");
            assert_eq!(Expr::parse(printed).unwrap(), e, "{input}");
        }
    }

    #[test]
    fn plain_dual_and_hyperdual_primals_agree() {
        let e = Expr::parse("exp(sin(x1)*x2) / (1 + x2^2) - atan(x1)^x2").unwrap();
        let x = [0.4, 1.3];
        let plain = e.eval(&x, DomainMode::Strict).unwrap();
        let dual: Vec<Dual<f64>> = x.iter().map(|&v| Dual::variable(v)).collect();
        let hyper: Vec<HyperDual<f64>> = x.iter().map(|&v| hd(v, 1.0, 1.0, 0.0)).collect();
        let d = e.eval(&dual, DomainMode::Strict).unwrap();
        let h = e.eval(&hyper, DomainMode::Strict).unwrap();
        assert_eq!(plain.to_bits(), d.primal.to_bits());
        assert_eq!(plain.to_bits(), h.primal.to_bits());
        assert_eq!(d.d.to_bits(), h.d1.to_bits());
    }
}
