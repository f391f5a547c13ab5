//! Closed-form expressions of one real variable: parsing, evaluation,
//! exact symbolic differentiation, and interval evaluation.
//!
//! The grammar is fixed to the function classes the analyses need
//! (rational/trigonometric/exponential with constant exponents); see the
//! repository README for the EBNF. Expressions are immutable trees and all
//! operations are pure.

mod derivative;
mod interval_eval;
mod parser;

pub use derivative::differentiate;
pub use parser::parse;

use crate::scalar::Scalar;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tanh,
    Exp,
    Sqrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Power exponents are constants by construction; integer exponents keep
/// even/odd information for interval arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent<S> {
    Int(i32),
    Real(S),
}

/// Expression tree over one real variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<S> {
    Const(S),
    Var,
    Unary(UnaryOp, Box<Expr<S>>),
    Binary(BinaryOp, Box<Expr<S>>, Box<Expr<S>>),
    Pow(Box<Expr<S>>, Exponent<S>),
}

/// Evaluation failure: the expression left its real domain at some point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("division by zero at x = {at}")]
    DivisionByZero { at: f64 },
    #[error("square root of a negative value at x = {at}")]
    SqrtOfNegative { at: f64 },
    #[error("real power of a negative base at x = {at}")]
    NegativeBase { at: f64 },
    #[error("non-finite value at x = {at}")]
    NonFinite { at: f64 },
}

/// Syntax-level failure from [`parse`], carrying a byte offset into the source.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("`{name}` takes exactly one argument (offset {offset})")]
    Arity { offset: usize, name: String },
    #[error("exponent must be a constant expression (offset {offset})")]
    NonConstantExponent { offset: usize },
}

impl<S: Scalar> Expr<S> {
    /// Evaluates at `x`. Non-finite intermediate values are reported as
    /// domain errors rather than propagated as NaN/inf.
    pub fn eval(&self, x: S) -> Result<S, DomainError> {
        let at = || x.to_f64().unwrap_or(f64::NAN);
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Unary(op, e) => {
                let u = e.eval(x)?;
                match op {
                    UnaryOp::Neg => -u,
                    UnaryOp::Sin => u.sin(),
                    UnaryOp::Cos => u.cos(),
                    UnaryOp::Tanh => u.tanh(),
                    UnaryOp::Exp => u.exp(),
                    UnaryOp::Sqrt => {
                        if u < S::zero() {
                            return Err(DomainError::SqrtOfNegative { at: at() });
                        }
                        u.sqrt()
                    }
                }
            }
            Expr::Binary(op, a, b) => {
                let va = a.eval(x)?;
                let vb = b.eval(x)?;
                match op {
                    BinaryOp::Add => va + vb,
                    BinaryOp::Sub => va - vb,
                    BinaryOp::Mul => va * vb,
                    BinaryOp::Div => {
                        if vb == S::zero() {
                            return Err(DomainError::DivisionByZero { at: at() });
                        }
                        va / vb
                    }
                }
            }
            Expr::Pow(b, ex) => {
                let vb = b.eval(x)?;
                match ex {
                    Exponent::Int(n) => {
                        if vb == S::zero() && *n < 0 {
                            return Err(DomainError::DivisionByZero { at: at() });
                        }
                        vb.powi(*n)
                    }
                    Exponent::Real(r) => {
                        if vb < S::zero() {
                            return Err(DomainError::NegativeBase { at: at() });
                        }
                        if vb == S::zero() && *r < S::zero() {
                            return Err(DomainError::DivisionByZero { at: at() });
                        }
                        vb.powf(*r)
                    }
                }
            }
        };
        if !v.is_finite() {
            return Err(DomainError::NonFinite { at: at() });
        }
        Ok(v)
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var => true,
            Expr::Unary(_, e) => e.contains_var(),
            Expr::Binary(_, a, b) => a.contains_var() || b.contains_var(),
            Expr::Pow(b, _) => b.contains_var(),
        }
    }
}

// Precedence: add/sub < mul/div < unary-neg < pow < atoms.
fn prec<S>(e: &Expr<S>) -> u8 {
    match e {
        Expr::Binary(BinaryOp::Add | BinaryOp::Sub, _, _) => 1,
        Expr::Binary(BinaryOp::Mul | BinaryOp::Div, _, _) => 2,
        Expr::Unary(UnaryOp::Neg, _) => 3,
        Expr::Pow(_, _) => 4,
        _ => 5,
    }
}

struct P<'a, S>(&'a Expr<S>, u8);

impl<S: Scalar> fmt::Display for P<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let P(e, min) = *self;
        let wrap = prec(e) < min;
        if wrap {
            write!(f, "(")?;
        }
        match e {
            Expr::Const(c) => write!(f, "{c}")?,
            Expr::Var => write!(f, "x")?,
            Expr::Unary(UnaryOp::Neg, inner) => {
                // `-(2)` keeps an explicit negation node distinct from the
                // negative literal the parser would otherwise fold.
                if matches!(**inner, Expr::Const(c) if !(c < S::zero() || (c == S::zero() && c.is_sign_negative())))
                {
                    write!(f, "-({})", P(inner, 0))?;
                } else {
                    write!(f, "-{}", P(inner, 3))?;
                }
            }
            Expr::Unary(op, inner) => {
                let name = match op {
                    UnaryOp::Sin => "sin",
                    UnaryOp::Cos => "cos",
                    UnaryOp::Tanh => "tanh",
                    UnaryOp::Exp => "exp",
                    UnaryOp::Sqrt => "sqrt",
                    UnaryOp::Neg => unreachable!(),
                };
                write!(f, "{name}({})", P(inner, 0))?;
            }
            Expr::Binary(op, a, b) => {
                let (sym, p) = match op {
                    BinaryOp::Add => (" + ", 1),
                    BinaryOp::Sub => (" - ", 1),
                    BinaryOp::Mul => ("*", 2),
                    BinaryOp::Div => ("/", 2),
                };
                write!(f, "{}{sym}{}", P(a, p), P(b, p + 1))?;
            }
            Expr::Pow(b, ex) => {
                let neg_const_base =
                    matches!(**b, Expr::Const(c) if c < S::zero() || (c == S::zero() && c.is_sign_negative()));
                if neg_const_base {
                    write!(f, "({})", P(b, 0))?;
                } else {
                    write!(f, "{}", P(b, 5))?;
                }
                match ex {
                    Exponent::Int(n) => write!(f, "^{n}")?,
                    Exponent::Real(r) => write!(f, "^{r}")?,
                }
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Display for Expr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", P(self, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> Expr<f64> {
        parse(src).unwrap()
    }

    #[test]
    fn eval_rational() {
        let e = p("1/(x^2+1)");
        assert_eq!(e.eval(0.0).unwrap(), 1.0);
        assert_eq!(e.eval(1.0).unwrap(), 0.5);
    }

    #[test]
    fn eval_example_boundary_function() {
        let e = p("sin(x)^2/(2*(x^2+1))");
        let v = e.eval(std::f64::consts::PI).unwrap();
        assert!(v.abs() < 1e-12, "sin(pi)^2 term should vanish, got {v}");
    }

    #[test]
    fn division_by_zero_is_reported() {
        let e = p("1/x");
        assert!(matches!(
            e.eval(0.0),
            Err(DomainError::DivisionByZero { .. })
        ));
    }

    #[test]
    fn sqrt_of_negative_is_reported() {
        let e = p("sqrt(x)");
        assert!(matches!(
            e.eval(-1.0),
            Err(DomainError::SqrtOfNegative { .. })
        ));
    }

    #[test]
    fn overflow_is_reported_not_propagated() {
        let e = p("exp(x)*exp(x)");
        assert!(matches!(e.eval(500.0), Err(DomainError::NonFinite { .. })));
    }

    #[test]
    fn display_round_trips_examples() {
        for src in [
            "1/(x^2 + 1)",
            "sin(x)^2/(2*(x^2 + 1))",
            "x^-2",
            "(-2)^2",
            "-(x*x) + 4",
            "x^0.5",
            "tanh(1.5*(x - 2))",
        ] {
            let e = p(src);
            let printed = e.to_string();
            let back = p(&printed);
            assert_eq!(back, e, "round trip failed: {src} -> {printed}");
        }
    }
}
