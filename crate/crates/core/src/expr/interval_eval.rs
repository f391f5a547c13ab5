//! Interval evaluation of expressions: the returned interval encloses the
//! exact range of the expression over the input interval.

use super::{BinaryOp, DomainError, Exponent, Expr, UnaryOp};
use crate::interval::Interval;
use crate::scalar::Scalar;

impl<S: Scalar> Expr<S> {
    /// Encloses `{ e(x) : x in i }`. Domain errors are raised whenever the
    /// enclosure of a subterm touches a singularity, so a success certifies
    /// the whole input interval lies in the domain.
    pub fn eval_interval(&self, i: &Interval<S>) -> Result<Interval<S>, DomainError> {
        let at = || i.midpoint().to_f64().unwrap_or(f64::NAN);
        let v = match self {
            Expr::Const(c) => Interval::point(*c),
            Expr::Var => *i,
            Expr::Unary(op, e) => {
                let u = e.eval_interval(i)?;
                match op {
                    UnaryOp::Neg => u.neg(),
                    UnaryOp::Sin => u.sin(),
                    UnaryOp::Cos => u.cos(),
                    UnaryOp::Tanh => u.tanh(),
                    UnaryOp::Exp => u.exp(),
                    UnaryOp::Sqrt => u
                        .sqrt()
                        .ok_or_else(|| DomainError::SqrtOfNegative { at: at() })?,
                }
            }
            Expr::Binary(op, a, b) => {
                let va = a.eval_interval(i)?;
                let vb = b.eval_interval(i)?;
                match op {
                    BinaryOp::Add => va.add(&vb),
                    BinaryOp::Sub => va.sub(&vb),
                    BinaryOp::Mul => va.mul(&vb),
                    BinaryOp::Div => va
                        .div(&vb)
                        .ok_or_else(|| DomainError::DivisionByZero { at: at() })?,
                }
            }
            Expr::Pow(b, ex) => {
                let vb = b.eval_interval(i)?;
                match ex {
                    Exponent::Int(n) => vb
                        .powi(*n)
                        .ok_or_else(|| DomainError::DivisionByZero { at: at() })?,
                    Exponent::Real(r) => vb
                        .powf(*r)
                        .ok_or_else(|| DomainError::NegativeBase { at: at() })?,
                }
            }
        };
        if !v.lo().is_finite() || !v.hi().is_finite() {
            return Err(DomainError::NonFinite { at: at() });
        }
        Ok(v)
    }
}
