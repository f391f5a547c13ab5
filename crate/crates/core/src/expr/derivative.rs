//! Exact symbolic differentiation with light simplification.
//!
//! Simplification is limited to constant folding and dropping `*0`/`*1`/`+0`
//! terms; the correctness contract is numeric agreement with finite
//! differences, not any canonical form.

use super::{BinaryOp, Exponent, Expr, UnaryOp};
use crate::scalar::{s, Scalar};

pub fn differentiate<S: Scalar>(e: &Expr<S>) -> Expr<S> {
    match e {
        Expr::Const(_) => Expr::Const(S::zero()),
        Expr::Var => Expr::Const(S::one()),
        Expr::Unary(op, u) => {
            let du = differentiate(u);
            match op {
                UnaryOp::Neg => neg(du),
                UnaryOp::Sin => mul(cos((**u).clone()), du),
                UnaryOp::Cos => neg(mul(sin((**u).clone()), du)),
                UnaryOp::Tanh => {
                    let sech2 = sub(
                        Expr::Const(S::one()),
                        powi(Expr::Unary(UnaryOp::Tanh, u.clone()), 2),
                    );
                    mul(sech2, du)
                }
                UnaryOp::Exp => mul(Expr::Unary(UnaryOp::Exp, u.clone()), du),
                UnaryOp::Sqrt => div(
                    du,
                    mul(Expr::Const(s(2.0)), Expr::Unary(UnaryOp::Sqrt, u.clone())),
                ),
            }
        }
        Expr::Binary(op, a, b) => {
            let da = differentiate(a);
            let db = differentiate(b);
            match op {
                BinaryOp::Add => add(da, db),
                BinaryOp::Sub => sub(da, db),
                BinaryOp::Mul => add(mul(da, (**b).clone()), mul((**a).clone(), db)),
                BinaryOp::Div => div(
                    sub(mul(da, (**b).clone()), mul((**a).clone(), db)),
                    powi((**b).clone(), 2),
                ),
            }
        }
        Expr::Pow(b, ex) => {
            let db = differentiate(b);
            match ex {
                Exponent::Int(n) => {
                    let coeff = Expr::Const(S::from_i32(*n).unwrap());
                    mul(mul(coeff, powi((**b).clone(), n - 1)), db)
                }
                Exponent::Real(r) => {
                    let coeff = Expr::Const(*r);
                    mul(mul(coeff, pow_real((**b).clone(), *r - S::one())), db)
                }
            }
        }
    }
}

fn as_const<S: Scalar>(e: &Expr<S>) -> Option<S> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

pub(crate) fn add<S: Scalar>(a: Expr<S>, b: Expr<S>) -> Expr<S> {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Expr::Const(x + y),
        (Some(x), _) if x == S::zero() => b,
        (_, Some(y)) if y == S::zero() => a,
        _ => Expr::Binary(BinaryOp::Add, Box::new(a), Box::new(b)),
    }
}

pub(crate) fn sub<S: Scalar>(a: Expr<S>, b: Expr<S>) -> Expr<S> {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Expr::Const(x - y),
        (_, Some(y)) if y == S::zero() => a,
        (Some(x), _) if x == S::zero() => neg(b),
        _ => Expr::Binary(BinaryOp::Sub, Box::new(a), Box::new(b)),
    }
}

pub(crate) fn mul<S: Scalar>(a: Expr<S>, b: Expr<S>) -> Expr<S> {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Expr::Const(x * y),
        (Some(x), _) if x == S::zero() => Expr::Const(S::zero()),
        (_, Some(y)) if y == S::zero() => Expr::Const(S::zero()),
        (Some(x), _) if x == S::one() => b,
        (_, Some(y)) if y == S::one() => a,
        _ => Expr::Binary(BinaryOp::Mul, Box::new(a), Box::new(b)),
    }
}

pub(crate) fn div<S: Scalar>(a: Expr<S>, b: Expr<S>) -> Expr<S> {
    if as_const(&a) == Some(S::zero()) {
        return Expr::Const(S::zero());
    }
    if as_const(&b) == Some(S::one()) {
        return a;
    }
    Expr::Binary(BinaryOp::Div, Box::new(a), Box::new(b))
}

pub(crate) fn neg<S: Scalar>(a: Expr<S>) -> Expr<S> {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Unary(UnaryOp::Neg, inner) => *inner,
        _ => Expr::Unary(UnaryOp::Neg, Box::new(a)),
    }
}

pub(crate) fn powi<S: Scalar>(base: Expr<S>, n: i32) -> Expr<S> {
    match n {
        0 => Expr::Const(S::one()),
        1 => base,
        _ => {
            if let Some(c) = as_const(&base) {
                if n > 0 {
                    return Expr::Const(c.powi(n));
                }
            }
            Expr::Pow(Box::new(base), Exponent::Int(n))
        }
    }
}

fn pow_real<S: Scalar>(base: Expr<S>, r: S) -> Expr<S> {
    let max_int = s::<S>(1e9);
    if r.fract() == S::zero() && r.abs() <= max_int {
        powi(base, r.to_f64().unwrap() as i32)
    } else {
        Expr::Pow(Box::new(base), Exponent::Real(r))
    }
}

fn sin<S: Scalar>(u: Expr<S>) -> Expr<S> {
    Expr::Unary(UnaryOp::Sin, Box::new(u))
}

fn cos<S: Scalar>(u: Expr<S>) -> Expr<S> {
    Expr::Unary(UnaryOp::Cos, Box::new(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn central_diff(e: &Expr<f64>, x: f64, h: f64) -> f64 {
        (e.eval(x + h).unwrap() - e.eval(x - h).unwrap()) / (2.0 * h)
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let e: Expr<f64> = parse("3.25").unwrap();
        assert_eq!(differentiate(&e), Expr::Const(0.0));
    }

    #[test]
    fn derivative_of_witch_matches_closed_form() {
        // d/dx 1/(x^2+1) = -2x/(x^2+1)^2
        let e: Expr<f64> = parse("1/(x^2+1)").unwrap();
        let d = differentiate(&e);
        for &x in &[-3.0f64, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 7.5] {
            let expected = -2.0 * x / (x * x + 1.0).powi(2);
            let got = d.eval(x).unwrap();
            assert!(
                (got - expected).abs() <= 1e-14 * (1.0 + expected.abs()),
                "x={x}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn derivative_matches_finite_differences_on_example_c1() {
        let e: Expr<f64> = parse("sin(x)^2/(2*(x^2+1))").unwrap();
        let d = differentiate(&e);
        for i in 0..1000 {
            let x = -10.0 + 20.0 * (i as f64) / 999.0;
            let fd = central_diff(&e, x, 1e-5);
            let sym = d.eval(x).unwrap();
            assert!(
                (sym - fd).abs() <= 1e-6 * (1.0 + sym.abs()),
                "x={x}: {sym} vs {fd}"
            );
        }
    }

    #[test]
    fn tanh_and_sqrt_rules() {
        let e: Expr<f64> = parse("tanh(x) + sqrt(x^2+1)").unwrap();
        let d = differentiate(&e);
        for &x in &[-2.0, -0.3, 0.0, 0.7, 3.0] {
            let fd = central_diff(&e, x, 1e-6);
            let sym = d.eval(x).unwrap();
            assert!((sym - fd).abs() <= 1e-7 * (1.0 + sym.abs()));
        }
    }

    #[test]
    fn real_exponent_rule() {
        let e: Expr<f64> = parse("(x^2+1)^1.5").unwrap();
        let d = differentiate(&e);
        for &x in &[-1.5, 0.0, 0.5, 2.0] {
            let fd = central_diff(&e, x, 1e-6);
            let sym = d.eval(x).unwrap();
            assert!((sym - fd).abs() <= 1e-6 * (1.0 + sym.abs()));
        }
    }
}
