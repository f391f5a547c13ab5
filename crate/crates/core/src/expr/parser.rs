//! Recursive-descent parser for the expression grammar.
//!
//! Precedence (loosest to tightest): `+ -`, `* /`, unary `-`, `^`, atoms.
//! `+ - * /` are left-associative. Exponents must fold to constants; a unary
//! minus directly before a numeric literal folds into the literal unless a
//! `^` follows (so `-2^2 == -(2^2)`).

use super::{BinaryOp, Exponent, Expr, ParseError, UnaryOp};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        let bytes = src.as_bytes();
        while lx.pos < bytes.len() {
            let start = lx.pos;
            let c = bytes[lx.pos];
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => lx.pos += 1,
                b'+' => lx.push1(&mut out, Tok::Plus),
                b'-' => lx.push1(&mut out, Tok::Minus),
                b'*' => lx.push1(&mut out, Tok::Star),
                b'/' => lx.push1(&mut out, Tok::Slash),
                b'^' => lx.push1(&mut out, Tok::Caret),
                b'(' => lx.push1(&mut out, Tok::LParen),
                b')' => lx.push1(&mut out, Tok::RParen),
                b',' => lx.push1(&mut out, Tok::Comma),
                b'0'..=b'9' | b'.' => {
                    let end = lx.scan_number(start)?;
                    let text = &src[start..end];
                    let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                        offset: start,
                        message: format!("invalid number `{text}`"),
                    })?;
                    out.push((Tok::Num(v), start));
                    lx.pos = end;
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let mut end = lx.pos;
                    while end < bytes.len()
                        && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
                    {
                        end += 1;
                    }
                    out.push((Tok::Ident(src[start..end].to_string()), start));
                    lx.pos = end;
                }
                _ => {
                    return Err(ParseError::Syntax {
                        offset: start,
                        message: format!("unexpected character `{}`", &src[start..start + 1]),
                    })
                }
            }
        }
        Ok(out)
    }

    fn push1(&mut self, out: &mut Vec<(Tok, usize)>, t: Tok) {
        out.push((t, self.pos));
        self.pos += 1;
    }

    fn scan_number(&self, start: usize) -> Result<usize, ParseError> {
        let bytes = self.src.as_bytes();
        let mut i = start;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i == start || (i == start + 1 && bytes[start] == b'.') {
            return Err(ParseError::Syntax {
                offset: start,
                message: "malformed number".to_string(),
            });
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            let digits = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > digits {
                i = j;
            }
        }
        Ok(i)
    }
}

struct Parser<S> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end_offset: usize,
    _marker: std::marker::PhantomData<S>,
}

/// Parses `source` into an expression tree.
pub fn parse<S: Scalar>(source: &str) -> Result<Expr<S>, ParseError> {
    if source.trim().is_empty() {
        return Err(ParseError::Syntax {
            offset: 0,
            message: "empty expression".to_string(),
        });
    }
    let toks = Lexer::tokens(source)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end_offset: source.len(),
        _marker: std::marker::PhantomData,
    };
    let e = p.expr()?;
    if let Some((_, off)) = p.peek() {
        return Err(ParseError::Syntax {
            offset: off,
            message: "unexpected trailing input".to_string(),
        });
    }
    Ok(e)
}

impl<S: Scalar> Parser<S> {
    fn peek(&self) -> Option<(&Tok, usize)> {
        self.toks.get(self.idx).map(|(t, o)| (t, *o))
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn offset(&self) -> usize {
        self.peek().map(|(_, o)| o).unwrap_or(self.end_offset)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<usize, ParseError> {
        match self.next() {
            Some((t, o)) if t == want => Ok(o),
            Some((_, o)) => Err(ParseError::Syntax {
                offset: o,
                message: format!("expected {what}"),
            }),
            None => Err(ParseError::Syntax {
                offset: self.end_offset,
                message: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr<S>, ParseError> {
        let mut lhs = self.term()?;
        while let Some((tok, _)) = self.peek() {
            let op = match tok {
                Tok::Plus => BinaryOp::Add,
                Tok::Minus => BinaryOp::Sub,
                _ => break,
            };
            self.next();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr<S>, ParseError> {
        let mut lhs = self.unary()?;
        while let Some((tok, _)) = self.peek() {
            let op = match tok {
                Tok::Star => BinaryOp::Mul,
                Tok::Slash => BinaryOp::Div,
                _ => break,
            };
            self.next();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr<S>, ParseError> {
        if matches!(self.peek(), Some((Tok::Minus, _))) {
            self.next();
            // Fold `-literal` unless a caret follows (power binds tighter).
            if let Some((Tok::Num(v), _)) = self.peek().map(|(t, o)| (t.clone(), o)) {
                let caret_after = matches!(
                    self.toks.get(self.idx + 1).map(|(t, _)| t),
                    Some(Tok::Caret)
                );
                if !caret_after {
                    self.next();
                    return Ok(Expr::Const(lit::<S>(-v)));
                }
            }
            let inner = self.unary()?;
            return Ok(Expr::Unary(UnaryOp::Neg, Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr<S>, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some((Tok::Caret, _))) {
            self.next();
            let exp_offset = self.offset();
            let exp_tree = self.unary()?;
            let ex = fold_exponent(&exp_tree, exp_offset)?;
            return Ok(Expr::Pow(Box::new(base), ex));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr<S>, ParseError> {
        match self.next() {
            Some((Tok::Num(v), _)) => Ok(Expr::Const(lit::<S>(v))),
            Some((Tok::Ident(name), off)) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "pi" => Ok(Expr::Const(S::PI())),
                "sin" | "cos" | "tanh" | "exp" | "sqrt" => {
                    self.expect(Tok::LParen, "`(` after function name")?;
                    let arg = self.expr()?;
                    if matches!(self.peek(), Some((Tok::Comma, _))) {
                        return Err(ParseError::Arity { offset: off, name });
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    let op = match name.as_str() {
                        "sin" => UnaryOp::Sin,
                        "cos" => UnaryOp::Cos,
                        "tanh" => UnaryOp::Tanh,
                        "exp" => UnaryOp::Exp,
                        _ => UnaryOp::Sqrt,
                    };
                    Ok(Expr::Unary(op, Box::new(arg)))
                }
                _ => Err(ParseError::UnknownIdentifier { offset: off, name }),
            },
            Some((Tok::LParen, _)) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some((_, off)) => Err(ParseError::Syntax {
                offset: off,
                message: "expected a number, `x`, function call, or `(`".to_string(),
            }),
            None => Err(ParseError::Syntax {
                offset: self.end_offset,
                message: "unexpected end of input".to_string(),
            }),
        }
    }
}

fn lit<S: Scalar>(v: f64) -> S {
    S::from_f64(v).expect("literal representable")
}

fn fold_exponent<S: Scalar>(tree: &Expr<S>, offset: usize) -> Result<Exponent<S>, ParseError> {
    if tree.contains_var() {
        return Err(ParseError::NonConstantExponent { offset });
    }
    let v = tree
        .eval(S::zero())
        .map_err(|_| ParseError::NonConstantExponent { offset })?;
    let max_int = S::from_f64(1e9).unwrap();
    if v.fract() == S::zero() && v.abs() <= max_int {
        Ok(Exponent::Int(v.to_f64().unwrap() as i32))
    } else {
        Ok(Exponent::Real(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_to_expected_shape() {
        let e: Expr<f64> = parse("1/(x^2+1)").unwrap();
        let expected = Expr::Binary(
            BinaryOp::Div,
            Box::new(Expr::Const(1.0)),
            Box::new(Expr::Binary(
                BinaryOp::Add,
                Box::new(Expr::Pow(Box::new(Expr::Var), Exponent::Int(2))),
                Box::new(Expr::Const(1.0)),
            )),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn parses_example_c1() {
        let e: Expr<f64> = parse("sin(x)^2/(2*(x^2+1))").unwrap();
        match &e {
            Expr::Binary(BinaryOp::Div, num, den) => {
                assert!(matches!(**num, Expr::Pow(_, Exponent::Int(2))));
                assert!(matches!(**den, Expr::Binary(BinaryOp::Mul, _, _)));
            }
            other => panic!("unexpected shape: {other:?}"),
        }
    }

    #[test]
    fn unbalanced_paren_reports_offset() {
        let err = parse::<f64>("1/(x^2").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                offset: 6,
                message: "expected `)`".to_string()
            }
        );
    }

    #[test]
    fn unknown_identifier() {
        let err = parse::<f64>("foo(x)").unwrap_err();
        assert!(matches!(err, ParseError::UnknownIdentifier { offset: 0, .. }));
    }

    #[test]
    fn arity_error_on_comma() {
        let err = parse::<f64>("sin(x, 1)").unwrap_err();
        assert!(matches!(err, ParseError::Arity { .. }));
    }

    #[test]
    fn exponent_must_be_constant() {
        let err = parse::<f64>("x^x").unwrap_err();
        assert!(matches!(err, ParseError::NonConstantExponent { .. }));
    }

    #[test]
    fn negative_literal_power_precedence() {
        // -2^2 must be -(2^2), not (-2)^2
        let e: Expr<f64> = parse("-2^2").unwrap();
        assert_eq!(e.eval(0.0).unwrap(), -4.0);
        let e2: Expr<f64> = parse("(-2)^2").unwrap();
        assert_eq!(e2.eval(0.0).unwrap(), 4.0);
    }

    #[test]
    fn constant_exponent_folding() {
        let e: Expr<f64> = parse("x^(1+1)").unwrap();
        assert_eq!(e, Expr::Pow(Box::new(Expr::Var), Exponent::Int(2)));
        let e: Expr<f64> = parse("x^2^2").unwrap();
        assert_eq!(e, Expr::Pow(Box::new(Expr::Var), Exponent::Int(4)));
        let e: Expr<f64> = parse("x^1.5").unwrap();
        assert_eq!(e, Expr::Pow(Box::new(Expr::Var), Exponent::Real(1.5)));
    }

    #[test]
    fn scientific_notation_literals() {
        let e: Expr<f64> = parse("1e-3 + x").unwrap();
        assert_eq!(e.eval(0.0).unwrap(), 1e-3);
    }

    #[test]
    fn pi_constant() {
        let e: Expr<f64> = parse("sin(pi)").unwrap();
        assert!(e.eval(0.0).unwrap().abs() < 1e-15);
    }
}
