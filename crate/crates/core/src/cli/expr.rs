//! The polynomial expression grammar accepted by `--charpoly`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | identifier | "(" expr ")"
//! ```
//!
//! Identifiers must be the polynomial variable or one of the declared
//! symbols. Whitespace is ignored.

use thiserror::Error;

use crate::algebra::{Field, MPoly, Monomial, MultiRat, Rational, Symbols, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("at column {col}: {message}")]
    Syntax { col: usize, message: String },
    #[error("unknown symbol {name:?} at column {col}")]
    UnknownSymbol { name: String, col: usize },
    #[error("symbol {0:?} is declared twice or clashes with the variable")]
    DuplicateSymbol(String),
    #[error("expected a polynomial with rational coefficients, found symbols")]
    NotRational,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(u64),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value = digits.parse().map_err(|_| ExprError::Syntax {
                col,
                message: format!("integer {digits} is too large"),
            })?;
            out.push((Token::Int(value), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^()".contains(c) {
            out.push((Token::Op(c), col));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            col: self.col(),
            message: message.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ExprError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, ExprError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek() {
            Some(&Token::Int(e)) => {
                let Ok(e) = u32::try_from(e) else {
                    return self.error("exponent is too large");
                };
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => self.error("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<MPoly, ExprError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(Rational::from_integer(n.into())))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match self.names.iter().position(|s| *s == name) {
                    Some(i) => Ok(MPoly::var(i)),
                    None => Err(ExprError::UnknownSymbol { name, col }),
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(Token::Op(c)) => self.error(format!("unexpected {c:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `var` whose coefficients are
/// polynomials in `symbols`.
pub fn parse_poly(
    text: &str,
    var: &str,
    symbols: &Symbols,
) -> Result<UniPoly<MultiRat>, ExprError> {
    let mut names: Vec<String> = symbols.to_vec();
    for (i, s) in names.iter().enumerate() {
        if s == var || names[..i].contains(s) {
            return Err(ExprError::DuplicateSymbol(s.clone()));
        }
    }
    names.push(var.to_string());
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.chars().count() + 1,
        names: &names,
    };
    let poly = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }

    let x = symbols.len();
    let degree = poly.terms().map(|(m, _)| m.exponent(x)).max().unwrap_or(0) as usize;
    let mut coeffs = vec![MPoly::zero(); degree + 1];
    for (m, c) in poly.terms() {
        let mut exps = m.exponents().to_vec();
        exps.truncate(x);
        let k = m.exponent(x) as usize;
        coeffs[k] = coeffs[k].add(&MPoly::term(Monomial::new(exps), c.clone()));
    }
    Ok(UniPoly::new(
        coeffs
            .into_iter()
            .map(|c| MultiRat::from_poly(c, Some(symbols.clone())))
            .collect(),
    ))
}

/// Parses a polynomial in `var` with rational coefficients.
pub fn parse_rational_poly(text: &str, var: &str) -> Result<UniPoly<Rational>, ExprError> {
    let p = parse_poly(text, var, &Symbols::from(Vec::<String>::new()))?;
    p.try_map(|c| c.to_rational().ok_or(ExprError::NotRational))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::symbols;

    #[test]
    fn fibonacci_charpoly() {
        let p = parse_rational_poly("x^2 - x - 1", "x").unwrap();
        assert_eq!(p, UniPoly::from_ints(&[-1, -1, 1]));
    }

    #[test]
    fn precedence_and_parentheses() {
        let p = parse_rational_poly("-(x - 1)^2 * 3 + 2*x^3", "x").unwrap();
        assert_eq!(p, UniPoly::from_ints(&[-3, 6, -3, 2]));
        assert_eq!(
            parse_rational_poly("--x", "x").unwrap(),
            UniPoly::from_ints(&[0, 1])
        );
    }

    #[test]
    fn symbolic_coefficients() {
        let names = symbols(&["L", "s"]);
        let p = parse_poly("x^2 - L*x + s", "x", &names).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.coeff(1).to_string(), "-L");
        assert_eq!(p.coeff(0).to_string(), "s");
        assert!(p.coeff(2).is_one());
        let q = parse_poly("(x - L)*(x + s)", "x", &names).unwrap();
        assert_eq!(q.coeff(1).to_string(), "-L + s");
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_rational_poly("x^2 - y", "x").unwrap_err(),
            ExprError::UnknownSymbol {
                name: "y".into(),
                col: 7
            }
        );
        assert!(matches!(
            parse_rational_poly("x^2 -", "x").unwrap_err(),
            ExprError::Syntax { col: 6, .. }
        ));
        assert!(matches!(
            parse_rational_poly("(x + 1", "x").unwrap_err(),
            ExprError::Syntax { .. }
        ));
        assert!(matches!(
            parse_rational_poly("x $ 1", "x").unwrap_err(),
            ExprError::Syntax { col: 3, .. }
        ));
        assert!(matches!(
            parse_rational_poly("x^y", "x").unwrap_err(),
            ExprError::Syntax { .. }
        ));
        assert_eq!(
            parse_poly("x", "x", &symbols(&["x"])).unwrap_err(),
            ExprError::DuplicateSymbol("x".into())
        );
        assert_eq!(
            parse_rational_poly("x x", "x").unwrap_err(),
            ExprError::Syntax {
                col: 3,
                message: "unexpected trailing input".into()
            }
        );
    }
}
