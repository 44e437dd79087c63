//! Concrete syntax for Weyl-algebra elements.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor factor*            juxtaposition = noncommutative product
//! factor := atom ('^' nat)*
//! atom   := int ['/' int] | 't' | 'd' | '(' expr ')'
//! ```
//!
//! `d` stands for ∂. Whitespace is insignificant.

use std::fmt;

use nodal_core::{GeneratorWord, Poly, Rational, Symbol, WeylOp};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rational(Rational),
    T,
    D,
    Sum(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
    Neg(Box<Expr>),
    Group(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
    pub note: Option<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        if let Some(note) = self.note {
            write!(f, "{note}; ")?;
        }
        write!(f, "expected {}, found {}", self.expected.join(" | "), self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Slash,
    T,
    D,
    Plus,
    Minus,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Slash => f.write_str("'/'"),
            Tok::T => f.write_str("'t'"),
            Tok::D => f.write_str("'d'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

const ATOM_START: &[&str] = &["number", "'t'", "'d'", "'('"];

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let tok = match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(d);
                    chars.next();
                    column += 1;
                }
                out.push(Spanned {
                    tok: Tok::Int(digits.parse().unwrap()),
                    line: l,
                    column: col,
                });
                continue;
            }
            '/' => Tok::Slash,
            't' => Tok::T,
            'd' => Tok::D,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError {
                    line: l,
                    column: col,
                    expected: ATOM_START.to_vec(),
                    found: format!("character {other:?}"),
                    note: Some("unknown symbol"),
                })
            }
        };
        chars.next();
        column += 1;
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str], note: Option<&'static str>) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            expected: expected.to_vec(),
            found: here.tok.to_string(),
            note,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Sum(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = Expr::Neg(Box::new(self.term()?));
                    acc = Expr::Sum(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Tok::Int(_) | Tok::T | Tok::D | Tok::LParen) {
            acc = Expr::Product(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            base = Expr::Power(Box::new(base), self.exponent()?);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let n = match self.peek().clone() {
            Tok::Int(n) => n,
            Tok::Minus => return Err(self.error(&["natural number"], Some("negative exponent"))),
            _ => return Err(self.error(&["natural number"], None)),
        };
        self.bump();
        if *self.peek() == Tok::Slash {
            return Err(self.error(&["'^'", "'+'", "'-'", "end of input"], Some("fractional exponent")));
        }
        u32::try_from(n).map_err(|_| self.error(&["exponent below 2^32"], Some("exponent too large")))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() != Tok::Slash {
                    return Ok(Expr::Rational(Rational::from_integer(n)));
                }
                self.bump();
                let Tok::Int(d) = self.peek().clone() else {
                    return Err(self.error(&["denominator"], None));
                };
                let value = Rational::new(n, d)
                    .map_err(|_| self.error(&["nonzero denominator"], Some("zero denominator")))?;
                self.bump();
                Ok(Expr::Rational(value))
            }
            Tok::T => {
                self.bump();
                Ok(Expr::T)
            }
            Tok::D => {
                self.bump();
                Ok(Expr::D)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["')'", "'+'", "'-'", "'^'", "number", "'t'", "'d'", "'('"], None));
                }
                self.bump();
                Ok(Expr::Group(Box::new(inner)))
            }
            _ => Err(self.error(ATOM_START, None)),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(
            &["'+'", "'-'", "'^'", "number", "'t'", "'d'", "'('", "end of input"],
            None,
        ));
    }
    Ok(e)
}

/// Parses an operator expression straight to normal form.
pub fn parse_operator(src: &str) -> Result<WeylOp, ParseError> {
    parse_expr(src).map(|e| e.to_operator())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyParseError {
    Syntax(ParseError),
    ContainsD,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyParseError::Syntax(e) => e.fmt(f),
            PolyParseError::ContainsD => f.write_str("'d' is not allowed in a polynomial argument"),
        }
    }
}

impl std::error::Error for PolyParseError {}

/// Parses a polynomial in `t`; any occurrence of `d` is rejected.
pub fn parse_poly(src: &str) -> Result<Poly, PolyParseError> {
    let e = parse_expr(src).map_err(PolyParseError::Syntax)?;
    if e.contains_d() {
        return Err(PolyParseError::ContainsD);
    }
    Ok(e.to_operator().coefficient_polys().remove(&0).unwrap_or_default())
}

impl Expr {
    pub fn contains_d(&self) -> bool {
        match self {
            Expr::D => true,
            Expr::Rational(_) | Expr::T => false,
            Expr::Sum(a, b) | Expr::Product(a, b) => a.contains_d() || b.contains_d(),
            Expr::Power(a, _) | Expr::Neg(a) | Expr::Group(a) => a.contains_d(),
        }
    }

    /// Evaluates in D_B with the closed-form product.
    pub fn to_operator(&self) -> WeylOp {
        match self {
            Expr::Rational(c) => WeylOp::scalar(c.clone()),
            Expr::T => WeylOp::t(),
            Expr::D => WeylOp::d(),
            Expr::Sum(a, b) => &a.to_operator() + &b.to_operator(),
            Expr::Product(a, b) => &a.to_operator() * &b.to_operator(),
            Expr::Power(a, n) => a.to_operator().pow(*n),
            Expr::Neg(a) => -a.to_operator(),
            Expr::Group(a) => a.to_operator(),
        }
    }

    /// Expands into a sum of generator words, or `None` past `max_words` words.
    pub fn to_words(&self, max_words: usize) -> Option<Vec<GeneratorWord>> {
        let words = match self {
            Expr::Rational(c) => vec![GeneratorWord::new(c.clone(), vec![])],
            Expr::T => vec![GeneratorWord::unit(vec![Symbol::T])],
            Expr::D => vec![GeneratorWord::unit(vec![Symbol::D])],
            Expr::Sum(a, b) => {
                let mut ws = a.to_words(max_words)?;
                ws.extend(b.to_words(max_words)?);
                ws
            }
            Expr::Product(a, b) => product_words(&a.to_words(max_words)?, &b.to_words(max_words)?, max_words)?,
            Expr::Power(a, n) => {
                let base = a.to_words(max_words)?;
                let mut acc = vec![GeneratorWord::unit(vec![])];
                for _ in 0..*n {
                    acc = product_words(&acc, &base, max_words)?;
                }
                acc
            }
            Expr::Neg(a) => a
                .to_words(max_words)?
                .into_iter()
                .map(|w| GeneratorWord::new(-w.scalar, w.symbols))
                .collect(),
            Expr::Group(a) => a.to_words(max_words)?,
        };
        (words.len() <= max_words).then_some(words)
    }
}

fn product_words(
    lhs: &[GeneratorWord],
    rhs: &[GeneratorWord],
    max_words: usize,
) -> Option<Vec<GeneratorWord>> {
    if lhs.len().saturating_mul(rhs.len()) > max_words {
        return None;
    }
    Some(
        lhs.iter()
            .flat_map(|a| rhs.iter().map(move |b| a.concat(b)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use nodal_core::weyl::rewrite::normalize_words;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn factored_operator_syntax() {
        let op = parse_operator("(t^2 - 1) d").unwrap();
        let f = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(op, WeylOp::d().left_mul_poly(&f));
    }

    #[test]
    fn juxtaposition_is_noncommutative() {
        assert_eq!(
            parse_operator("d t").unwrap(),
            WeylOp::from_terms([((1, 1), q(1, 1)), ((0, 0), q(1, 1))])
        );
        assert_eq!(parse_operator("t d").unwrap(), WeylOp::monomial(q(1, 1), 1, 1));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_operator("1/2 d^2").unwrap(), WeylOp::monomial(q(1, 2), 0, 2));
        assert_eq!(parse_operator("-3/6").unwrap(), WeylOp::scalar(q(-1, 2)));
        assert_eq!(parse_operator(" 2 3 ").unwrap(), WeylOp::scalar(q(6, 1)));
    }

    #[test]
    fn ast_shape() {
        let e = parse_expr("-t^2 + d").unwrap();
        assert_eq!(
            e,
            Expr::Sum(
                Box::new(Expr::Neg(Box::new(Expr::Power(Box::new(Expr::T), 2)))),
                Box::new(Expr::D)
            )
        );
    }

    #[test]
    fn negative_exponent_rejected() {
        let err = parse_expr("t^-1").unwrap_err();
        assert_eq!(err.note, Some("negative exponent"));
        assert_eq!((err.line, err.column), (1, 3));
    }

    #[test]
    fn fractional_exponent_rejected() {
        let err = parse_expr("t^1/2").unwrap_err();
        assert_eq!(err.note, Some("fractional exponent"));
    }

    #[test]
    fn syntax_errors_carry_position_and_expectations() {
        let err = parse_expr("t +\n  )").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert_eq!(err.expected, ATOM_START.to_vec());
        assert!(err.to_string().starts_with("2:3: expected number"));
        let err = parse_expr("(t - 1").unwrap_err();
        assert!(err.expected.contains(&"')'"));
        assert_eq!(err.found, "end of input");
        assert!(parse_expr("x").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("1/0").is_err());
    }

    #[test]
    fn polynomials_reject_d() {
        assert_eq!(parse_poly("(t^2-1)^2").unwrap(), Poly::from_ints(&[1, 0, -2, 0, 1]));
        assert_eq!(parse_poly("d t - t d"), Err(PolyParseError::ContainsD));
    }

    #[test]
    fn word_lowering_agrees_with_direct_lowering() {
        for src in ["d^2 t^2", "(t^2 - 1) d^2 (t + d)", "-(d t - t d)^3 + 1/3 t d"] {
            let e = parse_expr(src).unwrap();
            let words = e.to_words(10_000).unwrap();
            assert_eq!(normalize_words(words), e.to_operator(), "{src}");
        }
        assert!(parse_expr("(t + d)^20").unwrap().to_words(1000).is_none());
    }
}
