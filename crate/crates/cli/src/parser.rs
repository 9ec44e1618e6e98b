//! Tokenizer, recursive-descent parser and canonical printer for element
//! expressions.
//!
//! Precedence, loosest first: `+ -`, then `* /` and juxtaposition, then
//! unary `-`, then `&` (wedge), then `^`. All binary operators are
//! left-associative.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    W(usize),
    P(usize),
    Q(usize),
    EPlus,
    EMinus,
    Parity,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::W(j) => write!(f, "w{j}"),
            Generator::P(j) => write!(f, "p{j}"),
            Generator::Q(j) => write!(f, "q{j}"),
            Generator::EPlus => f.write_str("E+"),
            Generator::EMinus => f.write_str("E-"),
            Generator::Parity => f.write_str("P"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    /// `[a,b]` = ab − ba
    Commutator,
    /// `[a,b]+` = ab + ba
    Anticommutator,
    /// `[a,b]s`, graded by the algebra's super-parity
    Super,
    /// `{a,b}`, the Poisson bracket of symbols
    Poisson,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    I,
    Lambda,
    Gen(Generator),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Bracket(BracketKind, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    I,
    Lambda,
    Gen(Generator),
    Plus,
    Minus,
    Star,
    Slash,
    Amp,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    /// The `s` suffix of a super bracket.
    SuperSuffix,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn index_after(src: &str, start: usize, name: char) -> Result<(usize, usize), ParseError> {
    let digits: String = src[start..].chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        return err(start, format!("expected an index after '{name}'"));
    }
    let idx = digits.parse::<usize>().map_err(|_| ParseError { pos: start, message: "index too large".into() })?;
    Ok((idx, start + digits.len()))
}

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out: Vec<Token> = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '&' => Some(Tok::Amp),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            'i' => Some(Tok::I),
            'L' => Some(Tok::Lambda),
            'P' => Some(Tok::Gen(Generator::Parity)),
            _ => None,
        };
        let (tok, end) = if let Some(t) = simple {
            (t, pos + 1)
        } else if c.is_ascii_digit() {
            let len = src[pos..].chars().take_while(|c| c.is_ascii_digit()).count();
            let v: BigInt = src[pos..pos + len].parse().expect("digits");
            (Tok::Int(v), pos + len)
        } else if c == 's' && out.last().is_some_and(|t| t.tok == Tok::RBrack && t.end == pos) {
            (Tok::SuperSuffix, pos + 1)
        } else if c == 'w' || c == 'p' || c == 'q' {
            let (j, end) = index_after(src, pos + 1, c)?;
            let g = match c {
                'w' => Generator::W(j),
                'p' => Generator::P(j),
                _ => Generator::Q(j),
            };
            (Tok::Gen(g), end)
        } else if c == 'E' {
            match bytes.get(pos + 1) {
                Some(b'+') => (Tok::Gen(Generator::EPlus), pos + 2),
                Some(b'-') => (Tok::Gen(Generator::EMinus), pos + 2),
                _ => return err(pos + 1, "expected '+' or '-' after 'E'"),
            }
        } else {
            let ch = src[pos..].chars().next().expect("in bounds");
            return err(pos, format!("unexpected character '{ch}'"));
        };
        out.push(Token { tok, start, end });
        pos = end;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.len, |t| t.start)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t.tok == tok => Ok(t),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::I | Tok::Lambda | Tok::Gen(_) | Tok::LParen | Tok::LBrack | Tok::LBrace)
        )
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ if self.starts_atom() => lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?)),
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.wedge()
    }

    fn wedge(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            lhs = Expr::Wedge(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.pos();
            match self.bump().map(|t| t.tok) {
                Some(Tok::Int(e)) => {
                    let e = u32::try_from(e).map_err(|_| ParseError { pos, message: "exponent too large".into() })?;
                    base = Expr::Pow(Box::new(base), e);
                }
                _ => return err(pos, "expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let Some(t) = self.bump() else {
            return err(pos, "unexpected end of input");
        };
        match t.tok {
            Tok::Int(v) => Ok(Expr::Int(v)),
            Tok::I => Ok(Expr::I),
            Tok::Lambda => Ok(Expr::Lambda),
            Tok::Gen(g) => Ok(Expr::Gen(g)),
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LBrack => {
                let a = self.sum()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.sum()?;
                let close = self.expect(Tok::RBrack, "']'")?;
                let kind = match self.tokens.get(self.at) {
                    Some(n) if n.tok == Tok::Plus && n.start == close.end => {
                        self.bump();
                        BracketKind::Anticommutator
                    }
                    Some(n) if n.tok == Tok::SuperSuffix => {
                        self.bump();
                        BracketKind::Super
                    }
                    _ => BracketKind::Commutator,
                };
                Ok(Expr::Bracket(kind, Box::new(a), Box::new(b)))
            }
            Tok::LBrace => {
                let a = self.sum()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.sum()?;
                self.expect(Tok::RBrace, "'}'")?;
                Ok(Expr::Bracket(BracketKind::Poisson, Box::new(a), Box::new(b)))
            }
            _ => err(pos, "expected a number, generator, '(' or a bracket"),
        }
    }
}

/// Parses a complete expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return err(0, "empty expression");
    }
    let mut p = Parser { tokens, at: 0, len: text.len() };
    let e = p.sum()?;
    if p.at < p.tokens.len() {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Binding strength of the outermost operator.
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Wedge(..) => 4,
            Expr::Pow(..) => 5,
            _ => 6,
        }
    }
}

struct Wrapped<'a>(&'a Expr, u8);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.level() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::I => f.write_str("i"),
            Expr::Lambda => f.write_str("L"),
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Neg(a) => write!(f, "-{}", Wrapped(a, 3)),
            Expr::Add(a, b) => write!(f, "{} + {}", Wrapped(a, 1), Wrapped(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Wrapped(a, 1), Wrapped(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Wrapped(a, 2), Wrapped(b, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", Wrapped(a, 2), Wrapped(b, 3)),
            Expr::Wedge(a, b) => write!(f, "{}&{}", Wrapped(a, 4), Wrapped(b, 5)),
            Expr::Pow(a, e) => write!(f, "{}^{e}", Wrapped(a, 6)),
            Expr::Bracket(kind, a, b) => match kind {
                BracketKind::Commutator => write!(f, "[{a},{b}]"),
                BracketKind::Anticommutator => write!(f, "[{a},{b}]+"),
                BracketKind::Super => write!(f, "[{a},{b}]s"),
                BracketKind::Poisson => write!(f, "{{{a},{b}}}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(s: &str) {
        let e = parse(s).unwrap();
        assert_eq!(parse(&e.to_string()).unwrap(), e, "{s} printed as {e}");
    }

    #[test]
    fn precedence() {
        let e = parse("1 + 2*w1^2").unwrap();
        assert_eq!(e.to_string(), "1 + 2*w1^2");
        assert!(matches!(e, Expr::Add(..)));
        assert!(matches!(parse("-w1^2").unwrap(), Expr::Neg(_)));
        assert!(matches!(parse("2 p1 q1").unwrap(), Expr::Mul(..)));
        assert_eq!(parse("a").unwrap_err().pos, 0);
        assert_eq!(parse("w1 - w2 - w3").unwrap().to_string(), "w1 - w2 - w3");
        assert_eq!(parse("w1 - (w2 - w3)").unwrap().to_string(), "w1 - (w2 - w3)");
    }

    #[test]
    fn brackets() {
        assert!(matches!(parse("[E+,E-] + 1/4").unwrap(), Expr::Add(..)));
        assert!(matches!(parse("[w1,w1]+").unwrap(), Expr::Bracket(BracketKind::Anticommutator, ..)));
        assert!(matches!(parse("[w1,w1]+ + 1").unwrap(), Expr::Add(..)));
        assert!(matches!(parse("[p1,q1]s").unwrap(), Expr::Bracket(BracketKind::Super, ..)));
        assert!(matches!(parse("{p1,q1}").unwrap(), Expr::Bracket(BracketKind::Poisson, ..)));
    }

    #[test]
    fn round_trips() {
        for s in [
            "(1/2 + 1/2*i)*w1",
            "p1*q1 - q1*p1",
            "-(w1 + w2)^3",
            "(-1 + 2*i) - 3*w1&q1",
            "[[E+,E-]s,w1]+ - {p1,q1}/2",
            "w1&w2&p1^2&q1",
            "--w1",
            "2*(w1*w2)",
            "(w1&w2)&w3",
            "w1&(w2&w3)",
            "(w1^2)^3",
        ] {
            round_trip(s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("w1 + ").unwrap_err().pos, 5);
        assert_eq!(parse("w1 + x").unwrap_err().pos, 5);
        assert_eq!(parse("E*").unwrap_err().pos, 1);
        assert_eq!(parse("[w1 w2]").unwrap_err().pos, 6);
        assert_eq!(parse("w1)").unwrap_err().pos, 2);
        assert_eq!(parse("w^2").unwrap_err().pos, 1);
        assert!(parse("").is_err());
    }
}
