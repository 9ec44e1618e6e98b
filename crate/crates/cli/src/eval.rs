//! Evaluation of parsed expressions in C(n,2k) or A_Λ(n).

use std::fmt;
use std::str::FromStr;

use cliffweyl::deform::ore::{ore_product, ore_super_bracket, OreAlgebra, OreElement, OreMonomial};
use cliffweyl::star::{anticommutator, lie_bracket, omega_product, poisson, star, star_pow, super_bracket, wedge};
use cliffweyl::{CwElement, CwMonomial, GaussRat, Scalar, Signature};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::parser::{parse, BracketKind, Expr, Generator, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown generator {generator} for {algebra}")]
    UnknownGenerator { generator: Generator, algebra: AlgebraSpec },
    #[error("{0} is not available in {1}")]
    Unsupported(&'static str, AlgebraSpec),
    #[error("division by a non-constant or zero element")]
    BadDivisor,
    #[error(transparent)]
    Algebra(#[from] cliffweyl::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad algebra '{0}': expected cw:<n>,<2k> or ore:<n>")]
pub struct AlgebraSpecError(pub String);

/// `cw:<n>,<2k>` or `ore:<n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraSpec {
    /// C(n_fermi, 2k)
    Cw { n_fermi: usize, k: usize },
    /// A_Λ(n)
    Ore { n: usize },
}

impl AlgebraSpec {
    pub fn signature(&self) -> Option<Signature> {
        match *self {
            AlgebraSpec::Cw { n_fermi, k } => Some(Signature::new(n_fermi, k)),
            AlgebraSpec::Ore { .. } => None,
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Cw { n_fermi, k } => write!(f, "cw:{n_fermi},{}", 2 * k),
            AlgebraSpec::Ore { n } => write!(f, "ore:{n}"),
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = AlgebraSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraSpecError(s.to_string());
        if let Some(rest) = s.strip_prefix("cw:") {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            let n_fermi: usize = a.trim().parse().map_err(|_| bad())?;
            let two_k: usize = b.trim().parse().map_err(|_| bad())?;
            if two_k % 2 == 1 || n_fermi > 30 {
                return Err(bad());
            }
            Ok(AlgebraSpec::Cw { n_fermi, k: two_k / 2 })
        } else if let Some(rest) = s.strip_prefix("ore:") {
            let n: usize = rest.trim().parse().map_err(|_| bad())?;
            if n > 14 {
                return Err(bad());
            }
            Ok(AlgebraSpec::Ore { n })
        } else {
            Err(bad())
        }
    }
}

/// An evaluated element.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Cw(CwElement),
    Ore(OreElement),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Cw(e) => write!(f, "{e}"),
            Value::Ore(e) => write!(f, "{e}"),
        }
    }
}

type EResult<T> = Result<T, EvalError>;

fn cw_constant(sig: &Signature, c: Scalar) -> CwElement {
    CwElement::scalar(sig, c)
}

fn cw_generator(spec: AlgebraSpec, sig: &Signature, g: Generator) -> EResult<CwElement> {
    let unknown = || EvalError::UnknownGenerator { generator: g, algebra: spec };
    let in_range = |j: usize, max: usize| j >= 1 && j <= max;
    match g {
        Generator::W(j) if in_range(j, sig.n_fermi) => Ok(CwElement::omega(sig, j)?),
        Generator::P(j) if in_range(j, sig.n_bose_pairs) => Ok(CwElement::p(sig, j)?),
        Generator::Q(j) if in_range(j, sig.n_bose_pairs) => Ok(CwElement::q(sig, j)?),
        // the parity operator of the spin module, P = i^{−m} ω₁⋯ω_{2m}
        Generator::Parity if sig.n_bose_pairs == 0 && sig.n_fermi.is_multiple_of(2) => {
            let m = sig.n_fermi / 2;
            let v = omega_product(sig, 1..=sig.n_fermi)?;
            Ok(v.scale(&Scalar::constant(GaussRat::i_pow(-(m as i64)))))
        }
        _ => Err(unknown()),
    }
}

fn ore_generator(spec: AlgebraSpec, n: usize, g: Generator) -> EResult<OreElement> {
    match g {
        Generator::W(j) if j >= 1 && j <= 2 * n + 1 => Ok(OreElement::omega(n, j)?),
        Generator::EPlus => Ok(OreElement::e_plus(n)),
        Generator::EMinus => Ok(OreElement::e_minus(n)),
        Generator::Parity => Ok(OreElement::parity_element(n)),
        _ => Err(EvalError::UnknownGenerator { generator: g, algebra: spec }),
    }
}

/// The value of a Λ-free constant element, if it is one.
fn cw_as_constant(e: &CwElement) -> Option<GaussRat> {
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (None, _) => Some(GaussRat::zero()),
        (Some((m, c)), None) if *m == CwMonomial::unit(e.signature().n_bose_pairs) => c.as_constant(),
        _ => None,
    }
}

fn ore_as_constant(e: &OreElement) -> Option<GaussRat> {
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (None, _) => Some(GaussRat::zero()),
        (Some((m, c)), None) if *m == OreMonomial::one() => Some(c.clone()),
        _ => None,
    }
}

fn eval_cw(spec: AlgebraSpec, sig: &Signature, e: &Expr) -> EResult<CwElement> {
    let rec = |x: &Expr| eval_cw(spec, sig, x);
    Ok(match e {
        Expr::Int(v) => cw_constant(sig, Scalar::constant(GaussRat::from(num_rational::BigRational::from_integer(v.clone())))),
        Expr::I => cw_constant(sig, Scalar::i()),
        Expr::Lambda => cw_constant(sig, Scalar::lambda()),
        Expr::Gen(g) => cw_generator(spec, sig, *g)?,
        Expr::Neg(a) => rec(a)?.neg(),
        Expr::Add(a, b) => rec(a)?.add(&rec(b)?)?,
        Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?)?,
        Expr::Mul(a, b) => star(&rec(a)?, &rec(b)?)?,
        Expr::Div(a, b) => {
            let d = cw_as_constant(&rec(b)?).and_then(|c| c.inv()).ok_or(EvalError::BadDivisor)?;
            rec(a)?.scale(&Scalar::constant(d))
        }
        Expr::Wedge(a, b) => wedge(&rec(a)?, &rec(b)?)?,
        Expr::Pow(a, k) => star_pow(&rec(a)?, *k),
        Expr::Bracket(kind, a, b) => {
            let (x, y) = (rec(a)?, rec(b)?);
            match kind {
                BracketKind::Commutator => lie_bracket(&x, &y)?,
                BracketKind::Anticommutator => anticommutator(&x, &y)?,
                BracketKind::Super => super_bracket(&x, &y)?,
                BracketKind::Poisson => poisson(&x, &y)?,
            }
        }
    })
}

fn eval_ore(spec: AlgebraSpec, n: usize, e: &Expr) -> EResult<OreElement> {
    let rec = |x: &Expr| eval_ore(spec, n, x);
    Ok(match e {
        Expr::Int(v) => OreElement::constant(n, GaussRat::from(num_rational::BigRational::from_integer(v.clone()))),
        Expr::I => OreElement::constant(n, GaussRat::i()),
        Expr::Lambda => OreElement::lambda(n),
        Expr::Gen(g) => ore_generator(spec, n, *g)?,
        Expr::Neg(a) => rec(a)?.neg(),
        Expr::Add(a, b) => rec(a)?.add(&rec(b)?)?,
        Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?)?,
        Expr::Mul(a, b) => ore_product(&rec(a)?, &rec(b)?)?,
        Expr::Div(a, b) => {
            let d = ore_as_constant(&rec(b)?).and_then(|c| c.inv()).ok_or(EvalError::BadDivisor)?;
            rec(a)?.scale(&d)
        }
        Expr::Wedge(..) => return Err(EvalError::Unsupported("the wedge product '&'", spec)),
        Expr::Pow(a, k) => {
            let base = rec(a)?;
            let mut out = OreElement::one(n);
            for _ in 0..*k {
                out = ore_product(&out, &base)?;
            }
            out
        }
        Expr::Bracket(kind, a, b) => {
            let (x, y) = (rec(a)?, rec(b)?);
            match kind {
                BracketKind::Commutator => ore_product(&x, &y)?.sub(&ore_product(&y, &x)?)?,
                BracketKind::Anticommutator => ore_product(&x, &y)?.add(&ore_product(&y, &x)?)?,
                BracketKind::Super => ore_super_bracket(&OreAlgebra::generic(n), &x, &y)?,
                BracketKind::Poisson => return Err(EvalError::Unsupported("the Poisson bracket", spec)),
            }
        }
    })
}

pub fn eval(spec: AlgebraSpec, e: &Expr) -> EResult<Value> {
    match spec {
        AlgebraSpec::Cw { .. } => {
            let sig = spec.signature().expect("cw algebra");
            Ok(Value::Cw(eval_cw(spec, &sig, e)?))
        }
        AlgebraSpec::Ore { n } => Ok(Value::Ore(eval_ore(spec, n, e)?)),
    }
}

/// Parses and evaluates.
pub fn eval_str(spec: AlgebraSpec, text: &str) -> EResult<Value> {
    eval(spec, &parse(text)?)
}

impl Value {
    pub fn is_one(&self) -> bool {
        match self {
            Value::Cw(e) => cw_as_constant(e).is_some_and(|c| c.is_one()),
            Value::Ore(e) => ore_as_constant(e).is_some_and(|c| c.is_one()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(n: usize, two_k: usize) -> AlgebraSpec {
        format!("cw:{n},{two_k}").parse().unwrap()
    }

    #[test]
    fn specs() {
        assert_eq!(cw(1, 2), AlgebraSpec::Cw { n_fermi: 1, k: 1 });
        assert_eq!("ore:2".parse::<AlgebraSpec>().unwrap().to_string(), "ore:2");
        assert!("cw:1,3".parse::<AlgebraSpec>().is_err());
        assert!("weyl:1".parse::<AlgebraSpec>().is_err());
    }

    #[test]
    fn canonical_commutation() {
        let v = eval_str(cw(0, 2), "p1*q1 - q1*p1").unwrap();
        assert!(v.is_one());
        assert_eq!(v.to_string(), "1");
    }

    #[test]
    fn ore_bracket() {
        let v = eval_str("ore:0".parse().unwrap(), "[E+,E-] + 1/4").unwrap();
        assert_eq!(v.to_string(), "w1*L");
        let p = eval_str("ore:0".parse().unwrap(), "L*P").unwrap();
        assert_eq!(v, p);
    }

    #[test]
    fn printed_elements_evaluate_back() {
        let spec = cw(1, 2);
        for s in ["(1/2 + 1/2*i)*w1", "w1*p1*q1 + 3*q1^2 - i", "{p1,q1} + [w1,w1]+", "(2 + L)*p1"] {
            let v = eval_str(spec, s).unwrap();
            assert_eq!(eval_str(spec, &v.to_string()).unwrap(), v, "{s} printed as {v}");
        }
        assert_eq!(eval_str(spec, "(1/2 + 1/2*i)*w1").unwrap().to_string(), "(1/2 + 1/2*i)*w1");
    }

    #[test]
    fn errors() {
        assert!(matches!(eval_str(cw(1, 2), "w2"), Err(EvalError::UnknownGenerator { .. })));
        assert!(matches!(eval_str(cw(1, 2), "E+"), Err(EvalError::UnknownGenerator { .. })));
        assert!(matches!(eval_str(cw(1, 2), "w1/p1"), Err(EvalError::BadDivisor)));
        assert!(matches!(eval_str(cw(1, 2), "w1/0"), Err(EvalError::BadDivisor)));
        assert!(matches!(eval_str("ore:0".parse().unwrap(), "w1&w1"), Err(EvalError::Unsupported(..))));
        assert!(matches!(eval_str(cw(1, 2), "[w1 + p1, q1]s"), Err(EvalError::Algebra(_))));
        assert!(matches!(eval_str(cw(1, 2), "w1 +"), Err(EvalError::Parse(_))));
    }

    #[test]
    fn parity_in_spin_algebras() {
        // P anticommutes with every ω and squares to 1
        let spec = cw(4, 0);
        assert!(eval_str(spec, "P*P").unwrap().is_one());
        assert_eq!(eval_str(spec, "[P,w3]+").unwrap(), eval_str(spec, "0").unwrap());
    }
}
