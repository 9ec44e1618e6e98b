//! Expansion of symbols into ordered words in the generators, used to push
//! elements through homomorphisms and representations that are only
//! specified on generators.
//!
//! The expansion uses the closed-form Weyl ordering at t = 1:
//! p^a q^b = Σ_k a! b! / (k! (a−k)! (b−k)! 2^k) · q^{⋆(b−k)} ⋆ p^{⋆(a−k)},
//! and ω^I ⊗ F = ω_{i₁} ⋆ ⋯ ⋆ ω_{i_r} ⋆ F for increasing i₁ < ⋯ < i_r. It
//! never calls the star product, so maps built on it are independent checks
//! of it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::Algebra;
use crate::cw::{CwElement, CwMonomial};
use crate::error::{Error, Result};
use crate::scalar::{GaussRat, Scalar};

/// A generator of C(n,2k), 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    W(usize),
    P(usize),
    Q(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::W(i) => write!(f, "w{i}"),
            Gen::P(j) => write!(f, "p{j}"),
            Gen::Q(j) => write!(f, "q{j}"),
        }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

/// Coefficients c_k of p^a q^b = Σ_k c_k q^{⋆(b−k)} ⋆ p^{⋆(a−k)}.
pub fn weyl_order_coeffs(a: u32, b: u32) -> Vec<(u32, BigRational)> {
    (0..=a.min(b))
        .map(|k| {
            let num = factorial(a) * factorial(b);
            let den = factorial(k) * factorial(a - k) * factorial(b - k) * (BigInt::one() << k as usize);
            let g = num.gcd(&den);
            (k, BigRational::new(num / &g, den / g))
        })
        .collect()
}

/// A word with its coefficient; the word is read left to right as a star
/// product.
pub type Word = (Scalar, Vec<Gen>);

/// Words whose sum is the monomial `m` (coefficient 1).
pub fn monomial_words(m: &CwMonomial) -> Vec<(GaussRat, Vec<Gen>)> {
    let mut words: Vec<(GaussRat, Vec<Gen>)> = vec![(GaussRat::one(), m.cliff_indices().into_iter().map(Gen::W).collect())];
    for j in 0..m.k() {
        let (a, b) = (m.p[j], m.q[j]);
        if a == 0 && b == 0 {
            continue;
        }
        let pieces = weyl_order_coeffs(a, b);
        let mut next = Vec::with_capacity(words.len() * pieces.len());
        for (c, w) in &words {
            for (k, ck) in &pieces {
                let mut w2 = w.clone();
                w2.extend(std::iter::repeat_n(Gen::Q(j + 1), (b - k) as usize));
                w2.extend(std::iter::repeat_n(Gen::P(j + 1), (a - k) as usize));
                next.push((c * &GaussRat::from(ck.clone()), w2));
            }
        }
        words = next;
    }
    words
}

/// Word expansion of an element. Requires t = 1.
pub fn element_words(e: &CwElement) -> Result<Vec<Word>> {
    if !e.signature().t.is_one() {
        return Err(Error::InvalidParameter(format!(
            "word expansion needs t = 1, got t = {}",
            e.signature().t
        )));
    }
    let mut out = Vec::new();
    for (m, c) in e.terms() {
        for (k, w) in monomial_words(m) {
            out.push((c.scale(&k), w));
        }
    }
    Ok(out)
}

/// Evaluates the algebra homomorphism determined by generator images.
pub fn eval_hom<B: Algebra>(e: &CwElement, target: &B, image: impl Fn(Gen) -> B::Elem) -> Result<B::Elem> {
    let images = ImageCache::new(image);
    let mut acc = target.zero();
    for (c, word) in element_words(e)? {
        let mut prod = target.one();
        for g in word {
            prod = target.mul(&prod, &images.get(g));
        }
        acc = target.add(&acc, &target.scale(&c, &prod));
    }
    Ok(acc)
}

struct ImageCache<E, F: Fn(Gen) -> E> {
    f: F,
    cache: std::cell::RefCell<std::collections::HashMap<Gen, E>>,
}

impl<E: Clone, F: Fn(Gen) -> E> ImageCache<E, F> {
    fn new(f: F) -> Self {
        ImageCache { f, cache: Default::default() }
    }
    fn get(&self, g: Gen) -> E {
        if let Some(e) = self.cache.borrow().get(&g) {
            return e.clone();
        }
        let e = (self.f)(g);
        self.cache.borrow_mut().insert(g, e.clone());
        e
    }
}

/// Generators of a signature, in the order ω₁…ω_n, p₁, q₁, …, p_k, q_k.
pub fn generators(n_fermi: usize, k: usize) -> Vec<Gen> {
    let mut out: Vec<Gen> = (1..=n_fermi).map(Gen::W).collect();
    for j in 1..=k {
        out.push(Gen::P(j));
        out.push(Gen::Q(j));
    }
    out
}

pub fn gen_element(sig: &crate::cw::Signature, g: Gen) -> Result<CwElement> {
    match g {
        Gen::W(i) => CwElement::omega(sig, i),
        Gen::P(j) => CwElement::p(sig, j),
        Gen::Q(j) => CwElement::q(sig, j),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CwAlgebra;
    use crate::cw::Signature;

    #[test]
    fn ordering_coefficients() {
        let c = weyl_order_coeffs(1, 1);
        assert_eq!(c[0].1, BigRational::one());
        assert_eq!(c[1].1, BigRational::new(1.into(), 2.into()));
        let c = weyl_order_coeffs(2, 2);
        // 1, 2, 1/2
        assert_eq!(c.iter().map(|x| x.1.clone()).collect::<Vec<_>>(), vec![
            BigRational::one(),
            BigRational::from_integer(2.into()),
            BigRational::new(1.into(), 2.into())
        ]);
    }

    #[test]
    fn identity_hom_reproduces_elements() {
        let sig = Signature::new(2, 2);
        let alg = CwAlgebra::new(sig.clone());
        let m = CwMonomial::new(0b11, &[2, 1], &[1, 3]);
        let e = CwElement::monomial(&sig, m, Scalar::from_int(3));
        let back = eval_hom(&e, &alg, |g| gen_element(&sig, g).unwrap()).unwrap();
        assert_eq!(back, e);
    }
}
