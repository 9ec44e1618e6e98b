//! Data model for C(n,2k): signatures, symbol monomials ω^I p^A q^B and
//! sparse elements, with the two Z₂ gradings.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{join_factors, join_terms, Scalar};

/// Largest supported number of Clifford generators (the bitset is a `u64`).
pub const MAX_FERMI: usize = 63;

/// Shape of C(n,2k) together with the star-product parameter t.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub n_fermi: usize,
    pub n_bose_pairs: usize,
    pub t: Scalar,
}

impl Signature {
    /// C(n,2k) with t = 1.
    ///
    /// # Panics
    /// If `n_fermi > MAX_FERMI`.
    pub fn new(n_fermi: usize, n_bose_pairs: usize) -> Self {
        assert!(n_fermi <= MAX_FERMI, "at most {MAX_FERMI} Clifford generators");
        Signature { n_fermi, n_bose_pairs, t: Scalar::one() }
    }

    pub fn with_t(mut self, t: Scalar) -> Self {
        self.t = t;
        self
    }

    pub fn is_pure_weyl(&self) -> bool {
        self.n_fermi == 0
    }

    pub fn is_pure_clifford(&self) -> bool {
        self.n_bose_pairs == 0
    }

    pub fn check_same(&self, other: &Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch { left: self.to_string(), right: other.to_string() })
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.n_fermi, 2 * self.n_bose_pairs)?;
        if !self.t.is_one() {
            write!(f, "[t={}]", self.t)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type Exponents = SmallVec<[u32; 2]>;

/// A basis symbol ω^I ⊗ p^A q^B. Bit `i` of `cliff` stands for ω_{i+1}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CwMonomial {
    pub cliff: u64,
    pub p: Exponents,
    pub q: Exponents,
}

impl CwMonomial {
    pub fn unit(k: usize) -> Self {
        CwMonomial { cliff: 0, p: SmallVec::from_elem(0, k), q: SmallVec::from_elem(0, k) }
    }

    pub fn new(cliff: u64, p: &[u32], q: &[u32]) -> Self {
        assert_eq!(p.len(), q.len(), "p and q exponent vectors differ in length");
        CwMonomial { cliff, p: SmallVec::from_slice(p), q: SmallVec::from_slice(q) }
    }

    /// ω_{i} for 1-based `i`.
    pub fn omega(k: usize, i: usize) -> Self {
        let mut m = CwMonomial::unit(k);
        m.cliff = 1 << (i - 1);
        m
    }

    pub fn cliff_degree(&self) -> u32 {
        self.cliff.count_ones()
    }

    pub fn weyl_degree(&self) -> u32 {
        self.p.iter().chain(self.q.iter()).sum()
    }

    pub fn z_degree(&self) -> u32 {
        self.cliff_degree() + self.weyl_degree()
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.z_degree() as u8, self.weyl_degree() as u8)
    }

    /// 1-based indices of the Clifford generators present, increasing.
    pub fn cliff_indices(&self) -> Vec<usize> {
        bits(self.cliff).map(|b| b + 1).collect()
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    pub fn fits(&self, sig: &Signature) -> bool {
        self.p.len() == sig.n_bose_pairs
            && self.q.len() == sig.n_bose_pairs
            && (sig.n_fermi == 64 || self.cliff >> sig.n_fermi == 0)
    }

    /// The Weyl part with the Clifford part dropped.
    pub fn weyl_part(&self) -> CwMonomial {
        CwMonomial { cliff: 0, p: self.p.clone(), q: self.q.clone() }
    }

    fn render(&self) -> String {
        let mut parts: Vec<String> = self.cliff_indices().iter().map(|i| format!("w{i}")).collect();
        for (j, (&a, &b)) in self.p.iter().zip(self.q.iter()).enumerate() {
            for (name, e) in [("p", a), ("q", b)] {
                match e {
                    0 => {}
                    1 => parts.push(format!("{name}{}", j + 1)),
                    _ => parts.push(format!("{name}{}^{e}", j + 1)),
                }
            }
        }
        parts.join("&")
    }
}

/// Iterates the set bit positions of `x`, lowest first.
pub(crate) fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(b)
        }
    })
}

impl Ord for CwMonomial {
    /// Graded by Z-degree, then Clifford index lists lexicographically
    /// (ω₁ω₂ < ω₁ω₃ < ω₂ω₃), then the p and q exponents.
    fn cmp(&self, other: &Self) -> Ordering {
        self.z_degree()
            .cmp(&other.z_degree())
            .then_with(|| other.cliff.reverse_bits().cmp(&self.cliff.reverse_bits()))
            .then_with(|| other.p.cmp(&self.p))
            .then_with(|| other.q.cmp(&self.q))
    }
}

impl PartialOrd for CwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.render();
        f.write_str(if r.is_empty() { "1" } else { &r })
    }
}

/// The Z₂×Z₂-degree (Δ₁, Δ₂): Δ₁ is the total Z-degree mod 2, Δ₂ the Weyl
/// degree mod 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDegree {
    pub delta1: u8,
    pub delta2: u8,
}

impl BiDegree {
    pub fn new(delta1: u8, delta2: u8) -> Self {
        BiDegree { delta1: delta1 & 1, delta2: delta2 & 1 }
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.delta1 ^ o.delta1, self.delta2 ^ o.delta2)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.delta1, self.delta2)
    }
}

/// Sparse combination of symbol monomials over [`Scalar`].
#[derive(Clone, PartialEq, Eq)]
pub struct CwElement {
    sig: Arc<Signature>,
    terms: BTreeMap<CwMonomial, Scalar>,
}

impl CwElement {
    pub fn zero(sig: &Signature) -> Self {
        CwElement { sig: Arc::new(sig.clone()), terms: BTreeMap::new() }
    }

    pub(crate) fn zero_shared(sig: &Arc<Signature>) -> Self {
        CwElement { sig: Arc::clone(sig), terms: BTreeMap::new() }
    }

    pub fn scalar(sig: &Signature, c: Scalar) -> Self {
        CwElement::monomial(sig, CwMonomial::unit(sig.n_bose_pairs), c)
    }

    pub fn one(sig: &Signature) -> Self {
        CwElement::scalar(sig, Scalar::one())
    }

    /// # Panics
    /// If `m` does not fit `sig`.
    pub fn monomial(sig: &Signature, m: CwMonomial, c: Scalar) -> Self {
        assert!(m.fits(sig), "monomial {m} does not fit {sig}");
        let mut e = CwElement::zero(sig);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    /// ω_i, 1-based.
    pub fn omega(sig: &Signature, i: usize) -> Result<Self> {
        if i == 0 || i > sig.n_fermi {
            return Err(Error::InvalidParameter(format!("w{i} is not a generator of {sig}")));
        }
        Ok(CwElement::monomial(sig, CwMonomial::omega(sig.n_bose_pairs, i), Scalar::one()))
    }

    /// p_j, 1-based.
    pub fn p(sig: &Signature, j: usize) -> Result<Self> {
        Self::bose(sig, j, true)
    }

    /// q_j, 1-based.
    pub fn q(sig: &Signature, j: usize) -> Result<Self> {
        Self::bose(sig, j, false)
    }

    fn bose(sig: &Signature, j: usize, is_p: bool) -> Result<Self> {
        let name = if is_p { "p" } else { "q" };
        if j == 0 || j > sig.n_bose_pairs {
            return Err(Error::InvalidParameter(format!("{name}{j} is not a generator of {sig}")));
        }
        let mut m = CwMonomial::unit(sig.n_bose_pairs);
        if is_p {
            m.p[j - 1] = 1;
        } else {
            m.q[j - 1] = 1;
        }
        Ok(CwElement::monomial(sig, m, Scalar::one()))
    }

    /// Builds an element from raw terms, possibly repeated or zero.
    pub fn from_terms(sig: &Signature, terms: impl IntoIterator<Item = (CwMonomial, Scalar)>) -> Self {
        let mut e = CwElement::zero(sig);
        for (m, c) in terms {
            assert!(m.fits(sig), "monomial {m} does not fit {sig}");
            e.add_term(m, &c);
        }
        e
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub(crate) fn shared_signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &CwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&CwMonomial::unit(self.sig.n_bose_pairs))
    }

    pub(crate) fn add_term(&mut self, m: CwMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn check_same(&self, other: &CwElement) -> Result<()> {
        if Arc::ptr_eq(&self.sig, &other.sig) {
            return Ok(());
        }
        self.sig.check_same(&other.sig)
    }

    pub fn add(&self, o: &CwElement) -> Result<CwElement> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &CwElement) -> Result<CwElement> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CwElement {
        CwElement {
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> CwElement {
        let mut out = CwElement::zero_shared(&self.sig);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn max_z_degree(&self) -> Option<u32> {
        self.terms.keys().map(CwMonomial::z_degree).max()
    }

    /// The common (Δ₁, Δ₂) of all terms; the zero element counts as (0,0).
    pub fn bidegree(&self) -> Option<BiDegree> {
        let mut it = self.terms.keys().map(CwMonomial::bidegree);
        let first = it.next().unwrap_or_default();
        it.all(|d| d == first).then_some(first)
    }

    /// Splits into parts grouped by `key`, keyed in increasing order.
    pub fn split_by<K: Ord>(&self, key: impl Fn(&CwMonomial) -> K) -> BTreeMap<K, CwElement> {
        let mut out: BTreeMap<K, CwElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(key(m))
                .or_insert_with(|| CwElement::zero_shared(&self.sig))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Replaces the signature (e.g. to change t) keeping the terms.
    pub fn with_signature(&self, sig: &Signature) -> Result<CwElement> {
        if sig.n_fermi != self.sig.n_fermi || sig.n_bose_pairs != self.sig.n_bose_pairs {
            return Err(Error::SignatureMismatch { left: self.sig.to_string(), right: sig.to_string() });
        }
        Ok(CwElement { sig: Arc::new(sig.clone()), terms: self.terms.clone() })
    }

    /// Coefficientwise map on the scalars.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> CwElement {
        let mut out = CwElement::zero_shared(&self.sig);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Coordinates over the Gaussian rationals, keyed by (monomial, Λ-power).
    pub fn coeff_vector(&self) -> crate::linalg::SparseVec<(CwMonomial, u32)> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            for (pow, x) in c.terms() {
                out.insert((m.clone(), pow), x.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.json_terms()).expect("element serialization cannot fail")
    }

    fn json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.clone(),
                cliff: m.cliff_indices(),
                p: m.p.to_vec(),
                q: m.q.to_vec(),
            })
            .collect()
    }

    pub fn from_json(sig: &Signature, text: &str) -> Result<CwElement> {
        let terms: Vec<JsonTerm> =
            serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("bad element JSON: {e}")))?;
        let mut out = CwElement::zero(sig);
        for t in terms {
            let k = sig.n_bose_pairs;
            if t.p.len() != k || t.q.len() != k || t.cliff.iter().any(|&i| i == 0 || i > sig.n_fermi) {
                return Err(Error::InvalidParameter(format!("term does not fit {sig}")));
            }
            let mut cliff = 0u64;
            for i in t.cliff {
                cliff |= 1 << (i - 1);
            }
            out.add_term(CwMonomial::new(cliff, &t.p, &t.q), &t.coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: Scalar,
    cliff: Vec<usize>,
    p: Vec<u32>,
    q: Vec<u32>,
}

impl Serialize for CwElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.json_terms().serialize(s)
    }
}

/// Drops zero terms and merges repeated monomials. Elements built through
/// the public API are always canonical, so this is idempotent.
pub fn canonicalize(e: &CwElement) -> CwElement {
    CwElement::from_terms(&e.sig, e.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
}

pub fn bidegree(m: &CwMonomial) -> BiDegree {
    m.bidegree()
}

pub fn z_degree(m: &CwMonomial) -> u32 {
    m.z_degree()
}

/// Text form: terms `coeff*w1&p1^2&q1` where `&` is the symbol (wedge)
/// product, so the output parses back to the same element.
impl fmt::Display for CwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| c.fmt_term(&join_factors(&[m.render().as_str()])));
        f.write_str(&join_terms(terms))
    }
}

impl fmt::Debug for CwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn sig12() -> Signature {
        Signature::new(1, 1)
    }

    #[test]
    fn canonicalize_drops_zeros_and_merges() {
        let s = sig12();
        let w1 = CwMonomial::omega(1, 1);
        let p1 = CwMonomial::new(0, &[1], &[0]);
        let e = CwElement::from_terms(&s, [(w1, Scalar::zero()), (p1.clone(), Scalar::one())]);
        assert_eq!(e, CwElement::p(&s, 1).unwrap());
        let two = CwElement::from_terms(&s, [(p1.clone(), Scalar::one()), (p1.clone(), Scalar::one())]);
        assert_eq!(two.coeff(&p1), Scalar::from_int(2));
        assert_eq!(canonicalize(&canonicalize(&two)), canonicalize(&two));
    }

    #[test]
    fn gradings() {
        let w = CwMonomial::omega(1, 1);
        let p = CwMonomial::new(0, &[1], &[0]);
        assert_eq!(bidegree(&w), BiDegree::new(1, 0));
        assert_eq!(bidegree(&p), BiDegree::new(1, 1));
        assert_eq!(bidegree(&CwMonomial::unit(1)), BiDegree::new(0, 0));
        assert_eq!(z_degree(&CwMonomial::new(0b11, &[], &[])), 2);
        assert_eq!(z_degree(&CwMonomial::new(0, &[2], &[1])), 3);
        assert_eq!(z_degree(&CwMonomial::unit(3)), 0);
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let a = CwMonomial::new(0b011, &[], &[]);
        let b = CwMonomial::new(0b101, &[], &[]);
        let c = CwMonomial::new(0b110, &[], &[]);
        let one = CwMonomial::new(0, &[], &[]);
        assert!(one < a && a < b && b < c);
    }

    #[test]
    fn display_and_json() {
        let s = Signature::new(2, 1);
        let m = CwMonomial::new(0b11, &[2], &[1]);
        let e = CwElement::from_terms(
            &s,
            [(m, Scalar::constant(GaussRat::complex((1, 2), (1, 2)))), (CwMonomial::unit(1), Scalar::from_int(-3))],
        );
        assert_eq!(e.to_string(), "-3 + (1/2 + 1/2*i)*w1&w2&p1^2&q1");
        let back = CwElement::from_json(&s, &e.to_json()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn mismatched_signatures_are_rejected() {
        let a = CwElement::one(&Signature::new(1, 0));
        let b = CwElement::one(&Signature::new(2, 0));
        assert!(matches!(a.add(&b), Err(Error::SignatureMismatch { .. })));
    }
}
