//! The super-exterior product, the star product m_t = m_E ∘ exp(t/2 ℘),
//! Poisson brackets, super/Lie brackets and the two trace functionals.
//!
//! Sign convention for ℘ on the Clifford factor: operators on a tensor
//! product act with Koszul signs, (∂_i ⊗ ∂_i)(a ⊗ b) = (−1)^{|a|} ∂_i a ⊗ ∂_i b,
//! with ∂_i the left derivative. With the factor −2 in
//! ℘ = σ₂₃ ∘ (−2℘_∧ ⊗ Id + Id ⊗ ℘_S) ∘ σ₂₃ this is the unique choice giving
//! ω_i ⋆ ω_i = t.
//!
//! Moving the Weyl factor F of the left operand past the Clifford factor Ω′
//! of the right operand costs (−1)^{|F||Ω′|}; the return swap before m_E and
//! the sign inside m_E cancel, so on monomials
//! (Ω⊗F) ⋆ (Ω′⊗F′) = (−1)^{|F||Ω′|} m_∧(exp(−t℘_∧)(Ω⊗Ω′)) ⊗ m_S(exp(t/2 ℘_S)(F⊗F′)).
//! The two exponentials act on different tensor factors and commute, so the
//! series of the sum factorizes into these two series.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::clifford;
use crate::cw::{CwElement, CwMonomial, Exponents, Signature};
use crate::error::{Error, Result};
use crate::scalar::{GaussRat, Scalar};

/// Which product to use on the symbol space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    /// The super-exterior product m_E (the star product at t = 0).
    Wedge,
    /// The star product with t taken from the signature.
    Star,
}

pub fn product(kind: ProductKind, a: &CwElement, b: &CwElement) -> Result<CwElement> {
    match kind {
        ProductKind::Wedge => wedge(a, b),
        ProductKind::Star => star(a, b),
    }
}

fn weyl_parity(m: &CwMonomial) -> u32 {
    m.weyl_degree() & 1
}

/// Koszul sign for (Ω⊗F)·(Ω′⊗F′): (−1)^{|F||Ω′|}.
fn cross_sign(left: &CwMonomial, right: &CwMonomial) -> i8 {
    if weyl_parity(left) & right.cliff_degree() & 1 == 1 {
        -1
    } else {
        1
    }
}

fn add_exps(a: &Exponents, b: &Exponents) -> Exponents {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

/// The super-exterior product.
pub fn wedge(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    a.check_same(b)?;
    let mut out = CwElement::zero_shared(a.shared_signature());
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let Some((s, cliff)) = clifford::wedge(ma.cliff, mb.cliff) else { continue };
            let sign = s * cross_sign(ma, mb);
            let m = CwMonomial { cliff, p: add_exps(&ma.p, &mb.p), q: add_exps(&ma.q, &mb.q) };
            let c = ca * cb;
            out.add_term(m, &if sign < 0 { -c } else { c });
        }
    }
    Ok(out)
}

/// One term of a factor series: a monomial, the order j at which it arises
/// (it carries t^j) and its rational coefficient.
#[derive(Clone, Debug)]
struct SeriesTerm<M> {
    mono: M,
    order: u32,
    coeff: BigRational,
}

type CliffCache = HashMap<(u64, u64), Vec<SeriesTerm<u64>>>;
type WeylKey = (Exponents, Exponents, Exponents, Exponents);
type WeylCache = HashMap<WeylKey, Vec<SeriesTerm<(Exponents, Exponents)>>>;

thread_local! {
    static CLIFF_CACHE: RefCell<CliffCache> = RefCell::new(HashMap::new());
    static WEYL_CACHE: RefCell<WeylCache> = RefCell::new(HashMap::new());
}

const CACHE_LIMIT: usize = 1 << 16;

/// ℘_∧ applied to a combination of Clifford tensor pairs.
fn wp_clifford(pairs: &BTreeMap<(u64, u64), BigInt>, n_bits: usize) -> BTreeMap<(u64, u64), BigInt> {
    let mut out: BTreeMap<(u64, u64), BigInt> = BTreeMap::new();
    for (&(a, b), c) in pairs {
        let koszul = if a.count_ones() % 2 == 1 { -1 } else { 1 };
        for i in 0..n_bits {
            let (Some((sa, da)), Some((sb, db))) = (clifford::left_derivative(a, i), clifford::left_derivative(b, i))
            else {
                continue;
            };
            let s = koszul * sa * sb;
            *out.entry((da, db)).or_default() += c * BigInt::from(s);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// m_∧ ∘ exp(−t℘_∧) on ω^a ⊗ ω^b, as terms graded by the power of t.
fn clifford_series(a: u64, b: u64) -> Vec<SeriesTerm<u64>> {
    if let Some(hit) = CLIFF_CACHE.with(|c| c.borrow().get(&(a, b)).cloned()) {
        return hit;
    }
    let n_bits = 64 - (a | b).leading_zeros() as usize;
    let mut out = Vec::new();
    let mut pairs: BTreeMap<(u64, u64), BigInt> = BTreeMap::new();
    pairs.insert((a, b), BigInt::one());
    let mut order = 0u32;
    let mut factorial = BigInt::one();
    while !pairs.is_empty() {
        // (−1)^j / j!
        let base = BigRational::new(if order.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() }, factorial.clone());
        let mut by_mono: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (&(x, y), c) in &pairs {
            if let Some((s, m)) = clifford::wedge(x, y) {
                *by_mono.entry(m).or_default() += c * BigInt::from(s);
            }
        }
        for (mono, c) in by_mono {
            if !c.is_zero() {
                out.push(SeriesTerm { mono, order, coeff: &base * BigRational::from_integer(c) });
            }
        }
        pairs = wp_clifford(&pairs, n_bits);
        order += 1;
        factorial *= BigInt::from(order);
    }
    CLIFF_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > CACHE_LIMIT {
            c.clear();
        }
        c.insert((a, b), out.clone());
    });
    out
}

type WeylPair = (Exponents, Exponents, Exponents, Exponents);

/// ℘_S = Σ_j (∂_{p_j} ⊗ ∂_{q_j} − ∂_{q_j} ⊗ ∂_{p_j}) on polynomial tensor pairs.
fn wp_weyl(pairs: &BTreeMap<WeylPair, BigInt>) -> BTreeMap<WeylPair, BigInt> {
    let mut out: BTreeMap<WeylPair, BigInt> = BTreeMap::new();
    for ((pa, qa, pb, qb), c) in pairs {
        for j in 0..pa.len() {
            if pa[j] > 0 && qb[j] > 0 {
                let (mut pa2, mut qb2) = (pa.clone(), qb.clone());
                pa2[j] -= 1;
                qb2[j] -= 1;
                let f = BigInt::from(pa[j]) * BigInt::from(qb[j]);
                *out.entry((pa2, qa.clone(), pb.clone(), qb2)).or_default() += c * f;
            }
            if qa[j] > 0 && pb[j] > 0 {
                let (mut qa2, mut pb2) = (qa.clone(), pb.clone());
                qa2[j] -= 1;
                pb2[j] -= 1;
                let f = BigInt::from(qa[j]) * BigInt::from(pb[j]);
                *out.entry((pa.clone(), qa2, pb2, qb.clone())).or_default() -= c * f;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// m_S ∘ exp(t/2 ℘_S) on p^{pa}q^{qa} ⊗ p^{pb}q^{qb}.
fn weyl_series(key: WeylPair) -> Vec<SeriesTerm<(Exponents, Exponents)>> {
    if let Some(hit) = WEYL_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut out = Vec::new();
    let mut pairs: BTreeMap<WeylPair, BigInt> = BTreeMap::new();
    pairs.insert(key.clone(), BigInt::one());
    let mut order = 0u32;
    let mut denom = BigInt::one(); // 2^j j!
    while !pairs.is_empty() {
        let mut by_mono: BTreeMap<(Exponents, Exponents), BigInt> = BTreeMap::new();
        for ((pa, qa, pb, qb), c) in &pairs {
            *by_mono.entry((add_exps(pa, pb), add_exps(qa, qb))).or_default() += c;
        }
        for (mono, c) in by_mono {
            if !c.is_zero() {
                out.push(SeriesTerm { mono, order, coeff: BigRational::new(c, denom.clone()) });
            }
        }
        pairs = wp_weyl(&pairs);
        order += 1;
        denom *= BigInt::from(2 * order);
    }
    WEYL_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, out.clone());
    });
    out
}

/// The star product m_t, t from the signature.
pub fn star(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    a.check_same(b)?;
    let sig = a.signature();
    let t = &sig.t;
    let mut t_powers: Vec<Scalar> = vec![Scalar::one()];
    let mut out = CwElement::zero_shared(a.shared_signature());
    // Accumulate per (monomial, t-order) first so that the t-powers are
    // applied once per output coefficient.
    let mut acc: BTreeMap<(CwMonomial, u32), Scalar> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let sign = cross_sign(ma, mb);
            let cc = ca * cb;
            let cc = if sign < 0 { -cc } else { cc };
            let cl = clifford_series(ma.cliff, mb.cliff);
            if cl.is_empty() {
                continue;
            }
            let wy = weyl_series((ma.p.clone(), ma.q.clone(), mb.p.clone(), mb.q.clone()));
            for ct in &cl {
                for wt in &wy {
                    let m = CwMonomial { cliff: ct.mono, p: wt.mono.0.clone(), q: wt.mono.1.clone() };
                    let r = GaussRat::from(&ct.coeff * &wt.coeff);
                    let slot = acc.entry((m, ct.order + wt.order)).or_default();
                    *slot += &cc.scale(&r);
                }
            }
        }
    }
    for ((m, order), c) in acc {
        while t_powers.len() <= order as usize {
            let next = t_powers.last().unwrap() * t;
            t_powers.push(next);
        }
        out.add_term(m, &(&c * &t_powers[order as usize]));
    }
    Ok(out)
}

/// Repeated star product; `a^{⋆0} = 1`.
pub fn star_pow(a: &CwElement, e: u32) -> CwElement {
    let mut acc = CwElement::one(a.signature());
    for _ in 0..e {
        acc = star(&acc, a).expect("same signature");
    }
    acc
}

/// Star product of a non-empty list, left to right.
pub fn star_all(items: &[CwElement]) -> Result<CwElement> {
    let (first, rest) = items
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, x| star(&acc, x))
}

/// {Ω,Ω′} = 2(−1)^{deg Ω + 1} Σ_i ∂_iΩ ∧ ∂_iΩ′ on Clifford monomials.
fn clifford_poisson(a: u64, b: u64) -> Vec<(i64, u64)> {
    let n_bits = 64 - (a | b).leading_zeros() as usize;
    let outer: i64 = if a.count_ones().is_multiple_of(2) { -2 } else { 2 };
    let mut acc: BTreeMap<u64, i64> = BTreeMap::new();
    for i in 0..n_bits {
        let (Some((sa, da)), Some((sb, db))) = (clifford::left_derivative(a, i), clifford::left_derivative(b, i))
        else {
            continue;
        };
        if let Some((sw, m)) = clifford::wedge(da, db) {
            *acc.entry(m).or_default() += outer * i64::from(sa * sb * sw);
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (c, m)).collect()
}

/// {F,G} = Σ_j (∂F/∂p_j ∂G/∂q_j − ∂F/∂q_j ∂G/∂p_j) on Weyl monomials.
fn weyl_poisson(pa: &Exponents, qa: &Exponents, pb: &Exponents, qb: &Exponents) -> Vec<(i64, Exponents, Exponents)> {
    let mut single: BTreeMap<WeylPair, BigInt> = BTreeMap::new();
    single.insert((pa.clone(), qa.clone(), pb.clone(), qb.clone()), BigInt::one());
    let mut acc: BTreeMap<(Exponents, Exponents), i64> = BTreeMap::new();
    for ((pa, qa, pb, qb), c) in wp_weyl(&single) {
        let c: i64 = c.try_into().expect("small bracket coefficient");
        *acc.entry((add_exps(&pa, &pb), add_exps(&qa, &qb))).or_default() += c;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).map(|((p, q), c)| (c, p, q)).collect()
}

/// The super Poisson bracket of the symbol space:
/// {Ω⊗F, Ω′⊗F′} = (−1)^{|F||Ω′|}({Ω,Ω′}⊗FF′ + (Ω∧Ω′)⊗{F,F′}).
///
/// Defined monomial by monomial, so it is already the bilinear extension
/// over Z-homogeneous parts.
pub fn poisson(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    a.check_same(b)?;
    let mut out = CwElement::zero_shared(a.shared_signature());
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let sign = i64::from(cross_sign(ma, mb));
            let c = ca * cb;
            for (k, m) in clifford_poisson(ma.cliff, mb.cliff) {
                let mono = CwMonomial { cliff: m, p: add_exps(&ma.p, &mb.p), q: add_exps(&ma.q, &mb.q) };
                out.add_term(mono, &c.scale(&GaussRat::from_int(sign * k)));
            }
            if let Some((sw, m)) = clifford::wedge(ma.cliff, mb.cliff) {
                for (k, p, q) in weyl_poisson(&ma.p, &ma.q, &mb.p, &mb.q) {
                    let mono = CwMonomial { cliff: m, p, q };
                    out.add_term(mono, &c.scale(&GaussRat::from_int(sign * i64::from(sw) * k)));
                }
            }
        }
    }
    Ok(out)
}

/// a⋆b − b⋆a.
pub fn lie_bracket(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    star(a, b)?.sub(&star(b, a)?)
}

/// a⋆b + b⋆a.
pub fn anticommutator(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    star(a, b)?.add(&star(b, a)?)
}

/// The Δ₂-parity of a homogeneous element (zero counts as even).
pub fn delta2(a: &CwElement) -> Result<u8> {
    let mut it = a.terms().map(|(m, _)| weyl_parity(m) as u8);
    let first = it.next().unwrap_or(0);
    if it.all(|d| d == first) {
        Ok(first)
    } else {
        Err(Error::NonHomogeneous("Δ₂"))
    }
}

/// The Δ₁-parity (total Z-degree mod 2) of a homogeneous element.
pub fn delta1(a: &CwElement) -> Result<u8> {
    let mut it = a.terms().map(|(m, _)| (m.z_degree() & 1) as u8);
    let first = it.next().unwrap_or(0);
    if it.all(|d| d == first) {
        Ok(first)
    } else {
        Err(Error::NonHomogeneous("Δ₁"))
    }
}

/// a⋆b − (−1)^{Δ₂(a)Δ₂(b)} b⋆a for Δ₂-homogeneous a, b.
pub fn super_bracket(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    let (da, db) = (delta2(a)?, delta2(b)?);
    if da & db == 1 {
        anticommutator(a, b)
    } else {
        lie_bracket(a, b)
    }
}

/// [`super_bracket`] extended bilinearly over the Δ₂-homogeneous parts.
pub fn super_bracket_split(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    a.check_same(b)?;
    let mut out = CwElement::zero_shared(a.shared_signature());
    for pa in a.split_by(weyl_parity).values() {
        for pb in b.split_by(weyl_parity).values() {
            out = out.add(&super_bracket(pa, pb)?)?;
        }
    }
    Ok(out)
}

/// The constant term, for any signature.
pub fn constant_term(a: &CwElement) -> Scalar {
    a.constant_term()
}

/// Str(F) = F(0) on the pure Weyl algebra.
pub fn supertrace_weyl(a: &CwElement) -> Result<Scalar> {
    let sig = a.signature();
    if !sig.is_pure_weyl() {
        return Err(Error::WrongSignature { expected: "C(0,2k)".into(), found: sig.to_string() });
    }
    Ok(a.constant_term())
}

/// Tr(Ω) = 2^m Ω(0) on C(2m).
pub fn trace_clifford(a: &CwElement) -> Result<Scalar> {
    let sig = a.signature();
    if !sig.is_pure_clifford() || sig.n_fermi % 2 == 1 {
        return Err(Error::WrongSignature { expected: "C(2m,0)".into(), found: sig.to_string() });
    }
    Ok(a.constant_term().scale(&GaussRat::from_int(1 << (sig.n_fermi / 2))))
}

/// ω₁ ⋆ ⋯ ⋆ ω_n of a signature with at least n Clifford generators.
pub fn omega_product(sig: &Signature, indices: impl IntoIterator<Item = usize>) -> Result<CwElement> {
    let mut acc = CwElement::one(sig);
    for i in indices {
        acc = star(&acc, &CwElement::omega(sig, i)?)?;
    }
    Ok(acc)
}
