//! A_Λ(n) as the iterated Ore extension C(2n+1)[Λ][E₊][E₋], with elements
//! kept in the normal form ω^I E₊^α E₋^β Λ^r.
//!
//! E₊ C = τ(C) E₊ with τ(ω) = −ω, and E₋ A = σ(A) E₋ + D(A) with
//! σ(ω) = −ω, σ(E₊) = E₊ and D(f(E₊) C) = (¼ f′ − Δ(f) θ) C, where
//! θ = iⁿ ω₁⋯ω_{2n+1} Λ and Δ(E₊^α) = E₊^{α−1} for odd α, 0 for even α.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{Algebra, SuperAlgebra};
use crate::clifford;
use crate::cw::bits;
use crate::error::{Error, Result};
use crate::random::gauss;
use crate::report::Report;
use crate::scalar::{join_factors, join_terms, GaussRat, Scalar};

/// ω^cliff E₊^e_plus E₋^e_minus Λ^lambda.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OreMonomial {
    pub cliff: u64,
    pub e_plus: u32,
    pub e_minus: u32,
    pub lambda: u32,
}

impl OreMonomial {
    pub fn one() -> Self {
        OreMonomial { cliff: 0, e_plus: 0, e_minus: 0, lambda: 0 }
    }

    pub fn new(cliff: u64, e_plus: u32, e_minus: u32, lambda: u32) -> Self {
        OreMonomial { cliff, e_plus, e_minus, lambda }
    }

    fn render(&self) -> String {
        let mut parts: Vec<String> = bits(self.cliff).map(|b| format!("w{}", b + 1)).collect();
        for (name, e) in [("E+", self.e_plus), ("E-", self.e_minus), ("L", self.lambda)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// An element of A_Λ(n).
#[derive(Clone, PartialEq, Eq)]
pub struct OreElement {
    n: usize,
    terms: BTreeMap<OreMonomial, GaussRat>,
}

impl OreElement {
    pub fn zero(n: usize) -> Self {
        OreElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, OreMonomial::one(), GaussRat::one())
    }

    pub fn constant(n: usize, c: GaussRat) -> Self {
        Self::monomial(n, OreMonomial::one(), c)
    }

    pub fn monomial(n: usize, m: OreMonomial, c: GaussRat) -> Self {
        let mut e = Self::zero(n);
        e.add_term(m, &c);
        e
    }

    /// ω_i, 1-based, i ≤ 2n+1.
    pub fn omega(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > 2 * n + 1 {
            return Err(Error::InvalidParameter(format!("w{i} does not exist in A(n={n})")));
        }
        Ok(Self::monomial(n, OreMonomial::new(1 << (i - 1), 0, 0, 0), GaussRat::one()))
    }

    pub fn e_plus(n: usize) -> Self {
        Self::monomial(n, OreMonomial::new(0, 1, 0, 0), GaussRat::one())
    }

    pub fn e_minus(n: usize) -> Self {
        Self::monomial(n, OreMonomial::new(0, 0, 1, 0), GaussRat::one())
    }

    pub fn lambda(n: usize) -> Self {
        Self::monomial(n, OreMonomial::new(0, 0, 0, 1), GaussRat::one())
    }

    /// θ = iⁿ ω₁⋯ω_{2n+1} Λ.
    pub fn theta(n: usize) -> Self {
        Self::monomial(n, OreMonomial::new(clifford::full(2 * n + 1), 0, 0, 1), GaussRat::i_pow(n as i64))
    }

    /// P′ = iⁿ ω₁⋯ω_{2n+1}, central in the Clifford part with P′² = 1.
    pub fn parity_element(n: usize) -> Self {
        Self::monomial(n, OreMonomial::new(clifford::full(2 * n + 1), 0, 0, 0), GaussRat::i_pow(n as i64))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OreMonomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &OreMonomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: OreMonomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_same(&self, o: &OreElement) -> Result<()> {
        if self.n != o.n {
            return Err(Error::RankMismatch(self.n, o.n));
        }
        Ok(())
    }

    pub fn add(&self, o: &OreElement) -> Result<OreElement> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &OreElement) -> Result<OreElement> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> OreElement {
        self.scale(&-GaussRat::one())
    }

    pub fn scale(&self, c: &GaussRat) -> OreElement {
        let mut out = OreElement::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    /// Multiplication by a Λ-polynomial.
    pub fn scale_poly(&self, c: &Scalar) -> OreElement {
        let mut out = OreElement::zero(self.n);
        for (pow, x) in c.terms() {
            for (m, y) in &self.terms {
                let mut m2 = m.clone();
                m2.lambda += pow;
                out.add_term(m2, &(x * y));
            }
        }
        out
    }

    pub fn max_lambda(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.lambda).max()
    }

    /// The coefficient of Λ^r, as a Λ-free element.
    pub fn lambda_coeff(&self, r: u32) -> OreElement {
        let mut out = OreElement::zero(self.n);
        for (m, c) in &self.terms {
            if m.lambda == r {
                out.add_term(OreMonomial { lambda: 0, ..m.clone() }, c);
            }
        }
        out
    }

    /// Splits by a key on monomials.
    pub fn split_by<K: Ord>(&self, key: impl Fn(&OreMonomial) -> K) -> BTreeMap<K, OreElement> {
        let mut out: BTreeMap<K, OreElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(key(m)).or_insert_with(|| OreElement::zero(self.n)).add_term(m.clone(), c);
        }
        out
    }

    /// Coordinates keyed by monomial.
    pub fn coeff_vector(&self) -> crate::linalg::SparseVec<OreMonomial> {
        self.terms.clone()
    }
}

impl fmt::Display for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| c.fmt_term(&join_factors(&[m.render().as_str()])));
        f.write_str(&join_terms(terms))
    }
}

impl fmt::Debug for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in A(n={})", self, self.n)
    }
}

/// Normal-form terms of a partial product.
type Expansion = Vec<(OreMonomial, GaussRat)>;

thread_local! {
    static EMINUS_CACHE: RefCell<HashMap<(usize, u32, u64, u32), Expansion>> = RefCell::new(HashMap::new());
}

fn sign_of(odd: bool) -> GaussRat {
    if odd {
        -GaussRat::one()
    } else {
        GaussRat::one()
    }
}

/// E₋ ⋅ (ω^K E₊^ε E₋^j Λ^u) in normal form.
fn eminus_times(n: usize, m: &OreMonomial, c: &GaussRat, out: &mut BTreeMap<OreMonomial, GaussRat>) {
    let sigma = sign_of(m.cliff.count_ones() % 2 == 1);
    let push = |out: &mut BTreeMap<OreMonomial, GaussRat>, k: OreMonomial, v: GaussRat| {
        if v.is_zero() {
            return;
        }
        let slot = out.entry(k.clone()).or_default();
        *slot += &v;
        if slot.is_zero() {
            out.remove(&k);
        }
    };
    let sc = &sigma * c;
    push(out, OreMonomial { e_minus: m.e_minus + 1, ..m.clone() }, sc.clone());
    if m.e_plus > 0 {
        let lowered = OreMonomial { e_plus: m.e_plus - 1, ..m.clone() };
        push(out, lowered.clone(), &sc * &GaussRat::ratio(i64::from(m.e_plus), 4));
        if m.e_plus % 2 == 1 {
            let (s, k) = clifford::product(m.cliff, clifford::full(2 * n + 1));
            let coeff = -(&sc * &GaussRat::i_pow(n as i64)) * GaussRat::from_int(s.into());
            push(out, OreMonomial { cliff: k, lambda: lowered.lambda + 1, ..lowered }, coeff);
        }
    }
}

/// E₋^beta ⋅ ω^K E₊^eps in normal form (cached).
fn eminus_power_times(n: usize, beta: u32, cliff: u64, eps: u32) -> Expansion {
    let key = (n, beta, cliff, eps);
    if let Some(hit) = EMINUS_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut current: BTreeMap<OreMonomial, GaussRat> = BTreeMap::new();
    current.insert(OreMonomial::new(cliff, eps, 0, 0), GaussRat::one());
    for _ in 0..beta {
        let mut next = BTreeMap::new();
        for (m, c) in &current {
            eminus_times(n, m, c, &mut next);
        }
        current = next;
    }
    let out: Expansion = current.into_iter().collect();
    EMINUS_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 65536 {
            c.clear();
        }
        c.insert(key, out.clone());
    });
    out
}

/// The product of A_Λ(n) in normal form.
pub fn ore_product(a: &OreElement, b: &OreElement) -> Result<OreElement> {
    a.check_same(b)?;
    let n = a.n;
    let mut out = OreElement::zero(n);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let cab = ca * cb;
            for (mk, ck) in eminus_power_times(n, ma.e_minus, mb.cliff, mb.e_plus) {
                // E₊^α ω^K = (−1)^{α|K|} ω^K E₊^α
                let swap = sign_of(ma.e_plus % 2 == 1 && mk.cliff.count_ones() % 2 == 1);
                let (s, cliff) = clifford::product(ma.cliff, mk.cliff);
                let coeff = &(&cab * &ck) * &(&swap * &GaussRat::from_int(s.into()));
                let m = OreMonomial {
                    cliff,
                    e_plus: ma.e_plus + mk.e_plus,
                    e_minus: mk.e_minus + mb.e_minus,
                    lambda: ma.lambda + mk.lambda + mb.lambda,
                };
                out.add_term(m, &coeff);
            }
        }
    }
    Ok(out)
}

/// Substitutes Λ ← λ.
pub fn specialize(a: &OreElement, lambda: &GaussRat) -> OreElement {
    let mut out = OreElement::zero(a.n);
    for (m, c) in &a.terms {
        out.add_term(OreMonomial { lambda: 0, ..m.clone() }, &(c * &lambda.pow(m.lambda)));
    }
    out
}

/// A_Λ(n), or A_λ(n) when `lambda` is set (products are specialized).
#[derive(Clone, Debug, PartialEq)]
pub struct OreAlgebra {
    pub n: usize,
    pub lambda: Option<GaussRat>,
}

impl OreAlgebra {
    pub fn generic(n: usize) -> Self {
        OreAlgebra { n, lambda: None }
    }

    pub fn specialized(n: usize, lambda: GaussRat) -> Self {
        OreAlgebra { n, lambda: Some(lambda) }
    }

    fn reduce(&self, a: OreElement) -> OreElement {
        match &self.lambda {
            Some(l) => specialize(&a, l),
            None => a,
        }
    }

    /// Generators ω₁…ω_{2n+1}, E₊, E₋ (Λ is central and omitted).
    pub fn generators(&self) -> Vec<OreElement> {
        let mut g: Vec<OreElement> = (1..=2 * self.n + 1).map(|i| OreElement::omega(self.n, i).expect("in range")).collect();
        g.push(OreElement::e_plus(self.n));
        g.push(OreElement::e_minus(self.n));
        g
    }

    /// θ, specialized if needed.
    pub fn theta(&self) -> OreElement {
        self.reduce(OreElement::theta(self.n))
    }
}

impl Algebra for OreAlgebra {
    type Elem = OreElement;

    fn zero(&self) -> OreElement {
        OreElement::zero(self.n)
    }
    fn one(&self) -> OreElement {
        OreElement::one(self.n)
    }
    fn add(&self, a: &OreElement, b: &OreElement) -> OreElement {
        a.add(b).expect("elements of one algebra")
    }
    fn neg(&self, a: &OreElement) -> OreElement {
        a.neg()
    }
    fn mul(&self, a: &OreElement, b: &OreElement) -> OreElement {
        self.reduce(ore_product(a, b).expect("elements of one algebra"))
    }
    fn scale(&self, c: &Scalar, a: &OreElement) -> OreElement {
        self.reduce(a.scale_poly(c))
    }
    fn is_zero(&self, a: &OreElement) -> bool {
        a.is_zero()
    }
}

impl SuperAlgebra for OreAlgebra {
    /// Graded by |I| + α + β mod 2, matching Z-degree under A₀(n) ≅ C(2n+1,2).
    fn parity_parts(&self, a: &OreElement) -> [OreElement; 2] {
        let mut parts = a.split_by(|m| (m.cliff.count_ones() + m.e_plus + m.e_minus) % 2);
        [parts.remove(&0).unwrap_or_else(|| self.zero()), parts.remove(&1).unwrap_or_else(|| self.zero())]
    }
}

/// Parity with E± odd and ω even, for the osp(1,2)-type brackets.
pub fn e_parity(a: &OreElement) -> Result<u32> {
    let mut it = a.terms().map(|(m, _)| (m.e_plus + m.e_minus) % 2);
    let first = it.next().unwrap_or(0);
    if it.all(|d| d == first) {
        Ok(first)
    } else {
        Err(Error::NonHomogeneous("E-parity"))
    }
}

/// ab − (−1)^{|a||b|} ba with E± odd.
pub fn ore_super_bracket(alg: &OreAlgebra, a: &OreElement, b: &OreElement) -> Result<OreElement> {
    let ab = alg.mul(a, b);
    let ba = alg.mul(b, a);
    if e_parity(a)? * e_parity(b)? == 1 {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

/// A random element with Λ-free or low-Λ monomials.
pub fn random_ore<R: Rng>(rng: &mut R, n: usize, max_deg: u32, max_terms: usize, max_lambda: u32) -> OreElement {
    let count = rng.gen_range(1..=max_terms.max(1));
    let mut out = OreElement::zero(n);
    for _ in 0..count {
        let mut m = OreMonomial::new(rng.gen_range(0..1u64 << (2 * n + 1)), 0, 0, rng.gen_range(0..=max_lambda));
        let extra = rng.gen_range(0..=max_deg.saturating_sub(m.cliff.count_ones()));
        for _ in 0..extra {
            if rng.gen_bool(0.5) {
                m.e_plus += 1;
            } else {
                m.e_minus += 1;
            }
        }
        out.add_term(m, &gauss(rng));
    }
    out
}

/// The defining relations of A_Λ(n) (or A_λ(n)): ω_jω_k + ω_kω_j = 2δ_jk,
/// E±ω_j = −ω_jE±, [E₊,E₋] = −¼ + θ, Λ central.
pub fn relations_report(alg: &OreAlgebra) -> Report {
    let n = alg.n;
    let mut report = Report::new("ore-relations");
    let omegas: Vec<OreElement> = (1..=2 * n + 1).map(|i| OreElement::omega(n, i).expect("in range")).collect();
    let (ep, em) = (OreElement::e_plus(n), OreElement::e_minus(n));
    for (j, wj) in omegas.iter().enumerate() {
        for (k, wk) in omegas.iter().enumerate() {
            let lhs = alg.add(&alg.mul(wj, wk), &alg.mul(wk, wj));
            let rhs = if j == k { OreElement::constant(n, GaussRat::from_int(2)) } else { alg.zero() };
            report.check_eq(format!("{wj}{wk} + {wk}{wj}"), &lhs, &rhs);
        }
        for e in [&ep, &em] {
            report.check_eq(format!("{e}{wj}"), &alg.mul(e, wj), &alg.mul(wj, e).neg());
        }
    }
    let rhs = alg.add(&OreElement::constant(n, GaussRat::ratio(-1, 4)), &alg.theta());
    report.check_eq("[E+,E-]", &alg.commutator(&ep, &em), &rhs);
    if alg.lambda.is_none() {
        let l = OreElement::lambda(n);
        for g in alg.generators() {
            report.check_eq(format!("[L,{g}]"), &alg.commutator(&l, &g), &alg.zero());
        }
    }
    report
}

/// θ = ¼ + [E₊,E₋], θE± = −E±θ, θ² = Λ², θ² − 1/16 central, and after
/// specializing at each given λ ≠ 0, (θ/λ)² = 1.
pub fn ghost_identities(n: usize, lambdas: &[GaussRat]) -> Report {
    let alg = OreAlgebra::generic(n);
    let mut report = Report::new("ghost");
    let theta = OreElement::theta(n);
    let (ep, em) = (OreElement::e_plus(n), OreElement::e_minus(n));
    let quarter = OreElement::constant(n, GaussRat::ratio(1, 4));
    report.check_eq("1/4 + [E+,E-]", &alg.add(&quarter, &alg.commutator(&ep, &em)), &theta);
    for e in [&ep, &em] {
        report.check_eq(format!("theta*{e}"), &alg.mul(&theta, e), &alg.mul(e, &theta).neg());
    }
    for g in alg.generators().iter().take(2 * n + 1) {
        report.check_eq(format!("[theta,{g}]"), &alg.commutator(&theta, g), &alg.zero());
    }
    let sq = alg.mul(&theta, &theta);
    report.check_eq("theta^2", &sq, &OreElement::monomial(n, OreMonomial::new(0, 0, 0, 2), GaussRat::one()));
    let casimir = sq.sub(&OreElement::constant(n, GaussRat::ratio(1, 16))).expect("same rank");
    for g in alg.generators() {
        report.check_eq(format!("[theta^2 - 1/16,{g}]"), &alg.commutator(&casimir, &g), &alg.zero());
    }
    for l in lambdas {
        let spec = OreAlgebra::specialized(n, l.clone());
        let inv = l.inv().expect("lambda is nonzero");
        let p = spec.theta().scale(&inv);
        report.check_eq(format!("(theta/{l})^2"), &spec.mul(&p, &p), &spec.one());
        for e in [&ep, &em] {
            report.check_eq(format!("P*{e} at {l}"), &spec.mul(&p, e), &spec.mul(e, &p).neg());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mul(a: &OreElement, b: &OreElement) -> OreElement {
        ore_product(a, b).unwrap()
    }

    #[test]
    fn examples() {
        for n in 0..=2 {
            let (ep, em) = (OreElement::e_plus(n), OreElement::e_minus(n));
            let expect = mul(&ep, &em)
                .add(&OreElement::constant(n, GaussRat::ratio(1, 4)))
                .unwrap()
                .sub(&OreElement::theta(n))
                .unwrap();
            assert_eq!(mul(&em, &ep), expect);
            let w1 = OreElement::omega(n, 1).unwrap();
            assert_eq!(mul(&ep, &w1), mul(&w1, &ep).neg());
            let l = OreElement::lambda(n);
            assert_eq!(mul(&l, &ep), mul(&ep, &l));
        }
        let em = OreElement::e_minus(0);
        let e2 = mul(&OreElement::e_plus(0), &OreElement::e_plus(0));
        // E₋E₊² = E₊²E₋ + ½E₊
        let expect = mul(&e2, &em).add(&OreElement::e_plus(0).scale(&GaussRat::ratio(1, 2))).unwrap();
        assert_eq!(mul(&em, &e2), expect);
        assert_eq!(OreElement::theta(1).to_string(), "i*w1*w2*w3*L");
    }

    #[test]
    fn relations_and_ghost() {
        for n in 0..=2 {
            let r = relations_report(&OreAlgebra::generic(n));
            assert!(r.passed(), "{:?}", r.failures);
            let r = ghost_identities(n, &[GaussRat::ratio(3, 4), GaussRat::complex((1, 2), (1, 1))]);
            assert!(r.passed(), "{:?}", r.failures);
        }
        let r = relations_report(&OreAlgebra::specialized(1, GaussRat::ratio(5, 4)));
        assert!(r.passed());
    }

    #[test]
    fn specialize_examples() {
        let l2 = OreElement::monomial(0, OreMonomial::new(0, 0, 0, 2), GaussRat::one());
        assert_eq!(specialize(&l2, &GaussRat::from_int(2)), OreElement::constant(0, GaussRat::from_int(4)));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let l = GaussRat::ratio(-3, 2);
        for _ in 0..40 {
            let a = random_ore(&mut rng, 1, 3, 3, 1);
            let b = random_ore(&mut rng, 1, 3, 3, 1);
            let lhs = specialize(&mul(&a, &b), &l);
            let rhs = specialize(&mul(&specialize(&a, &l), &specialize(&b, &l)), &l);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn associativity_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 0..=1 {
            for _ in 0..30 {
                let a = random_ore(&mut rng, n, 3, 3, 1);
                let b = random_ore(&mut rng, n, 3, 3, 1);
                let c = random_ore(&mut rng, n, 3, 3, 1);
                assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
            }
        }
    }

    #[test]
    fn rank_mismatch() {
        assert!(ore_product(&OreElement::one(0), &OreElement::one(1)).is_err());
    }
}
