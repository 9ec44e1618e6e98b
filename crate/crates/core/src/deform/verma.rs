//! The Verma-type representation ρ_λ of A_λ = A_λ(0) on C[z],
//! ρ(E₊) = ½ d/dz − λΔ, ρ(E₋) = −z/2, ρ(ω₁) = parity, with
//! Δ(f) = (f(z) − f(−z))/z, and the finite quotients π_h of dimension
//! 2ⁿ(4h+1), transported to A_λ(n) through C(2n) ⊗ A_λ.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::iso::eval_ore_hom;
use super::ore::OreElement;
use crate::algebra::Algebra;
use crate::clifford;
use crate::cw::{CwElement, CwMonomial};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::reps::{rep_matrix, MatrixRing, RepDescriptor, ScalarMatrix};
use crate::scalar::{join_terms, GaussRat, Scalar};

/// A polynomial in one variable z.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    terms: BTreeMap<u32, GaussRat>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: u32, c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn coeff(&self, m: u32) -> GaussRat {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussRat)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: u32, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> ZPoly {
        let mut out = ZPoly::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, &(x * c));
        }
        out
    }

    fn map(&self, f: impl Fn(u32, &GaussRat) -> Vec<(u32, GaussRat)>) -> ZPoly {
        let mut out = ZPoly::zero();
        for (m, c) in &self.terms {
            for (m2, c2) in f(*m, c) {
                out.add_term(m2, &c2);
            }
        }
        out
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| {
            let z = match m {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{m}"),
            };
            c.fmt_term(&z)
        });
        f.write_str(&join_terms(terms))
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The three generator operators of ρ_λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VermaGen {
    Parity,
    EPlus,
    EMinus,
}

/// ρ_λ(g)(z^m) as a sparse list of images.
fn verma_gen_on(lambda: &GaussRat, g: VermaGen, m: u32, c: &GaussRat) -> Vec<(u32, GaussRat)> {
    match g {
        VermaGen::Parity => vec![(m, if m.is_multiple_of(2) { c.clone() } else { -c.clone() })],
        VermaGen::EMinus => vec![(m + 1, c * &GaussRat::ratio(-1, 2))],
        VermaGen::EPlus if m == 0 => vec![],
        VermaGen::EPlus => {
            let mut k = GaussRat::ratio(i64::from(m), 2);
            if m % 2 == 1 {
                k = &k - &(lambda * &GaussRat::from_int(2));
            }
            vec![(m - 1, c * &k)]
        }
    }
}

pub fn verma_gen(lambda: &GaussRat, g: VermaGen, f: &ZPoly) -> ZPoly {
    f.map(|m, c| verma_gen_on(lambda, g, m, c))
}

/// ρ_λ(a)(f) for a ∈ A_Λ(0); Λ acts as λ.
pub fn verma_apply(lambda: &GaussRat, a: &OreElement, f: &ZPoly) -> Result<ZPoly> {
    if a.rank() != 0 {
        return Err(Error::InfiniteCarrier(format!(
            "the Verma module is a module over A(0), got rank {}; transport matrices instead",
            a.rank()
        )));
    }
    let mut out = ZPoly::zero();
    for (m, c) in a.terms() {
        let mut v = f.clone();
        for _ in 0..m.e_minus {
            v = verma_gen(lambda, VermaGen::EMinus, &v);
        }
        for _ in 0..m.e_plus {
            v = verma_gen(lambda, VermaGen::EPlus, &v);
        }
        if m.cliff & 1 == 1 {
            v = verma_gen(lambda, VermaGen::Parity, &v);
        }
        out = out.add(&v.scale(&(c * &lambda.pow(m.lambda))));
    }
    Ok(out)
}

/// Checks ω₁² = 1, E±ω₁ = −ω₁E± and [E₊,E₋] = −¼ + λω₁ on z^0 … z^max_m.
pub fn verma_relations_report(lambda: &GaussRat, max_m: u32) -> Report {
    let mut report = Report::new("verma");
    let g = |x: VermaGen, f: &ZPoly| verma_gen(lambda, x, f);
    for m in 0..=max_m {
        let f = ZPoly::monomial(m, GaussRat::one());
        let inputs = |what: &str| format!("{what} on z^{m}, lambda={lambda}");
        report.check_eq(inputs("P^2"), &g(VermaGen::Parity, &g(VermaGen::Parity, &f)), &f);
        for e in [VermaGen::EPlus, VermaGen::EMinus] {
            let lhs = g(e, &g(VermaGen::Parity, &f));
            let rhs = g(VermaGen::Parity, &g(e, &f)).scale(&-GaussRat::one());
            report.check_eq(inputs(&format!("{e:?} P + P {e:?}")), &lhs, &rhs);
        }
        let lhs = g(VermaGen::EPlus, &g(VermaGen::EMinus, &f))
            .add(&g(VermaGen::EMinus, &g(VermaGen::EPlus, &f)).scale(&-GaussRat::one()));
        let rhs = f.scale(&GaussRat::ratio(-1, 4)).add(&g(VermaGen::Parity, &f).scale(lambda));
        report.check_eq(inputs("[E+,E-]"), &lhs, &rhs);
    }
    report
}

/// λ = ±(h + ¼).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// π_h as generator matrices; size 2ⁿ(4h+1).
#[derive(Clone, Debug)]
pub struct PiH {
    pub n: usize,
    pub two_h: u32,
    pub sign: Sign,
    pub lambda: GaussRat,
    pub omegas: Vec<ScalarMatrix>,
    pub e_plus: ScalarMatrix,
    pub e_minus: ScalarMatrix,
}

impl PiH {
    pub fn size(&self) -> usize {
        self.e_plus.rows
    }

    /// The matrix of an arbitrary element (Λ acts as λ).
    pub fn matrix_of(&self, a: &OreElement) -> Result<ScalarMatrix> {
        if a.rank() != self.n {
            return Err(Error::RankMismatch(self.n, a.rank()));
        }
        let ring = MatrixRing { size: self.size() };
        let specialized = super::ore::specialize(a, &self.lambda);
        Ok(eval_ore_hom(&specialized, &ring, |i| self.omegas[i - 1].clone(), self.e_plus.clone(), self.e_minus.clone()))
    }

    /// Generator matrices ω₁…ω_{2n+1}, E₊, E₋.
    pub fn generators(&self) -> Vec<ScalarMatrix> {
        let mut g = self.omegas.clone();
        g.push(self.e_plus.clone());
        g.push(self.e_minus.clone());
        g
    }
}

/// The (4h+1)-dimensional quotient of ρ_λ by span{z^ℓ : ℓ ≥ 4h+1} at
/// λ = h + ¼, on the basis z⁰,…,z^{4h}; the sign − negates the parity,
/// which realizes λ = −(h + ¼) with the same E± matrices.
fn pi_h_rank0(two_h: u32, sign: Sign) -> (GaussRat, ScalarMatrix, ScalarMatrix, ScalarMatrix) {
    let lambda_plus = GaussRat::ratio(2 * i64::from(two_h) + 1, 4);
    let d = 2 * two_h as usize + 1;
    let op = |g: VermaGen| {
        let mut m = ScalarMatrix::zeros(d, d);
        for c in 0..d {
            for (r, v) in verma_gen_on(&lambda_plus, g, c as u32, &GaussRat::one()) {
                if (r as usize) < d {
                    m.set(r as usize, c, Scalar::constant(v));
                }
            }
        }
        m
    };
    let (parity, ep, em) = (op(VermaGen::Parity), op(VermaGen::EPlus), op(VermaGen::EMinus));
    match sign {
        Sign::Plus => (lambda_plus, parity, ep, em),
        Sign::Minus => (-lambda_plus, parity.scale(&-Scalar::one()), ep, em),
    }
}

/// π_h for A_λ(n) with λ = ±(h+¼), h = two_h/2: ω_i ↦ S(ω_i) ⊗ π(P),
/// ω_{2n+1} ↦ iⁿ S(ω₁⋯ω_{2n}) ⊗ π(P), E± ↦ I ⊗ π(E±), S the spin
/// representation of C(2n).
pub fn finite_irrep_pi_h(n: usize, two_h: u32, sign: Sign) -> Result<PiH> {
    if two_h > 64 {
        return Err(Error::InvalidParameter(format!("2h = {two_h} is too large")));
    }
    let (lambda, p, ep, em) = pi_h_rank0(two_h, sign);
    let spin = RepDescriptor::Spin { ell: n };
    let sig = spin.signature();
    let spin_of = |cliff: u64| rep_matrix(&spin, &CwElement::monomial(&sig, CwMonomial::new(cliff, &[], &[]), Scalar::one()));
    let mut omegas = Vec::with_capacity(2 * n + 1);
    for i in 1..=2 * n {
        omegas.push(spin_of(1 << (i - 1))?.kron(&p));
    }
    let top = spin_of(clifford::full(2 * n))?.scale(&Scalar::constant(GaussRat::i_pow(n as i64)));
    omegas.push(top.kron(&p));
    let id = ScalarMatrix::identity(1 << n);
    Ok(PiH { n, two_h, sign, lambda, omegas, e_plus: id.kron(&ep), e_minus: id.kron(&em) })
}

/// The defining relations of A_λ(n) on the matrices of π_h.
pub fn pi_h_relations_report(pi: &PiH) -> Report {
    let mut report = Report::new("pi-h");
    let ring = MatrixRing { size: pi.size() };
    let id = ring.one();
    let label = |what: String| format!("n={}, 2h={}, sign={:?}: {what}", pi.n, pi.two_h, pi.sign);
    for (j, wj) in pi.omegas.iter().enumerate() {
        for (k, wk) in pi.omegas.iter().enumerate() {
            let lhs = ring.add(&ring.mul(wj, wk), &ring.mul(wk, wj));
            let rhs = if j == k { id.scale(&Scalar::from_int(2)) } else { ring.zero() };
            report.check_eq(label(format!("w{}w{} + w{}w{}", j + 1, k + 1, k + 1, j + 1)), &lhs, &rhs);
        }
        for (name, e) in [("E+", &pi.e_plus), ("E-", &pi.e_minus)] {
            let lhs = ring.mul(e, wj);
            let rhs = ring.neg(&ring.mul(wj, e));
            report.check_eq(label(format!("{name} w{}", j + 1)), &lhs, &rhs);
        }
    }
    let top = pi.omegas.iter().fold(id.clone(), |acc, w| ring.mul(&acc, w));
    let theta = top.scale(&Scalar::constant(&GaussRat::i_pow(pi.n as i64) * &pi.lambda));
    let rhs = ring.add(&id.scale(&Scalar::ratio(-1, 4)), &theta);
    report.check_eq(label("[E+,E-]".into()), &ring.commutator(&pi.e_plus, &pi.e_minus), &rhs);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::ore::{ore_product, random_ore};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generator_examples() {
        let l = GaussRat::ratio(3, 7);
        let f = ZPoly::monomial(5, GaussRat::one());
        assert_eq!(verma_gen(&l, VermaGen::EMinus, &f), ZPoly::monomial(6, GaussRat::ratio(-1, 2)));
        for two_h in 0..=6u32 {
            let lambda = GaussRat::ratio(2 * i64::from(two_h) + 1, 4);
            let top = ZPoly::monomial(2 * two_h + 1, GaussRat::one());
            assert!(verma_apply(&lambda, &OreElement::e_plus(0), &top).unwrap().is_zero());
        }
        // [ρ⁺, ρ⁻](z²) = (−¼ + λ) z²
        let z2 = ZPoly::monomial(2, GaussRat::one());
        let comm = ore_product(&OreElement::e_plus(0), &OreElement::e_minus(0))
            .unwrap()
            .sub(&ore_product(&OreElement::e_minus(0), &OreElement::e_plus(0)).unwrap())
            .unwrap();
        let expect = z2.scale(&(&GaussRat::ratio(-1, 4) + &l));
        assert_eq!(verma_apply(&l, &comm, &z2).unwrap(), expect);
        assert!(verma_apply(&l, &OreElement::e_plus(1), &z2).is_err());
    }

    #[test]
    fn relations_and_module_law() {
        let l = GaussRat::complex((2, 3), (1, 5));
        assert!(verma_relations_report(&l, 50).passed());
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let a = random_ore(&mut rng, 0, 3, 3, 1);
            let b = random_ore(&mut rng, 0, 3, 3, 1);
            let f = ZPoly::monomial(rng.gen_range(0..6), GaussRat::one());
            let lhs = verma_apply(&l, &ore_product(&a, &b).unwrap(), &f).unwrap();
            let rhs = verma_apply(&l, &a, &verma_apply(&l, &b, &f).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pi_h_examples() {
        let pi = finite_irrep_pi_h(0, 0, Sign::Plus).unwrap();
        assert_eq!(pi.size(), 1);
        assert!(pi.e_plus.is_zero() && pi.e_minus.is_zero());
        assert_eq!(pi.omegas[0], ScalarMatrix::identity(1));
        let pi = finite_irrep_pi_h(0, 0, Sign::Minus).unwrap();
        assert_eq!(pi.omegas[0], ScalarMatrix::identity(1).scale(&-Scalar::one()));
        assert_eq!(finite_irrep_pi_h(1, 1, Sign::Plus).unwrap().size(), 6);
        for n in 0..=1 {
            for two_h in 0..=4 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let pi = finite_irrep_pi_h(n, two_h, sign).unwrap();
                    assert_eq!(pi.size(), (1 << n) * (2 * two_h as usize + 1));
                    let r = pi_h_relations_report(&pi);
                    assert!(r.passed(), "{:?}", r.failures.first());
                }
            }
        }
    }

    #[test]
    fn pi_h_is_a_representation() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let pi = finite_irrep_pi_h(1, 2, Sign::Minus).unwrap();
        for _ in 0..10 {
            let a = random_ore(&mut rng, 1, 3, 3, 1);
            let b = random_ore(&mut rng, 1, 3, 3, 1);
            let lhs = pi.matrix_of(&ore_product(&a, &b).unwrap()).unwrap();
            let rhs = pi.matrix_of(&a).unwrap().mul(&pi.matrix_of(&b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
