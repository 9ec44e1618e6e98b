//! Hochschild cochains as evaluators (the algebras are infinite
//! dimensional, so cochains are never stored as tensors), the coboundary
//! operator and pointwise predicates on sampled tuples.

use std::fmt;
use std::sync::Arc;

use num_traits::One;
use rand::Rng;

use crate::algebra::{Algebra, CwAlgebra};
use crate::cw::{CwElement, CwMonomial, Signature};
use crate::deform::cocycle::deformation_cochain_c1;
use crate::deform::iso::a0_signature;
use crate::random;
use crate::report::Report;
use crate::scalar::Scalar;

type Rule<E> = Arc<dyn Fn(&[E]) -> E>;

/// A k-linear map A^k → A.
#[derive(Clone)]
pub struct CochainEvaluator<A: Algebra> {
    pub arity: usize,
    pub algebra: A,
    pub name: String,
    rule: Rule<A::Elem>,
}

impl<A: Algebra> fmt::Debug for CochainEvaluator<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}-cochain on {:?}", self.name, self.arity, self.algebra)
    }
}

impl<A: Algebra + 'static> CochainEvaluator<A>
where
    A::Elem: 'static,
{
    pub fn new(arity: usize, algebra: A, name: impl Into<String>, rule: impl Fn(&[A::Elem]) -> A::Elem + 'static) -> Self {
        CochainEvaluator { arity, algebra, name: name.into(), rule: Arc::new(rule) }
    }

    /// Evaluates on exactly `arity` arguments.
    pub fn eval(&self, args: &[A::Elem]) -> A::Elem {
        assert_eq!(args.len(), self.arity, "{} takes {} arguments", self.name, self.arity);
        (self.rule)(args)
    }

    /// The 0-cochain with value a.
    pub fn constant(algebra: A, a: A::Elem) -> Self {
        Self::new(0, algebra, format!("{a}"), move |_| a.clone())
    }

    pub fn zero(arity: usize, algebra: A) -> Self {
        let z = algebra.zero();
        Self::new(arity, algebra, "0", move |_| z.clone())
    }

    /// The algebra product as a 2-cochain.
    pub fn multiplication(algebra: A) -> Self {
        let alg = algebra.clone();
        Self::new(2, algebra, "m", move |a| alg.mul(&a[0], &a[1]))
    }

    pub fn identity(algebra: A) -> Self {
        Self::new(1, algebra, "id", |a| a[0].clone())
    }

    /// dΩ(a₁,…,a_{k+1}) = a₁Ω(a₂,…) + Σᵢ (−1)ⁱ Ω(…, aᵢa_{i+1}, …)
    /// + (−1)^{k+1} Ω(a₁,…,a_k) a_{k+1}; for a 0-cochain a this is −ad(a).
    pub fn coboundary(&self) -> Self {
        let omega = self.clone();
        let k = self.arity;
        let alg = self.algebra.clone();
        Self::new(k + 1, self.algebra.clone(), format!("d({})", self.name), move |a| {
            let mut acc = alg.mul(&a[0], &omega.eval(&a[1..]));
            for i in 0..k {
                let mut args: Vec<A::Elem> = Vec::with_capacity(k);
                args.extend_from_slice(&a[..i]);
                args.push(alg.mul(&a[i], &a[i + 1]));
                args.extend_from_slice(&a[i + 2..]);
                let term = omega.eval(&args);
                acc = if i % 2 == 0 { alg.sub(&acc, &term) } else { alg.add(&acc, &term) };
            }
            let last = alg.mul(&omega.eval(&a[..k]), &a[k]);
            if k.is_multiple_of(2) {
                alg.sub(&acc, &last)
            } else {
                alg.add(&acc, &last)
            }
        })
    }
}

fn tuple_label<E: fmt::Display>(args: &[E]) -> String {
    let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// dΩ = 0 on every sample.
pub fn is_cocycle<A: Algebra + 'static>(omega: &CochainEvaluator<A>, samples: &[Vec<A::Elem>]) -> Report
where
    A::Elem: 'static,
{
    let d = omega.coboundary();
    let mut report = Report::new(format!("cocycle:{}", omega.name));
    let zero = omega.algebra.zero();
    for s in samples {
        report.check_eq(tuple_label(s), &d.eval(s), &zero);
    }
    report
}

/// d(dΩ) = 0 on every sample (tuples of length arity + 2).
pub fn d_squared_check<A: Algebra + 'static>(omega: &CochainEvaluator<A>, samples: &[Vec<A::Elem>]) -> Report
where
    A::Elem: 'static,
{
    let dd = omega.coboundary().coboundary();
    let mut report = Report::new(format!("d-squared:{}", omega.name));
    let zero = omega.algebra.zero();
    for s in samples {
        report.check_eq(tuple_label(s), &dd.eval(s), &zero);
    }
    report
}

/// Arguments, a replacement element, and a scalar for one linearity probe.
pub type LinearitySample<E> = (Vec<E>, E, Scalar);

/// Additivity and homogeneity in every slot: Ω(…, a + c·a′, …) =
/// Ω(…, a, …) + c·Ω(…, a′, …).
pub fn linearity_check<A: Algebra + 'static>(
    omega: &CochainEvaluator<A>,
    samples: &[LinearitySample<A::Elem>],
) -> Report
where
    A::Elem: 'static,
{
    let alg = &omega.algebra;
    let mut report = Report::new(format!("linearity:{}", omega.name));
    for (args, other, c) in samples {
        for slot in 0..omega.arity {
            let mut mixed = args.clone();
            mixed[slot] = alg.add(&args[slot], &alg.scale(c, other));
            let mut swapped = args.clone();
            swapped[slot] = other.clone();
            let rhs = alg.add(&omega.eval(args), &alg.scale(c, &omega.eval(&swapped)));
            report.check_eq(format!("slot {slot} of {}", tuple_label(args)), &omega.eval(&mixed), &rhs);
        }
    }
    report
}

/// The conditions for a normalized cochain relative to a subalgebra S:
/// Ω(Ca₁, …) = CΩ(a₁, …), Ω(…, aᵢC, a_{i+1}, …) = Ω(…, aᵢ, Ca_{i+1}, …),
/// Ω(…, a_ℓC) = Ω(…, a_ℓ)C, and Ω = 0 when some argument lies in S; checked
/// for C in the given basis of S and every sample.
pub fn relative_normalized_check<A: Algebra + 'static>(
    omega: &CochainEvaluator<A>,
    subalgebra: &[A::Elem],
    samples: &[Vec<A::Elem>],
) -> Report
where
    A::Elem: 'static,
{
    let alg = &omega.algebra;
    let l = omega.arity;
    let zero = alg.zero();
    let mut report = Report::new(format!("relative:{}", omega.name));
    for s in samples {
        let value = omega.eval(s);
        for c in subalgebra {
            let label = |what: &str| format!("{what}, C={c}, args={}", tuple_label(s));
            let mut left = s.clone();
            left[0] = alg.mul(c, &s[0]);
            report.check_eq(label("left"), &omega.eval(&left), &alg.mul(c, &value));
            for i in 0..l.saturating_sub(1) {
                let mut a = s.clone();
                a[i] = alg.mul(&s[i], c);
                let mut b = s.clone();
                b[i + 1] = alg.mul(c, &s[i + 1]);
                report.check_eq(label(&format!("middle {i}")), &omega.eval(&a), &omega.eval(&b));
            }
            let mut right = s.clone();
            right[l - 1] = alg.mul(&s[l - 1], c);
            report.check_eq(label("right"), &omega.eval(&right), &alg.mul(&value, c));
            for i in 0..l {
                let mut a = s.clone();
                a[i] = c.clone();
                report.check_eq(label(&format!("vanishing {i}")), &omega.eval(&a), &zero);
            }
        }
    }
    report
}

/// C₁ of the deformation A_Λ(n) as a 2-cochain on C(2n+1,2).
pub fn c1_cochain(n: usize) -> CochainEvaluator<CwAlgebra> {
    CochainEvaluator::new(2, CwAlgebra::new(a0_signature(n)), "C1", |a| {
        deformation_cochain_c1(&a[0], &a[1]).expect("arguments live in C(2n+1,2)")
    })
}

/// The span of 1, ω₁, …, ω_m inside C(n,2k) closed under products: the
/// basis ω^I of the Clifford subalgebra on the first m generators.
pub fn clifford_subalgebra_basis(sig: &Signature, m: usize) -> Vec<CwElement> {
    (0..1u64 << m)
        .map(|cliff| CwElement::monomial(sig, CwMonomial { cliff, ..CwMonomial::unit(sig.n_bose_pairs) }, Scalar::one()))
        .collect()
}

/// A random linear map supported on finitely many monomials: each of
/// `support` random monomials gets a random image, all others map to 0.
pub fn random_finite_cochain<R: Rng>(rng: &mut R, sig: &Signature, support: usize, max_deg: u32) -> CochainEvaluator<CwAlgebra> {
    let table: Vec<(CwMonomial, CwElement)> = (0..support)
        .map(|_| (random::cw_monomial(rng, sig, max_deg), random::cw_element(rng, sig, max_deg, 3)))
        .collect();
    let alg = CwAlgebra::new(sig.clone());
    let zero = alg.zero();
    CochainEvaluator::new(1, alg, "f", move |a| {
        let mut out = zero.clone();
        for (m, c) in a[0].terms() {
            if let Some((_, img)) = table.iter().find(|(k, _)| k == m) {
                out = out.add(&img.scale(c)).expect("same signature");
            }
        }
        out
    })
}

/// The full hochschild suite on C(2n+1,2): d² = 0 for a finitely supported
/// 1-cochain, the multiplication and C₁; dC₁ = 0; linearity of C₁; the
/// relative-normalized conditions for C₁ with respect to C(1) when n = 0,
/// and that a deliberately broken cochain is flagged.
pub fn hochschild_suite<R: Rng>(rng: &mut R, n: usize, cases: usize, max_deg: u32) -> Report {
    let sig = a0_signature(n);
    let mut report = Report::new("hochschild");
    let tuple = |rng: &mut R, len: usize| -> Vec<CwElement> { (0..len).map(|_| random::cw_element(rng, &sig, max_deg, 2)).collect() };

    let f = random_finite_cochain(rng, &sig, 12, max_deg);
    let samples: Vec<Vec<CwElement>> = (0..cases).map(|_| tuple(rng, 3)).collect();
    report.absorb(d_squared_check(&f, &samples));

    let m = CochainEvaluator::multiplication(CwAlgebra::new(sig.clone()));
    report.absorb(is_cocycle(&m, &samples));

    let c1 = c1_cochain(n);
    report.absorb(is_cocycle(&c1, &samples));
    let quads: Vec<Vec<CwElement>> = (0..cases.min(20)).map(|_| tuple(rng, 4)).collect();
    report.absorb(d_squared_check(&c1, &quads));

    let lin: Vec<(Vec<CwElement>, CwElement, Scalar)> = (0..cases.min(20))
        .map(|_| (tuple(rng, 2), random::cw_element(rng, &sig, max_deg, 2), Scalar::constant(random::gauss(rng))))
        .collect();
    report.absorb(linearity_check(&c1, &lin));

    if n == 0 {
        let sub = clifford_subalgebra_basis(&sig, 1);
        let mut pairs: Vec<Vec<CwElement>> = Vec::new();
        let gens = [CwElement::p(&sig, 1).expect("p1"), CwElement::q(&sig, 1).expect("q1")];
        for x in &gens {
            for y in &gens {
                pairs.push(vec![x.clone(), y.clone()]);
            }
        }
        pairs.extend((0..cases.min(20)).map(|_| tuple(rng, 2)));
        report.absorb(relative_normalized_check(&c1, &sub, &pairs));

        let alg = CwAlgebra::new(sig.clone());
        let broken = CochainEvaluator::new(2, alg, "broken", |a: &[CwElement]| {
            let c = &a[0].constant_term() * &a[1].constant_term();
            CwElement::scalar(a[0].signature(), c)
        });
        let flagged = !relative_normalized_check(&broken, &sub, &pairs).passed();
        report.check("broken cochain is flagged", flagged, flagged, true);
    }
    report.output("c1_pq", deformation_cochain_c1(&CwElement::p(&sig, 1).expect("p1"), &CwElement::q(&sig, 1).expect("q1")).expect("C(2n+1,2)"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg() -> CwAlgebra {
        CwAlgebra::new(Signature::new(1, 1))
    }

    #[test]
    fn coboundary_examples() {
        let a = alg();
        let one = a.one();
        let d1 = CochainEvaluator::constant(a.clone(), one.clone()).coboundary();
        let p = CwElement::p(&a.sig, 1).unwrap();
        let w = CwElement::omega(&a.sig, 1).unwrap();
        assert!(d1.eval(std::slice::from_ref(&p)).is_zero());
        // d(w) = −ad(w)
        let dw = CochainEvaluator::constant(a.clone(), w.clone()).coboundary();
        assert_eq!(dw.eval(std::slice::from_ref(&p)), a.commutator(&w, &p).neg());
        let did = CochainEvaluator::identity(a.clone()).coboundary();
        assert_eq!(did.eval(&[p.clone(), w.clone()]), a.mul(&p, &w));
        let dm = CochainEvaluator::multiplication(a.clone()).coboundary();
        assert!(dm.eval(&[p.clone(), w.clone(), p.clone()]).is_zero());
        assert!(CochainEvaluator::zero(2, a).coboundary().eval(&[p.clone(), w, one]).is_zero());
    }

    #[test]
    fn suite_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in 0..=1 {
            let r = hochschild_suite(&mut rng, n, 15, 3);
            assert!(r.passed(), "n={n}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn broken_cochain_is_flagged() {
        let sig = a0_signature(0);
        let a = CwAlgebra::new(sig.clone());
        let broken = CochainEvaluator::new(2, a, "broken", |x: &[CwElement]| {
            CwElement::scalar(x[0].signature(), &x[0].constant_term() * &x[1].constant_term())
        });
        let one = CwElement::one(&sig);
        let r = relative_normalized_check(&broken, &clifford_subalgebra_basis(&sig, 1), &[vec![one.clone(), one]]);
        assert!(!r.passed());
    }
}
