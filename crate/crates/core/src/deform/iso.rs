//! A₀(n) ≅ C(2n+1,2) (p = 2E₋, q = 2E₊) and A_Λ(n) ≅ C(2n) ⊗ A_Λ(0)
//! ≅ M_{2ⁿ}(A_Λ(0)).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ore::{OreAlgebra, OreElement, OreMonomial};
use crate::algebra::Algebra;
use crate::clifford;
use crate::cw::{CwElement, CwMonomial, Signature};
use crate::error::{Error, Result};
use crate::periodicity::{tensor_to_matrix, AlgebraMatrix, CliffordTensor, TensorElement, TensorMode};
use crate::scalar::{GaussRat, Scalar};
use crate::star::{star, star_pow};
use crate::words::weyl_order_coeffs;

/// The signature C(2n+1,2) at t = 1.
pub fn a0_signature(n: usize) -> Signature {
    Signature::new(2 * n + 1, 1)
}

/// A₀(n) → C(2n+1,2): ω^I E₊^α E₋^β ↦ ω^I ⋆ (q/2)^α ⋆ (p/2)^β.
pub fn iso_a0_to_cw(a: &OreElement) -> Result<CwElement> {
    if a.max_lambda().unwrap_or(0) > 0 {
        return Err(Error::LambdaTermsPresent);
    }
    let sig = a0_signature(a.rank());
    let half = Scalar::ratio(1, 2);
    let q2 = CwElement::q(&sig, 1)?.scale(&half);
    let p2 = CwElement::p(&sig, 1)?.scale(&half);
    let mut out = CwElement::zero(&sig);
    for (m, c) in a.terms() {
        let w = CwElement::monomial(&sig, CwMonomial::new(m.cliff, &[0], &[0]), Scalar::constant(c.clone()));
        let term = star(&star(&w, &star_pow(&q2, m.e_plus))?, &star_pow(&p2, m.e_minus))?;
        out = out.add(&term)?;
    }
    Ok(out)
}

/// C(2n+1,2) → A₀(n), using the Weyl ordering
/// p^a q^b = Σ_k c_k q^{b−k} p^{a−k} (star powers), which lands directly in
/// normal form: ω^I p^a q^b ↦ Σ_k c_k 2^{a+b−2k} ω^I E₊^{b−k} E₋^{a−k}.
pub fn iso_cw_to_a0(x: &CwElement) -> Result<OreElement> {
    let sig = x.signature();
    if sig.n_bose_pairs != 1 || sig.n_fermi.is_multiple_of(2) || !sig.t.is_one() {
        return Err(Error::WrongSignature { expected: "C(2n+1,2) at t = 1".into(), found: sig.to_string() });
    }
    let n = sig.n_fermi / 2;
    let mut out = OreElement::zero(n);
    for (m, c) in x.terms() {
        let c = c.as_constant().ok_or(Error::LambdaTermsPresent)?;
        let (a, b) = (m.p[0], m.q[0]);
        for (k, ck) in weyl_order_coeffs(a, b) {
            let pow2 = BigRational::from_integer(BigInt::one() << (a + b - 2 * k) as usize);
            let coeff = &c * &GaussRat::from(ck * pow2);
            out.add_term(OreMonomial::new(m.cliff, b - k, a - k, 0), &coeff);
        }
    }
    Ok(out)
}

/// The plain tensor algebra C(2n) ⊗ A_Λ(0).
pub fn periodicity2_target(n: usize) -> CliffordTensor<OreAlgebra> {
    CliffordTensor::new(2 * n, OreAlgebra::generic(0), TensorMode::Plain)
}

/// Evaluates a homomorphism out of A_Λ(n) given images of ω_i and E±;
/// normal-form monomials are already words.
pub fn eval_ore_hom<B: Algebra>(a: &OreElement, target: &B, omega: impl Fn(usize) -> B::Elem, e_plus: B::Elem, e_minus: B::Elem) -> B::Elem {
    let n = a.rank();
    let omegas: Vec<B::Elem> = (1..=2 * n + 1).map(&omega).collect();
    let mut out = target.zero();
    for (m, c) in a.terms() {
        let mut prod = target.one();
        for b in crate::cw::bits(m.cliff) {
            prod = target.mul(&prod, &omegas[b]);
        }
        for _ in 0..m.e_plus {
            prod = target.mul(&prod, &e_plus);
        }
        for _ in 0..m.e_minus {
            prod = target.mul(&prod, &e_minus);
        }
        let coeff = Scalar::monomial(c.clone(), m.lambda);
        out = target.add(&out, &target.scale(&coeff, &prod));
    }
    out
}

/// A_Λ(n) → C(2n) ⊗ A_Λ(0): ω_i ↦ ω_i⊗P (i ≤ 2n), ω_{2n+1} ↦ iⁿ ω₁⋯ω_{2n}⊗P,
/// E± ↦ 1⊗E±, where P = ω₁ of A_Λ(0).
pub fn periodicity2_forward(a: &OreElement) -> TensorElement<OreElement> {
    let n = a.rank();
    let target = periodicity2_target(n);
    let p = OreElement::omega(0, 1).expect("A(0) has w1");
    let omega = |i: usize| {
        if i <= 2 * n {
            target.pure(1 << (i - 1), p.clone())
        } else {
            target.pure(clifford::full(2 * n), p.scale(&GaussRat::i_pow(n as i64)))
        }
    };
    let ep = target.right_elem(OreElement::e_plus(0));
    let em = target.right_elem(OreElement::e_minus(0));
    eval_ore_hom(a, &target, omega, ep, em)
}

/// The inverse: ω_i⊗1 ↦ ω_i P′, 1⊗P ↦ P′, 1⊗E± ↦ E±, with P′ = iⁿ ω₁⋯ω_{2n+1}.
pub fn periodicity2_inverse(n: usize, y: &TensorElement<OreElement>) -> Result<OreElement> {
    let alg = OreAlgebra::generic(n);
    let p_prime = OreElement::parity_element(n);
    let mut out = alg.zero();
    for (left, e) in y.terms() {
        if e.rank() != 0 {
            return Err(Error::RankMismatch(0, e.rank()));
        }
        let mut prod = alg.one();
        for b in crate::cw::bits(left) {
            let w = OreElement::omega(n, b + 1)?;
            prod = alg.mul(&prod, &alg.mul(&w, &p_prime));
        }
        let right = eval_ore_hom(e, &alg, |_| p_prime.clone(), OreElement::e_plus(n), OreElement::e_minus(n));
        out = alg.add(&out, &alg.mul(&prod, &right));
    }
    Ok(out)
}

/// A_Λ(n) → M_{2ⁿ}(A_Λ(0)) through the spin representation of C(2n).
pub fn periodicity2_matrix(a: &OreElement) -> Result<AlgebraMatrix<OreElement>> {
    tensor_to_matrix(&periodicity2_target(a.rank()), &periodicity2_forward(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::ore::{ore_product, random_ore, specialize};
    use crate::periodicity::MatrixAlgebra;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn a0_generator_images() {
        let sig = a0_signature(1);
        assert_eq!(iso_a0_to_cw(&OreElement::e_plus(1)).unwrap(), CwElement::q(&sig, 1).unwrap().scale(&Scalar::ratio(1, 2)));
        assert_eq!(iso_a0_to_cw(&OreElement::omega(1, 2).unwrap()).unwrap(), CwElement::omega(&sig, 2).unwrap());
        assert!(iso_a0_to_cw(&OreElement::lambda(1)).is_err());
    }

    #[test]
    fn a0_round_trip_and_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 0..=1 {
            let sig = a0_signature(n);
            for _ in 0..30 {
                let x = random::cw_element(&mut rng, &sig, 4, 3);
                let ox = iso_cw_to_a0(&x).unwrap();
                assert_eq!(iso_a0_to_cw(&ox).unwrap(), x);
                let a = random_ore(&mut rng, n, 4, 3, 0);
                assert_eq!(iso_cw_to_a0(&iso_a0_to_cw(&a).unwrap()).unwrap(), a);
                let b = random_ore(&mut rng, n, 4, 3, 0);
                let prod = specialize(&ore_product(&a, &b).unwrap(), &GaussRat::from_int(0));
                let rhs = star(&iso_a0_to_cw(&a).unwrap(), &iso_a0_to_cw(&b).unwrap()).unwrap();
                assert_eq!(iso_a0_to_cw(&prod).unwrap(), rhs);
            }
        }
    }

    #[test]
    fn periodicity2_examples() {
        let target = periodicity2_target(1);
        let img = periodicity2_forward(&OreElement::omega(1, 1).unwrap());
        assert_eq!(img, target.pure(1, OreElement::omega(0, 1).unwrap()));
        // θ ↦ 1 ⊗ θ₀
        assert_eq!(periodicity2_forward(&OreElement::theta(1)), target.right_elem(OreElement::theta(0)));
        for n in 1..=2 {
            let alg = OreAlgebra::generic(n);
            for g in alg.generators().into_iter().chain([OreElement::lambda(n)]) {
                assert_eq!(periodicity2_inverse(n, &periodicity2_forward(&g)).unwrap(), g);
            }
        }
    }

    #[test]
    fn periodicity2_is_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let n = 1;
        let target = periodicity2_target(n);
        let mats = MatrixAlgebra::new(2, OreAlgebra::generic(0));
        for _ in 0..20 {
            let a = random_ore(&mut rng, n, 3, 3, 1);
            let b = random_ore(&mut rng, n, 3, 3, 1);
            let ab = ore_product(&a, &b).unwrap();
            let (fa, fb) = (periodicity2_forward(&a), periodicity2_forward(&b));
            assert_eq!(periodicity2_forward(&ab), target.mul(&fa, &fb));
            assert_eq!(periodicity2_inverse(n, &fa).unwrap(), a);
            let lhs = periodicity2_matrix(&ab).unwrap();
            let rhs = mats.mul(&periodicity2_matrix(&a).unwrap(), &periodicity2_matrix(&b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}
