//! Seeded generators for randomized identity checks.

use rand::Rng;

use crate::cw::{CwElement, CwMonomial, Signature};
use crate::scalar::{GaussRat, Scalar};

/// A small nonzero Gaussian rational.
pub fn gauss<R: Rng>(rng: &mut R) -> GaussRat {
    loop {
        let re = (rng.gen_range(-3..=3), rng.gen_range(1..=2));
        let im = if rng.gen_bool(0.3) { (rng.gen_range(-2..=2), 1) } else { (0, 1) };
        let c = GaussRat::complex(re, im);
        if !num_traits::Zero::is_zero(&c) {
            return c;
        }
    }
}

/// A random monomial of Z-degree at most `max_deg`.
pub fn cw_monomial<R: Rng>(rng: &mut R, sig: &Signature, max_deg: u32) -> CwMonomial {
    let target = rng.gen_range(0..=max_deg);
    let mut m = CwMonomial::unit(sig.n_bose_pairs);
    let slots = sig.n_fermi + 2 * sig.n_bose_pairs;
    if slots == 0 {
        return m;
    }
    for _ in 0..target {
        let s = rng.gen_range(0..slots);
        if s < sig.n_fermi {
            m.cliff |= 1 << s;
        } else {
            let j = (s - sig.n_fermi) / 2;
            if (s - sig.n_fermi).is_multiple_of(2) {
                m.p[j] += 1;
            } else {
                m.q[j] += 1;
            }
        }
    }
    m
}

/// A random element with up to `max_terms` terms of Z-degree ≤ `max_deg`.
pub fn cw_element<R: Rng>(rng: &mut R, sig: &Signature, max_deg: u32, max_terms: usize) -> CwElement {
    let n = rng.gen_range(1..=max_terms.max(1));
    CwElement::from_terms(sig, (0..n).map(|_| (cw_monomial(rng, sig, max_deg), Scalar::constant(gauss(rng)))))
}

/// A random element whose terms all share one Δ₂-parity.
pub fn cw_element_delta2<R: Rng>(rng: &mut R, sig: &Signature, max_deg: u32, max_terms: usize, parity: u32) -> CwElement {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut terms = Vec::new();
    while terms.len() < n {
        let m = cw_monomial(rng, sig, max_deg);
        if m.weyl_degree() % 2 == parity {
            terms.push((m, Scalar::constant(gauss(rng))));
        } else if sig.n_bose_pairs == 0 || (parity == 1 && max_deg == 0) {
            break;
        }
    }
    CwElement::from_terms(sig, terms)
}

/// A random vector of Λ(ξ₁…ξ_ell) ⊗ C[x₁…x_k] with polynomial degree ≤ `max_deg`.
pub fn grass_poly_vector<R: Rng>(rng: &mut R, ell: usize, k: usize, max_deg: u32, max_terms: usize) -> crate::reps::GrassPolyVector {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut out = crate::reps::GrassPolyVector::zero(ell, k);
    for _ in 0..n {
        let grass: u64 = rng.gen_range(0..1u64 << ell);
        let mut poly = vec![0u32; k];
        for _ in 0..rng.gen_range(0..=max_deg) {
            if k > 0 {
                poly[rng.gen_range(0..k)] += 1;
            }
        }
        out = out.add(&crate::reps::GrassPolyVector::basis(ell, grass, &poly).scale(&Scalar::constant(gauss(rng))));
    }
    out
}
