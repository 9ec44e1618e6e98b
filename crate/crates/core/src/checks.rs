//! Report builders for the randomized and exhaustive identity checks that are
//! not tied to a single module: presentations, associativity, representation
//! oracles, the periodicity maps and the bounded-degree probes.

use num_traits::One;
use rand::Rng;

use crate::algebra::{Algebra, CwAlgebra};
use crate::cw::{CwElement, CwMonomial, Signature};
use crate::deform::iso::{iso_a0_to_cw, iso_cw_to_a0, periodicity2_forward, periodicity2_inverse, periodicity2_matrix, periodicity2_target, a0_signature};
use crate::deform::ore::{ore_product, random_ore, specialize, OreAlgebra, OreElement, OreMonomial};
use crate::deform::probe::{center_probe, commutant_dim};
use crate::deform::verma::{finite_irrep_pi_h, verma_apply, Sign, ZPoly};
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseVec};
use crate::periodicity::{
    cw_to_matrix, matrix_star, odd_split, periodicity1_forward, periodicity1_inverse, periodicity1_target, tensor_star,
    MatrixAlgebra,
};
use crate::random;
use crate::report::Report;
use crate::reps::{act, RepDescriptor};
use crate::scalar::{GaussRat, Scalar};
use crate::star::{anticommutator, lie_bracket, omega_product, star};

/// The generator relations of C(n,2k): {ω_i,ω_j} = 2tδ_ij, {ω_i,p_j} =
/// {ω_i,q_j} = 0, [p_i,q_j] = tδ_ij, [p_i,p_j] = [q_i,q_j] = 0.
pub fn presentation_report(sig: &Signature) -> Result<Report> {
    let mut report = Report::new("relations");
    let t = CwElement::scalar(sig, sig.t.clone());
    let zero = CwElement::zero(sig);
    let delta = |i: usize, j: usize| if i == j { t.clone() } else { zero.clone() };
    let omegas: Vec<CwElement> = (1..=sig.n_fermi).map(|i| CwElement::omega(sig, i)).collect::<Result<_>>()?;
    let ps: Vec<CwElement> = (1..=sig.n_bose_pairs).map(|j| CwElement::p(sig, j)).collect::<Result<_>>()?;
    let qs: Vec<CwElement> = (1..=sig.n_bose_pairs).map(|j| CwElement::q(sig, j)).collect::<Result<_>>()?;
    for (i, wi) in omegas.iter().enumerate() {
        for (j, wj) in omegas.iter().enumerate() {
            let rhs = delta(i, j).scale(&Scalar::from_int(2));
            report.check_eq(format!("{{{wi},{wj}}}"), &anticommutator(wi, wj)?, &rhs);
        }
        for b in ps.iter().chain(&qs) {
            report.check_eq(format!("{{{wi},{b}}}"), &anticommutator(wi, b)?, &zero);
        }
    }
    for (i, pi) in ps.iter().enumerate() {
        for (j, qj) in qs.iter().enumerate() {
            report.check_eq(format!("[{pi},{qj}]"), &lie_bracket(pi, qj)?, &delta(i, j));
            report.check_eq(format!("[{pi},{}]", ps[j]), &lie_bracket(pi, &ps[j])?, &zero);
            report.check_eq(format!("[{},{qj}]", qs[i]), &lie_bracket(&qs[i], qj)?, &zero);
        }
    }
    Ok(report)
}

/// (a⋆b)⋆c = a⋆(b⋆c) on random triples.
pub fn star_associativity_report<R: Rng>(rng: &mut R, sig: &Signature, triples: usize, max_deg: u32) -> Result<Report> {
    let mut report = Report::new("associativity");
    for _ in 0..triples {
        let a = random::cw_element(rng, sig, max_deg, 3);
        let b = random::cw_element(rng, sig, max_deg, 3);
        let c = random::cw_element(rng, sig, max_deg, 3);
        let lhs = star(&star(&a, &b)?, &c)?;
        let rhs = star(&a, &star(&b, &c)?)?;
        report.check_eq(format!("a={a}, b={b}, c={c}"), &lhs, &rhs);
    }
    Ok(report)
}

/// Associativity of the A_Λ(n) product on random triples.
pub fn ore_associativity_report<R: Rng>(rng: &mut R, n: usize, triples: usize, max_deg: u32) -> Result<Report> {
    let mut report = Report::new("associativity");
    for _ in 0..triples {
        let a = random_ore(rng, n, max_deg, 3, 1);
        let b = random_ore(rng, n, max_deg, 3, 1);
        let c = random_ore(rng, n, max_deg, 3, 1);
        let lhs = ore_product(&ore_product(&a, &b)?, &c)?;
        let rhs = ore_product(&a, &ore_product(&b, &c)?)?;
        report.check_eq(format!("a={a}, b={b}, c={c}"), &lhs, &rhs);
    }
    Ok(report)
}

/// The representations defined on C(n,2k).
pub fn representations_for(sig: &Signature) -> Vec<RepDescriptor> {
    let (n, k) = (sig.n_fermi, sig.n_bose_pairs);
    let ell = n / 2;
    match (n % 2, k) {
        (0, 0) => vec![RepDescriptor::Spin { ell }],
        (1, 0) => vec![RepDescriptor::SpinPlus { ell }, RepDescriptor::SpinMinus { ell }],
        (0, _) if n == 0 => vec![RepDescriptor::Metaplectic { k }],
        (0, _) => vec![RepDescriptor::SpinMetaplectic { ell, k }],
        _ => vec![RepDescriptor::SpinMetaplecticPlus { ell, k }, RepDescriptor::SpinMetaplecticMinus { ell, k }],
    }
}

/// act(a⋆b, v) = act(a, act(b, v)): the representations act through words in
/// the generators, independently of the star product formula.
pub fn rep_oracle_report<R: Rng>(rng: &mut R, rep: &RepDescriptor, cases: usize, max_deg: u32) -> Result<Report> {
    if !rep.signature().t.is_one() {
        return Err(Error::InvalidParameter("representations need t = 1".into()));
    }
    let sig = rep.signature();
    let mut report = Report::new("rep-oracle");
    for _ in 0..cases {
        let a = random::cw_element(rng, &sig, max_deg, 3);
        let b = random::cw_element(rng, &sig, max_deg, 3);
        let v = random::grass_poly_vector(rng, rep.ell(), rep.k(), 3, 3);
        let lhs = act(rep, &star(&a, &b)?, &v)?;
        let rhs = act(rep, &a, &act(rep, &b, &v)?)?;
        report.check_eq(format!("{rep:?}: a={a}, b={b}, v={v}"), &lhs, &rhs);
    }
    Ok(report)
}

/// C(2m+n,2k) ≅ C(2m) ⊗ C(n,2k): multiplicativity and round trip.
pub fn periodicity1_report<R: Rng>(rng: &mut R, m: usize, n: usize, k: usize, pairs: usize, max_deg: u32) -> Result<Report> {
    let big = Signature::new(2 * m + n, k);
    let target = periodicity1_target(m, n, k);
    let mut report = Report::new("periodicity1");
    let label = format!("m={m}, n={n}, k={k}");
    for _ in 0..pairs {
        let x = random::cw_element(rng, &big, max_deg, 3);
        let y = random::cw_element(rng, &big, max_deg, 3);
        let fx = periodicity1_forward(m, n, k, &x)?;
        let fy = periodicity1_forward(m, n, k, &y)?;
        report.check_eq(format!("{label}: inverse(forward({x}))"), &periodicity1_inverse(m, n, k, &fx)?, &x);
        let fxy = periodicity1_forward(m, n, k, &star(&x, &y)?)?;
        report.check_eq(format!("{label}: forward({x} * {y})"), &fxy, &tensor_star(&target, &fx, &fy));
        let yx = target.mul(&fx, &fy);
        report.check_eq(format!("{label}: inverse({x}' * {y}')"), &periodicity1_inverse(m, n, k, &yx)?, &star(&x, &y)?);
    }
    Ok(report)
}

/// A_Λ(n) ≅ C(2n) ⊗ A_Λ(0) ≅ M_{2ⁿ}(A_Λ(0)).
pub fn periodicity2_report<R: Rng>(rng: &mut R, n: usize, pairs: usize, max_deg: u32) -> Result<Report> {
    let target = periodicity2_target(n);
    let mats = MatrixAlgebra::new(1 << n, OreAlgebra::generic(0));
    let mut report = Report::new("periodicity2");
    for g in OreAlgebra::generic(n).generators().into_iter().chain([OreElement::lambda(n)]) {
        report.check_eq(format!("n={n}: generator {g}"), &periodicity2_inverse(n, &periodicity2_forward(&g))?, &g);
    }
    for _ in 0..pairs {
        let a = random_ore(rng, n, max_deg, 3, 1);
        let b = random_ore(rng, n, max_deg, 3, 1);
        let ab = ore_product(&a, &b)?;
        let (fa, fb) = (periodicity2_forward(&a), periodicity2_forward(&b));
        report.check_eq(format!("n={n}: inverse(forward({a}))"), &periodicity2_inverse(n, &fa)?, &a);
        report.check_eq(format!("n={n}: forward({a} * {b})"), &periodicity2_forward(&ab), &target.mul(&fa, &fb));
        let lhs = periodicity2_matrix(&ab)?;
        let rhs = mats.mul(&periodicity2_matrix(&a)?, &periodicity2_matrix(&b)?);
        report.check_eq(format!("n={n}: matrix({a} * {b})"), &lhs, &rhs);
    }
    Ok(report)
}

/// C(2n+1) ≅ C(2n) ⊕ C(2n): both components are multiplicative and the
/// split is injective on the sampled elements.
pub fn odd_split_report<R: Rng>(rng: &mut R, n: usize, pairs: usize, max_deg: u32) -> Result<Report> {
    let sig = Signature::new(2 * n + 1, 0);
    let mut report = Report::new("odd-split");
    for _ in 0..pairs {
        let x = random::cw_element(rng, &sig, max_deg, 4);
        let y = random::cw_element(rng, &sig, max_deg, 4);
        let (xa, xb) = odd_split(n, &x)?;
        let (ya, yb) = odd_split(n, &y)?;
        let (pa, pb) = odd_split(n, &star(&x, &y)?)?;
        report.check_eq(format!("n={n}: split({x} * {y}).0"), &pa, &star(&xa, &ya)?);
        report.check_eq(format!("n={n}: split({x} * {y}).1"), &pb, &star(&xb, &yb)?);
        report.check(format!("n={n}: split({x}) nonzero"), !(xa.is_zero() && xb.is_zero()), "nonzero", "nonzero");
    }
    Ok(report)
}

/// ω₁⋯ω_{2n} squares to (−1)ⁿ.
pub fn volume_square_report(n: usize) -> Result<Report> {
    let sig = Signature::new(2 * n, 0);
    let v = omega_product(&sig, 1..=2 * n)?;
    let mut report = Report::new("spin-lemma");
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    report.check_eq(format!("(w1...w{})^2", 2 * n), &star(&v, &v)?, &CwElement::scalar(&sig, Scalar::from_int(sign)));
    Ok(report)
}

/// All monomials of C(n_fermi, 2k) of Weyl degree ≤ max_deg.
pub fn cw_basis(sig: &Signature, max_deg: u32) -> Vec<CwMonomial> {
    let k = sig.n_bose_pairs;
    let mut weyl: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..2 * k {
        weyl = weyl
            .into_iter()
            .flat_map(|e| {
                let used: u32 = e.iter().sum();
                (0..=max_deg - used).map(move |d| {
                    let mut e2 = e.clone();
                    e2.push(d);
                    e2
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for cliff in 0..1u64 << sig.n_fermi {
        for e in &weyl {
            out.push(CwMonomial::new(cliff, &e[..k], &e[k..]));
        }
    }
    out
}

/// C(2n,2k) → M_{2ⁿ}(W_{2k}): multiplicativity on random pairs and linear
/// independence of the images of all basis monomials of Weyl degree ≤ basis_deg.
pub fn matrix_iso_report<R: Rng>(rng: &mut R, n: usize, k: usize, pairs: usize, max_deg: u32, basis_deg: u32) -> Result<Report> {
    let sig = Signature::new(2 * n, k);
    let mats = MatrixAlgebra::new(1 << n, CwAlgebra::new(Signature::new(0, k)));
    let mut report = Report::new("matrix-iso");
    for _ in 0..pairs {
        let x = random::cw_element(rng, &sig, max_deg, 3);
        let y = random::cw_element(rng, &sig, max_deg, 3);
        let lhs = cw_to_matrix(n, k, &star(&x, &y)?)?;
        let rhs = mats.mul(&cw_to_matrix(n, k, &x)?, &cw_to_matrix(n, k, &y)?);
        report.check_eq(format!("C({},{}): M({x} * {y})", 2 * n, 2 * k), &lhs, &rhs);
    }
    let basis = cw_basis(&sig, basis_deg);
    let images: Vec<SparseVec<(usize, (CwMonomial, u32))>> = basis
        .iter()
        .map(|m| {
            let img = cw_to_matrix(n, k, &CwElement::monomial(&sig, m.clone(), Scalar::one()))?;
            let mut v = SparseVec::new();
            for (idx, e) in img.entries.iter().enumerate() {
                for (key, c) in e.coeff_vector() {
                    v.insert((idx, key), c);
                }
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let r = rank(&images);
    report.check(format!("C({},{}): rank of {} basis images", 2 * n, 2 * k, basis.len()), r == basis.len(), r, basis.len());
    Ok(report)
}

/// Associativity of M_size(W_{2k}) on random triples.
pub fn matrix_associativity_report<R: Rng>(rng: &mut R, size: usize, k: usize, triples: usize, max_deg: u32) -> Result<Report> {
    let w = Signature::new(0, k);
    let mats = MatrixAlgebra::new(size, CwAlgebra::new(w.clone()));
    let mut report = Report::new("matrix-associativity");
    for _ in 0..triples {
        let mut draw = || {
            let entries: Vec<CwElement> = (0..size * size).map(|_| random::cw_element(rng, &w, max_deg, 2)).collect();
            mats.from_fn(|r, c| entries[r * size + c].clone())
        };
        let (a, b, c) = (draw(), draw(), draw());
        let lhs = matrix_star(&mats, &matrix_star(&mats, &a, &b)?, &c)?;
        let rhs = matrix_star(&mats, &a, &matrix_star(&mats, &b, &c)?)?;
        report.check_eq(format!("a={a}, b={b}, c={c}"), &lhs, &rhs);
    }
    Ok(report)
}

/// A₀(n) ≅ C(2n+1,2) and the Λ⁰ truncation of the deformed product.
pub fn a0_iso_report<R: Rng>(rng: &mut R, n: usize, pairs: usize, max_deg: u32) -> Result<Report> {
    let sig = a0_signature(n);
    let mut report = Report::new("a0-iso");
    let zero = GaussRat::from_int(0);
    for _ in 0..pairs {
        let x = random::cw_element(rng, &sig, max_deg, 3);
        let y = random::cw_element(rng, &sig, max_deg, 3);
        let (ox, oy) = (iso_cw_to_a0(&x)?, iso_cw_to_a0(&y)?);
        report.check_eq(format!("n={n}: round trip {x}"), &iso_a0_to_cw(&ox)?, &x);
        let truncated = specialize(&ore_product(&ox, &oy)?, &zero);
        report.check_eq(format!("n={n}: ({x})({y}) at L=0"), &iso_a0_to_cw(&truncated)?, &star(&x, &y)?);
        let lam0 = ore_product(&ox, &oy)?.lambda_coeff(0);
        report.check_eq(format!("n={n}: L^0 part of ({x})({y})"), &iso_a0_to_cw(&lam0)?, &star(&x, &y)?);
    }
    Ok(report)
}

/// The centralizer of the generators of A_Λ(n) among elements of weight ≤
/// max_deg is spanned by the powers of Λ.
pub fn center_report(n: usize, max_deg: u32) -> Report {
    let mut report = Report::new("center");
    let basis = center_probe(n, max_deg);
    let expected: Vec<OreElement> =
        (0..=max_deg / 2).map(|r| OreElement::monomial(n, OreMonomial::new(0, 0, 0, r), GaussRat::one())).collect();
    let render = |v: &[OreElement]| format!("{{{}}}", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "));
    report.check(format!("n={n}, maxdeg={max_deg}"), basis == expected, render(&basis), render(&expected));
    report.output("basis", render(&basis));
    report
}

/// ρ_{h+¼}(E₊) z^{4h+1} = 0.
pub fn verma_top_report(max_two_h: u32) -> Result<Report> {
    let mut report = Report::new("verma");
    for two_h in 0..=max_two_h {
        let lambda = GaussRat::ratio(2 * i64::from(two_h) + 1, 4);
        let top = ZPoly::monomial(2 * two_h + 1, GaussRat::one());
        let img = verma_apply(&lambda, &OreElement::e_plus(0), &top)?;
        report.check_eq(format!("E+ z^{} at lambda={lambda}", 2 * two_h + 1), &img, &ZPoly::zero());
    }
    Ok(report)
}

/// π_h has scalar commutant (it is irreducible).
pub fn commutant_report(n: usize, max_two_h: u32) -> Result<Report> {
    let mut report = Report::new("commutant");
    for two_h in 0..=max_two_h {
        for sign in [Sign::Plus, Sign::Minus] {
            let pi = finite_irrep_pi_h(n, two_h, sign)?;
            let d = commutant_dim(&pi.generators())?;
            report.check(format!("n={n}, 2h={two_h}, sign={sign:?}, size={}", pi.size()), d == 1, d, 1);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn presentation_at_other_t() {
        let sig = Signature::new(2, 1).with_t(Scalar::from_int(3));
        let r = presentation_report(&sig).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.cases, 4 + 4 + 3);
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(cw_basis(&Signature::new(2, 1), 2).len(), 4 * 6);
        assert_eq!(cw_basis(&Signature::new(1, 0), 5).len(), 2);
    }

    #[test]
    fn small_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matrix_iso_report(&mut rng, 1, 1, 5, 3, 3).unwrap().passed());
        assert!(a0_iso_report(&mut rng, 0, 5, 3).unwrap().passed());
        assert!(center_report(0, 4).passed());
        assert!(commutant_report(0, 2).unwrap().passed());
        assert!(verma_top_report(6).unwrap().passed());
        let rep = RepDescriptor::SpinMetaplecticMinus { ell: 1, k: 1 };
        assert!(rep_oracle_report(&mut rng, &rep, 5, 3).unwrap().passed());
    }
}
