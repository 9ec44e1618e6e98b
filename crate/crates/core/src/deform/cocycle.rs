//! The first-order term C₁ of the deformation A_Λ(n) of C(2n+1,2):
//! a ⋆_Λ b = ab + Λ C₁(a,b) + O(Λ²), transported back to C(2n+1,2).

use num_traits::Zero;
use rand::Rng;

use super::iso::{a0_signature, iso_a0_to_cw, iso_cw_to_a0};
use super::ore::ore_product;
use crate::cw::CwElement;
use crate::error::{Error, Result};
use crate::random;
use crate::report::Report;
use crate::scalar::{GaussRat, Scalar};
use crate::star::{omega_product, poisson, star};

/// The coefficient of Λ^order in the deformed product of a and b.
pub fn deformation_term(order: u32, a: &CwElement, b: &CwElement) -> Result<CwElement> {
    let prod = ore_product(&iso_cw_to_a0(a)?, &iso_cw_to_a0(b)?)?;
    iso_a0_to_cw(&prod.lambda_coeff(order))
}

/// C₁(a, b).
pub fn deformation_cochain_c1(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    deformation_term(1, a, b)
}

/// a C₁(b,c) − C₁(ab,c) + C₁(a,bc) − C₁(a,b) c = 0 on random triples.
pub fn cocycle_law_report<R: Rng>(rng: &mut R, n: usize, triples: usize, max_deg: u32) -> Result<Report> {
    let sig = a0_signature(n);
    let mut report = Report::new("cocycle");
    for _ in 0..triples {
        let a = random::cw_element(rng, &sig, max_deg, 3);
        let b = random::cw_element(rng, &sig, max_deg, 3);
        let c = random::cw_element(rng, &sig, max_deg, 3);
        let lhs = star(&a, &deformation_cochain_c1(&b, &c)?)?
            .sub(&deformation_cochain_c1(&star(&a, &b)?, &c)?)?
            .add(&deformation_cochain_c1(&a, &star(&b, &c)?)?)?
            .sub(&star(&deformation_cochain_c1(&a, &b)?, &c)?)?;
        report.check_eq(format!("a={a}, b={b}, c={c}"), &lhs, &CwElement::zero(&sig));
    }
    Ok(report)
}

/// Compares C₁ on V × V with s(X,Y) iⁿ ω₁⋯ω_{2n+1}, s(X,Y) = {X,Y}:
/// C₁ vanishes whenever an argument lies in V₀, and the antisymmetrization
/// ½(C₁(X,Y) − C₁(Y,X)) on V₁ × V₁ is a single multiple κ of that value.
/// Returns κ with the report.
pub fn compare_cocycle(n: usize) -> Result<(GaussRat, Report)> {
    let sig = a0_signature(n);
    let mut report = Report::new("cocycle-compare");
    let v0: Vec<CwElement> = (1..=2 * n + 1).map(|i| CwElement::omega(&sig, i)).collect::<Result<_>>()?;
    let v1 = vec![CwElement::p(&sig, 1)?, CwElement::q(&sig, 1)?];
    let zero = CwElement::zero(&sig);
    for x in &v0 {
        for y in v0.iter().chain(&v1) {
            report.check_eq(format!("C1({x},{y})"), &deformation_cochain_c1(x, y)?, &zero);
            report.check_eq(format!("C1({y},{x})"), &deformation_cochain_c1(y, x)?, &zero);
        }
    }
    let top = omega_product(&sig, 1..=2 * n + 1)?.scale(&Scalar::constant(GaussRat::i_pow(n as i64)));
    let (top_mono, top_coeff) = top.terms().next().map(|(m, c)| (m.clone(), c.coeff(0))).expect("nonzero");
    let half = Scalar::ratio(1, 2);
    let alt = |x: &CwElement, y: &CwElement| -> Result<CwElement> {
        Ok(deformation_cochain_c1(x, y)?.sub(&deformation_cochain_c1(y, x)?)?.scale(&half))
    };
    let mut kappa: Option<GaussRat> = None;
    for x in &v1 {
        for y in &v1 {
            let a = alt(x, y)?;
            report.check_eq(format!("Alt({x},{y}) + Alt({y},{x})"), &a.add(&alt(y, x)?)?, &zero);
            report.output(format!("C1({x},{y})"), deformation_cochain_c1(x, y)?);
            let s = poisson(x, y)?.constant_term().as_constant().unwrap_or_default();
            if s.is_zero() {
                report.check_eq(format!("Alt({x},{y})"), &a, &zero);
                continue;
            }
            let ratio = &a.coeff(&top_mono).coeff(0) * &(&s * &top_coeff).inv().expect("nonzero");
            let expected = top.scale(&Scalar::constant(&ratio * &s));
            if a != expected {
                return Err(Error::NoProportionality(format!("Alt({x},{y}) = {a} is not a multiple of {top}")));
            }
            match &kappa {
                None => kappa = Some(ratio),
                Some(k) if *k != ratio => {
                    return Err(Error::NoProportionality(format!("constants {k} and {ratio} differ")));
                }
                Some(_) => {}
            }
        }
    }
    let kappa = kappa.ok_or_else(|| Error::NoProportionality("no nonzero pairing on V1".into()))?;
    if kappa.is_zero() {
        return Err(Error::NoProportionality("the cocycle vanishes on V1 x V1".into()));
    }
    report.output("constant", &kappa);
    Ok((kappa, report))
}
