//! The osp(n+1,2k) inside C(n,2k): the generators V = V₀ ⊕ V₁ (ω's and
//! p, q's), the Lie superalgebra g = V ⊕ [V,V] they span under the Δ₂ super
//! bracket, the parastatistics relations, and the twisted adjoint action ad′
//! on H = C ⊕ V with its invariant form.

use num_traits::{One, Zero};

use crate::cw::{CwElement, Signature};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::report::Report;
use crate::scalar::{GaussRat, Scalar};
use crate::star::{delta1, delta2, poisson, star, super_bracket};

/// Where a basis element of g comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    V0,
    V1,
    V0V0,
    V1V1,
    V0V1,
}

impl Component {
    pub fn is_even(self) -> bool {
        matches!(self, Component::V0 | Component::V0V0 | Component::V1V1)
    }
}

#[derive(Clone, Debug)]
pub struct OspContext {
    pub signature: Signature,
    pub v0_basis: Vec<CwElement>,
    pub v1_basis: Vec<CwElement>,
}

impl OspContext {
    pub fn new(n: usize, k: usize) -> Self {
        let signature = Signature::new(n, k);
        let v0_basis = (1..=n).map(|i| CwElement::omega(&signature, i).expect("in range")).collect();
        let v1_basis = (1..=k)
            .flat_map(|j| [CwElement::p(&signature, j), CwElement::q(&signature, j)])
            .map(|e| e.expect("in range"))
            .collect();
        OspContext { signature, v0_basis, v1_basis }
    }

    pub fn n(&self) -> usize {
        self.signature.n_fermi
    }

    pub fn k(&self) -> usize {
        self.signature.n_bose_pairs
    }

    /// V₀ followed by V₁.
    pub fn v_basis(&self) -> Vec<CwElement> {
        self.v0_basis.iter().chain(&self.v1_basis).cloned().collect()
    }

    /// C ⊕ V with 1 first.
    pub fn h_basis(&self) -> Vec<CwElement> {
        std::iter::once(CwElement::one(&self.signature)).chain(self.v_basis()).collect()
    }

    /// Splits an element of H into its constant and its V-part; errors if
    /// the element leaves H.
    fn h_parts(&self, x: &CwElement) -> Result<(Scalar, CwElement)> {
        if x.terms().any(|(m, _)| m.z_degree() > 1) {
            return Err(Error::InvalidParameter(format!("{x} is not in C ⊕ V")));
        }
        let c = x.constant_term();
        let v = x.sub(&CwElement::scalar(&self.signature, c.clone()))?;
        Ok((c, v))
    }

    /// (x|y) on H: (1|1) = −2, (1|V) = 0 and (X|Y) = {X,Y} on V.
    pub fn form(&self, x: &CwElement, y: &CwElement) -> Result<Scalar> {
        let (x0, xv) = self.h_parts(x)?;
        let (y0, yv) = self.h_parts(y)?;
        let pv = poisson(&xv, &yv)?;
        Ok(&(&x0 * &y0).scale(&GaussRat::from_int(-2)) + &pv.constant_term())
    }

    pub fn in_h(&self, x: &CwElement) -> bool {
        self.h_parts(x).is_ok()
    }
}

/// A basis of g with the component each element came from.
#[derive(Clone, Debug)]
pub struct OspBasis {
    pub elements: Vec<(Component, CwElement)>,
}

impl OspBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn component_dim(&self, c: Component) -> usize {
        self.elements.iter().filter(|(k, _)| *k == c).count()
    }

    /// (even, odd) dimensions.
    pub fn graded_dims(&self) -> (usize, usize) {
        let even = self.elements.iter().filter(|(c, _)| c.is_even()).count();
        (even, self.dim() - even)
    }
}

/// dim osp(n+1,2k) = n(n+1)/2 + 2(n+1)k + k(2k+1).
pub fn expected_dim(n: usize, k: usize) -> usize {
    n * (n + 1) / 2 + 2 * (n + 1) * k + k * (2 * k + 1)
}

/// A basis of span(V ∪ [V,V]), chosen greedily from V₀, V₁, [V₀,V₀],
/// [V₁,V₁], [V₀,V₁] in that order so that every element is homogeneous.
pub fn build_g(ctx: &OspContext) -> OspBasis {
    let bracket = |a: &CwElement, b: &CwElement| super_bracket(a, b).expect("generators are homogeneous");
    let mut candidates: Vec<(Component, CwElement)> = Vec::new();
    candidates.extend(ctx.v0_basis.iter().map(|x| (Component::V0, x.clone())));
    candidates.extend(ctx.v1_basis.iter().map(|x| (Component::V1, x.clone())));
    for (c, xs, ys) in [
        (Component::V0V0, &ctx.v0_basis, &ctx.v0_basis),
        (Component::V1V1, &ctx.v1_basis, &ctx.v1_basis),
        (Component::V0V1, &ctx.v0_basis, &ctx.v1_basis),
    ] {
        for x in xs.iter() {
            for y in ys.iter() {
                candidates.push((c, bracket(x, y)));
            }
        }
    }
    let mut ech = Echelon::new();
    let elements = candidates.into_iter().filter(|(_, e)| ech.insert(e.coeff_vector()).is_ok()).collect();
    OspBasis { elements }
}

/// [[X,Y],Z] = 2({Y,Z}X − (−1)^{Δ₂(X)Δ₂(Y)}{X,Z}Y) on all ordered triples
/// of generators.
pub fn verify_ps(ctx: &OspContext) -> Result<Report> {
    let mut report = Report::new("parastat");
    let v = ctx.v_basis();
    let two = Scalar::from_int(2);
    for x in &v {
        for y in &v {
            let xy = super_bracket(x, y)?;
            let sign = if delta2(x)? & delta2(y)? == 1 { -Scalar::one() } else { Scalar::one() };
            for z in &v {
                let lhs = super_bracket(&xy, z)?;
                let first = star(&poisson(y, z)?, x)?;
                let second = star(&poisson(x, z)?, y)?.scale(&sign);
                let rhs = first.sub(&second)?.scale(&two);
                report.check_eq(format!("X={x}, Y={y}, Z={z}"), &lhs, &rhs);
            }
        }
    }
    Ok(report)
}

/// Dimensions of g against osp(n+1,2k), plus closure [g,g] ⊆ g.
pub fn verify_g(ctx: &OspContext) -> Result<Report> {
    let (n, k) = (ctx.n(), ctx.k());
    let mut report = Report::new("osp-algebra");
    let g = build_g(ctx);
    report.output("dim", g.dim());
    report.check_eq("dim g", &g.dim(), &expected_dim(n, k));
    report.check_eq("dim [V0,V0]", &g.component_dim(Component::V0V0), &(n * n.saturating_sub(1) / 2));
    report.check_eq("dim [V1,V1]", &g.component_dim(Component::V1V1), &(k * (2 * k + 1)));
    report.check_eq("dim [V0,V1]", &g.component_dim(Component::V0V1), &(2 * n * k));
    let mut span = Echelon::new();
    for (_, e) in &g.elements {
        span.insert(e.coeff_vector()).expect("basis is independent");
    }
    for (_, a) in &g.elements {
        for (_, b) in &g.elements {
            let c = super_bracket(a, b)?;
            report.check(format!("[{a}, {b}] in g"), span.contains(&c.coeff_vector()), &c, "span(g)");
        }
    }
    Ok(report)
}

/// ad′(a)(b) = a⋆b − (−1)^{Δ₂(a)Δ₂(b)+Δ₁(a)} b⋆a for homogeneous a, b.
pub fn twisted_adjoint(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    let exp = delta2(a)? * delta2(b)? + delta1(a)?;
    let ab = star(a, b)?;
    let ba = star(b, a)?;
    if exp % 2 == 0 {
        ab.sub(&ba)
    } else {
        ab.add(&ba)
    }
}

/// [`twisted_adjoint`] extended bilinearly over homogeneous parts
/// (a by (Δ₁, Δ₂), b by Δ₂).
pub fn twisted_adjoint_split(a: &CwElement, b: &CwElement) -> Result<CwElement> {
    a.check_same(b)?;
    let mut out = CwElement::zero(a.signature());
    for pa in a.split_by(|m| (m.z_degree() % 2, m.weyl_degree() % 2)).values() {
        for pb in b.split_by(|m| m.weyl_degree() % 2).values() {
            out = out.add(&twisted_adjoint(pa, pb)?)?;
        }
    }
    Ok(out)
}

/// Stability ad′(g)(H) ⊆ H, the skew-invariance
/// (ad′(X)(Z)|T) = −(−1)^{Δ₂(Z)Δ₂(X)}(Z|ad′(X)(T)), and that ad′ is a
/// representation of g on H:
/// ad′([a,b]) = ad′(a)ad′(b) − (−1)^{Δ₂(a)Δ₂(b)}ad′(b)ad′(a).
pub fn verify_invariance(ctx: &OspContext) -> Result<Report> {
    let mut report = Report::new("twisted-adjoint");
    let g = build_g(ctx);
    let h = ctx.h_basis();
    for (_, x) in &g.elements {
        for z in &h {
            let image = twisted_adjoint(x, z)?;
            if !report.check(format!("ad'({x})({z}) in H"), ctx.in_h(&image), &image, "C + V") {
                continue;
            }
            for t in &h {
                let lhs = ctx.form(&image, t)?;
                let sign = if delta2(z)? & delta2(x)? == 1 { Scalar::one() } else { -Scalar::one() };
                let rhs = &sign * &ctx.form(z, &twisted_adjoint(x, t)?)?;
                report.check_eq(format!("X={x}, Z={z}, T={t}"), &lhs, &rhs);
            }
        }
    }
    for (_, a) in &g.elements {
        for (_, b) in &g.elements {
            let ab = super_bracket(a, b)?;
            let sign = if delta2(a)? & delta2(b)? == 1 { -Scalar::one() } else { Scalar::one() };
            for v in &h {
                let lhs = twisted_adjoint_split(&ab, v)?;
                let first = twisted_adjoint(a, &twisted_adjoint(b, v)?)?;
                let second = twisted_adjoint(b, &twisted_adjoint(a, v)?)?;
                let rhs = first.sub(&second.scale(&sign))?;
                report.check_eq(format!("ad'([{a}, {b}])({v})"), &lhs, &rhs);
            }
        }
    }
    Ok(report)
}

/// Whether the form on H is nondegenerate (its Gram matrix at Λ⁰ has full rank).
pub fn form_is_nondegenerate(ctx: &OspContext) -> Result<bool> {
    let h = ctx.h_basis();
    let mut ech = Echelon::new();
    for x in &h {
        let row: crate::linalg::SparseVec<usize> = h
            .iter()
            .enumerate()
            .filter_map(|(j, y)| {
                let c = ctx.form(x, y).ok()?.coeff(0);
                (!c.is_zero()).then_some((j, c))
            })
            .collect();
        if ech.insert(row).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for ((n, k), d) in [((1, 1), 8), ((2, 1), 12), ((1, 0), 1), ((3, 1), 17), ((1, 2), 19)] {
            let g = build_g(&OspContext::new(n, k));
            assert_eq!(g.dim(), d, "(n,k)=({n},{k})");
            assert_eq!(expected_dim(n, k), d);
        }
    }

    #[test]
    fn ps_example() {
        let ctx = OspContext::new(0, 1);
        let (p, q) = (ctx.v1_basis[0].clone(), ctx.v1_basis[1].clone());
        let lhs = super_bracket(&super_bracket(&p, &q).unwrap(), &p).unwrap();
        assert_eq!(lhs, p.scale(&Scalar::from_int(-2)));
        assert!(verify_ps(&ctx).unwrap().passed());
    }

    #[test]
    fn twisted_adjoint_examples() {
        let ctx = OspContext::new(1, 1);
        let one = CwElement::one(&ctx.signature);
        let w = &ctx.v0_basis[0];
        let (p, q) = (&ctx.v1_basis[0], &ctx.v1_basis[1]);
        assert_eq!(twisted_adjoint(p, &one).unwrap(), p.scale(&Scalar::from_int(2)));
        assert_eq!(twisted_adjoint(w, w).unwrap(), one.scale(&Scalar::from_int(2)));
        assert_eq!(twisted_adjoint(p, q).unwrap(), one);
        assert_eq!(twisted_adjoint(w, &one).unwrap(), w.scale(&Scalar::from_int(2)));
        let mixed = w.add(p).unwrap();
        assert!(twisted_adjoint(&mixed, q).is_err());
        assert_eq!(
            twisted_adjoint_split(&mixed, q).unwrap(),
            twisted_adjoint(w, q).unwrap().add(&one).unwrap()
        );
    }

    #[test]
    fn form_values() {
        let ctx = OspContext::new(1, 1);
        let one = CwElement::one(&ctx.signature);
        assert_eq!(ctx.form(&one, &one).unwrap(), Scalar::from_int(-2));
        assert_eq!(ctx.form(&one, &ctx.v0_basis[0]).unwrap(), Scalar::zero());
        assert_eq!(ctx.form(&ctx.v0_basis[0], &ctx.v1_basis[0]).unwrap(), Scalar::zero());
        assert!(form_is_nondegenerate(&ctx).unwrap());
        assert!(ctx.form(&star(&ctx.v1_basis[0], &ctx.v1_basis[0]).unwrap(), &one).is_err());
    }

    #[test]
    fn small_cases_verify() {
        for (n, k) in [(1, 1), (2, 1), (0, 1), (2, 0)] {
            let ctx = OspContext::new(n, k);
            for r in [verify_ps(&ctx).unwrap(), verify_g(&ctx).unwrap(), verify_invariance(&ctx).unwrap()] {
                assert!(r.passed(), "({n},{k}) {}: {:?}", r.suite, r.failures.first());
            }
        }
    }
}
