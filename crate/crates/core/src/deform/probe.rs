//! Exact finite-size probes: the centralizer of the generators of A_Λ(n)
//! inside a degree-bounded subspace, commutants of matrix representations,
//! and the osp(2,2)-type relations of K, E₊, E₋.

use num_traits::{One, Zero};

use super::ore::{ore_super_bracket, OreAlgebra, OreElement, OreMonomial};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, SparseVec};
use crate::report::Report;
use crate::reps::ScalarMatrix;
use crate::scalar::{GaussRat, Scalar};

/// Normal-form monomials of weight ≤ max_deg, with ω of weight 0, E± of
/// weight 1 and Λ of weight 2.
pub fn bounded_monomials(n: usize, max_deg: u32) -> Vec<OreMonomial> {
    let mut out = Vec::new();
    for cliff in 0..1u64 << (2 * n + 1) {
        for r in 0..=max_deg / 2 {
            let rest = max_deg - 2 * r;
            for a in 0..=rest {
                for b in 0..=rest - a {
                    out.push(OreMonomial::new(cliff, a, b, r));
                }
            }
        }
    }
    out.sort();
    out
}

/// A basis (reduced echelon form over the monomials) of
/// {x of weight ≤ max_deg : [x, ω_i] = [x, E±] = 0}.
pub fn center_probe(n: usize, max_deg: u32) -> Vec<OreElement> {
    let alg = OreAlgebra::generic(n);
    let gens = alg.generators();
    let monos = bounded_monomials(n, max_deg);
    let columns: Vec<SparseVec<(usize, OreMonomial)>> = monos
        .iter()
        .map(|m| {
            let x = OreElement::monomial(n, m.clone(), GaussRat::one());
            let mut col = SparseVec::new();
            for (gi, g) in gens.iter().enumerate() {
                for (k, c) in alg.commutator(&x, g).terms() {
                    col.insert((gi, k.clone()), c.clone());
                }
            }
            col
        })
        .collect();
    nullspace(&columns)
        .into_iter()
        .map(|rel| {
            let mut e = OreElement::zero(n);
            for (i, c) in rel {
                e.add_term(monos[i].clone(), &c);
            }
            e
        })
        .collect()
}

/// The exact entries of a Λ-free matrix.
fn constant_entries(m: &ScalarMatrix) -> Result<Vec<GaussRat>> {
    m.entries.iter().map(|e| e.as_constant().ok_or(Error::LambdaTermsPresent)).collect()
}

/// dim {X : [X, G] = 0 for all G in gens}.
pub fn commutant_dim(gens: &[ScalarMatrix]) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidParameter("no generators".into()));
    };
    let d = first.rows;
    let consts: Vec<Vec<GaussRat>> = gens
        .iter()
        .map(|g| {
            if g.rows != d || g.cols != d {
                return Err(Error::SizeMismatch { expected: d, found: g.rows });
            }
            constant_entries(g)
        })
        .collect::<Result<_>>()?;
    // column for the unknown X_{rc}: entries of [E_{rc}, G] = E_{rc}G − G E_{rc}
    let columns: Vec<SparseVec<(usize, usize, usize)>> = (0..d * d)
        .map(|idx| {
            let (r, c) = (idx / d, idx % d);
            let mut col: SparseVec<(usize, usize, usize)> = SparseVec::new();
            let mut add = |key: (usize, usize, usize), v: GaussRat| {
                let slot = col.entry(key).or_default();
                *slot += &v;
                if slot.is_zero() {
                    col.remove(&key);
                }
            };
            for (gi, g) in consts.iter().enumerate() {
                for j in 0..d {
                    let v = &g[c * d + j];
                    if !v.is_zero() {
                        add((gi, r, j), v.clone());
                    }
                }
                for i in 0..d {
                    let v = &g[i * d + r];
                    if !v.is_zero() {
                        add((gi, i, c), -v.clone());
                    }
                }
            }
            col
        })
        .collect();
    Ok(nullspace(&columns).len())
}

/// diag(a, b).
pub fn block_diag(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    ScalarMatrix::from_fn(a.rows + b.rows, a.cols + b.cols, |r, c| match (r < a.rows, c < a.cols) {
        (true, true) => a.get(r, c).clone(),
        (false, false) => b.get(r - a.rows, c - a.cols).clone(),
        _ => Scalar::zero(),
    })
}

/// K = −¼P′ + Λ with P′ = iⁿω₁⋯ω_{2n+1}, and E₊, E₋: checks
/// [[X,Y],Z] = 2((Y|Z)X − (−1)^{|X||Y|}(X|Z)Y) on all ordered triples, with
/// (K|K) = 1/8, (E₊|E₋) = −¼, (E₋|E₊) = ¼ and all other values 0.
pub fn osp22_check(n: usize) -> Result<Report> {
    let alg = OreAlgebra::generic(n);
    let k = OreElement::parity_element(n).scale(&GaussRat::ratio(-1, 4)).add(&OreElement::lambda(n))?;
    let basis = [("K", k, 0u32), ("E+", OreElement::e_plus(n), 1), ("E-", OreElement::e_minus(n), 1)];
    let form = |i: usize, j: usize| -> GaussRat {
        match (i, j) {
            (0, 0) => GaussRat::ratio(1, 8),
            (1, 2) => GaussRat::ratio(-1, 4),
            (2, 1) => GaussRat::ratio(1, 4),
            _ => GaussRat::zero(),
        }
    };
    let mut report = Report::new("osp22");
    for (i, (xn, x, px)) in basis.iter().enumerate() {
        for (j, (yn, y, py)) in basis.iter().enumerate() {
            let xy = ore_super_bracket(&alg, x, y)?;
            let sign = if px * py == 1 { -GaussRat::one() } else { GaussRat::one() };
            for (l, (zn, z, _)) in basis.iter().enumerate() {
                let lhs = ore_super_bracket(&alg, &xy, z)?;
                let rhs = x.scale(&form(j, l)).sub(&y.scale(&(&sign * &form(i, l))))?.scale(&GaussRat::from_int(2));
                report.check_eq(format!("[[{xn},{yn}],{zn}]"), &lhs, &rhs);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::verma::{finite_irrep_pi_h, Sign};

    #[test]
    fn center_of_a0() {
        let basis = center_probe(0, 4);
        let expect: Vec<OreElement> =
            (0..=2).map(|r| OreElement::monomial(0, OreMonomial::new(0, 0, 0, r), GaussRat::one())).collect();
        assert_eq!(basis, expect);
        assert_eq!(center_probe(1, 2).len(), 2);
    }

    #[test]
    fn commutants() {
        let pi = finite_irrep_pi_h(0, 1, Sign::Plus).unwrap();
        assert_eq!(commutant_dim(&pi.generators()).unwrap(), 1);
        let pi0 = finite_irrep_pi_h(0, 0, Sign::Plus).unwrap();
        let doubled: Vec<ScalarMatrix> = pi0.generators().iter().map(|g| block_diag(g, g)).collect();
        assert_eq!(commutant_dim(&doubled).unwrap(), 4);
    }

    #[test]
    fn osp22() {
        for n in 0..=2 {
            let r = osp22_check(n).unwrap();
            assert!(r.passed(), "n={n}: {:?}", r.failures);
            assert_eq!(r.cases, 27);
        }
    }
}
