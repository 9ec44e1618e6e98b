//! Ring-law and structural invariants as property tests.

use cliffweyl::clifford;
use cliffweyl::cw::CwMonomial;
use cliffweyl::deform::iso::{iso_a0_to_cw, iso_cw_to_a0, periodicity2_forward, periodicity2_inverse};
use cliffweyl::deform::ore::{ore_product, OreElement, OreMonomial};
use cliffweyl::periodicity::{odd_split, periodicity1_forward, periodicity1_inverse};
use cliffweyl::star::{delta1, delta2, poisson, star, super_bracket, wedge};
use cliffweyl::{CwElement, GaussRat, Scalar, Signature};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(re, den, im)| GaussRat::complex((re, den), (im, 1)))
}

fn signature() -> impl Strategy<Value = Signature> {
    prop_oneof![Just((1, 1)), Just((2, 1)), Just((3, 0)), Just((0, 2)), Just((1, 2)), Just((4, 1))]
        .prop_map(|(n, k)| Signature::new(n, k))
}

fn monomial(sig: Signature, max_deg: u32) -> impl Strategy<Value = CwMonomial> {
    let k = sig.n_bose_pairs;
    (0..1u64 << sig.n_fermi, prop::collection::vec(0..=max_deg, 2 * k))
        .prop_map(move |(cliff, e)| CwMonomial::new(cliff, &e[..k], &e[k..]))
}

fn element(sig: Signature, max_deg: u32) -> impl Strategy<Value = CwElement> {
    prop::collection::vec((monomial(sig.clone(), max_deg), gauss()), 0..4)
        .prop_map(move |terms| CwElement::from_terms(&sig, terms.into_iter().map(|(m, c)| (m, Scalar::constant(c)))))
}

fn triple(max_deg: u32) -> impl Strategy<Value = (CwElement, CwElement, CwElement)> {
    signature().prop_flat_map(move |s| (element(s.clone(), max_deg), element(s.clone(), max_deg), element(s, max_deg)))
}

fn ore_element(n: usize, max_deg: u32) -> impl Strategy<Value = OreElement> {
    prop::collection::vec((0..1u64 << (2 * n + 1), 0..=max_deg, 0..=max_deg, 0..=1u32, gauss()), 0..4).prop_map(
        move |terms| {
            let mut e = OreElement::zero(n);
            for (cliff, a, b, r, c) in terms {
                e.add_term(OreMonomial::new(cliff, a, b, r), &c);
            }
            e
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_field_laws(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), GaussRat::one());
        }
    }

    #[test]
    fn clifford_signs_are_associative(a in 0u64..64, b in 0u64..64, c in 0u64..64) {
        let (s1, ab) = clifford::product(a, b);
        let (s2, abc) = clifford::product(ab, c);
        let (s3, bc) = clifford::product(b, c);
        let (s4, abc2) = clifford::product(a, bc);
        prop_assert_eq!(abc, abc2);
        prop_assert_eq!(s1 * s2, s3 * s4);
    }

    #[test]
    fn star_ring_laws((a, b, c) in triple(3)) {
        let sig = a.signature().clone();
        prop_assert_eq!(star(&star(&a, &b).unwrap(), &c).unwrap(), star(&a, &star(&b, &c).unwrap()).unwrap());
        let left = star(&a, &b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, star(&a, &b).unwrap().add(&star(&a, &c).unwrap()).unwrap());
        prop_assert_eq!(star(&CwElement::one(&sig), &a).unwrap(), a.clone());
        prop_assert_eq!(star(&a, &CwElement::one(&sig)).unwrap(), a);
    }

    #[test]
    fn linear_elements_multiply_by_wedge_plus_half_bracket((a, b, _c) in triple(2)) {
        let sig = a.signature().clone();
        let lin = |x: &CwElement| {
            CwElement::from_terms(&sig, x.terms().filter(|(m, _)| m.z_degree() == 1).map(|(m, c)| (m.clone(), c.clone())))
        };
        let (la, lb) = (lin(&a), lin(&b));
        let expected = wedge(&la, &lb).unwrap().add(&poisson(&la, &lb).unwrap().scale(&Scalar::ratio(1, 2))).unwrap();
        prop_assert_eq!(star(&la, &lb).unwrap(), expected);
    }

    #[test]
    fn json_round_trip((a, _b, _c) in triple(3)) {
        prop_assert_eq!(CwElement::from_json(a.signature(), &a.to_json()).unwrap(), a);
    }

    #[test]
    fn super_bracket_is_graded_antisymmetric(ma in monomial(Signature::new(2, 1), 2), mb in monomial(Signature::new(2, 1), 2)) {
        let sig = Signature::new(2, 1);
        let a = CwElement::monomial(&sig, ma, Scalar::one());
        let b = CwElement::monomial(&sig, mb, Scalar::one());
        let sign = if delta2(&a).unwrap() & delta2(&b).unwrap() == 1 { Scalar::one() } else { -Scalar::one() };
        prop_assert_eq!(super_bracket(&a, &b).unwrap(), super_bracket(&b, &a).unwrap().scale(&sign));
        prop_assert!(delta1(&a).unwrap() <= 1);
    }

    #[test]
    fn ore_product_is_associative(a in ore_element(1, 2), b in ore_element(1, 2), c in ore_element(1, 2)) {
        let lhs = ore_product(&ore_product(&a, &b).unwrap(), &c).unwrap();
        let rhs = ore_product(&a, &ore_product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn a0_iso_round_trip(x in element(Signature::new(3, 1), 3)) {
        prop_assert_eq!(iso_a0_to_cw(&iso_cw_to_a0(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn periodicity_round_trips(x in element(Signature::new(3, 1), 3), a in ore_element(1, 2)) {
        let fx = periodicity1_forward(1, 1, 1, &x).unwrap();
        prop_assert_eq!(periodicity1_inverse(1, 1, 1, &fx).unwrap(), x);
        prop_assert_eq!(periodicity2_inverse(1, &periodicity2_forward(&a)).unwrap(), a);
    }

    #[test]
    fn odd_split_is_injective_and_multiplicative(x in element(Signature::new(3, 0), 3), y in element(Signature::new(3, 0), 3)) {
        let (xa, xb) = odd_split(1, &x).unwrap();
        let (ya, yb) = odd_split(1, &y).unwrap();
        let (pa, pb) = odd_split(1, &star(&x, &y).unwrap()).unwrap();
        prop_assert_eq!(pa, star(&xa, &ya).unwrap());
        prop_assert_eq!(pb, star(&xb, &yb).unwrap());
        prop_assert_eq!(x.is_zero(), xa.is_zero() && xb.is_zero());
    }
}
