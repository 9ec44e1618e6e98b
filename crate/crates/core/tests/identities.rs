//! Seeded identity checks at full sample sizes.

use cliffweyl::checks::*;
use cliffweyl::deform::cocycle::{cocycle_law_report, compare_cocycle};
use cliffweyl::deform::ore::{ghost_identities, relations_report, OreAlgebra};
use cliffweyl::deform::probe::osp22_check;
use cliffweyl::deform::verma::{finite_irrep_pi_h, pi_h_relations_report, verma_relations_report, Sign};
use cliffweyl::hochschild::hochschild_suite;
use cliffweyl::osp::{expected_dim, verify_g, verify_invariance, verify_ps, OspContext};
use cliffweyl::random;
use cliffweyl::report::Report;
use cliffweyl::reps::{spin_lemma_check, spin_rep_odd_sign_check, RepDescriptor};
use cliffweyl::{GaussRat, Signature};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_pass(r: &Report) {
    assert!(r.passed(), "{}: {} of {} cases failed, first: {:?}", r.suite, r.failures.len(), r.cases, r.failures.first());
    assert!(r.cases > 0, "{}: no cases ran", r.suite);
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const SIGNATURES: [(usize, usize); 5] = [(1, 1), (2, 1), (3, 1), (4, 1), (1, 2)];

#[test]
fn presentations() {
    for (n, k) in SIGNATURES {
        assert_pass(&presentation_report(&Signature::new(n, k)).unwrap());
    }
    for n in 0..=2 {
        assert_pass(&relations_report(&OreAlgebra::generic(n)));
        assert_pass(&relations_report(&OreAlgebra::specialized(n, GaussRat::ratio(3, 5))));
    }
}

#[test]
fn star_associativity() {
    let mut r = rng(100);
    for (n, k) in SIGNATURES {
        assert_pass(&star_associativity_report(&mut r, &Signature::new(n, k), 200, 4).unwrap());
    }
}

#[test]
fn ore_associativity() {
    let mut r = rng(101);
    for n in 0..=2 {
        assert_pass(&ore_associativity_report(&mut r, n, 200, 4).unwrap());
    }
}

#[test]
fn representation_oracle() {
    let mut r = rng(102);
    let reps = [
        RepDescriptor::Spin { ell: 2 },
        RepDescriptor::SpinPlus { ell: 1 },
        RepDescriptor::SpinMinus { ell: 1 },
        RepDescriptor::Metaplectic { k: 2 },
        RepDescriptor::SpinMetaplectic { ell: 1, k: 1 },
        RepDescriptor::SpinMetaplecticPlus { ell: 1, k: 1 },
        RepDescriptor::SpinMetaplecticMinus { ell: 1, k: 1 },
    ];
    for rep in reps {
        assert_pass(&rep_oracle_report(&mut r, &rep, 300, 4).unwrap());
    }
}

#[test]
fn periodicity() {
    let mut r = rng(103);
    for (m, n, k) in [(1, 0, 1), (1, 1, 1), (2, 1, 1), (1, 2, 1)] {
        assert_pass(&periodicity1_report(&mut r, m, n, k, 100, 3).unwrap());
    }
    for n in 1..=2 {
        assert_pass(&periodicity2_report(&mut r, n, 50, 3).unwrap());
    }
    for n in 1..=2 {
        assert_pass(&matrix_iso_report(&mut r, n, 1, 50, 3, 3).unwrap());
    }
    assert_pass(&matrix_associativity_report(&mut r, 2, 1, 100, 3).unwrap());
    for n in 0..=2 {
        assert_pass(&odd_split_report(&mut r, n, 50, 4).unwrap());
    }
}

#[test]
fn spin_lemma() {
    for n in 1..=3 {
        assert_pass(&spin_lemma_check(n).unwrap());
        assert_pass(&spin_rep_odd_sign_check(n).unwrap());
    }
    for n in 1..=4 {
        assert_pass(&volume_square_report(n).unwrap());
    }
}

#[test]
fn parastatistics() {
    for (n, k, dim) in [(1, 1, 8), (2, 1, 12), (3, 1, 17), (1, 2, expected_dim(1, 2))] {
        let ctx = OspContext::new(n, k);
        let ps = verify_ps(&ctx).unwrap();
        assert_pass(&ps);
        let v = n + 2 * k;
        assert_eq!(ps.cases, v * v * v);
        let g = verify_g(&ctx).unwrap();
        assert_pass(&g);
        assert_eq!(g.outputs["dim"], dim.to_string());
        assert_pass(&verify_invariance(&ctx).unwrap());
    }
}

#[test]
fn deformation() {
    let mut r = rng(104);
    for n in 0..=1 {
        assert_pass(&a0_iso_report(&mut r, n, 200, 4).unwrap());
        assert_pass(&cocycle_law_report(&mut r, n, 100, 3).unwrap());
        let (kappa, report) = compare_cocycle(n).unwrap();
        assert_pass(&report);
        assert_eq!(kappa, GaussRat::from_int(-2));
    }
}

#[test]
fn ghost() {
    let mut r = rng(105);
    let lambdas: Vec<GaussRat> = (0..10).map(|_| random::gauss(&mut r)).collect();
    for n in 0..=2 {
        assert_pass(&ghost_identities(n, &lambdas));
    }
}

#[test]
fn verma_and_finite_irreps() {
    assert_pass(&verma_top_report(6).unwrap());
    let mut r = rng(106);
    for _ in 0..20 {
        assert_pass(&verma_relations_report(&random::gauss(&mut r), 50));
    }
    for n in 0..=1 {
        for two_h in 0..=4 {
            for sign in [Sign::Plus, Sign::Minus] {
                let pi = finite_irrep_pi_h(n, two_h, sign).unwrap();
                assert_eq!(pi.size(), (1 << n) * (2 * two_h as usize + 1));
                assert_pass(&pi_h_relations_report(&pi));
            }
        }
        assert_pass(&commutant_report(n, 4).unwrap());
    }
}

#[test]
fn center_and_osp22() {
    let report = center_report(0, 4);
    assert_pass(&report);
    assert_eq!(report.outputs["basis"], "{1, L, L^2}");
    assert_pass(&center_report(1, 3));
    for n in 0..=2 {
        assert_pass(&osp22_check(n).unwrap());
    }
}

#[test]
fn hochschild() {
    let mut r = rng(107);
    for n in 0..=1 {
        assert_pass(&hochschild_suite(&mut r, n, 100, 3));
    }
}
