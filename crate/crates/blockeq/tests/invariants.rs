//! Module-theoretic invariants on small groups, checked against brute-force oracles.

mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use blockeq::ffmat::{Matrix, Subspace};
use blockeq::modrep::GModule;
use blockeq::perversity::{arg_count, phi_value, DegreePolynomial, PerversityQuery};

use common::oracles::*;

const SEEDS: [u64; 3] = [1, 2, 3];

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: 24, failure_persistence: None, ..Config::default() })
}

fn holds(c: Check) -> Result<(), TestCaseError> {
    c.map_err(TestCaseError::fail)
}

#[test]
fn frobenius_reciprocity() {
    for seed in SEEDS {
        let s = small(seed);
        let (hs, gs) = (indecomposables(&s.h), indecomposables(&s.g));
        runner().run(&(0..hs.len(), 0..gs.len()), |(i, j)| holds(frobenius(&s, &hs[i], &gs[j]))).unwrap();
    }
}

#[test]
fn pims_count_composition_factors() {
    for seed in SEEDS {
        let s = small(seed);
        let all = indecomposables(&s.g);
        runner()
            .run(&(prop::collection::vec(0..all.len(), 1..3), any::<u64>()), |(picks, r)| {
                let parts: Vec<&GModule> = picks.iter().map(|&k| &all[k]).collect();
                holds(pim_multiplicity(&s.g, &disguised_sum(&parts, r)))
            })
            .unwrap();
    }
}

#[test]
fn krull_schmidt_does_not_depend_on_the_seed() {
    let s = small(1);
    let all = indecomposables(&s.g);
    runner()
        .run(&(prop::collection::vec(0..all.len(), 1..4), any::<u64>()), |(picks, r)| {
            let parts: Vec<&GModule> = picks.iter().map(|&k| &all[k]).collect();
            holds(krull_schmidt(&parts, &disguised_sum(&parts, r), &SEEDS))
        })
        .unwrap();
}

#[test]
fn socle_series_of_the_dual_is_the_dual_radical_series() {
    for seed in SEEDS {
        let s = small(seed);
        let all = indecomposables(&s.g);
        runner()
            .run(&(prop::collection::vec(0..all.len(), 1..3), any::<u64>()), |(picks, r)| {
                let parts: Vec<&GModule> = picks.iter().map(|&k| &all[k]).collect();
                holds(socle_radical_duality(&s.g, &disguised_sum(&parts, r)))
            })
            .unwrap();
    }
}

#[test]
fn perverse_differentials_square_to_zero() {
    for seed in SEEDS {
        let s = small(seed);
        let n = s.g.num_simples();
        runner().run(&(prop::collection::vec(0u32..4, n), 0..n), |(pi, t)| holds(d_squared(&s.g, &pi, t))).unwrap();
    }
}

#[test]
fn pre_image_x_radical_is_maximal() {
    for seed in SEEDS {
        let s = small(seed);
        let n = s.g.num_simples();
        let all = indecomposables(&s.g);
        runner()
            .run(&(0..all.len(), prop::collection::vec(any::<bool>(), n), any::<u64>()), |(k, mask, r)| {
                let m = &all[k];
                let x: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(r);
                let v = if r % 3 == 0 {
                    Subspace::new(m.field(), m.dim())
                } else {
                    m.spin(&[Matrix::random(m.field(), 1, m.dim(), &mut rng).row(0).to_vec()])
                };
                holds(pre_image_maximal(&s.g, m, &v, &x))
            })
            .unwrap();
    }
}

/// #{h ≥ 0 : k/n + h ≤ κ/d} summed over k coprime to n, by enumeration.
fn naive_arg_count(n: u32, kappa: i64, d: i64) -> u64 {
    let n = n as i64;
    let mut c = 0;
    for k in (1..n).filter(|&k| num_integer::gcd(k, n) == 1) {
        let mut h = 0;
        while (k + h * n) * d <= kappa * n {
            c += 1;
            h += 1;
        }
    }
    c
}

proptest! {
    #[test]
    fn arg_count_matches_enumeration(n in 2u32..40, kappa in 1i64..12, d in 1i64..12) {
        prop_assume!(num_integer::gcd(kappa, d) == 1);
        let q = PerversityQuery::new(kappa, d).unwrap();
        prop_assert_eq!(arg_count(n, q), naive_arg_count(n, kappa, d));
    }

    #[test]
    fn arg_count_grows_with_the_slope(n in 2u32..40, a in 1i64..12, b in 1i64..12, c in 1i64..12, d in 1i64..12) {
        prop_assume!(num_integer::gcd(a, b) == 1 && num_integer::gcd(c, d) == 1);
        let (p, q) = (PerversityQuery::new(a, b).unwrap(), PerversityQuery::new(c, d).unwrap());
        let (lo, hi) = if p.slope() <= q.slope() { (p, q) } else { (q, p) };
        prop_assert!(arg_count(n, lo) <= arg_count(n, hi));
        let f = DegreePolynomial::parse(&format!("q^2 Phi{n} Phi1")).unwrap();
        prop_assert!(phi_value(&f, lo) <= phi_value(&f, hi));
    }
}
