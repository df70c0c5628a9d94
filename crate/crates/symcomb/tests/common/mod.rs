//! Seeded property suites shared by the acceptance runner and the
//! per-module property tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use symcomb::covers::{classify_cover, enumerate_basic_covers, CoverClass, WeightedComplex};
use symcomb::groebner::{
    buchberger, dehomogenize, homogenize_ideal, homogenize_w, in_omega, initial_ideal, specialize_zero, Polynomial,
    Tiebreak, TermOrder,
};
use symcomb::homalg::{hochster_betti, koszul_betti, reduced_euler_characteristic, reduced_homology, Field};
use symcomb::minors::combinations;
use symcomb::monomial::{symbolic_power, Monomial, MonomialIdeal};
use symcomb::simplicial::SimplicialComplex;

pub const CASES: u32 = 200;

pub fn runner(seed: u8) -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

/// Pure complexes: `r`-subsets of `[n]`, `1 <= r < n`, chosen by index.
pub fn pure_complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 1..n, vec(any::<u32>(), 1..8)))
        .prop_map(|(n, r, picks)| {
            let all = combinations(n, r);
            let masks: Vec<u64> = picks
                .iter()
                .map(|&p| all[p as usize % all.len()].iter().map(|&i| 1u64 << i).sum())
                .collect();
            SimplicialComplex::from_masks(n, masks).expect("nonempty")
        })
}

/// Arbitrary complexes on `2..=max_n` vertices.
pub fn any_complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), vec(1u64..(1u64 << n), 1..7)))
        .prop_map(|(n, masks)| SimplicialComplex::from_masks(n, masks).expect("nonempty"))
}

/// A complex with positive facet weights.
pub fn weighted_complex(max_n: usize, max_w: u32) -> impl Strategy<Value = WeightedComplex> {
    (any_complex(max_n), vec(1..=max_w, 8)).prop_map(|(c, w)| {
        let k = c.facets().len();
        WeightedComplex::new(c, w[..k].to_vec()).expect("positive weights")
    })
}

pub fn prop_duality(c: SimplicialComplex) -> Result<(), TestCaseError> {
    let d = c.dual().map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(d.dual().unwrap(), c.clone());
    prop_assert_eq!(c.is_matroid(), d.is_matroid());
    Ok(())
}

fn brute_force_basic(wc: &WeightedComplex, alpha: &[u32], k: u32) -> bool {
    let is_cover = |a: &[u32]| {
        wc.complex().facets().iter().zip(wc.weights()).all(|(&f, &w)| {
            let s: u64 = (0..a.len()).filter(|i| f >> i & 1 == 1).map(|i| a[i] as u64).sum();
            s >= k as u64 * w as u64
        })
    };
    if !is_cover(alpha) {
        return false;
    }
    // No cover strictly below alpha.
    let n = alpha.len();
    let mut beta = vec![0u32; n];
    loop {
        if beta != alpha && is_cover(&beta) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            if beta[i] < alpha[i] {
                beta[i] += 1;
                break;
            }
            beta[i] = 0;
            i += 1;
        }
    }
}

pub fn basic_cover_case() -> impl Strategy<Value = (WeightedComplex, u32, Vec<u32>)> {
    (weighted_complex(4, 3), 1u32..=2).prop_flat_map(|(wc, k)| {
        let top = k * wc.max_weight();
        let n = wc.n();
        (Just(wc), Just(k), vec(0..=top, n))
    })
}

pub fn prop_local_global((wc, k, alpha): (WeightedComplex, u32, Vec<u32>)) -> Result<(), TestCaseError> {
    let local = classify_cover(&wc, &alpha, k).unwrap() == CoverClass::BasicCover;
    prop_assert_eq!(local, brute_force_basic(&wc, &alpha, k));
    Ok(())
}

pub fn prop_basic_covers_are_generators((wc, k): (WeightedComplex, u32)) -> Result<(), TestCaseError> {
    let covers = enumerate_basic_covers(&wc, k).unwrap();
    let mut from_covers: Vec<Monomial> = covers.into_iter().map(Monomial::new).collect();
    from_covers.sort();
    let ideal = symbolic_power(wc.complex(), wc.weights(), k).unwrap();
    let mut gens = ideal.gens().to_vec();
    gens.sort();
    prop_assert_eq!(from_covers, gens);
    Ok(())
}

pub fn prop_euler(c: SimplicialComplex) -> Result<(), TestCaseError> {
    let h = reduced_homology(&c, Field::Rational);
    // Index q + 1 holds the rank in degree q.
    let alt: i64 = h
        .iter()
        .enumerate()
        .map(|(idx, &r)| if (idx as i64 - 1).rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
        .sum();
    prop_assert_eq!(alt, reduced_euler_characteristic(&c));
    let h2 = reduced_homology(&c, Field::Prime(2));
    let alt2: i64 = h2
        .iter()
        .enumerate()
        .map(|(idx, &r)| if (idx as i64 - 1).rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
        .sum();
    prop_assert_eq!(alt2, alt);
    Ok(())
}

/// Square-free ideals from random supports on `2..=6` variables.
pub fn square_free_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), vec(1u64..(1u64 << n), 1..6)))
        .prop_map(|(n, masks)| {
            let gens = masks.into_iter().map(|m| Monomial::from_mask(n, m)).collect();
            MonomialIdeal::new(n, gens).expect("proper ideal")
        })
}

pub fn prop_hochster_reg(ideal: MonomialIdeal) -> Result<(), TestCaseError> {
    let h = hochster_betti(&ideal, Field::Rational).unwrap();
    let max_deg = ideal.gens().iter().map(|g| g.degree()).max().unwrap() as usize;
    prop_assert!(h.reg() + 1 >= max_deg);
    prop_assert_eq!(h, koszul_betti(&ideal, Field::Rational));
    Ok(())
}

fn small_poly(n: usize) -> impl Strategy<Value = Polynomial> {
    vec((vec(0u32..=2, n), -3i64..=3), 1..4).prop_map(move |terms| {
        let t = terms
            .into_iter()
            .map(|(e, c)| (Monomial::new(e), BigRational::from_integer(BigInt::from(c))))
            .collect();
        Polynomial::from_terms(n, t)
    })
}

pub fn hom_case() -> impl Strategy<Value = (Polynomial, Vec<Polynomial>, Vec<u64>)> {
    (small_poly(3), vec(small_poly(3), 2), vec(1u64..=3, 3))
}

pub fn prop_hom_round_trip((f, gens, w): (Polynomial, Vec<Polynomial>, Vec<u64>)) -> Result<(), TestCaseError> {
    let h = homogenize_w(&f, &w).unwrap();
    prop_assert_eq!(dehomogenize(&h), f.clone());
    prop_assert_eq!(specialize_zero(&h), in_omega(&f, &w));
    let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    prop_assume!(!gens.is_empty());
    let hom = homogenize_ideal(&gens, &w).unwrap();
    let rev = TermOrder::degrevlex(3);
    // t = 1 recovers the ideal.
    let at_one: Vec<Polynomial> = hom.iter().map(dehomogenize).collect();
    prop_assert_eq!(buchberger(&at_one, &rev).unwrap(), buchberger(&gens, &rev).unwrap());
    // t = 0 gives in_ω(I), whose initial ideal under the refinement is in_{≺ω}(I).
    let at_zero: Vec<Polynomial> = hom.iter().map(specialize_zero).collect();
    let refine = TermOrder::weighted(w.clone(), Tiebreak::DegRevLex).unwrap();
    let lhs = buchberger(&at_zero, &refine).unwrap();
    let rhs = buchberger(&gens, &refine).unwrap();
    prop_assert_eq!(lhs.unit, rhs.unit);
    if !rhs.unit {
        prop_assert_eq!(initial_ideal(&at_zero, &refine).unwrap(), initial_ideal(&gens, &refine).unwrap());
    }
    Ok(())
}

/// Runs one suite; returns the failure message if any case fails.
pub fn run_suite<S, F>(seed: u8, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: Clone + std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    runner(seed).run(&strategy, test).map_err(|e| e.to_string())
}
