use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use symcomb::minors::*;

fn expected(p: &MinorsParams, d: u32) -> BTreeSet<BiDiagram> {
    let fits = |b: &BiDiagram| b.gamma.height() <= p.m && b.lambda.height() <= p.n;
    match d {
        2 => {
            let mut out = BTreeSet::new();
            for g in d_admissible(p.t, 2, p.m) {
                for l in d_admissible(p.t, 2, p.n) {
                    if g != l {
                        out.insert(BiDiagram::new(g.clone(), l));
                    }
                }
            }
            out
        }
        3 => shape_family(p.t)
            .into_iter()
            .flat_map(|b| [b.swapped(), b])
            .filter(fits)
            .collect(),
        _ => BTreeSet::new(),
    }
}

#[test]
fn only_shape_relations_have_a_symmetric_sole_predecessor() {
    for t in 1..=4 {
        for m in t..=8 {
            for n in m..=8 {
                let p = MinorsParams::new(m, n, t).unwrap();
                for d in 2..=5 {
                    let found: BTreeSet<BiDiagram> =
                        minimal_relation_candidates(&p, d).unwrap().into_iter().collect();
                    assert_eq!(found, expected(&p, d), "t={t} m={m} n={n} d={d}");
                }
            }
        }
    }
}

#[test]
fn shape_relations_meet_their_defining_conditions() {
    for t in 2..=6 {
        for m in t + 1..=10 {
            for n in m.max(t + 2)..=12 {
                let p = MinorsParams::new(m, n, t).unwrap();
                for b in shape_relations(&p).unwrap() {
                    assert!(!b.is_symmetric());
                    assert!(is_d_admissible(&b.gamma, t, 3) && is_d_admissible(&b.lambda, t, 3));
                    assert_eq!(multiplicity_n(&b, t).unwrap(), BigUint::one());
                    let pg = predecessors(&b.gamma, t).unwrap();
                    let pl = predecessors(&b.lambda, t).unwrap();
                    assert_eq!(pg.len(), 1);
                    assert_eq!(pg, pl);
                }
            }
        }
    }
}

#[test]
fn tensor_power_rule_and_quotient_bound() {
    for t in 1..=4 {
        for m in t..=6 {
            for n in m..=6 {
                let p = MinorsParams::new(m, n, t).unwrap();
                let rank = num_integer::binomial(m as u64, t as u64) * num_integer::binomial(n as u64, t as u64);
                if rank > 20 {
                    continue;
                }
                for d in 1..=3 {
                    let (lhs, rhs) = tensor_sum(&p, d).unwrap();
                    assert_eq!(lhs, rhs, "m={m} n={n} t={t} d={d}");
                    assert!(hf_at(&p, d) <= rhs);
                }
            }
        }
    }
}

#[test]
fn hilbert_function_matches_oracle() {
    for (m, n, t, dmax) in [(2, 3, 2, 3), (2, 4, 2, 2), (3, 4, 2, 2), (2, 2, 1, 4), (3, 3, 2, 3), (3, 4, 3, 4)] {
        let p = MinorsParams::new(m, n, t).unwrap();
        for d in 1..=dmax {
            let oracle = hf_at_oracle(&p, d).unwrap();
            assert_eq!(hf_at(&p, d), BigUint::from(oracle), "m={m} n={n} t={t} d={d}");
        }
    }
}

#[test]
fn schur_dimension_vanishes_exactly_above_height() {
    for n in 1..=5 {
        for size in 1..=7 {
            for l in partitions(size, 7, 7) {
                assert_eq!(dim_schur(&l, n) == BigUint::from(0u32), l.height() > n);
            }
        }
    }
}
