//! Polarization and the associated primes of polarized weighted ideals.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covers::WeightedComplex;
use crate::monomial::{symbolic_power, Monomial, MonomialError, MonomialIdeal};
use crate::simplicial::{bits, full_mask, mask_to_set, set_to_mask, FacetWitness, SimplicialError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolarError {
    #[error("polarization needs {0} variables, more than the supported 64")]
    TooManyVariables(usize),
    #[error("ideal is not square-free")]
    NotSquareFree,
    #[error("the complex is not pure")]
    NotPure,
    #[error("need k*omega_F >= dim+2 = {needed} on every facet, found {found}")]
    HypothesisViolation { needed: u64, found: u64 },
    #[error("brute force limited to {0} variables")]
    TooLarge(usize),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Complex(#[from] SimplicialError),
}

/// `p_{F,a} = (x_{i_1,a_1}, ..., x_{i_d,a_d})`, vertices 1-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexedPrime {
    pub base: Vec<usize>,
    pub levels: Vec<u32>,
}

impl IndexedPrime {
    pub fn new(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.sort();
        IndexedPrime {
            base: pairs.iter().map(|p| p.0).collect(),
            levels: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn pairs(&self) -> Vec<(usize, u32)> {
        self.base.iter().copied().zip(self.levels.iter().copied()).collect()
    }

    pub fn level_sum(&self) -> u64 {
        self.levels.iter().map(|&a| a as u64).sum()
    }

    /// Serialized as `[[i, level], ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.pairs().iter().map(|(i, a)| [*i as u64, *a as u64]).collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedIdeal {
    pub ideal: MonomialIdeal,
    /// Flat index to `(i, level)`, both 1-based.
    pub var_map: Vec<(usize, u32)>,
    pub source: MonomialIdeal,
}

impl PolarizedIdeal {
    pub fn flat_index(&self, i: usize, level: u32) -> Option<usize> {
        self.var_map.iter().position(|&p| p == (i, level))
    }

    pub fn prime_of_mask(&self, mask: u64) -> IndexedPrime {
        IndexedPrime::new(bits(mask).map(|f| self.var_map[f]).collect())
    }

    pub fn mask_of_prime(&self, p: &IndexedPrime) -> Option<u64> {
        let mut m = 0u64;
        for (i, a) in p.pairs() {
            m |= 1u64 << self.flat_index(i, a)?;
        }
        Some(m)
    }
}

/// Replace `x_i^e` by `x_{i,1} ⋯ x_{i,e}`; variables use max-exponent many levels.
pub fn polarize(ideal: &MonomialIdeal) -> Result<PolarizedIdeal, PolarError> {
    let maxe = ideal.max_exponents();
    let mut var_map = Vec::new();
    let mut offset = Vec::with_capacity(maxe.len());
    for (i, &m) in maxe.iter().enumerate() {
        offset.push(var_map.len());
        for l in 1..=m {
            var_map.push((i + 1, l));
        }
    }
    let total = var_map.len();
    if total > 64 {
        return Err(PolarError::TooManyVariables(total));
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut e = vec![0u32; total];
            for (i, &a) in g.exps.iter().enumerate() {
                for l in 0..a as usize {
                    e[offset[i] + l] = 1;
                }
            }
            Monomial::new(e)
        })
        .collect();
    Ok(PolarizedIdeal {
        ideal: MonomialIdeal::new(total, gens)?,
        var_map,
        source: ideal.clone(),
    })
}

/// `{p_{F,a} : a ∈ [k]^{|F|}, |a| ≤ k + |F| - 1}`.
pub fn ass_primes_prime_power(f: &[usize], k: u32) -> Vec<IndexedPrime> {
    let mut base = f.to_vec();
    base.sort_unstable();
    base.dedup();
    let d = base.len() as u64;
    let bound = k as u64 + d - 1;
    let mut out = Vec::new();
    let mut levels = vec![1u32; base.len()];
    fn rec(pos: usize, sum: u64, k: u32, bound: u64, base: &[usize], levels: &mut Vec<u32>, out: &mut Vec<IndexedPrime>) {
        if pos == base.len() {
            out.push(IndexedPrime {
                base: base.to_vec(),
                levels: levels.clone(),
            });
            return;
        }
        let left = (base.len() - pos - 1) as u64;
        for a in 1..=k {
            if sum + a as u64 + left > bound {
                break;
            }
            levels[pos] = a;
            rec(pos + 1, sum + a as u64, k, bound, base, levels, out);
        }
    }
    if base.is_empty() || k == 0 {
        return out;
    }
    rec(0, 0, k, bound, &base, &mut levels, &mut out);
    out.sort();
    out
}

/// Union over facets of `ass_primes_prime_power(F, k ω_F)`.
pub fn ass_primes_weighted(wc: &WeightedComplex, k: u32) -> Vec<IndexedPrime> {
    let mut out: Vec<IndexedPrime> = wc
        .complex()
        .facets()
        .iter()
        .zip(wc.weights())
        .flat_map(|(&f, &w)| ass_primes_prime_power(&mask_to_set(f), k * w))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Minimal primes of a square-free ideal by listing all faces of `Δ(I)`.
pub fn min_primes_bruteforce(ideal: &MonomialIdeal) -> Result<Vec<u64>, PolarError> {
    if !ideal.is_square_free() {
        return Err(PolarError::NotSquareFree);
    }
    let n = ideal.n();
    if n > 24 {
        return Err(PolarError::TooLarge(24));
    }
    let supports: Vec<u64> = ideal.gens().iter().map(|g| g.support()).collect();
    let faces: Vec<u64> = (0..(1u64 << n))
        .filter(|&w| !supports.iter().any(|&s| s & w == s))
        .collect();
    let face_set: std::collections::HashSet<u64> = faces.iter().copied().collect();
    let full = full_mask(n);
    let mut out: Vec<u64> = faces
        .into_iter()
        .filter(|&w| (0..n).all(|i| w >> i & 1 == 1 || !face_set.contains(&(w | 1u64 << i))))
        .map(|w| full & !w)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Minimal primes of `polarize(I)` as indexed primes.
pub fn min_primes_polarized(p: &PolarizedIdeal) -> Result<Vec<IndexedPrime>, PolarError> {
    let mut out: Vec<IndexedPrime> = min_primes_bruteforce(&p.ideal)?
        .into_iter()
        .map(|m| p.prime_of_mask(m))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ObstructionResult {
    /// No witness produced an obstruction. This does not certify CM.
    Pass,
    Obstructed {
        witness: FacetWitness,
        prime_f: IndexedPrime,
        prime_g: IndexedPrime,
        /// Associated primes inside `p_{F,a} + p_{G,b}`.
        local_primes: Vec<IndexedPrime>,
    },
}

/// Localized connectedness test at `p_{F,a} + p_{G,b}` for every
/// non-matroid witness `(F, G, i)`. An obstruction certifies that
/// `S/J(Δ,ω)^{(k)}` is not Cohen–Macaulay.
pub fn cm_obstruction_check(wc: &WeightedComplex, k: u32) -> Result<ObstructionResult, PolarError> {
    let delta = wc.complex();
    if !delta.is_pure() {
        return Err(PolarError::NotPure);
    }
    let d = (delta.dimension() + 1) as u64;
    let min_w = wc.weights().iter().map(|&w| w as u64 * k as u64).min().unwrap();
    if min_w < d + 1 {
        return Err(PolarError::HypothesisViolation {
            needed: d + 1,
            found: min_w,
        });
    }
    let ass = ass_primes_weighted(wc, k);
    for w in delta.all_matroid_witnesses() {
        let mut a_pairs: Vec<(usize, u32)> = w.facet_f.iter().map(|&v| (v, 1)).collect();
        for p in a_pairs.iter_mut() {
            if p.0 == w.element_i {
                p.1 = d as u32 + 1;
            }
        }
        let prime_f = IndexedPrime::new(a_pairs);
        let prime_g = IndexedPrime::new(w.facet_g.iter().map(|&v| (v, 2)).collect());
        let mut ambient: Vec<(usize, u32)> = prime_f.pairs();
        ambient.extend(prime_g.pairs());
        ambient.sort();
        ambient.dedup();
        let local: Vec<IndexedPrime> = ass
            .iter()
            .filter(|p| p.pairs().iter().all(|q| ambient.contains(q)))
            .cloned()
            .collect();
        let start = local.iter().position(|p| *p == prime_f);
        let goal = local.iter().position(|p| *p == prime_g);
        let (Some(start), Some(goal)) = (start, goal) else {
            // Both must be associated under the hypothesis.
            continue;
        };
        let height_of_sum = |a: &IndexedPrime, b: &IndexedPrime| {
            let mut u = a.pairs();
            u.extend(b.pairs());
            u.sort();
            u.dedup();
            u.len() as u64
        };
        let mut seen = vec![false; local.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in 0..local.len() {
                if !seen[y] && height_of_sum(&local[x], &local[y]) <= d + 1 {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if !seen[goal] {
            return Ok(ObstructionResult::Obstructed {
                witness: w,
                prime_f,
                prime_g,
                local_primes: local,
            });
        }
    }
    Ok(ObstructionResult::Pass)
}

/// Polarization of `J(Δ,ω)^{(k)}`.
pub fn polarized_symbolic_power(wc: &WeightedComplex, k: u32) -> Result<PolarizedIdeal, PolarError> {
    polarize(&symbolic_power(wc.complex(), wc.weights(), k)?)
}

/// `p_F^k` in `n` variables for a 1-based set `F`.
pub fn prime_power_ideal(f: &[usize], n: usize, k: u32) -> Result<MonomialIdeal, PolarError> {
    Ok(MonomialIdeal::prime_power(n, set_to_mask(f, n)?, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{cycle, uniform_matroid};

    fn ip(pairs: &[(usize, u32)]) -> IndexedPrime {
        IndexedPrime::new(pairs.to_vec())
    }

    #[test]
    fn polarization_examples() {
        let i = MonomialIdeal::parse("x1^2,x1*x2", 2).unwrap();
        let p = polarize(&i).unwrap();
        assert_eq!(p.var_map, vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(p.ideal, MonomialIdeal::parse("x1*x2,x1*x3", 3).unwrap());
        let sq = MonomialIdeal::parse("x1*x2,x2*x3", 3).unwrap();
        assert_eq!(polarize(&sq).unwrap().ideal, sq);
        let pp = polarize(&MonomialIdeal::prime_power(2, 0b11, 2)).unwrap();
        // x_{1,1}x_{1,2}, x_{1,1}x_{2,1}, x_{2,1}x_{2,2}
        assert_eq!(pp.ideal, MonomialIdeal::parse("x1*x2,x1*x3,x3*x4", 4).unwrap());
    }

    #[test]
    fn asspol_examples() {
        assert_eq!(
            ass_primes_prime_power(&[1, 2], 2),
            vec![ip(&[(1, 1), (2, 1)]), ip(&[(1, 1), (2, 2)]), ip(&[(1, 2), (2, 1)])]
        );
        assert_eq!(ass_primes_prime_power(&[1], 3).len(), 3);
        assert_eq!(ass_primes_prime_power(&[1, 2, 3], 1), vec![ip(&[(1, 1), (2, 1), (3, 1)])]);
        let k3 = WeightedComplex::canonical(cycle(3));
        assert_eq!(ass_primes_weighted(&k3, 1).len(), 3);
        assert_eq!(ass_primes_weighted(&k3, 2).len(), 9);
    }

    #[test]
    fn brute_force_primes() {
        let i = MonomialIdeal::parse("x1*x2,x2*x3,x1*x3", 3).unwrap();
        assert_eq!(min_primes_bruteforce(&i).unwrap(), vec![0b011, 0b101, 0b110]);
        let pr = MonomialIdeal::parse("x1*x2*x3", 3).unwrap();
        assert_eq!(min_primes_bruteforce(&pr).unwrap(), vec![0b001, 0b010, 0b100]);
        let pp = polarize(&MonomialIdeal::prime_power(2, 0b11, 2)).unwrap();
        assert_eq!(min_primes_polarized(&pp).unwrap(), ass_primes_prime_power(&[1, 2], 2));
        for k in 1..=2 {
            let k3 = WeightedComplex::canonical(cycle(3));
            let p = polarized_symbolic_power(&k3, k).unwrap();
            assert_eq!(min_primes_polarized(&p).unwrap(), ass_primes_weighted(&k3, k));
        }
    }

    #[test]
    fn obstruction() {
        let hex = WeightedComplex::uniform(cycle(6), 3).unwrap();
        match cm_obstruction_check(&hex, 1).unwrap() {
            ObstructionResult::Obstructed { witness, prime_f, prime_g, .. } => {
                assert_eq!(witness.facet_f, vec![1, 2]);
                assert_eq!(prime_f, ip(&[(1, 3), (2, 1)]));
                assert_eq!(prime_g, ip(&[(4, 2), (5, 2)]));
            }
            ObstructionResult::Pass => panic!("hexagon must be obstructed"),
        }
        let u = WeightedComplex::uniform(uniform_matroid(2, 4), 3).unwrap();
        assert_eq!(cm_obstruction_check(&u, 1).unwrap(), ObstructionResult::Pass);
        let small = WeightedComplex::canonical(cycle(6));
        assert!(matches!(
            cm_obstruction_check(&small, 1),
            Err(PolarError::HypothesisViolation { needed: 3, found: 1 })
        ));
        assert!(cm_obstruction_check(&small, 3).unwrap() != ObstructionResult::Pass);
    }
}
