//! Simplicial complexes on `[n]` stored by their facets.
//!
//! Vertices are 1-based at the API boundary and bits `0..n` internally.
//! Facets are `u64` masks, so `n <= 64`.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("no nonempty set was supplied")]
    EmptyInput,
    #[error("vertex {vertex} is outside [1, {n}]")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex count {0} is unsupported (need 1..=64)")]
    BadVertexCount(usize),
    #[error("the dual has an empty facet")]
    DualHasEmptyFacet,
    #[error("primes are comparable under inclusion")]
    ComparablePrimes,
    #[error("no primes supplied")]
    NoPrimes,
}

/// Iterate the set bits of a mask as 0-based indices.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// 1-based sorted vertex list of a mask.
pub fn mask_to_set(mask: u64) -> Vec<usize> {
    bits(mask).map(|i| i + 1).collect()
}

/// Mask of a 1-based vertex list, checking the range.
pub fn set_to_mask(set: &[usize], n: usize) -> Result<u64, SimplicialError> {
    let mut m = 0u64;
    for &v in set {
        if v == 0 || v > n {
            return Err(SimplicialError::VertexOutOfRange { vertex: v, n });
        }
        m |= 1u64 << (v - 1);
    }
    Ok(m)
}

/// Lexicographic comparison of the sorted vertex lists of two masks.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    let mut x = bits(a);
    let mut y = bits(b);
    loop {
        match (x.next(), y.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(p), Some(q)) if p != q => return p.cmp(&q),
            _ => {}
        }
    }
}

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn maximalize(masks: &mut Vec<u64>) {
    masks.sort_unstable();
    masks.dedup();
    let all = masks.clone();
    masks.retain(|&m| !all.iter().any(|&o| o != m && o & m == m));
    masks.sort_by(|a, b| lex_cmp(*a, *b));
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<u64>,
}

/// A violating triple `(F, G, i)` of the exchange axiom, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetWitness {
    pub facet_f: Vec<usize>,
    pub facet_g: Vec<usize>,
    pub element_i: usize,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Complex generated by `sets`; non-maximal members are dropped.
    pub fn from_facets(n: usize, sets: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            masks.push(set_to_mask(s, n)?);
        }
        Self::from_masks(n, masks)
    }

    pub fn from_masks(n: usize, mut masks: Vec<u64>) -> Result<Self, SimplicialError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(SimplicialError::BadVertexCount(n));
        }
        let full = full_mask(n);
        if let Some(&m) = masks.iter().find(|&&m| m & !full != 0) {
            let v = bits(m & !full).next().unwrap() + 1;
            return Err(SimplicialError::VertexOutOfRange { vertex: v, n });
        }
        masks.retain(|&m| m != 0);
        if masks.is_empty() {
            return Err(SimplicialError::EmptyInput);
        }
        maximalize(&mut masks);
        Ok(SimplicialComplex { n, facets: masks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn facet_sets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| mask_to_set(f)).collect()
    }

    pub fn facet_index(&self, mask: u64) -> Option<usize> {
        self.facets.iter().position(|&f| f == mask)
    }

    pub fn is_facet(&self, mask: u64) -> bool {
        self.facets.contains(&mask)
    }

    pub fn is_face(&self, mask: u64) -> bool {
        self.facets.iter().any(|&f| f & mask == mask)
    }

    pub fn dimension(&self) -> i64 {
        self.facets.iter().map(|f| f.count_ones() as i64).max().unwrap() - 1
    }

    pub fn is_pure(&self) -> bool {
        let c = self.facets[0].count_ones();
        self.facets.iter().all(|f| f.count_ones() == c)
    }

    /// Vertices that appear in some facet.
    pub fn vertex_mask(&self) -> u64 {
        self.facets.iter().fold(0, |a, f| a | f)
    }

    fn exchange_witness(&self, symmetric: bool) -> Option<FacetWitness> {
        for &f in &self.facets {
            for i in bits(f) {
                let rest = f & !(1u64 << i);
                for &g in &self.facets {
                    let ok = bits(g).any(|j| {
                        let fj = rest | (1u64 << j);
                        if !self.is_facet(fj) {
                            return false;
                        }
                        if !symmetric {
                            return true;
                        }
                        let gj = (g & !(1u64 << j)) | (1u64 << i);
                        self.is_facet(gj)
                    });
                    if !ok {
                        return Some(FacetWitness {
                            facet_f: mask_to_set(f),
                            facet_g: mask_to_set(g),
                            element_i: i + 1,
                        });
                    }
                }
            }
        }
        None
    }

    /// First violation of the exchange axiom, scanning `F`, then `i ∈ F`,
    /// then `G` in lexicographic order.
    pub fn matroid_witness(&self) -> Option<FacetWitness> {
        self.exchange_witness(false)
    }

    pub fn is_matroid(&self) -> bool {
        self.matroid_witness().is_none()
    }

    /// Every non-matroid witness, in scan order.
    pub fn all_matroid_witnesses(&self) -> Vec<FacetWitness> {
        let mut out = Vec::new();
        for &f in &self.facets {
            for i in bits(f) {
                let rest = f & !(1u64 << i);
                for &g in &self.facets {
                    if !bits(g).any(|j| self.is_facet(rest | (1u64 << j))) {
                        out.push(FacetWitness {
                            facet_f: mask_to_set(f),
                            facet_g: mask_to_set(g),
                            element_i: i + 1,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn symmetric_exchange_witness(&self) -> Option<FacetWitness> {
        self.exchange_witness(true)
    }

    pub fn symmetric_exchange_holds(&self) -> bool {
        self.symmetric_exchange_witness().is_none()
    }

    /// Complex with facets `[n] \ F`. Re-maximalized, so lossy for non-pure input.
    pub fn dual(&self) -> Result<SimplicialComplex, SimplicialError> {
        let full = full_mask(self.n);
        let comps: Vec<u64> = self.facets.iter().map(|f| full & !f).collect();
        if comps.iter().any(|&c| c == 0) {
            return Err(SimplicialError::DualHasEmptyFacet);
        }
        SimplicialComplex::from_masks(self.n, comps)
    }

    /// Facets joined by chains of single-element swaps.
    pub fn is_strongly_connected(&self) -> bool {
        let k = self.facets.len();
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(a) = queue.pop_front() {
            for b in 0..k {
                if !seen[b] {
                    let (fa, fb) = (self.facets[a], self.facets[b]);
                    if fa.count_ones() == fb.count_ones() && (fa ^ fb).count_ones() == 2 {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Supports of the minimal primes of the Stanley–Reisner ideal.
    pub fn stanley_reisner_primes(&self) -> Vec<u64> {
        let full = full_mask(self.n);
        self.facets.iter().map(|f| full & !f).collect()
    }

    /// Number of faces of each cardinality `0..=dim+1`.
    pub fn f_vector(&self) -> Vec<u64> {
        let top = (self.dimension() + 1) as usize;
        let mut counts = vec![0u64; top + 1];
        for face in self.all_faces() {
            counts[face.count_ones() as usize] += 1;
        }
        counts
    }

    /// All faces including the empty one, sorted.
    pub fn all_faces(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &f in &self.facets {
            let mut sub = f;
            loop {
                out.push(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexJson {
            n: self.n,
            facets: self.facet_sets(),
        })
        .expect("complex serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, String> {
        let raw: ComplexJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
        Self::from_facets(raw.n, &raw.facets).map_err(|e| e.to_string())
    }

    /// Relabel vertices: vertex `v` becomes `perm[v-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex, SimplicialError> {
        let sets: Vec<Vec<usize>> = self
            .facet_sets()
            .into_iter()
            .map(|s| s.into_iter().map(|v| perm[v - 1]).collect())
            .collect();
        SimplicialComplex::from_facets(self.n, &sets)
    }
}

/// The cycle graph `C_n` as a 1-dimensional complex.
pub fn cycle(n: usize) -> SimplicialComplex {
    let edges: Vec<Vec<usize>> = (1..=n).map(|i| vec![i, i % n + 1]).collect();
    SimplicialComplex::from_facets(n, &edges).expect("valid cycle")
}

/// Uniform matroid `U_{r,n}`: all `r`-subsets of `[n]`.
pub fn uniform_matroid(r: usize, n: usize) -> SimplicialComplex {
    let masks: Vec<u64> = (0..(1u64 << n)).filter(|m| m.count_ones() as usize == r).collect();
    SimplicialComplex::from_masks(n, masks).expect("valid uniform matroid")
}

pub fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_masks(n, vec![full_mask(n)]).expect("valid simplex")
}

/// Boundary of the `n`-vertex simplex.
pub fn simplex_boundary(n: usize) -> SimplicialComplex {
    uniform_matroid(n - 1, n)
}

/// The largest `r` for which the union of the coordinate subspaces
/// `V(p_A)` is `r`-connected.
///
/// Components have dimension `n - |A|` and meet in dimension `n - |A ∪ B|`.
/// The answer is the bottleneck of the best spanning tree of that
/// intersection graph, capped by the dimension of the union.
pub fn connectivity_degree(primes: &[u64], n: usize) -> Result<i64, SimplicialError> {
    if primes.is_empty() {
        return Err(SimplicialError::NoPrimes);
    }
    if n == 0 || n > MAX_VERTICES {
        return Err(SimplicialError::BadVertexCount(n));
    }
    let full = full_mask(n);
    if let Some(&p) = primes.iter().find(|&&p| p & !full != 0) {
        let v = bits(p & !full).next().unwrap() + 1;
        return Err(SimplicialError::VertexOutOfRange { vertex: v, n });
    }
    let mut ps = primes.to_vec();
    ps.sort_unstable();
    ps.dedup();
    for (a, &p) in ps.iter().enumerate() {
        for &q in &ps[a + 1..] {
            if p & q == p || p & q == q {
                return Err(SimplicialError::ComparablePrimes);
            }
        }
    }
    let dim_of = |m: u64| n as i64 - m.count_ones() as i64;
    let space_dim = ps.iter().map(|&p| dim_of(p)).max().unwrap();
    if ps.len() == 1 {
        return Ok(space_dim);
    }
    let k = ps.len();
    let connected_at = |r: i64| {
        let mut seen = vec![false; k];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for b in 0..k {
                if !seen[b] && dim_of(ps[a] | ps[b]) >= r {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen.iter().all(|&s| s)
    };
    let mut r = space_dim;
    while r >= 0 {
        if connected_at(r) {
            return Ok(r);
        }
        r -= 1;
    }
    Ok(-1)
}

/// Convenience wrapper on 1-based subsets.
pub fn connectivity_degree_sets(primes: &[Vec<usize>], n: usize) -> Result<i64, SimplicialError> {
    let masks = primes
        .iter()
        .map(|p| set_to_mask(p, n))
        .collect::<Result<Vec<_>, _>>()?;
    connectivity_degree(&masks, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, s: &[&[usize]]) -> SimplicialComplex {
        let v: Vec<Vec<usize>> = s.iter().map(|x| x.to_vec()).collect();
        SimplicialComplex::from_facets(n, &v).unwrap()
    }

    #[test]
    fn maximality_and_order() {
        let d = c(4, &[&[1, 2], &[2], &[3, 4]]);
        assert_eq!(d.facet_sets(), vec![vec![1, 2], vec![3, 4]]);
        let hex = cycle(6);
        assert_eq!(hex.facets().len(), 6);
        assert_eq!(hex.facet_sets()[1], vec![1, 6]);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert_eq!(
            SimplicialComplex::from_facets(3, &[vec![]]),
            Err(SimplicialError::EmptyInput)
        );
        assert!(matches!(
            SimplicialComplex::from_facets(3, &[vec![4]]),
            Err(SimplicialError::VertexOutOfRange { vertex: 4, n: 3 })
        ));
    }

    #[test]
    fn dimension_and_purity() {
        assert_eq!(cycle(3).dimension(), 1);
        assert_eq!(simplex(3).dimension(), 2);
        let mixed = c(3, &[&[1, 2], &[3]]);
        assert_eq!(mixed.dimension(), 1);
        assert!(!mixed.is_pure());
        assert!(cycle(6).is_pure());
        assert!(uniform_matroid(2, 4).is_pure());
    }

    #[test]
    fn hexagon_witness() {
        let w = cycle(6).matroid_witness().unwrap();
        assert_eq!(w.facet_f, vec![1, 2]);
        assert_eq!(w.facet_g, vec![4, 5]);
        assert_eq!(w.element_i, 1);
        assert!(uniform_matroid(2, 4).is_matroid());
        assert!(!c(5, &[&[1, 2], &[1, 3], &[1, 4], &[3, 4], &[2, 3, 5]]).is_matroid());
    }

    #[test]
    fn symmetric_exchange() {
        assert!(uniform_matroid(2, 4).symmetric_exchange_holds());
        assert!(cycle(3).symmetric_exchange_holds());
        assert!(!cycle(6).symmetric_exchange_holds());
    }

    #[test]
    fn duals() {
        let u = uniform_matroid(2, 4);
        assert_eq!(u.dual().unwrap(), u);
        let d = cycle(6).dual().unwrap();
        assert_eq!(d.facets().len(), 6);
        assert!(d.facets().iter().all(|f| f.count_ones() == 4));
        assert_eq!(d.dual().unwrap(), cycle(6));
        assert_eq!(simplex(3).dual(), Err(SimplicialError::DualHasEmptyFacet));
    }

    #[test]
    fn strong_connectivity() {
        assert!(cycle(6).is_strongly_connected());
        assert!(!c(4, &[&[1, 2], &[3, 4]]).is_strongly_connected());
        assert!(uniform_matroid(2, 4).is_strongly_connected());
    }

    #[test]
    fn connectivity_examples() {
        let hex = cycle(6);
        assert_eq!(connectivity_degree(&hex.stanley_reisner_primes(), 6), Ok(1));
        assert_eq!(connectivity_degree_sets(&[vec![4, 5]], 5), Ok(3));
        // Two planes in 4-space meeting only at the origin: connected, nothing more.
        let two = c(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(connectivity_degree(&two.stanley_reisner_primes(), 4), Ok(0));
        assert_eq!(
            connectivity_degree_sets(&[vec![1], vec![1, 2]], 3),
            Err(SimplicialError::ComparablePrimes)
        );
    }

    #[test]
    fn json_round_trip() {
        let hex = cycle(6);
        let s = hex.to_json().to_string();
        assert_eq!(SimplicialComplex::from_json_str(&s).unwrap(), hex);
    }

    #[test]
    fn f_vector_of_triangle() {
        assert_eq!(cycle(3).f_vector(), vec![1, 3, 3]);
    }
}
