//! Monomial ideals with eagerly minimalized generators.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::simplicial::{bits, full_mask, SimplicialComplex, SimplicialError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("ambient sizes differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("the unit ideal is not representable")]
    UnitIdeal,
    #[error("ideal is not square-free")]
    NotSquareFree,
    #[error("k must be positive")]
    NonpositiveK,
    #[error("exponent overflow")]
    Overflow,
    #[error("weights must be positive and match the facets")]
    BadWeights,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Complex(#[from] SimplicialError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial { exps: e }
    }

    /// Square-free monomial of a 0-based mask.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut e = vec![0; n];
        for i in bits(mask) {
            e[i] = 1;
        }
        Monomial { exps: e }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            e.push(a.checked_add(*b)?);
        }
        Some(Monomial { exps: e })
    }

    /// `self / other`, assuming divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn support(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << i))
    }

    pub fn is_square_free(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Parse `x1^2*x3`, or `1`.
    pub fn parse(s: &str, n: usize) -> Result<Monomial, MonomialError> {
        let mut e = vec![0u32; n];
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial { exps: e });
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (var, pow) = match factor.split_once('^') {
                Some((v, p)) => (
                    v,
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| MonomialError::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let idx = var
                .trim()
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| MonomialError::Parse(format!("bad variable `{var}`")))?;
            if idx == 0 || idx > n {
                return Err(MonomialError::Parse(format!("variable x{idx} outside 1..={n}")));
            }
            e[idx - 1] = e[idx - 1]
                .checked_add(pow)
                .ok_or(MonomialError::Overflow)?;
        }
        Ok(Monomial { exps: e })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Canonical generator order: by degree, then exponent vectors descending.
fn canonical_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.exps.cmp(&a.exps))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(canonical_cmp);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    // Sorted by degree, so a divisor always comes first.
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    n: usize,
    gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self, MonomialError> {
        for g in &gens {
            if g.n() != n {
                return Err(MonomialError::AmbientMismatch(n, g.n()));
            }
            if g.is_one() {
                return Err(MonomialError::UnitIdeal);
            }
        }
        Ok(MonomialIdeal {
            n,
            gens: minimalize(gens),
        })
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn from_exponents(n: usize, gens: &[Vec<u32>]) -> Result<Self, MonomialError> {
        Self::new(n, gens.iter().map(|e| Monomial::new(e.clone())).collect())
    }

    /// Prime generated by the variables of a 0-based mask.
    pub fn prime(n: usize, mask: u64) -> Self {
        MonomialIdeal {
            n,
            gens: minimalize(bits(mask).map(|i| Monomial::var(n, i)).collect()),
        }
    }

    /// `p_F^e` as all degree-`e` monomials in the variables of `F`.
    pub fn prime_power(n: usize, mask: u64, e: u32) -> Self {
        let vars: Vec<usize> = bits(mask).collect();
        let mut gens = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(vars: &[usize], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if vars.len() == 1 {
                cur[vars[0]] = left;
                out.push(Monomial::new(cur.clone()));
                cur[vars[0]] = 0;
                return;
            }
            for a in (0..=left).rev() {
                cur[vars[0]] = a;
                rec(&vars[1..], left - a, cur, out);
            }
            cur[vars[0]] = 0;
        }
        if e == 0 || vars.is_empty() {
            return MonomialIdeal::zero(n);
        }
        rec(&vars, e, &mut cur, &mut gens);
        MonomialIdeal {
            n,
            gens: minimalize(gens),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_square_free(&self) -> bool {
        self.gens.iter().all(|g| g.is_square_free())
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<(), MonomialError> {
        if self.n != other.n {
            Err(MonomialError::AmbientMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool, MonomialError> {
        if m.n() != self.n {
            return Err(MonomialError::AmbientMismatch(self.n, m.n()));
        }
        Ok(self.gens.iter().any(|g| g.divides(m)))
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool, MonomialError> {
        self.check_ambient(other)?;
        Ok(self.gens.iter().all(|g| other.gens.iter().any(|h| h.divides(g))))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.check_ambient(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(MonomialIdeal {
            n: self.n,
            gens: minimalize(gens),
        })
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.check_ambient(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b).ok_or(MonomialError::Overflow)?);
            }
        }
        Ok(MonomialIdeal {
            n: self.n,
            gens: minimalize(gens),
        })
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.check_ambient(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(MonomialIdeal {
            n: self.n,
            gens: minimalize(gens),
        })
    }

    pub fn power(&self, k: u32) -> Result<MonomialIdeal, MonomialError> {
        if k == 0 {
            return Err(MonomialError::NonpositiveK);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal {
            n: self.n,
            gens: minimalize(
                self.gens
                    .iter()
                    .map(|g| Monomial::from_mask(self.n, g.support()))
                    .collect(),
            ),
        }
    }

    /// Supports of the minimal primes: minimal transversals of the generator supports.
    pub fn minimal_prime_masks(&self) -> Vec<u64> {
        if self.gens.is_empty() {
            return Vec::new();
        }
        let mut acc: Option<MonomialIdeal> = None;
        for g in &self.gens {
            let p = MonomialIdeal::prime(self.n, g.support());
            acc = Some(match acc {
                None => p,
                Some(a) => a.intersect(&p).expect("same ambient"),
            });
        }
        acc.unwrap().gens.iter().map(|g| g.support()).collect()
    }

    /// `(height, dim S/I)` computed from the radical.
    pub fn height_and_dim(&self) -> (usize, usize) {
        let h = self
            .minimal_prime_masks()
            .iter()
            .map(|p| p.count_ones() as usize)
            .min()
            .unwrap_or(0);
        (h, self.n - h)
    }

    pub fn max_exponents(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.n];
        for g in &self.gens {
            for (a, &e) in m.iter_mut().zip(&g.exps) {
                *a = (*a).max(e);
            }
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IdealJson {
            n: self.n,
            gens: self.gens.iter().map(|g| g.exps.clone()).collect(),
        })
        .expect("ideal serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, MonomialError> {
        let raw: IdealJson =
            serde_json::from_str(s).map_err(|e| MonomialError::Parse(e.to_string()))?;
        Self::from_exponents(raw.n, &raw.gens)
    }

    /// Parse a comma separated list of monomials such as `x1^2*x3, x2`.
    pub fn parse(s: &str, n: usize) -> Result<Self, MonomialError> {
        let gens = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| Monomial::parse(p, n))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Intersection of a nonempty family.
pub fn intersect_all(ideals: &[MonomialIdeal]) -> Result<MonomialIdeal, MonomialError> {
    let mut it = ideals.iter();
    let mut acc = it.next().expect("nonempty family").clone();
    for i in it {
        acc = acc.intersect(i)?;
    }
    Ok(acc)
}

/// `⋂_F p_F^{k ω_F}` with weights aligned to `delta.facets()`.
pub fn symbolic_power(
    delta: &SimplicialComplex,
    omega: &[u32],
    k: u32,
) -> Result<MonomialIdeal, MonomialError> {
    if k == 0 {
        return Err(MonomialError::NonpositiveK);
    }
    if omega.len() != delta.facets().len() || omega.iter().any(|&w| w == 0) {
        return Err(MonomialError::BadWeights);
    }
    let n = delta.n();
    let parts: Vec<MonomialIdeal> = delta
        .facets()
        .iter()
        .zip(omega)
        .map(|(&f, &w)| {
            let e = w.checked_mul(k).ok_or(MonomialError::Overflow)?;
            Ok(MonomialIdeal::prime_power(n, f, e))
        })
        .collect::<Result<_, MonomialError>>()?;
    intersect_all(&parts)
}

/// `J(Δ) = ⋂_F p_F`.
pub fn cover_ideal(delta: &SimplicialComplex) -> MonomialIdeal {
    let ones = vec![1u32; delta.facets().len()];
    symbolic_power(delta, &ones, 1).expect("canonical weights")
}

/// `I_Δ = ⋂_F p_{[n] \ F}`, generated by the minimal non-faces.
pub fn stanley_reisner(delta: &SimplicialComplex) -> MonomialIdeal {
    let n = delta.n();
    let parts: Vec<MonomialIdeal> = delta
        .stanley_reisner_primes()
        .into_iter()
        .map(|p| MonomialIdeal::prime(n, p))
        .collect();
    if parts.iter().any(|p| p.is_zero()) {
        // Δ is the full simplex.
        return MonomialIdeal::zero(n);
    }
    intersect_all(&parts).expect("same ambient")
}

/// The complex `Δ(I)` of a square-free ideal.
pub fn complex_of(ideal: &MonomialIdeal) -> Result<SimplicialComplex, MonomialError> {
    if !ideal.is_square_free() {
        return Err(MonomialError::NotSquareFree);
    }
    let n = ideal.n();
    if ideal.is_zero() {
        return Ok(SimplicialComplex::from_masks(n, vec![full_mask(n)])?);
    }
    let full = full_mask(n);
    let facets: Vec<u64> = ideal
        .minimal_prime_masks()
        .into_iter()
        .map(|p| full & !p)
        .collect();
    Ok(SimplicialComplex::from_masks(n, facets)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolicComparison {
    Equal,
    Witness(Monomial),
}

/// Compare `J(Δ,ω)^{(k)}` with `J(Δ,ω)^k`.
pub fn symbolic_vs_ordinary(
    delta: &SimplicialComplex,
    omega: &[u32],
    k: u32,
) -> Result<SymbolicComparison, MonomialError> {
    let sym = symbolic_power(delta, omega, k)?;
    let ord = symbolic_power(delta, omega, 1)?.power(k)?;
    // Generators are sorted by degree, so the first miss has minimal degree.
    for g in sym.gens() {
        if !ord.contains(g)? {
            return Ok(SymbolicComparison::Witness(g.clone()));
        }
    }
    Ok(SymbolicComparison::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{cycle, uniform_matroid};

    fn m(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn ideal(s: &str, n: usize) -> MonomialIdeal {
        MonomialIdeal::parse(s, n).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(m("x1^2*x3", 3).exps, vec![2, 0, 1]);
        assert_eq!(m("x1^2*x3", 3).to_string(), "x1^2*x3");
        assert!(Monomial::parse("y2", 3).is_err());
        assert!(Monomial::parse("x4", 3).is_err());
    }

    #[test]
    fn intersections() {
        let a = ideal("x1,x2", 3);
        let b = ideal("x2,x3", 3);
        assert_eq!(a.intersect(&b).unwrap(), ideal("x2,x1*x3", 3));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let p = |s| ideal(s, 3).power(2).unwrap();
        let all = intersect_all(&[p("x1,x2"), p("x2,x3"), p("x1,x3")]).unwrap();
        assert_eq!(all, ideal("x1*x2*x3,x1^2*x2^2,x1^2*x3^2,x2^2*x3^2", 3));
    }

    #[test]
    fn symbolic_powers_of_triangle() {
        let k3 = cycle(3);
        let ones = [1, 1, 1];
        assert_eq!(symbolic_power(&k3, &ones, 1).unwrap(), ideal("x1*x2,x2*x3,x1*x3", 3));
        let s2 = symbolic_power(&k3, &ones, 2).unwrap();
        assert_eq!(s2.gens().len(), 4);
        let j2 = cover_ideal(&k3).power(2).unwrap();
        assert!(j2.gens().iter().all(|g| g.degree() == 4));
        assert!(s2.contains(&m("x1*x2*x3", 3)).unwrap());
        assert!(!j2.contains(&m("x1*x2*x3", 3)).unwrap());
        assert_eq!(
            symbolic_vs_ordinary(&k3, &ones, 2).unwrap(),
            SymbolicComparison::Witness(m("x1*x2*x3", 3))
        );
        assert_eq!(symbolic_vs_ordinary(&k3, &ones, 1).unwrap(), SymbolicComparison::Equal);
        let edge = SimplicialComplex::from_facets(2, &[vec![1, 2]]).unwrap();
        assert_eq!(symbolic_vs_ordinary(&edge, &[1], 3).unwrap(), SymbolicComparison::Equal);
        assert_eq!(symbolic_power(&k3, &ones, 0), Err(MonomialError::NonpositiveK));
    }

    #[test]
    fn radicals() {
        let i = ideal("x1^2*x2,x3^3", 3);
        assert_eq!(i.radical(), ideal("x1*x2,x3", 3));
        assert_eq!(i.radical().radical(), i.radical());
        let k3 = cycle(3);
        assert_eq!(symbolic_power(&k3, &[2, 3, 1], 2).unwrap().radical(), cover_ideal(&k3));
    }

    #[test]
    fn membership_rejects_one() {
        let i = ideal("x1,x2", 3);
        assert!(!i.contains(&Monomial::one(3)).unwrap());
        assert!(MonomialIdeal::parse("1", 2).is_err());
    }

    #[test]
    fn correspondences() {
        let hex = cycle(6);
        let j = cover_ideal(&hex);
        let mut expect = None::<MonomialIdeal>;
        for i in 0..6 {
            let p = MonomialIdeal::prime(6, (1 << i) | (1 << ((i + 1) % 6)));
            expect = Some(match expect {
                None => p,
                Some(e) => e.intersect(&p).unwrap(),
            });
        }
        assert_eq!(j, expect.unwrap());
        let u = uniform_matroid(2, 4);
        assert_eq!(stanley_reisner(&u), cover_ideal(&u.dual().unwrap()));
        assert_eq!(complex_of(&stanley_reisner(&hex)).unwrap(), hex);
    }

    #[test]
    fn heights() {
        assert_eq!(stanley_reisner(&uniform_matroid(2, 4)).height_and_dim(), (2, 2));
        assert_eq!(cover_ideal(&cycle(6)).height_and_dim(), (2, 4));
        assert_eq!(ideal("x1^2", 4).height_and_dim(), (1, 3));
    }

    #[test]
    fn prime_power_generators() {
        let p = MonomialIdeal::prime_power(3, 0b011, 2);
        assert_eq!(p, ideal("x1^2,x1*x2,x2^2", 3));
    }

    #[test]
    fn json_round_trip() {
        let i = ideal("x1^2*x3,x2", 3);
        let s = i.to_json().to_string();
        assert_eq!(MonomialIdeal::from_json_str(&s).unwrap(), i);
    }
}
