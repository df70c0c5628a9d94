//! Reduced homology, graded Betti numbers and derived invariants of
//! monomial quotients.
//!
//! Betti tables index the resolution of `S/I`; `β_{0,0} = 1` is implicit.
//! Two engines compute them. The default one uses the upper Koszul
//! simplicial complexes `K^b(I) = {τ ⊆ supp b : x^{b-τ} ∈ I}` over the lcm
//! lattice, so `β_{i+1,b}(S/I) = dim H̃_{i-1}(K^b(I))` with no polarization.
//! The other polarizes and applies Hochster's formula, and is capped in the
//! number of polarized variables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::monomial::{complex_of, Monomial, MonomialError, MonomialIdeal};
use crate::polar::{polarize, PolarError};
use crate::simplicial::{bits, connectivity_degree, SimplicialComplex};

pub const DEFAULT_VAR_CAP: usize = 16;
pub const VAR_CAP_ENV: &str = "SYMCOMB_VAR_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomalgError {
    #[error("ideal is not square-free")]
    NotSquareFree,
    #[error("complex is not pure")]
    NotPure,
    #[error("{needed} variables exceed the configured cap of {cap}")]
    ResourceCap { needed: usize, cap: usize },
    #[error("field characteristic {0} is not prime")]
    BadField(u64),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Polar(#[from] PolarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn from_characteristic(c: u64) -> Result<Field, HomalgError> {
        if c == 0 {
            return Ok(Field::Rational);
        }
        if c < 2 || (2..c).take_while(|d| d * d <= c).any(|d| c % d == 0) || c > u32::MAX as u64 {
            return Err(HomalgError::BadField(c));
        }
        Ok(Field::Prime(c))
    }
}

/// The polarized-variable cap, read from `SYMCOMB_VAR_CAP` when set.
pub fn configured_var_cap() -> usize {
    std::env::var(VAR_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_VAR_CAP)
}

// ---------------------------------------------------------------- ranks

fn rank_mod_p(mat: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let iv = inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * iv % p;
        }
        let prow = m[rank].clone();
        for r in rank + 1..rows {
            let f = m[r][c];
            if f != 0 {
                for (x, y) in m[r].iter_mut().zip(&prow) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd_row_i128(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

fn rank_rational_i128(mat: &[Vec<i64>]) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = mat.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let piv = (rank..rows)
            .filter(|&r| m[r][c] != 0)
            .min_by_key(|&r| m[r][c].unsigned_abs());
        let Some(piv) = piv else { continue };
        m.swap(rank, piv);
        let prow = m[rank].clone();
        let p = prow[c];
        for r in rank + 1..rows {
            let a = m[r][c];
            if a == 0 {
                continue;
            }
            let g = p.gcd(&a);
            let (sp, sa) = (p / g, a / g);
            for (x, y) in m[r].iter_mut().zip(&prow) {
                *x = x.checked_mul(sp)?.checked_sub(y.checked_mul(sa)?)?;
            }
            gcd_row_i128(&mut m[r]);
        }
        rank += 1;
    }
    Some(rank)
}

fn rank_rational_big(mat: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = mat.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let piv = (rank..rows).filter(|&r| !m[r][c].is_zero()).min_by_key(|&r| m[r][c].abs());
        let Some(piv) = piv else { continue };
        m.swap(rank, piv);
        let prow = m[rank].clone();
        let p = prow[c].clone();
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let g = p.gcd(&a);
            let (sp, sa) = (&p / &g, &a / &g);
            for (x, y) in m[r].iter_mut().zip(&prow) {
                *x = &*x * &sp - y * &sa;
            }
            let g = m[r].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g > BigInt::from(1) {
                for x in m[r].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank of an integer matrix over the given field.
pub fn rank(mat: &[Vec<i64>], field: Field) -> usize {
    if mat.is_empty() || mat[0].is_empty() {
        return 0;
    }
    match field {
        Field::Prime(p) => rank_mod_p(mat, p),
        Field::Rational => rank_rational_i128(mat).unwrap_or_else(|| rank_rational_big(mat)),
    }
}

// ------------------------------------------------------------- homology

/// Reduced homology of a downward closed family of faces (masks).
/// Entry `h[q+1]` is `dim H̃_q`, for `q = -1..=max dim`.
/// A void family (not even the empty face) has no homology.
pub fn reduced_homology_of_faces(faces: &[u64], field: Field) -> Vec<usize> {
    if faces.is_empty() {
        return Vec::new();
    }
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap();
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    for v in by_size.iter_mut() {
        v.sort_unstable();
        v.dedup();
    }
    let index: Vec<HashMap<u64, usize>> = by_size
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    // ranks[s] = rank of the boundary from size s to size s-1.
    let mut ranks = vec![0usize; top + 2];
    for s in 1..=top {
        if by_size[s].is_empty() || by_size[s - 1].is_empty() {
            continue;
        }
        let mut mat = vec![vec![0i64; by_size[s].len()]; by_size[s - 1].len()];
        for (col, &f) in by_size[s].iter().enumerate() {
            for (pos, v) in bits(f).enumerate() {
                let g = f & !(1u64 << v);
                if let Some(&row) = index[s - 1].get(&g) {
                    mat[row][col] = if pos % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        ranks[s] = rank(&mat, field);
    }
    (0..=top)
        .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
        .collect()
}

/// `H̃_q(Δ)` for `q = -1..=dim Δ`, stored at index `q + 1`.
pub fn reduced_homology(delta: &SimplicialComplex, field: Field) -> Vec<usize> {
    reduced_homology_of_faces(&delta.all_faces(), field)
}

/// Reduced Euler characteristic from face counts, `Σ (-1)^{|F|-1}`.
pub fn reduced_euler_characteristic(delta: &SimplicialComplex) -> i64 {
    delta
        .f_vector()
        .iter()
        .enumerate()
        .map(|(s, &c)| if s % 2 == 1 { c as i64 } else { -(c as i64) })
        .sum()
}

// ---------------------------------------------------------- Betti tables

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// `(i, j) -> β_{i,j}(S/I)` for `i >= 1`.
    pub entries: BTreeMap<(usize, usize), u64>,
    pub ambient_n: usize,
    pub field_char: u64,
}

impl BettiTable {
    fn new(ambient_n: usize, field: Field) -> Self {
        BettiTable {
            entries: BTreeMap::new(),
            ambient_n,
            field_char: field.characteristic(),
        }
    }

    fn add(&mut self, i: usize, j: usize, v: u64) {
        if v > 0 {
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn pd(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// `reg(S/I) = max{j - i}`; zero for the zero ideal.
    pub fn reg(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    /// Macaulay-style grid: rows are `j - i`, columns are `i`.
    pub fn to_grid(&self) -> String {
        let pd = self.pd();
        let reg = self.reg();
        let cell = |i: usize, r: usize| -> String {
            if i == 0 {
                return if r == 0 { "1".into() } else { ".".into() };
            }
            match self.get(i, i + r) {
                0 => ".".into(),
                v => v.to_string(),
            }
        };
        let totals: Vec<String> = (0..=pd)
            .map(|i| {
                if i == 0 {
                    "1".to_string()
                } else {
                    self.entries
                        .iter()
                        .filter(|(k, _)| k.0 == i)
                        .map(|(_, v)| v)
                        .sum::<u64>()
                        .to_string()
                }
            })
            .collect();
        let width = (0..=pd)
            .map(|i| {
                let mut w = totals[i].len().max(i.to_string().len());
                for r in 0..=reg {
                    w = w.max(cell(i, r).len());
                }
                w
            })
            .collect::<Vec<_>>();
        let label = 7usize.max(reg.to_string().len() + 2);
        let mut out = String::new();
        let _ = write!(out, "{:>label$}", "");
        for i in 0..=pd {
            let _ = write!(out, " {:>w$}", i, w = width[i]);
        }
        out.push('\n');
        let _ = write!(out, "{:>label$}", "total:");
        for i in 0..=pd {
            let _ = write!(out, " {:>w$}", totals[i], w = width[i]);
        }
        out.push('\n');
        for r in 0..=reg {
            let _ = write!(out, "{:>label$}", format!("{r}:"));
            for i in 0..=pd {
                let _ = write!(out, " {:>w$}", cell(i, r), w = width[i]);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field_char": self.field_char,
            "ambient_n": self.ambient_n,
            "betti": self.entries.iter().map(|(&(i, j), &v)| [i as u64, j as u64, v]).collect::<Vec<_>>(),
        })
    }
}

/// All lcms of nonempty subsets of the generators.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let mut lat: BTreeSet<Monomial> = BTreeSet::new();
    for g in ideal.gens() {
        let new: Vec<Monomial> = lat.iter().map(|x| x.lcm(g)).collect();
        lat.insert(g.clone());
        lat.extend(new);
    }
    lat.into_iter().collect()
}

/// Betti numbers of `S/I` from upper Koszul complexes on the lcm lattice.
pub fn koszul_betti(ideal: &MonomialIdeal, field: Field) -> BettiTable {
    let mut table = BettiTable::new(ideal.n(), field);
    for b in lcm_lattice(ideal) {
        let supp: Vec<usize> = bits(b.support()).collect();
        let mut faces = Vec::new();
        for tau in 0..(1u64 << supp.len()) {
            let mut e = b.exps.clone();
            let mut mask = 0u64;
            for (t, &v) in supp.iter().enumerate() {
                if tau >> t & 1 == 1 {
                    e[v] -= 1;
                    mask |= 1u64 << v;
                }
            }
            if ideal.gens().iter().any(|g| g.exps.iter().zip(&e).all(|(a, c)| a <= c)) {
                faces.push(mask);
            }
        }
        let h = reduced_homology_of_faces(&faces, field);
        let deg = b.degree() as usize;
        for (i, &v) in h.iter().enumerate() {
            table.add(i + 1, deg, v as u64);
        }
    }
    table
}

/// Hochster's formula `β_{i,j} = Σ_{|W|=j} dim H̃_{j-i-1}(Δ|_W)`. Only `W`
/// in the lcm lattice can contribute, so the sum runs over those.
pub fn hochster_betti(ideal: &MonomialIdeal, field: Field) -> Result<BettiTable, HomalgError> {
    if !ideal.is_square_free() {
        return Err(HomalgError::NotSquareFree);
    }
    let supports: Vec<u64> = ideal.gens().iter().map(|g| g.support()).collect();
    let mut table = BettiTable::new(ideal.n(), field);
    for w in lcm_lattice(ideal) {
        let wm = w.support();
        let mut faces = Vec::new();
        let mut sub = wm;
        loop {
            if !supports.iter().any(|&s| s & sub == s) {
                faces.push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & wm;
        }
        let h = reduced_homology_of_faces(&faces, field);
        let j = wm.count_ones() as usize;
        // H̃_q contributes to i = j - q - 1.
        for (idx, &v) in h.iter().enumerate() {
            let q = idx as i64 - 1;
            let i = j as i64 - q - 1;
            if i >= 1 {
                table.add(i as usize, j, v as u64);
            }
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Koszul,
    /// Hochster's formula on the polarization, refusing more than `cap` variables.
    Polarization { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialInvariants {
    pub pd: usize,
    pub depth: usize,
    pub reg: usize,
    pub height: usize,
    pub dim: usize,
    pub is_cm: bool,
    pub betti: BettiTable,
}

pub fn betti_table(ideal: &MonomialIdeal, field: Field, engine: Engine) -> Result<BettiTable, HomalgError> {
    match engine {
        Engine::Koszul => Ok(koszul_betti(ideal, field)),
        Engine::Polarization { cap } => {
            let p = polarize(ideal)?;
            let needed = p.ideal.n();
            if needed > cap {
                return Err(HomalgError::ResourceCap { needed, cap });
            }
            let mut t = hochster_betti(&p.ideal, field)?;
            t.ambient_n = ideal.n();
            Ok(t)
        }
    }
}

/// pd, depth, reg, height and Cohen–Macaulayness of `S/I`.
pub fn invariants_of_monomial(ideal: &MonomialIdeal, field: Field) -> Result<MonomialInvariants, HomalgError> {
    invariants_with_engine(ideal, field, Engine::Koszul)
}

pub fn invariants_with_engine(
    ideal: &MonomialIdeal,
    field: Field,
    engine: Engine,
) -> Result<MonomialInvariants, HomalgError> {
    let betti = betti_table(ideal, field, engine)?;
    let (height, dim) = ideal.height_and_dim();
    let pd = betti.pd();
    Ok(MonomialInvariants {
        pd,
        depth: ideal.n() - pd,
        reg: betti.reg(),
        height,
        dim,
        is_cm: pd == height,
        betti,
    })
}

/// `e(k[Δ])` of a pure complex: its number of facets.
pub fn multiplicity(delta: &SimplicialComplex) -> Result<u64, HomalgError> {
    if !delta.is_pure() {
        return Err(HomalgError::NotPure);
    }
    Ok(delta.facets().len() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EisenbudGoto {
    Checked { holds: bool, reg: usize, e: u64, ht: usize },
    NotApplicable { reason: String },
}

/// Compares `reg(S/I)` with `e(S/I) - ht(I)` for a square-free `I ⊆ m²`
/// whose complex is connected in codimension one.
pub fn eisenbud_goto_check(ideal: &MonomialIdeal, field: Field) -> Result<EisenbudGoto, HomalgError> {
    if !ideal.is_square_free() {
        return Err(HomalgError::NotSquareFree);
    }
    if ideal.is_zero() {
        return Ok(EisenbudGoto::NotApplicable {
            reason: "zero ideal".into(),
        });
    }
    if ideal.gens().iter().any(|g| g.degree() < 2) {
        return Ok(EisenbudGoto::NotApplicable {
            reason: "ideal has a linear generator".into(),
        });
    }
    let delta = complex_of(ideal)?;
    let (ht, dim) = ideal.height_and_dim();
    let conn = connectivity_degree(&delta.stanley_reisner_primes(), ideal.n()).expect("facets are incomparable");
    if conn < dim as i64 - 1 {
        return Ok(EisenbudGoto::NotApplicable {
            reason: format!("connectivity {conn} is below dim - 1 = {}", dim as i64 - 1),
        });
    }
    let top = delta.dimension();
    let e = delta
        .facets()
        .iter()
        .filter(|f| f.count_ones() as i64 == top + 1)
        .count() as u64;
    let reg = koszul_betti(ideal, field).reg();
    Ok(EisenbudGoto::Checked {
        holds: (reg as i64) <= e as i64 - ht as i64,
        reg,
        e,
        ht,
    })
}

fn binom(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.to_u64().expect("binomial fits")
}

/// `HF_{k[Δ]}(k) = Σ_{∅≠F∈Δ} C(k-1, |F|-1)`.
pub fn hilbert_function_sr(delta: &SimplicialComplex, k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    delta
        .f_vector()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(s, &c)| c * binom(k - 1, s as u64 - 1))
        .sum()
}

/// Number of degree-`k` monomials outside `I`, by enumeration.
pub fn count_standard_monomials(ideal: &MonomialIdeal, k: u32) -> u64 {
    let n = ideal.n();
    let mut count = 0;
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, ideal: &MonomialIdeal, count: &mut u64) {
        if i + 1 == e.len() {
            e[i] = left;
            if !ideal.gens().iter().any(|g| g.exps.iter().zip(e.iter()).all(|(a, b)| a <= b)) {
                *count += 1;
            }
            e[i] = 0;
            return;
        }
        for a in 0..=left {
            e[i] = a;
            rec(i + 1, left - a, e, ideal, count);
        }
        e[i] = 0;
    }
    if n == 0 {
        return 0;
    }
    rec(0, k, &mut e, ideal, &mut count);
    count
}
