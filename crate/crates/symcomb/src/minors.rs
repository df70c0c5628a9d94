//! Young diagram combinatorics for algebras of minors.
//!
//! Conventions: the height of a partition is its first part, `ht(λ) = λ₁`,
//! and `L_λ V` is the Schur module with `L_(m) V = ∧^m V`. So
//! `dim L_λ V` is the usual Schur dimension of the transpose `ᵗλ`, and it
//! vanishes once `λ₁ > dim V`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorsError {
    #[error("parts must be positive and weakly decreasing")]
    BadPartition,
    #[error("diagram is not admissible for t = {0}")]
    NotAdmissible(u32),
    #[error("closed-form and counted predecessor uniqueness disagree for {0}")]
    ClassificationMismatch(String),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("oracle enumeration too large (t*d = {0} > 12)")]
    OracleTooLarge(u32),
    #[error("entry {entry} is outside [1, {q}]")]
    EntryOutOfRange { entry: u32, q: u32 },
    #[error("matrix must be at least {0}x{0}")]
    MatrixTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Zero parts are dropped; the rest must be weakly decreasing.
    pub fn new(parts: &[u32]) -> Result<Self, MinorsError> {
        let p: Vec<u32> = parts.iter().copied().filter(|&x| x > 0).collect();
        if p.windows(2).any(|w| w[0] < w[1]) {
            return Err(MinorsError::BadPartition);
        }
        Ok(Partition(p))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    /// `ht(λ) = λ₁`.
    pub fn height(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let h = self.height();
        Partition((1..=h).map(|c| self.0.iter().filter(|&&x| x >= c).count() as u32).collect())
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn is_rectangle(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// `λ₁ = … = λ_i > λ_{i+1} = … = λ_k` for some `i`.
    pub fn is_fat_hook(&self) -> bool {
        let mut distinct = self.0.clone();
        distinct.dedup();
        distinct.len() == 2
    }

    /// `λ(t) = (λ₁ + t, λ₁, λ₂, …)`.
    pub fn pieri_bound(&self, t: u32) -> Partition {
        let mut p = vec![self.height() + t];
        p.extend(self.0.iter().copied());
        Partition(p)
    }

    /// Rows of `*` boxes.
    pub fn ascii(&self) -> String {
        self.0
            .iter()
            .map(|&r| "*".repeat(r as usize))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDiagram {
    pub gamma: Partition,
    pub lambda: Partition,
}

impl BiDiagram {
    pub fn new(gamma: Partition, lambda: Partition) -> Self {
        BiDiagram { gamma, lambda }
    }

    pub fn is_symmetric(&self) -> bool {
        self.gamma == self.lambda
    }

    pub fn swapped(&self) -> BiDiagram {
        BiDiagram::new(self.lambda.clone(), self.gamma.clone())
    }
}

impl fmt::Display for BiDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.gamma, self.lambda)
    }
}

/// `m × n` generic matrix, `t`-minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorsParams {
    pub m: u32,
    pub n: u32,
    pub t: u32,
}

impl MinorsParams {
    pub fn new(m: u32, n: u32, t: u32) -> Result<Self, MinorsError> {
        if !(1 <= t && t <= m && m <= n) {
            return Err(MinorsError::OutOfRange(format!("need 1 <= t <= m <= n, got t={t}, m={m}, n={n}")));
        }
        Ok(MinorsParams { m, n, t })
    }

    /// Range used by the regularity, bound and shape statements.
    fn require_generic(&self) -> Result<(), MinorsError> {
        if !(1 < self.t && self.t < self.m && self.n > self.t + 1) {
            return Err(MinorsError::OutOfRange(format!(
                "need 1 < t < m and n > t+1, got t={}, m={}, n={}",
                self.t, self.m, self.n
            )));
        }
        Ok(())
    }
}

/// `t | |λ|` and `t·k ≤ |λ|`.
pub fn is_admissible(lambda: &Partition, t: u32) -> bool {
    t > 0 && lambda.size() % t == 0 && t as u64 * lambda.num_parts() as u64 <= lambda.size() as u64
}

/// `|λ| = t·d` with at most `d` parts.
pub fn is_d_admissible(lambda: &Partition, t: u32, d: u32) -> bool {
    lambda.size() == t * d && lambda.num_parts() as u32 <= d
}

/// Partitions of `total` with at most `max_parts` parts, each `<= max_part`,
/// in decreasing lexicographic order.
pub fn partitions(total: u32, max_parts: usize, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: u32, max_parts: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_parts {
            return;
        }
        for p in (1..=cap.min(left)).rev() {
            cur.push(p);
            rec(left - p, max_parts, p, cur, out);
            cur.pop();
        }
    }
    rec(total, max_parts, max_part, &mut cur, &mut out);
    out
}

/// d-admissible partitions with `λ₁ <= max_height`.
pub fn d_admissible(t: u32, d: u32, max_height: u32) -> Vec<Partition> {
    partitions(t * d, d as usize, max_height)
}

fn degree_of(lambda: &Partition, t: u32) -> Result<u32, MinorsError> {
    if t == 0 || lambda.size() % t != 0 {
        return Err(MinorsError::NotAdmissible(t));
    }
    let d = lambda.size() / t;
    if !is_d_admissible(lambda, t, d) || d == 0 {
        return Err(MinorsError::NotAdmissible(t));
    }
    Ok(d)
}

/// `λ'` of size `t(d-1)` with at most `d-1` parts and `λ' ⊆ λ ⊆ λ'(t)`.
pub fn predecessors(lambda: &Partition, t: u32) -> Result<Vec<Partition>, MinorsError> {
    let d = degree_of(lambda, t)?;
    if d == 1 {
        return Ok(Vec::new());
    }
    Ok(partitions(t * (d - 1), (d - 1) as usize, lambda.height())
        .into_iter()
        .filter(|mu| lambda.contains(mu) && mu.pieri_bound(t).contains(lambda))
        .collect())
}

/// Closed form: a rectangle, or a fat hook with exactly `d` parts.
pub fn unique_predecessor_closed_form(lambda: &Partition, t: u32) -> Result<bool, MinorsError> {
    let d = degree_of(lambda, t)?;
    Ok(lambda.is_rectangle() || (lambda.is_fat_hook() && lambda.num_parts() as u32 == d))
}

/// Uniqueness of the predecessor, computed both ways.
pub fn has_unique_predecessor(lambda: &Partition, t: u32) -> Result<bool, MinorsError> {
    let d = degree_of(lambda, t)?;
    if d < 2 {
        return Err(MinorsError::NotAdmissible(t));
    }
    let counted = predecessors(lambda, t)?.len() == 1;
    let closed = unique_predecessor_closed_form(lambda, t)?;
    if counted != closed {
        return Err(MinorsError::ClassificationMismatch(lambda.to_string()));
    }
    Ok(counted)
}

/// Memoized multiplicities `n(γ, λ)` of bi-diagrams for a fixed `t`.
pub struct Multiplicities {
    t: u32,
    memo: HashMap<BiDiagram, BigUint>,
    preds: HashMap<Partition, Vec<Partition>>,
}

impl Multiplicities {
    pub fn new(t: u32) -> Self {
        Multiplicities {
            t,
            memo: HashMap::new(),
            preds: HashMap::new(),
        }
    }

    fn preds(&mut self, p: &Partition) -> Result<Vec<Partition>, MinorsError> {
        if let Some(v) = self.preds.get(p) {
            return Ok(v.clone());
        }
        let v = predecessors(p, self.t)?;
        self.preds.insert(p.clone(), v.clone());
        Ok(v)
    }

    /// `n(γ,λ) = Σ n(γ',λ')` over predecessor bi-diagrams; `1` in degree one.
    pub fn get(&mut self, bi: &BiDiagram) -> Result<BigUint, MinorsError> {
        if let Some(v) = self.memo.get(bi) {
            return Ok(v.clone());
        }
        let dg = degree_of(&bi.gamma, self.t)?;
        let dl = degree_of(&bi.lambda, self.t)?;
        if dg != dl {
            return Err(MinorsError::NotAdmissible(self.t));
        }
        let value = if dg == 1 {
            BigUint::one()
        } else {
            let pg = self.preds(&bi.gamma)?;
            let pl = self.preds(&bi.lambda)?;
            let mut acc = BigUint::zero();
            for g in &pg {
                for l in &pl {
                    acc += self.get(&BiDiagram::new(g.clone(), l.clone()))?;
                }
            }
            acc
        };
        self.memo.insert(bi.clone(), value.clone());
        Ok(value)
    }
}

pub fn multiplicity_n(bi: &BiDiagram, t: u32) -> Result<BigUint, MinorsError> {
    Multiplicities::new(t).get(bi)
}

/// `dim L_λ V` for `dim V = n`: hook-content product on `ᵗλ`.
pub fn dim_schur(lambda: &Partition, n: u32) -> BigUint {
    if lambda.height() > n {
        return BigUint::zero();
    }
    let mu = lambda.transpose();
    let mu_t = lambda;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (r, &row) in mu.parts().iter().enumerate() {
        for c in 0..row as usize {
            let content = c as i64 - r as i64;
            let arm = row as i64 - c as i64 - 1;
            let leg = mu_t.part(c) as i64 - r as i64 - 1;
            num *= BigInt::from(n as i64 + content);
            den *= BigInt::from(arm + leg + 1);
        }
    }
    let q = num / den;
    q.to_biguint().unwrap_or_default()
}

/// Tableaux of shape `λ` with entries in `[n]`, rows strictly and columns
/// weakly increasing.
pub fn dim_schur_oracle(lambda: &Partition, n: u32) -> u64 {
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<u32>> = lambda.parts().iter().map(|&l| vec![0; l as usize]).collect();
    fn rec(idx: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, n: u32) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(grid[r][c - 1] + 1);
        }
        if r > 0 {
            lo = lo.max(grid[r - 1][c]);
        }
        let mut total = 0;
        for v in lo..=n {
            grid[r][c] = v;
            total += rec(idx + 1, cells, grid, n);
        }
        grid[r][c] = 0;
        total
    }
    rec(0, &cells, &mut grid, n)
}

/// `HF_{A_t}(d) = Σ dim L_λ W · dim L_λ V` over d-admissible `λ` with `λ₁ ≤ m`.
pub fn hf_at(p: &MinorsParams, d: u32) -> BigUint {
    if d == 0 {
        return BigUint::one();
    }
    d_admissible(p.t, d, p.m)
        .iter()
        .map(|l| dim_schur(l, p.m) * dim_schur(l, p.n))
        .sum()
}

/// Distinct products `M_1 ⋯ M_k` of main diagonals of `r_q`-minors with
/// `(r_1, …, r_k)` d-admissible.
pub fn hf_at_oracle(p: &MinorsParams, d: u32) -> Result<u64, MinorsError> {
    if d == 0 {
        return Ok(1);
    }
    if p.t * d > 12 {
        return Err(MinorsError::OracleTooLarge(p.t * d));
    }
    let (m, n) = (p.m as usize, p.n as usize);
    // Diagonals by size, as exponent vectors over the m*n variables.
    let mut diagonals: Vec<Vec<Vec<u8>>> = vec![Vec::new(); m + 1];
    for r in 1..=m {
        for rows in combinations(m, r) {
            for cols in combinations(n, r) {
                let mut e = vec![0u8; m * n];
                for (a, b) in rows.iter().zip(&cols) {
                    e[a * n + b] += 1;
                }
                diagonals[r].push(e);
            }
        }
    }
    let mut seen: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
    for shape in d_admissible(p.t, d, p.m) {
        let sizes: Vec<usize> = shape.parts().iter().map(|&x| x as usize).collect();
        let mut acc = vec![0u8; m * n];
        fn rec(
            pos: usize,
            start: usize,
            sizes: &[usize],
            diagonals: &[Vec<Vec<u8>>],
            acc: &mut Vec<u8>,
            seen: &mut std::collections::HashSet<Vec<u8>>,
        ) {
            if pos == sizes.len() {
                seen.insert(acc.clone());
                return;
            }
            let same_as_prev = pos > 0 && sizes[pos] == sizes[pos - 1];
            let from = if same_as_prev { start } else { 0 };
            for (idx, dgl) in diagonals[sizes[pos]].iter().enumerate().skip(from) {
                for (a, b) in acc.iter_mut().zip(dgl) {
                    *a += b;
                }
                rec(pos + 1, idx, sizes, diagonals, acc, seen);
                for (a, b) in acc.iter_mut().zip(dgl) {
                    *a -= b;
                }
            }
        }
        rec(0, 0, &sizes, &diagonals, &mut acc, &mut seen);
    }
    Ok(seen.len() as u64)
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Left side of the tensor-power identity
/// `Σ n(γ,λ) dim L_γ W dim L_λ V = (C(m,t) C(n,t))^d`.
pub fn tensor_sum(p: &MinorsParams, d: u32) -> Result<(BigUint, BigUint), MinorsError> {
    let mut mult = Multiplicities::new(p.t);
    let gammas = d_admissible(p.t, d, p.m);
    let lambdas = d_admissible(p.t, d, p.n);
    let mut lhs = BigUint::zero();
    for g in &gammas {
        let dg = dim_schur(g, p.m);
        for l in &lambdas {
            let v = mult.get(&BiDiagram::new(g.clone(), l.clone()))?;
            lhs += v * &dg * dim_schur(l, p.n);
        }
    }
    let base = binomial(p.m as u64, p.t as u64) * binomial(p.n as u64, p.t as u64);
    Ok((lhs, base.pow(d)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Regularity {
    /// 1 when `m + n - 1 < ⌊mn/t⌋`, else 2.
    pub case: u8,
    pub k0: Option<i64>,
    pub a: i64,
    pub reg: i64,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b) + if Integer::mod_floor(&a, &b) != 0 { 1 } else { 0 }
}

/// a-invariant and regularity of `A_t(m, n)`, which has dimension `mn`.
pub fn regularity_and_a_invariant(p: &MinorsParams) -> Result<Regularity, MinorsError> {
    p.require_generic()?;
    let (m, n, t) = (p.m as i64, p.n as i64, p.t as i64);
    if m + n - 1 < Integer::div_floor(&(m * n), &t) {
        let a = -ceil_div(m * n, t);
        Ok(Regularity {
            case: 1,
            k0: None,
            a,
            reg: m * n + a,
        })
    } else {
        let k0 = ceil_div(t * m + t * n - m * n, m - t);
        let a = -Integer::div_floor(&(m * (n + k0)), &t);
        Ok(Regularity {
            case: 2,
            k0: Some(k0),
            a,
            reg: m * n + a,
        })
    }
}

/// `m - 2` when `gcd(m-1, t-1) = 1`, else `m - 1`.
pub fn sagbi_degree_bound(m: u32, t: u32) -> Result<u32, MinorsError> {
    if !(1 < t && t < m) {
        return Err(MinorsError::OutOfRange(format!("need 1 < t < m, got t={t}, m={m}")));
    }
    Ok(if (m - 1).gcd(&(t - 1)) == 1 { m - 2 } else { m - 1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationBounds {
    pub colbound: u32,
    pub degbound: i64,
    pub regularity_case: u8,
}

/// Bounds on minimal relations: `m + t` and `m(m+t) + a(A_t(m, m+t)) + 1`.
pub fn relation_degree_bounds(p: &MinorsParams) -> Result<RelationBounds, MinorsError> {
    if !(1 < p.t && p.t < p.m) {
        return Err(MinorsError::OutOfRange(format!("need 1 < t < m, got t={}, m={}", p.t, p.m)));
    }
    let wide = MinorsParams {
        m: p.m,
        n: p.m + p.t,
        t: p.t,
    };
    let r = regularity_and_a_invariant(&wide)?;
    Ok(RelationBounds {
        colbound: p.m + p.t,
        degbound: (p.m * (p.m + p.t)) as i64 + r.a + 1,
        regularity_case: r.case,
    })
}

/// The degree-3 shape relations `(γ^i | λ^i)`, `1 <= i <= ⌊t/2⌋`, that fit
/// the matrix: `γ^i_1 <= m` and `λ^i_1 <= n`.
pub fn shape_relations(p: &MinorsParams) -> Result<Vec<BiDiagram>, MinorsError> {
    p.require_generic()?;
    let mut out = Vec::new();
    for bi in shape_family(p.t) {
        if bi.gamma.height() <= p.m && bi.lambda.height() <= p.n {
            out.push(bi);
        }
    }
    Ok(out)
}

/// Every `(γ^i | λ^i)` for `1 <= i <= ⌊t/2⌋`, ignoring the matrix size.
pub fn shape_family(t: u32) -> Vec<BiDiagram> {
    let mut out = Vec::new();
    for i in 1..=t / 2 {
        let (g, l) = if t % 2 == 0 {
            let a = 3 * t / 2 - i + 1;
            let b = t / 2 + i - 1;
            (vec![a, a, 2 * (i - 1)], vec![2 * (t - i + 1), b, b])
        } else {
            let a = (3 * t - 1) / 2 - i + 1;
            let b = (t + 1) / 2 + i - 1;
            (vec![a, a, 2 * (i - 1) + 1], vec![2 * (t - i + 1) - 1, b, b])
        };
        out.push(BiDiagram::new(
            Partition::new(&g).expect("valid shape"),
            Partition::new(&l).expect("valid shape"),
        ));
    }
    out
}

/// Asymmetric d-admissible bi-diagrams fitting an `m × n` matrix, of
/// multiplicity one, whose unique predecessor is symmetric.
pub fn minimal_relation_candidates(p: &MinorsParams, d: u32) -> Result<Vec<BiDiagram>, MinorsError> {
    let mut mult = Multiplicities::new(p.t);
    let gammas = d_admissible(p.t, d, p.m);
    let lambdas = d_admissible(p.t, d, p.n);
    let mut out = Vec::new();
    for g in &gammas {
        let pg = predecessors(g, p.t)?;
        if pg.len() != 1 {
            continue;
        }
        for l in &lambdas {
            if g == l {
                continue;
            }
            let pl = predecessors(l, p.t)?;
            if pl.len() != 1 || pl[0] != pg[0] {
                continue;
            }
            if mult.get(&BiDiagram::new(g.clone(), l.clone()))? == BigUint::one() {
                out.push(BiDiagram::new(g.clone(), l.clone()));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityInfo {
    pub is_identity: bool,
    pub is_homogeneous: bool,
    pub is_primitive: bool,
    pub is_homogeneous_primitive: bool,
}

/// `(size, sum)` of every nonempty proper-or-full sub-multiset, by index subsets.
fn subset_sums(a: &[u32]) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(1 << a.len());
    for mask in 1u64..(1u64 << a.len()) {
        let s = crate::simplicial::bits(mask).map(|i| a[i] as u64).sum();
        out.push((mask.count_ones() as usize, s));
    }
    out
}

/// Classify `a_1 + … + a_k = b_1 + … + b_l` with entries in `[q]`.
pub fn partition_identity(a: &[u32], b: &[u32], q: u32) -> Result<IdentityInfo, MinorsError> {
    for &x in a.iter().chain(b) {
        if x == 0 || x > q {
            return Err(MinorsError::EntryOutOfRange { entry: x, q });
        }
    }
    let sa: u64 = a.iter().map(|&x| x as u64).sum();
    let sb: u64 = b.iter().map(|&x| x as u64).sum();
    let is_identity = !a.is_empty() && !b.is_empty() && sa == sb;
    let is_homogeneous = is_identity && a.len() == b.len();
    let subs_a = subset_sums(a);
    let subs_b = subset_sums(b);
    let total = a.len() + b.len();
    let mut primitive = is_identity;
    let mut hom_primitive = is_homogeneous;
    for &(ra, xa) in &subs_a {
        for &(rb, xb) in &subs_b {
            if xa != xb {
                continue;
            }
            if ra + rb < total {
                primitive = false;
            }
            if ra == rb && ra < a.len() {
                hom_primitive = false;
            }
        }
    }
    Ok(IdentityInfo {
        is_identity,
        is_homogeneous,
        is_primitive: primitive,
        is_homogeneous_primitive: hom_primitive,
    })
}

/// Weakly increasing `a ∈ [q]^k` with `a_1 + … + a_k = k t` and no
/// equal-length proper subidentity against `t + … + t`.
pub fn enumerate_hpi(q: u32, t: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: u32, q: u32, left: u64, k: usize, t: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            if left == 0 {
                let rhs = vec![t; k];
                let info = partition_identity(cur, &rhs, q.max(t)).expect("entries in range");
                if info.is_homogeneous_primitive {
                    out.push(cur.clone());
                }
            }
            return;
        }
        let slots = (k - cur.len()) as u64;
        for v in start..=q {
            if (v as u64) * slots > left {
                break;
            }
            cur.push(v);
            rec(v, q, left - v as u64, k, t, cur, out);
            cur.pop();
        }
    }
    if k == 0 || t == 0 || q == 0 {
        return out;
    }
    rec(1, q, k as u64 * t as u64, k as usize, t, &mut cur, &mut out);
    out
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn minor(mat: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> BigInt {
    let sub: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| BigInt::from(mat[r][c])).collect())
        .collect();
    determinant(&sub)
}

/// Value of the cubic determinantal relation between `t`-minors. Rows
/// `1..t-2` plus two of `{t-1, t, t+1}`, columns `1..t-1` plus one of
/// `{t, t+1, t+2}` (1-based).
pub fn cubic_relation_value(t: usize, mat: &[Vec<i64>]) -> BigInt {
    let base: Vec<usize> = (0..t - 2).collect();
    let row_sets: Vec<Vec<usize>> = [(t - 2, t - 1), (t - 2, t), (t - 1, t)]
        .iter()
        .map(|&(x, y)| {
            let mut r = base.clone();
            r.push(x);
            r.push(y);
            r
        })
        .collect();
    let col_sets: Vec<Vec<usize>> = [t - 1, t, t + 1]
        .iter()
        .map(|&c| {
            let mut s: Vec<usize> = (0..t - 1).collect();
            s.push(c);
            s
        })
        .collect();
    let entries: Vec<Vec<BigInt>> = row_sets
        .iter()
        .map(|r| col_sets.iter().map(|c| minor(mat, r, c)).collect())
        .collect();
    determinant(&entries)
}

/// `[12][34] - [13][24] + [14][23]` on the 2×4 submatrix.
pub fn plucker_value(mat: &[Vec<i64>], rows: [usize; 2], cols: [usize; 4]) -> BigInt {
    let br = |i: usize, j: usize| minor(mat, &rows, &[cols[i], cols[j]]);
    br(0, 1) * br(2, 3) - br(0, 2) * br(1, 3) + br(0, 3) * br(1, 2)
}

/// Checks the cubic relation and, for `t = 2`, every Plücker relation.
pub fn verify_det_relations(t: usize, mat: &[Vec<i64>]) -> Result<bool, MinorsError> {
    let need = t + 2;
    if t < 2 || mat.len() < need || mat.iter().any(|r| r.len() < need) {
        return Err(MinorsError::MatrixTooSmall(need));
    }
    if !cubic_relation_value(t, mat).is_zero() {
        return Ok(false);
    }
    if t == 2 {
        let cols = mat[0].len();
        for rows in combinations(mat.len(), 2) {
            for cs in combinations(cols, 4) {
                let v = plucker_value(mat, [rows[0], rows[1]], [cs[0], cs[1], cs[2], cs[3]]);
                if !v.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Seeded square integer matrix with entries in `[-9, 9]`.
pub fn random_matrix(seed: u64, size: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| (0..size).map(|_| rng.gen_range(-9..=9)).collect())
        .collect()
}

/// `dim L_λ` as `u64` for display.
pub fn dim_schur_u64(lambda: &Partition, n: u32) -> Option<u64> {
    dim_schur(lambda, n).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v).unwrap()
    }

    fn params(m: u32, n: u32, t: u32) -> MinorsParams {
        MinorsParams::new(m, n, t).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&p(&[2, 2]), 2));
        assert!(!is_admissible(&p(&[1, 1, 1]), 3));
        assert!(is_d_admissible(&p(&[4, 1, 1]), 2, 3));
        assert!(Partition::new(&[1, 2]).is_err());
    }

    #[test]
    fn predecessor_examples() {
        assert_eq!(predecessors(&p(&[4, 1, 1]), 2).unwrap(), vec![p(&[3, 1])]);
        assert_eq!(predecessors(&p(&[3, 3]), 2).unwrap(), vec![p(&[3, 1])]);
        assert!(predecessors(&p(&[3]), 3).unwrap().is_empty());
        assert!(has_unique_predecessor(&p(&[3, 3]), 2).unwrap());
        assert!(has_unique_predecessor(&p(&[4, 1, 1]), 2).unwrap());
        // Two parts with d = 3 and both differences positive.
        assert!(!has_unique_predecessor(&p(&[4, 2]), 2).unwrap());
        assert_eq!(predecessors(&p(&[4, 2]), 2).unwrap().len(), 3);
        // With t = 3 the same diagram has d = 2 = k, a fat hook.
        assert!(has_unique_predecessor(&p(&[4, 2]), 3).unwrap());
    }

    #[test]
    fn closed_form_matches_counting() {
        for t in 1..=4 {
            for d in 2..=5 {
                for l in d_admissible(t, d, t * d) {
                    has_unique_predecessor(&l, t).unwrap();
                }
            }
        }
    }

    #[test]
    fn multiplicity_examples() {
        let bi = |a: &[u32], b: &[u32]| BiDiagram::new(p(a), p(b));
        assert_eq!(multiplicity_n(&bi(&[3], &[3]), 3).unwrap(), BigUint::one());
        assert_eq!(multiplicity_n(&bi(&[3, 3], &[4, 1, 1]), 2).unwrap(), BigUint::one());
        for g in d_admissible(3, 2, 6) {
            for l in d_admissible(3, 2, 6) {
                assert_eq!(multiplicity_n(&BiDiagram::new(g.clone(), l), 3).unwrap(), BigUint::one());
            }
        }
        assert_eq!(multiplicity_n(&bi(&[3, 2, 1], &[3, 2, 1]), 2).unwrap(), BigUint::from(4u32));
        assert_eq!(multiplicity_n(&bi(&[3, 2, 1], &[3, 3]), 2).unwrap(), BigUint::from(2u32));
        assert!(multiplicity_n(&bi(&[2, 1, 1], &[2, 2]), 2).is_err());
    }

    #[test]
    fn schur_dimensions() {
        assert_eq!(dim_schur(&p(&[2]), 3), BigUint::from(3u32));
        assert_eq!(dim_schur(&p(&[1, 1]), 3), BigUint::from(6u32));
        assert_eq!(dim_schur(&p(&[2, 1]), 2), BigUint::from(2u32));
        assert_eq!(dim_schur(&p(&[3]), 2), BigUint::zero());
        for n in 1..=4 {
            for size in 1..=6 {
                for l in partitions(size, 6, 6) {
                    assert_eq!(dim_schur(&l, n), BigUint::from(dim_schur_oracle(&l, n)), "{l} {n}");
                }
            }
        }
    }

    #[test]
    fn hilbert_functions() {
        assert_eq!(hf_at(&params(2, 3, 2), 2), BigUint::from(6u32));
        assert_eq!(hf_at(&params(2, 4, 2), 2), BigUint::from(20u32));
        assert_eq!(hf_at_oracle(&params(2, 4, 2), 2).unwrap(), 20);
        assert_eq!(hf_at_oracle(&params(3, 4, 2), 7), Err(MinorsError::OracleTooLarge(14)));
        let (lhs, rhs) = tensor_sum(&params(2, 3, 2), 3).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn regularity_examples() {
        let r = regularity_and_a_invariant(&params(5, 5, 3)).unwrap();
        assert_eq!(r, Regularity { case: 2, k0: Some(3), a: -13, reg: 12 });
        let r = regularity_and_a_invariant(&params(4, 5, 3)).unwrap();
        assert_eq!((r.a, r.reg), (-16, 4));
        let r = regularity_and_a_invariant(&params(5, 6, 2)).unwrap();
        assert_eq!((r.case, r.a, r.reg), (1, -15, 15));
        assert!(regularity_and_a_invariant(&params(3, 3, 2)).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(sagbi_degree_bound(4, 3).unwrap(), 2);
        assert_eq!(sagbi_degree_bound(5, 3).unwrap(), 4);
        let b = relation_degree_bounds(&params(3, 5, 2)).unwrap();
        assert_eq!((b.colbound, b.degbound, b.regularity_case), (5, 7, 2));
    }

    #[test]
    fn shapes() {
        let s = shape_relations(&params(3, 4, 2)).unwrap();
        assert_eq!(s, vec![BiDiagram::new(p(&[3, 3]), p(&[4, 1, 1]))]);
        let s = shape_relations(&params(5, 6, 3)).unwrap();
        assert_eq!(s, vec![BiDiagram::new(p(&[4, 4, 1]), p(&[5, 2, 2]))]);
        let s = shape_relations(&params(6, 8, 4)).unwrap();
        assert_eq!(
            s,
            vec![
                BiDiagram::new(p(&[6, 6]), p(&[8, 2, 2])),
                BiDiagram::new(p(&[5, 5, 2]), p(&[6, 3, 3]))
            ]
        );
    }

    #[test]
    fn identities() {
        let i = partition_identity(&[1, 4, 4], &[3, 3, 3], 4).unwrap();
        assert!(i.is_homogeneous && i.is_homogeneous_primitive);
        let i = partition_identity(&[1, 1, 5, 5], &[3, 3, 3, 3], 5).unwrap();
        assert!(i.is_homogeneous && !i.is_homogeneous_primitive);
        let i = partition_identity(&[2], &[2], 2).unwrap();
        assert!(i.is_identity && i.is_homogeneous && i.is_primitive && i.is_homogeneous_primitive);
        assert!(partition_identity(&[5], &[5], 4).is_err());
        assert_eq!(enumerate_hpi(4, 3, 3), vec![vec![1, 4, 4]]);
        assert!(enumerate_hpi(5, 3, 4).iter().all(|a| a != &vec![1, 1, 5, 5]));
    }

    #[test]
    fn determinantal_relations() {
        let id: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| (i == j) as i64).collect()).collect();
        assert!(verify_det_relations(2, &id).unwrap());
        let m = vec![vec![1, 2, 3, 4], vec![5, 6, 7, 11], vec![13, 17, 19, 23], vec![29, 31, 37, 41]];
        assert!(verify_det_relations(2, &m).unwrap());
        for seed in 0..10 {
            assert!(verify_det_relations(3, &random_matrix(seed, 5)).unwrap());
        }
        assert_eq!(verify_det_relations(3, &m), Err(MinorsError::MatrixTooSmall(5)));
    }

    #[test]
    fn determinant_basics() {
        let m: Vec<Vec<BigInt>> = vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        assert_eq!(determinant(&m), BigInt::from(6));
    }
}
