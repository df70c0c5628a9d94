//! k-covers of weighted complexes and the algebra of basic covers.
//!
//! A vector `α` is a k-cover of `(Δ, ω)` when `Σ_{i∈F} α(i) ≥ k ω_F` for
//! every facet. It is basic when no smaller vector is a k-cover. If
//! `β ≤ α` is a smaller cover and `β_i < α_i`, then `α - e_i ≥ β` is still a
//! cover, so basicness can be tested one coordinate at a time.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::simplicial::{bits, set_to_mask, SimplicialComplex, SimplicialError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoversError {
    #[error("weights must be positive, one per facet")]
    BadWeights,
    #[error("cover vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("k must be positive")]
    NonpositiveK,
    #[error("vector is not a k-cover")]
    NotACover,
    #[error("complex is not a matroid")]
    NotMatroid,
    #[error("weights are not induced by a positive weight on the vertices")]
    NotGoodWeighted,
    #[error("values on the facet must sum to k*omega_F = {expected}, got {got}")]
    SumMismatch { expected: u64, got: u64 },
    #[error("not a facet")]
    NotAFacet,
    #[error("need k_max >= 4")]
    TooFewValues,
    #[error("no quasi-period in {{1,2,3,4,6}} gives stable polynomial fits")]
    InsufficientData,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Complex(#[from] SimplicialError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedComplex {
    complex: SimplicialComplex,
    weights: Vec<u32>,
}

impl WeightedComplex {
    /// Weights are aligned with `complex.facets()`.
    pub fn new(complex: SimplicialComplex, weights: Vec<u32>) -> Result<Self, CoversError> {
        if weights.len() != complex.facets().len() || weights.iter().any(|&w| w == 0) {
            return Err(CoversError::BadWeights);
        }
        Ok(WeightedComplex { complex, weights })
    }

    pub fn canonical(complex: SimplicialComplex) -> Self {
        let w = vec![1; complex.facets().len()];
        WeightedComplex { complex, weights: w }
    }

    pub fn uniform(complex: SimplicialComplex, w: u32) -> Result<Self, CoversError> {
        let ws = vec![w; complex.facets().len()];
        Self::new(complex, ws)
    }

    /// Weights given as `(facet, weight)` pairs on 1-based vertex sets.
    pub fn from_facet_weights(
        complex: SimplicialComplex,
        pairs: &[(Vec<usize>, u32)],
    ) -> Result<Self, CoversError> {
        let mut w = vec![0u32; complex.facets().len()];
        for (set, val) in pairs {
            let mask = set_to_mask(set, complex.n())?;
            let idx = complex.facet_index(mask).ok_or(CoversError::NotAFacet)?;
            w[idx] = *val;
        }
        Self::new(complex, w)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.complex.n()
    }

    pub fn max_weight(&self) -> u32 {
        *self.weights.iter().max().unwrap()
    }

    fn check_len(&self, alpha: &[u32]) -> Result<(), CoversError> {
        if alpha.len() != self.n() {
            return Err(CoversError::LengthMismatch {
                got: alpha.len(),
                expected: self.n(),
            });
        }
        Ok(())
    }

    fn facet_sum(f: u64, alpha: &[u32]) -> u64 {
        bits(f).map(|i| alpha[i] as u64).sum()
    }

    fn is_cover(&self, alpha: &[u32], k: u32) -> bool {
        alpha.iter().any(|&a| a > 0)
            && self
                .complex
                .facets()
                .iter()
                .zip(&self.weights)
                .all(|(&f, &w)| Self::facet_sum(f, alpha) >= k as u64 * w as u64)
    }

    /// Whether lowering coordinate `i` by one keeps a k-cover.
    fn lowerable(&self, alpha: &[u32], k: u32, i: usize) -> bool {
        if alpha[i] == 0 {
            return false;
        }
        let nonzero_after = alpha.iter().enumerate().any(|(j, &a)| if j == i { a > 1 } else { a > 0 });
        nonzero_after
            && self
                .complex
                .facets()
                .iter()
                .zip(&self.weights)
                .filter(|(&f, _)| f >> i & 1 == 1)
                .all(|(&f, &w)| Self::facet_sum(f, alpha) > k as u64 * w as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoverClass {
    NotACover,
    Cover,
    BasicCover,
}

pub fn classify_cover(wc: &WeightedComplex, alpha: &[u32], k: u32) -> Result<CoverClass, CoversError> {
    wc.check_len(alpha)?;
    if k == 0 {
        return Err(CoversError::NonpositiveK);
    }
    if !wc.is_cover(alpha, k) {
        return Ok(CoverClass::NotACover);
    }
    if (0..alpha.len()).any(|i| wc.lowerable(alpha, k, i)) {
        Ok(CoverClass::Cover)
    } else {
        Ok(CoverClass::BasicCover)
    }
}

/// Lower coordinates in sweeps `1..n`, one unit per eligible index per sweep.
pub fn reduce_to_basic(wc: &WeightedComplex, alpha: &[u32], k: u32) -> Result<Vec<u32>, CoversError> {
    wc.check_len(alpha)?;
    if k == 0 {
        return Err(CoversError::NonpositiveK);
    }
    if !wc.is_cover(alpha, k) {
        return Err(CoversError::NotACover);
    }
    let mut a = alpha.to_vec();
    loop {
        let mut changed = false;
        for i in 0..a.len() {
            if wc.lowerable(&a, k, i) {
                a[i] -= 1;
                changed = true;
            }
        }
        if !changed {
            return Ok(a);
        }
    }
}

/// All basic k-covers, sorted lexicographically.
pub fn enumerate_basic_covers(wc: &WeightedComplex, k: u32) -> Result<Vec<Vec<u32>>, CoversError> {
    if k == 0 {
        return Err(CoversError::NonpositiveK);
    }
    let n = wc.n();
    let facets = wc.complex().facets();
    let req: Vec<u64> = wc.weights().iter().map(|&w| w as u64 * k as u64).collect();
    let top = |f: u64| 63 - f.leading_zeros() as usize;

    let mut closing = vec![Vec::new(); n];
    for (fi, &f) in facets.iter().enumerate() {
        closing[top(f)].push(fi);
    }
    let mut deciding = vec![Vec::new(); n];
    let mut upper = vec![0u64; n];
    let mut member_of = vec![Vec::new(); n];
    for j in 0..n {
        let mut at = None;
        for (fi, &f) in facets.iter().enumerate() {
            if f >> j & 1 == 1 {
                member_of[j].push(fi);
                upper[j] = upper[j].max(req[fi]);
                at = Some(at.map_or(top(f), |a: usize| a.max(top(f))));
            }
        }
        // A vertex in no facet must be zero; decide it immediately.
        deciding[at.unwrap_or(j)].push(j);
    }

    struct Search<'a> {
        req: &'a [u64],
        closing: &'a [Vec<usize>],
        deciding: &'a [Vec<usize>],
        upper: &'a [u64],
        member_of: &'a [Vec<usize>],
        alpha: Vec<u32>,
        sums: Vec<u64>,
        out: Vec<Vec<u32>>,
    }

    impl Search<'_> {
        fn go(&mut self, v: usize) {
            if v == self.alpha.len() {
                self.out.push(self.alpha.clone());
                return;
            }
            let mut lb = 0u64;
            for &fi in &self.closing[v] {
                lb = lb.max(self.req[fi].saturating_sub(self.sums[fi]));
            }
            let ub = self.upper[v];
            if lb > ub {
                return;
            }
            for val in lb..=ub {
                self.alpha[v] = val as u32;
                for &fi in &self.member_of[v] {
                    self.sums[fi] += val;
                }
                let ok = self.deciding[v].iter().all(|&j| {
                    self.alpha[j] == 0
                        || self.member_of[j].iter().any(|&fi| self.sums[fi] == self.req[fi])
                });
                if ok {
                    self.go(v + 1);
                }
                for &fi in &self.member_of[v] {
                    self.sums[fi] -= val;
                }
            }
            self.alpha[v] = 0;
        }
    }

    let mut s = Search {
        req: &req,
        closing: &closing,
        deciding: &deciding,
        upper: &upper,
        member_of: &member_of,
        alpha: vec![0; n],
        sums: vec![0; facets.len()],
        out: Vec::new(),
    };
    s.go(0);
    let mut out = s.out;
    out.sort();
    Ok(out)
}

/// `HF_{Ā(Δ,ω)}(k)`, the number of basic k-covers; `HF(0) = 1`.
pub fn hf_abar(wc: &WeightedComplex, k: u32) -> Result<u64, CoversError> {
    if k == 0 {
        return Ok(1);
    }
    Ok(enumerate_basic_covers(wc, k)?.len() as u64)
}

fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `Σ_F C(k ω_F + |F| - 1, |F| - 1)`, the count of facet restrictions.
pub fn rigidity_bound(wc: &WeightedComplex, k: u32) -> BigInt {
    wc.complex()
        .facets()
        .iter()
        .zip(wc.weights())
        .map(|(&f, &w)| {
            let d = f.count_ones() as u64;
            binomial(k as u64 * w as u64 + d - 1, d - 1)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodWeight {
    /// Strictly positive `λ` with `ω_F = Σ_{i∈F} λ(i)`.
    Weight(Vec<BigRational>),
    Infeasible(Infeasibility),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// The facet equations have no solution at all; lists the facets used.
    Inconsistent { facets: Vec<Vec<usize>> },
    /// Solutions exist but none is positive; lists the vertices that the
    /// equations force to be `<= 0`, or every constrained vertex when the
    /// obstruction only shows up jointly.
    NoPositiveSolution { vertices: Vec<usize> },
}

/// A strict inequality `coeffs · t + constant > 0`.
#[derive(Clone, Debug)]
struct Strict {
    coeffs: Vec<BigRational>,
    constant: BigRational,
}

/// Fourier–Motzkin on strict inequalities; returns a feasible point.
fn fourier_motzkin(mut system: Vec<Strict>, vars: usize) -> Option<Vec<BigRational>> {
    let mut stages: Vec<Vec<Strict>> = Vec::with_capacity(vars + 1);
    for x in (0..vars).rev() {
        stages.push(system.clone());
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in system {
            if c.coeffs[x].is_positive() {
                lower.push(c);
            } else if c.coeffs[x].is_negative() {
                upper.push(c);
            } else {
                rest.push(c);
            }
        }
        for l in &lower {
            for u in &upper {
                let a = l.coeffs[x].clone();
                let b = -u.coeffs[x].clone();
                let coeffs = l
                    .coeffs
                    .iter()
                    .zip(&u.coeffs)
                    .map(|(p, q)| p / &a + q / &b)
                    .collect();
                let constant = &l.constant / &a + &u.constant / &b;
                rest.push(Strict { coeffs, constant });
            }
        }
        system = rest;
    }
    if system.iter().any(|c| !c.constant.is_positive()) {
        return None;
    }
    let mut point = vec![BigRational::zero(); vars];
    for x in 0..vars {
        let stage = &stages[vars - 1 - x];
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for c in stage {
            let a = &c.coeffs[x];
            if a.is_zero() {
                continue;
            }
            let mut rhs = -c.constant.clone();
            for (y, v) in point.iter().enumerate().take(x) {
                rhs -= &c.coeffs[y] * v;
            }
            let bound = rhs / a;
            if a.is_positive() {
                lo = Some(match lo {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                hi = Some(match hi {
                    Some(h) if h <= bound => h,
                    _ => bound,
                });
            }
        }
        let two = BigRational::from_integer(BigInt::from(2));
        point[x] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / two,
            (Some(l), None) => {
                let f = l.floor() + BigRational::one();
                if f > l {
                    f
                } else {
                    l + BigRational::one()
                }
            }
            (None, Some(h)) => {
                let c = h.ceil() - BigRational::one();
                if c < h {
                    c
                } else {
                    h - BigRational::one()
                }
            }
            (None, None) => BigRational::one(),
        };
    }
    Some(point)
}

/// Exact search for positive `λ` inducing `ω`.
pub fn solve_good_weight(wc: &WeightedComplex) -> GoodWeight {
    let n = wc.n();
    let facets = wc.complex().facets();
    let rows = facets.len();
    // Augmented matrix with a provenance bitset of combined facets.
    let mut mat: Vec<Vec<BigRational>> = facets
        .iter()
        .zip(wc.weights())
        .map(|(&f, &w)| {
            let mut r = vec![BigRational::zero(); n + 1];
            for i in bits(f) {
                r[i] = BigRational::one();
            }
            r[n] = BigRational::from_integer(BigInt::from(w));
            r
        })
        .collect();
    let mut used: Vec<Vec<bool>> = (0..rows).map(|r| (0..rows).map(|c| c == r).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        used.swap(row, p);
        let inv = BigRational::one() / mat[row][col].clone();
        for v in mat[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                let pivot_row = mat[row].clone();
                for (a, b) in mat[r].iter_mut().zip(&pivot_row) {
                    *a -= &factor * b;
                }
                let pu = used[row].clone();
                for (a, b) in used[r].iter_mut().zip(&pu) {
                    *a |= *b;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    for r in row..rows {
        if !mat[r][n].is_zero() {
            let fs = (0..rows)
                .filter(|&c| used[r][c])
                .map(|c| crate::simplicial::mask_to_set(facets[c]))
                .collect();
            return GoodWeight::Infeasible(Infeasibility::Inconsistent { facets: fs });
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let fidx = |c: usize| free.iter().position(|&f| f == c).unwrap();
    // λ_pivot = rhs - Σ a_f t_f ; λ_free = t_f.
    let mut system = Vec::new();
    let mut forced = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        let mut coeffs = vec![BigRational::zero(); free.len()];
        for &f in &free {
            coeffs[fidx(f)] = -mat[r][f].clone();
        }
        if coeffs.iter().all(|c| c.is_zero()) && !mat[r][n].is_positive() {
            forced.push(pc + 1);
        }
        system.push(Strict {
            coeffs,
            constant: mat[r][n].clone(),
        });
    }
    if !forced.is_empty() {
        return GoodWeight::Infeasible(Infeasibility::NoPositiveSolution { vertices: forced });
    }
    for &f in &free {
        let mut coeffs = vec![BigRational::zero(); free.len()];
        coeffs[fidx(f)] = BigRational::one();
        system.push(Strict {
            coeffs,
            constant: BigRational::zero(),
        });
    }
    match fourier_motzkin(system, free.len()) {
        None => GoodWeight::Infeasible(Infeasibility::NoPositiveSolution {
            vertices: (1..=n).collect(),
        }),
        Some(t) => {
            let mut lambda = vec![BigRational::zero(); n];
            for &f in &free {
                lambda[f] = t[fidx(f)].clone();
            }
            for (r, &pc) in pivots.iter().enumerate() {
                let mut v = mat[r][n].clone();
                for &f in &free {
                    v -= &mat[r][f] * &t[fidx(f)];
                }
                lambda[pc] = v;
            }
            GoodWeight::Weight(lambda)
        }
    }
}

/// The unique basic k-cover of a good-weighted matroid agreeing with
/// `partial` on the facet `facet` (1-based, sorted).
pub fn extend_on_facet(
    wc: &WeightedComplex,
    facet: &[usize],
    partial: &[u32],
    k: u32,
) -> Result<Vec<u32>, CoversError> {
    if k == 0 {
        return Err(CoversError::NonpositiveK);
    }
    let delta = wc.complex();
    let fmask = set_to_mask(facet, delta.n())?;
    let fidx = delta.facet_index(fmask).ok_or(CoversError::NotAFacet)?;
    if partial.len() != facet.len() {
        return Err(CoversError::LengthMismatch {
            got: partial.len(),
            expected: facet.len(),
        });
    }
    if !delta.is_matroid() {
        return Err(CoversError::NotMatroid);
    }
    let lambda = match solve_good_weight(wc) {
        GoodWeight::Weight(l) => l,
        GoodWeight::Infeasible(_) => return Err(CoversError::NotGoodWeighted),
    };
    let expected = k as u64 * wc.weights()[fidx] as u64;
    let got: u64 = partial.iter().map(|&a| a as u64).sum();
    if got != expected {
        return Err(CoversError::SumMismatch { expected, got });
    }
    let n = delta.n();
    let mut sorted: Vec<(usize, u32)> = facet.iter().copied().zip(partial.iter().copied()).collect();
    sorted.sort();
    let big = k * wc.max_weight();
    let mut alpha = vec![big; n];
    for &(v, a) in &sorted {
        alpha[v - 1] = a;
    }
    // Lower outside F only, until basic.
    loop {
        let mut changed = false;
        for i in 0..n {
            if fmask >> i & 1 == 0 && wc.lowerable(&alpha, k, i) {
                alpha[i] -= 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if classify_cover(wc, &alpha, k)? != CoverClass::BasicCover {
        return Err(CoversError::Internal("extension is not basic".into()));
    }
    // Each outside value satisfies α(i₀) - kλ(i₀) = α(j₀) - kλ(j₀) for some
    // exchange partner j₀ ∈ F.
    let kq = BigRational::from_integer(BigInt::from(k));
    for i0 in (0..n).filter(|i| fmask >> i & 1 == 0 && delta.vertex_mask() >> i & 1 == 1) {
        let lhs = BigRational::from_integer(BigInt::from(alpha[i0])) - &kq * &lambda[i0];
        let ok = bits(fmask).any(|j0| {
            let fprime = (fmask & !(1u64 << j0)) | (1u64 << i0);
            delta.is_facet(fprime)
                && BigRational::from_integer(BigInt::from(alpha[j0])) - &kq * &lambda[j0] == lhs
        });
        if !ok {
            return Err(CoversError::Internal(format!(
                "vertex {} violates the exchange relation",
                i0 + 1
            )));
        }
    }
    Ok(alpha)
}

/// Polynomial interpolation through equally weighted points; returns the
/// minimal degree that reproduces every point with at least one point to
/// spare, and its coefficients (constant term first).
pub fn fit_min_degree(points: &[(i64, BigInt)]) -> Option<(usize, Vec<BigRational>)> {
    if points.len() < 2 {
        return None;
    }
    for deg in 0..=points.len() - 2 {
        let basis = &points[..=deg];
        let coeffs = interpolate(basis);
        let fits = points.iter().all(|(x, y)| {
            eval(&coeffs, &BigRational::from_integer(BigInt::from(*x)))
                == BigRational::from_integer(y.clone())
        });
        if fits {
            let mut c = coeffs;
            while c.len() > 1 && c.last().unwrap().is_zero() {
                c.pop();
            }
            let real_deg = c.len() - 1;
            return Some((real_deg, c));
        }
    }
    None
}

fn eval(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn interpolate(points: &[(i64, BigInt)]) -> Vec<BigRational> {
    let m = points.len();
    let mut out = vec![BigRational::zero(); m];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Lagrange basis polynomial for node i.
        let mut poly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(*xj));
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xj;
            }
            poly = next;
            denom *= BigRational::from_integer(BigInt::from(*xi)) - xj;
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (d, c) in poly.into_iter().enumerate() {
            out[d] += c * &scale;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFit {
    pub residue: u32,
    pub degree: usize,
    pub leading: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimEstimate {
    pub dim: usize,
    pub period: u32,
    pub classes: Vec<ClassFit>,
    pub hf: Vec<u64>,
}

/// Growth order of `HF_{Ā}` on `k = 1..=k_max`, fitted per residue class
/// modulo the smallest working quasi-period.
pub fn estimate_dim_abar(wc: &WeightedComplex, k_max: u32) -> Result<DimEstimate, CoversError> {
    if k_max < 4 {
        return Err(CoversError::TooFewValues);
    }
    let hf: Vec<u64> = (1..=k_max)
        .map(|k| hf_abar(wc, k))
        .collect::<Result<_, _>>()?;
    let (period, classes) = fit_quasi_polynomial(&hf, 1).ok_or(CoversError::InsufficientData)?;
    let dim = 1 + classes.iter().map(|c| c.degree).max().unwrap();
    Ok(DimEstimate {
        dim,
        period,
        classes,
        hf,
    })
}

/// Fit values `values[i] = f(start + i)` as a quasi-polynomial with period in
/// `{1,2,3,4,6}`.
pub fn fit_quasi_polynomial(values: &[u64], start: i64) -> Option<(u32, Vec<ClassFit>)> {
    'period: for p in [1u32, 2, 3, 4, 6] {
        let mut classes = Vec::new();
        for r in 0..p {
            let pts: Vec<(i64, BigInt)> = values
                .iter()
                .enumerate()
                .map(|(i, &v)| (start + i as i64, v))
                .filter(|(x, _)| x.rem_euclid(p as i64) == r as i64)
                .map(|(x, v)| (x, BigInt::from(v)))
                .collect();
            match fit_min_degree(&pts) {
                Some((degree, coeffs)) => classes.push(ClassFit {
                    residue: r,
                    degree,
                    leading: coeffs.last().unwrap().clone(),
                }),
                None => continue 'period,
            }
        }
        return Some((p, classes));
    }
    None
}
