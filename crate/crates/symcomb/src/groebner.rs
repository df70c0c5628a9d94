//! Polynomials over ℚ, Buchberger's algorithm under monomial and weight
//! orders, ω-homogenization, radical membership and deformation reports.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::homalg::{invariants_of_monomial, Field, HomalgError};
use crate::monomial::{complex_of, Monomial, MonomialError, MonomialIdeal};
use crate::simplicial::{connectivity_degree, SimplicialComplex};

pub const DEFAULT_DEGREE_CAP: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ambient mismatch: expected {0} variables, found {1}")]
    AmbientMismatch(usize, usize),
    #[error("empty generator list")]
    NoGenerators,
    #[error("bad term order: {0}")]
    BadOrder(String),
    #[error("S-pair of degree {degree} exceeds the degree cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },
    #[error("generators must be homogeneous")]
    NotHomogeneous,
    #[error("weights must be positive")]
    BadWeights,
    #[error("instance too large for desk scale: {0}")]
    ResourceGuard(String),
    #[error("certificate failed: an S-polynomial does not reduce to zero")]
    Certificate,
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Homalg(#[from] HomalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Tiebreak {
    Lex,
    DegRevLex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrderKind {
    Lex,
    DegRevLex,
    Weighted { weights: Vec<u64>, tiebreak: Tiebreak },
}

/// A term order; `priority[0]` is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl TermOrder {
    pub fn lex(n: usize) -> Self {
        TermOrder {
            kind: OrderKind::Lex,
            priority: (0..n).collect(),
        }
    }

    pub fn degrevlex(n: usize) -> Self {
        TermOrder {
            kind: OrderKind::DegRevLex,
            priority: (0..n).collect(),
        }
    }

    pub fn weighted(weights: Vec<u64>, tiebreak: Tiebreak) -> Result<Self, GroebnerError> {
        if weights.iter().any(|&w| w == 0) {
            return Err(GroebnerError::BadWeights);
        }
        let n = weights.len();
        Ok(TermOrder {
            kind: OrderKind::Weighted { weights, tiebreak },
            priority: (0..n).collect(),
        })
    }

    pub fn with_priority(mut self, priority: Vec<usize>) -> Result<Self, GroebnerError> {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        if sorted != (0..self.priority.len()).collect::<Vec<_>>() {
            return Err(GroebnerError::BadOrder("priority must be a permutation".into()));
        }
        self.priority = priority;
        Ok(self)
    }

    pub fn reversed(self) -> Self {
        let mut p = self.priority.clone();
        p.reverse();
        TermOrder { priority: p, ..self }
    }

    pub fn n(&self) -> usize {
        self.priority.len()
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.priority {
            match a.exps[v].cmp(&b.exps[v]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    fn revlex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            for &v in self.priority.iter().rev() {
                match a.exps[v].cmp(&b.exps[v]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::DegRevLex => self.revlex_cmp(a, b),
            OrderKind::Weighted { weights, tiebreak } => {
                w_degree(a, weights).cmp(&w_degree(b, weights)).then_with(|| match tiebreak {
                    Tiebreak::Lex => self.lex_cmp(a, b),
                    Tiebreak::DegRevLex => self.revlex_cmp(a, b),
                })
            }
        }
    }
}

pub fn w_degree(m: &Monomial, weights: &[u64]) -> u64 {
    m.exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()
}

/// Terms are kept sorted by degree-reverse-lexicographic order, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: Vec<(Monomial, BigRational)>,
}

type Terms = Vec<(Monomial, BigRational)>;

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: Vec::new() }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Polynomial::from_terms(n, vec![(Monomial::one(n), c)])
    }

    pub fn monomial(m: Monomial) -> Self {
        let n = m.n();
        Polynomial::from_terms(n, vec![(m, BigRational::one())])
    }

    pub fn var(n: usize, i: usize) -> Self {
        Polynomial::monomial(Monomial::var(n, i))
    }

    /// Combines like terms and drops zeros.
    pub fn from_terms(n: usize, terms: Terms) -> Self {
        let mut terms = terms;
        let ord = TermOrder::degrevlex(n);
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Terms = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { n, terms: out }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn leading(&self, order: &TermOrder) -> Option<&(Monomial, BigRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Option<Monomial> {
        self.leading(order).map(|t| t.0.clone())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Polynomial::from_terms(self.n, t)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut t = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                t.push((mul_mono(a, b), ca * cb));
            }
        }
        Polynomial::from_terms(self.n, t)
    }

    /// Divide by the leading coefficient under `order`.
    pub fn monic(&self, order: &TermOrder) -> Polynomial {
        match self.leading(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Terms of maximal ω-degree.
    pub fn initial_form(&self, weights: &[u64]) -> Polynomial {
        let top = self.terms.iter().map(|(m, _)| w_degree(m, weights)).max().unwrap_or(0);
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| w_degree(m, weights) == top)
                .cloned()
                .collect(),
        }
    }

    /// Substitute `value` for the variable `var`, keeping the ambient ring.
    pub fn substitute(&self, var: usize, value: &BigRational) -> Polynomial {
        let t = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exps.clone();
                let k = std::mem::replace(&mut e[var], 0);
                (Monomial::new(e), c * pow_rat(value, k))
            })
            .collect();
        Polynomial::from_terms(self.n, t)
    }

    /// `x_{i+1} ↦ x_{perm[i]+1}`.
    pub fn permute(&self, perm: &[usize]) -> Polynomial {
        let t = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; self.n];
                for (i, &x) in m.exps.iter().enumerate() {
                    e[perm[i]] = x;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(self.n, t)
    }

    /// Add `extra` trailing variables.
    pub fn embed(&self, extra: usize) -> Polynomial {
        let t = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exps.clone();
                e.extend(std::iter::repeat(0).take(extra));
                (Monomial::new(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(self.n + extra, t)
    }

    /// Parses `c*x1^a1*...*xn^an` terms joined by `+`/`-`, with `c` an
    /// integer or `p/q`.
    pub fn parse(s: &str, n: usize) -> Result<Polynomial, GroebnerError> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(GroebnerError::Parse("empty polynomial".into()));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in text.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && cur.ends_with('^')) {
                if i > 0 {
                    if cur.is_empty() {
                        return Err(GroebnerError::Parse(format!("dangling sign in '{s}'")));
                    }
                    pieces.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(GroebnerError::Parse(format!("dangling sign in '{s}'")));
        }
        pieces.push((neg, cur));
        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            let (m, mut c) = parse_term(&piece, n)?;
            if neg {
                c = -c;
            }
            terms.push((m, c));
        }
        Ok(Polynomial::from_terms(n, terms))
    }

    /// Display with terms in decreasing `order`.
    pub fn format_with(&self, order: &TermOrder) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut t = self.terms.clone();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = String::new();
        for (i, (m, c)) in t.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_mono(m);
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(&TermOrder::degrevlex(self.n)))
    }
}

fn format_mono(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect();
    parts.join("*")
}

fn parse_term(s: &str, n: usize) -> Result<(Monomial, BigRational), GroebnerError> {
    let mut coeff = BigRational::one();
    let mut exps = vec![0u32; n];
    for factor in s.split('*') {
        if factor.is_empty() {
            return Err(GroebnerError::Parse(format!("empty factor in '{s}'")));
        }
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| GroebnerError::Parse(format!("bad exponent in '{factor}'")))?),
                None => (rest, 1),
            };
            let i: usize = idx.parse().map_err(|_| GroebnerError::Parse(format!("bad variable '{factor}'")))?;
            if i == 0 || i > n {
                return Err(GroebnerError::Parse(format!("variable x{i} outside x1..x{n}")));
            }
            exps[i - 1] += exp;
        } else {
            coeff *= parse_rational(factor)?;
        }
    }
    Ok((Monomial::new(exps), coeff))
}

pub fn parse_rational(s: &str) -> Result<BigRational, GroebnerError> {
    let bad = || GroebnerError::Parse(format!("bad coefficient '{s}'"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().map_err(|_| bad())?, q.parse::<BigInt>().map_err(|_| bad())?),
        None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Line-separated polynomials; blank lines and `#` comments are skipped.
/// Without `n`, the ambient ring is sized by the largest variable index.
pub fn parse_ideal(text: &str, n: Option<usize>) -> Result<Vec<Polynomial>, GroebnerError> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(GroebnerError::NoGenerators);
    }
    let n = match n {
        Some(n) => n,
        None => max_var_index(text).max(1),
    };
    lines.iter().map(|l| Polynomial::parse(l, n)).collect()
}

fn max_var_index(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let mut j = i + 1;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(v) = text[i + 1..j].parse::<usize>() {
                best = best.max(v);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

fn pow_rat(v: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= v;
    }
    acc
}

fn mul_mono(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial::new(a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect())
}

fn sorted_terms(p: &Polynomial, order: &TermOrder) -> Terms {
    let mut t = p.terms.clone();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

/// `a - c·m·b` on order-sorted term lists.
fn sub_scaled(a: &[(Monomial, BigRational)], c: &BigRational, m: &Monomial, b: &[(Monomial, BigRational)], order: &TermOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(bm, bc)| (mul_mono(bm, m), bc * c)).peekable();
    while i < a.len() || bi.peek().is_some() {
        let take = match (a.get(i), bi.peek()) {
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match take {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m2, c2) = bi.next().expect("peeked");
                out.push((m2, -c2));
            }
            Ordering::Equal => {
                let (m2, c2) = bi.next().expect("peeked");
                let v = &a[i].1 - c2;
                if !v.is_zero() {
                    out.push((m2, v));
                }
                i += 1;
            }
        }
    }
    out
}

/// Full reduction of sorted terms by a monic sorted basis; divisors are
/// tried in basis order.
fn reduce_terms(f: Terms, basis: &[Terms], order: &TermOrder) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut cur = f;
    while !cur.is_empty() {
        let (lm, lc) = cur[0].clone();
        match basis.iter().find(|g| g[0].0.divides(&lm)) {
            Some(g) => {
                let q = lm.div(&g[0].0);
                cur = sub_scaled(&cur, &lc, &q, g, order);
            }
            None => {
                rem.push(cur.remove(0));
            }
        }
    }
    rem
}

fn make_monic(t: &mut Terms) {
    if let Some((_, c)) = t.first() {
        let inv = c.recip();
        for (_, d) in t.iter_mut() {
            *d *= &inv;
        }
    }
}

fn s_poly(f: &Terms, g: &Terms, order: &TermOrder) -> Terms {
    let l = f[0].0.lcm(&g[0].0);
    let mf = l.div(&f[0].0);
    let mg = l.div(&g[0].0);
    let a: Terms = f.iter().map(|(m, c)| (mul_mono(m, &mf), c / &f[0].1)).collect();
    sub_scaled(&a, &(BigRational::one() / &g[0].1), &mg, g, order)
}

/// Remainder of `f` modulo `basis` under `order`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> Polynomial {
    let b: Vec<Terms> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut t = sorted_terms(g, order);
            make_monic(&mut t);
            t
        })
        .collect();
    let r = reduce_terms(sorted_terms(f, order), &b, order);
    Polynomial::from_terms(f.n, r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: TermOrder,
    /// Monic, interreduced, sorted by leading monomial, largest first.
    pub generators: Vec<Polynomial>,
    pub unit: bool,
}

impl GroebnerBasis {
    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .filter_map(|g| g.leading_monomial(&self.order))
            .collect()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.generators, &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.unit || self.reduce(f).is_zero()
    }
}

pub fn buchberger(gens: &[Polynomial], order: &TermOrder) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_capped(gens, order, DEFAULT_DEGREE_CAP)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub fn buchberger_capped(gens: &[Polynomial], order: &TermOrder, cap: u64) -> Result<GroebnerBasis, GroebnerError> {
    let n = order.n();
    for g in gens {
        if g.n != n {
            return Err(GroebnerError::AmbientMismatch(n, g.n));
        }
    }
    let unit = || GroebnerBasis {
        order: order.clone(),
        generators: vec![Polynomial::constant(n, BigRational::one())],
        unit: true,
    };
    let mut basis: Vec<Terms> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let add = |t: Terms, basis: &mut Vec<Terms>, pairs: &mut Vec<Pair>| {
        let j = basis.len();
        for (i, b) in basis.iter().enumerate() {
            pairs.push(Pair {
                i,
                j,
                lcm: b[0].0.lcm(&t[0].0),
            });
        }
        basis.push(t);
    };
    for g in gens {
        let mut t = reduce_terms(sorted_terms(g, order), &basis, order);
        if t.is_empty() {
            continue;
        }
        if t[0].0.is_one() {
            return Ok(unit());
        }
        make_monic(&mut t);
        add(t, &mut basis, &mut pairs);
    }
    if basis.is_empty() {
        return Err(GroebnerError::NoGenerators);
    }
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    while !pairs.is_empty() {
        let pos = (0..pairs.len())
            .min_by(|&a, &b| {
                let (x, y) = (&pairs[a].lcm, &pairs[b].lcm);
                x.degree().cmp(&y.degree()).then_with(|| order.cmp(x, y))
            })
            .expect("nonempty");
        let Pair { i, j, lcm } = pairs.swap_remove(pos);
        done.insert((i, j));
        if lcm.degree() > cap {
            return Err(GroebnerError::DegreeCap {
                degree: lcm.degree(),
                cap,
            });
        }
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        // First criterion: coprime leading monomials.
        if li.gcd(lj).is_one() {
            continue;
        }
        // Second criterion: a third element whose pairs are already treated.
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && done.contains(&key(i, k))
                && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let mut r = reduce_terms(s, &basis, order);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(unit());
        }
        make_monic(&mut r);
        add(r, &mut basis, &mut pairs);
    }
    let reduced = interreduce(basis, order);
    let gb = GroebnerBasis {
        order: order.clone(),
        generators: reduced.into_iter().map(|t| Polynomial::from_terms(n, t)).collect(),
        unit: false,
    };
    if !certify(&gb) {
        return Err(GroebnerError::Certificate);
    }
    Ok(gb)
}

fn interreduce(basis: Vec<Terms>, order: &TermOrder) -> Vec<Terms> {
    let mut minimal: Vec<Terms> = Vec::new();
    for (idx, t) in basis.iter().enumerate() {
        let lm = &t[0].0;
        let redundant = basis.iter().enumerate().any(|(k, u)| {
            k != idx && u[0].0.divides(lm) && (u[0].0 != *lm || k < idx)
        });
        if !redundant {
            minimal.push(t.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let head = minimal[k][0].clone();
        let others: Vec<Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(x, _)| *x != k)
            .map(|(_, t)| t.clone())
            .collect();
        let tail = reduce_terms(minimal[k][1..].to_vec(), &others, order);
        let mut t = vec![head];
        t.extend(tail);
        make_monic(&mut t);
        out.push(t);
    }
    out.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    out
}

/// Every S-polynomial of the basis reduces to zero.
pub fn certify(gb: &GroebnerBasis) -> bool {
    if gb.unit {
        return true;
    }
    let b: Vec<Terms> = gb.generators.iter().map(|g| sorted_terms(g, &gb.order)).collect();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !reduce_terms(s_poly(&b[i], &b[j], &gb.order), &b, &gb.order).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Leading monomials of the reduced basis.
pub fn initial_ideal(gens: &[Polynomial], order: &TermOrder) -> Result<MonomialIdeal, GroebnerError> {
    let gb = buchberger(gens, order)?;
    initial_of_basis(&gb)
}

pub fn initial_of_basis(gb: &GroebnerBasis) -> Result<MonomialIdeal, GroebnerError> {
    if gb.unit {
        return Err(GroebnerError::Monomial(MonomialError::UnitIdeal));
    }
    Ok(MonomialIdeal::new(gb.n(), gb.leading_monomials())?)
}

/// `hom_ω(f) = Σ c_i m_i t^{deg_ω f - deg_ω m_i}` with `t` the last variable.
pub fn homogenize_w(f: &Polynomial, weights: &[u64]) -> Result<Polynomial, GroebnerError> {
    if weights.len() != f.n {
        return Err(GroebnerError::AmbientMismatch(f.n, weights.len()));
    }
    if weights.iter().any(|&w| w == 0) {
        return Err(GroebnerError::BadWeights);
    }
    let top = f.terms.iter().map(|(m, _)| w_degree(m, weights)).max().unwrap_or(0);
    let t = f
        .terms
        .iter()
        .map(|(m, c)| {
            let mut e = m.exps.clone();
            e.push((top - w_degree(m, weights)) as u32);
            (Monomial::new(e), c.clone())
        })
        .collect();
    Ok(Polynomial::from_terms(f.n + 1, t))
}

/// Sets the last variable to 1 and drops it.
pub fn dehomogenize(f: &Polynomial) -> Polynomial {
    let n = f.n - 1;
    let t = f
        .terms
        .iter()
        .map(|(m, c)| (Monomial::new(m.exps[..n].to_vec()), c.clone()))
        .collect();
    Polynomial::from_terms(n, t)
}

/// `hom_ω(f)(x, 0)`, dropped to the original ring.
pub fn specialize_zero(f: &Polynomial) -> Polynomial {
    let n = f.n - 1;
    let t = f
        .terms
        .iter()
        .filter(|(m, _)| m.exps[n] == 0)
        .map(|(m, c)| (Monomial::new(m.exps[..n].to_vec()), c.clone()))
        .collect();
    Polynomial::from_terms(n, t)
}

pub fn in_omega(f: &Polynomial, weights: &[u64]) -> Polynomial {
    f.initial_form(weights)
}

/// Generators of `hom_ω(I)`: the homogenized reduced basis for an order
/// refining `ω`.
pub fn homogenize_ideal(gens: &[Polynomial], weights: &[u64]) -> Result<Vec<Polynomial>, GroebnerError> {
    let order = TermOrder::weighted(weights.to_vec(), Tiebreak::DegRevLex)?;
    let gb = buchberger(gens, &order)?;
    gb.generators.iter().map(|g| homogenize_w(g, weights)).collect()
}

/// `f ∈ √(gens)` via `1 ∈ (gens, 1 - y·f)` with `y` appended last.
pub fn radical_membership(f: &Polynomial, gens: &[Polynomial]) -> Result<bool, GroebnerError> {
    if f.is_zero() {
        return Ok(true);
    }
    let n = f.n;
    let y = Polynomial::var(n + 1, n);
    let rab = Polynomial::constant(n + 1, BigRational::one()).sub(&y.mul(&f.embed(1)));
    let mut ext: Vec<Polynomial> = gens.iter().map(|g| g.embed(1)).collect();
    ext.push(rab);
    let gb = buchberger(&ext, &TermOrder::degrevlex(n + 1))?;
    Ok(gb.unit)
}

/// Variables of the `2 × (n+1)` matrix: `x_i = x_{i+1}`, `y_i = x_{n+2+i}`.
pub fn bracket(n: usize, i: usize, j: usize) -> Polynomial {
    let nv = 2 * (n + 1);
    let xi = Polynomial::var(nv, i);
    let xj = Polynomial::var(nv, j);
    let yi = Polynomial::var(nv, n + 1 + i);
    let yj = Polynomial::var(nv, n + 1 + j);
    xi.mul(&yj).sub(&xj.mul(&yi))
}

pub fn minors_2xn(n: usize) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            out.push(bracket(n, i, j));
        }
    }
    out
}

/// `g_k = Σ_{i<j, i+j=k} [i, j]` for `k = 1, …, 2n-1`.
pub fn antidiagonal_generators(n: usize) -> Vec<Polynomial> {
    (1..2 * n)
        .map(|k| {
            let mut acc = Polynomial::zero(2 * (n + 1));
            for i in 0..=n {
                let j = k as isize - i as isize;
                if j > i as isize && j <= n as isize {
                    acc = acc.add(&bracket(n, i, j as usize));
                }
            }
            acc
        })
        .collect()
}

/// `√(g_1, …, g_{2n-1}) = √(I_2)` for the generic `2 × (n+1)` matrix.
pub fn verify_ara_minors2xn(n: usize) -> Result<bool, GroebnerError> {
    if n < 2 {
        return Err(GroebnerError::ResourceGuard("need n >= 2".into()));
    }
    if n > 3 {
        return Err(GroebnerError::ResourceGuard(format!("n = {n} exceeds the desk-scale limit 3")));
    }
    let minors = minors_2xn(n);
    let gs = antidiagonal_generators(n);
    let nv = 2 * (n + 1);
    let gb = buchberger(&minors, &TermOrder::degrevlex(nv))?;
    if !gs.iter().all(|g| gb.contains(g)) {
        return Ok(false);
    }
    for m in &minors {
        if !radical_membership(m, &gs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    /// Krull dimension agrees between this order and degrevlex.
    pub dim_match: bool,
    pub dim: usize,
    pub initial_ideal: Vec<String>,
    pub radical: Vec<String>,
    pub strongly_connected: bool,
    pub pure: bool,
    /// Facets of `Δ(√in(I))`, 1-based.
    pub complex: Vec<Vec<usize>>,
    pub is_cm_of_initial: bool,
    pub connectivity: i64,
}

pub fn deformation_connectedness_report(gens: &[Polynomial], order: &TermOrder) -> Result<DeformationReport, GroebnerError> {
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(GroebnerError::NotHomogeneous);
    }
    let n = order.n();
    let init = initial_ideal(gens, order)?;
    let other = initial_ideal(gens, &TermOrder::degrevlex(n))?;
    let (_, dim) = init.height_and_dim();
    let radical = init.radical();
    let delta: SimplicialComplex = complex_of(&radical)?;
    let inv = invariants_of_monomial(&radical, Field::Rational)?;
    Ok(DeformationReport {
        dim_match: other.height_and_dim().1 == dim,
        dim,
        initial_ideal: init.gens().iter().map(|m| format_mono(m)).collect(),
        radical: radical.gens().iter().map(|m| format_mono(m)).collect(),
        strongly_connected: delta.is_pure() && delta.is_strongly_connected(),
        pure: delta.is_pure(),
        complex: delta.facet_sets(),
        is_cm_of_initial: inv.is_cm,
        connectivity: connectivity_degree(&radical.minimal_prime_masks(), n).map_err(MonomialError::from)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WeightRealization {
    Found(Vec<u64>),
    NotFound,
}

/// Best-effort `ω` with `in_ω(I) = in_≺(I)`: powers `N^r` ranked by variable
/// priority, for growing `N`, accepted once `ω` selects every leading term of
/// the reduced basis and the weighted initial ideal agrees.
pub fn realize_weight(gens: &[Polynomial], order: &TermOrder) -> Result<WeightRealization, GroebnerError> {
    let gb = buchberger(gens, order)?;
    if gb.unit {
        return Ok(WeightRealization::NotFound);
    }
    let n = order.n();
    let target = initial_of_basis(&gb)?;
    for base in 2u64..=64 {
        let mut w = vec![1u64; n];
        let mut ok = true;
        for (rank, &v) in order.priority.iter().enumerate() {
            match base.checked_pow((n - 1 - rank) as u32) {
                Some(p) => w[v] = p,
                None => ok = false,
            }
        }
        if !ok {
            break;
        }
        let selects = gb.generators.iter().all(|g| {
            let f = g.initial_form(&w);
            f.terms.len() == 1 && Some(&f.terms[0].0) == g.leading_monomial(order).as_ref()
        });
        if !selects {
            continue;
        }
        let tie = TermOrder::weighted(w.clone(), Tiebreak::DegRevLex)?;
        if initial_ideal(gens, &tie)? == target {
            return Ok(WeightRealization::Found(w));
        }
    }
    Ok(WeightRealization::NotFound)
}

/// Generators from the example of a non Cohen–Macaulay ring whose initial
/// complex is connected in codimension one, in `x1..x6`.
pub fn conca_ideal() -> Vec<Polynomial> {
    ["x1*x5 + x2*x6 + x4^2", "x1*x4 + x3^2 - x4*x5", "x1^2 + x1*x2 + x2*x5"]
        .iter()
        .map(|s| Polynomial::parse(s, 6).expect("fixed input"))
        .collect()
}
