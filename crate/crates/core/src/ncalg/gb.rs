//! Commutative Gröbner bases over Q (Buchberger, degree-reverse-lexicographic order).
//!
//! Used for the commutative Λ-sector modulo the orthogonality relations.

use crate::ring::Q;
use num::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub const NV: usize = 16;
pub type Mono = [u8; NV];

pub fn mono_deg(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_div(b: &Mono, a: &Mono) -> Mono {
    std::array::from_fn(|i| b[i] - a[i])
}

pub fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i].max(b[i]))
}

pub fn var(i: usize) -> Mono {
    let mut m = [0u8; NV];
    m[i] = 1;
    m
}

/// Degree-reverse-lexicographic comparison (variable 0 is the largest).
pub fn drl_cmp(a: &Mono, b: &Mono) -> Ordering {
    match mono_deg(a).cmp(&mono_deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..NV).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Drl(pub Mono);

impl Ord for Drl {
    fn cmp(&self, o: &Self) -> Ordering {
        drl_cmp(&self.0, &o.0)
    }
}

impl PartialOrd for Drl {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial as terms sorted by decreasing monomial; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: Vec<(Mono, Q)>,
}

impl Poly {
    pub fn from_map(m: BTreeMap<Drl, Q>) -> Self {
        Poly {
            terms: m
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k.0, c))
                .collect(),
        }
    }

    pub fn from_terms(t: Vec<(Mono, Q)>) -> Self {
        let mut m: BTreeMap<Drl, Q> = BTreeMap::new();
        for (k, c) in t {
            *m.entry(Drl(k)).or_insert_with(Q::zero) += c;
        }
        Poly::from_map(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn deg(&self) -> u32 {
        self.terms.iter().map(|(m, _)| mono_deg(m)).max().unwrap_or(0)
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.first() {
            let c = c.clone();
            for t in &mut self.terms {
                t.1 = &t.1 / &c;
            }
        }
        self
    }
}

pub struct Reducer<'a> {
    pub basis: &'a [Poly],
}

impl Reducer<'_> {
    fn find(&self, m: &Mono) -> Option<&Poly> {
        self.basis.iter().find(|g| divides(g.lead(), m))
    }

    /// Full reduction of `p` modulo the basis.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut work: BTreeMap<Drl, Q> = BTreeMap::new();
        for (m, c) in &p.terms {
            work.insert(Drl(*m), c.clone());
        }
        let mut done: BTreeMap<Drl, Q> = BTreeMap::new();
        while let Some((m, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find(&m.0) {
                Some(g) => {
                    let q = mono_div(&m.0, g.lead());
                    let f = &c / &g.terms[0].1;
                    for (gm, gc) in g.terms.iter().skip(1) {
                        let k = Drl(mono_mul(gm, &q));
                        let e = work.entry(k).or_insert_with(Q::zero);
                        *e -= &f * gc;
                    }
                }
                None => {
                    done.insert(m, c);
                }
            }
        }
        Poly::from_map(done)
    }
}

fn spoly(a: &Poly, b: &Poly) -> Poly {
    let l = mono_lcm(a.lead(), b.lead());
    let qa = mono_div(&l, a.lead());
    let qb = mono_div(&l, b.lead());
    let ca = a.terms[0].1.clone();
    let cb = b.terms[0].1.clone();
    let mut m: BTreeMap<Drl, Q> = BTreeMap::new();
    for (t, c) in a.terms.iter().skip(1) {
        *m.entry(Drl(mono_mul(t, &qa))).or_insert_with(Q::zero) += c / &ca;
    }
    for (t, c) in b.terms.iter().skip(1) {
        *m.entry(Drl(mono_mul(t, &qb))).or_insert_with(Q::zero) -= c / &cb;
    }
    Poly::from_map(m)
}

fn max_bits(p: &Poly) -> u64 {
    p.terms
        .iter()
        .map(|(_, c)| c.numer().bits().max(c.denom().bits()))
        .max()
        .unwrap_or(0)
}

/// Reduced Gröbner basis, or `None` once a basis element needs coefficients wider than
/// `bit_budget` bits (a deterministic proxy for coefficient explosion).
pub fn groebner(input: &[Poly], bit_budget: u64) -> Option<Vec<Poly>> {
    let mut g: Vec<Poly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |g: &mut Vec<Poly>, pairs: &mut Vec<(usize, usize)>, p: Poly| {
        let p = p.monic();
        let n = g.len();
        // Gebauer-Möller style pruning of pairs made redundant by the new lead term.
        let lp = *p.lead();
        pairs.retain(|&(i, j)| {
            let lij = mono_lcm(g[i].lead(), g[j].lead());
            !(divides(&lp, &lij)
                && mono_lcm(g[i].lead(), &lp) != lij
                && mono_lcm(g[j].lead(), &lp) != lij)
        });
        let mut fresh: Vec<(usize, Mono)> = (0..n).map(|i| (i, mono_lcm(g[i].lead(), &lp))).collect();
        // Chain criterion among the fresh pairs: keep only lcm-minimal representatives.
        fresh.sort_by(|a, b| drl_cmp(&a.1, &b.1));
        let mut kept: Vec<(usize, Mono)> = Vec::new();
        for (i, l) in fresh {
            if kept.iter().any(|(_, k)| divides(k, &l)) {
                continue;
            }
            kept.push((i, l));
        }
        for (i, _) in kept {
            let coprime = g[i].lead().iter().zip(lp.iter()).all(|(a, b)| *a == 0 || *b == 0);
            if !coprime {
                pairs.push((i, n));
            }
        }
        g.push(p);
    };
    for p in input {
        let r = Reducer { basis: &g }.reduce(p);
        if !r.is_zero() {
            add(&mut g, &mut pairs, r);
        }
    }
    while !pairs.is_empty() {
        // Normal selection strategy: smallest lcm first.
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let la = mono_lcm(g[a.1 .0].lead(), g[a.1 .1].lead());
                let lb = mono_lcm(g[b.1 .0].lead(), g[b.1 .1].lead());
                drl_cmp(&la, &lb)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(k);
        let s = spoly(&g[i], &g[j]);
        let r = Reducer { basis: &g }.reduce(&s);
        if !r.is_zero() {
            if max_bits(&r.clone().monic()) > bit_budget {
                return None;
            }
            add(&mut g, &mut pairs, r);
        }
    }
    Some(interreduce(g))
}

/// Minimal, fully interreduced, monic basis sorted by lead term.
pub fn interreduce(g: Vec<Poly>) -> Vec<Poly> {
    let mut g: Vec<Poly> = g.into_iter().map(Poly::monic).collect();
    g.sort_by(|a, b| drl_cmp(a.lead(), b.lead()));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| divides(q.lead(), p.lead())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let head = Poly {
            terms: vec![minimal[k].terms[0].clone()],
        };
        let tail = Poly {
            terms: minimal[k].terms[1..].to_vec(),
        };
        let red = Reducer { basis: &others }.reduce(&tail);
        let mut terms = head.terms;
        terms.extend(red.terms);
        out.push(Poly { terms }.monic());
    }
    out
}

/// Checks the Buchberger criterion: all S-polynomials with lcm degree ≤ `bound` reduce to 0.
/// Returns the list of offending pairs with their remainders.
pub fn s_pair_residuals(g: &[Poly], bound: u32) -> Vec<((usize, usize), Poly)> {
    let red = Reducer { basis: g };
    let mut bad = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if mono_deg(&mono_lcm(g[i].lead(), g[j].lead())) > bound {
                continue;
            }
            let r = red.reduce(&spoly(&g[i], &g[j]));
            if !r.is_zero() {
                bad.push(((i, j), r));
            }
        }
    }
    bad
}

pub fn is_one(p: &Poly) -> bool {
    p.terms.len() == 1 && mono_deg(&p.terms[0].0) == 0 && p.terms[0].1.is_one()
}
