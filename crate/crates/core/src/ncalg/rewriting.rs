//! A plain word-rewriting system with length-two left-hand sides.
//!
//! Serves as an independent oracle for the smash-product engine: rules are written out
//! symbol by symbol, normal forms are found by naive rewriting, and local confluence is
//! decided by resolving every length-three overlap.

use super::algebra::Element;
use super::gb::NV;
use super::relations::{delta, sq, Dual, D_LETTER};
use crate::ring::{Metric, Scalar};
use parking_lot::Mutex;
use smallvec::SmallVec;
use std::collections::{BTreeMap, HashMap};

pub type W = SmallVec<[u16; 8]>;
pub type WPoly = BTreeMap<W, Scalar>;

pub fn wadd(p: &mut WPoly, w: W, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(w.clone()).or_default();
    *e += &c;
    if e.is_zero() {
        p.remove(&w);
    }
}

pub struct RewriteSystem {
    pub names: Vec<String>,
    /// Noncommuting letters; their count leads the termination measure.
    pub heavy: Vec<bool>,
    rules: HashMap<(u16, u16), WPoly>,
    memo: Mutex<HashMap<W, WPoly>>,
}

#[derive(Debug, Clone)]
pub struct Ambiguity {
    pub word: W,
    pub residual: WPoly,
}

impl RewriteSystem {
    pub fn new(names: Vec<String>) -> Self {
        RewriteSystem {
            heavy: vec![false; names.len()],
            names,
            rules: HashMap::new(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn nsym(&self) -> usize {
        self.names.len()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn add_rule(&mut self, a: u16, b: u16, rhs: WPoly) {
        self.rules.insert((a, b), rhs);
    }

    /// Commutation rule `a b → b a + extra` for `a > b`.
    pub fn add_swap(&mut self, a: u16, b: u16, extra: WPoly) {
        let mut rhs = extra;
        wadd(&mut rhs, SmallVec::from_slice(&[b, a]), Scalar::one());
        self.add_rule(a, b, rhs);
    }

    /// Termination measure: (noncommuting letters, inversions, length), lexicographic.
    pub fn measure(&self, w: &[u16]) -> (usize, usize, usize) {
        let heavy = w.iter().filter(|&&s| self.heavy[s as usize]).count();
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        (heavy, inv, w.len())
    }

    /// Every rule strictly decreases the termination measure.
    pub fn decreasing(&self) -> bool {
        self.rules.iter().all(|((a, b), rhs)| {
            let m = self.measure(&[*a, *b]);
            rhs.keys().all(|w| self.measure(w) < m)
        })
    }

    fn redex(&self, w: &[u16]) -> Option<usize> {
        (0..w.len().saturating_sub(1)).find(|&i| self.rules.contains_key(&(w[i], w[i + 1])))
    }

    pub fn nf_word(&self, w: &W) -> WPoly {
        if let Some(r) = self.memo.lock().get(w) {
            return r.clone();
        }
        let r = match self.redex(w) {
            None => {
                let mut p = WPoly::new();
                wadd(&mut p, w.clone(), Scalar::one());
                p
            }
            Some(i) => self.apply_at(w, i),
        };
        self.memo.lock().insert(w.clone(), r.clone());
        r
    }

    /// Rewrites at position `i` and normalizes the result.
    fn apply_at(&self, w: &W, i: usize) -> WPoly {
        let rhs = &self.rules[&(w[i], w[i + 1])];
        let mut out = WPoly::new();
        for (mid, c) in rhs {
            let mut nw: W = SmallVec::from_slice(&w[..i]);
            nw.extend_from_slice(mid);
            nw.extend_from_slice(&w[i + 2..]);
            for (ww, cc) in self.nf_word(&nw) {
                wadd(&mut out, ww, &cc * c);
            }
        }
        out
    }

    pub fn nf(&self, p: &WPoly) -> WPoly {
        let mut out = WPoly::new();
        for (w, c) in p {
            for (ww, cc) in self.nf_word(w) {
                wadd(&mut out, ww, &cc * c);
            }
        }
        out
    }

    /// Resolves every overlap `abc` of two left-hand sides; returns the count and failures.
    pub fn check_overlaps(&self) -> (usize, Vec<Ambiguity>) {
        let mut count = 0;
        let mut bad = Vec::new();
        let mut keys: Vec<(u16, u16)> = self.rules.keys().copied().collect();
        keys.sort();
        for &(a, b) in &keys {
            for &(b2, c) in &keys {
                if b2 != b {
                    continue;
                }
                count += 1;
                let w: W = SmallVec::from_slice(&[a, b, c]);
                let left = self.apply_at(&w, 0);
                let right = self.apply_at(&w, 1);
                let mut res = left;
                for (ww, cc) in right {
                    wadd(&mut res, ww, -cc);
                }
                if !res.is_empty() {
                    bad.push(Ambiguity { word: w, residual: res });
                }
            }
        }
        (count, bad)
    }

    pub fn render(&self, p: &WPoly) -> String {
        if p.is_empty() {
            return "0".to_string();
        }
        p.iter()
            .map(|(w, c)| {
                let f: Vec<&str> = w.iter().map(|&s| self.names[s as usize].as_str()).collect();
                format!("({c})*{}", if f.is_empty() { "1".to_string() } else { f.join("*") })
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The toy commutative system `{y x → x y}`.
pub fn toy() -> RewriteSystem {
    let mut r = RewriteSystem::new(vec!["x".into(), "y".into()]);
    r.add_swap(1, 0, WPoly::new());
    r
}

fn w1(s: u16) -> W {
    SmallVec::from_slice(&[s])
}

/// Group relations written directly in the sixteen Λ entries, which are left free
/// (orthogonality is an ideal preserved by the cross relations and is checked elsewhere).
/// Symbols: `eb, ebinv` (Weyl only), then `Λ^μ_ν`, then `x^μ`.
pub fn group_system(g: &Metric, weyl: bool, corrupt: bool) -> RewriteSystem {
    let off = if weyl { 2u16 } else { 0 };
    let lam = |m: usize, n: usize| off + (4 * m + n) as u16;
    let xs = |m: usize| off + 16 + m as u16;
    let mut names = Vec::new();
    if weyl {
        names.push("eb".to_string());
        names.push("ebinv".to_string());
    }
    for k in 0..16 {
        names.push(format!("L[{},{}]", k / 4, k % 4));
    }
    for m in 0..4 {
        names.push(format!("x[{m}]"));
    }
    let mut r = RewriteSystem::new(names);
    for m in 0..4 {
        r.heavy[xs(m) as usize] = true;
    }
    let ik = Scalar::i_over_k();
    if weyl {
        r.add_rule(0, 1, WPoly::from([(W::new(), Scalar::one())]));
        r.add_rule(1, 0, WPoly::from([(W::new(), Scalar::one())]));
        for s in 2..r.nsym() as u16 {
            r.add_swap(s, 0, WPoly::new());
            r.add_swap(s, 1, WPoly::new());
        }
    }
    for a in 0..16 {
        for b in 0..a {
            r.add_swap(lam(a / 4, a % 4), lam(b / 4, b % 4), WPoly::new());
        }
    }
    for rho in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                // x^ρ Λ^α_β = Λ^α_β x^ρ + (i/κ)((e^bΛ^α_0 − δ^α_0)Λ^ρ_β + (Λ_{0β} − e^b g_{0β})g^{αρ})
                let mut extra = WPoly::new();
                let (p, q) = {
                    let (u, v) = (lam(a, 0), lam(rho, b));
                    (u.min(v), u.max(v))
                };
                let mut quad: W = SmallVec::new();
                if weyl {
                    quad.push(0);
                }
                quad.push(p);
                quad.push(q);
                wadd(&mut extra, quad, ik.clone());
                wadd(&mut extra, w1(lam(rho, b)), -(&ik * &delta(a, 0)));
                let gar = sq(g.up(a, rho));
                if !gar.is_zero() {
                    for c in 0..4 {
                        wadd(&mut extra, w1(lam(c, b)), &(&ik * &gar) * &sq(g.lo(0, c)));
                    }
                    let f = -(&(&ik * &gar) * &sq(g.lo(0, b)));
                    if weyl {
                        wadd(&mut extra, w1(0), f);
                    } else {
                        wadd(&mut extra, W::new(), f);
                    }
                }
                r.add_swap(xs(rho), lam(a, b), extra);
            }
        }
    }
    for rho in 1..4 {
        let mut c = -ik.clone();
        if corrupt && rho == 1 {
            c = -c;
        }
        r.add_swap(xs(rho), xs(0), WPoly::from([(w1(xs(rho)), c)]));
    }
    r
}

/// Converts a commutative dual element to oracle words (`F, Finv, P1..P3` symbols).
fn dual_comm_words(e: &Element) -> WPoly {
    let mut p = WPoly::new();
    for (k, c) in e.terms() {
        assert!(k.word.is_empty());
        let mut w = W::new();
        let u = if k.unit > 0 { 0 } else { 1 };
        for _ in 0..k.unit.unsigned_abs() {
            w.push(u);
        }
        for v in 0..NV.min(3) {
            for _ in 0..k.mono[v] {
                w.push(2 + v as u16);
            }
        }
        wadd(&mut p, w, c.clone());
    }
    p
}

/// The dual algebra as a word system. Symbols: `F, Finv, P1, P2, P3`, then the letters.
pub fn dual_system(d: &Dual) -> RewriteSystem {
    let nl = d.alg.nletters() as u16;
    let mut names: Vec<String> = vec!["F".into(), "Finv".into()];
    names.extend((1..4).map(|k| format!("P[{k}]")));
    names.extend(d.alg.letter_names.iter().cloned());
    let mut r = RewriteSystem::new(names);
    for l in 0..nl {
        r.heavy[5 + l as usize] = true;
    }
    r.add_rule(0, 1, WPoly::from([(W::new(), Scalar::one())]));
    r.add_rule(1, 0, WPoly::from([(W::new(), Scalar::one())]));
    for k in 2..5 {
        r.add_swap(k, 0, WPoly::new());
        r.add_swap(k, 1, WPoly::new());
        for j in 2..k {
            r.add_swap(k, j, WPoly::new());
        }
    }
    for l in 0..nl {
        let s = 5 + l;
        let p0 = d.commutator_p(l as u8, 0);
        // [ℓ, F] = (1/2κ)[ℓ, P₀] F and [ℓ, F⁻¹] = −(1/2κ)[ℓ, P₀] F⁻¹
        let half = Scalar::frac(1, 2).shift(1);
        let adf = d.alg.comm_times(&[0; NV], 1, &p0).scale(&half);
        let adfi = d.alg.comm_times(&[0; NV], -1, &p0).scale(&-half);
        r.add_swap(s, 0, dual_comm_words(&adf));
        r.add_swap(s, 1, dual_comm_words(&adfi));
        for k in 1..4 {
            r.add_swap(s, 1 + k as u16, dual_comm_words(&d.commutator_p(l as u8, k)));
        }
        for m in 0..l {
            let extra = if l as u8 == D_LETTER || m as u8 == D_LETTER {
                WPoly::new()
            } else {
                let (mu, nu) = Dual::letter_indices(l as u8).unwrap();
                let (la, si) = Dual::letter_indices(m as u8).unwrap();
                let mut p = WPoly::new();
                for (k, c) in d.mm_bracket(mu, nu, la, si).terms() {
                    let w: W = k.word.iter().map(|&x| 5 + x as u16).collect();
                    wadd(&mut p, w, c.clone());
                }
                p
            };
            r.add_swap(s, 5 + m, extra);
        }
    }
    r
}
