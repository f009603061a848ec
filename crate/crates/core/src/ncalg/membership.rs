//! Bounded-degree membership in right (or two-sided) ideals of the group algebra.
//!
//! Let `m` be the ideal of the commutative sector vanishing at the identity (Λ = 1,
//! e^b = 1). The cross relations map `m` into itself, so `J = m²·A` is a two-sided ideal,
//! and it lies in every ideal considered here. Modulo `J` an element `Σ f_w(Λ, e^b) x^w`
//! is determined by the value and first derivatives of each `f_w` at the identity. Those
//! numbers ("slots") are the coordinates used for elimination.
//!
//! Every relation is homogeneous for the weight `x ↦ 1, 1/κ ↦ 1`, so a homogeneous vector
//! has one power of κ per slot and can be evaluated at κ = 1 without loss: rank and
//! membership over Q(i)(κ) equal those of the evaluated vectors over Q(i).
//!
//! Degrees are counted in translation letters only: modulo `J` the commutative part of
//! any element is a first-order jet, so it carries no further grading.

use super::algebra::{Element, Key, Word};
use super::linalg::{Echelon, SVec};
use super::lorentz::lvar;
use super::relations::Group;
use crate::error::{Error, Result};
use crate::ring::metric::matmul;
use crate::ring::{Scalar, Q};
use num::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// Slot layout per word: value, six Lorentz directions, and the dilatation direction.
pub struct Projector {
    nslots: usize,
    words: Vec<Word>,
    word_id: HashMap<Word, usize>,
    /// `tangent[j][v]`: derivative of internal variable `v` along direction `j`.
    tangent: Vec<[Q; 16]>,
    weyl: bool,
    pub bound: usize,
}

/// Index pairs `μ < ν` in lexicographic order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn words_up_to(nletters: u8, len: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    let mut layer = vec![Word::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            let start = w.last().copied().unwrap_or(0);
            for l in start..nletters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl Projector {
    pub fn new(g: &Group, bound: usize) -> Projector {
        let s = g.sector();
        let m = &g.metric;
        let mut tangent = Vec::new();
        for &(r, t) in &PAIRS {
            // A^α_β = g^{αr}δ^t_β − g^{αt}δ^r_β, carried to the internal frame.
            let mut a = crate::ring::metric::zero4();
            for al in 0..4 {
                a[al][t] += m.up(al, r);
                a[al][r] -= m.up(al, t);
            }
            let ai = matmul(&matmul(&s.p, &a), &s.p_inv);
            let mut row: [Q; 16] = std::array::from_fn(|_| Q::zero());
            for x in 0..4 {
                for y in 0..4 {
                    row[lvar(x, y)] = ai[x][y].clone();
                }
            }
            tangent.push(row);
        }
        let words = words_up_to(g.alg.nletters() as u8, bound);
        let word_id = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Projector {
            nslots: if g.weyl { 8 } else { 7 },
            words,
            word_id,
            tangent,
            weyl: g.weyl,
            bound,
        }
    }

    pub fn nslots(&self) -> usize {
        self.nslots
    }

    pub fn ncols(&self) -> usize {
        self.nslots * self.words.len()
    }

    pub fn column(&self, w: &Word, slot: usize) -> usize {
        self.word_id[w] * self.nslots + slot
    }

    pub fn word_of_column(&self, col: usize) -> (&Word, usize) {
        (&self.words[col / self.nslots], col % self.nslots)
    }

    /// Jet data of one commutative monomial: value and derivatives, by slot.
    fn jet(&self, k: &Key) -> Vec<(usize, Q)> {
        let mut off = Vec::new();
        for v in 0..16 {
            if k.mono[v] > 0 && v / 4 != v % 4 {
                off.push(v);
            }
        }
        let mut out = Vec::new();
        match off.as_slice() {
            [] => {
                out.push((0, Q::one()));
                for (j, t) in self.tangent.iter().enumerate() {
                    let mut d = Q::zero();
                    for x in 0..4 {
                        let v = lvar(x, x);
                        if k.mono[v] > 0 {
                            d += &t[v] * Q::from_integer(k.mono[v].into());
                        }
                    }
                    if !d.is_zero() {
                        out.push((1 + j, d));
                    }
                }
                if self.weyl && k.unit != 0 {
                    out.push((7, Q::from_integer(k.unit.into())));
                }
            }
            [v] if k.mono[*v] == 1 => {
                for (j, t) in self.tangent.iter().enumerate() {
                    if !t[*v].is_zero() {
                        out.push((1 + j, t[*v].clone()));
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Projection modulo `J`, keyed by column, with exact scalars.
    pub fn project_exact(&self, e: &Element) -> Result<BTreeMap<usize, Scalar>> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, c) in e.terms() {
            if k.word.len() > self.bound {
                return Err(Error::DegreeOverflow {
                    degree: k.word.len(),
                    cap: self.bound,
                });
            }
            let wid = self.word_id[&k.word];
            for (slot, q) in self.jet(k) {
                let col = wid * self.nslots + slot;
                let t = out.entry(col).or_default();
                *t += &c.scale_q(&q);
                if t.is_zero() {
                    out.remove(&col);
                }
            }
        }
        Ok(out)
    }

    /// Homogeneous components at κ = 1, keyed by weight.
    pub fn project(&self, e: &Element) -> Result<BTreeMap<i32, SVec>> {
        let mut out: BTreeMap<i32, SVec> = BTreeMap::new();
        for (col, s) in self.project_exact(e)? {
            let len = self.words[col / self.nslots].len() as i32;
            for (n, c) in s.terms() {
                out.entry(n + len).or_default().insert(col, c.clone());
            }
        }
        Ok(out)
    }

    /// The κ = 1 vector of an element that must be homogeneous; returns weight and vector.
    pub fn project_homogeneous(&self, e: &Element) -> Result<Option<(i32, SVec)>> {
        let mut parts = self.project(e)?;
        match parts.len() {
            0 => Ok(None),
            1 => Ok(parts.pop_first()),
            _ => Err(Error::Config("spanning element is not weight homogeneous".into())),
        }
    }
}

/// Weight of an element: 1/κ and each translation letter count one. `None` if mixed.
pub fn weight(e: &Element) -> Option<i32> {
    let mut w = None;
    for (k, c) in e.terms() {
        for (n, _) in c.terms() {
            let x = n + k.word.len() as i32;
            match w {
                None => w = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
    }
    w
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Right,
    TwoSided,
}

/// A named spanning element `l · t · r` of the bounded ideal.
#[derive(Clone, Debug)]
pub struct SpanLabel {
    pub text: String,
    pub weight: i32,
}

/// Membership certificate: `a = Σ coefficient · label`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub terms: Vec<(String, Scalar)>,
}

impl Certificate {
    pub fn summary(&self) -> String {
        let shown: Vec<String> = self.terms.iter().take(4).map(|(l, c)| format!("({c})*{l}")).collect();
        let more = self.terms.len().saturating_sub(4);
        if more > 0 {
            format!("{} + {more} more", shown.join(" + "))
        } else if shown.is_empty() {
            "0".to_string()
        } else {
            shown.join(" + ")
        }
    }
}

/// Bounded span of an ideal, reduced to echelon form over the slot coordinates.
pub struct IdealSpan {
    pub proj: Projector,
    pub ech: Echelon,
    pub labels: Vec<SpanLabel>,
    pub generators: usize,
}

/// Multipliers of the commutative sector that survive modulo `J`.
fn jet_multipliers(g: &Group) -> Vec<(String, Element, bool)> {
    let mut out = vec![("1".to_string(), Element::one(), false)];
    for &(r, t) in &PAIRS {
        let mut d = g.lam_pos(true, true, r, t);
        d -= &Element::scalar(Scalar::from_q(g.metric.up(r, t).clone()));
        out.push((format!("D[{r},{t}]"), d, true));
    }
    if g.weyl {
        out.push(("(eb - 1)".to_string(), &g.eb(1) - &Element::one(), true));
    }
    out
}

fn word_text(g: &Group, w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&l| g.alg.letter_names[l as usize].clone()).collect::<Vec<_>>().join("*")
}

fn max_word(e: &Element) -> usize {
    e.terms().map(|(k, _)| k.word.len()).max().unwrap_or(0)
}

impl IdealSpan {
    /// Span of `l·t·r` over generators `t`, jet multipliers and translation words, with
    /// at most `bound` translation letters in total.
    pub fn build(g: &Group, gens: &[(String, Element)], side: Side, bound: usize) -> Result<IdealSpan> {
        let proj = Projector::new(g, bound);
        let mults = jet_multipliers(g);
        let words = words_up_to(4, bound);
        // Left factors for two-sided spans: jet multipliers times words.
        let lefts: Vec<(String, Element)> = match side {
            Side::Right => vec![("".into(), Element::one())],
            Side::TwoSided => {
                let mut v = Vec::new();
                for w in &words {
                    let xw = g.alg.mul_key(&Key::one(), &Key::letters(w))?;
                    for (mt, m, _) in &mults {
                        let name = [word_text(g, w), mt.clone()]
                            .into_iter()
                            .filter(|p| p != "1")
                            .collect::<Vec<_>>()
                            .join("*");
                        v.push((name, g.mul(&xw, m)?));
                    }
                }
                v
            }
        };
        let mut jobs = Vec::new();
        for (ti, (tname, t)) in gens.iter().enumerate() {
            let tp = proj.project_exact(t)?;
            if tp.is_empty() && side == Side::Right {
                // t ∈ J, hence so is every multiple.
                continue;
            }
            // t ∈ m·A when every value slot vanishes; then t·m·… ∈ J for m ∈ m.
            let t_in_m = tp.keys().all(|c| c % proj.nslots != 0);
            for (li, (lname, l)) in lefts.iter().enumerate() {
                let lt = if li == 0 && side == Side::Right {
                    t.clone()
                } else {
                    g.mul(l, t)?
                };
                let used = max_word(&lt);
                if used > bound {
                    continue;
                }
                for (mi, (mname, _, in_m)) in mults.iter().enumerate() {
                    if *in_m && t_in_m && side == Side::Right {
                        continue;
                    }
                    for w in &words {
                        if used + w.len() > bound {
                            continue;
                        }
                        let wt = word_text(g, w);
                        let parts: Vec<&str> = [lname.as_str(), tname.as_str(), mname.as_str(), wt.as_str()]
                            .into_iter()
                            .filter(|p| !p.is_empty() && *p != "1")
                            .collect();
                        let text = parts.join("*");
                        jobs.push((ti, li, mi, w.clone(), text, lt.clone()));
                    }
                }
            }
        }
        let vecs: Vec<Result<Option<(i32, SVec, String)>>> = jobs
            .par_iter()
            .map(|(_, _, mi, w, text, lt)| {
                let m = &mults[*mi].1;
                let xw = Element::term(Key::letters(w), Scalar::one());
                let e = g.mul(&g.mul(lt, m)?, &xw)?;
                Ok(proj.project_homogeneous(&e)?.map(|(wt, v)| (wt, v, text.clone())))
            })
            .collect();
        let mut ech = Echelon::new();
        let mut labels = Vec::new();
        for v in vecs {
            if let Some((wt, v, text)) = v? {
                labels.push(SpanLabel { text, weight: wt });
                ech.insert(&v, labels.len() - 1);
            }
        }
        Ok(IdealSpan {
            proj,
            ech,
            labels,
            generators: gens.len(),
        })
    }

    /// Decides membership; on success the certificate expresses `a` through the span.
    pub fn contains(&self, a: &Element) -> Result<Option<Certificate>> {
        let mut terms: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (w, v) in self.proj.project(a)? {
            let Some(c) = self.ech.solve(&v) else {
                return Ok(None);
            };
            for (label, mu) in c {
                // μ · κ^{wt(label) − w}
                let s = Scalar::monomial(w - self.labels[label].weight, mu);
                *terms.entry(label).or_default() += &s;
            }
        }
        Ok(Some(Certificate {
            terms: terms
                .into_iter()
                .filter(|(_, s)| !s.is_zero())
                .map(|(l, s)| (self.labels[l].text.clone(), s))
                .collect(),
        }))
    }

    /// Dimension of the bounded `ker ε` modulo the span.
    pub fn quotient_dim(&self) -> usize {
        self.proj.ncols() - 1 - self.ech.rank()
    }

    /// Coordinates of `a` on a basis of the quotient: `a ≡ Σ c_b b` modulo the span.
    /// Fails with `None` if `a` is not in the span of the basis plus the ideal.
    pub fn coordinates(&self, basis: &[Element], a: &Element) -> Result<Option<Vec<Scalar>>> {
        let mut ext = self.ech.clone();
        let base = self.labels.len();
        let mut wts = Vec::new();
        for (i, b) in basis.iter().enumerate() {
            let Some((wt, v)) = self.proj.project_homogeneous(b)? else {
                return Ok(None);
            };
            wts.push(wt);
            ext.insert(&v, base + i);
        }
        let mut out = vec![Scalar::zero(); basis.len()];
        for (w, v) in self.proj.project(a)? {
            let Some(c) = ext.solve(&v) else {
                return Ok(None);
            };
            for (label, mu) in c {
                if label >= base {
                    out[label - base] += &Scalar::monomial(w - wts[label - base], mu);
                }
            }
        }
        Ok(Some(out))
    }

    /// Precomputed coordinates on a fixed quotient basis; `None` if a basis element is zero
    /// modulo `J` or not homogeneous.
    pub fn coordinator(&self, basis: &[Element]) -> Result<Option<QuotientCoords>> {
        let mut ech = self.ech.clone();
        let base = self.labels.len();
        let mut wts = Vec::new();
        for (i, b) in basis.iter().enumerate() {
            let Some((wt, v)) = self.proj.project_homogeneous(b)? else {
                return Ok(None);
            };
            wts.push(wt);
            ech.insert(&v, base + i);
        }
        ech.retain_labels(|l| l >= base);
        Ok(Some(QuotientCoords { ech, base, wts }))
    }

    /// Rank of the given elements modulo the span (their independence in the quotient).
    pub fn rank_modulo(&self, elems: &[Element]) -> Result<usize> {
        let mut ext = self.ech.clone();
        let r0 = ext.rank();
        let base = self.labels.len();
        for (i, b) in elems.iter().enumerate() {
            if let Some((_, v)) = self.proj.project_homogeneous(b)? {
                ext.insert(&v, base + i);
            }
        }
        Ok(ext.rank() - r0)
    }
}

/// Coordinates modulo a bounded ideal span on a fixed basis of the quotient.
#[derive(Clone)]
pub struct QuotientCoords {
    ech: Echelon,
    base: usize,
    wts: Vec<i32>,
}

impl QuotientCoords {
    pub fn len(&self) -> usize {
        self.wts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wts.is_empty()
    }

    /// Weight of each basis element.
    pub fn weights(&self) -> &[i32] {
        &self.wts
    }

    /// `a ≡ Σ c_b b` modulo the span, or `None` if `a` is outside basis plus span.
    pub fn solve(&self, proj: &Projector, a: &Element) -> Result<Option<Vec<Scalar>>> {
        let mut out = vec![Scalar::zero(); self.wts.len()];
        for (w, v) in proj.project(a)? {
            let Some(c) = self.ech.solve(&v) else {
                return Ok(None);
            };
            for (label, mu) in c {
                let i = label - self.base;
                out[i] += &Scalar::monomial(w - self.wts[i], mu);
            }
        }
        Ok(Some(out))
    }
}

/// Membership of `a` in the bounded span of `gens` (right or two-sided ideal).
pub fn span_membership(
    g: &Group,
    a: &Element,
    gens: &[(String, Element)],
    side: Side,
    bound: usize,
) -> Result<Option<Certificate>> {
    IdealSpan::build(g, gens, side, bound)?.contains(a)
}

