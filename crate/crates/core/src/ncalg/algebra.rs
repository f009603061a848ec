//! Normal-form arithmetic in a smash-product algebra.
//!
//! Every algebra handled here has the same shape: a commutative sector (polynomials in up
//! to sixteen variables, optionally modulo the Lorentz ideal, times integer powers of an
//! invertible unit) and finitely many noncommuting letters. Letters act on the commutative
//! sector by derivations, `ℓ c = c ℓ + ad_ℓ(c)`, and letters among themselves satisfy
//! `ℓ m = m ℓ + [ℓ, m]` for `ℓ > m`. Normal words are `c · ℓ₁ℓ₂…ℓₙ` with nondecreasing
//! letters.

use super::gb::{mono_deg, mono_mul, var, Mono, NV};
use super::lorentz::LorentzSector;
use crate::error::{Error, Result};
use crate::ring::{Scalar, Q};
use num::One;
use parking_lot::RwLock;
use smallvec::SmallVec;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

pub type Word = SmallVec<[u8; 8]>;

/// A normal word: commutative monomial, unit exponent and sorted letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Key {
    pub word: Word,
    pub unit: i32,
    pub mono: Mono,
}

impl Key {
    pub fn one() -> Key {
        Key {
            word: Word::new(),
            unit: 0,
            mono: [0; NV],
        }
    }

    pub fn comm(mono: Mono, unit: i32) -> Key {
        Key {
            word: Word::new(),
            unit,
            mono,
        }
    }

    pub fn letters(w: &[u8]) -> Key {
        Key {
            word: Word::from_slice(w),
            unit: 0,
            mono: [0; NV],
        }
    }

    /// Polynomial degree: commutative degree plus word length (unit powers are free).
    pub fn degree(&self) -> usize {
        mono_deg(&self.mono) as usize + self.word.len()
    }

    pub fn is_comm(&self) -> bool {
        self.word.is_empty()
    }
}

/// Linear combination of normal words with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Key, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        Element::term(Key::one(), s)
    }

    pub fn term(k: Key, s: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(k, s);
        e
    }

    pub fn add_term(&mut self, k: Key, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += &s;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, s);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Key, Scalar)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &Key) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    /// Coefficient of the empty word.
    pub fn constant(&self) -> Scalar {
        self.coeff(&Key::one())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Element::zero();
        }
        let mut e = Element::zero();
        for (k, c) in &self.terms {
            e.add_term(k.clone(), c * s);
        }
        e
    }

    pub fn is_comm_only(&self) -> bool {
        self.terms.keys().all(Key::is_comm)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Key::degree).max().unwrap_or(0)
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut e = Element::zero();
        for (k, c) in &self.terms {
            e.add_term(k.clone(), f(c));
        }
        e
    }

    /// Keeps the terms selected by `keep`.
    pub fn filter(&self, keep: impl Fn(&Key, &Scalar) -> bool) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(k, c)| keep(k, c))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl From<Scalar> for Element {
    fn from(s: Scalar) -> Self {
        Element::scalar(s)
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, o: &Element) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, o: &Element) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, o: Element) -> Element {
        self += &o;
        self
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, o: Element) -> Element {
        self -= &o;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl std::fmt::Debug for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// The commutative sector.
pub enum CommSector {
    /// Λ entries modulo orthogonality.
    Orthogonal(Arc<LorentzSector>),
    /// Free commutative polynomials in this many variables.
    Free(usize),
}

/// A generator of an algebra, used by substitutions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    Var(usize),
    /// The unit (`+1`) or its inverse (`-1`).
    Unit(i32),
    Letter(u8),
}

pub struct Algebra {
    pub comm: CommSector,
    pub has_unit: bool,
    pub var_names: Vec<String>,
    pub unit_name: String,
    pub letter_names: Vec<String>,
    /// `ad_var[ℓ][v] = [ℓ, v]`, commutative.
    pub ad_var: Vec<Vec<Element>>,
    /// `ad_unit[ℓ] = [ℓ, u]`, commutative.
    pub ad_unit: Vec<Element>,
    /// `bracket[ℓ][m] = [ℓ, m]` for `ℓ > m`.
    pub bracket: Vec<Vec<Element>>,
    pub cap: usize,
    cache: RwLock<HashMap<(u8, Key), Arc<Element>>>,
}

pub const DEFAULT_CAP: usize = 8;

impl Algebra {
    pub fn new(
        comm: CommSector,
        has_unit: bool,
        var_names: Vec<String>,
        unit_name: String,
        letter_names: Vec<String>,
    ) -> Self {
        let nl = letter_names.len();
        let nv = match &comm {
            CommSector::Orthogonal(_) => NV,
            CommSector::Free(n) => *n,
        };
        Algebra {
            comm,
            has_unit,
            var_names,
            unit_name,
            letter_names,
            ad_var: vec![vec![Element::zero(); nv]; nl],
            ad_unit: vec![Element::zero(); nl],
            bracket: vec![vec![Element::zero(); nl]; nl],
            cap: DEFAULT_CAP,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn nvars(&self) -> usize {
        self.ad_var.first().map_or(match &self.comm {
            CommSector::Orthogonal(_) => NV,
            CommSector::Free(n) => *n,
        }, Vec::len)
    }

    pub fn nletters(&self) -> usize {
        self.letter_names.len()
    }

    pub fn sector(&self) -> Option<&Arc<LorentzSector>> {
        match &self.comm {
            CommSector::Orthogonal(s) => Some(s),
            CommSector::Free(_) => None,
        }
    }

    /// Same relations with a different degree cap (fresh cache).
    pub fn with_cap(&self, cap: usize) -> Self {
        let comm = match &self.comm {
            CommSector::Orthogonal(s) => CommSector::Orthogonal(s.clone()),
            CommSector::Free(n) => CommSector::Free(*n),
        };
        Algebra {
            comm,
            has_unit: self.has_unit,
            var_names: self.var_names.clone(),
            unit_name: self.unit_name.clone(),
            letter_names: self.letter_names.clone(),
            ad_var: self.ad_var.clone(),
            ad_unit: self.ad_unit.clone(),
            bracket: self.bracket.clone(),
            cap,
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn nf_comm(&self, m: &Mono) -> Vec<(Mono, Q)> {
        match &self.comm {
            CommSector::Orthogonal(s) => s.nf_mono(m).as_ref().clone(),
            CommSector::Free(_) => vec![(*m, Q::one())],
        }
    }

    /// Normal form of a (possibly reducible) commutative monomial times a unit power.
    pub fn comm_elem(&self, m: &Mono, unit: i32) -> Element {
        let mut e = Element::zero();
        for (mm, c) in self.nf_comm(m) {
            e.add_term(Key::comm(mm, unit), Scalar::from_q(c));
        }
        e
    }

    pub fn var_elem(&self, v: usize) -> Element {
        self.comm_elem(&var(v), 0)
    }

    pub fn unit_elem(&self, n: i32) -> Element {
        assert!(self.has_unit || n == 0, "algebra has no invertible unit");
        Element::term(Key::comm([0; NV], n), Scalar::one())
    }

    pub fn letter_elem(&self, l: u8) -> Element {
        Element::term(Key::letters(&[l]), Scalar::one())
    }

    pub fn gen_elem(&self, g: Gen) -> Element {
        match g {
            Gen::Var(v) => self.var_elem(v),
            Gen::Unit(n) => self.unit_elem(n),
            Gen::Letter(l) => self.letter_elem(l),
        }
    }

    pub fn gen_name(&self, g: Gen) -> String {
        match g {
            Gen::Var(v) => self.var_names[v].clone(),
            Gen::Unit(1) => self.unit_name.clone(),
            Gen::Unit(_) => format!("{}inv", self.unit_name),
            Gen::Letter(l) => self.letter_names[l as usize].clone(),
        }
    }

    /// `c · e` for a commutative monomial `c = m u^n` (multiplied on the left).
    pub fn comm_times(&self, m: &Mono, unit: i32, e: &Element) -> Element {
        let mut r = Element::zero();
        for (k, c) in e.terms() {
            let prod = mono_mul(m, &k.mono);
            for (mm, q) in self.nf_comm(&prod) {
                r.add_term(
                    Key {
                        word: k.word.clone(),
                        unit: k.unit + unit,
                        mono: mm,
                    },
                    c.scale_q(&q),
                );
            }
        }
        r
    }

    /// `ad_ℓ(m u^n)`, expanded by the Leibniz rule; commutative.
    pub fn ad_comm(&self, l: u8, m: &Mono, unit: i32) -> Element {
        let mut r = Element::zero();
        for v in 0..NV {
            if m[v] == 0 {
                continue;
            }
            let d = &self.ad_var[l as usize][v];
            if d.is_zero() {
                continue;
            }
            let mut rest = *m;
            rest[v] -= 1;
            r += &self
                .comm_times(&rest, unit, d)
                .scale(&Scalar::int(m[v] as i64));
        }
        if unit != 0 {
            let d = &self.ad_unit[l as usize];
            if !d.is_zero() {
                r += &self.comm_times(m, unit - 1, d).scale(&Scalar::int(unit as i64));
            }
        }
        r
    }

    fn check(&self, e: &Element) -> Result<()> {
        let d = e.max_degree();
        if d > self.cap {
            return Err(Error::DegreeOverflow {
                degree: d,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// `ℓ · k` in normal form.
    pub fn lmul_letter(&self, l: u8, k: &Key) -> Result<Arc<Element>> {
        let ck = (l, k.clone());
        if let Some(r) = self.cache.read().get(&ck) {
            return Ok(r.clone());
        }
        let mut r = Element::zero();
        for (dk, c) in self.ad_comm(l, &k.mono, k.unit).into_terms() {
            r.add_term(
                Key {
                    word: k.word.clone(),
                    ..dk
                },
                c,
            );
        }
        let ins = self.insert(l, &k.word)?;
        r += &self.comm_times(&k.mono, k.unit, &ins);
        self.check(&r)?;
        let r = Arc::new(r);
        Ok(self.cache.write().entry(ck).or_insert(r).clone())
    }

    /// `ℓ · w` for a sorted letter word `w`.
    fn insert(&self, l: u8, w: &[u8]) -> Result<Element> {
        if w.is_empty() || l <= w[0] {
            let mut nw = Word::with_capacity(w.len() + 1);
            nw.push(l);
            nw.extend_from_slice(w);
            return Ok(Element::term(
                Key {
                    word: nw,
                    unit: 0,
                    mono: [0; NV],
                },
                Scalar::one(),
            ));
        }
        let rest = &w[1..];
        let inner = self.insert(l, rest)?;
        let mut r = self.lmul_letter_elem(w[0], &inner)?;
        let br = &self.bracket[l as usize][w[0] as usize];
        if !br.is_zero() {
            r += &self.mul(br, &Element::term(Key::letters(rest), Scalar::one()))?;
        }
        Ok(r)
    }

    pub fn lmul_letter_elem(&self, l: u8, e: &Element) -> Result<Element> {
        let mut r = Element::zero();
        for (k, c) in e.terms() {
            let p = self.lmul_letter(l, k)?;
            if c.is_one() {
                r += &p;
            } else {
                r += &p.scale(c);
            }
        }
        Ok(r)
    }

    /// Product of two normal words.
    pub fn mul_key(&self, a: &Key, b: &Key) -> Result<Element> {
        let mut y = Element::term(b.clone(), Scalar::one());
        for &l in a.word.iter().rev() {
            y = self.lmul_letter_elem(l, &y)?;
        }
        Ok(self.comm_times(&a.mono, a.unit, &y))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut r = Element::zero();
        for (ka, ca) in a.terms() {
            // Left-multiplying a whole element at once shares the letter cascade.
            let mut y = b.clone();
            for &l in ka.word.iter().rev() {
                y = self.lmul_letter_elem(l, &y)?;
            }
            r += &self.comm_times(&ka.mono, ka.unit, &y).scale(ca);
        }
        Ok(r)
    }

    pub fn mul_all(&self, fs: &[&Element]) -> Result<Element> {
        let mut acc = Element::one();
        for f in fs {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &Element, n: u32) -> Result<Element> {
        let mut acc = Element::one();
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// `ab − ba`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(&self.mul(a, b)? - &self.mul(b, a)?)
    }

    /// Antilinear antihomomorphism fixing every generator.
    pub fn star(&self, a: &Element) -> Result<Element> {
        let mut r = Element::zero();
        for (k, c) in a.terms() {
            let mut y = Element::term(Key::comm(k.mono, k.unit), Scalar::one());
            for &l in k.word.iter() {
                y = self.lmul_letter_elem(l, &y)?;
            }
            r += &y.scale(&c.conj());
        }
        Ok(r)
    }

    /// Algebra-map extension of `img` into `target` (all generator images must exist).
    pub fn substitute(
        &self,
        a: &Element,
        target: &Algebra,
        img: &dyn Fn(Gen) -> Option<Element>,
    ) -> Result<Element> {
        let mut memo: HashMap<Gen, Element> = HashMap::new();
        let mut get = |g: Gen| -> Result<Element> {
            if let Some(e) = memo.get(&g) {
                return Ok(e.clone());
            }
            let e = img(g).ok_or_else(|| Error::MissingSubstitution(self.gen_name(g)))?;
            memo.insert(g, e.clone());
            Ok(e)
        };
        let mut r = Element::zero();
        for (k, c) in a.terms() {
            let mut acc = Element::scalar(c.clone());
            for v in 0..NV {
                for _ in 0..k.mono[v] {
                    acc = target.mul(&acc, &get(Gen::Var(v))?)?;
                }
            }
            if k.unit != 0 {
                let ug = get(Gen::Unit(k.unit.signum()))?;
                for _ in 0..k.unit.unsigned_abs() {
                    acc = target.mul(&acc, &ug)?;
                }
            }
            for &l in k.word.iter() {
                acc = target.mul(&acc, &get(Gen::Letter(l))?)?;
            }
            r += &acc;
        }
        Ok(r)
    }

    /// Multiplies out a raw product of generators.
    pub fn word_of(&self, gens: &[Gen]) -> Result<Element> {
        let mut acc = Element::one();
        for g in gens {
            acc = self.mul(&acc, &self.gen_elem(*g))?;
        }
        Ok(acc)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().len()
    }
}

/// Convenience: `Σ c_i e_i`.
pub fn lincomb<'a>(parts: impl IntoIterator<Item = (Scalar, &'a Element)>) -> Element {
    let mut r = Element::zero();
    for (c, e) in parts {
        r += &e.scale(&c);
    }
    r
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn f<T: Send + Sync>() {}
    f::<Algebra>();
    f::<Element>();
}
