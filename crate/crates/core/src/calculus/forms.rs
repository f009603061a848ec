//! Left-invariant bases, 1-forms and 2-forms with algebra coefficients.

use crate::expr::render;
use crate::ncalg::algebra::{Algebra, Element};
use crate::ncalg::membership::PAIRS;
use crate::ncalg::relations::Variant;
use crate::ring::Scalar;
use std::collections::BTreeMap;

/// Position of `(a, b)`, `a < b`, in [`PAIRS`].
pub fn pair_index(a: usize, b: usize) -> Option<usize> {
    PAIRS.iter().position(|&p| p == (a, b))
}

/// Ordered left-invariant basis of one variant.
///
/// Layout: `ω^μ` at 0..4, `ω^{μν}` (`μ < ν`, both raised) at 4..10, then `Ω`, `Ω_μ`
/// (general) or `ω^b` (Weyl).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormBasis {
    pub variant: Variant,
    pub symbols: Vec<String>,
}

pub const W: usize = 0;
pub const WW: usize = 4;
pub const OM: usize = 10;
pub const OML: usize = 11;
pub const WB: usize = 10;

impl FormBasis {
    pub fn new(variant: Variant) -> FormBasis {
        let mut symbols: Vec<String> = (0..4).map(|m| format!("w^{m}")).collect();
        symbols.extend(PAIRS.iter().map(|(a, b)| format!("w^{a}{b}")));
        match variant {
            Variant::PoincareGeneral => {
                symbols.push("Om".into());
                symbols.extend((0..4).map(|m| format!("Om_{m}")));
            }
            Variant::Weyl => symbols.push("w^b".into()),
            _ => {}
        }
        FormBasis { variant, symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Whether a basis index is one of `ω^μ`, `ω^{μν}`.
    pub fn is_lorentz_translation(i: usize) -> bool {
        i < OM
    }
}

/// `Σ c_k · s_k` with element coefficients on the left; zero coefficients dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Comb<K: Ord + Clone> {
    terms: BTreeMap<K, Element>,
}

impl<K: Ord + Clone> Default for Comb<K> {
    fn default() -> Self {
        Comb { terms: BTreeMap::new() }
    }
}

/// A 1-form on the left-invariant basis.
pub type Form = Comb<usize>;
/// A 2-form on the reduced exterior basis.
pub type TwoForm = Comb<usize>;
/// An unreduced sum of `c · ω_i ⊗ ω_j`.
pub type RawTwoForm = Comb<(usize, usize)>;

impl<K: Ord + Clone> Comb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(k: K) -> Self {
        let mut f = Self::zero();
        f.add(k, &Element::one());
        f
    }

    pub fn add(&mut self, k: K, e: &Element) {
        if e.is_zero() {
            return;
        }
        let t = self.terms.entry(k.clone()).or_default();
        *t += e;
        if t.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scalar(&mut self, k: K, c: &Scalar) {
        self.add(k, &Element::scalar(c.clone()));
    }

    pub fn coeff(&self, k: &K) -> Element {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Element)> {
        self.terms.iter()
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

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (k, e) in &self.terms {
            out.add(k.clone(), &e.scale(c));
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, e) in &other.terms {
            self.add(k.clone(), e);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, e) in &other.terms {
            out.add(k.clone(), &-e);
        }
        out
    }

    /// `a · self`.
    pub fn lmul(&self, alg: &Algebra, a: &Element) -> crate::Result<Self> {
        let mut out = Self::zero();
        for (k, e) in &self.terms {
            out.add(k.clone(), &alg.mul(a, e)?);
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Element) -> Element) -> Self {
        let mut out = Self::zero();
        for (k, e) in &self.terms {
            out.add(k.clone(), &f(e));
        }
        out
    }

    /// Keeps the symbols accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&K) -> bool) -> Self {
        Comb {
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, e)| (k.clone(), e.clone())).collect(),
        }
    }

    /// Renders with `name` for the symbols.
    pub fn render_with(&self, alg: &Algebra, name: impl Fn(&K) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, e)| format!("({})*{}", render(alg, e), name(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A 1-form with constant coefficients.
pub type ConstForm = BTreeMap<usize, Scalar>;
/// A constant element of `Γ_inv ⊗ Γ_inv`.
pub type ConstRaw = BTreeMap<(usize, usize), Scalar>;

pub fn cadd<K: Ord + Clone>(m: &mut BTreeMap<K, Scalar>, k: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(k.clone()).or_default();
    *e += c;
    if e.is_zero() {
        m.remove(&k);
    }
}

/// `x + c · y`.
pub fn caxpy<K: Ord + Clone>(x: &mut BTreeMap<K, Scalar>, c: &Scalar, y: &BTreeMap<K, Scalar>) {
    for (k, v) in y {
        cadd(x, k.clone(), &(c * v));
    }
}

pub fn cscale<K: Ord + Clone>(y: &BTreeMap<K, Scalar>, c: &Scalar) -> BTreeMap<K, Scalar> {
    let mut out = BTreeMap::new();
    caxpy(&mut out, c, y);
    out
}

/// `a ⊗ b` of constant forms.
pub fn cwedge(a: &ConstForm, b: &ConstForm) -> ConstRaw {
    let mut out = ConstRaw::new();
    for (i, x) in a {
        for (j, y) in b {
            cadd(&mut out, (*i, *j), &(x * y));
        }
    }
    out
}

pub fn const_to_form<K: Ord + Clone>(c: &BTreeMap<K, Scalar>) -> Comb<K> {
    let mut out = Comb::zero();
    for (k, s) in c {
        out.add_scalar(k.clone(), s);
    }
    out
}

/// Scalar coefficients of a combination whose coefficients are all constants.
pub fn form_to_const<K: Ord + Clone>(f: &Comb<K>) -> Option<BTreeMap<K, Scalar>> {
    let mut out = BTreeMap::new();
    for (k, e) in f.terms() {
        if e.terms().any(|(key, _)| *key != crate::ncalg::algebra::Key::one()) {
            return None;
        }
        out.insert(k.clone(), e.constant());
    }
    Some(out)
}
