//! Tensor powers of an algebra with legwise normal forms.

use crate::error::Result;
use crate::ncalg::algebra::{Algebra, Element, Key};
use crate::ring::Scalar;
use smallvec::SmallVec;
use std::collections::BTreeMap;

pub type Legs = SmallVec<[Key; 3]>;

/// `Σ c · k₁ ⊗ … ⊗ kₙ` over normal words, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<Legs, Scalar>,
}

impl std::fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 ⊗ … ⊗ 1` with `n` legs.
    pub fn one(n: usize) -> Self {
        let mut t = Self::zero();
        t.add_term((0..n).map(|_| Key::one()).collect(), Scalar::one());
        t
    }

    pub fn add_term(&mut self, legs: Legs, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&legs) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&legs);
                }
            }
            None => {
                self.terms.insert(legs, c);
            }
        }
    }

    /// `c · e₁ ⊗ … ⊗ eₙ` expanded.
    pub fn pure(c: &Scalar, legs: &[&Element]) -> Self {
        let mut acc: Vec<(Legs, Scalar)> = vec![(Legs::new(), c.clone())];
        for e in legs {
            let mut next = Vec::with_capacity(acc.len() * e.len());
            for (l, s) in &acc {
                for (k, x) in e.terms() {
                    let mut l2 = l.clone();
                    l2.push(k.clone());
                    next.push((l2, s * x));
                }
            }
            acc = next;
        }
        let mut t = Self::zero();
        for (l, s) in acc {
            t.add_term(l, s);
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Legs, &Scalar)> {
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
        let mut t = Self::zero();
        for (l, s) in &self.terms {
            t.add_term(l.clone(), s * c);
        }
        t
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        for (l, s) in &other.terms {
            self.add_term(l.clone(), s.clone());
        }
    }

    pub fn sub(&self, other: &TensorElement) -> Self {
        let mut t = self.clone();
        for (l, s) in &other.terms {
            t.add_term(l.clone(), -s);
        }
        t
    }

    /// Legwise product.
    pub fn mul(&self, other: &TensorElement, alg: &Algebra) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                let legs: Vec<Element> = la
                    .iter()
                    .zip(lb.iter())
                    .map(|(a, b)| alg.mul_key(a, b))
                    .collect::<Result<_>>()?;
                let refs: Vec<&Element> = legs.iter().collect();
                out.add_assign(&TensorElement::pure(&(ca * cb), &refs));
            }
        }
        Ok(out)
    }

    /// Applies a linear map to one leg, leaving the others.
    pub fn map_leg(&self, leg: usize, f: &mut dyn FnMut(&Key) -> Result<Element>) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (l, c) in &self.terms {
            for (k, x) in f(&l[leg])?.terms() {
                let mut l2 = l.clone();
                l2[leg] = k.clone();
                out.add_term(l2, c * x);
            }
        }
        Ok(out)
    }

    /// Collapses a two-leg tensor to an element by `f(a) · g(b)`, grouping terms on the
    /// leg with fewer distinct keys so each group costs one product.
    pub fn contract(
        &self,
        alg: &Algebra,
        f: &mut dyn FnMut(&Key) -> Result<Element>,
        g: &mut dyn FnMut(&Key) -> Result<Element>,
    ) -> Result<Element> {
        let mut by0: BTreeMap<&Key, Vec<(&Key, &Scalar)>> = BTreeMap::new();
        let mut by1: BTreeMap<&Key, Vec<(&Key, &Scalar)>> = BTreeMap::new();
        for (l, c) in &self.terms {
            by0.entry(&l[0]).or_default().push((&l[1], c));
            by1.entry(&l[1]).or_default().push((&l[0], c));
        }
        let mut r = Element::zero();
        if by0.len() <= by1.len() {
            for (a, rest) in by0 {
                let mut right = Element::zero();
                for (b, c) in rest {
                    right += &g(b)?.scale(c);
                }
                r += &alg.mul(&f(a)?, &right)?;
            }
        } else {
            for (b, rest) in by1 {
                let mut left = Element::zero();
                for (a, c) in rest {
                    left += &f(a)?.scale(c);
                }
                r += &alg.mul(&left, &g(b)?)?;
            }
        }
        Ok(r)
    }

    /// Groups by the last leg: last key ↦ remaining legs (as a one-leg element when two legs).
    pub fn by_last_leg(&self) -> BTreeMap<Key, Element> {
        let mut out: BTreeMap<Key, Element> = BTreeMap::new();
        for (l, c) in &self.terms {
            let e = out.entry(l[l.len() - 1].clone()).or_default();
            e.add_term(l[0].clone(), c.clone());
        }
        out
    }

    /// Replaces one leg by a tensor with `k` legs, giving `n + k − 1` legs.
    pub fn split_leg(&self, leg: usize, f: &mut dyn FnMut(&Key) -> Result<TensorElement>) -> Result<TensorElement> {
        let mut groups: BTreeMap<&Key, Vec<(&Legs, &Scalar)>> = BTreeMap::new();
        for (l, c) in &self.terms {
            groups.entry(&l[leg]).or_default().push((l, c));
        }
        let mut out = TensorElement::zero();
        for (k, rest) in groups {
            let inner = f(k)?;
            for (l, c) in rest {
                for (il, x) in inner.terms() {
                    let mut l2 = Legs::new();
                    l2.extend(l[..leg].iter().cloned());
                    l2.extend(il.iter().cloned());
                    l2.extend(l[leg + 1..].iter().cloned());
                    out.add_term(l2, c * x);
                }
            }
        }
        Ok(out)
    }
}
