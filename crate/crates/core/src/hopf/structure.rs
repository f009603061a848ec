//! Coproduct, counit, antipode and adjoint action of the group Hopf algebra.

use super::tensor::{Legs, TensorElement};
use crate::error::Result;
use crate::ncalg::algebra::{Element, Gen, Key};
use crate::ncalg::gb::NV;
use crate::ncalg::lorentz::lvar;
use crate::ncalg::relations::{sq, Group};
use crate::ring::Scalar;
use parking_lot::RwLock;
use std::collections::HashMap;

pub struct GroupHopf<'a> {
    pub g: &'a Group,
    delta_gen: HashMap<Gen, TensorElement>,
    s_gen: HashMap<Gen, Element>,
    sinv_gen: HashMap<Gen, Element>,
    delta_cache: RwLock<HashMap<Key, TensorElement>>,
    s_cache: RwLock<HashMap<Key, Element>>,
    sinv_cache: RwLock<HashMap<Key, Element>>,
}

/// Splits a normal word into a shorter normal word and the generator completing it.
fn split_last(k: &Key) -> Option<(Key, Gen)> {
    let mut p = k.clone();
    if let Some(l) = p.word.pop() {
        return Some((p, Gen::Letter(l)));
    }
    if p.unit != 0 {
        let s = p.unit.signum();
        p.unit -= s;
        return Some((p, Gen::Unit(s)));
    }
    let v = (0..NV).rev().find(|&v| p.mono[v] > 0)?;
    p.mono[v] -= 1;
    Some((p, Gen::Var(v)))
}

fn key_elem(k: &Key) -> Element {
    Element::term(k.clone(), Scalar::one())
}

impl<'a> GroupHopf<'a> {
    pub fn new(g: &'a Group) -> Self {
        let alg = &g.alg;
        let s = g.sector();
        let mut gens: Vec<Gen> = (0..NV).map(Gen::Var).collect();
        gens.extend((0..4u8).map(Gen::Letter));
        if g.weyl {
            gens.push(Gen::Unit(1));
            gens.push(Gen::Unit(-1));
        }
        let mut delta_gen = HashMap::new();
        let mut s_gen = HashMap::new();
        let mut sinv_gen = HashMap::new();
        for &gen in &gens {
            let (d, a, ai) = match gen {
                Gen::Var(v) => {
                    // Δ Λ'^a_b = Λ'^a_c ⊗ Λ'^c_b (the frame change commutes with Δ).
                    let (a, b) = (v / 4, v % 4);
                    let mut d = TensorElement::zero();
                    for c in 0..4 {
                        d.add_assign(&TensorElement::pure(
                            &Scalar::one(),
                            &[&alg.var_elem(lvar(a, c)), &alg.var_elem(lvar(c, b))],
                        ));
                    }
                    // S Λ^m_n = Λ_n^m, carried through Λ' = P Λ P⁻¹.
                    let mut sv = Element::zero();
                    for (w, c) in s.internal_entry(a, b) {
                        sv += &g.lam_pos(false, true, w % 4, w / 4).scale(&sq(&c));
                    }
                    // S² = id on Λ.
                    (d, sv.clone(), sv)
                }
                Gen::Unit(n) => {
                    let u = alg.unit_elem(n);
                    (TensorElement::pure(&Scalar::one(), &[&u, &u]), alg.unit_elem(-n), alg.unit_elem(-n))
                }
                Gen::Letter(l) => {
                    let rho = l as usize;
                    // Δ x^ρ = e^b Λ^ρ_ν ⊗ x^ν + x^ρ ⊗ 1, S x^ρ = −e^{−b} Λ_ν^ρ x^ν
                    let mut d = TensorElement::pure(&Scalar::one(), &[&g.x(rho), &Element::one()]);
                    let mut sx = Element::zero();
                    // S⁻¹ x^ρ = −x^ν e^{−b} Λ_ν^ρ
                    let mut si = Element::zero();
                    for nu in 0..4 {
                        let r = g.mul(&g.eb(-1), &g.lam_pos(false, true, nu, rho)).expect("degree one");
                        si -= &g.mul(&g.x(nu), &r).expect("degree two");
                        let left = g.mul(&g.eb(1), &g.lam(rho, nu)).expect("degree one");
                        d.add_assign(&TensorElement::pure(&Scalar::one(), &[&left, &g.x(nu)]));
                        let t = g.mul(&g.lam_pos(false, true, nu, rho), &g.x(nu)).expect("degree two");
                        sx -= &g.mul(&g.eb(-1), &t).expect("degree two");
                    }
                    (d, sx, si)
                }
            };
            delta_gen.insert(gen, d);
            s_gen.insert(gen, a);
            sinv_gen.insert(gen, ai);
        }
        GroupHopf {
            g,
            delta_gen,
            s_gen,
            sinv_gen,
            delta_cache: RwLock::new(HashMap::new()),
            s_cache: RwLock::new(HashMap::new()),
            sinv_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn delta_gen(&self, gen: Gen) -> &TensorElement {
        &self.delta_gen[&gen]
    }

    pub fn antipode_gen(&self, gen: Gen) -> &Element {
        &self.s_gen[&gen]
    }

    pub fn counit_gen(&self, gen: Gen) -> Scalar {
        match gen {
            Gen::Var(v) if v / 4 == v % 4 => Scalar::one(),
            Gen::Var(_) | Gen::Letter(_) => Scalar::zero(),
            Gen::Unit(_) => Scalar::one(),
        }
    }

    pub fn coproduct_key(&self, k: &Key) -> Result<TensorElement> {
        if let Some(t) = self.delta_cache.read().get(k) {
            return Ok(t.clone());
        }
        let t = match split_last(k) {
            None => TensorElement::one(2),
            Some((p, gen)) => self.coproduct_key(&p)?.mul(&self.delta_gen[&gen], &self.g.alg)?,
        };
        self.delta_cache.write().insert(k.clone(), t.clone());
        Ok(t)
    }

    /// Algebra-map extension of the generator table; both legs normal-formed.
    pub fn coproduct(&self, a: &Element) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (k, c) in a.terms() {
            out.add_assign(&self.coproduct_key(k)?.scale(c));
        }
        Ok(out)
    }

    /// Coproduct of a raw generator product, multiplied out in the tensor square.
    pub fn coproduct_gens(&self, terms: &[(Scalar, Vec<Gen>)]) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (c, w) in terms {
            let mut acc = TensorElement::one(2);
            for gen in w {
                acc = acc.mul(&self.delta_gen[gen], &self.g.alg)?;
            }
            out.add_assign(&acc.scale(c));
        }
        Ok(out)
    }

    pub fn counit_key(&self, k: &Key) -> Scalar {
        if !k.word.is_empty() || (0..NV).any(|v| k.mono[v] > 0 && v / 4 != v % 4) {
            Scalar::zero()
        } else {
            Scalar::one()
        }
    }

    pub fn counit(&self, a: &Element) -> Scalar {
        let mut r = Scalar::zero();
        for (k, c) in a.terms() {
            r += &(c * &self.counit_key(k));
        }
        r
    }

    pub fn antipode_key(&self, k: &Key) -> Result<Element> {
        if let Some(e) = self.s_cache.read().get(k) {
            return Ok(e.clone());
        }
        let e = match split_last(k) {
            None => Element::one(),
            Some((p, gen)) => self.g.mul(&self.s_gen[&gen], &self.antipode_key(&p)?)?,
        };
        self.s_cache.write().insert(k.clone(), e.clone());
        Ok(e)
    }

    /// Antihomomorphism extension of the generator table.
    pub fn antipode(&self, a: &Element) -> Result<Element> {
        let mut r = Element::zero();
        for (k, c) in a.terms() {
            r += &self.antipode_key(k)?.scale(c);
        }
        Ok(r)
    }

    pub fn antipode_inv_key(&self, k: &Key) -> Result<Element> {
        if let Some(e) = self.sinv_cache.read().get(k) {
            return Ok(e.clone());
        }
        let e = match split_last(k) {
            None => Element::one(),
            Some((p, gen)) => self.g.mul(&self.sinv_gen[&gen], &self.antipode_inv_key(&p)?)?,
        };
        self.sinv_cache.write().insert(k.clone(), e.clone());
        Ok(e)
    }

    /// Inverse antipode, also an antihomomorphism.
    pub fn antipode_inv(&self, a: &Element) -> Result<Element> {
        let mut r = Element::zero();
        for (k, c) in a.terms() {
            r += &self.antipode_inv_key(k)?.scale(c);
        }
        Ok(r)
    }

    /// Antipode of a raw generator product (reversed product of generator images).
    pub fn antipode_gens(&self, terms: &[(Scalar, Vec<Gen>)]) -> Result<Element> {
        let mut r = Element::zero();
        for (c, w) in terms {
            let mut acc = Element::scalar(c.clone());
            for gen in w.iter().rev() {
                acc = self.g.mul(&acc, &self.s_gen[gen])?;
            }
            r += &acc;
        }
        Ok(r)
    }

    /// `(Δ ⊗ id) Δ`.
    pub fn coproduct2_left(&self, a: &Element) -> Result<TensorElement> {
        self.coproduct(a)?.split_leg(0, &mut |k| self.coproduct_key(k))
    }

    /// `(id ⊗ Δ) Δ`.
    pub fn coproduct2_right(&self, a: &Element) -> Result<TensorElement> {
        self.coproduct(a)?.split_leg(1, &mut |k| self.coproduct_key(k))
    }

    /// `ad(a) = Σ b_k ⊗ S(a_k) c_k` from the double coproduct.
    pub fn adjoint(&self, a: &Element) -> Result<TensorElement> {
        let d2 = self.coproduct2_left(a)?;
        let mut out = TensorElement::zero();
        let mut right: HashMap<(Key, Key), Element> = HashMap::new();
        for (l, c) in d2.terms() {
            let r = match right.get(&(l[0].clone(), l[2].clone())) {
                Some(r) => r.clone(),
                None => {
                    let r = self.g.mul(&self.antipode_key(&l[0])?, &key_elem(&l[2]))?;
                    right.insert((l[0].clone(), l[2].clone()), r.clone());
                    r
                }
            };
            for (k, x) in r.terms() {
                let legs: Legs = [l[1].clone(), k.clone()].into_iter().collect();
                out.add_term(legs, c * x);
            }
        }
        Ok(out)
    }

    /// `m (S ⊗ id) Δ (a)`.
    pub fn antipode_left(&self, a: &Element) -> Result<Element> {
        self.coproduct(a)?
            .contract(&self.g.alg, &mut |k| self.antipode_key(k), &mut |k| Ok(key_elem(k)))
    }

    /// `m (id ⊗ S) Δ (a)`.
    pub fn antipode_right(&self, a: &Element) -> Result<Element> {
        self.coproduct(a)?
            .contract(&self.g.alg, &mut |k| Ok(key_elem(k)), &mut |k| self.antipode_key(k))
    }

    /// `(ε ⊗ id) Δ (a)` and `(id ⊗ ε) Δ (a)`.
    pub fn counit_legs(&self, a: &Element) -> Result<(Element, Element)> {
        let d = self.coproduct(a)?;
        let mut l = Element::zero();
        let mut r = Element::zero();
        for (legs, c) in d.terms() {
            l.add_term(legs[1].clone(), c * &self.counit_key(&legs[0]));
            r.add_term(legs[0].clone(), c * &self.counit_key(&legs[1]));
        }
        Ok((l, r))
    }
}
