//! The calculus tables as stated in closed form: form definitions, commutation rules,
//! exterior relations, the exterior basis and the Cartan-Maurer equations. The suite
//! compares each of them with the calculus computed from the ideal.

use super::forms::*;
use super::structure::Calculus;
use crate::error::Result;
use crate::ncalg::algebra::Element;
use crate::ncalg::membership::PAIRS;
use crate::ncalg::relations::{delta, sq, Group, Variant};
use crate::ring::{Metric, Scalar};

/// Index bookkeeping for constant forms over one basis layout.
pub struct Ix<'m> {
    pub m: &'m Metric,
    pub variant: Variant,
    /// Sets `Ω`, `Ω_μ`, `𝒳_μ` and `𝒴` to zero.
    pub reduced: bool,
}

fn unit(k: usize) -> ConstForm {
    ConstForm::from([(k, Scalar::one())])
}

impl<'m> Ix<'m> {
    pub fn new(m: &'m Metric, variant: Variant) -> Self {
        Ix { m, variant, reduced: false }
    }

    /// The general layout with `Ω = Ω_μ = 𝒳_μ = 𝒴 = 0`.
    pub fn reduced(m: &'m Metric) -> Self {
        Ix { m, variant: Variant::PoincareGeneral, reduced: true }
    }

    fn has_om(&self) -> bool {
        self.variant == Variant::PoincareGeneral && !self.reduced
    }

    pub fn lo(&self, a: usize, b: usize) -> Scalar {
        sq(self.m.lo(a, b))
    }

    pub fn up(&self, a: usize, b: usize) -> Scalar {
        sq(self.m.up(a, b))
    }

    pub fn eps(&self, up: [bool; 4], ix: [usize; 4]) -> Scalar {
        sq(self.m.eps(up, ix))
    }

    pub fn g00(&self) -> Scalar {
        self.lo(0, 0)
    }

    /// `ω^a`.
    pub fn w(&self, a: usize) -> ConstForm {
        unit(W + a)
    }

    /// `ω_a = g_{ab} ω^b`.
    pub fn w_lo(&self, a: usize) -> ConstForm {
        let mut out = ConstForm::new();
        for b in 0..4 {
            caxpy(&mut out, &self.lo(a, b), &self.w(b));
        }
        out
    }

    /// `ω^{ab}`, antisymmetric.
    pub fn ww_up(&self, a: usize, b: usize) -> ConstForm {
        if let Some(p) = pair_index(a, b) {
            unit(WW + p)
        } else if let Some(p) = pair_index(b, a) {
            ConstForm::from([(WW + p, -Scalar::one())])
        } else {
            ConstForm::new()
        }
    }

    /// `ω` with each index raised (`true`) or lowered; `[true, false]` is `ω^a_b`.
    pub fn ww(&self, up: [bool; 2], a: usize, b: usize) -> ConstForm {
        let mut out = ConstForm::new();
        for al in 0..4 {
            let c0 = if up[0] { delta(a, al) } else { self.lo(a, al) };
            if c0.is_zero() {
                continue;
            }
            for be in 0..4 {
                let c1 = if up[1] { delta(be, b) } else { self.lo(be, b) };
                if !c1.is_zero() {
                    caxpy(&mut out, &(&c0 * &c1), &self.ww_up(al, be));
                }
            }
        }
        out
    }

    /// `Ω` (empty outside the general variant).
    pub fn om(&self) -> ConstForm {
        if self.has_om() {
            unit(OM)
        } else {
            ConstForm::new()
        }
    }

    /// `Ω_a`.
    pub fn om_lo(&self, a: usize) -> ConstForm {
        if self.has_om() {
            unit(OML + a)
        } else {
            ConstForm::new()
        }
    }

    /// `Ω^a = g^{ab} Ω_b`.
    pub fn om_up(&self, a: usize) -> ConstForm {
        let mut out = ConstForm::new();
        for b in 0..4 {
            caxpy(&mut out, &self.up(a, b), &self.om_lo(b));
        }
        out
    }

    /// `ω^b` (empty outside the Weyl variant).
    pub fn wb(&self) -> ConstForm {
        if self.variant == Variant::Weyl {
            unit(WB)
        } else {
            ConstForm::new()
        }
    }

    /// `𝒳_σ = ε_{σαμν}(ω^α∧ω^{μν} + ω^{μν}∧ω^α + (2i/κ)(δ^μ_0 ω^{τν}∧ω_τ^α + ω_0^ν∧ω^{αμ}))`.
    pub fn x_lo(&self, si: usize) -> ConstRaw {
        if !self.has_om() {
            return ConstRaw::new();
        }
        let ik2 = Scalar::i_over_k().scale_q(&crate::ring::scalar::q(2));
        let mut out = ConstRaw::new();
        for al in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let e = self.eps([false; 4], [si, al, mu, nu]);
                    if e.is_zero() {
                        continue;
                    }
                    let mut t = cwedge(&self.w(al), &self.ww_up(mu, nu));
                    caxpy(&mut t, &Scalar::one(), &cwedge(&self.ww_up(mu, nu), &self.w(al)));
                    let mut u = ConstRaw::new();
                    if mu == 0 {
                        for ta in 0..4 {
                            caxpy(&mut u, &Scalar::one(), &cwedge(&self.ww_up(ta, nu), &self.ww([false, true], ta, al)));
                        }
                    }
                    caxpy(&mut u, &Scalar::one(), &cwedge(&self.ww([false, true], 0, nu), &self.ww_up(al, mu)));
                    caxpy(&mut t, &ik2, &u);
                    caxpy(&mut out, &e, &t);
                }
            }
        }
        out
    }

    /// `𝒳^μ = g^{μσ} 𝒳_σ`.
    pub fn x_up(&self, mu: usize) -> ConstRaw {
        let mut out = ConstRaw::new();
        for si in 0..4 {
            caxpy(&mut out, &self.up(mu, si), &self.x_lo(si));
        }
        out
    }

    /// `𝒴 = ω_α∧Ω^α + Ω^α∧ω_α + (i/κ) Ω_τ∧ω^τ_0`.
    pub fn y(&self) -> ConstRaw {
        if !self.has_om() {
            return ConstRaw::new();
        }
        let mut out = ConstRaw::new();
        for al in 0..4 {
            caxpy(&mut out, &Scalar::one(), &cwedge(&self.w_lo(al), &self.om_up(al)));
            caxpy(&mut out, &Scalar::one(), &cwedge(&self.om_up(al), &self.w_lo(al)));
            caxpy(&mut out, &Scalar::i_over_k(), &cwedge(&self.om_lo(al), &self.ww([true, false], al, 0)));
        }
        out
    }
}

fn sum(parts: &[(Scalar, ConstRaw)]) -> ConstRaw {
    let mut out = ConstRaw::new();
    for (c, r) in parts {
        caxpy(&mut out, c, r);
    }
    out
}

fn sym(a: &ConstForm, b: &ConstForm) -> ConstRaw {
    let mut t = cwedge(a, b);
    caxpy(&mut t, &Scalar::one(), &cwedge(b, a));
    t
}

/// The stated spanning basis of `Γ^∧2`.
pub fn exterior_symbols(ix: &Ix) -> Vec<(String, ConstRaw)> {
    let mut out = Vec::new();
    let pname = |p: usize| format!("w^{}{}", PAIRS[p].0, PAIRS[p].1);
    for p in 0..6 {
        for q in p + 1..6 {
            out.push((format!("{}/\\{}", pname(p), pname(q)), cwedge(&unit(WW + p), &unit(WW + q))));
        }
    }
    let wwp = |p: usize| unit(WW + p);
    match ix.variant {
        Variant::PoincareGeneral => {
            for (a, b) in PAIRS {
                out.push((format!("Om^{a}/\\Om^{b}"), cwedge(&ix.om_up(a), &ix.om_up(b))));
            }
            for a in 0..4 {
                for b in 0..4 {
                    out.push((format!("w^{a}/\\Om^{b}"), cwedge(&ix.w(a), &ix.om_up(b))));
                }
            }
            for p in 0..6 {
                for a in 0..4 {
                    out.push((format!("{}/\\Om^{a}", pname(p)), cwedge(&wwp(p), &ix.om_up(a))));
                }
            }
            for p in 0..6 {
                out.push((format!("{}/\\Om", pname(p)), cwedge(&wwp(p), &ix.om())));
            }
        }
        Variant::Weyl => {
            for p in 0..6 {
                out.push((format!("{}/\\w^b", pname(p)), cwedge(&wwp(p), &ix.wb())));
            }
        }
        _ => {}
    }
    for (a, b) in PAIRS {
        out.push((format!("w^{a}/\\w^{b}"), cwedge(&ix.w(a), &ix.w(b))));
    }
    for p in 0..6 {
        for a in 0..4 {
            out.push((format!("{}/\\w^{a}", pname(p)), cwedge(&wwp(p), &ix.w(a))));
        }
    }
    match ix.variant {
        Variant::PoincareGeneral => {
            for a in 0..4 {
                out.push((format!("w^{a}/\\Om"), cwedge(&ix.w(a), &ix.om())));
            }
            for a in 0..4 {
                out.push((format!("Om^{a}/\\Om"), cwedge(&ix.om_up(a), &ix.om())));
            }
            out.push(("Y".into(), ix.y()));
            for a in 0..4 {
                out.push((format!("X^{a}"), ix.x_up(a)));
            }
        }
        Variant::Weyl => {
            for a in 0..4 {
                out.push((format!("w^{a}/\\w^b"), cwedge(&ix.w(a), &ix.wb())));
            }
        }
        _ => {}
    }
    out
}

/// A stated exterior relation `Σ = 0`, identified by family and indices.
#[derive(Clone, Debug)]
pub struct StatedRelation {
    pub family: &'static str,
    pub idx: Vec<usize>,
    pub raw: ConstRaw,
}

impl StatedRelation {
    pub fn label(&self) -> String {
        format!("{}{:?}", self.family, self.idx)
    }
}

/// Which closing position the unbalanced bracket of the `ω^μ∧Ω^α` relation takes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bracket {
    /// `(i/κ)(δ^α_0 Ω_τ∧ω^{τμ} + Ω_0∧ω^{μα})`, the only weight-homogeneous reading.
    AfterSecond,
    /// The bracket also covers the `ε Ω∧Ω` term.
    AfterEpsilon,
    /// The bracket runs to the end of the relation.
    AtEnd,
}

pub fn exterior_relations(ix: &Ix, bracket: Bracket) -> Vec<StatedRelation> {
    let one = Scalar::one();
    let ik = Scalar::i_over_k();
    let g00k2 = |c: i64, d: i64| ix.g00().scale_q(&crate::ring::scalar::qf(c, d)).shift(2);
    let mut out = Vec::new();
    let mut push = |family: &'static str, idx: Vec<usize>, raw: ConstRaw| out.push(StatedRelation { family, idx, raw });
    let general = ix.variant == Variant::PoincareGeneral;
    let weyl = ix.variant == Variant::Weyl;
    if general {
        push("Om.Om", vec![], cwedge(&ix.om(), &ix.om()));
    }
    if weyl {
        push("wb.wb", vec![], cwedge(&ix.wb(), &ix.wb()));
    }
    for m in 0..4 {
        for n in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    push("ww.ww", vec![m, n, a, b], sym(&ix.ww([true, false], m, n), &ix.ww([true, false], a, b)));
                }
            }
        }
    }
    if general {
        for a in 0..4 {
            for b in 0..4 {
                push("Om_.Om_", vec![a, b], sym(&ix.om_lo(a), &ix.om_lo(b)));
            }
        }
        for a in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    push("Om_.ww", vec![a, m, n], sym(&ix.om_lo(a), &ix.ww([true, false], m, n)));
                }
            }
        }
        for m in 0..4 {
            for n in 0..4 {
                let mut t = ConstRaw::new();
                for b in 0..4 {
                    caxpy(&mut t, &one, &cwedge(&ix.ww([false, false], b, n), &ix.ww_up(b, m)));
                }
                push("Om.ww", vec![m, n], sum(&[(one.clone(), sym(&ix.om(), &ix.ww([true, false], m, n))), (-g00k2(4, 1), t)]));
            }
        }
        for m in 0..4 {
            let mut t = ConstRaw::new();
            for ta in 0..4 {
                caxpy(&mut t, &one, &cwedge(&ix.om_lo(ta), &ix.ww([true, false], ta, m)));
            }
            push(
                "Om_.Om",
                vec![m],
                sum(&[(one.clone(), sym(&ix.om_lo(m), &ix.om())), (-g00k2(4, 1), t), (-g00k2(4, 1), ix.x_lo(m))]),
            );
        }
        for m in 0..4 {
            let mut t = ConstRaw::new();
            for b in 0..4 {
                caxpy(&mut t, &one, &cwedge(&ix.ww([true, false], m, b), &ix.w(b)));
            }
            push("w.Om", vec![m], sum(&[(one.clone(), sym(&ix.w(m), &ix.om())), (-g00k2(4, 1), t)]));
        }
    }
    if weyl {
        for m in 0..4 {
            for n in 0..4 {
                push("wb.ww", vec![m, n], sym(&ix.wb(), &ix.ww([true, false], m, n)));
            }
        }
        for m in 0..4 {
            push("wb.w", vec![m], sym(&ix.wb(), &ix.w(m)));
        }
    }
    for a in 0..4 {
        for m in 0..4 {
            let mut u = ConstRaw::new();
            for b in 0..4 {
                caxpy(&mut u, &delta(a, 0), &cwedge(&ix.ww([true, false], m, b), &ix.w(b)));
                caxpy(&mut u, &delta(m, 0), &cwedge(&ix.ww([true, false], a, b), &ix.w(b)));
            }
            if weyl {
                caxpy(&mut u, &delta(m, 0), &cwedge(&ix.wb(), &ix.w(a)));
                caxpy(&mut u, &delta(a, 0), &cwedge(&ix.wb(), &ix.w(m)));
            }
            let mut t = sum(&[(one.clone(), sym(&ix.w(a), &ix.w(m))), (ik.clone(), u)]);
            if weyl {
                let c = &ik.scale_q(&crate::ring::scalar::q(2)) * &ix.up(m, a);
                caxpy(&mut t, &c, &cwedge(&ix.w_lo(0), &ix.wb()));
            }
            push("w.w", vec![a, m], t);
        }
    }
    for a in 0..4 {
        for m in 0..4 {
            for n in 0..4 {
                let mut u = ConstRaw::new();
                for ta in 0..4 {
                    caxpy(&mut u, &delta(m, 0), &cwedge(&ix.ww_up(ta, n), &ix.ww([false, true], ta, a)));
                    caxpy(&mut u, &delta(n, 0), &cwedge(&ix.ww([true, false], m, ta), &ix.ww_up(ta, a)));
                }
                caxpy(&mut u, &one, &cwedge(&ix.ww([false, true], 0, n), &ix.ww_up(a, m)));
                caxpy(&mut u, &one, &cwedge(&ix.ww([true, false], m, 0), &ix.ww_up(a, n)));
                let mut t = sum(&[(one.clone(), sym(&ix.w(a), &ix.ww_up(m, n))), (ik.clone(), u)]);
                if general {
                    for si in 0..4 {
                        let e = ix.eps([true; 4], [a, m, n, si]);
                        caxpy(&mut t, &e.scale_q(&crate::ring::scalar::qf(-1, 6)), &ix.x_lo(si));
                    }
                }
                if weyl {
                    let mut v = ConstRaw::new();
                    caxpy(&mut v, &delta(m, 0), &cwedge(&ix.wb(), &ix.ww_up(a, n)));
                    caxpy(&mut v, &delta(n, 0), &cwedge(&ix.wb(), &ix.ww_up(m, a)));
                    caxpy(&mut v, &ix.up(a, m), &cwedge(&ix.ww([false, true], 0, n), &ix.wb()));
                    caxpy(&mut v, &ix.up(a, n), &cwedge(&ix.ww([true, false], m, 0), &ix.wb()));
                    caxpy(&mut t, &ik, &v);
                }
                push("w.ww", vec![a, m, n], t);
            }
        }
    }
    if general {
        for m in 0..4 {
            for a in 0..4 {
                out.push(StatedRelation {
                    family: "w.Om^",
                    idx: vec![m, a],
                    raw: w_om_relation(ix, m, a, bracket),
                });
            }
        }
    }
    out
}

/// `ω^μ∧Ω^α + Ω^α∧ω^μ + (i/κ)(δ^α_0 Ω_τ∧ω^{τμ} + Ω_0∧ω^{μα}) + (1/12) ε^{αμτσ} Ω_τ∧Ω_σ
/// − (3/2κ²) g_00 ε^{αστβ} ω^μ_σ∧ω_{τβ} − (1/4) g^{αμ} 𝒴`, bracket placement per `bracket`.
pub fn w_om_relation(ix: &Ix, m: usize, a: usize, bracket: Bracket) -> ConstRaw {
    let one = Scalar::one();
    let mut inner = ConstRaw::new();
    for ta in 0..4 {
        caxpy(&mut inner, &delta(a, 0), &cwedge(&ix.om_lo(ta), &ix.ww_up(ta, m)));
    }
    caxpy(&mut inner, &one, &cwedge(&ix.om_lo(0), &ix.ww_up(m, a)));
    let mut e1 = ConstRaw::new();
    for ta in 0..4 {
        for si in 0..4 {
            let e = ix.eps([true; 4], [a, m, ta, si]).scale_q(&crate::ring::scalar::qf(1, 12));
            caxpy(&mut e1, &e, &cwedge(&ix.om_lo(ta), &ix.om_lo(si)));
        }
    }
    let mut e2 = ConstRaw::new();
    for si in 0..4 {
        for ta in 0..4 {
            for be in 0..4 {
                let e = ix.eps([true; 4], [a, si, ta, be]);
                if !e.is_zero() {
                    caxpy(&mut e2, &e, &cwedge(&ix.ww([true, false], m, si), &ix.ww([false, false], ta, be)));
                }
            }
        }
    }
    let e2c = ix.g00().scale_q(&crate::ring::scalar::qf(-3, 2)).shift(2);
    let y = cscale(&ix.y(), &ix.up(a, m).scale_q(&crate::ring::scalar::qf(-1, 4)));
    let mut tail = ConstRaw::new();
    match bracket {
        Bracket::AfterSecond => {}
        Bracket::AfterEpsilon => {
            caxpy(&mut inner, &one, &e1);
            e1.clear();
        }
        Bracket::AtEnd => {
            caxpy(&mut inner, &one, &e1);
            caxpy(&mut inner, &e2c, &e2);
            caxpy(&mut inner, &one, &y);
            e1.clear();
            e2.clear();
        }
    }
    if bracket != Bracket::AtEnd {
        caxpy(&mut tail, &one, &e1);
        caxpy(&mut tail, &e2c, &e2);
        caxpy(&mut tail, &one, &y);
    }
    sum(&[(one.clone(), sym(&ix.w(m), &ix.om_up(a))), (Scalar::i_over_k(), inner), (one, tail)])
}

/// Stated `dω` for every basis form, unreduced.
pub fn cartan_maurer(ix: &Ix) -> Vec<ConstRaw> {
    let one = Scalar::one();
    let n = FormBasis::new(ix.variant).len();
    let mut out = vec![ConstRaw::new(); n];
    // dω^μ_ν = ω_τ^μ ∧ ω^τ_ν, so dω^{μν} = g^{νβ} dω^μ_β.
    let dmixed = |m: usize, nn: usize| {
        let mut t = ConstRaw::new();
        for ta in 0..4 {
            caxpy(&mut t, &one, &cwedge(&ix.ww([false, true], ta, m), &ix.ww([true, false], ta, nn)));
        }
        t
    };
    for (p, &(m, nn)) in PAIRS.iter().enumerate() {
        let mut t = ConstRaw::new();
        for be in 0..4 {
            caxpy(&mut t, &ix.up(nn, be), &dmixed(m, be));
        }
        out[WW + p] = t;
    }
    for m in 0..4 {
        let mut t = ConstRaw::new();
        for ta in 0..4 {
            caxpy(&mut t, &one, &cwedge(&ix.ww([false, true], ta, m), &ix.w(ta)));
        }
        if ix.variant == Variant::Weyl {
            caxpy(&mut t, &one, &cwedge(&ix.w(m), &ix.wb()));
        }
        out[W + m] = t;
    }
    if ix.variant == Variant::PoincareGeneral {
        for m in 0..4 {
            let mut t = ConstRaw::new();
            for al in 0..4 {
                caxpy(&mut t, &-one.clone(), &cwedge(&ix.ww([false, true], m, al), &ix.om_lo(al)));
            }
            caxpy(&mut t, &-one.clone(), &ix.x_lo(m));
            out[OML + m] = t;
        }
    }
    out
}

/// A stated commutation rule `[a, ω] = rhs`.
#[derive(Clone, Debug)]
pub struct StatedRule {
    pub family: &'static str,
    pub idx: Vec<usize>,
    pub a: Element,
    pub form: ConstForm,
    pub rhs: Form,
}

impl StatedRule {
    pub fn label(&self) -> String {
        format!("{}{:?}", self.family, self.idx)
    }
}

fn ef(e: &Element, f: &ConstForm) -> Form {
    let mut out = Form::zero();
    for (k, c) in f {
        out.add(*k, &e.scale(c));
    }
    out
}

/// The stated commutation rules of the variant's calculus.
pub fn commutation_rules(g: &Group, ix: &Ix) -> Result<Vec<StatedRule>> {
    let ik = Scalar::i_over_k();
    let general = ix.variant == Variant::PoincareGeneral;
    let weyl = ix.variant == Variant::Weyl;
    let sixth = crate::ring::scalar::qf(-1, 6);
    let lam = |u0: bool, u1: bool, a: usize, b: usize| g.lam_pos(u0, u1, a, b);
    let mut out = Vec::new();
    let mut push = |family: &'static str, idx: Vec<usize>, a: Element, form: ConstForm, rhs: Form| {
        out.push(StatedRule { family, idx, a, form, rhs })
    };
    for mu in 0..4 {
        for nu in 0..4 {
            for al in 0..4 {
                // [Λ^μ_ν, ω^α]
                let mut inner = Form::zero();
                for ta in 0..4 {
                    inner.add_assign(&ef(&lam(true, false, mu, ta).scale(&ix.lo(nu, 0)), &ix.ww_up(ta, al)));
                }
                inner.add_assign(&ef(&lam(true, false, mu, 0), &ix.ww([true, false], al, nu)));
                let mut rhs = inner.scale(&-ik.clone());
                if general {
                    for ta in 0..4 {
                        for ga in 0..4 {
                            let e = ix.eps([true, false, true, true], [ta, nu, al, ga]).scale_q(&sixth);
                            if !e.is_zero() {
                                rhs.add_assign(&ef(&lam(true, false, mu, ta).scale(&e), &ix.om_lo(ga)));
                            }
                        }
                    }
                }
                if weyl {
                    let mut t = lam(true, true, mu, al).scale(&ix.lo(nu, 0));
                    t -= &lam(true, false, mu, 0).scale(&delta(al, nu));
                    rhs.add_assign(&ef(&t.scale(&ik), &ix.wb()));
                }
                push("[L,w]", vec![mu, nu, al], g.lam(mu, nu), ix.w(al), rhs);
            }
        }
    }
    for mu in 0..4 {
        for al in 0..4 {
            // [x^μ, ω^α]
            let mut inner = ef(&lam(true, true, mu, al), &ix.w_lo(0));
            for nu in 0..4 {
                inner.add_assign(&ef(&lam(true, false, mu, nu).scale(&-delta(al, 0)), &ix.w(nu)));
            }
            let mut rhs = if weyl { inner.lmul(&g.alg, &g.eb(1))?.scale(&ik) } else { inner.scale(&ik) };
            if general {
                rhs.add_assign(&ef(&lam(true, true, mu, al).scale(&Scalar::frac(-1, 4)), &ix.om()));
            }
            push("[x,w]", vec![mu, al], g.x(mu), ix.w(al), rhs);
        }
    }
    for al in 0..4 {
        for be in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    push("[L,ww]", vec![al, be, mu, nu], g.lam(al, be), ix.ww([true, false], mu, nu), Form::zero());
                }
            }
        }
    }
    for al in 0..4 {
        for mu in 0..4 {
            for nu in 0..4 {
                // [x^α, ω^μ_ν]
                let mut inner = Form::zero();
                for be in 0..4 {
                    inner.add_assign(&ef(&lam(true, false, al, be).scale(&delta(mu, 0)), &ix.ww([true, false], be, nu)));
                    inner.add_assign(&ef(&lam(true, false, al, be).scale(&ix.lo(nu, 0)), &ix.ww_up(mu, be)));
                }
                inner.add_assign(&ef(&lam(true, false, al, nu).scale(&-Scalar::one()), &ix.ww([true, false], mu, 0)));
                inner.add_assign(&ef(&lam(true, true, al, mu).scale(&-Scalar::one()), &ix.ww([false, false], 0, nu)));
                let mut rhs = if weyl {
                    inner.lmul(&g.alg, &g.eb(1))?.scale(&-ik.clone())
                } else {
                    inner.scale(&-ik.clone())
                };
                if general {
                    for be in 0..4 {
                        for ga in 0..4 {
                            let e = ix.eps([true, false, true, true], [mu, nu, be, ga]).scale_q(&sixth);
                            if !e.is_zero() {
                                rhs.add_assign(&ef(&lam(true, false, al, be).scale(&e), &ix.om_lo(ga)));
                            }
                        }
                    }
                }
                push("[x,ww]", vec![al, mu, nu], g.x(al), ix.ww([true, false], mu, nu), rhs);
            }
        }
    }
    if general {
        let g4 = ix.g00().scale_q(&crate::ring::scalar::q(4)).shift(2);
        let g3 = ix.g00().scale_q(&crate::ring::scalar::q(3)).shift(2);
        for mu in 0..4 {
            for nu in 0..4 {
                let mut rhs = Form::zero();
                for ta in 0..4 {
                    rhs.add_assign(&ef(&lam(true, true, mu, ta).scale(&g4), &ix.ww([false, false], ta, nu)));
                }
                push("[L,Om]", vec![mu, nu], g.lam(mu, nu), ix.om(), rhs);
            }
        }
        for al in 0..4 {
            let mut rhs = Form::zero();
            for be in 0..4 {
                rhs.add_assign(&ef(&lam(true, false, al, be).scale(&g4), &ix.w(be)));
            }
            push("[x,Om]", vec![al], g.x(al), ix.om(), rhs);
        }
        for al in 0..4 {
            for be in 0..4 {
                for mu in 0..4 {
                    push("[L,Om_]", vec![al, be, mu], g.lam(al, be), ix.om_lo(mu), Form::zero());
                }
            }
        }
        for al in 0..4 {
            for mu in 0..4 {
                let mut rhs = Form::zero();
                for nu in 0..4 {
                    for ta in 0..4 {
                        for be in 0..4 {
                            let e = ix.eps([false; 4], [mu, nu, ta, be]);
                            if !e.is_zero() {
                                rhs.add_assign(&ef(&lam(true, true, al, nu).scale(&(&e * &g3)), &ix.ww_up(ta, be)));
                            }
                        }
                    }
                }
                let mut inner = ef(&lam(true, false, al, mu), &ix.om_lo(0));
                for be in 0..4 {
                    inner.add_assign(&ef(&lam(true, true, al, be).scale(&-ix.lo(0, mu)), &ix.om_lo(be)));
                }
                rhs.add_assign(&inner.scale(&ik));
                push("[x,Om_]", vec![al, mu], g.x(al), ix.om_lo(mu), rhs);
            }
        }
    }
    if weyl {
        let u = g.eb(1);
        for k in 0..FormBasis::new(ix.variant).len() {
            let f = ConstForm::from([(k, Scalar::one())]);
            push("[eb,.]", vec![k], u.clone(), f, Form::zero());
        }
        for mu in 0..4 {
            for nu in 0..4 {
                push("[L,wb]", vec![mu, nu], g.lam(mu, nu), ix.wb(), Form::zero());
            }
        }
        for al in 0..4 {
            push("[x,wb]", vec![al], g.x(al), ix.wb(), Form::zero());
        }
    }
    Ok(out)
}

/// A stated expression of a basis form through differentials: `form = Σ l · d(a) · r`.
pub struct StatedDefinition {
    pub name: String,
    pub form: ConstForm,
    /// `(left factor, differentiated element, right factor)`.
    pub parts: Vec<(Element, Element, Element)>,
}

/// The stated definitions of the left-invariant basis.
pub fn definitions(g: &Group, variant: Variant) -> Result<Vec<StatedDefinition>> {
    let ix = Ix::new(&g.metric, variant);
    let weyl = variant == Variant::Weyl;
    let mut out = Vec::new();
    for mu in 0..4 {
        // ω^μ = (e^{−b}) Λ_ν^μ dx^ν
        let mut parts = Vec::new();
        for nu in 0..4 {
            let mut l = g.lam_pos(false, true, nu, mu);
            if weyl {
                l = g.mul(&g.eb(-1), &l)?;
            }
            parts.push((l, g.x(nu), Element::one()));
        }
        out.push(StatedDefinition { name: format!("w^{mu}"), form: ix.w(mu), parts });
    }
    for mu in 0..4 {
        for nu in 0..4 {
            // ω^μ_ν = Λ_α^μ dΛ^α_ν
            let parts = (0..4).map(|al| (g.lam_pos(false, true, al, mu), g.lam(al, nu), Element::one())).collect();
            out.push(StatedDefinition { name: format!("w^{mu}_{nu}"), form: ix.ww([true, false], mu, nu), parts });
        }
    }
    if weyl {
        out.push(StatedDefinition { name: "w^b".into(), form: ix.wb(), parts: vec![(g.eb(-1), g.eb(1), Element::one())] });
    }
    if variant == Variant::PoincareGeneral {
        // Ω = dφ − 2 x_α dx^α
        let phi = crate::hopf::IdealElements::new(g).phi();
        let mut parts = vec![(Element::one(), phi, Element::one())];
        for al in 0..4 {
            parts.push((g.x_lo(al).scale(&Scalar::int(-2)), g.x(al), Element::one()));
        }
        out.push(StatedDefinition { name: "Om".into(), form: ix.om(), parts });
    }
    Ok(out)
}

/// `Ω_μ = ε_{μναβ} Λ_δ^ν ω^β Λ^{δα} − (2i/κ) ε_{0μνβ} ω^{νβ}` as a left-coefficient form.
pub fn omega_lo_definition(c: &Calculus, mu: usize) -> Result<Form> {
    let g = c.g;
    let ix = Ix::new(&g.metric, c.variant);
    let mut out = Form::zero();
    for nu in 0..4 {
        for al in 0..4 {
            for be in 0..4 {
                let e = ix.eps([false; 4], [mu, nu, al, be]);
                if e.is_zero() {
                    continue;
                }
                for de in 0..4 {
                    let right = g.lam_pos(true, true, de, al);
                    let moved = c.commute_form_past_element(&right, &const_to_form(&ix.w(be)))?;
                    out.add_assign(&moved.lmul(&g.alg, &g.lam_pos(false, true, de, nu).scale(&e))?);
                }
            }
        }
    }
    let k = Scalar::i_over_k().scale_q(&crate::ring::scalar::q(-2));
    for nu in 0..4 {
        for be in 0..4 {
            let e = ix.eps([false; 4], [0, mu, nu, be]);
            if !e.is_zero() {
                out.add_assign(&const_to_form(&cscale(&ix.ww_up(nu, be), &(&e * &k))));
            }
        }
    }
    Ok(out)
}

/// Stated right-invariant forms `η^μ, η^{μν} (μ<ν), θ, θ_μ` with right coefficients.
/// With `pseudo`, `θ_μ` carries the extra right factor `det Λ`.
pub fn right_invariant_forms(g: &Group, variant: Variant, pseudo: bool) -> Result<Vec<(String, Form)>> {
    let ix = Ix::new(&g.metric, variant);
    let mut out = Vec::new();
    // η^μ_ν = ω^α_β Λ^μ_α Λ_ν^β
    let eta_mixed = |mu: usize, nu: usize| -> Result<Form> {
        let mut f = Form::zero();
        for al in 0..4 {
            for be in 0..4 {
                let r = g.mul(&g.lam(mu, al), &g.lam_pos(false, true, nu, be))?;
                for (k, s) in ix.ww([true, false], al, be) {
                    f.add(k, &r.scale(&s));
                }
            }
        }
        Ok(f)
    };
    for mu in 0..4 {
        // η^μ = −ω^α_β Λ_ν^β x^ν Λ^μ_α + ω^α Λ^μ_α
        let mut f = Form::zero();
        for al in 0..4 {
            f.add_assign(&ef(&g.lam(mu, al), &ix.w(al)));
            for be in 0..4 {
                let mut r = Element::zero();
                for nu in 0..4 {
                    r += &g.mul(&g.mul(&g.lam_pos(false, true, nu, be), &g.x(nu))?, &g.lam(mu, al))?;
                }
                f.add_assign(&ef(&-&r, &ix.ww([true, false], al, be)));
            }
        }
        out.push((format!("eta^{mu}"), f));
    }
    for &(mu, nu) in &PAIRS {
        let mut f = Form::zero();
        for be in 0..4 {
            f.add_assign(&eta_mixed(mu, be)?.scale(&ix.up(be, nu)));
        }
        out.push((format!("eta^{mu}{nu}"), f));
    }
    if variant == Variant::PoincareGeneral {
        out.push(("theta".into(), const_to_form(&ix.om())));
        let det = det_lambda(g)?;
        for mu in 0..4 {
            let mut f = Form::zero();
            for nu in 0..4 {
                let mut r = g.lam_pos(false, true, mu, nu);
                if pseudo {
                    r = g.mul(&r, &det)?;
                }
                f.add_assign(&ef(&r, &ix.om_lo(nu)));
            }
            out.push((format!("theta_{mu}"), f));
        }
    }
    Ok(out)
}

/// `det Λ`, group-like with square one; not fixed to one by orthogonality alone.
pub fn det_lambda(g: &Group) -> Result<Element> {
    let mut out = Element::zero();
    let mut perm = [0usize, 1, 2, 3];
    permute(&mut perm, 0, &mut |p, sign| {
        let mut t = Element::scalar(Scalar::int(sign));
        for (row, &col) in p.iter().enumerate() {
            t = g.mul(&t, &g.lam(row, col))?;
        }
        out += &t;
        Ok(())
    })?;
    Ok(out)
}

fn permute(p: &mut [usize; 4], k: usize, f: &mut impl FnMut(&[usize; 4], i64) -> Result<()>) -> Result<()> {
    if k == 4 {
        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        return f(p, if inversions % 2 == 0 { 1 } else { -1 });
    }
    for i in k..4 {
        p.swap(k, i);
        permute(p, k + 1, f)?;
        p.swap(k, i);
    }
    Ok(())
}
