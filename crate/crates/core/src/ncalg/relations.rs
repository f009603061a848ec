//! The five relation sets: three group-side algebras and two dual algebras.

use super::algebra::{Algebra, CommSector, Element, Gen, Key};
use super::gb::NV;
use super::lorentz::{lvar, LorentzSector};
use crate::error::{Error, Result};
use crate::ring::{Metric, Scalar, Q};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Variant {
    PoincareGeneral,
    PoincareG00Zero,
    Weyl,
    DualPoincare,
    DualWeyl,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::PoincareGeneral,
        Variant::PoincareG00Zero,
        Variant::Weyl,
        Variant::DualPoincare,
        Variant::DualWeyl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::PoincareGeneral => "poincare-general",
            Variant::PoincareG00Zero => "poincare-g00zero",
            Variant::Weyl => "weyl",
            Variant::DualPoincare => "dual-poincare",
            Variant::DualWeyl => "dual-weyl",
        }
    }

    pub fn parse(s: &str) -> Result<Variant> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownVariant(s.to_string()))
    }

    pub fn is_group(self) -> bool {
        matches!(
            self,
            Variant::PoincareGeneral | Variant::PoincareG00Zero | Variant::Weyl
        )
    }

    pub fn is_weyl(self) -> bool {
        matches!(self, Variant::Weyl | Variant::DualWeyl)
    }

    pub fn needs_g00_zero(self) -> bool {
        matches!(
            self,
            Variant::PoincareG00Zero | Variant::Weyl | Variant::DualWeyl
        )
    }

    /// Group-side partner of a dual variant and vice versa.
    pub fn dual(self) -> Variant {
        match self {
            Variant::PoincareGeneral | Variant::PoincareG00Zero => Variant::DualPoincare,
            Variant::Weyl => Variant::DualWeyl,
            Variant::DualPoincare => Variant::PoincareGeneral,
            Variant::DualWeyl => Variant::Weyl,
        }
    }

    pub fn check_metric(self, g: &Metric) -> Result<()> {
        if self.needs_g00_zero() && !g.g00_zero() {
            return Err(Error::MetricVariantMismatch {
                variant: self.name().to_string(),
                g00: g.lo(0, 0).to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn sq(r: &Q) -> Scalar {
    Scalar::from_q(r.clone())
}

pub fn delta(a: usize, b: usize) -> Scalar {
    if a == b {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// `i κ`.
pub fn i_k() -> Scalar {
    Scalar::i().shift(-1)
}

/// A relation `lhs = rhs` recorded for compatibility checks, as raw generator words.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    /// `Σ c · (product of generators)` whose value must vanish.
    pub terms: Vec<(Scalar, Vec<Gen>)>,
}

/// The κ-Poincaré group (optionally extended by the dilatation `e^b`).
pub struct Group {
    pub alg: Algebra,
    pub metric: Metric,
    pub weyl: bool,
    lam: Vec<Element>,
}

impl Group {
    pub fn new(g: &Metric, weyl: bool) -> Group {
        Self::build(g, weyl, false, super::algebra::DEFAULT_CAP)
    }

    pub fn for_variant(v: Variant, g: &Metric) -> Result<Group> {
        assert!(v.is_group());
        v.check_metric(g)?;
        Ok(Group::new(g, v == Variant::Weyl))
    }

    /// Copy whose `[x⁰, x¹]` coefficient has the wrong sign.
    pub fn corrupted(g: &Metric, weyl: bool) -> Group {
        Self::build(g, weyl, true, super::algebra::DEFAULT_CAP)
    }

    pub fn with_cap(g: &Metric, weyl: bool, cap: usize) -> Group {
        Self::build(g, weyl, false, cap)
    }

    fn build(g: &Metric, weyl: bool, corrupt: bool, cap: usize) -> Group {
        let sector = LorentzSector::for_metric(g);
        let var_names = (0..NV)
            .map(|v| {
                if sector.framed {
                    format!("L'[{},{}]", v / 4, v % 4)
                } else {
                    format!("L[{},{}]", v / 4, v % 4)
                }
            })
            .collect();
        let letters = (0..4).map(|m| format!("x[{m}]")).collect();
        let mut alg = Algebra::new(
            CommSector::Orthogonal(sector.clone()),
            weyl,
            var_names,
            "eb".to_string(),
            letters,
        );
        alg.cap = cap;
        let lam: Vec<Element> = (0..16)
            .map(|k| {
                let mut e = Element::zero();
                for (v, c) in sector.external_entry(k / 4, k % 4) {
                    e += &alg.var_elem(v).scale(&sq(&c));
                }
                e
            })
            .collect();
        let eb = if weyl {
            alg.unit_elem(1)
        } else {
            Element::one()
        };
        let ik = Scalar::i_over_k();
        // [x^ρ, Λ^α_β] in external entries.
        let cross = |rho: usize, a: usize, b: usize| -> Element {
            let mut r = Element::zero();
            let l_a0 = &lam[4 * a];
            let l_rb = &lam[4 * rho + b];
            r += &alg.mul(&alg.mul(&eb, l_a0).unwrap(), l_rb).unwrap();
            r -= &l_rb.scale(&delta(a, 0));
            let gar = sq(g.up(a, rho));
            if !gar.is_zero() {
                for c in 0..4 {
                    r += &lam[4 * c + b].scale(&(&sq(g.lo(0, c)) * &gar));
                }
                r -= &eb.scale(&(&sq(g.lo(0, b)) * &gar));
            }
            r.scale(&ik)
        };
        let mut ad = vec![vec![Element::zero(); NV]; 4];
        for (rho, row) in ad.iter_mut().enumerate() {
            let table: Vec<Element> = (0..16).map(|k| cross(rho, k / 4, k % 4)).collect();
            for a in 0..4 {
                for b in 0..4 {
                    let mut e = Element::zero();
                    for (v, c) in sector.internal_entry(a, b) {
                        e += &table[v].scale(&sq(&c));
                    }
                    row[lvar(a, b)] = e;
                }
            }
        }
        alg.ad_var = ad;
        for rho in 1..4u8 {
            // x^ρ x^0 = x^0 x^ρ − (i/κ) x^ρ
            let mut c = -ik.clone();
            if corrupt && rho == 1 {
                c = -c;
            }
            alg.bracket[rho as usize][0] = alg.letter_elem(rho).scale(&c);
        }
        Group {
            alg,
            metric: g.clone(),
            weyl,
            lam,
        }
    }

    pub fn sector(&self) -> &Arc<LorentzSector> {
        self.alg.sector().expect("group algebra has a Lorentz sector")
    }

    /// `Λ^μ_ν`.
    pub fn lam(&self, mu: usize, nu: usize) -> Element {
        self.lam[4 * mu + nu].clone()
    }

    /// Λ with each index raised (`true`) or lowered: `(true,false)` is `Λ^μ_ν`.
    pub fn lam_pos(&self, up0: bool, up1: bool, a: usize, b: usize) -> Element {
        let g = &self.metric;
        let mut r = Element::zero();
        for al in 0..4 {
            let c0 = if up0 { delta(a, al) } else { sq(g.lo(a, al)) };
            if c0.is_zero() {
                continue;
            }
            for be in 0..4 {
                let c1 = if up1 { sq(g.up(be, b)) } else { delta(be, b) };
                if c1.is_zero() {
                    continue;
                }
                r += &self.lam[4 * al + be].scale(&(&c0 * &c1));
            }
        }
        r
    }

    pub fn x(&self, mu: usize) -> Element {
        self.alg.letter_elem(mu as u8)
    }

    /// `x_μ = g_{μν} x^ν`.
    pub fn x_lo(&self, mu: usize) -> Element {
        let mut r = Element::zero();
        for n in 0..4 {
            r += &self.x(n).scale(&sq(self.metric.lo(mu, n)));
        }
        r
    }

    /// `e^{nb}` (the unit for the Poincaré group).
    pub fn eb(&self, n: i32) -> Element {
        if self.weyl {
            self.alg.unit_elem(n)
        } else {
            Element::one()
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.alg.mul(a, b)
    }

    /// Generator word for `Λ^μ_ν` in internal entries.
    pub fn lam_gens(&self, mu: usize, nu: usize) -> Vec<(Scalar, Gen)> {
        self.sector()
            .external_entry(mu, nu)
            .into_iter()
            .map(|(v, c)| (sq(&c), Gen::Var(v)))
            .collect()
    }

    /// Defining relations as raw generator expressions (value must vanish).
    pub fn relations(&self) -> Vec<Relation> {
        let g = &self.metric;
        let ik = Scalar::i_over_k();
        let mut out = Vec::new();
        let lam = |m: usize, n: usize| self.lam_gens(m, n);
        let eb: Vec<Gen> = if self.weyl { vec![Gen::Unit(1)] } else { vec![] };
        // [x^ρ, Λ^α_β] − (i/κ)((e^bΛ^α_0 − δ^α_0)Λ^ρ_β + (Λ_{0β} − e^b g_{0β})g^{αρ})
        for rho in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let mut t = Vec::new();
                    for (c, v) in lam(a, b) {
                        t.push((c.clone(), vec![Gen::Letter(rho as u8), v]));
                        t.push((-&c, vec![v, Gen::Letter(rho as u8)]));
                    }
                    for (c1, v1) in lam(a, 0) {
                        for (c2, v2) in lam(rho, b) {
                            let mut w = eb.clone();
                            w.push(v1);
                            w.push(v2);
                            t.push((-(&(&c1 * &c2) * &ik), w));
                        }
                    }
                    if a == 0 {
                        for (c, v) in lam(rho, b) {
                            t.push((&c * &ik, vec![v]));
                        }
                    }
                    let gar = sq(g.up(a, rho));
                    if !gar.is_zero() {
                        for cc in 0..4 {
                            let f = &(&sq(g.lo(0, cc)) * &gar) * &ik;
                            if f.is_zero() {
                                continue;
                            }
                            for (c, v) in lam(cc, b) {
                                t.push((-(&c * &f), vec![v]));
                            }
                        }
                        t.push((&(&sq(g.lo(0, b)) * &gar) * &ik, eb.clone()));
                    }
                    out.push(Relation {
                        name: format!("[x{rho},L{a}{b}]"),
                        terms: t,
                    });
                }
            }
        }
        for r in 0..4 {
            for s in r + 1..4 {
                let mut t = vec![
                    (Scalar::one(), vec![Gen::Letter(r as u8), Gen::Letter(s as u8)]),
                    (-Scalar::one(), vec![Gen::Letter(s as u8), Gen::Letter(r as u8)]),
                ];
                if r == 0 {
                    t.push((-ik.clone(), vec![Gen::Letter(s as u8)]));
                }
                out.push(Relation {
                    name: format!("[x{r},x{s}]"),
                    terms: t,
                });
            }
        }
        // Λ entries commute among themselves.
        for k1 in 0..16 {
            for k2 in k1 + 1..16 {
                let mut t = Vec::new();
                for (c1, v1) in lam(k1 / 4, k1 % 4) {
                    for (c2, v2) in lam(k2 / 4, k2 % 4) {
                        t.push((&c1 * &c2, vec![v1, v2]));
                        t.push((-(&c1 * &c2), vec![v2, v1]));
                    }
                }
                out.push(Relation {
                    name: format!("[L{}{},L{}{}]", k1 / 4, k1 % 4, k2 / 4, k2 % 4),
                    terms: t,
                });
            }
        }
        // Orthogonality in both forms.
        for m in 0..4 {
            for n in m..4 {
                let mut t = Vec::new();
                let mut u = Vec::new();
                for a in 0..4 {
                    for b in 0..4 {
                        let h = sq(g.lo(a, b));
                        if !h.is_zero() {
                            for (c1, v1) in lam(a, m) {
                                for (c2, v2) in lam(b, n) {
                                    t.push((&(&c1 * &c2) * &h, vec![v1, v2]));
                                }
                            }
                        }
                        let hi = sq(g.up(a, b));
                        if !hi.is_zero() {
                            for (c1, v1) in lam(m, a) {
                                for (c2, v2) in lam(n, b) {
                                    u.push((&(&c1 * &c2) * &hi, vec![v1, v2]));
                                }
                            }
                        }
                    }
                }
                t.push((-sq(g.lo(m, n)), vec![]));
                u.push((-sq(g.up(m, n)), vec![]));
                out.push(Relation {
                    name: format!("orth-lower{m}{n}"),
                    terms: t,
                });
                out.push(Relation {
                    name: format!("orth-upper{m}{n}"),
                    terms: u,
                });
            }
        }
        if self.weyl {
            for k in 0..16 {
                let mut t = Vec::new();
                for (c, v) in lam(k / 4, k % 4) {
                    t.push((c.clone(), vec![v, Gen::Unit(1)]));
                    t.push((-c, vec![Gen::Unit(1), v]));
                }
                out.push(Relation {
                    name: format!("[L{}{},eb]", k / 4, k % 4),
                    terms: t,
                });
            }
            for m in 0..4u8 {
                out.push(Relation {
                    name: format!("[x{m},eb]"),
                    terms: vec![
                        (Scalar::one(), vec![Gen::Letter(m), Gen::Unit(1)]),
                        (-Scalar::one(), vec![Gen::Unit(1), Gen::Letter(m)]),
                    ],
                });
            }
            out.push(Relation {
                name: "eb*ebinv".to_string(),
                terms: vec![
                    (Scalar::one(), vec![Gen::Unit(1), Gen::Unit(-1)]),
                    (-Scalar::one(), vec![]),
                ],
            });
        }
        out
    }
}

/// Letter indices of the dual algebra.
pub const M10: u8 = 0;
pub const D_LETTER: u8 = 6;

/// The κ-Poincaré (or κ-Weyl) algebra with `F = e^{P₀/2κ}` as invertible unit.
pub struct Dual {
    pub alg: Algebra,
    pub metric: Metric,
    pub weyl: bool,
}

/// Letter for `M^{μν}` with `μ > ν` in the stored orientation, or `None` on the diagonal.
/// Returns the letter and the sign relating `M^{μν}` to it.
pub fn m_letter(mu: usize, nu: usize) -> Option<(u8, i64)> {
    if mu == nu {
        return None;
    }
    let (a, b, s) = if nu == 0 || (mu != 0 && mu < nu) {
        (mu, nu, 1)
    } else {
        (nu, mu, -1)
    };
    // (i,0) → 0..2; (1,2),(1,3),(2,3) → 3..5
    let l = if b == 0 {
        a - 1
    } else {
        match (a, b) {
            (1, 2) => 3,
            (1, 3) => 4,
            _ => 5,
        }
    };
    Some((l as u8, s))
}

impl Dual {
    pub fn new(g: &Metric, weyl: bool) -> Dual {
        Self::with_cap(g, weyl, super::algebra::DEFAULT_CAP)
    }

    pub fn for_variant(v: Variant, g: &Metric) -> Result<Dual> {
        assert!(!v.is_group());
        v.check_metric(g)?;
        Ok(Dual::new(g, v == Variant::DualWeyl))
    }

    pub fn with_cap(g: &Metric, weyl: bool, cap: usize) -> Dual {
        let mut letters: Vec<String> = ["M[1,0]", "M[2,0]", "M[3,0]", "M[1,2]", "M[1,3]", "M[2,3]"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        if weyl {
            letters.push("D".to_string());
        }
        let mut alg = Algebra::new(
            CommSector::Free(3),
            true,
            (1..4).map(|k| format!("P[{k}]")).collect(),
            "F".to_string(),
            letters,
        );
        alg.cap = cap;
        let mut d = Dual {
            alg,
            metric: g.clone(),
            weyl,
        };
        let nl = d.alg.nletters();
        for l in 0..nl as u8 {
            for k in 1..4 {
                d.alg.ad_var[l as usize][k - 1] = d.commutator_p(l, k);
            }
            // [X, F] = (1/2κ)[X, P₀] F
            let p0 = d.commutator_p(l, 0);
            d.alg.ad_unit[l as usize] = d
                .alg
                .comm_times(&[0; NV], 1, &p0)
                .scale(&Scalar::frac(1, 2).shift(1));
        }
        for a in 0..nl as u8 {
            for b in 0..a {
                d.alg.bracket[a as usize][b as usize] = d.letter_bracket(a, b);
            }
        }
        d
    }

    pub fn p(&self, k: usize) -> Element {
        self.alg.var_elem(k - 1)
    }

    pub fn f(&self, n: i32) -> Element {
        self.alg.unit_elem(n)
    }

    /// `E = e^{P₀/κ} = F²`.
    pub fn e(&self) -> Element {
        self.f(2)
    }

    pub fn d(&self) -> Element {
        assert!(self.weyl);
        self.alg.letter_elem(D_LETTER)
    }

    /// `M^{μν}` (antisymmetric, zero on the diagonal).
    pub fn m_up(&self, mu: usize, nu: usize) -> Element {
        match m_letter(mu, nu) {
            None => Element::zero(),
            Some((l, s)) => self.alg.letter_elem(l).scale(&Scalar::int(s)),
        }
    }

    /// `M_{μν} = g_{μα} g_{νβ} M^{αβ}`.
    pub fn m_lo(&self, mu: usize, nu: usize) -> Element {
        let g = &self.metric;
        let mut r = Element::zero();
        for a in 0..4 {
            for b in 0..4 {
                let c = &sq(g.lo(mu, a)) * &sq(g.lo(nu, b));
                if !c.is_zero() {
                    r += &self.m_up(a, b).scale(&c);
                }
            }
        }
        r
    }

    /// Indices `(μ, ν)` of letter `l` when it is an `M`.
    pub fn letter_indices(l: u8) -> Option<(usize, usize)> {
        match l {
            0..=2 => Some((l as usize + 1, 0)),
            3 => Some((1, 2)),
            4 => Some((1, 3)),
            5 => Some((2, 3)),
            _ => None,
        }
    }

    fn fpow(&self, n: i32) -> Element {
        self.alg.unit_elem(n)
    }

    /// `[X, P_k]` for letter `X`, with `k = 0` meaning `P₀`; always commutative.
    pub fn commutator_p(&self, l: u8, k: usize) -> Element {
        let g = &self.metric;
        let up = |a: usize, b: usize| sq(g.up(a, b));
        let lo = |a: usize, b: usize| sq(g.lo(a, b));
        let i = Scalar::i();
        let ik = i_k();
        let one = Element::one();
        let one_m_e1 = &one - &self.fpow(-2);
        let p = |s: usize| self.p(s);
        let mut r = Element::zero();
        if l == D_LETTER {
            if k == 0 {
                return one_m_e1.scale(&ik);
            }
            let i0 = k;
            r += &self.alg.mul(&p(i0), &self.fpow(-2)).unwrap().scale(&i);
            let sq1 = self.alg.mul(&one_m_e1, &one_m_e1).unwrap();
            r += &sq1.scale(&(&(&ik * &Scalar::frac(1, 2)) * &(&up(0, 0) * &lo(i0, 0))));
            for s in 1..4 {
                let c = &(&i * &lo(0, i0)) * &up(0, s);
                if !c.is_zero() {
                    r += &self.alg.mul(&p(s), &one_m_e1).unwrap().scale(&c);
                }
                for rr in 1..4 {
                    let c = &(&Scalar::i_over_k() * &Scalar::frac(1, 2)) * &(&lo(0, i0) * &up(rr, s));
                    if !c.is_zero() {
                        r += &self.alg.mul(&p(rr), &p(s)).unwrap().scale(&c);
                    }
                }
            }
            return r;
        }
        let (a, b) = Dual::letter_indices(l).expect("M letter");
        if b != 0 {
            // M^{ij}
            let (ii, jj) = (a, b);
            if k == 0 {
                return Element::zero();
            }
            let c = &ik * &(&(&delta(jj, k) * &up(0, ii)) - &(&delta(ii, k) * &up(0, jj)));
            r += &one_m_e1.scale(&c);
            for s in 1..4 {
                let c = &i * &(&(&delta(jj, k) * &up(ii, s)) - &(&delta(ii, k) * &up(jj, s)));
                r += &p(s).scale(&c);
            }
            return r;
        }
        // M^{i0}
        let ii = a;
        if k == 0 {
            r += &one_m_e1.scale(&(&ik * &up(ii, 0)));
            for kk in 1..4 {
                r += &p(kk).scale(&(&i * &up(ii, kk)));
            }
            return r;
        }
        let one_m_e2 = &one - &self.fpow(-4);
        let ik_half = &ik * &Scalar::frac(1, 2);
        r -= &one_m_e2.scale(&(&(&ik_half * &up(0, 0)) * &delta(ii, k)));
        let iok = Scalar::i_over_k();
        for s in 1..4 {
            let c = &(&i * &delta(ii, k)) * &up(0, s);
            if !c.is_zero() {
                r -= &self.alg.mul(&p(s), &self.fpow(-2)).unwrap().scale(&c);
            }
        }
        let c = &i * &up(0, ii);
        if !c.is_zero() {
            r += &self
                .alg
                .mul(&p(k), &(&self.fpow(-2) - &one))
                .unwrap()
                .scale(&c);
        }
        for rr in 1..4 {
            for s in 1..4 {
                let c = &(&(&iok * &Scalar::frac(1, 2)) * &delta(ii, k)) * &up(rr, s);
                if !c.is_zero() {
                    r += &self.alg.mul(&p(rr), &p(s)).unwrap().scale(&c);
                }
            }
        }
        for s in 1..4 {
            let c = &iok * &up(ii, s);
            if !c.is_zero() {
                r -= &self.alg.mul(&p(s), &p(k)).unwrap().scale(&c);
            }
        }
        r
    }

    /// `[ℓ_a, ℓ_b]` for letters.
    fn letter_bracket(&self, a: u8, b: u8) -> Element {
        if a == D_LETTER || b == D_LETTER {
            return Element::zero();
        }
        let (mu, nu) = Dual::letter_indices(a).unwrap();
        let (la, si) = Dual::letter_indices(b).unwrap();
        self.mm_bracket(mu, nu, la, si)
    }

    /// `[M^{μν}, M^{λσ}] = i(g^{μσ}M^{νλ} − g^{νσ}M^{μλ} + g^{νλ}M^{μσ} − g^{μλ}M^{νσ})`.
    pub fn mm_bracket(&self, mu: usize, nu: usize, la: usize, si: usize) -> Element {
        let g = &self.metric;
        let up = |a: usize, b: usize| sq(g.up(a, b));
        let mut r = Element::zero();
        r += &self.m_up(nu, la).scale(&up(mu, si));
        r -= &self.m_up(mu, la).scale(&up(nu, si));
        r += &self.m_up(mu, si).scale(&up(nu, la));
        r -= &self.m_up(nu, si).scale(&up(mu, la));
        r.scale(&Scalar::i())
    }

    /// `M² = g^{00}κ²(F − F⁻¹)² + 2κ g^{0l}P_l(F² − 1) + g^{rs}P_rP_sF²`.
    pub fn mass_squared(&self) -> Element {
        let g = &self.metric;
        let a = &self.fpow(1) - &self.fpow(-1);
        let mut r = self
            .alg
            .mul(&a, &a)
            .unwrap()
            .scale(&(&sq(g.up(0, 0)) * &Scalar::kinv(-2)));
        let e_m1 = &self.fpow(2) - &Element::one();
        for l in 1..4 {
            let c = &Scalar::int(2).shift(-1) * &sq(g.up(0, l));
            if !c.is_zero() {
                r += &self.alg.mul(&self.p(l), &e_m1).unwrap().scale(&c);
            }
        }
        for rr in 1..4 {
            for s in 1..4 {
                let c = sq(g.up(rr, s));
                if !c.is_zero() {
                    r += &self
                        .alg
                        .mul_all(&[&self.p(rr), &self.p(s), &self.fpow(2)])
                        .unwrap()
                        .scale(&c);
                }
            }
        }
        r
    }

    /// Raw defining relations (value must vanish) for the compatibility checks.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        let nl = self.alg.nletters() as u8;
        let flat = |e: &Element| -> Vec<(Scalar, Vec<Gen>)> { element_gens(e) };
        for l in 0..nl {
            for k in 1..4 {
                let mut t = vec![
                    (Scalar::one(), vec![Gen::Letter(l), Gen::Var(k - 1)]),
                    (-Scalar::one(), vec![Gen::Var(k - 1), Gen::Letter(l)]),
                ];
                for (c, w) in flat(&self.commutator_p(l, k)) {
                    t.push((-c, w));
                }
                out.push(Relation {
                    name: format!("[{},P{k}]", self.alg.letter_names[l as usize]),
                    terms: t,
                });
            }
            for b in 0..l {
                let mut t = vec![
                    (Scalar::one(), vec![Gen::Letter(l), Gen::Letter(b)]),
                    (-Scalar::one(), vec![Gen::Letter(b), Gen::Letter(l)]),
                ];
                for (c, w) in flat(&self.alg.bracket[l as usize][b as usize]) {
                    t.push((-c, w));
                }
                out.push(Relation {
                    name: format!(
                        "[{},{}]",
                        self.alg.letter_names[l as usize], self.alg.letter_names[b as usize]
                    ),
                    terms: t,
                });
            }
        }
        for a in 1..4 {
            for b in a + 1..4 {
                out.push(Relation {
                    name: format!("[P{a},P{b}]"),
                    terms: vec![
                        (Scalar::one(), vec![Gen::Var(a - 1), Gen::Var(b - 1)]),
                        (-Scalar::one(), vec![Gen::Var(b - 1), Gen::Var(a - 1)]),
                    ],
                });
            }
        }
        out
    }
}

/// Spells a normal-form element as generator words.
pub fn element_gens(e: &Element) -> Vec<(Scalar, Vec<Gen>)> {
    e.terms()
        .map(|(k, c)| (c.clone(), key_gens(k)))
        .collect()
}

pub fn key_gens(k: &Key) -> Vec<Gen> {
    let mut w = Vec::new();
    for v in 0..NV {
        for _ in 0..k.mono[v] {
            w.push(Gen::Var(v));
        }
    }
    for _ in 0..k.unit.unsigned_abs() {
        w.push(Gen::Unit(k.unit.signum()));
    }
    for &l in k.word.iter() {
        w.push(Gen::Letter(l));
    }
    w
}

/// Evaluates raw generator words in `alg`.
pub fn eval_gens(alg: &Algebra, terms: &[(Scalar, Vec<Gen>)]) -> Result<Element> {
    let mut r = Element::zero();
    for (c, w) in terms {
        r += &alg.word_of(w)?.scale(c);
    }
    Ok(r)
}
