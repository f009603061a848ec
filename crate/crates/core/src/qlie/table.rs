//! Functional symbols, polynomials over them, the bracket tables and the
//! substitution tables expressing the functionals through dual generators.

use super::ring::DualRing;
use crate::error::{Error, Result};
use crate::expr::render_scalar;
use crate::ncalg::relations::{sq, Variant};
use crate::ring::{Metric, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// The left-invariant functionals, all indices lowered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionalSymbol {
    /// `χ_{μν}`, stored with `μ < ν`.
    Chi2(usize, usize),
    /// `χ_μ`.
    Chi1(usize),
    /// `χ`.
    Chi,
    /// `λ_μ`.
    Lam1(usize),
    /// `λ`.
    Lam,
}

use FunctionalSymbol::*;

impl FunctionalSymbol {
    /// `χ_{μν}` as a signed canonical symbol, `None` on the diagonal.
    pub fn chi2(mu: usize, nu: usize) -> Option<(FunctionalSymbol, i64)> {
        match mu.cmp(&nu) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some((Chi2(mu, nu), 1)),
            std::cmp::Ordering::Greater => Some((Chi2(nu, mu), -1)),
        }
    }

    /// The symbols carried by a variant.
    pub fn all(variant: Variant) -> Vec<FunctionalSymbol> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                out.push(Chi2(a, b));
            }
        }
        out.extend((0..4).map(Chi1));
        match variant {
            Variant::PoincareGeneral | Variant::DualPoincare => {
                out.push(Chi);
                out.extend((0..4).map(Lam1));
            }
            Variant::Weyl | Variant::DualWeyl => out.push(Lam),
            Variant::PoincareG00Zero => {}
        }
        out
    }

    fn kind(self) -> u8 {
        match self {
            Chi2(..) => 0,
            Chi1(_) => 1,
            Chi => 2,
            Lam1(_) => 3,
            Lam => 4,
        }
    }

    pub fn is_lambda(self) -> bool {
        matches!(self, Lam1(_) | Lam)
    }
}

impl fmt::Display for FunctionalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chi2(a, b) => write!(f, "chi[{a},{b}]"),
            Chi1(a) => write!(f, "chi[{a}]"),
            Chi => write!(f, "chi"),
            Lam1(a) => write!(f, "lam[{a}]"),
            Lam => write!(f, "lam"),
        }
    }
}

/// Noncommutative polynomial in the functional symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    terms: BTreeMap<Vec<FunctionalSymbol>, Scalar>,
}

impl SymPoly {
    pub fn zero() -> SymPoly {
        SymPoly::default()
    }

    pub fn constant(c: Scalar) -> SymPoly {
        let mut p = SymPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn sym(s: FunctionalSymbol) -> SymPoly {
        let mut p = SymPoly::zero();
        p.add_term(vec![s], Scalar::one());
        p
    }

    /// `χ_{μν}` with antisymmetry applied.
    pub fn chi2(mu: usize, nu: usize) -> SymPoly {
        match FunctionalSymbol::chi2(mu, nu) {
            None => SymPoly::zero(),
            Some((s, sign)) => SymPoly::sym(s).scale(&Scalar::int(sign)),
        }
    }

    pub fn chi1(mu: usize) -> SymPoly {
        SymPoly::sym(Chi1(mu))
    }

    pub fn lam1(mu: usize) -> SymPoly {
        SymPoly::sym(Lam1(mu))
    }

    pub fn add_term(&mut self, w: Vec<FunctionalSymbol>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<FunctionalSymbol>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> SymPoly {
        let mut out = SymPoly::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn add(&self, o: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (w, x) in &o.terms {
            out.add_term(w.clone(), x.clone());
        }
        out
    }

    pub fn sub(&self, o: &SymPoly) -> SymPoly {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    /// Splits into the `λ`-free part and the rest.
    pub fn split_lambda(&self) -> (SymPoly, SymPoly) {
        let (mut free, mut lam) = (SymPoly::zero(), SymPoly::zero());
        for (w, c) in &self.terms {
            let dst = if w.iter().any(|s| s.is_lambda()) { &mut lam } else { &mut free };
            dst.add_term(w.clone(), c.clone());
        }
        (free, lam)
    }

    pub fn has_lambda(&self) -> bool {
        self.terms.keys().any(|w| w.iter().any(|s| s.is_lambda()))
    }

    /// Replaces every `λ_μ` by a polynomial.
    pub fn replace_lam1(&self, f: &dyn Fn(usize) -> SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = SymPoly::constant(c.clone());
            for s in w {
                let piece = match s {
                    Lam1(m) => f(*m),
                    _ => SymPoly::sym(*s),
                };
                acc = acc.mul(&piece);
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let ws: Vec<String> = w.iter().map(|s| s.to_string()).collect();
                match (c.is_one(), ws.is_empty()) {
                    (_, true) => render_scalar(c),
                    (true, false) => ws.join("*"),
                    (false, false) => format!("({})*{}", render_scalar(c), ws.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Index helpers over a metric.
struct G<'a>(&'a Metric);

impl G<'_> {
    fn lo(&self, a: usize, b: usize) -> Scalar {
        sq(self.0.lo(a, b))
    }
    fn up(&self, a: usize, b: usize) -> Scalar {
        sq(self.0.up(a, b))
    }
    fn eps(&self, up: [bool; 4], ix: [usize; 4]) -> Scalar {
        sq(self.0.eps(up, ix))
    }
}

fn c(p: &SymPoly, s: &Scalar) -> SymPoly {
    p.scale(s)
}

/// `1 + (i/κ)χ₀ − (4/κ²) g₀₀ χ` (the last term only where `χ` exists).
fn n_factor(g: &Metric, with_chi: bool) -> SymPoly {
    let mut n = SymPoly::constant(Scalar::one()).add(&SymPoly::chi1(0).scale(&Scalar::i_over_k()));
    if with_chi {
        n = n.sub(&SymPoly::sym(Chi).scale(&(&Scalar::kinv(2) * &Scalar::int(4)).scale_q(g.lo(0, 0))));
    }
    n
}

/// `1 − (4/κ²) g₀₀ χ`.
fn t_factor(g: &Metric) -> SymPoly {
    SymPoly::constant(Scalar::one()).sub(&SymPoly::sym(Chi).scale(&(&Scalar::kinv(2) * &Scalar::int(4)).scale_q(g.lo(0, 0))))
}

fn has_chi(variant: Variant) -> bool {
    matches!(variant, Variant::PoincareGeneral | Variant::DualPoincare)
}

/// `[χ_{μν}, χ_α] = N (χ_μ g_{αν} − χ_ν g_{αμ})`.
fn chi2_chi1(g: &Metric, variant: Variant, mu: usize, nu: usize, al: usize) -> SymPoly {
    let m = G(g);
    let inner = c(&SymPoly::chi1(mu), &m.lo(al, nu)).sub(&c(&SymPoly::chi1(nu), &m.lo(al, mu)));
    n_factor(g, has_chi(variant)).mul(&inner)
}

/// `[χ_{αβ}, χ_{μν}]`.
fn chi2_chi2(g: &Metric, variant: Variant, al: usize, be: usize, mu: usize, nu: usize) -> SymPoly {
    let m = G(g);
    let x2 = SymPoly::chi2;
    let x1 = SymPoly::chi1;
    let t1 = c(&x2(be, mu), &m.lo(nu, al))
        .add(&c(&x2(al, nu), &m.lo(mu, be)))
        .sub(&c(&x2(be, nu), &m.lo(mu, al)))
        .sub(&c(&x2(al, mu), &m.lo(nu, be)));
    let t1 = if has_chi(variant) { t_factor(g).mul(&t1) } else { t1 };
    let t2 = x1(al)
        .mul(&c(&x2(mu, 0), &m.lo(nu, be)).sub(&c(&x2(nu, 0), &m.lo(mu, be))))
        .add(&x1(mu).mul(&c(&x2(be, 0), &m.lo(al, nu)).sub(&c(&x2(al, 0), &m.lo(nu, be)))))
        .add(&x1(nu).mul(&c(&x2(al, 0), &m.lo(mu, be)).sub(&c(&x2(be, 0), &m.lo(al, mu)))))
        .add(&x1(be).mul(&c(&x2(nu, 0), &m.lo(al, mu)).sub(&c(&x2(mu, 0), &m.lo(al, nu)))));
    let t3 = x1(be)
        .mul(&c(&x2(mu, al), &m.lo(0, nu)).sub(&c(&x2(nu, al), &m.lo(0, mu))))
        .add(&x1(nu).mul(&c(&x2(be, mu), &m.lo(0, al)).sub(&c(&x2(al, mu), &m.lo(0, be)))))
        .add(&x1(mu).mul(&c(&x2(al, nu), &m.lo(0, be)).sub(&c(&x2(be, nu), &m.lo(0, al)))))
        .add(&x1(al).mul(&c(&x2(nu, be), &m.lo(0, mu)).sub(&c(&x2(mu, be), &m.lo(0, nu)))));
    let mut out = t1.add(&t2.add(&t3).scale(&Scalar::i_over_k()));
    if has_chi(variant) {
        // (3/κ²) g₀₀ λ_σ (χ_β ε^σ_{αμν} − χ_α ε^σ_{βμν} + χ_μ ε^σ_{ναβ} − χ_ν ε^σ_{μαβ})
        let up = [true, false, false, false];
        let mut t4 = SymPoly::zero();
        for si in 0..4 {
            let inner = c(&x1(be), &m.eps(up, [si, al, mu, nu]))
                .sub(&c(&x1(al), &m.eps(up, [si, be, mu, nu])))
                .add(&c(&x1(mu), &m.eps(up, [si, nu, al, be])))
                .sub(&c(&x1(nu), &m.eps(up, [si, mu, al, be])));
            t4 = t4.add(&SymPoly::lam1(si).mul(&inner));
        }
        out = out.add(&t4.scale(&Scalar::kinv(2).scale_q(&(g.lo(0, 0) * &crate::ring::scalar::q(3)))));
    }
    out
}

/// `[χ_{μν}, λ_α]`.
fn chi2_lam1(g: &Metric, mu: usize, nu: usize, al: usize) -> SymPoly {
    let m = G(g);
    let l = SymPoly::lam1;
    let x = SymPoly::chi1;
    let a = c(&l(mu), &m.lo(al, nu)).sub(&c(&l(nu), &m.lo(al, mu))).mul(&t_factor(g));
    let b = l(0).mul(&c(&x(nu), &m.lo(mu, al)).sub(&c(&x(mu), &m.lo(nu, al))));
    let d = l(nu).mul(&x(mu)).sub(&l(mu).mul(&x(nu))).scale(&m.lo(0, al));
    a.sub(&b.add(&d).scale(&Scalar::i_over_k()))
}

/// `[λ_α, λ_μ] = −(i/6) ε_{μα}^{σδ} λ_σ χ_δ`.
fn lam1_lam1(g: &Metric, al: usize, mu: usize) -> SymPoly {
    let m = G(g);
    let mut out = SymPoly::zero();
    for si in 0..4 {
        for de in 0..4 {
            let e = m.eps([false, false, true, true], [mu, al, si, de]);
            if !e.is_zero() {
                out = out.add(&SymPoly::lam1(si).mul(&SymPoly::chi1(de)).scale(&e));
            }
        }
    }
    out.scale(&(&Scalar::i() * &Scalar::frac(-1, 6)))
}

/// Weyl `[χ_μ, λ] = −χ_μ − (i/κ)χ₀χ_μ + (i/κ) g_{0μ} g^{σα} χ_σ χ_α`.
fn chi1_lam(g: &Metric, mu: usize) -> SymPoly {
    let m = G(g);
    let x = SymPoly::chi1;
    let mut q = SymPoly::zero();
    for si in 0..4 {
        for al in 0..4 {
            q = q.add(&x(si).mul(&x(al)).scale(&m.up(si, al)));
        }
    }
    let corr = q.scale(&m.lo(0, mu)).sub(&x(0).mul(&x(mu)));
    x(mu).scale(&-Scalar::one()).add(&corr.scale(&Scalar::i_over_k()))
}

/// Weyl `[χ_{μν}, λ] = −(i/κ)(χ_μ χ_{0ν} + χ_ν χ_{μ0}) + (i/κ) g^{ασ}(χ_α χ_{σν} g_{0μ} + χ_α χ_{μσ} g_{0ν})`.
fn chi2_lam(g: &Metric, mu: usize, nu: usize) -> SymPoly {
    let m = G(g);
    let x = SymPoly::chi1;
    let x2 = SymPoly::chi2;
    let mut out = x(mu).mul(&x2(0, nu)).add(&x(nu).mul(&x2(mu, 0))).scale(&-Scalar::one());
    for al in 0..4 {
        for si in 0..4 {
            let u = m.up(al, si);
            if u.is_zero() {
                continue;
            }
            let t = c(&x(al).mul(&x2(si, nu)), &m.lo(0, mu)).add(&c(&x(al).mul(&x2(mu, si)), &m.lo(0, nu)));
            out = out.add(&t.scale(&u));
        }
    }
    out.scale(&Scalar::i_over_k())
}

fn canonical_variant(v: Variant) -> Variant {
    match v {
        Variant::DualPoincare => Variant::PoincareGeneral,
        Variant::DualWeyl => Variant::Weyl,
        v => v,
    }
}

fn lookup_ordered(a: FunctionalSymbol, b: FunctionalSymbol, variant: Variant, g: &Metric) -> Option<SymPoly> {
    let general = variant == Variant::PoincareGeneral;
    let weyl = variant == Variant::Weyl;
    let zero = Some(SymPoly::zero());
    match (a, b) {
        (Chi2(m, n), Chi1(al)) => Some(chi2_chi1(g, variant, m, n, al)),
        (Chi2(a1, b1), Chi2(m, n)) => Some(chi2_chi2(g, variant, a1, b1, m, n)),
        (Chi1(_), Chi1(_)) => zero,
        (Chi2(..), Chi) | (Lam1(_), Chi) | (Chi, Chi1(_)) | (Lam1(_), Chi1(_)) if general => zero,
        (Chi2(m, n), Lam1(al)) if general => Some(chi2_lam1(g, m, n, al)),
        (Lam1(al), Lam1(m)) if general => Some(lam1_lam1(g, al, m)),
        (Chi1(m), Lam) if weyl => Some(chi1_lam(g, m)),
        (Chi2(m, n), Lam) if weyl => Some(chi2_lam(g, m, n)),
        _ => None,
    }
}

/// The stated right-hand side of `[A, B]`, normalized to `[B, A] = −[A, B]`.
pub fn bracket_lookup(a: FunctionalSymbol, b: FunctionalSymbol, variant: Variant, g: &Metric) -> Result<SymPoly> {
    let v = canonical_variant(variant);
    if a == b {
        return Ok(SymPoly::zero());
    }
    if let Some(p) = lookup_ordered(a, b, v, g) {
        return Ok(p);
    }
    if let Some(p) = lookup_ordered(b, a, v, g) {
        return Ok(p.scale(&-Scalar::one()));
    }
    Err(Error::UnknownPair(a.to_string(), b.to_string()))
}

/// Every ordered pair the table covers for a variant, with `A.kind ≤ B.kind`.
pub fn table_pairs(variant: Variant, g: &Metric) -> Vec<(FunctionalSymbol, FunctionalSymbol)> {
    let syms = FunctionalSymbol::all(canonical_variant(variant));
    let mut out = Vec::new();
    for (i, &a) in syms.iter().enumerate() {
        for &b in &syms[i + 1..] {
            let (a, b) = if a.kind() <= b.kind() { (a, b) } else { (b, a) };
            if lookup_ordered(a, b, canonical_variant(variant), g).is_some() || lookup_ordered(b, a, canonical_variant(variant), g).is_some() {
                out.push((a, b));
            }
        }
    }
    out
}

/// Family label of a pair, used to group report entries.
pub fn family(a: FunctionalSymbol, b: FunctionalSymbol) -> &'static str {
    match (a, b) {
        (Chi2(..), Chi1(_)) => "[chi_mn,chi_a]",
        (Chi2(..), Chi2(..)) => "[chi_ab,chi_mn]",
        (Chi1(_), Chi1(_)) => "[chi_a,chi_m]",
        (Chi2(..), Chi) => "[chi_mn,chi]",
        (Chi, Chi1(_)) | (Chi1(_), Chi) => "[chi,chi_m]",
        (Chi1(_), Lam1(_)) | (Lam1(_), Chi1(_)) => "[lam_a,chi_m]",
        (Chi, Lam1(_)) | (Lam1(_), Chi) => "[lam_m,chi]",
        (Chi2(..), Lam1(_)) => "[chi_mn,lam_a]",
        (Lam1(_), Lam1(_)) => "[lam_a,lam_m]",
        (Chi1(_), Lam) => "[chi_m,lam]",
        (Chi2(..), Lam) => "[chi_mn,lam]",
        _ => "other",
    }
}

/// `Y_μ = (1/12) ε_μ^{αβν} χ_α χ_{βν}`, which equals `λ_μ (4g₀₀χ/κ² − 1)`.
pub fn pauli_lubanski(g: &Metric, mu: usize) -> SymPoly {
    let m = G(g);
    let mut out = SymPoly::zero();
    for a in 0..4 {
        for b in 0..4 {
            for n in 0..4 {
                let e = m.eps([false, true, true, true], [mu, a, b, n]);
                if !e.is_zero() {
                    out = out.add(&SymPoly::chi1(a).mul(&SymPoly::chi2(b, n)).scale(&e));
                }
            }
        }
    }
    out.scale(&Scalar::frac(1, 12))
}

/// `4g₀₀χ/κ² − 1`, the factor relating `Y_μ` to `λ_μ`.
pub fn lambda_factor(g: &Metric) -> SymPoly {
    t_factor(g).scale(&-Scalar::one())
}

/// The dual-side image of a functional.
pub fn substitute_functional<R: DualRing>(r: &R, s: FunctionalSymbol, variant: Variant) -> Result<R::E> {
    let v = canonical_variant(variant);
    let g = r.metric().clone();
    let gm = G(&g);
    let general = v == Variant::PoincareGeneral;
    let i = Scalar::i();
    let m2 = || r.mass_squared();
    // −g00 M²/2κ term of χ₀ and −g_{i0} M²/2κ of χ_i
    let m2_over_2k = |coef: Scalar| r.scale(&m2(), &(&coef * &Scalar::frac(1, 2).shift(1)));
    let chi0 = || {
        let mut e = r.kappa_e_minus_one();
        if general {
            e = r.sub(&e, &m2_over_2k(gm.lo(0, 0)));
        }
        r.scale(&e, &-i.clone())
    };
    let chi_i = |k: usize| -> Result<R::E> {
        let e = r.sub(&r.mul(&r.e(), &r.p(k))?, &m2_over_2k(gm.lo(k, 0)));
        Ok(r.scale(&e, &-i.clone()))
    };
    let chi1 = |k: usize| -> Result<R::E> {
        if k == 0 {
            Ok(chi0())
        } else {
            chi_i(k)
        }
    };
    let chi = || r.scale(&m2(), &Scalar::frac(-1, 8));
    // N = 1 + (i/κ)χ₀ − (4/κ²)g₀₀χ
    let n_factor = || {
        let mut n = r.add(&r.one(), &r.scale(&chi0(), &Scalar::i_over_k()));
        if general {
            n = r.sub(&n, &r.scale(&chi(), &(&Scalar::kinv(2) * &Scalar::int(4)).scale_q(g.lo(0, 0))));
        }
        n
    };
    match s {
        Chi1(k) => chi1(k),
        Chi if general => Ok(chi()),
        Chi2(a, b) => {
            let mi = -i.clone();
            if a == 0 {
                // χ_{0b} = −χ_{b0} = i N M_{b0}
                return Ok(r.scale(&r.mul(&n_factor(), &r.m_lo(b, 0))?, &i));
            }
            // χ_{ij} = −i N M_{ij} − (1/κ)(χ₀ M_{ij} + χ_i M_{j0} − χ_j M_{i0})
            let main = r.scale(&r.mul(&n_factor(), &r.m_lo(a, b))?, &mi);
            let mut corr = r.mul(&chi0(), &r.m_lo(a, b))?;
            corr = r.add(&corr, &r.mul(&chi1(a)?, &r.m_lo(b, 0))?);
            corr = r.sub(&corr, &r.mul(&chi1(b)?, &r.m_lo(a, 0))?);
            Ok(r.sub(&main, &r.scale(&corr, &Scalar::kinv(1))))
        }
        Lam if v == Variant::Weyl => {
            // λ = −iD − (1/κ) χ^α M_{α0}
            let mut acc = r.zero();
            for al in 0..4 {
                for be in 0..4 {
                    let u = gm.up(al, be);
                    if !u.is_zero() {
                        acc = r.add(&acc, &r.scale(&r.mul(&chi1(be)?, &r.m_lo(al, 0))?, &u));
                    }
                }
            }
            Ok(r.sub(&r.scale(&r.d(), &-i.clone()), &r.scale(&acc, &Scalar::kinv(1))))
        }
        _ => Err(Error::NoSubstitutionAvailable(format!("{s} in variant {}", variant.name()))),
    }
}

/// Evaluates a polynomial through a substitution cache; `None` if a symbol has no image.
pub fn evaluate<R: DualRing>(r: &R, p: &SymPoly, subs: &BTreeMap<FunctionalSymbol, R::E>) -> Result<Option<R::E>> {
    let mut out = r.zero();
    for (w, c) in p.terms() {
        let mut acc = r.constant(c);
        for s in w {
            match subs.get(s) {
                Some(e) => acc = r.mul(&acc, e)?,
                None => return Ok(None),
            }
        }
        out = r.add(&out, &acc);
    }
    Ok(Some(out))
}

/// Substitution images of every symbol that has one.
pub fn substitution_table<R: DualRing>(r: &R, variant: Variant) -> Result<BTreeMap<FunctionalSymbol, R::E>> {
    let mut out = BTreeMap::new();
    for s in FunctionalSymbol::all(canonical_variant(variant)) {
        match substitute_functional(r, s, variant) {
            Ok(e) => {
                out.insert(s, e);
            }
            Err(Error::NoSubstitutionAvailable(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
