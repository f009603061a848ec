//! The right ideal defining each calculus, its quotient, and the theorem checks.

use super::structure::GroupHopf;
use crate::error::{Error, Result};
use crate::expr::render;
use crate::ncalg::algebra::Element;
use crate::ncalg::membership::{IdealSpan, QuotientCoords, Side, PAIRS};
use crate::ncalg::relations::{delta, sq, Group, Variant};
use crate::report::{Check, Report, Status};
use crate::ring::Scalar;
use rayon::prelude::*;

/// Named building blocks of the ideal generators.
pub struct IdealElements<'a> {
    pub g: &'a Group,
}

impl<'a> IdealElements<'a> {
    pub fn new(g: &'a Group) -> Self {
        IdealElements { g }
    }

    /// `Δ^μ_ν = Λ^μ_ν − δ^μ_ν`.
    pub fn d(&self, mu: usize, nu: usize) -> Element {
        &self.g.lam(mu, nu) - &Element::scalar(delta(mu, nu))
    }

    /// `Δ^{μν} = Δ^μ_α g^{αν}`.
    pub fn d_up(&self, mu: usize, nu: usize) -> Element {
        &self.g.lam_pos(true, true, mu, nu) - &Element::scalar(sq(self.g.metric.up(mu, nu)))
    }

    /// `Δ^{μ α}_ν = x^α Δ^μ_ν + (i/κ)(g_{ν0} Δ^{αμ} − δ^μ_0 Δ^α_ν)`.
    pub fn d3(&self, mu: usize, al: usize, nu: usize) -> Element {
        self.d3_with(mu, al, nu, false)
    }

    /// `Δ^{μ α}_ν`, with both correction terms built from `e^b Λ` instead of `Λ` when
    /// `dilated`; the two agree for the Poincaré group.
    pub fn d3_with(&self, mu: usize, al: usize, nu: usize, dilated: bool) -> Element {
        let g = self.g;
        let eb = |e: Element| if dilated { g.mul(&g.eb(1), &e).expect("degree one") } else { e };
        let mut r = g.mul(&g.x(al), &self.d(mu, nu)).expect("degree two");
        let mut t = Element::zero();
        let g0 = sq(g.metric.lo(nu, 0));
        if !g0.is_zero() {
            t += &(&eb(g.lam_pos(true, true, al, mu)) - &Element::scalar(sq(g.metric.up(al, mu)))).scale(&g0);
        }
        if mu == 0 {
            t -= &(&eb(g.lam(al, nu)) - &Element::scalar(delta(al, nu)));
        }
        r += &t.scale(&Scalar::i_over_k());
        r
    }

    /// `Δ^{ρσδ} = g^{σν} Δ^{ρ δ}_ν`.
    pub fn d3_up(&self, rho: usize, si: usize, de: usize) -> Element {
        let mut r = Element::zero();
        for nu in 0..4 {
            let c = sq(self.g.metric.up(si, nu));
            if !c.is_zero() {
                r += &self.d3(rho, de, nu).scale(&c);
            }
        }
        r
    }

    /// `φ_μ = ε_{μρσδ} Δ^{ρσδ}`.
    pub fn phi_lo(&self, mu: usize) -> Element {
        let m = &self.g.metric;
        let mut r = Element::zero();
        for rho in 0..4 {
            for si in 0..4 {
                for de in 0..4 {
                    let e = sq(m.eps_down([mu, rho, si, de]));
                    if !e.is_zero() {
                        r += &self.d3_up(rho, si, de).scale(&e);
                    }
                }
            }
        }
        r
    }

    /// `Δ̃^{μ α}_ν = Δ^{μ α}_ν − (1/6) ε^{μ}_{ν}^{αγ} φ_γ`.
    pub fn d3_tilde(&self, mu: usize, al: usize, nu: usize, phis: &[Element]) -> Element {
        let m = &self.g.metric;
        let mut r = self.d3(mu, al, nu);
        for (ga, phi) in phis.iter().enumerate() {
            let e = sq(m.eps([true, false, true, true], [mu, nu, al, ga]));
            if !e.is_zero() {
                r -= &phi.scale(&(&e * &Scalar::frac(1, 6)));
            }
        }
        r
    }

    /// `x^{αβ} = x^α x^β + (i/κ)(g^{αβ} x_0 − δ^α_0 x^β)`.
    pub fn x2(&self, al: usize, be: usize) -> Element {
        let g = self.g;
        let mut r = g.mul(&g.x(al), &g.x(be)).expect("degree two");
        let mut t = g.x_lo(0).scale(&sq(g.metric.up(al, be)));
        t -= &g.x(be).scale(&delta(al, 0));
        r += &t.scale(&Scalar::i_over_k());
        r
    }

    /// `φ = x^μ_μ = x^{μβ} g_{βμ}`.
    pub fn phi(&self) -> Element {
        let mut r = Element::zero();
        for mu in 0..4 {
            for be in 0..4 {
                let c = sq(self.g.metric.lo(be, mu));
                if !c.is_zero() {
                    r += &self.x2(mu, be).scale(&c);
                }
            }
        }
        r
    }

    /// `e^b − 1`.
    pub fn u1(&self) -> Element {
        &self.g.eb(1) - &Element::one()
    }

    /// Generators of the ideal for a group variant. For the Weyl group the dilated
    /// `Δ^{μ α}_ν` is used; the literal one puts `e^b − 1` into the ideal.
    pub fn generators(&self, v: Variant) -> Result<Vec<(String, Element)>> {
        self.generators_with(v, v == Variant::Weyl)
    }

    pub fn generators_with(&self, v: Variant, dilated: bool) -> Result<Vec<(String, Element)>> {
        let g = self.g;
        let mut out = Vec::new();
        let general = v == Variant::PoincareGeneral;
        let phis: Vec<Element> = if general {
            (0..4).map(|m| self.phi_lo(m)).collect()
        } else {
            Vec::new()
        };
        for mu in 0..4 {
            for al in 0..4 {
                for nu in 0..4 {
                    if general {
                        out.push((format!("Dt[{mu},{al},{nu}]"), self.d3_tilde(mu, al, nu, &phis)));
                    } else {
                        out.push((format!("D3[{mu},{al},{nu}]"), self.d3_with(mu, al, nu, dilated)));
                    }
                }
            }
        }
        for i in 0..16 {
            for j in i..16 {
                let e = g.mul(&self.d(i / 4, i % 4), &self.d(j / 4, j % 4))?;
                out.push((format!("D[{},{}]*D[{},{}]", i / 4, i % 4, j / 4, j % 4), e));
            }
        }
        let phi = if general { self.phi() } else { Element::zero() };
        for al in 0..4 {
            for be in 0..4 {
                let mut x = self.x2(al, be);
                if general {
                    x -= &phi.scale(&sq(g.metric.up(al, be)).scale_q(&crate::ring::scalar::qf(1, 4)));
                    out.push((format!("xt[{al},{be}]"), x));
                } else {
                    out.push((format!("x2[{al},{be}]"), x));
                }
            }
        }
        if v == Variant::Weyl {
            let u = self.u1();
            out.push(("(eb - 1)^2".into(), g.mul(&u, &u)?));
            for i in 0..16 {
                out.push((format!("D[{},{}]*(eb - 1)", i / 4, i % 4), g.mul(&self.d(i / 4, i % 4), &u)?));
            }
            for al in 0..4 {
                out.push((format!("x[{al}]*(eb - 1)"), g.mul(&g.x(al), &u)?));
            }
        }
        Ok(out)
    }

    /// The stated basis of `ker ε / ℛ`, with labels.
    pub fn quotient_basis(&self, v: Variant) -> Vec<(String, Element)> {
        let g = self.g;
        let mut out: Vec<(String, Element)> = (0..4).map(|m| (format!("x[{m}]"), g.x(m))).collect();
        for &(a, b) in &PAIRS {
            out.push((format!("D^[{a},{b}]"), self.d_up(a, b)));
        }
        match v {
            Variant::PoincareGeneral => {
                out.push(("phi".into(), self.phi()));
                for m in 0..4 {
                    out.push((format!("phi[{m}]"), self.phi_lo(m)));
                }
            }
            Variant::Weyl => out.push(("eb - 1".into(), self.u1())),
            _ => {}
        }
        out
    }
}

pub fn expected_dimension(v: Variant) -> usize {
    match v {
        Variant::PoincareGeneral => 15,
        Variant::PoincareG00Zero => 10,
        Variant::Weyl => 11,
        _ => 0,
    }
}

/// The right ideal at a degree bound with its quotient basis.
pub struct Quotient<'a> {
    pub g: &'a Group,
    pub variant: Variant,
    pub span: IdealSpan,
    pub basis: Vec<(String, Element)>,
    coords: Option<QuotientCoords>,
}

impl<'a> Quotient<'a> {
    pub fn new(g: &'a Group, variant: Variant, bound: usize) -> Result<Quotient<'a>> {
        let el = IdealElements::new(g);
        let gens = el.generators(variant)?;
        let span = IdealSpan::build(g, &gens, Side::Right, bound)?;
        let basis = el.quotient_basis(variant);
        let b: Vec<Element> = basis.iter().map(|(_, e)| e.clone()).collect();
        let coords = span.coordinator(&b)?;
        Ok(Quotient {
            g,
            variant,
            span,
            basis,
            coords,
        })
    }

    pub fn bound(&self) -> usize {
        self.span.proj.bound
    }

    /// Weight of each basis element (`x ↦ 1`, `1/κ ↦ 1`).
    pub fn weights(&self) -> Vec<i32> {
        self.coords.as_ref().map(|c| c.weights().to_vec()).unwrap_or_default()
    }

    /// Coordinates of `a` on the quotient basis, without the counit check.
    pub fn coordinates(&self, a: &Element) -> Result<Vec<Scalar>> {
        let c = self
            .coords
            .as_ref()
            .ok_or_else(|| Error::Config("quotient basis is degenerate modulo the ideal".into()))?;
        c.solve(&self.span.proj, a)?
            .ok_or_else(|| Error::Config("element lies outside the bounded quotient".into()))
    }

    /// Coordinates of `a ∈ ker ε` on the quotient basis.
    pub fn project(&self, hopf: &GroupHopf, a: &Element) -> Result<Vec<Scalar>> {
        if !hopf.counit(a).is_zero() {
            return Err(Error::NotInKernel);
        }
        self.coordinates(a)
    }
}

/// Ad-invariance, `S(·)*` stability and the quotient dimension at two bounds.
pub fn ideal_theorem_suite(g: &Group, variant: Variant, bound: usize) -> Result<Report> {
    let hopf = GroupHopf::new(g);
    let mut r = Report::new("ideal", variant.name(), &g.metric.name, bound);
    if !g.metric.g00_zero() {
        r.note("a sixteen-dimensional count for g00 != 0 is read as fifteen");
    }
    let el = IdealElements::new(g);
    let gens = el.generators(variant)?;
    let q = Quotient::new(g, variant, bound)?;
    let in_kernel = gens.iter().find(|(_, t)| !hopf.counit(t).is_zero());
    r.push(match in_kernel {
        None => Check::pass("generators-in-kernel").certified(format!("{} generators", gens.len())),
        Some((n, t)) => Check::fail("generators-in-kernel", format!("{n}: counit {}", hopf.counit(t))),
    });
    // (i) every left leg of ad(t), grouped by right normal word, lies in the span.
    let ad: Vec<Result<(usize, Option<String>)>> = gens
        .par_iter()
        .map(|(name, t)| {
            let a = hopf.adjoint(t)?;
            let mut n = 0;
            for (rk, left) in a.by_last_leg() {
                n += 1;
                if q.span.contains(&left)?.is_none() {
                    let rk = Element::term(rk, Scalar::one());
                    return Ok((n, Some(format!("{name}: left leg at {} is {}", render(&g.alg, &rk), render(&g.alg, &left)))));
                }
            }
            Ok((n, None))
        })
        .collect();
    let mut legs = 0;
    let mut first = None;
    for a in ad {
        let (n, bad) = a?;
        legs += n;
        if first.is_none() {
            first = bad;
        }
    }
    r.push(match first {
        None => Check::pass("ad-invariance").certified(format!("{legs} left legs over {} generators", gens.len())),
        Some(b) => Check::fail("ad-invariance", b),
    });
    // (ii) S(t)* ∈ ℛ.
    let st: Vec<Result<(String, Option<String>)>> = gens
        .par_iter()
        .map(|(name, t)| {
            let s = g.alg.star(&hopf.antipode(t)?)?;
            Ok(match q.span.contains(&s)? {
                Some(c) => (name.clone(), Some(c.summary())),
                None => (name.clone(), None),
            })
        })
        .collect();
    let mut bad = None;
    let mut sample = None;
    for x in st {
        let (name, cert) = x?;
        match cert {
            Some(c) => {
                if sample.is_none() {
                    sample = Some(format!("S({name})* = {c}"));
                }
            }
            None => {
                if bad.is_none() {
                    bad = Some(name);
                }
            }
        }
    }
    r.push(match bad {
        None => Check::pass("antipode-star-stable").certified(sample.unwrap_or_default()),
        Some(n) => Check::fail("antipode-star-stable", format!("S({n})* has no certificate")),
    });
    // (iii) dimension, independence of the listed basis, stability one degree up.
    let want = expected_dimension(variant);
    let dim = q.span.quotient_dim();
    r.push(if dim == want {
        Check::pass("quotient-dimension").certified(format!("dimension {dim}"))
    } else {
        Check::fail("quotient-dimension", format!("dimension {dim}, expected {want}"))
    });
    let basis: Vec<Element> = q.basis.iter().map(|(_, e)| e.clone()).collect();
    let rank = q.span.rank_modulo(&basis)?;
    r.push(if rank == want && basis.len() == want {
        Check::pass("quotient-basis-independent").certified(format!("rank {rank}"))
    } else {
        Check::fail("quotient-basis-independent", format!("rank {rank} of {} listed", basis.len()))
    });
    let up = Quotient::new(g, variant, bound + 1)?;
    let dim_up = up.span.quotient_dim();
    r.push(if dim_up == want {
        Check::pass("quotient-dimension-stable").certified(format!("dimension {dim_up} at bound {}", bound + 1))
    } else {
        Check::fail("quotient-dimension-stable", format!("dimension {dim_up} at bound {}", bound + 1))
    });
    if variant == Variant::Weyl {
        // The undilated generators, reported for comparison.
        let lit = el.generators_with(variant, false)?;
        let span = IdealSpan::build(g, &lit, Side::Right, bound)?;
        let msg = match span.contains(&el.u1())? {
            Some(c) => format!(
                "undilated generators give dimension {}; eb - 1 = {}",
                span.quotient_dim(),
                c.summary()
            ),
            None => format!("undilated generators give dimension {}", span.quotient_dim()),
        };
        r.push(Check::with_status("undilated-reading", Status::Info, msg));
    }
    r.push(Check::with_status(
        "spanning-elements",
        Status::Info,
        format!("{} products, rank {}", q.span.labels.len(), q.span.ech.rank()),
    ));
    Ok(r.finish())
}
