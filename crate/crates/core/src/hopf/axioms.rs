//! Hopf algebra axioms checked exactly on generators, relations and random elements.

use super::structure::GroupHopf;
use super::tensor::TensorElement;
use crate::error::Result;
use crate::expr::render;
use crate::ncalg::algebra::{Element, Gen};
use crate::ncalg::gb::NV;
use crate::ncalg::relations::Group;
use crate::report::{Check, Report};
use crate::ring::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Generators as elements with display names.
pub fn group_generators(g: &Group) -> Vec<(String, Element)> {
    let mut out = Vec::new();
    for k in 0..16 {
        out.push((format!("L[{},{}]", k / 4, k % 4), g.lam(k / 4, k % 4)));
    }
    for m in 0..4 {
        out.push((format!("x[{m}]"), g.x(m)));
    }
    if g.weyl {
        out.push(("eb".into(), g.eb(1)));
        out.push(("eb^-1".into(), g.eb(-1)));
    }
    out
}

/// A random element: a few products of up to `max_len` generators with small coefficients.
pub fn random_element(g: &Group, rng: &mut ChaCha8Rng, max_len: usize) -> Result<Element> {
    let gens = group_generators(g);
    let mut r = Element::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(1..=max_len);
        let mut t = Element::one();
        for _ in 0..len {
            t = g.mul(&t, &gens[rng.gen_range(0..gens.len())].1)?;
        }
        let c = match rng.gen_range(0..3) {
            0 => Scalar::int(rng.gen_range(1..4)),
            1 => Scalar::i_over_k(),
            _ => Scalar::frac(rng.gen_range(-3..4), 2),
        };
        r += &t.scale(&c);
    }
    Ok(r)
}

fn tensor_residual(t: &TensorElement) -> Option<String> {
    if t.is_zero() {
        None
    } else {
        Some(format!("{} nonzero tensor terms", t.len()))
    }
}

pub(crate) struct Tally {
    name: &'static str,
    count: usize,
    first: Option<String>,
}

impl Tally {
    pub(crate) fn new(name: &'static str) -> Self {
        Tally { name, count: 0, first: None }
    }

    pub(crate) fn add(&mut self, label: &str, residual: Option<String>) {
        self.count += 1;
        if let (None, Some(r)) = (&self.first, residual) {
            self.first = Some(format!("{label}: {r}"));
        }
    }

    pub(crate) fn check(self) -> Check {
        match self.first {
            None => Check::pass(self.name).certified(format!("{} cases", self.count)),
            Some(r) => Check::fail(self.name, r),
        }
    }
}

/// Runs every axiom check; `samples` random elements of degree at most three.
pub fn hopf_axiom_suite(g: &Group, samples: usize, seed: u64) -> Result<Report> {
    let variant = if g.weyl { "weyl" } else { "poincare" };
    let h = GroupHopf::new(g);
    let alg = &g.alg;
    let nz = |e: &Element| -> Option<String> { if e.is_zero() { None } else { Some(render(alg, e)) } };
    let mut r = Report::new("hopf", variant, &g.metric.name, 3);
    r.note(format!("random elements drawn with seed {seed}"));

    // Δ, ε and S respect every defining relation.
    let mut td = Tally::new("coproduct-respects-relations");
    let mut te = Tally::new("counit-respects-relations");
    let mut ts = Tally::new("antipode-respects-relations");
    for rel in g.relations() {
        td.add(&rel.name, tensor_residual(&h.coproduct_gens(&rel.terms)?));
        let mut eps = Scalar::zero();
        for (c, w) in &rel.terms {
            let mut x = c.clone();
            for gen in w {
                x = &x * &h.counit_gen(*gen);
            }
            eps += &x;
        }
        te.add(&rel.name, (!eps.is_zero()).then(|| eps.to_string()));
        ts.add(&rel.name, nz(&h.antipode_gens(&rel.terms)?));
    }
    r.push(td.check());
    r.push(te.check());
    r.push(ts.check());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples_v: Vec<(String, Element)> = group_generators(g);
    if g.sector().framed {
        samples_v.extend((0..NV).map(|v| (alg.gen_name(Gen::Var(v)), alg.var_elem(v))));
    }
    // Each Λ entry spreads over this many internal entries; triple tensors grow with its cube.
    let spread = (0..16).map(|k| g.sector().external_entry(k / 4, k % 4).len()).max().unwrap_or(1);
    let max_len = if spread > 4 { 2 } else { 3 };
    if max_len < 3 {
        r.note(format!("dense frame (spread {spread}): random elements limited to degree {max_len}"));
    }
    for i in 0..samples {
        samples_v.push((format!("random element {i}"), random_element(g, &mut rng, max_len)?));
    }
    type Row = [Option<String>; 4];
    let rows: Vec<Result<(String, Row)>> = samples_v
        .par_iter()
        .map(|(name, a)| {
            let d = h.coproduct2_left(a)?.sub(&h.coproduct2_right(a)?);
            let (l, rr) = h.counit_legs(a)?;
            let e = Element::scalar(h.counit(a));
            Ok((
                name.clone(),
                [
                    tensor_residual(&d),
                    nz(&(&l - a)).or_else(|| nz(&(&rr - a))),
                    nz(&(&h.antipode_left(a)? - &e)),
                    nz(&(&h.antipode_right(a)? - &e)),
                ],
            ))
        })
        .collect();
    let mut ts = [
        Tally::new("coassociativity"),
        Tally::new("counit-laws"),
        Tally::new("antipode-left"),
        Tally::new("antipode-right"),
    ];
    for row in rows {
        let (name, res) = row?;
        for (t, x) in ts.iter_mut().zip(res) {
            t.add(&name, x);
        }
    }
    for t in ts {
        r.push(t.check());
    }

    // S ∘ * ∘ S ∘ * = id on generators.
    let mut t = Tally::new("antipode-star-involution");
    for (name, a) in group_generators(g) {
        let x = h.antipode(&alg.star(&h.antipode(&alg.star(&a)?)?)?)?;
        t.add(&name, nz(&(&x - &a)));
    }
    r.push(t.check());

    // Δ is multiplicative on random pairs.
    let mut t = Tally::new("coproduct-multiplicative");
    for i in 0..samples.min(10) {
        let a = random_element(g, &mut rng, 2)?;
        let b = random_element(g, &mut rng, 1)?;
        let lhs = h.coproduct(&g.mul(&a, &b)?)?;
        let rhs = h.coproduct(&a)?.mul(&h.coproduct(&b)?, alg)?;
        t.add(&format!("pair {i}"), tensor_residual(&lhs.sub(&rhs)));
    }
    r.push(t.check());
    Ok(r.finish())
}
