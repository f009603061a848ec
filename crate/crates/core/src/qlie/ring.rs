//! The operations the substitution tables need from a dual algebra, so that the same
//! tables run on the exact engine and on the truncated series oracle.

use crate::error::Result;
use crate::expr::render;
use crate::ncalg::algebra::Element;
use crate::ncalg::relations::{sq, Dual};
use crate::ring::{Metric, Scalar};

pub trait DualRing: Sync {
    type E: Clone + PartialEq + Send + Sync;

    fn metric(&self) -> &Metric;
    fn zero(&self) -> Self::E;
    fn constant(&self, c: &Scalar) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn scale(&self, a: &Self::E, c: &Scalar) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn render(&self, a: &Self::E) -> String;

    /// `P_k`, `k = 1, 2, 3`.
    fn p(&self, k: usize) -> Self::E;
    /// `e^{P₀/κ}`.
    fn e(&self) -> Self::E;
    /// `κ(e^{P₀/κ} − 1)`.
    fn kappa_e_minus_one(&self) -> Self::E;
    /// `M^{μν}`.
    fn m_up(&self, mu: usize, nu: usize) -> Self::E;
    /// The dilatation generator.
    fn d(&self) -> Self::E;
    /// `M² = g^{00}(2κ sinh(P₀/2κ))² + 4κ g^{0l} P_l e^{P₀/2κ} sinh(P₀/2κ) + g^{rs} P_r P_s e^{P₀/κ}`.
    fn mass_squared(&self) -> Self::E;
    /// Momentum generators including `P₀` (or its exponential) for centrality checks.
    fn momenta(&self) -> Vec<(String, Self::E)>;

    fn one(&self) -> Self::E {
        self.constant(&Scalar::one())
    }

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.scale(b, &-Scalar::one()))
    }

    fn commutator(&self, a: &Self::E, b: &Self::E) -> Result<Self::E> {
        Ok(self.sub(&self.mul(a, b)?, &self.mul(b, a)?))
    }

    /// `M_{μν} = g_{μα} g_{νβ} M^{αβ}`.
    fn m_lo(&self, mu: usize, nu: usize) -> Self::E {
        let g = self.metric();
        let mut r = self.zero();
        for a in 0..4 {
            for b in 0..4 {
                let c = &sq(g.lo(mu, a)) * &sq(g.lo(nu, b));
                if !c.is_zero() {
                    r = self.add(&r, &self.scale(&self.m_up(a, b), &c));
                }
            }
        }
        r
    }
}

impl DualRing for Dual {
    type E = Element;

    fn metric(&self) -> &Metric {
        &self.metric
    }
    fn zero(&self) -> Element {
        Element::zero()
    }
    fn constant(&self, c: &Scalar) -> Element {
        Element::scalar(c.clone())
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        a + b
    }
    fn scale(&self, a: &Element, c: &Scalar) -> Element {
        a.scale(c)
    }
    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.alg.mul(a, b)
    }
    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &Element) -> String {
        render(&self.alg, a)
    }
    fn p(&self, k: usize) -> Element {
        Dual::p(self, k)
    }
    fn e(&self) -> Element {
        Dual::e(self)
    }
    fn kappa_e_minus_one(&self) -> Element {
        (&Dual::e(self) - &Element::one()).scale(&Scalar::one().shift(-1))
    }
    fn m_up(&self, mu: usize, nu: usize) -> Element {
        Dual::m_up(self, mu, nu)
    }
    fn d(&self) -> Element {
        Dual::d(self)
    }
    fn mass_squared(&self) -> Element {
        Dual::mass_squared(self)
    }
    fn momenta(&self) -> Vec<(String, Element)> {
        let mut out: Vec<(String, Element)> = (1..4).map(|k| (format!("P[{k}]"), Dual::p(self, k))).collect();
        out.push(("F".into(), self.f(1)));
        out
    }
}
