//! The commutative Λ-sector: polynomials in the sixteen Λ entries modulo Lorentz orthogonality.
//!
//! Internally the entries may be taken in a rotated frame Λ' = P Λ P⁻¹ in which the metric
//! is diagonal; the Gröbner basis is then computed for the diagonal metric, which is far
//! cheaper. Every public map takes and returns polynomials in the internal entries.

use super::gb::{divides, groebner, mono_mul, var, Drl, Mono, Poly, Reducer};
use crate::ring::metric::{congruence_diagonalize, ident4, invert, zero4, Mat4};
use crate::ring::{Metric, Q};
use num::{One, Zero};
use parking_lot::{Mutex, RwLock};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

pub fn lvar(a: usize, b: usize) -> usize {
    4 * a + b
}

pub struct LorentzSector {
    /// Λ' = P Λ P⁻¹ (identity when no frame change was needed).
    pub p: Mat4,
    pub p_inv: Mat4,
    /// Metric in the internal frame.
    pub h: Mat4,
    pub framed: bool,
    pub gb: Vec<Poly>,
    leads: Vec<Mono>,
    nf_cache: RwLock<HashMap<Mono, Arc<Vec<(Mono, Q)>>>>,
}

fn orthogonality(h: &Mat4) -> Vec<Poly> {
    let (h_inv, _) = invert(h).expect("nondegenerate");
    let mut rels = Vec::new();
    for m in 0..4 {
        for n in m..4 {
            // Σ Λ^α_μ h_{αβ} Λ^β_ν − h_{μν}
            let mut t = Vec::new();
            for a in 0..4 {
                for b in 0..4 {
                    if !h[a][b].is_zero() {
                        t.push((mono_mul(&var(lvar(a, m)), &var(lvar(b, n))), h[a][b].clone()));
                    }
                }
            }
            t.push(([0; 16], -h[m][n].clone()));
            rels.push(Poly::from_terms(t));
            // Σ Λ^μ_α h^{αβ} Λ^ν_β − h^{μν}
            let mut t = Vec::new();
            for a in 0..4 {
                for b in 0..4 {
                    if !h_inv[a][b].is_zero() {
                        t.push((mono_mul(&var(lvar(m, a)), &var(lvar(n, b))), h_inv[a][b].clone()));
                    }
                }
            }
            t.push(([0; 16], -h_inv[m][n].clone()));
            rels.push(Poly::from_terms(t));
        }
    }
    rels
}

fn cache() -> &'static Mutex<HashMap<String, Arc<LorentzSector>>> {
    static C: OnceLock<Mutex<HashMap<String, Arc<LorentzSector>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

impl LorentzSector {
    /// Shared instance per metric (construction is the expensive part).
    pub fn for_metric(g: &Metric) -> Arc<LorentzSector> {
        let key = format!("{:?}", g.g);
        if let Some(s) = cache().lock().get(&key) {
            return s.clone();
        }
        let s = Arc::new(Self::build(g));
        cache().lock().entry(key).or_insert(s).clone()
    }

    fn build(g: &Metric) -> LorentzSector {
        if g.is_diagonal() {
            return Self::with_frame(ident4(), g.g.clone(), false, u64::MAX).expect("unbounded");
        }
        // Direct bases for non-diagonal metrics are orders of magnitude slower, so always frame.
        let (p, d) = congruence_diagonalize(&g.g);
        let mut h = zero4();
        for i in 0..4 {
            h[i][i] = d[i].clone();
        }
        Self::with_frame(p, h, true, u64::MAX).expect("unbounded")
    }

    fn with_frame(p: Mat4, h: Mat4, framed: bool, budget: u64) -> Option<LorentzSector> {
        let gb = groebner(&orthogonality(&h), budget)?;
        let (p_inv, _) = invert(&p).expect("invertible frame");
        let leads = gb.iter().map(|q| *q.lead()).collect();
        Some(LorentzSector {
            p,
            p_inv,
            h,
            framed,
            gb,
            leads,
            nf_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn is_normal(&self, m: &Mono) -> bool {
        !self.leads.iter().any(|l| divides(l, m))
    }

    /// Normal form of a monomial in the internal entries (cached).
    pub fn nf_mono(&self, m: &Mono) -> Arc<Vec<(Mono, Q)>> {
        if let Some(r) = self.nf_cache.read().get(m) {
            return r.clone();
        }
        let r = if self.is_normal(m) {
            vec![(*m, Q::one())]
        } else {
            let p = Poly {
                terms: vec![(*m, Q::one())],
            };
            Reducer { basis: &self.gb }.reduce(&p).terms
        };
        let r = Arc::new(r);
        self.nf_cache.write().entry(*m).or_insert(r).clone()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        Reducer { basis: &self.gb }.reduce(p)
    }

    /// The user-facing entry Λ^μ_ν as a linear form in internal entries:
    /// Λ = P⁻¹ Λ' P.
    pub fn external_entry(&self, mu: usize, nu: usize) -> Vec<(usize, Q)> {
        if !self.framed {
            return vec![(lvar(mu, nu), Q::one())];
        }
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for a in 0..4 {
            if self.p_inv[mu][a].is_zero() {
                continue;
            }
            for b in 0..4 {
                if self.p[b][nu].is_zero() {
                    continue;
                }
                *acc.entry(lvar(a, b)).or_insert_with(Q::zero) += &self.p_inv[mu][a] * &self.p[b][nu];
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Internal entry Λ'^a_b as a linear form in user-facing entries: Λ' = P Λ P⁻¹.
    pub fn internal_entry(&self, a: usize, b: usize) -> Vec<(usize, Q)> {
        if !self.framed {
            return vec![(lvar(a, b), Q::one())];
        }
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for m in 0..4 {
            if self.p[a][m].is_zero() {
                continue;
            }
            for n in 0..4 {
                if self.p_inv[n][b].is_zero() {
                    continue;
                }
                *acc.entry(lvar(m, n)).or_insert_with(Q::zero) += &self.p[a][m] * &self.p_inv[n][b];
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn drl(m: Mono) -> Drl {
        Drl(m)
    }
}
