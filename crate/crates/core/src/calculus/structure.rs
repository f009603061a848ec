//! The bicovariant calculus of a right ideal: forms `ω(q)`, the bimodule structure,
//! the differential, the braiding `σ` and the exterior square.
//!
//! For `q ∈ ker ε` write `ω(q)` for the left-invariant form it defines; it depends only
//! on `q` modulo the ideal, so it is given by the coordinates of `q` on the quotient
//! basis `e_i`. Then
//! - `d a = a₁ · ω(a₂)`,
//! - `ω(q) · a = a₁ · ω(q a₂)`,
//! - `Δ_R ω(e_j) = Σ_m ω_m ⊗ M_mj` with `M_mj = Σ ω_m(q₂) S(q₁) q₃`, `q = e_j`,
//! - `σ(ω_i ⊗ ω_j) = Σ f_il(M_mj) ω_m ⊗ ω_l` with `f_il(b) = ω_l(e_i b)`,
//! - `d ω(q) = −ω(q₁) ∧ ω(q₂)`.

use super::forms::*;
use crate::error::{Error, Result};
use crate::hopf::{GroupHopf, Quotient, TensorElement};
use crate::ncalg::algebra::{Element, Key};
use crate::ncalg::linalg::{Echelon, SVec};
use crate::ncalg::relations::{Group, Variant};
use crate::ring::Scalar;
use parking_lot::RwLock;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

pub struct Calculus<'a> {
    pub g: &'a Group,
    pub variant: Variant,
    pub hopf: GroupHopf<'a>,
    pub quotient: Quotient<'a>,
    pub basis: FormBasis,
    pub weights: Vec<i32>,
    elems: Vec<Element>,
    omega_cache: RwLock<HashMap<Key, Arc<ConstForm>>>,
    f_cache: RwLock<HashMap<(usize, Key), Arc<ConstForm>>>,
}

pub(crate) fn key_elem(k: &Key) -> Element {
    Element::term(k.clone(), Scalar::one())
}

fn coords_to_const(v: Vec<Scalar>) -> ConstForm {
    v.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect()
}

impl<'a> Calculus<'a> {
    /// The calculus of a group variant, with ideal membership decided up to `bound`
    /// translation letters.
    pub fn new(g: &'a Group, variant: Variant, bound: usize) -> Result<Calculus<'a>> {
        if !variant.is_group() {
            return Err(Error::UnknownVariant(variant.name().to_string()));
        }
        let quotient = Quotient::new(g, variant, bound)?;
        let elems = quotient.basis.iter().map(|(_, e)| e.clone()).collect();
        let weights = quotient.weights();
        Ok(Calculus {
            g,
            variant,
            hopf: GroupHopf::new(g),
            basis: FormBasis::new(variant),
            weights,
            elems,
            quotient,
            omega_cache: RwLock::new(HashMap::new()),
            f_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.elems.len()
    }

    /// The quotient representative of a basis form.
    pub fn representative(&self, i: usize) -> &Element {
        &self.elems[i]
    }

    /// `ω(k − ε(k))`.
    pub fn omega_key(&self, k: &Key) -> Result<Arc<ConstForm>> {
        if let Some(v) = self.omega_cache.read().get(k) {
            return Ok(v.clone());
        }
        let mut e = key_elem(k);
        e -= &Element::scalar(self.hopf.counit_key(k));
        let v = Arc::new(coords_to_const(self.quotient.coordinates(&e)?));
        self.omega_cache.write().insert(k.clone(), v.clone());
        Ok(v)
    }

    /// `ω(a − ε(a))` as a constant form.
    pub fn omega(&self, a: &Element) -> Result<ConstForm> {
        let mut out = ConstForm::new();
        for (k, c) in a.terms() {
            caxpy(&mut out, c, &*self.omega_key(k)?);
        }
        Ok(out)
    }

    /// `l ↦ f_il(k) = ω_l(e_i k)`.
    fn f_key(&self, i: usize, k: &Key) -> Result<Arc<ConstForm>> {
        let id = (i, k.clone());
        if let Some(v) = self.f_cache.read().get(&id) {
            return Ok(v.clone());
        }
        let e = self.g.mul(&self.elems[i], &key_elem(k))?;
        let v = Arc::new(coords_to_const(self.quotient.coordinates(&e)?));
        self.f_cache.write().insert(id, v.clone());
        Ok(v)
    }

    fn f_elem(&self, i: usize, b: &Element) -> Result<ConstForm> {
        let mut out = ConstForm::new();
        for (k, c) in b.terms() {
            caxpy(&mut out, c, &*self.f_key(i, k)?);
        }
        Ok(out)
    }

    /// `d a = a₁ ω(a₂)`.
    pub fn differential(&self, a: &Element) -> Result<Form> {
        let mut out = Form::zero();
        for (legs, c) in self.hopf.coproduct(a)?.terms() {
            for (m, x) in self.omega_key(&legs[1])?.iter() {
                out.add(*m, &Element::term(legs[0].clone(), c * x));
            }
        }
        Ok(out)
    }

    /// `ω_i · a`.
    pub fn basis_times(&self, i: usize, a: &Element) -> Result<Form> {
        let mut out = Form::zero();
        for (legs, c) in self.hopf.coproduct(a)?.terms() {
            for (l, x) in self.f_key(i, &legs[1])?.iter() {
                out.add(*l, &Element::term(legs[0].clone(), c * x));
            }
        }
        Ok(out)
    }

    /// `ω · a` rewritten with left coefficients.
    pub fn commute_form_past_element(&self, a: &Element, w: &Form) -> Result<Form> {
        let mut out = Form::zero();
        for (i, c) in w.terms() {
            out.add_assign(&self.basis_times(*i, a)?.lmul(&self.g.alg, c)?);
        }
        Ok(out)
    }

    /// `a · ω`.
    pub fn left_times(&self, a: &Element, w: &Form) -> Result<Form> {
        w.lmul(&self.g.alg, a)
    }

    /// `u ⊗ v` over the algebra, as left coefficients on pairs of basis forms.
    pub fn tensor(&self, u: &Form, v: &Form) -> Result<RawTwoForm> {
        let mut out = RawTwoForm::zero();
        for (i, a) in u.terms() {
            for (j, b) in v.terms() {
                for (l, e) in self.basis_times(*i, b)?.terms() {
                    out.add((*l, *j), &self.g.mul(a, e)?);
                }
            }
        }
        Ok(out)
    }

    /// The corepresentation `M_mj` of the right coaction on basis form `j`.
    pub fn corep_column(&self, j: usize) -> Result<Vec<Element>> {
        let d2 = self.hopf.coproduct2_left(&self.elems[j])?;
        let mut grouped: BTreeMap<(Key, Key), ConstForm> = BTreeMap::new();
        for (legs, c) in d2.terms() {
            let w = self.omega_key(&legs[1])?;
            caxpy(grouped.entry((legs[0].clone(), legs[2].clone())).or_default(), c, &w);
        }
        let mut col = vec![Element::zero(); self.n()];
        for ((k0, k2), w) in grouped {
            let e = self.g.mul(&self.hopf.antipode_key(&k0)?, &key_elem(&k2))?;
            for (m, x) in w {
                col[m] += &e.scale(&x);
            }
        }
        Ok(col)
    }

    /// `σ(ω_i ⊗ ω_j)` for every `i`, as constant tensors.
    pub fn sigma_column(&self, j: usize) -> Result<Vec<ConstRaw>> {
        let col = self.corep_column(j)?;
        (0..self.n())
            .map(|i| {
                let mut out = ConstRaw::new();
                for (m, mm) in col.iter().enumerate() {
                    for (l, x) in self.f_elem(i, mm)? {
                        cadd(&mut out, (m, l), &x);
                    }
                }
                Ok(out)
            })
            .collect()
    }

    /// `d ω_j = −ω(q₁) ⊗ ω(q₂)` before reduction, `q = e_j`.
    pub fn derived_cartan_maurer_raw(&self, j: usize) -> Result<ConstRaw> {
        let mut out = ConstRaw::new();
        for (legs, c) in self.hopf.coproduct(&self.elems[j])?.terms() {
            let a = self.omega_key(&legs[0])?;
            let b = self.omega_key(&legs[1])?;
            caxpy(&mut out, &-c, &cwedge(&a, &b));
        }
        Ok(out)
    }

    /// Right coaction: basis form index ↦ `Σ (coefficient leg) ⊗ (algebra leg)`.
    pub fn coaction_right(&self, w: &Form, corep: &[Vec<Element>]) -> Result<BTreeMap<usize, TensorElement>> {
        let mut out: BTreeMap<usize, TensorElement> = BTreeMap::new();
        for (i, c) in w.terms() {
            for (legs, x) in self.hopf.coproduct(c)?.terms() {
                for (k, m) in corep[*i].iter().enumerate() {
                    if m.is_zero() {
                        continue;
                    }
                    let right = self.g.mul(&key_elem(&legs[1]), m)?;
                    let t = TensorElement::pure(x, &[&key_elem(&legs[0]), &right]);
                    out.entry(k).or_default().add_assign(&t);
                }
            }
        }
        out.retain(|_, t| !t.is_zero());
        Ok(out)
    }

    /// The full corepresentation matrix, columns in parallel.
    pub fn corep(&self) -> Result<Vec<Vec<Element>>> {
        (0..self.n()).into_par_iter().map(|j| self.corep_column(j)).collect()
    }

    /// `c ω_i` as right coefficients: `Σ_k ω_k · c₁ f_ik(S⁻¹ c₂)`.
    pub fn to_right(&self, w: &Form) -> Result<Form> {
        let mut out = Form::zero();
        for (i, c) in w.terms() {
            for (legs, x) in self.hopf.coproduct(c)?.terms() {
                let s = self.hopf.antipode_inv_key(&legs[1])?;
                for (k, y) in self.f_elem(*i, &s)? {
                    out.add(k, &Element::term(legs[0].clone(), x * &y));
                }
            }
        }
        Ok(out)
    }

    /// Right coefficients back to left coefficients.
    pub fn to_left(&self, w: &Form) -> Result<Form> {
        let mut out = Form::zero();
        for (i, r) in w.terms() {
            out.add_assign(&self.basis_times(*i, r)?);
        }
        Ok(out)
    }
}

/// The exterior square `Γ_inv^{⊗2} / ker(I − σ)` on a chosen spanning basis.
pub struct Exterior {
    pub n: usize,
    /// Rank of `I − σ`, the dimension of the invariant part of `Γ^∧2`.
    pub rank: usize,
    pub symbols: Vec<(String, ConstRaw)>,
    pub symbol_weights: Vec<i32>,
    /// Whether the symbols are independent modulo `ker(I − σ)`.
    pub independent: bool,
    weights: Vec<i32>,
    /// `(I − σ)` column of `e_i ⊗ e_j` at κ = 1, keyed by pair.
    image: HashMap<(usize, usize), SVec>,
    ech: Echelon,
    table: HashMap<(usize, usize), Option<ConstForm>>,
}

fn pair_col(n: usize, (i, j): (usize, usize)) -> usize {
    i * n + j
}

impl Exterior {
    pub fn build(c: &Calculus, symbols: Vec<(String, ConstRaw)>) -> Result<Exterior> {
        let n = c.n();
        let w = &c.weights;
        let cols: Vec<Vec<ConstRaw>> = (0..n).into_par_iter().map(|j| c.sigma_column(j)).collect::<Result<_>>()?;
        let mut image = HashMap::new();
        for (j, col) in cols.iter().enumerate() {
            for (i, s) in col.iter().enumerate() {
                let mut v = SVec::new();
                v.insert(pair_col(n, (i, j)), num::One::one());
                for (&(m, l), x) in s {
                    // Homogeneity: σ has degree w_i + w_j − w_m − w_l in 1/κ.
                    match x.as_monomial() {
                        Some((p, _)) if p == w[i] + w[j] - w[m] - w[l] => {}
                        _ => return Err(Error::Config(format!("braiding is not homogeneous at ({i},{j})"))),
                    }
                    let e = v.entry(pair_col(n, (m, l))).or_insert_with(num::Zero::zero);
                    *e -= x.at_kappa_one();
                    if crate::ring::scalar::gauss_is_zero(e) {
                        v.remove(&pair_col(n, (m, l)));
                    }
                }
                image.insert((i, j), v);
            }
        }
        let rank = crate::ncalg::linalg::rank(&image.values().cloned().collect::<Vec<_>>());
        let mut ext = Exterior {
            n,
            rank,
            symbols: Vec::new(),
            symbol_weights: Vec::new(),
            independent: true,
            weights: w.clone(),
            image,
            ech: Echelon::new(),
            table: HashMap::new(),
        };
        for (p, (name, raw)) in symbols.into_iter().enumerate() {
            let parts = ext.image_of(&raw);
            if parts.len() != 1 {
                return Err(Error::Config(format!("exterior symbol {name} is not homogeneous")));
            }
            let (wt, v) = parts.into_iter().next().expect("one part");
            ext.independent &= ext.ech.insert(&v, p);
            ext.symbols.push((name, raw));
            ext.symbol_weights.push(wt);
        }
        let mut table = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let mut raw = ConstRaw::new();
                raw.insert((i, j), Scalar::one());
                table.insert((i, j), ext.reduce_const(&raw).ok());
            }
        }
        ext.table = table;
        Ok(ext)
    }

    /// `(I − σ) raw` at κ = 1, split by weight.
    fn image_of(&self, raw: &ConstRaw) -> BTreeMap<i32, SVec> {
        let mut out: BTreeMap<i32, SVec> = BTreeMap::new();
        for (&(i, j), x) in raw {
            for (p, c) in x.terms() {
                let wt = self.weights[i] + self.weights[j] + p;
                crate::ncalg::linalg::axpy(out.entry(wt).or_default(), c, &self.image[&(i, j)]);
            }
        }
        out.retain(|_, v| !v.is_empty());
        out
    }

    /// Whether a constant tensor vanishes in `Γ^∧2`, i.e. lies in `ker(I − σ)`.
    pub fn vanishes(&self, raw: &ConstRaw) -> bool {
        self.image_of(raw).is_empty()
    }

    /// Coordinates of a constant tensor on the symbols.
    pub fn reduce_const(&self, raw: &ConstRaw) -> Result<ConstForm> {
        let mut out = ConstForm::new();
        for (wt, v) in self.image_of(raw) {
            let Some(combo) = self.ech.solve(&v) else {
                return Err(Error::NonReducible(format!("weight {wt} component of a 2-form")));
            };
            for (p, c) in combo {
                cadd(&mut out, p, &Scalar::monomial(wt - self.symbol_weights[p], c));
            }
        }
        Ok(out)
    }

    /// Rewrites element-coefficient wedges onto the symbols.
    pub fn wedge_reduce(&self, raw: &RawTwoForm, names: &[String]) -> Result<TwoForm> {
        let mut out = TwoForm::zero();
        for (&(i, j), c) in raw.terms() {
            let Some(Some(red)) = self.table.get(&(i, j)) else {
                return Err(Error::NonReducible(format!("{}^{}", names[i], names[j])));
            };
            for (p, x) in red {
                out.add(*p, &c.scale(x));
            }
        }
        Ok(out)
    }

    /// Dimension of `ker(I − σ)`.
    pub fn relation_dim(&self) -> usize {
        self.n * self.n - self.rank
    }

    /// Rank over the scalars of homogeneous constant tensors. A homogeneous tensor of
    /// weight `w` equals `κ^{-w}` times a fixed diagonal rescaling of its value at κ = 1,
    /// so the rank can be read at κ = 1.
    pub fn span_dim(&self, raws: &[ConstRaw]) -> Result<usize> {
        let mut ech = Echelon::new();
        for (k, r) in raws.iter().enumerate() {
            let mut wt = None;
            let mut v = SVec::new();
            for (&(i, j), x) in r {
                for (p, _) in x.terms() {
                    let w = self.weights[i] + self.weights[j] + p;
                    if *wt.get_or_insert(w) != w {
                        return Err(Error::Config("tensor is not homogeneous".into()));
                    }
                }
                v.insert(pair_col(self.n, (i, j)), x.at_kappa_one());
            }
            ech.insert(&v, k);
        }
        Ok(ech.rank())
    }
}
