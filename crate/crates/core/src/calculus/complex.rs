//! The calculus together with its exterior square: `d` on forms, wedge products,
//! Cartan-Maurer equations and the right-invariant basis.

use super::forms::*;
use super::stated::{self, Ix};
use super::structure::{Calculus, Exterior};
use crate::error::{Error, Result};
use crate::hopf::TensorElement;
use crate::ncalg::algebra::Element;
use crate::ncalg::linalg::{unit, Echelon, SVec};
use crate::ncalg::relations::{Group, Variant};
use crate::ring::Scalar;

pub struct Complex<'a> {
    pub calc: Calculus<'a>,
    pub ext: Exterior,
    /// Stated `dω_i` on the exterior basis.
    pub cm: Vec<TwoForm>,
    /// Stated `dω_i` before reduction.
    pub cm_raw: Vec<ConstRaw>,
}

impl<'a> Complex<'a> {
    pub fn new(g: &'a Group, variant: Variant, bound: usize) -> Result<Complex<'a>> {
        let calc = Calculus::new(g, variant, bound)?;
        let ix = Ix::new(&g.metric, variant);
        let ext = Exterior::build(&calc, stated::exterior_symbols(&ix))?;
        let cm_raw = stated::cartan_maurer(&ix);
        let cm = cm_raw.iter().map(|r| ext.reduce_const(r).map(|c| const_to_form(&c))).collect::<Result<_>>()?;
        Ok(Complex { calc, ext, cm, cm_raw })
    }

    pub fn g(&self) -> &'a Group {
        self.calc.g
    }

    pub fn ix(&self) -> Ix<'a> {
        Ix::new(&self.calc.g.metric, self.calc.variant)
    }

    pub fn symbol_names(&self) -> Vec<String> {
        self.ext.symbols.iter().map(|s| s.0.clone()).collect()
    }

    /// The stated `dω` of a basis form, on the exterior basis.
    pub fn cartan_maurer_d(&self, i: usize) -> &TwoForm {
        &self.cm[i]
    }

    /// `u ∧ v` on the exterior basis.
    pub fn wedge(&self, u: &Form, v: &Form) -> Result<TwoForm> {
        let raw = self.calc.tensor(u, v)?;
        self.wedge_reduce(&raw)
    }

    /// Rewrites a raw wedge combination onto the exterior basis.
    pub fn wedge_reduce(&self, raw: &RawTwoForm) -> Result<TwoForm> {
        self.ext.wedge_reduce(raw, &self.calc.basis.symbols)
    }

    /// `d(Σ c_i ω_i) = Σ dc_i ∧ ω_i + c_i dω_i`.
    pub fn d_form(&self, w: &Form) -> Result<TwoForm> {
        let mut raw = RawTwoForm::zero();
        let mut out = TwoForm::zero();
        for (i, c) in w.terms() {
            for (k, ck) in self.calc.differential(c)?.terms() {
                raw.add((*k, *i), ck);
            }
            out.add_assign(&self.cm[*i].lmul(&self.calc.g.alg, c)?);
        }
        out.add_assign(&self.wedge_reduce(&raw)?);
        Ok(out)
    }

    /// The stated right-invariant forms with left coefficients.
    pub fn right_invariant_basis(&self, pseudo: bool) -> Result<Vec<(String, Form)>> {
        let forms = stated::right_invariant_forms(self.calc.g, self.calc.variant, pseudo)?;
        forms.into_iter().map(|(n, f)| Ok((n, self.calc.to_left(&f)?))).collect()
    }

    /// Whether `Δ_R w = w ⊗ 1`; returns the first offending basis form.
    pub fn right_invariance_defect(&self, w: &Form, corep: &[Vec<Element>]) -> Result<Option<usize>> {
        let co = self.calc.coaction_right(w, corep)?;
        for k in 0..self.calc.n() {
            let expect = TensorElement::pure(&Scalar::one(), &[&w.coeff(&k), &Element::one()]);
            let got = co.get(&k).cloned().unwrap_or_default();
            if got != expect {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

/// Change of basis between left-invariant forms and the stated right-invariant basis.
///
/// With `η_j = Σ_i ω_i · R_ij` and `Δ_R ω_j = Σ_m ω_m ⊗ M_mj`, right invariance makes
/// `C = M R` constant; then `R⁻¹ = C⁻¹ M`.
pub struct RightBasis {
    pub names: Vec<String>,
    pub r: Vec<Vec<Element>>,
    pub rinv: Vec<Vec<Element>>,
}

impl RightBasis {
    pub fn new(cx: &Complex, corep: &[Vec<Element>]) -> Result<RightBasis> {
        let c = &cx.calc;
        let n = c.n();
        let forms = stated::right_invariant_forms(c.g, c.variant, true)?;
        let names = forms.iter().map(|f| f.0.clone()).collect();
        let mut r = vec![vec![Element::zero(); n]; n];
        for (j, (_, f)) in forms.iter().enumerate() {
            for (i, e) in f.terms() {
                r[*i][j] = e.clone();
            }
        }
        // C_kj = Σ_i M_ki R_ij.
        let mut cm = vec![vec![Scalar::zero(); n]; n];
        for k in 0..n {
            for j in 0..n {
                let mut s = Element::zero();
                for i in 0..n {
                    if !corep[i][k].is_zero() && !r[i][j].is_zero() {
                        s += &c.g.mul(&corep[i][k], &r[i][j])?;
                    }
                }
                if s.terms().any(|(key, _)| *key != crate::ncalg::algebra::Key::one()) {
                    return Err(Error::Config(format!("stated right-invariant form {} is not right-invariant", forms[j].0)));
                }
                cm[k][j] = s.constant();
            }
        }
        let cinv = invert_graded(&cm, &c.weights)?;
        let mut rinv = vec![vec![Element::zero(); n]; n];
        for (j, row) in rinv.iter_mut().enumerate() {
            for (i, slot) in row.iter_mut().enumerate() {
                for k in 0..n {
                    if !cinv[j][k].is_zero() {
                        *slot += &corep[i][k].scale(&cinv[j][k]);
                    }
                }
            }
        }
        Ok(RightBasis { names, r, rinv })
    }

    /// Right coefficients on the `η` basis of a left-coefficient `ω` expression.
    pub fn to_eta(&self, c: &Calculus, w: &Form) -> Result<Form> {
        let right = c.to_right(w)?;
        let mut out = Form::zero();
        for (i, ri) in right.terms() {
            for (j, row) in self.rinv.iter().enumerate() {
                if !row[*i].is_zero() {
                    out.add(j, &c.g.mul(&row[*i], ri)?);
                }
            }
        }
        Ok(out)
    }

    /// Left-coefficient `ω` expression of right coefficients on the `η` basis.
    pub fn from_eta(&self, c: &Calculus, e: &Form) -> Result<Form> {
        let mut right = Form::zero();
        for (j, d) in e.terms() {
            for (i, row) in self.r.iter().enumerate() {
                if !row[*j].is_zero() {
                    right.add(i, &c.g.mul(&row[*j], d)?);
                }
            }
        }
        c.to_left(&right)
    }
}

/// Inverse of a constant matrix whose entries `C_kj` have `1/κ` power `w_j − w_k`.
fn invert_graded(cm: &[Vec<Scalar>], w: &[i32]) -> Result<Vec<Vec<Scalar>>> {
    let n = cm.len();
    let mut ech = Echelon::new();
    for j in 0..n {
        let mut col = SVec::new();
        for (k, row) in cm.iter().enumerate() {
            let x = &row[j];
            if x.is_zero() {
                continue;
            }
            match x.as_monomial() {
                Some((p, c)) if p == w[j] - w[k] => {
                    col.insert(k, c.clone());
                }
                _ => return Err(Error::Config("right-invariant basis change is not homogeneous".into())),
            }
        }
        if !ech.insert(&col, j) {
            return Err(Error::Config("right-invariant forms are dependent".into()));
        }
    }
    let mut inv = vec![vec![Scalar::zero(); n]; n];
    for k in 0..n {
        let combo = ech.solve(&unit(k)).ok_or_else(|| Error::Config("singular basis change".into()))?;
        for (j, x) in combo {
            inv[j][k] = Scalar::monomial(w[k] - w[j], x);
        }
    }
    Ok(inv)
}
