//! Independent truncated `1/κ` expansion of the dual algebra.
//!
//! Elements are sums of `(letters, P₀^a P₁^b P₂^c P₃^d)` with letters ordered left of
//! momenta and sorted. Exponentials of `P₀` are expanded as power series in `1/κ` and
//! every product is truncated above `1/κ^order`. The commutation rules are transcribed
//! directly in terms of `P₀`, so this shares no rewriting code with the exact engine.

use super::ring::DualRing;
use crate::error::{Error, Result};
use crate::ncalg::relations::{m_letter, sq, D_LETTER};
use crate::ring::scalar::{gauss, q};
use crate::ring::{Metric, Scalar, Q};
use num::{One, Zero};
use std::collections::BTreeMap;

type Mono = [u8; 4];
type Key = (Vec<u8>, Mono);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Series {
    terms: BTreeMap<Key, Scalar>,
}

impl Series {
    fn add_term(&mut self, k: Key, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k.clone()).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn mono(m: Mono, c: Scalar) -> Series {
        let mut s = Series::default();
        s.add_term((Vec::new(), m), c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub struct SeriesDual {
    pub metric: Metric,
    pub weyl: bool,
    /// Highest retained power of `1/κ`.
    pub order: i32,
    /// `[X, P_μ]` for every letter `X` and `μ = 0..3`, pure momentum series.
    comm_p: Vec<[Series; 4]>,
}

fn unit_mono(mu: usize, n: u8) -> Mono {
    let mut m = [0; 4];
    m[mu] = n;
    m
}

fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(Q::one(), |a, k| a * q(k))
}

impl SeriesDual {
    pub fn new(metric: &Metric, weyl: bool, order: i32) -> SeriesDual {
        let mut s = SeriesDual {
            metric: metric.clone(),
            weyl,
            order,
            comm_p: Vec::new(),
        };
        let n = if weyl { 7 } else { 6 };
        s.comm_p = (0..n as u8).map(|l| std::array::from_fn(|mu| s.rule(l, mu))).collect();
        s
    }

    fn trunc(&self, c: &Scalar) -> Scalar {
        c.truncate(self.order)
    }

    /// `Σ_n coef(n) P₀ⁿ κ^{-(n + shift)}` for `n ≥ start`, truncated.
    fn p0_series(&self, start: u32, shift: i32, coef: impl Fn(u32) -> Q) -> Series {
        let mut out = Series::default();
        let mut n = start;
        while n as i32 + shift <= self.order {
            let c = coef(n);
            if !c.is_zero() {
                out.add_term((Vec::new(), unit_mono(0, n as u8)), Scalar::monomial(n as i32 + shift, gauss(c, Q::zero())));
            }
            n += 1;
        }
        out
    }

    /// `e^{a P₀/κ}`.
    fn exp_p0(&self, a: i64) -> Series {
        self.p0_series(0, 0, |n| pow(q(a), n) / factorial(n))
    }

    /// `κ(1 − e^{−a P₀/κ}) / a`.
    fn one_minus_exp(&self, a: i64) -> Series {
        self.p0_series(1, -1, |n| -pow(q(-a), n) / factorial(n) / q(a))
    }

    fn pk(&self, k: usize) -> Series {
        Series::mono(unit_mono(k, 1), Scalar::one())
    }

    fn lo(&self, a: usize, b: usize) -> Scalar {
        sq(self.metric.lo(a, b))
    }

    fn up(&self, a: usize, b: usize) -> Scalar {
        sq(self.metric.up(a, b))
    }

    /// The transcribed commutation rule `[X, P_μ]`.
    fn rule(&self, l: u8, mu: usize) -> Series {
        let i = Scalar::i();
        let iok = Scalar::i_over_k();
        let d = |a: usize, b: usize| if a == b { Scalar::one() } else { Scalar::zero() };
        let em1 = self.exp_p0(-1);
        let a1 = self.one_minus_exp(1);
        let mut r = Series::default();
        if l == D_LETTER {
            if mu == 0 {
                // iκ(1 − e^{−P₀/κ})
                return self.scale(&a1, &i);
            }
            let k = mu;
            // i P_k e^{−P₀/κ} + (iκ/2) g^{00} g_{k0} (1 − e^{−P₀/κ})²
            //   + i g_{0k} g^{0s} P_s (1 − e^{−P₀/κ}) + (i/2κ) g_{0k} g^{rs} P_r P_s
            r = self.add(&r, &self.scale(&self.mul_comm(&self.pk(k), &em1), &i));
            let sq1 = self.scale(&self.mul_comm(&a1, &a1), &Scalar::kinv(1));
            r = self.add(&r, &self.scale(&sq1, &(&(&i * &Scalar::frac(1, 2)) * &(&self.up(0, 0) * &self.lo(k, 0)))));
            for s in 1..4 {
                let c = &(&i * &self.lo(0, k)) * &self.up(0, s);
                let t = self.scale(&self.mul_comm(&self.pk(s), &a1), &Scalar::kinv(1));
                r = self.add(&r, &self.scale(&t, &c));
                for rr in 1..4 {
                    let c = &(&iok * &Scalar::frac(1, 2)) * &(&self.lo(0, k) * &self.up(rr, s));
                    r = self.add(&r, &self.scale(&self.mul_comm(&self.pk(rr), &self.pk(s)), &c));
                }
            }
            return r;
        }
        let (a, b) = letter_indices(l);
        if b != 0 {
            let (ii, jj) = (a, b);
            if mu == 0 {
                return r;
            }
            let k = mu;
            // iκ(δ^j_k g^{0i} − δ^i_k g^{0j})(1 − e^{−P₀/κ}) + i(δ^j_k g^{is} − δ^i_k g^{js}) P_s
            let c = &i * &(&(&d(jj, k) * &self.up(0, ii)) - &(&d(ii, k) * &self.up(0, jj)));
            r = self.add(&r, &self.scale(&a1, &c));
            for s in 1..4 {
                let c = &i * &(&(&d(jj, k) * &self.up(ii, s)) - &(&d(ii, k) * &self.up(jj, s)));
                r = self.add(&r, &self.scale(&self.pk(s), &c));
            }
            return r;
        }
        let ii = a;
        if mu == 0 {
            // iκ g^{i0}(1 − e^{−P₀/κ}) + i g^{ik} P_k
            r = self.add(&r, &self.scale(&a1, &(&i * &self.up(ii, 0))));
            for kk in 1..4 {
                r = self.add(&r, &self.scale(&self.pk(kk), &(&i * &self.up(ii, kk))));
            }
            return r;
        }
        let k = mu;
        // −(iκ/2) g^{00} δ^i_k (1 − e^{−2P₀/κ}) − i δ^i_k g^{0s} P_s e^{−P₀/κ}
        //   + i g^{0i} P_k (e^{−P₀/κ} − 1) + (i/2κ) δ^i_k g^{rs} P_r P_s − (i/κ) g^{is} P_s P_k
        let a2 = self.one_minus_exp(2);
        r = self.add(&r, &self.scale(&a2, &-(&(&i * &self.up(0, 0)) * &d(ii, k))));
        for s in 1..4 {
            let c = &(&i * &d(ii, k)) * &self.up(0, s);
            r = self.add(&r, &self.scale(&self.mul_comm(&self.pk(s), &em1), &-c));
        }
        let em1_m1 = self.add(&em1, &Series::mono([0; 4], -Scalar::one()));
        r = self.add(&r, &self.scale(&self.mul_comm(&self.pk(k), &em1_m1), &(&i * &self.up(0, ii))));
        for rr in 1..4 {
            for s in 1..4 {
                let c = &(&(&iok * &Scalar::frac(1, 2)) * &d(ii, k)) * &self.up(rr, s);
                r = self.add(&r, &self.scale(&self.mul_comm(&self.pk(rr), &self.pk(s)), &c));
            }
        }
        for s in 1..4 {
            let c = &iok * &self.up(ii, s);
            r = self.add(&r, &self.scale(&self.mul_comm(&self.pk(s), &self.pk(k)), &-c));
        }
        r
    }

    /// Product of two pure momentum series.
    fn mul_comm(&self, a: &Series, b: &Series) -> Series {
        let mut out = Series::default();
        for ((_, ma), ca) in &a.terms {
            for ((_, mb), cb) in &b.terms {
                let m: Mono = std::array::from_fn(|i| ma[i] + mb[i]);
                out.add_term((Vec::new(), m), self.trunc(&(ca * cb)));
            }
        }
        out
    }

    /// `[X, m]` for a letter and a momentum monomial, by the Leibniz rule.
    fn letter_mono(&self, l: u8, m: &Mono) -> Series {
        let mut out = Series::default();
        for mu in 0..4 {
            if m[mu] == 0 {
                continue;
            }
            let mut rest = *m;
            rest[mu] -= 1;
            let t = self.mul_comm(&self.comm_p[l as usize][mu], &Series::mono(rest, Scalar::int(m[mu] as i64)));
            out = self.add(&out, &t);
        }
        out
    }

    /// `m · v` with momenta moved to the right: `m x = x m − [x, m]`.
    fn push(&self, m: &Mono, c: &Scalar, v: &[u8]) -> Vec<(Vec<u8>, Mono, Scalar)> {
        if v.is_empty() {
            return vec![(Vec::new(), *m, c.clone())];
        }
        let x = v[0];
        let mut out = Vec::new();
        for (w, m2, c2) in self.push(m, c, &v[1..]) {
            let mut w2 = vec![x];
            w2.extend(w);
            out.push((w2, m2, c2));
        }
        for ((_, mm), cc) in &self.letter_mono(x, m).terms {
            let cc = self.trunc(&(c * cc));
            if cc.is_zero() {
                continue;
            }
            for (w, m2, c2) in self.push(mm, &-cc, &v[1..]) {
                out.push((w, m2, c2));
            }
        }
        out
    }

    /// `[a, b]` of two letters as a combination of letters.
    fn letter_bracket(&self, a: u8, b: u8) -> Vec<(u8, Scalar)> {
        if a == D_LETTER || b == D_LETTER {
            return Vec::new();
        }
        let (mu, nu) = letter_indices(a);
        let (la, si) = letter_indices(b);
        let mut out = Vec::new();
        let mut put = |x: usize, y: usize, c: Scalar| {
            if let Some((l, s)) = m_letter(x, y) {
                if !c.is_zero() {
                    out.push((l, &(&c * &Scalar::int(s)) * &Scalar::i()));
                }
            }
        };
        // i(g^{μσ}M^{νλ} − g^{νσ}M^{μλ} + g^{νλ}M^{μσ} − g^{μλ}M^{νσ})
        put(nu, la, self.up(mu, si));
        put(mu, la, -self.up(nu, si));
        put(mu, si, self.up(nu, la));
        put(nu, si, -self.up(mu, la));
        out
    }

    /// Sorts a letter word using the letter brackets.
    fn order_word(&self, w: Vec<u8>, c: Scalar, out: &mut BTreeMap<Vec<u8>, Scalar>) {
        match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            None => {
                let slot = out.entry(w).or_insert_with(Scalar::zero);
                *slot = &*slot + &c;
            }
            Some(i) => {
                let mut sw = w.clone();
                sw.swap(i, i + 1);
                self.order_word(sw, c.clone(), out);
                for (l, bc) in self.letter_bracket(w[i], w[i + 1]) {
                    let mut nw = w[..i].to_vec();
                    nw.push(l);
                    nw.extend_from_slice(&w[i + 2..]);
                    self.order_word(nw, &c * &bc, out);
                }
            }
        }
    }

    fn add(&self, a: &Series, b: &Series) -> Series {
        let mut out = a.clone();
        for (k, c) in &b.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    fn scale(&self, a: &Series, c: &Scalar) -> Series {
        let mut out = Series::default();
        for (k, x) in &a.terms {
            out.add_term(k.clone(), self.trunc(&(x * c)));
        }
        out
    }

    fn letter(&self, l: u8) -> Series {
        let mut s = Series::default();
        s.add_term((vec![l], [0; 4]), Scalar::one());
        s
    }

    fn product(&self, a: &Series, b: &Series) -> Result<Series> {
        let mut out = Series::default();
        for ((wa, ma), ca) in &a.terms {
            for ((wb, mb), cb) in &b.terms {
                let c = &(ca * cb);
                if c.min_pow().is_some_and(|p| p < 0) {
                    return Err(Error::Config("positive power of kappa in the series oracle".into()));
                }
                let c = self.trunc(c);
                if c.is_zero() {
                    continue;
                }
                for (w, m, cc) in self.push(ma, &c, wb) {
                    let mut full = wa.clone();
                    full.extend(w);
                    let mono: Mono = std::array::from_fn(|i| m[i] + mb[i]);
                    let mut ordered = BTreeMap::new();
                    self.order_word(full, cc, &mut ordered);
                    for (ow, oc) in ordered {
                        out.add_term((ow, mono), self.trunc(&oc));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn pow(x: Q, n: u32) -> Q {
    (0..n).fold(Q::one(), |a, _| a * x.clone())
}

fn letter_indices(l: u8) -> (usize, usize) {
    match l {
        0..=2 => (l as usize + 1, 0),
        3 => (1, 2),
        4 => (1, 3),
        _ => (2, 3),
    }
}

impl DualRing for SeriesDual {
    type E = Series;

    fn metric(&self) -> &Metric {
        &self.metric
    }
    fn zero(&self) -> Series {
        Series::default()
    }
    fn constant(&self, c: &Scalar) -> Series {
        Series::mono([0; 4], self.trunc(c))
    }
    fn add(&self, a: &Series, b: &Series) -> Series {
        SeriesDual::add(self, a, b)
    }
    fn scale(&self, a: &Series, c: &Scalar) -> Series {
        SeriesDual::scale(self, a, c)
    }
    fn mul(&self, a: &Series, b: &Series) -> Result<Series> {
        self.product(a, b)
    }
    fn is_zero(&self, a: &Series) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &Series) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let names = ["P[0]", "P[1]", "P[2]", "P[3]"];
        let letters = ["M[1,0]", "M[2,0]", "M[3,0]", "M[1,2]", "M[1,3]", "M[2,3]", "D"];
        let parts: Vec<String> = a
            .terms
            .iter()
            .map(|((w, m), c)| {
                let mut f: Vec<String> = w.iter().map(|l| letters[*l as usize].to_string()).collect();
                for (k, e) in m.iter().enumerate() {
                    f.extend(std::iter::repeat_n(names[k].to_string(), *e as usize));
                }
                let cs = crate::expr::render_scalar(c);
                if f.is_empty() {
                    cs
                } else {
                    format!("({cs})*{}", f.join("*"))
                }
            })
            .collect();
        format!("{} + O(k^-{})", parts.join(" + "), self.order + 1)
    }
    fn p(&self, k: usize) -> Series {
        self.pk(k)
    }
    fn e(&self) -> Series {
        self.exp_p0(1)
    }
    fn kappa_e_minus_one(&self) -> Series {
        // κ(e^{P₀/κ} − 1) = Σ_{n≥1} P₀ⁿ / (n! κ^{n−1})
        self.p0_series(1, -1, |n| Q::one() / factorial(n))
    }
    fn m_up(&self, mu: usize, nu: usize) -> Series {
        match m_letter(mu, nu) {
            None => Series::default(),
            Some((l, s)) => self.scale(&self.letter(l), &Scalar::int(s)),
        }
    }
    fn d(&self) -> Series {
        assert!(self.weyl);
        self.letter(D_LETTER)
    }
    fn mass_squared(&self) -> Series {
        // g^{00}(2κ sinh(P₀/2κ))² + 2κ g^{0l} P_l (e^{P₀/κ} − 1) + g^{rs} P_r P_s e^{P₀/κ}
        let sh = self.p0_series(1, -1, |n| if n % 2 == 1 { pow(Q::new(1.into(), 2.into()), n - 1) / factorial(n) } else { Q::zero() });
        let mut r = self.scale(&self.mul_comm(&sh, &sh), &self.up(0, 0));
        let ke = self.kappa_e_minus_one();
        for l in 1..4 {
            r = self.add(&r, &self.scale(&self.mul_comm(&self.pk(l), &ke), &(&Scalar::int(2) * &self.up(0, l))));
        }
        let e = self.exp_p0(1);
        for rr in 1..4 {
            for s in 1..4 {
                let t = self.mul_comm(&self.mul_comm(&self.pk(rr), &self.pk(s)), &e);
                r = self.add(&r, &self.scale(&t, &self.up(rr, s)));
            }
        }
        r
    }
    fn momenta(&self) -> Vec<(String, Series)> {
        (0..4).map(|k| (format!("P[{k}]"), self.pk(k))).collect()
    }
}
