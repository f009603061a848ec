//! Gaussian-rational Laurent polynomials in the inverse deformation parameter.

use num::complex::Complex;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Exact rational number.
pub type Q = BigRational;
/// Exact Gaussian rational `a + b i`.
pub type Gauss = Complex<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: Q, im: Q) -> Gauss {
    Complex::new(re, im)
}

pub fn gauss_is_zero(g: &Gauss) -> bool {
    g.re.is_zero() && g.im.is_zero()
}

pub fn gauss_inv(g: &Gauss) -> Gauss {
    let n = &g.re * &g.re + &g.im * &g.im;
    Complex::new(&g.re / &n, -(&g.im / &n))
}

/// `Σ_n c_n κ^{-n}` with Gaussian-rational `c_n`; no zero entries are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, Gauss>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Self::from_q(Q::one())
    }

    pub fn from_q(r: Q) -> Self {
        Self::monomial(0, Complex::new(r, Q::zero()))
    }

    pub fn int(n: i64) -> Self {
        Self::from_q(q(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_q(qf(n, d))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::monomial(0, Complex::new(Q::zero(), Q::one()))
    }

    /// `κ^{-n}`; negative `n` gives positive powers of κ.
    pub fn kinv(n: i32) -> Self {
        Self::monomial(n, Complex::new(Q::one(), Q::zero()))
    }

    /// `i/κ`, the ubiquitous deformation factor.
    pub fn i_over_k() -> Self {
        Self::monomial(1, Complex::new(Q::zero(), Q::one()))
    }

    pub fn monomial(n: i32, c: Gauss) -> Self {
        let mut terms = BTreeMap::new();
        if !gauss_is_zero(&c) {
            terms.insert(n, c);
        }
        Scalar { terms }
    }

    /// Canonicalizes a raw list of `(power of κ⁻¹, coefficient)` pairs.
    pub fn normalize<I: IntoIterator<Item = (i32, Gauss)>>(raw: I) -> Self {
        let mut s = Scalar::zero();
        for (n, c) in raw {
            s.add_term(n, c);
        }
        s
    }

    pub fn add_term(&mut self, n: i32, c: Gauss) {
        if gauss_is_zero(&c) {
            return;
        }
        let remove = match self.terms.get_mut(&n) {
            Some(v) => {
                *v = &*v + &c;
                gauss_is_zero(v)
            }
            None => {
                self.terms.insert(n, c);
                false
            }
        };
        if remove {
            self.terms.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .is_some_and(|c| c.re.is_one() && c.im.is_zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Gauss)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Complex conjugation (κ is real).
    pub fn conj(&self) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (*n, Complex::new(c.re.clone(), -c.im.clone())))
                .collect(),
        }
    }

    pub fn scale_q(&self, r: &Q) -> Self {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (*n, Complex::new(&c.re * r, &c.im * r)))
                .collect(),
        }
    }

    /// Multiplies by `κ^{-n}`.
    pub fn shift(&self, n: i32) -> Self {
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (k + n, c.clone())).collect(),
        }
    }

    /// Value at κ = 1.
    pub fn at_kappa_one(&self) -> Gauss {
        let mut acc = Complex::new(Q::zero(), Q::zero());
        for c in self.terms.values() {
            acc = acc + c;
        }
        acc
    }

    /// The single `(power, coefficient)` pair when the scalar is a monomial.
    pub fn as_monomial(&self) -> Option<(i32, &Gauss)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(n, c)| (*n, c))
        } else {
            None
        }
    }

    /// Inverse of a nonzero monomial scalar.
    pub fn inverse(&self) -> Option<Self> {
        let (n, c) = self.as_monomial()?;
        Some(Scalar::monomial(-n, gauss_inv(c)))
    }

    /// Drops every term with κ⁻¹ power above `max_pow`.
    pub fn truncate(&self, max_pow: i32) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .filter(|(n, _)| **n <= max_pow)
                .map(|(n, c)| (*n, c.clone()))
                .collect(),
        }
    }

    pub fn min_pow(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_pow(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, n: i32) -> Gauss {
        self.terms
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Complex::new(Q::zero(), Q::zero()))
    }
}

impl From<Q> for Scalar {
    fn from(r: Q) -> Self {
        Scalar::from_q(r)
    }
}

impl From<Gauss> for Scalar {
    fn from(g: Gauss) -> Self {
        Scalar::monomial(0, g)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, o: Scalar) -> Scalar {
        self += &o;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        for (n, c) in &o.terms {
            self.add_term(*n, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        for (n, c) in &o.terms {
            self.add_term(*n, -c.clone());
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, o: Scalar) -> Scalar {
        self -= &o;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(n, c)| (*n, -c.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let mut r = Scalar::zero();
        for (n, c) in &self.terms {
            for (m, d) in &o.terms {
                r.add_term(n + m, c * d);
            }
        }
        r
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

fn fmt_q(r: &Q) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a Gaussian rational in the expression grammar.
pub fn fmt_gauss(c: &Gauss) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => fmt_q(&c.re),
        (true, false) => {
            if c.im.is_one() {
                "i".to_string()
            } else if (-&c.im).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_q(&c.im))
            }
        }
        _ => {
            let sign = if c.im.is_negative() { "-" } else { "+" };
            format!("({} {} {}*i)", fmt_q(&c.re), sign, fmt_q(&c.im.abs()))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, c)| {
                let mut s = fmt_gauss(c);
                if *n > 0 {
                    s.push_str(&"/k".repeat(*n as usize));
                } else if *n < 0 {
                    s.push_str(&"*k".repeat((-*n) as usize));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
