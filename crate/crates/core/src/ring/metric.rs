//! The metric tensor, its inverse, the ε-tensor and index bookkeeping.

use super::scalar::{q, Q};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Mat4 = [[Q; 4]; 4];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("metric is not symmetric at ({0},{1})")]
    NonSymmetric(usize, usize),
    #[error("metric is singular")]
    Singular,
    #[error("metric determinant {0} is not +1 or -1")]
    DeterminantNotUnit(String),
    #[error("malformed metric file: {0}")]
    Format(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("index position {0} out of range for rank {1}")]
pub struct BadIndexPosition(pub usize, pub usize);

pub fn zero4() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()))
}

pub fn ident4() -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Q::one() } else { Q::zero() }))
}

pub fn matmul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = Q::zero();
            for k in 0..4 {
                s += &a[i][k] * &b[k][j];
            }
            s
        })
    })
}

pub fn transpose(a: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Gauss-Jordan inverse and determinant; `None` when singular.
pub fn invert(a: &Mat4) -> Option<(Mat4, Q)> {
    let mut m = a.clone();
    let mut inv = ident4();
    let mut det = Q::one();
    for col in 0..4 {
        let piv = (col..4).find(|&r| !m[r][col].is_zero())?;
        if piv != col {
            m.swap(piv, col);
            inv.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for j in 0..4 {
            m[col][j] = &m[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..4 {
                    let t = &f * &m[col][j];
                    m[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some((inv, det))
}

fn perm_sign(idx: [usize; 4]) -> i64 {
    for a in 0..4 {
        for b in a + 1..4 {
            if idx[a] == idx[b] {
                return 0;
            }
        }
    }
    let mut v = idx;
    let mut s = 1;
    for a in 0..4 {
        for b in 0..3 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                s = -s;
            }
        }
    }
    s
}

/// ε_{μνρσ} with all indices down, normalized so that ε_{0123} = +1.
pub fn epsilon_component(m: usize, n: usize, r: usize, s: usize) -> i64 {
    perm_sign([m, n, r, s])
}

/// A validated metric with cached inverse and ε-tables.
#[derive(Clone, Debug)]
pub struct Metric {
    pub g: Mat4,
    pub g_inv: Mat4,
    pub det: Q,
    pub name: String,
    /// Sign of ε_{0123}; +1 by convention, −1 for the orientation cross-check.
    pub orientation: i64,
    eps: Vec<Vec<Q>>,
}

impl PartialEq for Metric {
    fn eq(&self, o: &Self) -> bool {
        self.g == o.g && self.orientation == o.orientation
    }
}

impl Metric {
    /// Validates `g` and computes its inverse (|det g| = 1 required).
    pub fn new(g: Mat4, name: &str) -> Result<Self, MetricError> {
        for i in 0..4 {
            for j in 0..4 {
                if g[i][j] != g[j][i] {
                    return Err(MetricError::NonSymmetric(i, j));
                }
            }
        }
        let (g_inv, det) = invert(&g).ok_or(MetricError::Singular)?;
        if det.abs() != Q::one() {
            return Err(MetricError::DeterminantNotUnit(det.to_string()));
        }
        let mut m = Metric {
            g,
            g_inv,
            det,
            name: name.to_string(),
            orientation: 1,
            eps: Vec::new(),
        };
        m.build_eps();
        Ok(m)
    }

    pub fn with_orientation(&self, orientation: i64) -> Self {
        let mut m = self.clone();
        m.orientation = orientation.signum();
        m.build_eps();
        m
    }

    fn build_eps(&mut self) {
        // eps[mask][packed index]: bit k of mask set means index k is raised.
        let mut eps = vec![vec![Q::zero(); 256]; 16];
        for p in 0..256 {
            let ix = unpack(p);
            eps[0][p] = q(self.orientation * epsilon_component(ix[0], ix[1], ix[2], ix[3]));
        }
        for mask in 1..16usize {
            let k = mask.trailing_zeros() as usize;
            let prev = mask & !(1 << k);
            for p in 0..256 {
                let ix = unpack(p);
                let mut s = Q::zero();
                for a in 0..4 {
                    if self.g_inv[ix[k]][a].is_zero() {
                        continue;
                    }
                    let mut jx = ix;
                    jx[k] = a;
                    s += &self.g_inv[ix[k]][a] * &eps[prev][pack(jx)];
                }
                eps[mask][p] = s;
            }
        }
        self.eps = eps;
    }

    /// ε with index `k` raised iff `up[k]`, e.g. ε^{μ}{}_{ν}{}^{αγ} is `[true,false,true,true]`.
    pub fn eps(&self, up: [bool; 4], ix: [usize; 4]) -> &Q {
        let mask = up
            .iter()
            .enumerate()
            .fold(0, |m, (k, &u)| if u { m | (1 << k) } else { m });
        &self.eps[mask][pack(ix)]
    }

    pub fn eps_down(&self, ix: [usize; 4]) -> &Q {
        self.eps([false; 4], ix)
    }

    pub fn eps_up(&self, ix: [usize; 4]) -> &Q {
        self.eps([true; 4], ix)
    }

    /// g_{μν}
    pub fn lo(&self, m: usize, n: usize) -> &Q {
        &self.g[m][n]
    }

    /// g^{μν}
    pub fn up(&self, m: usize, n: usize) -> &Q {
        &self.g_inv[m][n]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || self.g[i][j].is_zero()))
    }

    pub fn g00_zero(&self) -> bool {
        self.g[0][0].is_zero()
    }

    pub fn signature_tag(&self) -> String {
        let (_, d) = congruence_diagonalize(&self.g);
        let pos = d.iter().filter(|x| x.is_positive()).count();
        format!("({},{})", pos, 4 - pos)
    }

    pub fn minkowski() -> Self {
        let mut g = zero4();
        g[0][0] = q(1);
        for i in 1..4 {
            g[i][i] = q(-1);
        }
        Metric::new(g, "minkowski").expect("valid")
    }

    pub fn light_cone() -> Self {
        let mut g = zero4();
        g[0][1] = q(1);
        g[1][0] = q(1);
        g[2][2] = q(-1);
        g[3][3] = q(-1);
        Metric::new(g, "light-cone").expect("valid")
    }

    pub fn euclidean() -> Self {
        Metric::new(ident4(), "identity").expect("valid")
    }

    /// A random symmetric rational metric of signature (1,3) and det −1:
    /// `g = Qᵀ diag(r, −1/r, −s, −1/s) Q` with unitriangular rational `Q`.
    pub fn random(seed: u64) -> Self {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let small = |rng: &mut rand_chacha::ChaCha8Rng| {
            super::scalar::qf(rng.gen_range(-2..=2), rng.gen_range(1..=2))
        };
        let r = super::scalar::qf(rng.gen_range(1..=3), rng.gen_range(1..=2));
        let s = super::scalar::qf(rng.gen_range(1..=3), rng.gen_range(1..=3));
        let mut d = zero4();
        d[0][0] = r.clone();
        d[1][1] = -(Q::one() / &r);
        d[2][2] = -s.clone();
        d[3][3] = -(Q::one() / &s);
        let mut lo = ident4();
        let mut hi = ident4();
        for i in 0..4 {
            for j in 0..i {
                lo[i][j] = small(&mut rng);
                hi[j][i] = small(&mut rng);
            }
        }
        let qm = matmul(&lo, &hi);
        let g = matmul(&transpose(&qm), &matmul(&d, &qm));
        Metric::new(g, &format!("random-{seed}")).expect("unit determinant by construction")
    }

    /// Canonical JSON rendering.
    pub fn to_json(&self) -> String {
        let file = MetricFile {
            g: self
                .g
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect(),
            name: Some(self.name.clone()),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, MetricError> {
        let file: MetricFile =
            serde_json::from_str(text).map_err(|e| MetricError::Format(e.to_string()))?;
        if file.g.len() != 4 || file.g.iter().any(|r| r.len() != 4) {
            return Err(MetricError::Format("\"g\" must be a 4x4 array".into()));
        }
        let mut g = zero4();
        for i in 0..4 {
            for j in 0..4 {
                g[i][j] = parse_rational(&file.g[i][j])
                    .ok_or_else(|| MetricError::Format(format!("bad rational {:?}", file.g[i][j])))?;
            }
        }
        Metric::new(g, file.name.as_deref().unwrap_or("unnamed"))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricFile {
    g: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

/// Parses `p` or `p/q` with integer `p`, nonzero `q`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num::BigInt = n.parse().ok()?;
    let d: num::BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn pack(ix: [usize; 4]) -> usize {
    ix[0] * 64 + ix[1] * 16 + ix[2] * 4 + ix[3]
}

pub fn unpack(p: usize) -> [usize; 4] {
    [p / 64, (p / 16) % 4, (p / 4) % 4, p % 4]
}

/// Rational congruence `g = Pᵀ D P` with `D` diagonal; returns `(P, diag D)`.
pub fn congruence_diagonalize(g: &Mat4) -> (Mat4, [Q; 4]) {
    // Find Q with Qᵀ g Q diagonal by symmetric elimination; then P = Q⁻¹.
    let mut b = g.clone();
    let mut qm = ident4();
    for k in 0..4 {
        if b[k][k].is_zero() {
            if let Some(j) = (k + 1..4).find(|&j| !b[j][j].is_zero()) {
                swap_sym(&mut b, &mut qm, k, j);
            } else if let Some(j) = (k + 1..4).find(|&j| !b[k][j].is_zero()) {
                // Replace basis vector k by e_k + e_j, which makes the pivot 2 b_kj.
                add_sym(&mut b, &mut qm, k, j, &Q::one());
            }
        }
        if b[k][k].is_zero() {
            continue;
        }
        for j in k + 1..4 {
            if !b[k][j].is_zero() {
                let f = -(&b[k][j] / &b[k][k]);
                add_sym(&mut b, &mut qm, j, k, &f);
            }
        }
    }
    let (p, _) = invert(&qm).expect("congruence transform is invertible");
    (p, std::array::from_fn(|i| b[i][i].clone()))
}

fn swap_sym(b: &mut Mat4, qm: &mut Mat4, i: usize, j: usize) {
    b.swap(i, j);
    for r in b.iter_mut() {
        r.swap(i, j);
    }
    for r in qm.iter_mut() {
        r.swap(i, j);
    }
}

/// Column/row operation: basis vector `i` += f · basis vector `j`.
fn add_sym(b: &mut Mat4, qm: &mut Mat4, i: usize, j: usize, f: &Q) {
    for r in 0..4 {
        let t = f * &b[r][j];
        b[r][i] += t;
    }
    for c in 0..4 {
        let t = f * &b[j][c];
        b[i][c] += t;
    }
    for r in 0..4 {
        let t = f * &qm[r][j];
        qm[r][i] += t;
    }
}

/// Objects that can be contracted with metric components.
pub trait Linear: Clone {
    fn zero_like() -> Self;
    fn add_scaled(&mut self, other: &Self, c: &Q);
}

impl Linear for Q {
    fn zero_like() -> Self {
        Q::zero()
    }
    fn add_scaled(&mut self, other: &Self, c: &Q) {
        *self += other * c;
    }
}

impl Linear for super::scalar::Scalar {
    fn zero_like() -> Self {
        Self::zero()
    }
    fn add_scaled(&mut self, other: &Self, c: &Q) {
        *self += &other.scale_q(c);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

/// Contracts index `pos` of a dense rank-`rank` tensor (component order: first index slowest)
/// with g_{μν} (lower) or g^{μν} (raise).
pub fn index_move<T: Linear>(
    t: &[T],
    rank: usize,
    pos: usize,
    dir: Direction,
    g: &Metric,
) -> Result<Vec<T>, BadIndexPosition> {
    if pos >= rank || t.len() != 4usize.pow(rank as u32) {
        return Err(BadIndexPosition(pos, rank));
    }
    let stride = 4usize.pow((rank - 1 - pos) as u32);
    let m = match dir {
        Direction::Raise => &g.g_inv,
        Direction::Lower => &g.g,
    };
    let mut out = vec![T::zero_like(); t.len()];
    for (flat, slot) in out.iter_mut().enumerate() {
        let a = (flat / stride) % 4;
        let base = flat - a * stride;
        for b in 0..4 {
            if !m[a][b].is_zero() {
                slot.add_scaled(&t[base + b * stride], &m[a][b]);
            }
        }
    }
    Ok(out)
}
