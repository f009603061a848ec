//! Sparse exact elimination over Q(i).
//!
//! Rows are kept in echelon form where each row's pivot is its smallest column; callers
//! choose column numbering so that columns they want eliminated first come first.
//! Every row carries the combination of inserted vectors it stands for, so membership
//! answers come with certificates.

use crate::ring::scalar::{gauss_inv, gauss_is_zero, Gauss};
use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};

pub type SVec = BTreeMap<usize, Gauss>;
/// Combination of inserted vectors, keyed by insertion label.
pub type Combo = BTreeMap<usize, Gauss>;

pub fn axpy(y: &mut SVec, a: &Gauss, x: &SVec) {
    for (c, v) in x {
        let e = y.entry(*c).or_insert_with(Gauss::zero);
        *e += a * v;
        if gauss_is_zero(e) {
            y.remove(c);
        }
    }
}

#[derive(Default, Clone)]
pub struct Echelon {
    rows: Vec<(SVec, Combo)>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    /// Reduces `v`; returns the residual (free of pivot columns) and the combination
    /// `c` with `v = residual + Σ c_j · inserted_j`.
    pub fn reduce(&self, v: &SVec) -> (SVec, Combo) {
        let mut r = v.clone();
        let mut combo = Combo::new();
        let mut cursor = 0usize;
        loop {
            let next = r
                .range(cursor..)
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coef)) = next else { break };
            let (row, rc) = &self.rows[self.pivot_row[&col]];
            // Rows are normalized to pivot 1.
            axpy(&mut r, &-coef.clone(), row);
            axpy(&mut combo, &coef, rc);
            cursor = col + 1;
        }
        (r, combo)
    }

    /// Inserts a vector under `label`; returns whether it was independent.
    pub fn insert(&mut self, v: &SVec, label: usize) -> bool {
        let (mut r, combo) = self.reduce(v);
        let Some((&piv, pv)) = r.iter().next() else {
            return false;
        };
        let inv = gauss_inv(pv);
        for x in r.values_mut() {
            *x = &*x * &inv;
        }
        // r = (v − Σ combo·inserted)·inv
        let mut rc = Combo::new();
        rc.insert(label, inv.clone());
        axpy(&mut rc, &-inv, &combo);
        self.pivot_row.insert(piv, self.rows.len());
        self.rows.push((r, rc));
        true
    }

    /// Keeps only the labels accepted by `keep` in every row's combination; certificates
    /// then report the kept part of each solution.
    pub fn retain_labels(&mut self, keep: impl Fn(usize) -> bool) {
        for (_, c) in &mut self.rows {
            c.retain(|l, _| keep(*l));
        }
    }

    /// Membership in the span with a certificate.
    pub fn solve(&self, v: &SVec) -> Option<Combo> {
        let (r, combo) = self.reduce(v);
        r.is_empty().then_some(combo)
    }
}

/// Rank of a list of vectors.
pub fn rank(vs: &[SVec]) -> usize {
    let mut e = Echelon::new();
    for (i, v) in vs.iter().enumerate() {
        e.insert(v, i);
    }
    e.rank()
}

pub fn unit(col: usize) -> SVec {
    SVec::from([(col, Gauss::one())])
}
