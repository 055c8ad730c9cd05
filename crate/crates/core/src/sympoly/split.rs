use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::liealg::{Automorphism, Grading};
use crate::scalars::CycloScalar;

use super::{Poly, Var};

/// `F = Σ_j F_j` with `φ_s(F_j) = s^j F_j`.
#[derive(Clone, Debug, Default)]
pub struct PhiSplit {
    pub components: BTreeMap<i64, Poly>,
}

impl PhiSplit {
    pub fn component(&self, j: i64) -> Poly {
        self.components.get(&j).cloned().unwrap_or_default()
    }

    pub fn sum(&self) -> Poly {
        let mut acc = Poly::zero();
        for p in self.components.values() {
            acc.add_assign(p);
        }
        acc
    }

    /// Largest φ-degree with a nonzero component.
    pub fn top_degree(&self) -> Option<i64> {
        self.components.keys().next_back().copied()
    }
}

/// Splits by the weight `Σ w(v)·e` of each monomial.
pub fn phi_split_by(f: &Poly, w: impl Fn(Var) -> i64) -> PhiSplit {
    let mut components: BTreeMap<i64, Poly> = BTreeMap::new();
    for (m, c) in f.terms() {
        components.entry(m.weight(&w)).or_default().add_term(m.clone(), c.clone());
    }
    PhiSplit { components }
}

/// Splits by summed grading degrees (representatives in `0..m`).
pub fn phi_split(f: &Poly, grading: &Grading) -> PhiSplit {
    phi_split_by(f, |v| grading.degree(v.base()) as i64)
}

/// The nonzero φ-component of maximal degree.
pub fn highest_component(f: &Poly, grading: &Grading) -> Result<Poly> {
    let split = phi_split(f, grading);
    split.components.into_iter().next_back().map(|(_, p)| p).ok_or(Error::EmptyInput("highest_component of 0"))
}

/// Eigencomponents `(u, F_u)` with `θ(F_u) = ζ^u F_u`, via `(1/m) Σ_k ζ^{-uk} θ^k(F)`.
/// Only nonzero components are returned.
pub fn theta_eigen_split(f: &Poly, theta: &Automorphism, zeta: &CycloScalar) -> Result<Vec<(u32, Poly)>> {
    let m = theta.order();
    let mut images = Vec::with_capacity(m as usize);
    let mut cur = f.clone();
    for _ in 0..m {
        images.push(cur.clone());
        cur = cur.apply_linear(theta.matrix());
    }
    let zinv = zeta.inverse()?;
    let inv_m = CycloScalar::frac(1, m as i64);
    let mut out = Vec::new();
    for u in 0..m {
        let mut acc = Poly::zero();
        for (k, img) in images.iter().enumerate() {
            acc.add_assign(&img.scalar_mul(&zinv.pow(u * k as u32)));
        }
        let acc = acc.scalar_mul(&inv_m);
        if !acc.is_zero() {
            out.push((u, acc));
        }
    }
    Ok(out)
}
