//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use twistloop::invariants::{attach_automorphism, catalog, catalog_family, g0_invariants, to_eigenbasis};
use twistloop::liealg::{grading_from_automorphism, Automorphism, Grading, LieAlgebra};
use twistloop::scalars::CycloScalar;
use twistloop::sympoly::{phi_split, Monomial, Poly, Var};

/// A catalog case with its θ-eigenvector generators in the eigenbasis.
pub struct Case {
    pub id: String,
    pub auto: String,
    pub alg: LieAlgebra,
    pub theta: Automorphism,
    pub zeta: CycloScalar,
    pub grading: Arc<Grading>,
    /// `(F_i, ℓ_i)` in original-basis variables.
    pub original: Vec<(Poly, u32)>,
    /// `(F_i, ℓ_i)` in eigenbasis variables.
    pub family: Vec<(Poly, u32)>,
    pub h: Vec<Poly>,
}

pub fn case(id: &str, auto: &str) -> Case {
    let alg = catalog::algebra(id).unwrap();
    let theta = catalog::automorphism(&alg, id, auto).unwrap();
    let zeta = CycloScalar::zeta_power(theta.order(), 1);
    let grading = Arc::new(grading_from_automorphism(&alg, &theta, &zeta).unwrap());
    let fam = attach_automorphism(&catalog_family(id).unwrap(), &theta, &zeta).unwrap();
    let original: Vec<(Poly, u32)> = fam.generators.iter().map(|g| (g.poly.clone(), g.ell.unwrap())).collect();
    let family: Vec<(Poly, u32)> =
        original.iter().map(|(p, l)| (to_eigenbasis(p, &grading).unwrap(), *l)).collect();
    let polys: Vec<Poly> = family.iter().map(|x| x.0.clone()).collect();
    let h = g0_invariants(&grading, &polys, 7).unwrap();
    Case { id: id.into(), auto: auto.into(), alg, theta, zeta, grading, original, family, h }
}

/// Every catalog (algebra, automorphism) pair whose invariant family resolves.
pub fn catalog_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for entry in catalog::list() {
        if catalog_family(entry.id).is_err() {
            continue;
        }
        for auto in &entry.automorphisms {
            out.push(case(entry.id, auto));
        }
    }
    out
}

/// Exact `n!/(k!(n−k)!)` from factorials.
pub fn choose(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let fact = |x: i64| (1..=x).product::<i64>();
    fact(n) / (fact(k) * fact(n - k))
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `F_[k]`, `k ≥ 0`, by enumerating for each monomial `x_1⋯x_d` (factors listed with
/// multiplicity, in order) every tuple `α_i ≤ 0` with `Σ α_i = −j` and writing down
/// `x̄_1 t^{α_1 m}⋯x̄_d t^{α_d m}`, `x̄ = x t^{-ī}`.
pub fn polarisation_oracle(f: &Poly, k: usize, grading: &Grading) -> Poly {
    let m = grading.order() as usize;
    let mut out = Poly::zero();
    for (mono, c) in f.terms() {
        let factors: Vec<Var> =
            mono.factors().iter().flat_map(|(v, e)| std::iter::repeat(*v).take(*e as usize)).collect();
        let phi: usize = factors.iter().map(|v| grading.degree(v.base()) as usize).sum();
        if phi > k || (k - phi) % m != 0 {
            continue;
        }
        let j = (k - phi) / m;
        for alpha in compositions(j, factors.len()) {
            let vars = factors.iter().zip(&alpha).map(|(v, a)| {
                let shift = grading.degree(v.base()) as usize + a * m;
                (Var::new(v.base(), -(shift as i32)), 1)
            });
            out.add_term(Monomial::from_pairs(vars), c.clone());
        }
    }
    out
}

/// `Σ_{c=0}^{j} binom(c+d−1, d−1) F_{ℓ+(j−c)m}` from the φ-components.
pub fn image_rhs(f: &Poly, ell: u32, j: i64, grading: &Grading) -> Poly {
    let m = grading.order() as i64;
    let d = f.degree() as i64;
    let split = phi_split(f, grading);
    let mut out = Poly::zero();
    for c in 0..=j {
        let coeff = CycloScalar::from_int(choose(c + d - 1, d - 1));
        out.add_assign(&split.component(ell as i64 + (j - c) * m).scalar_mul(&coeff));
    }
    out
}

/// `θ̃(y_1, …, y_n) = (y_n, θ(y_1), y_2, …, y_{n−1})` on `g^{⊕n}`, built directly.
pub fn twist_matrix(theta: &Automorphism, n: usize) -> Vec<Vec<CycloScalar>> {
    let d = theta.dim();
    let mut out = vec![vec![CycloScalar::zero(); d * n]; d * n];
    for c in 0..n {
        let to = (c + 1) % n;
        for b in 0..d {
            for r in 0..d {
                out[to * d + r][c * d + b] = if c == 0 {
                    theta.matrix()[r][b].clone()
                } else if r == b {
                    CycloScalar::one()
                } else {
                    CycloScalar::zero()
                };
            }
        }
    }
    out
}
