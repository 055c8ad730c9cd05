use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::liealg::{index, Grading, LieAlgebra};
use crate::linalg;
use crate::scalars::CycloScalar;
use crate::sympoly::{jacobian_rank_random, poisson_bracket, Monomial, Poly, Var};

pub(crate) fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(start: usize, n: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_pairs(cur.iter().map(|&i| (Var::plain(i), 1))));
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// Products of the given generators with total degree `d`.
pub(crate) fn decomposables(gens: &[Poly], d: u32) -> Vec<Poly> {
    fn rec(gens: &[Poly], start: usize, left: u32, cur: Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for i in start..gens.len() {
            let gd = gens[i].degree();
            if gd <= left && gd > 0 {
                rec(gens, i, left - gd, cur.mul(&gens[i]), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, d, Poly::constant(CycloScalar::one()), &mut out);
    out
}

/// Basis of the degree-`d` part of `S(L)^L`.
fn invariant_space(alg: &LieAlgebra, d: u32) -> Result<Vec<Poly>> {
    let monos = monomials(alg.dim(), d);
    let mut row_of: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, CycloScalar)> = Vec::new();
    for (col, mu) in monos.iter().enumerate() {
        let p = Poly::term(mu.clone(), CycloScalar::one());
        for b in 0..alg.dim() {
            let br = poisson_bracket(alg, &p, &Poly::var(Var::plain(b)))?;
            for (m, c) in br.terms() {
                let next = row_of.len();
                let r = *row_of.entry((b, m.clone())).or_insert(next);
                entries.push((r, col, c.clone()));
            }
        }
    }
    let mut mat = linalg::zeros(row_of.len(), monos.len());
    for (r, c, x) in entries {
        mat[r][c] += &x;
    }
    let kernel = if row_of.is_empty() {
        linalg::identity(monos.len())
    } else {
        linalg::nullspace(&mat, monos.len())
    };
    Ok(kernel
        .into_iter()
        .map(|v| Poly::from_terms(monos.iter().cloned().zip(v)))
        .collect())
}

pub(crate) fn coefficient_rank(polys: &[Poly]) -> usize {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let n = index.len();
            index.entry(m.clone()).or_insert(n);
        }
    }
    let mut mat = linalg::zeros(polys.len(), index.len());
    for (i, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            mat[i][index[m]] = c.clone();
        }
    }
    linalg::rank(&mat)
}

/// Homogeneous generators of `S(L)^L` found degree by degree modulo products of earlier ones.
///
/// Succeeds once `target` algebraically independent generators are found; more generators
/// than `target` before that, or reaching `max_degree`, means the ring is not recognized as
/// polynomial and is refused.
pub fn polynomial_invariants(alg: &LieAlgebra, target: usize, max_degree: u32, seed: u64) -> Result<Vec<Poly>> {
    let mut gens: Vec<Poly> = Vec::new();
    if target == 0 {
        return Ok(gens);
    }
    for d in 1..=max_degree {
        let space = invariant_space(alg, d)?;
        let mut basis = decomposables(&gens, d);
        let mut rank = coefficient_rank(&basis);
        for p in space {
            basis.push(p.clone());
            let r = coefficient_rank(&basis);
            if r > rank {
                rank = r;
                gens.push(p);
            } else {
                basis.pop();
            }
        }
        if gens.len() > target {
            return Err(Error::NonPolynomialInvariants(format!(
                "{}: {} generators up to degree {d} exceed the index {target}",
                alg.name(),
                gens.len()
            )));
        }
        if gens.len() == target && jacobian_rank_random(&gens, seed, 3).rank == target {
            return Ok(gens);
        }
    }
    Err(Error::NonPolynomialInvariants(format!(
        "{}: found {} of {target} independent generators up to degree {max_degree}",
        alg.name(),
        gens.len()
    )))
}

/// Generators `h_u` of `S(g_0)^{g_0}` in eigenbasis variables. For the trivial grading these are
/// the given invariants of `g` itself.
pub fn g0_invariants(grading: &Grading, family: &[Poly], seed: u64) -> Result<Vec<Poly>> {
    if grading.order() == 1 {
        return Ok(family.to_vec());
    }
    let comp = grading.component(0);
    if comp.is_empty() {
        return Ok(Vec::new());
    }
    let g0 = grading.algebra().subalgebra(format!("{}_0", grading.original().name()), &comp)?;
    let ind = index(&g0, 30, seed).index;
    let polys = polynomial_invariants(&g0, ind, 6, seed)?;
    Ok(polys.into_iter().map(|p| p.map_vars(|v| Var::new(comp[v.base()], v.t))).collect())
}
