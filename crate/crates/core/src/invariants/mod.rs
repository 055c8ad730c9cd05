//! Symmetric invariants of catalog algebras and their θ-eigenvector resolutions.

pub mod catalog;
pub(crate) mod solve;

pub use solve::{g0_invariants, polynomial_invariants};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{Automorphism, Grading, LieAlgebra};
use crate::linalg::{self, Matrix};
use crate::scalars::CycloScalar;
use crate::sympoly::{jacobian_rank_random, poisson_bracket, theta_eigen_split, Poly, Var};

/// One generator of `S(g)^g`.
#[derive(Clone, Debug)]
pub struct InvariantGenerator {
    pub name: String,
    pub poly: Poly,
    pub degree: u32,
    /// `θ(F) = ζ^ℓ F` once an automorphism is attached.
    pub ell: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct InvariantFamily {
    pub algebra: String,
    pub generators: Vec<InvariantGenerator>,
}

impl InvariantFamily {
    pub fn polys(&self) -> Vec<Poly> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    /// First `(generator, basis index)` with `{F, x} ≠ 0`.
    pub fn check_invariance(&self, algebra: &LieAlgebra) -> Result<Option<(usize, usize)>> {
        for (i, g) in self.generators.iter().enumerate() {
            if let Some(b) = first_non_central(algebra, &g.poly)? {
                return Ok(Some((i, b)));
            }
        }
        Ok(None)
    }
}

/// Metadata for a case kept out of computational scope.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeMetadata {
    pub algebra: &'static str,
    pub g0: &'static str,
    pub degrees: &'static [u32],
    pub g0_degrees: &'static [u32],
    pub note: &'static str,
}

pub fn e6_metadata() -> DegreeMetadata {
    DegreeMetadata {
        algebra: "E6",
        g0: "so10 + so2",
        degrees: &[2, 5, 6, 8, 9, 12],
        g0_degrees: &[1, 2, 4, 5, 6, 8],
        note: "no symbolic generators shipped; no good generating system exists for this involution",
    }
}

pub(crate) fn first_non_central(algebra: &LieAlgebra, f: &Poly) -> Result<Option<usize>> {
    for b in 0..algebra.dim() {
        if !poisson_bracket(algebra, f, &Poly::var(Var::plain(b)))?.is_zero() {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Killing form `tr(ad x ad y)`.
pub fn killing_form(algebra: &LieAlgebra) -> Matrix {
    let ads: Vec<Matrix> = (0..algebra.dim()).map(|i| algebra.ad_matrix(i)).collect();
    let n = algebra.dim();
    let mut g = linalg::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let p = linalg::mat_mul(&ads[i], &ads[j]);
            let mut tr = CycloScalar::zero();
            for (k, row) in p.iter().enumerate() {
                tr += &row[k];
            }
            g[j][i] = tr.clone();
            g[i][j] = tr;
        }
    }
    g
}

/// Gram matrix of the trace form of a matrix realization.
pub fn trace_form(id: &str) -> Result<Matrix> {
    let (_, mats) = catalog::matrix_basis(id).ok_or_else(|| Error::UnknownCatalog(id.to_string()))?;
    let n = mats.len();
    let mut g = linalg::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let p = crate::liealg::mat_mul_q(&mats[i], &mats[j]);
            let tr: crate::scalars::Rational = (0..p.len()).map(|k| p[k][k].clone()).sum();
            g[i][j] = CycloScalar::from_rational(tr);
        }
    }
    Ok(g)
}

/// `Σ B^{ij} x_i x_j` with `B^{ij}` the inverse Gram matrix of an invariant form.
pub fn casimir(algebra: &LieAlgebra, form: &Matrix) -> Result<Poly> {
    let n = algebra.dim();
    if form.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: form.len() });
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut acc = CycloScalar::zero();
                for (k, c) in algebra.bracket_basis(x, y) {
                    acc += &(c * &form[*k][z]);
                }
                for (k, c) in algebra.bracket_basis(x, z) {
                    acc += &(c * &form[y][*k]);
                }
                if !acc.is_zero() {
                    return Err(Error::NonInvariantForm);
                }
            }
        }
    }
    let inv = linalg::inverse(form).map_err(|_| Error::DegenerateForm)?;
    let mut f = Poly::zero();
    for (i, row) in inv.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            f.add_assign(&Poly::var(Var::plain(i)).mul(&Poly::var(Var::plain(j))).scalar_mul(c));
        }
    }
    if first_non_central(algebra, &f)?.is_some() {
        return Err(Error::NonInvariantForm);
    }
    Ok(f)
}

fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(CycloScalar::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let t = m[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Characteristic-polynomial generators of `S(sl_n)^{sl_n}`, degrees `2..=n`, in the catalog basis.
///
/// The generic element is `M = Σ x_b B^b` with `B^b` dual to the basis under the trace form, and
/// `F_d = (−1)^{d+1} e_d(M)`, where `e_d` is the sum of principal `d × d` minors.
pub fn charpoly_invariants(n: usize) -> Result<InvariantFamily> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidAlgebra(format!("charpoly invariants need 2 ≤ n ≤ 4, got {n}")));
    }
    let id = format!("sl{n}");
    let alg = catalog::algebra(&id)?;
    let (_, mats) = catalog::sln_basis(n);
    let gram = trace_form(&id)?;
    let gram_inv = linalg::inverse(&gram)?;
    let dim = mats.len();
    // dual basis B^b = Σ_a (G^{-1})_{ab} B_a
    let mut generic: Vec<Vec<Poly>> = vec![vec![Poly::zero(); n]; n];
    for b in 0..dim {
        let xb = Poly::var(Var::plain(b));
        for (a, mat) in mats.iter().enumerate() {
            let c = &gram_inv[a][b];
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    if !mat[i][j].is_zero() {
                        let s = c * &CycloScalar::from_rational(mat[i][j].clone());
                        generic[i][j].add_assign(&xb.scalar_mul(&s));
                    }
                }
            }
        }
    }
    let mut generators = Vec::new();
    for d in 2..=n {
        let mut ed = Poly::zero();
        for s in subsets(n, d) {
            let minor: Vec<Vec<Poly>> = s.iter().map(|&i| s.iter().map(|&j| generic[i][j].clone()).collect()).collect();
            ed.add_assign(&det(&minor));
        }
        let f = if d % 2 == 0 { ed.neg() } else { ed };
        generators.push(InvariantGenerator { name: format!("F{d}"), poly: f, degree: d as u32, ell: None });
    }
    let fam = InvariantFamily { algebra: id, generators };
    if let Some((i, b)) = fam.check_invariance(&alg)? {
        return Err(Error::ResolutionFailed(format!("charpoly generator {i} not central against basis {b}")));
    }
    Ok(fam)
}

/// Generators of `S(L)^L` for a catalog algebra, in the catalog basis.
pub fn catalog_family(id: &str) -> Result<InvariantFamily> {
    match id {
        "sl2" | "sl3" | "sl4" => charpoly_invariants(id[2..].parse().unwrap()),
        "sl2xsl2" => {
            let base = charpoly_invariants(2)?.generators.remove(0).poly;
            let generators = (0..2)
                .map(|c| InvariantGenerator {
                    name: format!("F2#{}", c + 1),
                    poly: base.map_vars(|v| Var::new(v.base() + 3 * c, v.t)),
                    degree: 2,
                    ell: None,
                })
                .collect();
            Ok(InvariantFamily { algebra: id.into(), generators })
        }
        "so3" => {
            let alg = catalog::algebra(id)?;
            let f = casimir(&alg, &trace_form(id)?)?.scalar_mul(&CycloScalar::from_int(-2));
            Ok(InvariantFamily {
                algebra: id.into(),
                generators: vec![InvariantGenerator { name: "F2".into(), poly: f, degree: 2, ell: None }],
            })
        }
        _ => {
            let alg = catalog::algebra(id)?;
            let ind = crate::liealg::index(&alg, 20, 0).index;
            let polys = polynomial_invariants(&alg, ind, 4, 0)?;
            let generators = polys
                .into_iter()
                .enumerate()
                .map(|(i, p)| InvariantGenerator { name: format!("F{}", i + 1), degree: p.degree(), poly: p, ell: None })
                .collect();
            Ok(InvariantFamily { algebra: id.into(), generators })
        }
    }
}

/// Replaces each generator by θ-eigencomponents and keeps an independent set of the original size.
pub fn attach_automorphism(fam: &InvariantFamily, theta: &Automorphism, zeta: &CycloScalar) -> Result<InvariantFamily> {
    let r = fam.generators.len();
    let mut candidates: Vec<InvariantGenerator> = Vec::new();
    for g in &fam.generators {
        for (u, p) in theta_eigen_split(&g.poly, theta, zeta)? {
            candidates.push(InvariantGenerator { name: g.name.clone(), poly: p, degree: g.degree, ell: Some(u) });
        }
    }
    candidates.sort_by_key(|g| g.degree);
    let mut chosen: Vec<InvariantGenerator> = Vec::new();
    for c in candidates {
        let mut trial: Vec<Poly> = chosen.iter().map(|g| g.poly.clone()).collect();
        trial.push(c.poly.clone());
        if jacobian_rank_random(&trial, 0x5eed, 3).rank == trial.len() {
            chosen.push(c);
        }
        if chosen.len() == r {
            break;
        }
    }
    if chosen.len() < r {
        return Err(Error::ResolutionFailed(format!(
            "only {} of {r} independent θ-eigencomponents found",
            chosen.len()
        )));
    }
    Ok(InvariantFamily { algebra: fam.algebra.clone(), generators: chosen })
}

/// Rewrites a polynomial in original-basis variables in terms of the grading's eigenbasis.
pub fn to_eigenbasis(f: &Poly, grading: &Grading) -> Result<Poly> {
    let inv = linalg::inverse(grading.change_of_basis())?;
    Ok(f.apply_linear(&inv))
}

/// A θ-eigenvector family moved to the eigenbasis of `grading`.
pub fn family_in_eigenbasis(fam: &InvariantFamily, grading: &Grading) -> Result<InvariantFamily> {
    let generators = fam
        .generators
        .iter()
        .map(|g| Ok(InvariantGenerator { poly: to_eigenbasis(&g.poly, grading)?, ..g.clone() }))
        .collect::<Result<_>>()?;
    Ok(InvariantFamily { algebra: fam.algebra.clone(), generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::grading_from_automorphism;

    fn v(i: usize) -> Poly {
        Poly::var(Var::plain(i))
    }

    #[test]
    fn sl2_charpoly_is_ef_plus_quarter_h2() {
        let fam = charpoly_invariants(2).unwrap();
        let expected = v(0).mul(&v(1)).add(&v(2).pow(2).scalar_mul(&CycloScalar::frac(1, 4)));
        assert_eq!(fam.generators[0].poly, expected);
    }

    #[test]
    fn charpoly_degrees() {
        assert_eq!(charpoly_invariants(3).unwrap().degrees(), vec![2, 3]);
        assert_eq!(charpoly_invariants(4).unwrap().degrees(), vec![2, 3, 4]);
        assert!(charpoly_invariants(5).is_err());
    }

    #[test]
    fn casimir_examples() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let c = casimir(&sl2, &trace_form("sl2").unwrap()).unwrap();
        assert_eq!(c, charpoly_invariants(2).unwrap().generators[0].poly.scalar_mul(&CycloScalar::from_int(2)));
        let so3 = catalog_family("so3").unwrap();
        let sq = v(0).pow(2).add(&v(1).pow(2)).add(&v(2).pow(2));
        assert_eq!(so3.generators[0].poly, sq);
        let ab = LieAlgebra::abelian("a", 2);
        assert_eq!(casimir(&ab, &linalg::identity(2)).unwrap(), v(0).pow(2).add(&v(1).pow(2)));
        assert!(matches!(casimir(&ab, &linalg::zeros(2, 2)), Err(Error::DegenerateForm)));
        assert!(matches!(casimir(&sl2, &linalg::identity(3)), Err(Error::NonInvariantForm)));
    }

    #[test]
    fn families_are_invariant() {
        for id in catalog::ids() {
            let alg = catalog::algebra(id).unwrap();
            let fam = catalog_family(id).unwrap();
            assert_eq!(fam.check_invariance(&alg).unwrap(), None, "{id}");
            let ind = crate::liealg::index(&alg, 20, 0).index;
            assert_eq!(fam.generators.len(), ind, "{id}");
            assert_eq!(jacobian_rank_random(&fam.polys(), 1, 3).rank, ind, "{id}");
        }
    }

    #[test]
    fn attach_examples() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let th = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        let fam = attach_automorphism(&charpoly_invariants(2).unwrap(), &th, &CycloScalar::from_int(-1)).unwrap();
        assert_eq!(fam.generators[0].ell, Some(0));
        let sl3 = catalog::algebra("sl3").unwrap();
        let th = catalog::automorphism(&sl3, "sl3", "outer:negtranspose").unwrap();
        let fam = attach_automorphism(&charpoly_invariants(3).unwrap(), &th, &CycloScalar::from_int(-1)).unwrap();
        let ells: Vec<_> = fam.generators.iter().map(|g| g.ell).collect();
        assert_eq!(ells, vec![Some(0), Some(1)]);
        let id = Automorphism::identity(&sl3);
        let same = attach_automorphism(&charpoly_invariants(3).unwrap(), &id, &CycloScalar::one()).unwrap();
        assert_eq!(same.polys(), charpoly_invariants(3).unwrap().polys());
    }

    #[test]
    fn eigenbasis_weights_match_ell() {
        let sl3 = catalog::algebra("sl3").unwrap();
        let th = catalog::automorphism(&sl3, "sl3", "outer:negtranspose").unwrap();
        let minus = CycloScalar::from_int(-1);
        let g = grading_from_automorphism(&sl3, &th, &minus).unwrap();
        let fam = attach_automorphism(&charpoly_invariants(3).unwrap(), &th, &minus).unwrap();
        let fam = family_in_eigenbasis(&fam, &g).unwrap();
        for gen in &fam.generators {
            for (m, _) in gen.poly.terms() {
                assert_eq!(m.weight(|v| g.degree(v.base()) as i64) % 2, gen.ell.unwrap() as i64);
            }
            assert_eq!(first_non_central(g.algebra(), &gen.poly).unwrap(), None);
        }
    }

    #[test]
    fn e6_is_metadata_only() {
        let md = e6_metadata();
        assert_eq!(md.degrees, &[2, 5, 6, 8, 9, 12]);
        assert_eq!(md.g0_degrees, &[1, 2, 4, 5, 6, 8]);
    }
}
