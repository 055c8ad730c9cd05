use crate::error::{Error, Result};
use crate::scalars::CycloScalar;

use super::{normalize, Grading, LieAlgebra, SparseVec};

fn filtered(grading: &Grading, name: String, keep: impl Fn(u32, u32) -> bool) -> LieAlgebra {
    let alg = grading.algebra();
    let dim = alg.dim();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if keep(grading.degree(i), grading.degree(j)) {
                table[i][j] = alg.bracket_basis(i, j).clone();
            }
        }
    }
    LieAlgebra::from_table(name, alg.labels().to_vec(), table)
}

/// `[q_i, q_j]_0 = [q_i, q_j]` when `i + j < m`, zero otherwise.
pub fn contract_zero(grading: &Grading) -> LieAlgebra {
    let m = grading.order();
    filtered(grading, format!("{}_(0)", grading.original().name()), |i, j| i + j < m)
}

/// `[q_i, q_j]_∞ = [q_i, q_j]` when `i + j ≥ m`, zero otherwise.
pub fn contract_infinity(grading: &Grading) -> LieAlgebra {
    let m = grading.order();
    filtered(grading, format!("{}_(inf)", grading.original().name()), |i, j| i + j >= m)
}

/// The bracket `a[,] + b[,]_0` on the eigenbasis.
pub fn bracket_pencil(grading: &Grading, a: &CycloScalar, b: &CycloScalar) -> LieAlgebra {
    let alg = grading.algebra();
    let m = grading.order();
    let dim = alg.dim();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let c = if grading.degree(i) + grading.degree(j) < m { a + b } else { a.clone() };
            if c.is_zero() {
                continue;
            }
            table[i][j] = alg.bracket_basis(i, j).iter().map(|(k, s)| (*k, &c * s)).collect();
        }
    }
    LieAlgebra::from_table(format!("{}[{},{}]", alg.name(), a.to_text(), b.to_text()), alg.labels().to_vec(), table)
}

/// Limit `s → 0` of `φ_s^{-1}[φ_s x, φ_s y]` for `φ_s x_a = s^{e_a} x_a`.
///
/// A structure constant `c_{ab}^k` scales by `s^{e_a + e_b − e_k}`: positive powers vanish in
/// the limit, zero powers survive and negative powers mean the limit does not exist.
pub fn contract_via_map(algebra: &LieAlgebra, exponents: &[i64]) -> Result<LieAlgebra> {
    let dim = algebra.dim();
    if exponents.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: exponents.len() });
    }
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let mut v: SparseVec = Vec::new();
            for (k, c) in algebra.bracket_basis(a, b) {
                let p = exponents[a] + exponents[b] - exponents[*k];
                if p < 0 {
                    return Err(Error::NonexistentLimit(a, b));
                }
                if p == 0 {
                    v.push((*k, c.clone()));
                }
            }
            table[a][b] = normalize(v);
        }
    }
    Ok(LieAlgebra::from_table(format!("{}_lim", algebra.name()), algebra.labels().to_vec(), table))
}

/// Exponents of `φ_s` (`x ∈ q_i ↦ s^i x`) on the eigenbasis.
pub fn zero_exponents(grading: &Grading) -> Vec<i64> {
    grading.degrees().iter().map(|&d| d as i64).collect()
}

/// Exponents of `s^m φ_s^{-1}`; degree 0 maps to `m`.
pub fn infinity_exponents(grading: &Grading) -> Vec<i64> {
    let m = grading.order() as i64;
    grading.degrees().iter().map(|&d| m - d as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::catalog;
    use crate::liealg::{grading_from_automorphism, Automorphism};

    fn sl2_involution() -> Grading {
        let sl2 = catalog::algebra("sl2").unwrap();
        let th = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        grading_from_automorphism(&sl2, &th, &CycloScalar::from_int(-1)).unwrap()
    }

    fn same(a: &LieAlgebra, b: &LieAlgebra) -> bool {
        let d = a.dim();
        (0..d).all(|i| (0..d).all(|j| a.bracket_basis(i, j) == b.bracket_basis(i, j)))
    }

    #[test]
    fn trivial_grading_contractions() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let g = grading_from_automorphism(&sl2, &Automorphism::identity(&sl2), &CycloScalar::one()).unwrap();
        assert!(same(&contract_zero(&g), &sl2));
        assert!(contract_infinity(&g).is_abelian());
    }

    #[test]
    fn sl2_infinity_is_heisenberg() {
        let g = sl2_involution();
        let inf = contract_infinity(&g);
        assert_eq!(inf.check_jacobi(), Ok(()));
        let (e, f, h) = (inf.index_of("e").unwrap(), inf.index_of("f").unwrap(), inf.index_of("h").unwrap());
        assert_eq!(inf.bracket_basis(e, f), &vec![(h, CycloScalar::one())]);
        assert!(inf.bracket_basis(h, e).is_empty());
        assert!(inf.bracket_basis(h, f).is_empty());
        // q_0 is central
        for &z in &g.component(0) {
            assert!((0..inf.dim()).all(|j| inf.bracket_basis(z, j).is_empty()));
        }
    }

    #[test]
    fn additivity() {
        for (id, auto) in [("sl2", "inner:diag(1,-1)"), ("sl3", "outer:negtranspose"), ("sl3", "inner:diag(1,1,-1)")] {
            let alg = catalog::algebra(id).unwrap();
            let th = catalog::automorphism(&alg, id, auto).unwrap();
            let g = grading_from_automorphism(&alg, &th, &CycloScalar::from_int(-1)).unwrap();
            let (z, i) = (contract_zero(&g), contract_infinity(&g));
            let d = g.dim();
            for a in 0..d {
                for b in 0..d {
                    let mut sum = z.bracket_basis(a, b).clone();
                    sum.extend(i.bracket_basis(a, b).iter().cloned());
                    assert_eq!(normalize(sum), *g.algebra().bracket_basis(a, b));
                }
            }
            assert_eq!(z.check_jacobi(), Ok(()));
            assert_eq!(i.check_jacobi(), Ok(()));
        }
    }

    #[test]
    fn pencil_examples() {
        let g = sl2_involution();
        assert!(same(&bracket_pencil(&g, &CycloScalar::one(), &CycloScalar::zero()), g.algebra()));
        assert!(same(&bracket_pencil(&g, &CycloScalar::zero(), &CycloScalar::one()), &contract_zero(&g)));
        let p = bracket_pencil(&g, &CycloScalar::one(), &CycloScalar::one());
        let (e, f, h) = (p.index_of("e").unwrap(), p.index_of("f").unwrap(), p.index_of("h").unwrap());
        assert_eq!(p.bracket_basis(e, f), &vec![(h, CycloScalar::one())]);
        assert_eq!(p.bracket_basis(h, e), &vec![(e, CycloScalar::from_int(4))]);
        assert_eq!(p.bracket_basis(h, f), &vec![(f, CycloScalar::from_int(-4))]);
        assert_eq!(p.check_jacobi(), Ok(()));
    }

    #[test]
    fn via_map_matches_contractions() {
        let g = sl2_involution();
        assert!(same(&contract_via_map(g.algebra(), &zero_exponents(&g)).unwrap(), &contract_zero(&g)));
        assert!(same(&contract_via_map(g.algebra(), &infinity_exponents(&g)).unwrap(), &contract_infinity(&g)));
        assert!(same(&contract_via_map(g.algebra(), &[0, 0, 0]).unwrap(), g.algebra()));
    }

    #[test]
    fn via_map_reports_missing_limit() {
        let g = sl2_involution();
        let neg: Vec<i64> = zero_exponents(&g).iter().map(|e| -e).collect();
        assert!(matches!(contract_via_map(g.algebra(), &neg), Err(Error::NonexistentLimit(_, _))));
    }
}
