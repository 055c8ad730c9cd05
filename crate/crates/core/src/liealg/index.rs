use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg::{self, Matrix};
use crate::scalars::CycloScalar;

use super::{Grading, LieAlgebra};

/// Result of the randomized index computation. `witness` attains the reported rank.
#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub index: usize,
    pub rank: usize,
    pub witness: Vec<i64>,
    pub trials_used: usize,
    pub seed: u64,
}

/// Outcome of the search for a regular covector supported on `q_0^*`.
#[derive(Clone, Debug, Serialize)]
pub struct Q0RegularReport {
    pub found: bool,
    pub index: usize,
    /// Coordinates on the full dual eigenbasis (zero outside degree 0).
    pub witness: Option<Vec<i64>>,
    pub best_rank: usize,
    pub trials_used: usize,
    pub seed: u64,
}

/// `B(ξ)_{ij} = ξ([x_i, x_j])`.
pub fn coadjoint_matrix(algebra: &LieAlgebra, xi: &[CycloScalar]) -> Matrix {
    let dim = algebra.dim();
    let mut b = linalg::zeros(dim, dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut acc = CycloScalar::zero();
            for (k, c) in algebra.bracket_basis(i, j) {
                if !xi[*k].is_zero() {
                    acc += &(c * &xi[*k]);
                }
            }
            b[j][i] = -&acc;
            b[i][j] = acc;
        }
    }
    b
}

pub fn coadjoint_rank(algebra: &LieAlgebra, xi: &[CycloScalar]) -> usize {
    linalg::rank(&coadjoint_matrix(algebra, xi))
}

fn box_bound(trial: usize) -> i64 {
    1i64 << (1 + trial / 4).min(20)
}

fn to_scalars(v: &[i64]) -> Vec<CycloScalar> {
    v.iter().map(|&x| CycloScalar::from_int(x)).collect()
}

/// Largest rank an antisymmetric matrix of this size can have.
fn max_even_rank(dim: usize) -> usize {
    dim - dim % 2
}

/// `dim − max rank B(ξ)` over seeded integer samples in a doubling box.
pub fn index(algebra: &LieAlgebra, trials: usize, seed: u64) -> IndexReport {
    let dim = algebra.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (0usize, vec![0i64; dim]);
    let mut used = 0;
    for t in 0..trials.max(1) {
        used = t + 1;
        let b = box_bound(t);
        let xi: Vec<i64> = (0..dim).map(|_| rng.random_range(-b..=b)).collect();
        let r = coadjoint_rank(algebra, &to_scalars(&xi));
        if r > best.0 || t == 0 {
            best = (r, xi);
        }
        if best.0 == max_even_rank(dim) {
            break;
        }
    }
    IndexReport { index: dim - best.0, rank: best.0, witness: best.1, trials_used: used, seed }
}

/// Whether `dim − rank B(ξ)` equals the given index.
pub fn is_regular(algebra: &LieAlgebra, xi: &[CycloScalar], ind: usize) -> bool {
    algebra.dim() - coadjoint_rank(algebra, xi) == ind
}

/// Searches for a regular ξ in `q_0^*`, the annihilator of `⊕_{i≥1} q_i`. Coordinates refer
/// to the dual of the grading's eigenbasis. A found witness is a proof; a miss is inconclusive.
pub fn check_q0_regular_intersection(grading: &Grading, trials: usize, seed: u64) -> Q0RegularReport {
    let alg = grading.algebra();
    let dim = alg.dim();
    let ind = index(alg, trials, seed).index;
    let q0 = grading.component(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut best_rank = 0;
    let mut used = 0;
    // small coordinates first: unit covectors on q_0 often already work
    let mut candidates: Vec<Vec<i64>> = q0
        .iter()
        .map(|&i| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        })
        .collect();
    for t in 0..trials.max(1) {
        let b = box_bound(t);
        let mut v = vec![0; dim];
        for &i in &q0 {
            v[i] = rng.random_range(-b..=b);
        }
        candidates.push(v);
    }
    for v in candidates {
        used += 1;
        let r = coadjoint_rank(alg, &to_scalars(&v));
        best_rank = best_rank.max(r);
        if dim - r == ind {
            return Q0RegularReport { found: true, index: ind, witness: Some(v), best_rank: r, trials_used: used, seed };
        }
    }
    Q0RegularReport { found: false, index: ind, witness: None, best_rank, trials_used: used, seed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::catalog;
    use crate::liealg::{contract_zero, grading_from_automorphism, Automorphism};

    fn dual(dim: usize, i: usize) -> Vec<CycloScalar> {
        let mut v = vec![CycloScalar::zero(); dim];
        v[i] = CycloScalar::one();
        v
    }

    #[test]
    fn known_indices() {
        assert_eq!(index(&catalog::algebra("sl2").unwrap(), 20, 1).index, 1);
        assert_eq!(index(&catalog::algebra("sl3").unwrap(), 20, 1).index, 2);
        assert_eq!(index(&catalog::algebra("heisenberg3").unwrap(), 20, 1).index, 1);
        assert_eq!(index(&LieAlgebra::abelian("a", 4), 5, 1).index, 4);
    }

    #[test]
    fn regularity_examples() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let h = sl2.index_of("h").unwrap();
        assert!(is_regular(&sl2, &dual(3, h), 1));
        assert!(!is_regular(&sl2, &vec![CycloScalar::zero(); 3], 1));
        let ab = LieAlgebra::abelian("a", 2);
        assert!(is_regular(&ab, &vec![CycloScalar::zero(); 2], 2));
    }

    #[test]
    fn q0_witnesses() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let th = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        let g = grading_from_automorphism(&sl2, &th, &CycloScalar::from_int(-1)).unwrap();
        let rep = check_q0_regular_intersection(&g, 10, 3);
        assert!(rep.found);
        let triv = grading_from_automorphism(&sl2, &Automorphism::identity(&sl2), &CycloScalar::one()).unwrap();
        assert!(check_q0_regular_intersection(&triv, 10, 3).found);
    }

    #[test]
    fn heisenberg_centre_covector_is_regular() {
        // q_0 = centre: z* has rank 2, so dim q^ξ = 1 = ind
        let heis = catalog::algebra("heisenberg3").unwrap();
        let th = catalog::automorphism(&heis, "heisenberg3", "inner:diag(1,-1,1)").unwrap();
        let g = grading_from_automorphism(&heis, &th, &CycloScalar::from_int(-1)).unwrap();
        assert_eq!(g.component(0).len(), 1);
        let rep = check_q0_regular_intersection(&g, 10, 0);
        assert!(rep.found);
    }

    #[test]
    fn contraction_does_not_lower_index() {
        for (id, auto) in [("sl2", "inner:diag(1,-1)"), ("sl3", "outer:negtranspose"), ("sl3", "inner:diag(1,1,-1)")] {
            let alg = catalog::algebra(id).unwrap();
            let th = catalog::automorphism(&alg, id, auto).unwrap();
            let g = grading_from_automorphism(&alg, &th, &CycloScalar::from_int(-1)).unwrap();
            let i0 = index(&contract_zero(&g), 30, 7).index;
            let i = index(&alg, 30, 7).index;
            assert!(i0 >= i);
            // involutions of reductive algebras: equality with the rank
            assert_eq!(i0, i, "{id} {auto}");
        }
    }
}
