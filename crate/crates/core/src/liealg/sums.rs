use crate::error::Result;
use crate::linalg;

use super::{contract_infinity, Automorphism, Grading, LieAlgebra, SparseVec};

/// `q^{⊕n}`; basis index `c·dim + b` is `x_b` in copy `c`, labelled `x_b#(c+1)`.
pub fn direct_sum(algebra: &LieAlgebra, n: usize) -> LieAlgebra {
    let dim = algebra.dim();
    let total = dim * n;
    let mut labels = Vec::with_capacity(total);
    let mut table = vec![vec![Vec::new(); total]; total];
    for c in 0..n {
        for b in 0..dim {
            labels.push(if n == 1 { algebra.label(b).to_string() } else { format!("{}#{}", algebra.label(b), c + 1) });
            for b2 in 0..dim {
                table[c * dim + b][c * dim + b2] =
                    algebra.bracket_basis(b, b2).iter().map(|(k, s)| (c * dim + k, s.clone())).collect();
            }
        }
    }
    let name = if n == 1 { algebra.name().to_string() } else { format!("{}^{}", algebra.name(), n) };
    LieAlgebra::from_table(name, labels, table)
}

/// `θ̃(y_1, …, y_n) = (y_n, θ y_1, y_2, …, y_{n−1})` on `q^{⊕n}`; its order is `n·m`.
pub fn cyclic_twist(algebra: &LieAlgebra, theta: &Automorphism, n: usize) -> Result<Automorphism> {
    let dim = algebra.dim();
    let sum = direct_sum(algebra, n);
    let mut m = linalg::zeros(dim * n, dim * n);
    for c in 0..n {
        let target = (c + 1) % n;
        for b in 0..dim {
            for r in 0..dim {
                let v = if c == 0 {
                    theta.matrix()[r][b].clone()
                } else if r == b {
                    crate::scalars::CycloScalar::one()
                } else {
                    continue;
                };
                m[target * dim + r][c * dim + b] = v;
            }
        }
    }
    let cap = (n as u32 * theta.order()).max(super::automorphism::DEFAULT_ORDER_CAP);
    Automorphism::with_cap(&sum, format!("twist({},{n})", theta.name()), m, cap)
}

/// `g̃ = g_0 ⋉ g_(∞)`: a copy of `g_0` (labels primed) acting on the contraction at infinity.
pub fn semidirect_g0_ginf(grading: &Grading) -> LieAlgebra {
    let alg = grading.algebra();
    let inf = contract_infinity(grading);
    let q0 = grading.component(0);
    let d0 = q0.len();
    let dim = alg.dim();
    let total = d0 + dim;
    let mut labels: Vec<String> = q0.iter().map(|&i| format!("{}'", alg.label(i))).collect();
    labels.extend(alg.labels().iter().cloned());
    let mut table: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); total]; total];
    let pos0 = |k: usize| q0.iter().position(|&x| x == k).expect("g_0 is a subalgebra");
    for (a, &i) in q0.iter().enumerate() {
        for (b, &j) in q0.iter().enumerate() {
            table[a][b] = alg.bracket_basis(i, j).iter().map(|(k, s)| (pos0(*k), s.clone())).collect();
        }
        for j in 0..dim {
            let v: SparseVec = alg.bracket_basis(i, j).iter().map(|(k, s)| (d0 + k, s.clone())).collect();
            table[d0 + j][a] = v.iter().map(|(k, s)| (*k, -s)).collect();
            table[a][d0 + j] = v;
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            table[d0 + i][d0 + j] = inf.bracket_basis(i, j).iter().map(|(k, s)| (d0 + k, s.clone())).collect();
        }
    }
    LieAlgebra::from_table(format!("{}~", grading.original().name()), labels, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::catalog;
    use crate::liealg::{grading_from_automorphism, index};
    use crate::scalars::CycloScalar;

    #[test]
    fn twist_orders() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let id = Automorphism::identity(&sl2);
        assert_eq!(cyclic_twist(&sl2, &id, 1).unwrap().order(), 1);
        assert_eq!(cyclic_twist(&sl2, &id, 2).unwrap().order(), 2);
        let inv = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        assert_eq!(cyclic_twist(&sl2, &inv, 1).unwrap().matrix(), inv.matrix());
        assert_eq!(cyclic_twist(&sl2, &inv, 2).unwrap().order(), 4);
        assert_eq!(cyclic_twist(&sl2, &inv, 3).unwrap().order(), 6);
        assert_eq!(direct_sum(&sl2, 3).check_jacobi(), Ok(()));
    }

    #[test]
    fn twisted_components_match_original() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let inv = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        let r = direct_sum(&sl2, 2);
        let tw = cyclic_twist(&sl2, &inv, 2).unwrap();
        let g = grading_from_automorphism(&r, &tw, &CycloScalar::zeta_power(4, 1)).unwrap();
        // r_{2k+i} has the dimension of q_i
        assert_eq!(g.component(0).len(), 1);
        assert_eq!(g.component(2).len(), 1);
        assert_eq!(g.component(1).len(), 2);
        assert_eq!(g.component(3).len(), 2);
    }

    #[test]
    fn semidirect_product_of_sl2() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let inv = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        let g = grading_from_automorphism(&sl2, &inv, &CycloScalar::from_int(-1)).unwrap();
        let t = semidirect_g0_ginf(&g);
        assert_eq!(t.dim(), 4);
        assert_eq!(t.check_jacobi(), Ok(()));
        let (hp, e, f, h) =
            (t.index_of("h'").unwrap(), t.index_of("e").unwrap(), t.index_of("f").unwrap(), t.index_of("h").unwrap());
        assert_eq!(t.bracket_basis(hp, e), &vec![(e, CycloScalar::from_int(2))]);
        assert_eq!(t.bracket_basis(hp, f), &vec![(f, CycloScalar::from_int(-2))]);
        assert_eq!(t.bracket_basis(e, f), &vec![(h, CycloScalar::one())]);
        assert_eq!(index(&t, 20, 1).index, 2);
    }
}
