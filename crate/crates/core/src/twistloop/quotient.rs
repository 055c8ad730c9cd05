use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liealg::{direct_sum, Grading, LieAlgebra, SparseVec};
use crate::linalg;
use crate::scalars::CycloScalar;
use crate::sympoly::{PoissonStructure, Poly, Var};

use super::TwistedWindow;

/// The loop algebra itself: `[x t^a, y t^b] = [x, y] t^{a+b}` over the eigenbasis.
#[derive(Clone, Debug)]
pub struct LoopStructure {
    grading: Arc<Grading>,
}

impl LoopStructure {
    pub fn new(grading: Arc<Grading>) -> Self {
        LoopStructure { grading }
    }
}

impl PoissonStructure for LoopStructure {
    fn bracket_vars(&self, a: Var, b: Var) -> Result<Vec<(Var, CycloScalar)>> {
        let alg = self.grading.algebra();
        for v in [a, b] {
            if v.base() >= alg.dim() {
                return Err(Error::UnknownVariable(format!("x{}[t^{}]", v.base, v.t)));
            }
        }
        let t = a.t + b.t;
        Ok(alg.bracket_basis(a.base(), b.base()).iter().map(|(k, c)| (Var::new(*k, t), c.clone())).collect())
    }
}

/// The quotient by `t^{-N} − 1`: exponents are reduced into `(−N, 0]`.
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    grading: Arc<Grading>,
    n: i32,
}

impl QuotientStructure {
    pub fn new(grading: Arc<Grading>, n: usize) -> Self {
        QuotientStructure { grading, n: n as i32 }
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    /// Representative of `t` in `(−N, 0]`.
    pub fn reduce_t(&self, t: i32) -> i32 {
        -((-t).rem_euclid(self.n))
    }

    /// Rewrites all exponents into the canonical range.
    pub fn reduce(&self, f: &Poly) -> Poly {
        f.map_vars(|v| Var::new(v.base(), self.reduce_t(v.t)))
    }
}

impl PoissonStructure for QuotientStructure {
    fn bracket_vars(&self, a: Var, b: Var) -> Result<Vec<(Var, CycloScalar)>> {
        let alg = self.grading.algebra();
        for v in [a, b] {
            if v.base() >= alg.dim() || v.t > 0 || v.t <= -self.n {
                return Err(Error::UnknownVariable(format!("x{}[t^{}] outside the quotient", v.base, v.t)));
            }
        }
        let t = self.reduce_t(a.t + b.t);
        Ok(alg.bracket_basis(a.base(), b.base()).iter().map(|(k, c)| (Var::new(*k, t), c.clone())).collect())
    }
}

/// `q[t^{-1}]^θ / (t^{-N} − 1)` as a finite-dimensional Lie algebra.
#[derive(Clone, Debug)]
pub struct CyclicQuotient {
    window: TwistedWindow,
    algebra: LieAlgebra,
    vars: Vec<Var>,
    index: HashMap<Var, usize>,
}

impl CyclicQuotient {
    pub fn window(&self) -> &TwistedWindow {
        &self.window
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Basis element `i` as a loop variable.
    pub fn var(&self, i: usize) -> Var {
        self.vars[i]
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn size(&self) -> usize {
        self.window.k_range().1 as usize + 1
    }

    /// `N / m`.
    pub fn copies(&self) -> usize {
        self.size() / self.window.grading().order() as usize
    }

    pub fn structure(&self) -> QuotientStructure {
        QuotientStructure::new(self.window.grading_arc(), self.size())
    }
}

/// Builds the quotient with basis `x t^{-k}`, `0 ≤ k < N`, `x ∈ q_{k̄}`.
pub fn build_cyclic_quotient(grading: Arc<Grading>, n: usize) -> Result<CyclicQuotient> {
    let window = TwistedWindow::cyclic(grading.clone(), n)?;
    let vars = window.variables();
    let index: HashMap<Var, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let structure = QuotientStructure::new(grading.clone(), n);
    let mut table: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); vars.len()]; vars.len()];
    for (i, a) in vars.iter().enumerate() {
        for (j, b) in vars.iter().enumerate() {
            table[i][j] = structure
                .bracket_vars(*a, *b)?
                .into_iter()
                .map(|(v, c)| {
                    index
                        .get(&v)
                        .map(|k| (*k, c))
                        .ok_or_else(|| Error::InvalidGrading(format!("bracket leaves the quotient at {}", window.label(v))))
                })
                .collect::<Result<_>>()?;
        }
    }
    let labels = vars.iter().map(|v| window.label(*v)).collect();
    let algebra = LieAlgebra::from_table(format!("{}[t]/(t^-{n}-1)", grading.original().name()), labels, table);
    Ok(CyclicQuotient { window, algebra, vars, index })
}

/// Checks that `x t^{-k} ↦ Σ_c ζ̃^{-kc} x#(c+1)` is an isomorphism onto `q^{⊕n}`.
///
/// Returns the first basis pair where the map fails to respect brackets, or `(dim, dim)` if the
/// map is not invertible.
pub fn dft_isomorphism(quotient: &CyclicQuotient, zeta_tilde: &CycloScalar) -> Option<(usize, usize)> {
    let grading = quotient.window().grading();
    let base = grading.algebra();
    let n = quotient.copies();
    let dim = quotient.algebra().dim();
    let target = direct_sum(base, n);
    let inv = zeta_tilde.inverse().ok()?;
    let mut phi = linalg::zeros(dim, dim);
    for i in 0..dim {
        let v = quotient.var(i);
        let k = (-v.t) as u32;
        for c in 0..n {
            phi[c * base.dim() + v.base()][i] = inv.pow(k * c as u32);
        }
    }
    if linalg::rank(&phi) != dim {
        return Some((dim, dim));
    }
    let column = |i: usize| -> Vec<CycloScalar> { phi.iter().map(|r| r[i].clone()).collect() };
    let images: Vec<Vec<CycloScalar>> = (0..dim).map(column).collect();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut lhs = vec![CycloScalar::zero(); dim];
            for (k, c) in quotient.algebra().bracket_basis(i, j) {
                for (r, x) in images[*k].iter().enumerate() {
                    lhs[r] += &(c * x);
                }
            }
            if target.bracket(&images[i], &images[j]) != lhs {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::catalog;
    use crate::liealg::grading_from_automorphism;
    use crate::twistloop::choose_zeta_tilde;

    fn grading(id: &str, auto: &str) -> Arc<Grading> {
        let alg = catalog::algebra(id).unwrap();
        let th = catalog::automorphism(&alg, id, auto).unwrap();
        let zeta = CycloScalar::zeta_power(th.order(), 1);
        Arc::new(grading_from_automorphism(&alg, &th, &zeta).unwrap())
    }

    #[test]
    fn dimensions_and_jacobi() {
        for (id, auto, n, dim) in [("sl2", "id", 1, 3), ("sl2", "id", 2, 6), ("sl2", "inner:diag(1,-1)", 2, 3), ("sl3", "outer:negtranspose", 4, 16)] {
            let q = build_cyclic_quotient(grading(id, auto), n).unwrap();
            assert_eq!(q.algebra().dim(), dim, "{id} {auto} {n}");
            assert_eq!(q.algebra().check_jacobi(), Ok(()));
        }
    }

    #[test]
    fn bad_truncation() {
        assert_eq!(
            build_cyclic_quotient(grading("sl2", "inner:diag(1,-1)"), 3).unwrap_err(),
            Error::BadTruncation { n: 3, m: 2 }
        );
    }

    #[test]
    fn fourier_splitting() {
        for (id, auto, n) in [("sl2", "id", 2), ("sl2", "inner:diag(1,-1)", 4), ("sl3", "outer:negtranspose", 6)] {
            let g = grading(id, auto);
            let q = build_cyclic_quotient(g.clone(), n).unwrap();
            let z = choose_zeta_tilde(g.zeta(), g.order(), n / g.order() as usize).unwrap();
            assert_eq!(dft_isomorphism(&q, &z), None, "{id} {auto} {n}");
        }
    }

    #[test]
    fn wraparound() {
        let g = grading("sl2", "id");
        let s = QuotientStructure::new(g, 3);
        let (e, f) = (Var::new(0, -2), Var::new(1, -2));
        assert_eq!(s.bracket_vars(e, f).unwrap(), vec![(Var::new(2, -1), CycloScalar::one())]);
        assert!(s.bracket_vars(Var::new(0, -3), f).is_err());
    }
}
