//! Finite-dimensional Lie algebras given by structure constants, their finite-order
//! automorphisms, periodic gradings, contractions and index computations.

mod automorphism;
mod contraction;
mod grading;
mod index;
mod sums;

pub use automorphism::{Automorphism, DEFAULT_ORDER_CAP};
pub use contraction::{
    bracket_pencil, contract_infinity, contract_via_map, contract_zero, infinity_exponents, zero_exponents,
};
pub use grading::{eigen_projectors, grading_from_automorphism, is_primitive_root, Grading};
pub use index::{
    check_q0_regular_intersection, coadjoint_matrix, coadjoint_rank, index, is_regular, IndexReport, Q0RegularReport,
};
pub use sums::{cyclic_twist, direct_sum, semidirect_g0_ginf};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::{CycloScalar, Rational};

/// Sparse linear combination of basis elements.
pub type SparseVec = Vec<(usize, CycloScalar)>;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
}

/// First failure reported by [`LieAlgebra::check_jacobi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureFailure {
    Antisymmetry(usize, usize),
    Jacobi(usize, usize, usize),
}

impl LieAlgebra {
    /// Builds an algebra from bracket entries `[x_i, x_j] = Σ c x_k`.
    ///
    /// Entries for `(j, i)` that are not listed explicitly are filled in by antisymmetry.
    pub fn from_brackets(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, SparseVec)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        let mut given = vec![vec![false; dim]; dim];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim || v.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::InvalidAlgebra(format!("bracket index out of range in ({i}, {j})")));
            }
            table[i][j] = normalize(v);
            given[i][j] = true;
        }
        for i in 0..dim {
            for j in 0..dim {
                if given[i][j] && !given[j][i] {
                    table[j][i] = table[i][j].iter().map(|(k, c)| (*k, -c)).collect();
                    given[j][i] = true;
                }
            }
        }
        Ok(LieAlgebra { name: name.into(), labels, table })
    }

    pub(crate) fn from_table(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<SparseVec>>) -> Self {
        let table = table.into_iter().map(|row| row.into_iter().map(normalize).collect()).collect();
        LieAlgebra { name: name.into(), labels, table }
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        let labels = (0..dim).map(|i| format!("x{}", i + 1)).collect();
        LieAlgebra { name: name.into(), labels, table: vec![vec![Vec::new(); dim]; dim] }
    }

    /// Builds the Lie algebra spanned by square matrices under the commutator.
    pub fn from_matrix_basis(name: impl Into<String>, labels: Vec<String>, basis: &[Vec<Vec<Rational>>]) -> Result<Self> {
        let dim = basis.len();
        if labels.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: labels.len() });
        }
        let flat: Vec<Vec<CycloScalar>> = basis.iter().map(|m| flatten(m)).collect();
        let coord_matrix = linalg::transpose(&flat);
        if linalg::rank(&coord_matrix) != dim {
            return Err(Error::InvalidAlgebra("matrix basis is linearly dependent".into()));
        }
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let c = commutator(&basis[i], &basis[j]);
                let coords = linalg::solve(&coord_matrix, &flatten(&c))
                    .ok_or_else(|| Error::InvalidAlgebra(format!("[{}, {}] leaves the span", labels[i], labels[j])))?;
                let v: SparseVec = coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                table[j][i] = v.iter().map(|(k, c)| (*k, -c)).collect();
                table[i][j] = v;
            }
        }
        Ok(LieAlgebra { name: name.into(), labels, table })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(|v| v.is_empty()))
    }

    /// Bracket of two dense vectors.
    pub fn bracket(&self, u: &[CycloScalar], v: &[CycloScalar]) -> Vec<CycloScalar> {
        let dim = self.dim();
        let mut out = vec![CycloScalar::zero(); dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (k, s) in &self.table[i][j] {
                    out[*k] += &(&c * s);
                }
            }
        }
        out
    }

    /// Checks antisymmetry on all pairs and the Jacobi identity on all basis triples.
    pub fn check_jacobi(&self) -> std::result::Result<(), StructureFailure> {
        let dim = self.dim();
        for i in 0..dim {
            if !self.table[i][i].is_empty() {
                return Err(StructureFailure::Antisymmetry(i, i));
            }
            for j in (i + 1)..dim {
                let a = &self.table[i][j];
                let b: SparseVec = self.table[j][i].iter().map(|(k, c)| (*k, -c)).collect();
                if normalize(a.clone()) != normalize(b) {
                    return Err(StructureFailure::Antisymmetry(i, j));
                }
            }
        }
        // With antisymmetry in place, triples with repeated indices hold automatically.
        let mut acc: Vec<(usize, CycloScalar)> = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    acc.clear();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (x, s) in &self.table[a][b] {
                            for (y, r) in &self.table[*x][c] {
                                acc.push((*y, s * r));
                            }
                        }
                    }
                    if acc.is_empty() {
                        continue;
                    }
                    acc.sort_by_key(|(y, _)| *y);
                    let mut start = 0;
                    while start < acc.len() {
                        let mut end = start;
                        let mut sum = CycloScalar::zero();
                        while end < acc.len() && acc[end].0 == acc[start].0 {
                            sum += &acc[end].1;
                            end += 1;
                        }
                        if !sum.is_zero() {
                            return Err(StructureFailure::Jacobi(i, j, k));
                        }
                        start = end;
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `ad x_i` in the basis (columns are images of basis vectors).
    pub fn ad_matrix(&self, i: usize) -> Matrix {
        let dim = self.dim();
        let mut m = linalg::zeros(dim, dim);
        for j in 0..dim {
            for (k, c) in &self.table[i][j] {
                m[*k][j] = c.clone();
            }
        }
        m
    }

    /// Applies a basis change: `columns` are the new basis vectors in old coordinates.
    pub fn change_basis(&self, name: impl Into<String>, labels: Vec<String>, columns: &Matrix) -> Result<Self> {
        let dim = self.dim();
        let inv = linalg::inverse(columns)?;
        let cols: Vec<Vec<CycloScalar>> = (0..dim).map(|a| columns.iter().map(|row| row[a].clone()).collect()).collect();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in (a + 1)..dim {
                let v = self.bracket(&cols[a], &cols[b]);
                let coords = linalg::mat_vec(&inv, &v);
                let sv: SparseVec = coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                table[b][a] = sv.iter().map(|(k, c)| (*k, -c)).collect();
                table[a][b] = sv;
            }
        }
        Ok(LieAlgebra { name: name.into(), labels, table })
    }

    /// Subalgebra spanned by a subset of basis vectors, if closed under the bracket.
    pub fn subalgebra(&self, name: impl Into<String>, indices: &[usize]) -> Result<Self> {
        let pos = |k: usize| indices.iter().position(|&x| x == k);
        let mut table = vec![vec![Vec::new(); indices.len()]; indices.len()];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                let mut v = Vec::new();
                for (k, c) in &self.table[i][j] {
                    let p = pos(*k).ok_or_else(|| {
                        Error::InvalidAlgebra(format!("[{}, {}] leaves the subspace", self.labels[i], self.labels[j]))
                    })?;
                    v.push((p, c.clone()));
                }
                table[a][b] = v;
            }
        }
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(LieAlgebra { name: name.into(), labels, table })
    }

    /// Every nonzero structure constant as `(i, j, [(k, c)])` with `i < j`.
    pub fn bracket_entries(&self) -> Vec<(usize, usize, SparseVec)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                if !self.table[i][j].is_empty() {
                    out.push((i, j, self.table[i][j].clone()));
                }
            }
        }
        out
    }

    /// Largest cyclotomic order among the structure constants.
    pub fn scalar_order(&self) -> u32 {
        let mut m = 1;
        for row in &self.table {
            for v in row {
                for (_, c) in v {
                    m = crate::scalars::lcm(m, c.order());
                }
            }
        }
        m
    }
}

pub(crate) fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(k, _)| *k);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn flatten(m: &[Vec<Rational>]) -> Vec<CycloScalar> {
    m.iter().flat_map(|row| row.iter().map(|x| CycloScalar::from_rational(x.clone()))).collect()
}

pub(crate) fn mat_mul_q(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::from_integer(0.into()); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == Rational::from_integer(0.into()) {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub(crate) fn commutator(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ab = mat_mul_q(a, b);
    let ba = mat_mul_q(b, a);
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::catalog;

    fn sv(v: &[(usize, i64)]) -> SparseVec {
        v.iter().map(|&(k, c)| (k, CycloScalar::from_int(c))).collect()
    }

    fn sl2_broken() -> LieAlgebra {
        // basis e, f, h
        LieAlgebra::from_brackets(
            "sl2-broken",
            vec!["e".into(), "f".into(), "h".into()],
            vec![(2, 0, sv(&[(0, 2)])), (2, 1, sv(&[(1, -2)])), (0, 1, sv(&[(0, 1)]))],
        )
        .unwrap()
    }

    #[test]
    fn sl2_satisfies_jacobi() {
        let sl2 = catalog::algebra("sl2").unwrap();
        assert_eq!(sl2.check_jacobi(), Ok(()));
        assert_eq!(sl2.bracket_basis(0, 1), &sv(&[(2, 1)]));
        assert_eq!(sl2.bracket_basis(2, 0), &sv(&[(0, 2)]));
    }

    #[test]
    fn broken_sl2_fails_on_efh() {
        assert_eq!(sl2_broken().check_jacobi(), Err(StructureFailure::Jacobi(0, 1, 2)));
    }

    #[test]
    fn abelian_is_fine() {
        assert_eq!(LieAlgebra::abelian("a4", 4).check_jacobi(), Ok(()));
    }

    #[test]
    fn inconsistent_antisymmetry_detected() {
        let l = LieAlgebra::from_brackets(
            "bad",
            vec!["a".into(), "b".into()],
            vec![(0, 1, sv(&[(0, 1)])), (1, 0, sv(&[(0, 1)]))],
        )
        .unwrap();
        assert_eq!(l.check_jacobi(), Err(StructureFailure::Antisymmetry(0, 1)));
    }

    #[test]
    fn matrix_algebras_are_lie() {
        for id in ["sl2", "sl3", "sl4", "heisenberg3", "sl2xsl2", "so3"] {
            let l = catalog::algebra(id).unwrap();
            assert_eq!(l.check_jacobi(), Ok(()), "{id}");
        }
    }
}
