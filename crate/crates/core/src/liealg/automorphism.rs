use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::CycloScalar;

use super::LieAlgebra;

/// Default cap when searching for the order of an automorphism.
pub const DEFAULT_ORDER_CAP: u32 = 24;

/// A finite-order automorphism, stored as a matrix whose columns are the images of the basis.
#[derive(Clone, Debug)]
pub struct Automorphism {
    name: String,
    matrix: Matrix,
    order: u32,
}

impl Automorphism {
    /// Validates the homomorphism property and computes the minimal order.
    pub fn new(algebra: &LieAlgebra, name: impl Into<String>, matrix: Matrix) -> Result<Self> {
        Self::with_cap(algebra, name, matrix, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(algebra: &LieAlgebra, name: impl Into<String>, matrix: Matrix, cap: u32) -> Result<Self> {
        let name = name.into();
        let dim = algebra.dim();
        if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: matrix.len() });
        }
        let image = |j: usize| -> Vec<CycloScalar> { matrix.iter().map(|row| row[j].clone()).collect() };
        let images: Vec<Vec<CycloScalar>> = (0..dim).map(image).collect();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let lhs = linalg::mat_vec(&matrix, &sparse_to_dense(algebra.bracket_basis(i, j), dim));
                let rhs = algebra.bracket(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::InvalidAutomorphism(format!(
                        "{name}: θ[{a}, {b}] ≠ [θ{a}, θ{b}]",
                        a = algebra.label(i),
                        b = algebra.label(j)
                    )));
                }
            }
        }
        let mut power = matrix.clone();
        let mut order = None;
        for k in 1..=cap {
            if linalg::is_identity(&power) {
                order = Some(k);
                break;
            }
            power = linalg::mat_mul(&power, &matrix);
        }
        let order = order.ok_or_else(|| Error::InvalidAutomorphism(format!("{name}: order exceeds cap {cap}")))?;
        Ok(Automorphism { name, matrix, order })
    }

    pub fn identity(algebra: &LieAlgebra) -> Self {
        Automorphism { name: "id".into(), matrix: linalg::identity(algebra.dim()), order: 1 }
    }

    pub(crate) fn from_parts(name: impl Into<String>, matrix: Matrix, order: u32) -> Self {
        Automorphism { name: name.into(), matrix, order }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        linalg::mat_vec(&self.matrix, v)
    }

    pub fn power(&self, k: u32) -> Matrix {
        let mut acc = linalg::identity(self.dim());
        for _ in 0..(k % self.order) {
            acc = linalg::mat_mul(&self.matrix, &acc);
        }
        acc
    }
}

pub(crate) fn sparse_to_dense(v: &[(usize, CycloScalar)], dim: usize) -> Vec<CycloScalar> {
    let mut out = vec![CycloScalar::zero(); dim];
    for (k, c) in v {
        out[*k] += c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::catalog;

    #[test]
    fn catalog_automorphism_orders() {
        let sl2 = catalog::algebra("sl2").unwrap();
        assert_eq!(catalog::automorphism(&sl2, "sl2", "id").unwrap().order(), 1);
        assert_eq!(catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap().order(), 2);
        let sl3 = catalog::algebra("sl3").unwrap();
        assert_eq!(catalog::automorphism(&sl3, "sl3", "outer:negtranspose").unwrap().order(), 2);
        assert_eq!(catalog::automorphism(&sl3, "sl3", "inner:diag(1,1,-1)").unwrap().order(), 2);
    }

    #[test]
    fn non_homomorphism_rejected() {
        let sl2 = catalog::algebra("sl2").unwrap();
        // scaling e alone by 2 breaks [e, f] = h
        let mut m = linalg::identity(3);
        m[0][0] = CycloScalar::from_int(2);
        assert!(matches!(Automorphism::new(&sl2, "bad", m), Err(Error::InvalidAutomorphism(_))));
    }

    #[test]
    fn infinite_order_hits_cap() {
        let sl2 = catalog::algebra("sl2").unwrap();
        // Ad diag(2, 1/2) scales e by 4 and f by 1/4
        let mut m = linalg::identity(3);
        m[0][0] = CycloScalar::from_int(4);
        m[1][1] = CycloScalar::frac(1, 4);
        assert!(Automorphism::new(&sl2, "diag", m).is_err());
    }
}
