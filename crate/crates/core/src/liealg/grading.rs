use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::CycloScalar;

use super::{Automorphism, LieAlgebra};

/// A ℤ_m-grading, stored through a θ-eigenbasis of the algebra.
///
/// `algebra()` is the algebra rewritten in the eigenbasis; every downstream computation uses
/// it, so `degree(i)` is defined for every basis index. Degrees are the representatives
/// `{0, …, m−1}`.
#[derive(Clone, Debug)]
pub struct Grading {
    order: u32,
    zeta: CycloScalar,
    original: LieAlgebra,
    algebra: LieAlgebra,
    degrees: Vec<u32>,
    change: Matrix,
}

impl Grading {
    /// The trivial grading (m = 1) in the given basis.
    pub fn trivial(algebra: &LieAlgebra) -> Self {
        Grading {
            order: 1,
            zeta: CycloScalar::one(),
            original: algebra.clone(),
            algebra: algebra.clone(),
            degrees: vec![0; algebra.dim()],
            change: linalg::identity(algebra.dim()),
        }
    }

    /// A grading declared by per-basis degrees, without an automorphism. Use
    /// [`Grading::validate`] to check the bracket condition.
    pub fn from_degrees(algebra: &LieAlgebra, order: u32, degrees: Vec<u32>, zeta: CycloScalar) -> Result<Self> {
        if degrees.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), got: degrees.len() });
        }
        if degrees.iter().any(|&d| d >= order) {
            return Err(Error::InvalidGrading(format!("degrees must lie in 0..{order}")));
        }
        Ok(Grading {
            order,
            zeta,
            original: algebra.clone(),
            algebra: algebra.clone(),
            degrees,
            change: linalg::identity(algebra.dim()),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn zeta(&self) -> &CycloScalar {
        &self.zeta
    }

    /// The algebra in the eigenbasis.
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn original(&self) -> &LieAlgebra {
        &self.original
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Degrees for the grading of θ^{-1} with the same ζ: `ī ↦ (m − ī) mod m`.
    pub fn inverse_degrees(&self) -> Vec<u32> {
        self.degrees.iter().map(|&d| (self.order - d) % self.order).collect()
    }

    /// Basis indices of the component of the given degree.
    pub fn component(&self, degree: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == degree).collect()
    }

    /// Columns are the eigenbasis vectors in the original coordinates.
    pub fn change_of_basis(&self) -> &Matrix {
        &self.change
    }

    /// The automorphism in the eigenbasis: `x ↦ ζ^{deg x} x`.
    pub fn automorphism(&self) -> Automorphism {
        let dim = self.dim();
        let mut m = linalg::zeros(dim, dim);
        for i in 0..dim {
            m[i][i] = self.zeta.pow(self.degrees[i]);
        }
        Automorphism::from_parts("θ", m, self.order)
    }

    /// Checks `[q_i, q_j] ⊆ q_{(i+j) mod m}` on every basis pair; returns the first failure.
    pub fn validate(&self) -> std::result::Result<(), (usize, usize)> {
        let dim = self.dim();
        for i in 0..dim {
            for j in i..dim {
                let target = (self.degrees[i] + self.degrees[j]) % self.order;
                if self.algebra.bracket_basis(i, j).iter().any(|(k, _)| self.degrees[*k] != target) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// Human-readable eigenvector for each eigenbasis label, in the original basis.
    pub fn describe_basis(&self) -> Vec<(String, String)> {
        (0..self.dim())
            .map(|a| {
                let mut parts = Vec::new();
                for (i, row) in self.change.iter().enumerate() {
                    let c = &row[a];
                    if c.is_zero() {
                        continue;
                    }
                    let lbl = self.original.label(i);
                    parts.push(if c.is_one() { lbl.to_string() } else { format!("{}*{}", c.to_text(), lbl) });
                }
                (self.algebra.label(a).to_string(), parts.join(" + "))
            })
            .collect()
    }
}

/// Whether `zeta` is a primitive `m`-th root of unity.
pub fn is_primitive_root(zeta: &CycloScalar, m: u32) -> bool {
    if !zeta.pow(m).is_one() {
        return false;
    }
    (1..m).filter(|d| m % d == 0).all(|d| !zeta.pow(d).is_one())
}

/// Projectors `P_i = (1/m) Σ_k ζ^{-ik} θ^k` onto the ζ^i-eigenspaces.
pub fn eigen_projectors(theta: &Automorphism, zeta: &CycloScalar) -> Result<Vec<Matrix>> {
    let m = theta.order();
    let inv_m = CycloScalar::frac(1, m as i64);
    let zeta_inv = zeta.inverse()?;
    let powers: Vec<Matrix> = (0..m).map(|k| theta.power(k)).collect();
    let mut out = Vec::with_capacity(m as usize);
    for i in 0..m {
        let mut p = linalg::zeros(theta.dim(), theta.dim());
        for (k, pk) in powers.iter().enumerate() {
            let c = &zeta_inv.pow(i * k as u32) * &inv_m;
            p = linalg::add(&p, &linalg::scale(pk, &c));
        }
        out.push(p);
    }
    Ok(out)
}

/// Eigenspace decomposition of θ with respect to the chosen primitive root ζ.
pub fn grading_from_automorphism(algebra: &LieAlgebra, theta: &Automorphism, zeta: &CycloScalar) -> Result<Grading> {
    let m = theta.order();
    if !is_primitive_root(zeta, m) {
        return Err(Error::InvalidRoot(format!("{} (order {m})", zeta.to_text())));
    }
    if m == 1 {
        return Ok(Grading::trivial(algebra));
    }
    let dim = algebra.dim();
    let projectors = eigen_projectors(theta, zeta)?;
    let mut columns: Vec<Vec<CycloScalar>> = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for (i, p) in projectors.iter().enumerate() {
        let pivots = linalg::independent_columns(p);
        for (j, &c) in pivots.iter().enumerate() {
            let mut v: Vec<CycloScalar> = p.iter().map(|row| row[c].clone()).collect();
            let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("pivot column is nonzero");
            let inv = lead.inverse()?;
            for x in v.iter_mut() {
                *x = &*x * &inv;
            }
            let unit = v.iter().filter(|x| !x.is_zero()).count() == 1;
            labels.push(if unit {
                let k = v.iter().position(|x| !x.is_zero()).unwrap();
                algebra.label(k).to_string()
            } else {
                format!("u{}_{}", i, j + 1)
            });
            columns.push(v);
            degrees.push(i as u32);
        }
    }
    if columns.len() != dim {
        return Err(Error::InvalidGrading(format!("eigenspaces span {} of {dim} dimensions", columns.len())));
    }
    let change = linalg::transpose(&columns);
    let eigen = algebra.change_basis(format!("{}[eigen]", algebra.name()), labels, &change)?;
    let grading = Grading { order: m, zeta: zeta.clone(), original: algebra.clone(), algebra: eigen, degrees, change };
    if let Err((i, j)) = grading.validate() {
        return Err(Error::InvalidGrading(format!("bracket of basis {i} and {j} leaves its component")));
    }
    Ok(grading)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::catalog;

    fn zeta(m: u32) -> CycloScalar {
        CycloScalar::zeta_power(m, 1)
    }

    #[test]
    fn identity_gives_single_component() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let g = grading_from_automorphism(&sl2, &Automorphism::identity(&sl2), &CycloScalar::one()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.component(0).len(), 3);
    }

    #[test]
    fn sl2_inner_involution_components() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let th = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        let g = grading_from_automorphism(&sl2, &th, &zeta(2)).unwrap();
        let c0: Vec<&str> = g.component(0).iter().map(|&i| g.algebra().label(i)).collect();
        let c1: Vec<&str> = g.component(1).iter().map(|&i| g.algebra().label(i)).collect();
        assert_eq!(c0, vec!["h"]);
        assert_eq!(c1, vec!["e", "f"]);
        assert_eq!(g.algebra().check_jacobi(), Ok(()));
    }

    #[test]
    fn sl3_negtranspose_components() {
        let sl3 = catalog::algebra("sl3").unwrap();
        let th = catalog::automorphism(&sl3, "sl3", "outer:negtranspose").unwrap();
        let g = grading_from_automorphism(&sl3, &th, &zeta(2)).unwrap();
        assert_eq!(g.component(0).len(), 3);
        assert_eq!(g.component(1).len(), 5);
        let g0 = g.algebra().subalgebra("so3", &g.component(0)).unwrap();
        assert_eq!(g0.check_jacobi(), Ok(()));
        assert!(!g0.is_abelian());
    }

    #[test]
    fn projectors_resolve_identity() {
        let sl3 = catalog::algebra("sl3").unwrap();
        for auto in ["outer:negtranspose", "inner:diag(1,1,-1)"] {
            let th = catalog::automorphism(&sl3, "sl3", auto).unwrap();
            let ps = eigen_projectors(&th, &zeta(2)).unwrap();
            let sum = ps.iter().skip(1).fold(ps[0].clone(), |acc, p| linalg::add(&acc, p));
            assert!(linalg::is_identity(&sum));
            for (i, p) in ps.iter().enumerate() {
                for (j, q) in ps.iter().enumerate() {
                    let pq = linalg::mat_mul(p, q);
                    if i == j {
                        assert_eq!(&pq, p);
                    } else {
                        assert!(pq.iter().flatten().all(|x| x.is_zero()));
                    }
                }
            }
        }
    }

    #[test]
    fn non_primitive_root_rejected() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let th = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        assert!(matches!(grading_from_automorphism(&sl2, &th, &CycloScalar::one()), Err(Error::InvalidRoot(_))));
        assert!(matches!(
            grading_from_automorphism(&sl2, &th, &CycloScalar::zeta_power(4, 1)),
            Err(Error::InvalidRoot(_))
        ));
    }

    #[test]
    fn bad_split_detected() {
        let sl2 = catalog::algebra("sl2").unwrap();
        // e in degree 0, f and h in degree 1: [h, e] = 2e should land in degree 1
        let g = Grading::from_degrees(&sl2, 2, vec![0, 1, 1], CycloScalar::from_int(-1)).unwrap();
        assert!(g.validate().is_err());
    }
}
