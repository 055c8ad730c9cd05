//! Named algebras and automorphisms.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{contract_infinity, grading_from_automorphism, semidirect_g0_ginf, Automorphism, LieAlgebra};
use crate::linalg::{self, Matrix};
use crate::scalars::{parse_rational, CycloScalar, Rational};

/// A catalog row as listed by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub dim: usize,
    pub description: &'static str,
    pub automorphisms: Vec<&'static str>,
}

const IDS: [&str; 8] = ["sl2", "sl3", "sl4", "heisenberg3", "sl2xsl2", "so3", "sl2-inf", "sl2-tilde"];

pub fn ids() -> &'static [&'static str] {
    &IDS
}

pub fn list() -> Vec<CatalogEntry> {
    let row = |id: &'static str, description: &'static str, automorphisms: Vec<&'static str>| CatalogEntry {
        id,
        dim: algebra(id).map(|a| a.dim()).unwrap_or(0),
        description,
        automorphisms,
    };
    vec![
        row("sl2", "traceless 2x2 matrices, basis e, f, h", vec!["id", "inner:diag(1,-1)"]),
        row("sl3", "traceless 3x3 matrices", vec!["id", "inner:diag(1,1,-1)", "outer:negtranspose"]),
        row("sl4", "traceless 4x4 matrices", vec!["id", "inner:diag(1,1,-1,-1)", "outer:negtranspose"]),
        row("heisenberg3", "strictly upper triangular 3x3 matrices, [x, y] = z", vec!["id", "inner:diag(1,-1,1)"]),
        row("sl2xsl2", "two commuting copies of sl2", vec!["id", "swap", "inner:diag(1,-1,1,-1)"]),
        row("so3", "antisymmetric 3x3 matrices", vec!["id", "inner:diag(1,-1,-1)"]),
        row("sl2-inf", "contraction at infinity of the sl2 involution", vec!["id", "inherited"]),
        row("sl2-tilde", "g0 acting on the contraction at infinity of the sl2 involution", vec!["id", "inherited"]),
    ]
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn unit(n: usize, i: usize, j: usize) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::zero(); n]; n];
    m[i][j] = Rational::one();
    m
}

/// Matrix realization: labels and basis matrices. Only matrix algebras have one.
pub fn matrix_basis(id: &str) -> Option<(Vec<String>, Vec<Vec<Vec<Rational>>>)> {
    match id {
        "sl2" | "sl3" | "sl4" => {
            let n: usize = id[2..].parse().ok()?;
            Some(sln_basis(n))
        }
        "heisenberg3" => Some((
            vec!["x".into(), "y".into(), "z".into()],
            vec![unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)],
        )),
        "sl2xsl2" => {
            let (labels, mats) = sln_basis(2);
            let mut out_labels = Vec::new();
            let mut out = Vec::new();
            for c in 0..2 {
                for (l, m) in labels.iter().zip(&mats) {
                    out_labels.push(format!("{l}{}", c + 1));
                    let mut big = vec![vec![Rational::zero(); 4]; 4];
                    for i in 0..2 {
                        for j in 0..2 {
                            big[2 * c + i][2 * c + j] = m[i][j].clone();
                        }
                    }
                    out.push(big);
                }
            }
            Some((out_labels, out))
        }
        "so3" => {
            let rot = |a: usize, b: usize| {
                let mut m = vec![vec![Rational::zero(); 3]; 3];
                m[a][b] = q(-1);
                m[b][a] = q(1);
                m
            };
            // [x, y] = z
            Some((vec!["x".into(), "y".into(), "z".into()], vec![rot(1, 2), rot(2, 0), rot(0, 1)]))
        }
        _ => None,
    }
}

/// `E_ij` above the diagonal, then below (transposed order), then `H_k = E_kk − E_{k+1,k+1}`.
/// For n = 2 the labels are e, f, h.
pub fn sln_basis(n: usize) -> (Vec<String>, Vec<Vec<Vec<Rational>>>) {
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    for &(i, j) in &upper {
        labels.push(format!("E{}{}", i + 1, j + 1));
        mats.push(unit(n, i, j));
    }
    for &(i, j) in &upper {
        labels.push(format!("E{}{}", j + 1, i + 1));
        mats.push(unit(n, j, i));
    }
    for k in 0..n - 1 {
        labels.push(format!("H{}", k + 1));
        let mut m = unit(n, k, k);
        m[k + 1][k + 1] = q(-1);
        mats.push(m);
    }
    if n == 2 {
        labels = vec!["e".into(), "f".into(), "h".into()];
    }
    (labels, mats)
}

pub fn algebra(id: &str) -> Result<LieAlgebra> {
    if let Some((labels, mats)) = matrix_basis(id) {
        return LieAlgebra::from_matrix_basis(id, labels, &mats);
    }
    match id {
        "sl2-inf" => Ok(contract_infinity(&sl2_involution_grading()?).with_name("sl2-inf")),
        "sl2-tilde" => Ok(semidirect_g0_ginf(&sl2_involution_grading()?).with_name("sl2-tilde")),
        _ => Err(Error::UnknownCatalog(id.to_string())),
    }
}

fn sl2_involution_grading() -> Result<crate::liealg::Grading> {
    let sl2 = algebra("sl2")?;
    let th = automorphism(&sl2, "sl2", "inner:diag(1,-1)")?;
    grading_from_automorphism(&sl2, &th, &CycloScalar::from_int(-1))
}

/// Parses a diagonal entry: an integer, a fraction `a/b`, or `zM^k` for `ζ_M^k`.
fn parse_entry(s: &str) -> Result<CycloScalar> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('z') {
        let (m, k) = rest.split_once('^').unwrap_or((rest, "1"));
        let m: u32 = m.parse().map_err(|_| Error::parse(s, "expected zM^k"))?;
        let k: i64 = k.parse().map_err(|_| Error::parse(s, "expected zM^k"))?;
        if m == 0 {
            return Err(Error::parse(s, "zero order"));
        }
        return Ok(CycloScalar::zeta_power(m, k));
    }
    Ok(CycloScalar::from_rational(parse_rational(s)?))
}

/// Expresses the images of a matrix basis under `X ↦ f(X)` as basis coordinates.
fn matrix_automorphism(
    alg: &LieAlgebra,
    name: &str,
    mats: &[Vec<Vec<Rational>>],
    image: impl Fn(&[Vec<CycloScalar>]) -> Vec<Vec<CycloScalar>>,
) -> Result<Automorphism> {
    let lift = |m: &Vec<Vec<Rational>>| -> Vec<Vec<CycloScalar>> {
        m.iter().map(|r| r.iter().map(|x| CycloScalar::from_rational(x.clone())).collect()).collect()
    };
    let flat = |m: &[Vec<CycloScalar>]| -> Vec<CycloScalar> { m.iter().flatten().cloned().collect() };
    let coords = linalg::transpose(&mats.iter().map(|m| flat(&lift(m))).collect::<Vec<_>>());
    let dim = mats.len();
    let mut matrix = linalg::zeros(dim, dim);
    for (b, m) in mats.iter().enumerate() {
        let img = image(&lift(m));
        let x = linalg::solve(&coords, &flat(&img))
            .ok_or_else(|| Error::InvalidAutomorphism(format!("{name} does not preserve the algebra")))?;
        for (r, c) in x.into_iter().enumerate() {
            matrix[r][b] = c;
        }
    }
    Automorphism::new(alg, name, matrix)
}

/// Looks up a named automorphism of a catalog algebra.
pub fn automorphism(alg: &LieAlgebra, id: &str, name: &str) -> Result<Automorphism> {
    if name == "id" {
        return Ok(Automorphism::identity(alg));
    }
    if let Some(inner) = name.strip_prefix("inner:diag(").and_then(|s| s.strip_suffix(')')) {
        if matches!(id, "sl2-inf" | "sl2-tilde") && inner.replace(' ', "") == "1,-1" {
            return automorphism(alg, id, "inherited");
        }
        let (_, mats) = matrix_basis(id).ok_or_else(|| Error::InvalidAutomorphism(format!("{id} has no matrix form")))?;
        let d: Vec<CycloScalar> = inner.split(',').map(parse_entry).collect::<Result<_>>()?;
        let n = mats[0].len();
        if d.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: d.len() });
        }
        let dinv: Vec<CycloScalar> = d.iter().map(|x| x.inverse()).collect::<Result<_>>()?;
        return matrix_automorphism(alg, name, &mats, |x| {
            (0..n).map(|i| (0..n).map(|j| &(&d[i] * &x[i][j]) * &dinv[j]).collect()).collect()
        });
    }
    match name {
        "outer:negtranspose" => {
            let (_, mats) =
                matrix_basis(id).ok_or_else(|| Error::InvalidAutomorphism(format!("{id} has no matrix form")))?;
            let n = mats[0].len();
            matrix_automorphism(alg, name, &mats, |x| (0..n).map(|i| (0..n).map(|j| -&x[j][i]).collect()).collect())
        }
        "swap" if id == "sl2xsl2" => {
            let mut m: Matrix = linalg::zeros(6, 6);
            for b in 0..3 {
                m[b + 3][b] = CycloScalar::one();
                m[b][b + 3] = CycloScalar::one();
            }
            Automorphism::new(alg, name, m)
        }
        "inherited" if matches!(id, "sl2-inf" | "sl2-tilde") => {
            // ±1 by the sl2 involution degree: h, h' are even, e, f odd
            let dim = alg.dim();
            let mut m = linalg::zeros(dim, dim);
            for (i, row) in m.iter_mut().enumerate() {
                let l = alg.label(i);
                row[i] = CycloScalar::from_int(if l == "e" || l == "f" { -1 } else { 1 });
            }
            Automorphism::new(alg, name, m)
        }
        _ => Err(Error::UnknownCatalog(format!("{id}:{name}"))),
    }
}
