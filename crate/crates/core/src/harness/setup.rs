use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::invariants::{attach_automorphism, catalog, catalog_family, g0_invariants, polynomial_invariants, to_eigenbasis};
use crate::liealg::{grading_from_automorphism, index, Automorphism, Grading, LieAlgebra};
use crate::linalg::Matrix;
use crate::scalars::{parse_rational, CycloScalar};
use crate::sympoly::Poly;

/// An algebra read from the JSON definition format, with its named automorphisms.
#[derive(Clone, Debug)]
pub struct AlgebraDoc {
    pub algebra: LieAlgebra,
    pub automorphisms: Vec<(String, Matrix)>,
    /// Declared `(order, degrees)` on the given basis.
    pub grading: Option<(u32, Vec<u32>)>,
}

fn located(at: &str, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::parse(at, message),
        other => Error::parse(at, other.to_string()),
    }
}

fn parse_scalar(v: &Value, order: u32, at: &str) -> Result<CycloScalar> {
    match v {
        Value::String(s) => parse_rational(s).map(CycloScalar::from_rational).map_err(|e| located(at, e)),
        Value::Number(n) => n
            .as_i64()
            .map(CycloScalar::from_int)
            .ok_or_else(|| Error::parse(at, "scalars must be integers or \"a/b\" strings")),
        Value::Array(cs) => {
            let coeffs = cs
                .iter()
                .map(|c| c.as_str().ok_or_else(|| Error::parse(at, "coefficients must be strings")).and_then(|s| parse_rational(s).map_err(|e| located(at, e))))
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() > crate::scalars::euler_phi(order) {
                return Err(Error::parse(at, format!("more than φ({order}) coefficients")));
            }
            Ok(CycloScalar::from_coeffs(order, coeffs))
        }
        _ => Err(Error::parse(at, "expected a scalar")),
    }
}

fn scalar_json(c: &CycloScalar, order: u32) -> Value {
    match c.as_rational() {
        Some(r) => Value::String(crate::scalars::rational_to_text(r)),
        None => json!(c.lift(order).to_json_coeffs()),
    }
}

fn parse_matrix(v: &Value, dim: usize, order: u32, at: &str) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| Error::parse(at, "matrix must be an array of rows"))?;
    if rows.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: rows.len() });
    }
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let row = row.as_array().ok_or_else(|| Error::parse(format!("{at}[{r}]"), "row must be an array"))?;
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            row.iter().enumerate().map(|(c, x)| parse_scalar(x, order, &format!("{at}[{r}][{c}]"))).collect()
        })
        .collect()
}

/// Parses `{ name, cyclotomic_order, dim, basis, brackets, automorphisms?, grading? }`.
pub fn parse_algebra(doc: &Value) -> Result<AlgebraDoc> {
    let obj = doc.as_object().ok_or_else(|| Error::parse("$", "algebra definition must be an object"))?;
    let name = obj.get("name").and_then(Value::as_str).unwrap_or("inline").to_string();
    let order = match obj.get("cyclotomic_order") {
        None => 1,
        Some(v) => v.as_u64().filter(|m| *m >= 1).ok_or_else(|| Error::parse("$.cyclotomic_order", "expected a positive integer"))? as u32,
    };
    let basis: Vec<String> = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("$.basis", "expected an array of labels"))?
        .iter()
        .enumerate()
        .map(|(i, l)| l.as_str().map(str::to_string).ok_or_else(|| Error::parse(format!("$.basis[{i}]"), "label must be a string")))
        .collect::<Result<_>>()?;
    let dim = basis.len();
    if let Some(d) = obj.get("dim") {
        if d.as_u64() != Some(dim as u64) {
            return Err(Error::parse("$.dim", format!("does not match {dim} basis labels")));
        }
    }
    let mut brackets = Vec::new();
    if let Some(list) = obj.get("brackets") {
        let list = list.as_array().ok_or_else(|| Error::parse("$.brackets", "expected an array"))?;
        for (n, entry) in list.iter().enumerate() {
            let at = format!("$.brackets[{n}]");
            let parts = entry.as_array().filter(|p| p.len() == 3).ok_or_else(|| Error::parse(&at, "expected [i, j, [[k, scalar], ...]]"))?;
            let idx = |v: &Value, what: &str| {
                v.as_u64().map(|x| x as usize).filter(|x| *x < dim).ok_or_else(|| Error::parse(&at, format!("{what} is not a basis index")))
            };
            let (i, j) = (idx(&parts[0], "i")?, idx(&parts[1], "j")?);
            let terms = parts[2].as_array().ok_or_else(|| Error::parse(&at, "terms must be an array"))?;
            let mut v = Vec::new();
            for t in terms {
                let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::parse(&at, "term must be [k, scalar]"))?;
                v.push((idx(&pair[0], "k")?, parse_scalar(&pair[1], order, &at)?));
            }
            brackets.push((i, j, v));
        }
    }
    let algebra = LieAlgebra::from_brackets(name, basis, brackets)?;
    let mut automorphisms = Vec::new();
    if let Some(map) = obj.get("automorphisms") {
        let map = map.as_object().ok_or_else(|| Error::parse("$.automorphisms", "expected an object of matrices"))?;
        for (k, v) in map {
            automorphisms.push((k.clone(), parse_matrix(v, dim, order, &format!("$.automorphisms.{k}"))?));
        }
    }
    let grading = match obj.get("grading") {
        None => None,
        Some(g) => {
            let m = g.get("order").and_then(Value::as_u64).ok_or_else(|| Error::parse("$.grading.order", "expected an integer"))?;
            let degrees = g
                .get("degrees")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::parse("$.grading.degrees", "expected an array"))?
                .iter()
                .map(|d| d.as_u64().map(|x| x as u32).ok_or_else(|| Error::parse("$.grading.degrees", "expected integers")))
                .collect::<Result<_>>()?;
            Some((m as u32, degrees))
        }
    };
    Ok(AlgebraDoc { algebra, automorphisms, grading })
}

/// The JSON definition of an algebra, with optional automorphisms.
pub fn export_algebra(alg: &LieAlgebra, automorphisms: &[Automorphism]) -> Value {
    let order = automorphisms
        .iter()
        .flat_map(|a| a.matrix().iter().flatten())
        .fold(alg.scalar_order(), |acc, c| crate::scalars::lcm(acc, c.order()));
    let mut brackets = Vec::new();
    for i in 0..alg.dim() {
        for j in (i + 1)..alg.dim() {
            let v = alg.bracket_basis(i, j);
            if !v.is_empty() {
                let terms: Vec<Value> = v.iter().map(|(k, c)| json!([k, scalar_json(c, order)])).collect();
                brackets.push(json!([i, j, terms]));
            }
        }
    }
    let mut autos = Map::new();
    for a in automorphisms {
        let rows: Vec<Value> =
            a.matrix().iter().map(|r| Value::Array(r.iter().map(|c| scalar_json(c, order)).collect())).collect();
        autos.insert(a.name().to_string(), Value::Array(rows));
    }
    let mut out = json!({
        "name": alg.name(),
        "cyclotomic_order": order,
        "dim": alg.dim(),
        "basis": alg.labels(),
        "brackets": brackets,
    });
    if !autos.is_empty() {
        out["automorphisms"] = Value::Object(autos);
    }
    out
}

/// Catalog ids whose algebra is reductive, so the regularity hypothesis holds classically.
pub fn is_reductive_catalog(id: &str) -> bool {
    matches!(id, "sl2" | "sl3" | "sl4" | "sl2xsl2" | "so3")
}

/// A resolved (algebra, automorphism, ζ) triple.
#[derive(Clone, Debug)]
pub struct Setup {
    pub catalog_id: Option<String>,
    pub algebra: LieAlgebra,
    pub theta: Automorphism,
    pub zeta_choice: u32,
    pub grading: Arc<Grading>,
    pub declared_grading: Option<(u32, Vec<u32>)>,
}

/// θ-eigenvector generators of `S(g)^g` and generators of `S(g_0)^{g_0}`.
#[derive(Clone, Debug)]
pub struct Family {
    /// `(F_i, ℓ_i)` on the original basis.
    pub original: Vec<(Poly, u32)>,
    /// `(F_i, ℓ_i)` on the eigenbasis.
    pub eigen: Vec<(Poly, u32)>,
    pub h: Vec<Poly>,
}

impl Setup {
    pub fn zeta(&self) -> &CycloScalar {
        self.grading.zeta()
    }

    pub fn order(&self) -> u32 {
        self.grading.order()
    }

    pub fn label(&self) -> String {
        format!("{} / {}", self.algebra.name(), self.theta.name())
    }

    pub fn is_reductive(&self) -> bool {
        self.catalog_id.as_deref().is_some_and(is_reductive_catalog)
    }

    /// Invariant generators: from the catalog when available, otherwise by linear algebra.
    pub fn family(&self, seed: u64) -> Result<Family> {
        let base = match self.catalog_id.as_deref().map(catalog_family) {
            Some(Ok(fam)) => fam,
            _ => {
                let ind = index(&self.algebra, 30, seed).index;
                let polys = polynomial_invariants(&self.algebra, ind, 4, seed)?;
                crate::invariants::InvariantFamily {
                    algebra: self.algebra.name().to_string(),
                    generators: polys
                        .into_iter()
                        .enumerate()
                        .map(|(i, p)| crate::invariants::InvariantGenerator {
                            name: format!("F{}", i + 1),
                            degree: p.degree(),
                            poly: p,
                            ell: None,
                        })
                        .collect(),
                }
            }
        };
        let fam = attach_automorphism(&base, &self.theta, self.zeta())?;
        let original: Vec<(Poly, u32)> = fam.generators.iter().map(|g| (g.poly.clone(), g.ell.unwrap_or(0))).collect();
        let eigen = original
            .iter()
            .map(|(p, l)| Ok((to_eigenbasis(p, &self.grading)?, *l)))
            .collect::<Result<Vec<_>>>()?;
        let polys: Vec<Poly> = eigen.iter().map(|x| x.0.clone()).collect();
        let h = g0_invariants(&self.grading, &polys, seed)?;
        Ok(Family { original, eigen, h })
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Resolves an algebra (catalog id, path-free inline definition) and an automorphism (name,
/// a name from the definition's `automorphisms`, or an inline matrix).
pub fn resolve(algebra: &Value, automorphism: &Value, zeta_choice: u32) -> Result<Setup> {
    let (catalog_id, doc) = match algebra {
        Value::String(id) => (
            Some(id.clone()),
            AlgebraDoc { algebra: catalog::algebra(id)?, automorphisms: Vec::new(), grading: None },
        ),
        other => (None, parse_algebra(other)?),
    };
    let alg = doc.algebra.clone();
    let theta = match automorphism {
        Value::Null => Automorphism::identity(&alg),
        Value::String(name) => match doc.automorphisms.iter().find(|(n, _)| n == name) {
            Some((n, m)) => Automorphism::new(&alg, n.clone(), m.clone())?,
            None => match &catalog_id {
                Some(id) => catalog::automorphism(&alg, id, name)?,
                None if name == "id" => Automorphism::identity(&alg),
                None => return Err(Error::UnknownCatalog(format!("automorphism {name}"))),
            },
        },
        other => {
            let m = parse_matrix(other, alg.dim(), alg.scalar_order().max(1), "$.automorphism")?;
            Automorphism::new(&alg, "inline", m)?
        }
    };
    let m = theta.order();
    if gcd(zeta_choice % m.max(1), m) != 1 && m > 1 {
        return Err(Error::InvalidRoot(format!("ζ_{m}^{zeta_choice}")));
    }
    let zeta = CycloScalar::zeta_power(m, zeta_choice as i64);
    let grading = Arc::new(grading_from_automorphism(&alg, &theta, &zeta)?);
    Ok(Setup { catalog_id, algebra: alg, theta, zeta_choice, grading, declared_grading: doc.grading })
}
