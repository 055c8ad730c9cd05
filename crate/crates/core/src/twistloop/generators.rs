use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::solve::{coefficient_rank, decomposables, monomials};
use crate::liealg::Grading;
use crate::linalg;
use crate::sympoly::{phi_split, poisson_bracket, Monomial, Poly, Var};

use super::{LoopStructure, TwistedWindow, WindowSide};

/// Where a generator comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// A generator of `S(q_0)^{q_0}`.
    G0Invariant { u: usize },
    /// `(F_i)_[k]`.
    Polarisation { i: usize, k: i64 },
    /// The φ-component `F_{i,j}`.
    Component { i: usize, j: i64 },
    /// A window invariant found by linear algebra, with its degree and total `t`-weight.
    WindowInvariant { degree: u32, weight: i64 },
}

#[derive(Clone, Debug)]
pub struct GeneratorEntry {
    pub name: String,
    pub poly: Poly,
    pub provenance: Provenance,
}

/// A finite list of generators living in one window.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub entries: Vec<GeneratorEntry>,
    pub window: TwistedWindow,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.entries.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    /// Largest `|t|` among all variables of all entries.
    pub fn reach(&self) -> i64 {
        self.entries
            .iter()
            .flat_map(|e| e.poly.vars())
            .map(|v| v.t.unsigned_abs() as i64)
            .max()
            .unwrap_or(0)
    }

    pub fn to_text(&self, e: &GeneratorEntry) -> String {
        e.poly.to_text(&|v| self.window.label(v))
    }
}

/// `{h_u} ∪ {(F_i)_[mj+ℓ_i]}`, skipping `j = 0` for θ-fixed `F_i`, for all indices in the window.
///
/// `family` is in eigenbasis variables with eigen-exponents `ℓ_i`; `h` generates `S(q_0)^{q_0}`.
pub fn generators_z0(family: &[(Poly, u32)], h: &[Poly], window: &TwistedWindow) -> Result<GeneratorSet> {
    if window.side() != WindowSide::Minus {
        return Err(Error::InvalidGrading("Z0 generators need a minus-side window".into()));
    }
    let m = window.grading().order() as i64;
    let mut entries: Vec<GeneratorEntry> = h
        .iter()
        .enumerate()
        .map(|(u, p)| GeneratorEntry { name: format!("h{}", u + 1), poly: p.clone(), provenance: Provenance::G0Invariant { u } })
        .collect();
    for (i, (f, ell)) in family.iter().enumerate() {
        let mut k = *ell as i64;
        if k == 0 {
            k = m;
        }
        while k <= window.reach() {
            let p = window.polarise(f, k)?;
            if !p.is_zero() {
                entries.push(GeneratorEntry { name: format!("F{}[{k}]", i + 1), poly: p, provenance: Provenance::Polarisation { i, k } });
            }
            k += m;
        }
    }
    Ok(GeneratorSet { entries, window: window.clone() })
}

/// `b_i = m·d_i − d•_i`, where `d•_i` is the top φ-degree of `F_i`.
pub(crate) fn strict_shift(f: &Poly, grading: &Grading) -> Option<i64> {
    let top = phi_split(f, grading).top_degree()?;
    Some(grading.order() as i64 * f.degree() as i64 - top)
}

/// `(F_i)_[−b_i−jm]` on the strict positive side, for `b_i + jm` within the window.
pub fn generators_zt(family: &[(Poly, u32)], window: &TwistedWindow) -> Result<GeneratorSet> {
    if window.side() != WindowSide::Positive {
        return Err(Error::InvalidGrading("strict generators need a positive window".into()));
    }
    let grading = window.grading();
    let m = grading.order() as i64;
    let mut entries = Vec::new();
    for (i, (f, _)) in family.iter().enumerate() {
        let Some(b) = strict_shift(f, grading) else { continue };
        let mut k = b;
        while k <= window.reach() {
            let p = window.polarise(f, -k)?;
            if !p.is_zero() {
                entries.push(GeneratorEntry {
                    name: format!("F{}[-{k}]", i + 1),
                    poly: p,
                    provenance: Provenance::Polarisation { i, k: -k },
                });
            }
            k += m;
        }
    }
    Ok(GeneratorSet { entries, window: window.clone() })
}

/// All nonzero φ-components `F_{i,j}`.
pub fn generators_zx(family: &[Poly], grading: &std::sync::Arc<Grading>) -> GeneratorSet {
    let mut entries = Vec::new();
    for (i, f) in family.iter().enumerate() {
        for (j, p) in phi_split(f, grading).components {
            if !p.is_zero() {
                entries.push(GeneratorEntry { name: format!("F{}_{j}", i + 1), poly: p, provenance: Provenance::Component { i, j } });
            }
        }
    }
    GeneratorSet { entries, window: TwistedWindow::minus(grading.clone(), 0) }
}

/// Minimal generators, up to `max_degree`, of the invariants `Y ∈ S(window)` with
/// `{x t^p, Y} ≡ 0` modulo `t q[t]` for all `p ≥ 0`.
///
/// The action preserves degree and shifts the total `t`-weight, so each (degree, weight) block is
/// solved separately.
pub fn window_invariants(window: &TwistedWindow, max_degree: u32) -> Result<GeneratorSet> {
    if window.side() != WindowSide::Minus {
        return Err(Error::InvalidGrading("window invariants need a minus-side window".into()));
    }
    let grading = window.grading();
    let structure = LoopStructure::new(window.grading_arc());
    let vars = window.variables();
    let m = grading.order() as i64;
    let actors: Vec<Var> = (0..=window.reach())
        .flat_map(|p| {
            let deg = (-p).rem_euclid(m) as u32;
            grading.component(deg).into_iter().map(move |b| Var::new(b, p as i32))
        })
        .collect();
    let weight = |mono: &Monomial| -> i64 { mono.weight(|v| -(v.t as i64)) };
    let mut gens: Vec<GeneratorEntry> = Vec::new();
    for d in 1..=max_degree {
        let mut blocks: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for mu in monomials(vars.len(), d) {
            let mono = Monomial::from_pairs(mu.factors().iter().map(|(v, e)| (vars[v.base()], *e)));
            blocks.entry(weight(&mono)).or_default().push(mono);
        }
        for (w, monos) in blocks {
            let mut row_of: HashMap<(usize, Monomial), usize> = HashMap::new();
            let mut cells = Vec::new();
            for (col, mono) in monos.iter().enumerate() {
                let p = Poly::term(mono.clone(), crate::scalars::CycloScalar::one());
                for (a, actor) in actors.iter().enumerate() {
                    let br = poisson_bracket(&structure, &Poly::var(*actor), &p)?;
                    for (res, c) in br.terms() {
                        if res.factors().iter().any(|(v, _)| v.t > 0) {
                            continue;
                        }
                        let next = row_of.len();
                        let r = *row_of.entry((a, res.clone())).or_insert(next);
                        cells.push((r, col, c.clone()));
                    }
                }
            }
            let kernel = if row_of.is_empty() {
                linalg::identity(monos.len())
            } else {
                let mut mat = linalg::zeros(row_of.len(), monos.len());
                for (r, c, x) in cells {
                    mat[r][c] += &x;
                }
                linalg::nullspace(&mat, monos.len())
            };
            if kernel.is_empty() {
                continue;
            }
            let same_block: Vec<Poly> = gens
                .iter()
                .map(|g| g.poly.clone())
                .collect();
            let mut basis: Vec<Poly> = decomposables(&same_block, d)
                .into_iter()
                .filter(|p| p.terms().next().is_some_and(|(mono, _)| weight(mono) == w))
                .collect();
            let mut rank = coefficient_rank(&basis);
            for v in kernel {
                let cand = Poly::from_terms(monos.iter().cloned().zip(v));
                basis.push(cand.clone());
                let r = coefficient_rank(&basis);
                if r > rank {
                    rank = r;
                    gens.push(GeneratorEntry {
                        name: format!("Y{}", gens.len() + 1),
                        poly: cand,
                        provenance: Provenance::WindowInvariant { degree: d, weight: w },
                    });
                } else {
                    basis.pop();
                }
            }
        }
    }
    Ok(GeneratorSet { entries: gens, window: window.clone() })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::invariants::{attach_automorphism, catalog, catalog_family, g0_invariants, to_eigenbasis};
    use crate::liealg::grading_from_automorphism;
    use crate::scalars::CycloScalar;

    fn setup(id: &str, auto: &str) -> (Arc<Grading>, Vec<(Poly, u32)>, Vec<Poly>) {
        let alg = catalog::algebra(id).unwrap();
        let th = catalog::automorphism(&alg, id, auto).unwrap();
        let zeta = CycloScalar::zeta_power(th.order(), 1);
        let g = Arc::new(grading_from_automorphism(&alg, &th, &zeta).unwrap());
        let fam = attach_automorphism(&catalog_family(id).unwrap(), &th, &zeta).unwrap();
        let eig: Vec<(Poly, u32)> =
            fam.generators.iter().map(|x| (to_eigenbasis(&x.poly, &g).unwrap(), x.ell.unwrap())).collect();
        let polys: Vec<Poly> = eig.iter().map(|x| x.0.clone()).collect();
        let h = g0_invariants(&g, &polys, 0).unwrap();
        (g, eig, h)
    }

    #[test]
    fn sl2_involution_names() {
        let (g, fam, h) = setup("sl2", "inner:diag(1,-1)");
        let set = generators_z0(&fam, &h, &TwistedWindow::minus(g, 8)).unwrap();
        assert_eq!(set.names(), vec!["h1", "F1[2]", "F1[4]", "F1[6]", "F1[8]"]);
    }

    #[test]
    fn sl2_identity_names() {
        let (g, fam, h) = setup("sl2", "id");
        let set = generators_z0(&fam, &h, &TwistedWindow::minus(g, 4)).unwrap();
        assert_eq!(set.len(), 5);
        assert_eq!(set.reach(), 4);
    }

    #[test]
    fn components_of_casimir() {
        let (g, fam, _) = setup("sl2", "inner:diag(1,-1)");
        let polys: Vec<Poly> = fam.into_iter().map(|x| x.0).collect();
        let zx = generators_zx(&polys, &g);
        assert_eq!(zx.names(), vec!["F1_0", "F1_2"]);
        assert_eq!(zx.entries[1].poly.len(), 1);
    }

    #[test]
    fn strict_generators_start_at_b() {
        let (g, fam, _) = setup("sl2", "inner:diag(1,-1)");
        let set = generators_zt(&fam, &TwistedWindow::positive(g, 1, 6)).unwrap();
        assert_eq!(set.names(), vec!["F1[-2]", "F1[-4]", "F1[-6]"]);
    }

    #[test]
    fn window_invariants_heisenberg_like() {
        let alg = catalog::algebra("sl2-inf").unwrap();
        let th = catalog::automorphism(&alg, "sl2-inf", "inherited").unwrap();
        let g = Arc::new(grading_from_automorphism(&alg, &th, &CycloScalar::from_int(-1)).unwrap());
        let set = window_invariants(&TwistedWindow::minus(g, 2), 2).unwrap();
        // the centre h sits at t^0 and t^{-2}
        let linear: Vec<_> = set.entries.iter().filter(|e| e.poly.degree() == 1).collect();
        assert_eq!(linear.len(), 2);
    }

    #[test]
    fn wrong_side_rejected() {
        let (g, fam, h) = setup("sl2", "id");
        assert!(generators_z0(&fam, &h, &TwistedWindow::positive(g, 0, 3)).is_err());
    }
}
