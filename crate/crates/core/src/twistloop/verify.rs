use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::Grading;
use crate::scalars::CycloScalar;
use crate::sympoly::{is_in_linear_ideal_by, phi_split, poisson_bracket, Poly, Var};

use super::generators::strict_shift;
use super::{
    binomial, psi_quotient, t_polarisation, t_polarisation_strict, GeneratorSet, LoopStructure, QuotientStructure,
    TwistedWindow,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvarianceStyle {
    /// `Y ∈ S(q[t^{-1}]^θ)`, acted on by `q[t]^θ` through the projection killing `t q[t]`.
    Zero,
    /// `Y ∈ S(t q[t]^θ)`, with `{x t^{-k}, Y}` required to lie in the ideal of `q[t^{-1}]^θ`.
    T,
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub actors_checked: usize,
    /// First failing actor and the offending bracket.
    pub witness: Option<(Var, Poly)>,
}

/// Checks invariance against every basis actor that can act nontrivially on the window.
///
/// Brackets are taken in the loop algebra itself, so no truncation is involved.
pub fn verify_invariance(y: &Poly, window: &TwistedWindow, style: InvarianceStyle) -> Result<InvarianceReport> {
    window.check_fits(y)?;
    let grading = window.grading();
    let m = grading.order() as i64;
    let structure = LoopStructure::new(window.grading_arc());
    let reach = window.reach();
    let mut checked = 0;
    for p in 0..=reach {
        let (t, deg) = match style {
            InvarianceStyle::Zero => (p, (-p).rem_euclid(m)),
            InvarianceStyle::T => (-p, p.rem_euclid(m)),
        };
        for b in grading.component(deg as u32) {
            let actor = Var::new(b, t as i32);
            checked += 1;
            let br = poisson_bracket(&structure, &Poly::var(actor), y)?;
            let bad = match style {
                InvarianceStyle::Zero => {
                    let kept = br.filter_terms(|mono| mono.factors().iter().all(|(v, _)| v.t <= 0));
                    (!kept.is_zero()).then_some(kept)
                }
                InvarianceStyle::T => (!is_in_linear_ideal_by(&br, |v| v.t <= 0)).then_some(br),
            };
            if let Some(w) = bad {
                return Ok(InvarianceReport { invariant: false, actors_checked: checked, witness: Some((actor, w)) });
            }
        }
    }
    Ok(InvarianceReport { invariant: true, actors_checked: checked, witness: None })
}

#[derive(Clone, Debug)]
pub struct CommuteReport {
    pub commute: bool,
    pub pairs_checked: usize,
    /// `2N'` with `N'` the least multiple of `m` beyond the largest exponent in use.
    pub quotient_size: usize,
    pub failing: Option<(usize, usize, Poly)>,
}

/// Computes every pairwise bracket in the doubled cyclic quotient.
///
/// All exponents lie in `[0, N')` and brackets at most double them, so nothing wraps around in
/// `t^{-2N'} = 1` and zero there is zero in the loop algebra.
pub fn verify_pairwise_commute(set: &GeneratorSet) -> Result<CommuteReport> {
    let m = set.window.grading().order() as usize;
    let reach = set.reach() as usize;
    let half = (reach / m + 1) * m;
    let structure = QuotientStructure::new(set.window.grading_arc(), 2 * half);
    let polys: Vec<Poly> = set.entries.iter().map(|e| structure.reduce(&e.poly)).collect();
    let pairs: Vec<(usize, usize)> =
        (0..polys.len()).flat_map(|i| ((i + 1)..polys.len()).map(move |j| (i, j))).collect();
    let results: Vec<Result<Poly>> =
        pairs.par_iter().map(|&(i, j)| poisson_bracket(&structure, &polys[i], &polys[j])).collect();
    let mut failing = None;
    for (&(i, j), r) in pairs.iter().zip(results) {
        let br = r?;
        if !br.is_zero() {
            failing = Some((i, j, br));
            break;
        }
    }
    Ok(CommuteReport { commute: failing.is_none(), pairs_checked: pairs.len(), quotient_size: 2 * half, failing })
}

/// Both sides of a collapse identity.
#[derive(Clone, Debug)]
pub struct ImageCheck {
    pub lhs: Poly,
    pub rhs: Poly,
    pub equal: bool,
}

fn check(lhs: Poly, rhs: Poly) -> ImageCheck {
    let equal = lhs == rhs;
    ImageCheck { lhs, rhs, equal }
}

/// `ψ((F)_[ℓ+jm]) = Σ_{c=0}^{j} binom(c+d−1, d−1) F_{ℓ+(j−c)m}`.
pub fn verify_image_formula(f: &Poly, ell: u32, j: usize, grading: &Grading) -> ImageCheck {
    let m = grading.order() as i64;
    let d = f.degree() as i64;
    let split = phi_split(f, grading);
    let lhs = psi_quotient(&t_polarisation(f, ell as i64 + j as i64 * m, grading));
    let mut rhs = Poly::zero();
    for c in 0..=j as i64 {
        rhs.add_assign(&split.component(ell as i64 + (j as i64 - c) * m).scalar_mul(&binomial(c + d - 1, d - 1)));
    }
    check(lhs, rhs)
}

/// `ψ((F)_[−b−Jm]) = Σ_{c=0}^{J} binom(J−c+d−1, d−1) F_{d•−cm}` on the strict positive side.
pub fn verify_image_formula_strict(f: &Poly, big_j: usize, grading: &Grading) -> Result<ImageCheck> {
    let m = grading.order() as i64;
    let d = f.degree() as i64;
    let split = phi_split(f, grading);
    let top = split.top_degree().ok_or(Error::EmptyInput("strict image of 0"))?;
    let b = strict_shift(f, grading).ok_or(Error::EmptyInput("strict image of 0"))?;
    let big_j = big_j as i64;
    let lhs = psi_quotient(&t_polarisation_strict(f, -(b + big_j * m), grading));
    let mut rhs = Poly::zero();
    for c in 0..=big_j {
        rhs.add_assign(&split.component(top - c * m).scalar_mul(&binomial(big_j - c + d - 1, d - 1)));
    }
    Ok(check(lhs, rhs))
}

/// Coefficients of the ψ-images in terms of the φ-components, with the `h_u` block in front.
#[derive(Clone, Debug, Serialize)]
pub struct TransitionMatrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub entries: Vec<Vec<String>>,
    /// Every component of every ψ-image with `j ≤ J` is a multiple of the matching `F_{i,p}`.
    pub consistent: bool,
    pub unitriangular: bool,
    #[serde(skip)]
    pub values: Vec<Vec<CycloScalar>>,
}

/// `c` with `a = c·b`, if any.
fn proportion(a: &Poly, b: &Poly) -> Option<CycloScalar> {
    if a.is_zero() {
        return Some(CycloScalar::zero());
    }
    let (mono, lead) = b.terms().next()?;
    let c = &a.coefficient(mono) * &lead.inverse().ok()?;
    (b.scalar_mul(&c) == *a).then_some(c)
}

/// Rows `{h_u} ∪ {ψ((F_i)_[ℓ_i+jm])}` against columns `{h_u} ∪ {F_{i,ℓ_i+jm}}`, over the `j ≤ J`
/// with `F_{i,ℓ_i+jm} ≠ 0`. The remaining `j ≤ J` only enter the consistency check.
pub fn transition_matrix(family: &[(Poly, u32)], h: &[Poly], grading: &Grading, big_j: usize) -> TransitionMatrix {
    let m = grading.order() as i64;
    let mut rows: Vec<String> = (1..=h.len()).map(|u| format!("h{u}")).collect();
    let mut columns = rows.clone();
    // (i, j) for each nonzero component column
    let mut keys: Vec<(usize, i64)> = Vec::new();
    let splits: Vec<_> = family.iter().map(|(f, _)| phi_split(f, grading)).collect();
    for (i, (_, ell)) in family.iter().enumerate() {
        for j in 0..=big_j as i64 {
            let p = *ell as i64 + j * m;
            if !splits[i].component(p).is_zero() {
                keys.push((i, j));
                columns.push(format!("F{}_{p}", i + 1));
                rows.push(format!("psi(F{}[{p}])", i + 1));
            }
        }
    }
    let size = h.len() + keys.len();
    let mut values = vec![vec![CycloScalar::zero(); size]; size];
    for (u, row) in values.iter_mut().enumerate().take(h.len()) {
        row[u] = CycloScalar::one();
    }
    let mut consistent = true;
    for (i, (f, ell)) in family.iter().enumerate() {
        for j in 0..=big_j as i64 {
            let image = phi_split(&psi_quotient(&t_polarisation(f, *ell as i64 + j * m, grading)), grading);
            let row = keys.iter().position(|k| *k == (i, j)).map(|r| r + h.len());
            for (p, comp) in &image.components {
                let off = p - *ell as i64;
                let col_key = (off % m == 0).then_some((i, off / m));
                let col = col_key.and_then(|k| keys.iter().position(|x| *x == k));
                let coeff = col.and_then(|c| proportion(comp, &splits[i].component(keys[c].1 * m + *ell as i64)));
                match (coeff, col) {
                    (Some(c), Some(col)) => {
                        if let Some(r) = row {
                            values[r][col + h.len()] = c;
                        }
                    }
                    _ => consistent = false,
                }
            }
        }
    }
    let unitriangular = (0..size).all(|r| values[r][r].is_one() && values[r][(r + 1)..].iter().all(|x| x.is_zero()));
    let entries = values.iter().map(|r| r.iter().map(|x| x.to_text()).collect()).collect();
    TransitionMatrix { rows, columns, entries, consistent, unitriangular, values }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::invariants::{catalog, charpoly_invariants, to_eigenbasis};
    use crate::liealg::grading_from_automorphism;
    use crate::twistloop::{generators_z0, generators_zt, GeneratorEntry, Provenance};

    fn involution() -> (Arc<Grading>, Poly) {
        let sl2 = catalog::algebra("sl2").unwrap();
        let th = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        let g = Arc::new(grading_from_automorphism(&sl2, &th, &CycloScalar::from_int(-1)).unwrap());
        let f = to_eigenbasis(&charpoly_invariants(2).unwrap().generators[0].poly, &g).unwrap();
        (g, f)
    }

    fn identity() -> (Arc<Grading>, Poly) {
        let sl2 = catalog::algebra("sl2").unwrap();
        (Arc::new(Grading::trivial(&sl2)), charpoly_invariants(2).unwrap().generators[0].poly.clone())
    }

    #[test]
    fn invariance_examples() {
        let (g, f) = identity();
        let w = TwistedWindow::minus(g.clone(), 3);
        let f1 = t_polarisation(&f, 1, &g);
        assert!(verify_invariance(&f1, &w, InvarianceStyle::Zero).unwrap().invariant);
        assert!(verify_invariance(&Poly::constant(CycloScalar::one()), &w, InvarianceStyle::Zero).unwrap().invariant);
        let e1 = Poly::var(Var::new(0, -1));
        let r = verify_invariance(&e1, &w, InvarianceStyle::Zero).unwrap();
        assert!(!r.invariant);
        let e1_plus = Poly::var(Var::new(0, 1));
        let r = verify_invariance(&e1_plus, &TwistedWindow::positive(g, 1, 3), InvarianceStyle::T).unwrap();
        let (actor, br) = r.witness.unwrap();
        assert_eq!(actor, Var::new(1, 0));
        assert_eq!(br, Poly::var(Var::new(2, 1)).neg());
    }

    #[test]
    fn strict_generators_are_t_invariant() {
        let (g, f) = involution();
        let w = TwistedWindow::positive(g, 1, 6);
        let set = generators_zt(&[(f, 0)], &w).unwrap();
        for e in &set.entries {
            assert!(verify_invariance(&e.poly, &w, InvarianceStyle::T).unwrap().invariant, "{}", e.name);
        }
    }

    #[test]
    fn window_overflow() {
        let (g, _) = identity();
        let w = TwistedWindow::minus(g, 1);
        let y = Poly::var(Var::new(0, -3));
        assert_eq!(
            verify_invariance(&y, &w, InvarianceStyle::Zero).unwrap_err(),
            Error::WindowOverflow { needed: 3, available: 1 }
        );
    }

    #[test]
    fn commuting_sets() {
        let (g, f) = identity();
        let set = generators_z0(&[(f.clone(), 0)], &[f], &TwistedWindow::minus(g.clone(), 2)).unwrap();
        let r = verify_pairwise_commute(&set).unwrap();
        assert!(r.commute);
        assert_eq!((r.pairs_checked, r.quotient_size), (3, 6));

        let (g2, f2) = involution();
        let h = Poly::var(Var::plain(g2.algebra().index_of("h").unwrap()));
        let set = generators_z0(&[(f2, 0)], &[h], &TwistedWindow::minus(g2, 4)).unwrap();
        assert!(verify_pairwise_commute(&set).unwrap().commute);

        let pair = GeneratorSet {
            entries: vec![
                GeneratorEntry { name: "e".into(), poly: Poly::var(Var::plain(0)), provenance: Provenance::G0Invariant { u: 0 } },
                GeneratorEntry { name: "f".into(), poly: Poly::var(Var::plain(1)), provenance: Provenance::G0Invariant { u: 1 } },
            ],
            window: TwistedWindow::minus(g, 0),
        };
        let r = verify_pairwise_commute(&pair).unwrap();
        assert_eq!(r.failing.unwrap().2, Poly::var(Var::plain(2)));
    }

    #[test]
    fn image_formula_involution() {
        let (g, f) = involution();
        for j in 0..=3 {
            assert!(verify_image_formula(&f, 0, j, &g).equal, "j = {j}");
        }
        let c = verify_image_formula(&f, 0, 1, &g);
        let h = g.algebra().index_of("h").unwrap();
        let (e, fi) = (g.algebra().index_of("e").unwrap(), g.algebra().index_of("f").unwrap());
        let expected = Poly::var(Var::plain(e))
            .mul(&Poly::var(Var::plain(fi)))
            .add(&Poly::var(Var::plain(h)).pow(2).scalar_mul(&CycloScalar::frac(1, 2)));
        assert_eq!(c.lhs, expected);
        for big_j in 0..=3 {
            assert!(verify_image_formula_strict(&f, big_j, &g).unwrap().equal, "J = {big_j}");
        }
    }

    #[test]
    fn image_formula_identity() {
        let (g, f) = identity();
        let c = verify_image_formula(&f, 0, 2, &g);
        assert!(c.equal);
        assert_eq!(c.lhs, f.scalar_mul(&CycloScalar::from_int(3)));
    }

    #[test]
    fn transition_for_involution() {
        let (g, f) = involution();
        let h = Poly::var(Var::plain(g.algebra().index_of("h").unwrap()));
        let t = transition_matrix(&[(f, 0)], &[h], &g, 4);
        assert!(t.consistent && t.unitriangular);
        assert_eq!(t.columns, vec!["h1", "F1_0", "F1_2"]);
        assert_eq!(t.values[2][1], CycloScalar::from_int(2));
    }
}
