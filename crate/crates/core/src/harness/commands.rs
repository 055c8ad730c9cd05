use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::catalog;
use crate::liealg::{
    check_q0_regular_intersection, contract_infinity, contract_zero, index, Grading, LieAlgebra, StructureFailure,
};
use crate::scalars::CycloScalar;
use crate::sympoly::{highest_component, jacobian_rank_random, phi_split, Poly};
use crate::twistloop::{
    build_cyclic_quotient, build_h_generators, choose_zeta_tilde, dft_isomorphism, generators_z0, generators_zt,
    generators_zx, t_polarisation, transition_matrix, verify_image_formula, verify_image_formula_strict,
    verify_invariance, verify_pairwise_commute, window_invariants, GeneratorSet, InvarianceStyle, TwistedWindow,
};

use super::setup::{export_algebra, parse_algebra, resolve, Family, Setup};
use super::{timed, Options, Report, Status, Witness};

/// Degree bound for window invariants of algebras without a known generator family.
const WINDOW_DEGREE: u32 = 3;

fn sparse_text(alg: &LieAlgebra, v: &[(usize, CycloScalar)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(k, c)| if c.is_one() { alg.label(*k).to_string() } else { format!("({})*{}", c.to_text(), alg.label(*k)) })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn unit(dim: usize, i: usize) -> Vec<CycloScalar> {
    let mut v = vec![CycloScalar::zero(); dim];
    v[i] = CycloScalar::one();
    v
}

fn dense_text(alg: &LieAlgebra, v: &[CycloScalar]) -> String {
    let sparse: Vec<(usize, CycloScalar)> =
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
    sparse_text(alg, &sparse)
}

/// Checks antisymmetry and Jacobi, recording a failing triple with its Jacobiator.
fn check_structure(alg: &LieAlgebra, what: &str, r: &mut Report) {
    let d = alg.dim();
    match alg.check_jacobi() {
        Ok(()) => r.identity(format!("{what}: [[x,y],z] + cyclic = 0 and [x,y] = -[y,x] on {} basis triples", d * d * d)),
        Err(StructureFailure::Antisymmetry(i, j)) => {
            let lhs = alg.bracket(&unit(d, i), &unit(d, j));
            r.fail(Witness::with_poly(
                format!("{what}: [{}, {}] + [{}, {}]", alg.label(i), alg.label(j), alg.label(j), alg.label(i)),
                dense_text(alg, &lhs.iter().zip(alg.bracket(&unit(d, j), &unit(d, i))).map(|(a, b)| a + &b).collect::<Vec<_>>()),
            ));
        }
        Err(StructureFailure::Jacobi(i, j, k)) => {
            let (x, y, z) = (unit(d, i), unit(d, j), unit(d, k));
            let terms = [
                alg.bracket(&alg.bracket(&x, &y), &z),
                alg.bracket(&alg.bracket(&y, &z), &x),
                alg.bracket(&alg.bracket(&z, &x), &y),
            ];
            let sum: Vec<CycloScalar> =
                (0..d).map(|c| terms.iter().fold(CycloScalar::zero(), |acc, t| &acc + &t[c])).collect();
            r.fail(Witness::with_poly(
                format!("{what}: Jacobi on ({}, {}, {})", alg.label(i), alg.label(j), alg.label(k)),
                dense_text(alg, &sum),
            ));
        }
    }
}

fn check_grading(g: &Grading, what: &str, r: &mut Report) {
    let alg = g.algebra();
    match g.validate() {
        Ok(()) => r.identity(format!("{what}: [q_i, q_j] in q_(i+j mod {}) on all basis pairs", g.order())),
        Err((i, j)) => r.fail(Witness::with_poly(
            format!(
                "{what}: [{}, {}] with degrees {} + {} mod {}",
                alg.label(i),
                alg.label(j),
                g.degree(i),
                g.degree(j),
                g.order()
            ),
            sparse_text(alg, alg.bracket_basis(i, j)),
        )),
    }
}

/// Structure checks for an algebra, its automorphism and any declared grading.
///
/// Malformed input is an error; a well-formed but invalid structure is a failing report.
pub fn cmd_check(algebra: &Value, automorphism: &Value, zeta_choice: u32, opts: &Options) -> Result<Report> {
    let doc = match algebra {
        Value::String(id) => super::AlgebraDoc { algebra: catalog::algebra(id)?, automorphisms: Vec::new(), grading: None },
        other => parse_algebra(other)?,
    };
    let alg = doc.algebra.clone();
    Ok(timed(|| {
        let mut r = Report::new(alg.name(), "check", opts.seed);
        check_structure(&alg, alg.name(), &mut r);
        if !r.passed() {
            return r;
        }
        if !automorphism.is_null() {
            match resolve(algebra, automorphism, zeta_choice) {
                Ok(s) => {
                    r.identity(format!("{}: θ preserves every bracket, θ^{} = 1", s.theta.name(), s.order()));
                    check_grading(&s.grading, "eigenspace grading", &mut r);
                }
                Err(e) => r.fail(Witness::new(format!("automorphism: {e}"))),
            }
        }
        if let Some((m, degrees)) = &doc.grading {
            match Grading::from_degrees(&alg, *m, degrees.clone(), CycloScalar::zeta_power(*m, 1)) {
                Ok(g) => check_grading(&g, "declared grading", &mut r),
                Err(e) => r.fail(Witness::new(format!("declared grading: {e}"))),
            }
        }
        r
    }))
}

/// The grading: eigenbasis, component dimensions and both contractions.
pub fn cmd_grade(s: &Setup, opts: &Options) -> Report {
    timed(|| {
        let g = &s.grading;
        let mut r = Report::new(s.label(), "grade", opts.seed);
        r.note(format!("order {}, zeta = {}", g.order(), s.zeta().to_text()));
        for k in 0..g.order() {
            let labels: Vec<&str> = g.component(k).into_iter().map(|b| g.algebra().label(b)).collect();
            r.note(format!("q_{k}: dim {} [{}]", labels.len(), labels.join(", ")));
        }
        for (label, vector) in g.describe_basis() {
            r.note(format!("{label} = {vector}"));
        }
        check_grading(g, "grading", &mut r);
        check_structure(&contract_zero(g), "g_(0)", &mut r);
        check_structure(&contract_infinity(g), "g_(inf)", &mut r);
        r
    })
}

/// Index of the algebra, of `g_(0)`, and the search for a regular covector on `q_0^*`.
pub fn cmd_index(s: &Setup, opts: &Options) -> Report {
    timed(|| {
        let mut r = Report::new(s.label(), "index", opts.seed);
        let ind = index(&s.algebra, opts.trials, opts.seed);
        let ind0 = index(&contract_zero(&s.grading), opts.trials, opts.seed);
        r.note(format!("ind = {} (rank {} at {:?})", ind.index, ind.rank, ind.witness));
        r.note(format!("ind g_(0) = {}", ind0.index));
        let q0 = check_q0_regular_intersection(&s.grading, opts.trials, opts.seed);
        match &q0.witness {
            Some(w) if q0.found => r.note(format!("regular covector in q_0^*: {w:?}")),
            _ => r.note(format!(
                "no regular covector in q_0^* after {} trials (best rank {}, need {})",
                q0.trials_used,
                q0.best_rank,
                s.algebra.dim() - q0.index
            )),
        }
        r
    })
}

fn default_window(s: &Setup, family: Option<&Family>) -> usize {
    let d = family.and_then(|f| f.eigen.iter().map(|x| x.0.degree()).max()).unwrap_or(2).max(1);
    2 * s.order() as usize * d as usize
}

fn commute_into(set: &GeneratorSet, r: &mut Report) -> Result<()> {
    let c = verify_pairwise_commute(set)?;
    r.note(format!("brackets computed in the cyclic quotient t^-{} = 1", c.quotient_size));
    match c.failing {
        Some((i, j, p)) => {
            let (a, b) = (&set.entries[i].name, &set.entries[j].name);
            r.fail(Witness::with_poly(format!("{{{a}, {b}}}"), p.to_text(&|v| set.window.label(v))));
        }
        None => {
            for i in 0..set.len() {
                for j in (i + 1)..set.len() {
                    r.identity(format!("{{{}, {}}} = 0", set.entries[i].name, set.entries[j].name));
                }
            }
        }
    }
    Ok(())
}

/// Pairwise Poisson-commutativity of the generators in the window `N`.
///
/// Reductive catalog algebras use their invariant family; otherwise the regular-covector
/// hypothesis is checked first and the window invariants up to degree 3 are used.
pub fn cmd_commute(s: &Setup, opts: &Options) -> Result<Report> {
    let start = std::time::Instant::now();
    let mut r = Report::new(s.label(), "commute", opts.seed);
    let set = if s.is_reductive() {
        let fam = s.family(opts.seed)?;
        let n = opts.window.unwrap_or_else(|| default_window(s, Some(&fam)));
        r.window = Some(n);
        r.note("regular covector on q_0^* exists for reductive algebras");
        generators_z0(&fam.eigen, &fam.h, &TwistedWindow::minus(s.grading.clone(), n))?
    } else {
        let n = opts.window.unwrap_or_else(|| default_window(s, None));
        r.window = Some(n);
        let hyp = check_q0_regular_intersection(&s.grading, opts.trials, opts.seed);
        match hyp.witness {
            Some(w) if hyp.found => r.note(format!("regular covector on q_0^*: {w:?}")),
            _ => {
                r.downgrade(
                    Status::Inconclusive,
                    Witness::new(format!("no regular covector on q_0^* in {} trials", hyp.trials_used)),
                );
                r.wall_time_ms = start.elapsed().as_millis() as u64;
                return Ok(r);
            }
        }
        let set = window_invariants(&TwistedWindow::minus(s.grading.clone(), n), WINDOW_DEGREE)?;
        let degrees: Vec<u32> = set.entries.iter().map(|e| e.poly.degree()).collect();
        r.note(format!("window invariants up to degree {WINDOW_DEGREE}: degrees {degrees:?}"));
        if set.is_empty() {
            r.downgrade(Status::Inconclusive, Witness::new("no invariants in the window"));
        }
        set
    };
    r.note(format!("{} generators: {}", set.len(), set.names().join(", ")));
    commute_into(&set, &mut r)?;
    r.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

/// The two non-reductive examples: the contraction at infinity of the sl2 involution and
/// `g_0` acting on it, each with the inherited grading, in the window `N = 4`.
pub fn example_suites(opts: &Options) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for id in ["sl2-inf", "sl2-tilde"] {
        let s = resolve(&json!(id), &json!("inherited"), 1)?;
        let mut o = *opts;
        o.window = Some(4);
        let mut r = cmd_commute(&s, &o)?;
        r.job = format!("{id} / inherited");
        out.push(r);
    }
    Ok(out)
}

/// Free generation: Jacobian rank of the window generators, nonzero generators, and
/// the vanishing of `F_[k]` for `k ≢ ℓ mod m`.
pub fn cmd_free(s: &Setup, opts: &Options) -> Result<Report> {
    let fam = s.family(opts.seed)?;
    let n = opts.window.unwrap_or_else(|| default_window(s, Some(&fam)));
    Ok(timed(|| {
        let mut r = Report::new(s.label(), "free", opts.seed);
        r.window = Some(n);
        let window = TwistedWindow::minus(s.grading.clone(), n);
        let set = match generators_z0(&fam.eigen, &fam.h, &window) {
            Ok(set) => set,
            Err(e) => {
                r.downgrade(Status::Inconclusive, Witness::new(e.to_string()));
                return r;
            }
        };
        r.note(format!("{} generators: {}", set.len(), set.names().join(", ")));
        for e in &set.entries {
            if e.poly.is_zero() {
                r.fail(Witness::new(format!("{} = 0", e.name)));
            } else {
                r.identity(format!("{} != 0", e.name));
            }
        }
        let rank = jacobian_rank_random(&set.polys(), opts.seed, 3);
        if rank.rank == set.len() {
            r.identity(format!("rank d({}) = {}", set.names().join(", "), rank.rank));
        } else {
            r.fail(Witness::new(format!("Jacobian rank {} < {} generators", rank.rank, set.len())));
        }
        let m = s.order() as i64;
        for (i, (f, ell)) in fam.eigen.iter().enumerate() {
            for k in -(n as i64)..=n as i64 {
                if (k - *ell as i64).rem_euclid(m) == 0 {
                    continue;
                }
                let p = t_polarisation(f, k, &s.grading);
                if p.is_zero() {
                    r.identity(format!("F{}[{k}] = 0", i + 1));
                } else {
                    r.fail(Witness::with_poly(format!("F{}[{k}] with l = {ell}", i + 1), p.to_text(&|v| window.label(v))));
                }
            }
        }
        r
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiMode {
    Z0,
    Zt,
}

/// Collapse identities for `ψ` up to `j ≤ bound`.
pub fn cmd_psi(s: &Setup, mode: PsiMode, bound: usize, opts: &Options) -> Result<Report> {
    let fam = s.family(opts.seed)?;
    let g = &s.grading;
    let label = |p: &Poly| p.to_text(&|v| crate::sympoly::var_label(g.algebra().labels(), v));
    let task = match mode {
        PsiMode::Z0 => "psi-z0",
        PsiMode::Zt => "psi-zt",
    };
    let start = std::time::Instant::now();
    let mut r = Report::new(s.label(), task, opts.seed);
    let m = s.order() as i64;
    match mode {
        PsiMode::Z0 => {
            for (i, (f, ell)) in fam.eigen.iter().enumerate() {
                for j in 0..=bound {
                    let k = *ell as i64 + j as i64 * m;
                    let c = verify_image_formula(f, *ell, j, g);
                    let text = format!("psi(F{}[{k}]) = {}", i + 1, label(&c.rhs));
                    if c.equal {
                        r.identity(text);
                    } else {
                        r.fail(Witness::with_poly(text, label(&c.lhs)));
                    }
                }
            }
            let t = transition_matrix(&fam.eigen, &fam.h, g, bound);
            r.note(format!("transition matrix {}x{} over {}", t.rows.len(), t.columns.len(), t.columns.join(", ")));
            for (row, entries) in t.rows.iter().zip(&t.entries) {
                r.note(format!("{row}: [{}]", entries.join(", ")));
            }
            if t.consistent && t.unitriangular {
                r.identity("transition matrix is lower unitriangular");
            } else {
                r.fail(Witness::new(format!(
                    "transition matrix: consistent = {}, unitriangular = {}",
                    t.consistent, t.unitriangular
                )));
            }
        }
        PsiMode::Zt => {
            let rk = index(&s.algebra, opts.trials, opts.seed).index;
            let ind0 = index(&contract_zero(g), opts.trials, opts.seed).index;
            r.note(format!("ind g_(0) = {ind0}, rk = {rk}"));
            r.note("codim-2 property of g_(0) assumed, not checked");
            if ind0 != rk {
                r.downgrade(Status::HypothesesNotEstablished, Witness::new(format!("ind g_(0) = {ind0} != rk = {rk}")));
                r.wall_time_ms = start.elapsed().as_millis() as u64;
                return Ok(r);
            }
            let tops: Vec<Poly> = fam.eigen.iter().map(|(f, _)| highest_component(f, g)).collect::<Result<_>>()?;
            let top_rank = jacobian_rank_random(&tops, opts.seed, 3).rank;
            if top_rank != tops.len() {
                r.downgrade(
                    Status::HypothesesNotEstablished,
                    Witness::new(format!("highest components have rank {top_rank} < {}: no g.g.s.", tops.len())),
                );
                r.wall_time_ms = start.elapsed().as_millis() as u64;
                return Ok(r);
            }
            r.identity(format!("highest components algebraically independent (rank {top_rank})"));
            for (i, (f, _)) in fam.eigen.iter().enumerate() {
                let top = phi_split(f, g).top_degree().ok_or(Error::EmptyInput("zero generator"))?;
                let b = m * f.degree() as i64 - top;
                r.note(format!("F{}: d = {}, top degree {top}, b = {b}", i + 1, f.degree()));
                for big_j in 0..=bound {
                    let k = b + big_j as i64 * m;
                    let c = verify_image_formula_strict(f, big_j, g)?;
                    let text = format!("psi(F{}[-{k}]) = {}", i + 1, label(&c.rhs));
                    if !c.equal {
                        r.fail(Witness::with_poly(text, label(&c.lhs)));
                    } else if big_j == 0 && c.lhs != tops[i] {
                        r.fail(Witness::with_poly(format!("psi(F{}[-{b}]) = F{}*", i + 1, i + 1), label(&c.lhs)));
                    } else {
                        r.identity(text);
                    }
                }
            }
            let zx = generators_zx(&fam.eigen.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), g).polys();
            let mut with_g0 = zx.clone();
            with_g0.extend(g.component(0).into_iter().map(|b| Poly::var(crate::sympoly::Var::plain(b))));
            let mut with_h = zx;
            with_h.extend(fam.h.iter().cloned());
            r.note(format!(
                "trdeg: components with a basis of g_0 {}, components with S(g_0)^g_0 {}, (dim + rk)/2 = {}",
                jacobian_rank_random(&with_g0, opts.seed, 3).rank,
                jacobian_rank_random(&with_h, opts.seed, 3).rank,
                (s.algebra.dim() + rk) / 2
            ));
        }
    }
    r.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

/// Invariance of each generator under the actors that reach the window.
pub fn cmd_invariance(s: &Setup, opts: &Options) -> Result<Report> {
    let fam = s.family(opts.seed)?;
    let n = opts.window.unwrap_or_else(|| default_window(s, Some(&fam)));
    let minus = TwistedWindow::minus(s.grading.clone(), n);
    let plus = TwistedWindow::positive(s.grading.clone(), 1, n);
    let z0 = generators_z0(&fam.eigen, &fam.h, &minus)?;
    let zt = generators_zt(&fam.eigen, &plus)?;
    Ok(timed(|| {
        let mut r = Report::new(s.label(), "invariance", opts.seed);
        r.window = Some(n);
        for (set, style, tag) in [(&z0, InvarianceStyle::Zero, "[0]"), (&zt, InvarianceStyle::T, "t")] {
            for e in &set.entries {
                match verify_invariance(&e.poly, &set.window, style) {
                    Ok(rep) => match rep.witness {
                        Some((actor, p)) => r.fail(Witness::with_poly(
                            format!("{{{}, {}}} ({tag})", set.window.label(actor), e.name),
                            p.to_text(&|v| set.window.label(v)),
                        )),
                        None => r.identity(format!("{} is {tag}-invariant ({} actors)", e.name, rep.actors_checked)),
                    },
                    Err(err) => r.downgrade(Status::Inconclusive, Witness::new(format!("{}: {err}", e.name))),
                }
            }
        }
        r
    }))
}

/// `H`-generators on `g^{⊕n}` for `n = 2, 3`: eigenvectors of the cyclic twist with the
/// expected eigenvalue, summing back to `F_i`, plus the DFT isomorphism of the quotient.
pub fn cmd_h_generators(s: &Setup, opts: &Options) -> Result<Report> {
    let fam = s.family(opts.seed)?;
    Ok(timed(|| {
        let mut r = Report::new(s.label(), "h-generators", opts.seed);
        let m = s.order();
        for n in [2usize, 3] {
            let zt = match choose_zeta_tilde(s.zeta(), m, n) {
                Ok(z) => z,
                Err(e) => {
                    r.fail(Witness::new(format!("n = {n}: {e}")));
                    continue;
                }
            };
            r.note(format!("n = {n}: zeta~ = {}", zt.to_text()));
            let (twist, hs) = match build_h_generators(&s.algebra, &s.theta, s.zeta(), &fam.original, n, &zt) {
                Ok(x) => x,
                Err(e) => {
                    r.fail(Witness::new(format!("n = {n}: {e}")));
                    continue;
                }
            };
            let sum_alg = crate::liealg::direct_sum(&s.algebra, n);
            let text = |p: &Poly| p.to_text(&|v| crate::sympoly::var_label(sum_alg.labels(), v));
            for h in &hs {
                let image = h.poly.apply_linear(twist.matrix());
                let expected = h.poly.scalar_mul(&h.eigenvalue);
                if image == expected {
                    r.identity(format!("n = {n}: twist({}) = ({}) {}", h.name, h.eigenvalue.to_text(), h.name));
                } else {
                    r.fail(Witness::with_poly(format!("n = {n}: twist({})", h.name), text(&image.sub(&expected))));
                }
            }
            for (i, (f, _)) in fam.original.iter().enumerate() {
                let mut sum = Poly::zero();
                for h in hs.iter().filter(|h| h.i == i) {
                    sum.add_assign(&h.poly);
                }
                if sum == *f {
                    r.identity(format!("n = {n}: sum_j H(i={}, j) = F{}", i + 1, i + 1));
                } else {
                    r.fail(Witness::with_poly(format!("n = {n}: sum_j H(i={}, j) - F{}", i + 1, i + 1), text(&sum.sub(f))));
                }
            }
            match build_cyclic_quotient(s.grading.clone(), n * m as usize) {
                Ok(q) => match dft_isomorphism(&q, &zt) {
                    None => r.identity(format!("n = {n}: quotient t^-{} = 1 is isomorphic to g^{n}", n * m as usize)),
                    Some((rank, dim)) => r.fail(Witness::new(format!("n = {n}: DFT map has rank {rank} of {dim}"))),
                },
                Err(e) => r.fail(Witness::new(format!("n = {n}: {e}"))),
            }
        }
        r
    }))
}

/// The catalog with each algebra exported together with its automorphisms.
pub fn cmd_catalog() -> Result<Value> {
    let mut out = Vec::new();
    for entry in catalog::list() {
        let alg = catalog::algebra(entry.id)?;
        let autos = entry
            .automorphisms
            .iter()
            .map(|a| catalog::automorphism(&alg, entry.id, a))
            .collect::<Result<Vec<_>>>()?;
        out.push(json!({
            "id": entry.id,
            "dim": entry.dim,
            "description": entry.description,
            "automorphisms": entry.automorphisms,
            "definition": export_algebra(&alg, &autos),
        }));
    }
    Ok(Value::Array(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n: Option<usize>) -> Options {
        Options { seed: 11, trials: 40, window: n }
    }

    fn setup(id: &str, auto: &str) -> Setup {
        resolve(&json!(id), &json!(auto), 1).unwrap()
    }

    #[test]
    fn check_catalog_and_broken_inputs() {
        let r = cmd_check(&json!("sl2"), &Value::Null, 1, &opts(None)).unwrap();
        assert!(r.passed(), "{r:?}");
        // [e,f] = h, [h,e] = 2e, [h,f] = e breaks Jacobi
        let broken = json!({"basis": ["e", "f", "h"], "brackets": [[0, 1, [[2, "1"]]], [2, 0, [[0, "2"]]], [2, 1, [[0, "1"]]]]});
        let r = cmd_check(&broken, &Value::Null, 1, &opts(None)).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.witnesses[0].what.contains("Jacobi"), "{:?}", r.witnesses);
        // [e, f] = h would need degree 0
        let mut sl2 = export_algebra(&catalog::algebra("sl2").unwrap(), &[]);
        sl2["grading"] = json!({"order": 2, "degrees": [1, 1, 1]});
        let r = cmd_check(&sl2, &Value::Null, 1, &opts(None)).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.witnesses[0].what.contains("declared grading"));
        assert!(cmd_check(&json!({"basis": 3}), &Value::Null, 1, &opts(None)).is_err());
    }

    #[test]
    fn commute_examples_pass() {
        assert!(cmd_commute(&setup("sl2", "id"), &opts(Some(6))).unwrap().passed());
        let r = cmd_commute(&setup("sl2", "inner:diag(1,-1)"), &opts(Some(8))).unwrap();
        assert!(r.passed(), "{r:?}");
        for r in example_suites(&opts(None)).unwrap() {
            assert!(r.passed(), "{}", r.to_text(5));
        }
    }

    #[test]
    fn free_counts() {
        let r = cmd_free(&setup("sl2", "inner:diag(1,-1)"), &opts(Some(8))).unwrap();
        assert!(r.passed());
        assert!(r.identities.iter().any(|i| i == "rank d(h1, F1[2], F1[4], F1[6], F1[8]) = 5"), "{:?}", r.identities);
        let r = cmd_free(&setup("sl2", "id"), &opts(Some(4))).unwrap();
        assert!(r.identities.iter().any(|i| i.ends_with("= 5") && i.starts_with("rank")), "{:?}", r.identities);
        let r = cmd_free(&setup("sl2", "inner:diag(1,-1)"), &opts(Some(0))).unwrap();
        assert!(r.identities.contains(&"rank d(h1) = 1".to_string()), "{:?}", r.identities);
    }

    #[test]
    fn psi_modes() {
        let s = setup("sl2", "inner:diag(1,-1)");
        assert!(cmd_psi(&s, PsiMode::Z0, 4, &opts(None)).unwrap().passed());
        let r = cmd_psi(&s, PsiMode::Zt, 3, &opts(None)).unwrap();
        assert!(r.passed(), "{}", r.to_text(3));
        assert!(r.notes.iter().any(|n| n.contains("b = 2")));
        assert!(r.notes.iter().any(|n| n.starts_with("trdeg: components with a basis of g_0 2,")), "{:?}", r.notes);
    }

    #[test]
    fn invariance_and_h_generators() {
        let s = setup("sl3", "outer:negtranspose");
        assert!(cmd_invariance(&s, &opts(Some(4))).unwrap().passed());
        let r = cmd_h_generators(&setup("sl2", "inner:diag(1,-1)"), &opts(None)).unwrap();
        assert!(r.passed(), "{}", r.to_text(3));
    }

    #[test]
    fn heisenberg_without_regular_covector_is_inconclusive() {
        let s = setup("heisenberg3", "inner:diag(1,-1,1)");
        let r = cmd_index(&s, &opts(None));
        assert!(r.notes.iter().any(|n| n.contains("q_0")));
        let r = cmd_commute(&s, &opts(Some(2))).unwrap();
        assert_ne!(r.status, Status::Fail);
    }
}
