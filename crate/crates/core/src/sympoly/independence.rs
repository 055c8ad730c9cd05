use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg;
use crate::scalars::CycloScalar;

use super::{Poly, Var};

/// Outcome of a randomized Jacobian rank computation.
#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub polys: usize,
    pub variables: usize,
    pub attempts: usize,
    pub bound: i64,
    pub seed: u64,
}

impl RankReport {
    pub fn is_full(&self) -> bool {
        self.rank == self.polys
    }
}

fn gradient_row(f: &Poly, vars: &[Var], values: &HashMap<Var, CycloScalar>) -> Vec<CycloScalar> {
    let col: HashMap<Var, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut row = vec![CycloScalar::zero(); vars.len()];
    for (m, c) in f.terms() {
        let factors = m.factors();
        for (i, &(v, e)) in factors.iter().enumerate() {
            let mut t = c * &CycloScalar::from_int(e as i64);
            if e > 1 {
                t = &t * &values[&v].pow(e - 1);
            }
            for (j, &(w, ew)) in factors.iter().enumerate() {
                if j != i {
                    t = &t * &values[&w].pow(ew);
                }
            }
            row[col[&v]] += &t;
        }
    }
    row
}

/// Rank of `(∂F_a/∂v)` at the given point, over all variables occurring in `polys`.
pub fn jacobian_rank(polys: &[Poly], point: impl Fn(Var) -> CycloScalar) -> usize {
    let vars: Vec<Var> = polys.iter().flat_map(|p| p.vars()).collect::<BTreeSet<_>>().into_iter().collect();
    let values: HashMap<Var, CycloScalar> = vars.iter().map(|v| (*v, point(*v))).collect();
    let m: linalg::Matrix = polys.iter().map(|f| gradient_row(f, &vars, &values)).collect();
    linalg::rank(&m)
}

/// Jacobian rank at seeded integer points, starting in `[−7, 7]` and doubling the box on each
/// retry while the rank stays below `#polys`. Reports the maximum.
pub fn jacobian_rank_random(polys: &[Poly], seed: u64, retries: usize) -> RankReport {
    let vars: Vec<Var> = polys.iter().flat_map(|p| p.vars()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    let mut bound = 7i64;
    let mut attempts = 0;
    for attempt in 0..=retries {
        attempts = attempt + 1;
        let values: HashMap<Var, CycloScalar> =
            vars.iter().map(|v| (*v, CycloScalar::from_int(rng.random_range(-bound..=bound)))).collect();
        let r = jacobian_rank(polys, |v| values[&v].clone());
        best = best.max(r);
        if best >= polys.len().min(vars.len()) {
            break;
        }
        bound *= 2;
    }
    RankReport { rank: best, polys: polys.len(), variables: vars.len(), attempts, bound, seed }
}

/// Whether every monomial of `f` contains a factor from the given variables.
pub fn is_in_linear_ideal(f: &Poly, subspace: &[Var]) -> bool {
    let set: BTreeSet<Var> = subspace.iter().copied().collect();
    is_in_linear_ideal_by(f, |v| set.contains(&v))
}

pub fn is_in_linear_ideal_by(f: &Poly, member: impl Fn(Var) -> bool) -> bool {
    f.terms().all(|(m, _)| m.factors().iter().any(|(v, _)| member(*v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::plain(0))
    }
    fn y() -> Poly {
        Poly::var(Var::plain(1))
    }

    #[test]
    fn rank_examples() {
        let r = jacobian_rank_random(&[x(), y(), x().add(&y())], 1, 3);
        assert_eq!(r.rank, 2);
        let f = x().mul(&y()).add(&x().pow(2));
        assert_eq!(jacobian_rank_random(&[f.clone(), f.pow(2)], 1, 3).rank, 1);
        // Casimir of sl2 with e, f, h = 0, 1, 2
        let cas = x().mul(&y()).add(&Poly::var(Var::plain(2)).pow(2).scalar_mul(&CycloScalar::frac(1, 4)));
        assert_eq!(jacobian_rank_random(&[cas], 2, 3).rank, 1);
    }

    #[test]
    fn rank_at_fixed_point() {
        let f = x().pow(2);
        assert_eq!(jacobian_rank(&[f.clone()], |_| CycloScalar::zero()), 0);
        assert_eq!(jacobian_rank(&[f], |_| CycloScalar::one()), 1);
    }

    #[test]
    fn ideal_membership() {
        let vx = Var::plain(0);
        assert!(is_in_linear_ideal(&x().mul(&y()), &[vx]));
        assert!(!is_in_linear_ideal(&y().pow(2).add(&x()), &[vx]));
        assert!(is_in_linear_ideal(&Poly::zero(), &[vx]));
    }
}
