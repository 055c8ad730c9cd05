use std::collections::HashMap;

use crate::liealg::Grading;
use crate::scalars::CycloScalar;
use crate::sympoly::{Poly, Var};

/// Which copy of the loop variables a polarisation lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolSide {
    /// `x ∈ q_ī` spreads over `x t^{-(ī + jm)}`, `j ≥ 0`.
    Minus,
    /// `x ∈ q_ī` spreads over `x t^{p}` with `p ≡ −ī (mod m)`, `p ≥ 0`.
    Plus,
    /// As `Plus` but starting from `p ≥ 1`, so `q_0` first appears at `t^m`.
    PlusStrict,
}

/// Truncated power series in `s` with polynomial coefficients.
type Series = Vec<Poly>;

fn series_mul(a: &Series, b: &Series, top: usize) -> Series {
    let mut out = vec![Poly::zero(); top + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(top + 1 - i) {
            if !y.is_zero() {
                out[i + j].add_assign(&x.mul(y));
            }
        }
    }
    out
}

/// Smallest s-exponent and the t-exponent sign for a base variable of the given degree.
fn first_exponent(side: PolSide, degree: u32, m: u32) -> (usize, i32) {
    match side {
        PolSide::Minus => (degree as usize, -1),
        PolSide::Plus => (((m - degree) % m) as usize, 1),
        PolSide::PlusStrict => ((m - degree) as usize, 1),
    }
}

/// The s^k coefficient of `F` after substituting `x ↦ Σ_p s^p x t^{±p}` over the admissible `p`.
///
/// `k ≥ 0` and `k` is the absolute polarisation index; the side fixes the sign of `t`.
pub fn polarise(f: &Poly, k: usize, grading: &Grading, side: PolSide) -> Poly {
    let m = grading.order();
    // x ↦ Σ s^p x t^{±p}, truncated at s^k
    let mut series_cache: HashMap<Var, Series> = HashMap::new();
    let mut power_cache: HashMap<(Var, u32), Series> = HashMap::new();
    let mut out = Poly::zero();
    for (mono, c) in f.terms() {
        let mut low = 0usize;
        for &(v, e) in mono.factors() {
            low += first_exponent(side, grading.degree(v.base()), m).0 * e as usize;
        }
        if low > k || (k - low) % m as usize != 0 {
            continue;
        }
        let mut acc: Series = vec![Poly::zero(); k + 1];
        acc[0] = Poly::constant(c.clone());
        for &(v, e) in mono.factors() {
            let pw = power_cache
                .entry((v, e))
                .or_insert_with(|| {
                    let s = series_cache
                        .entry(v)
                        .or_insert_with(|| {
                            let (p0, sign) = first_exponent(side, grading.degree(v.base()), m);
                            let mut s = vec![Poly::zero(); k + 1];
                            let mut p = p0;
                            while p <= k {
                                s[p] = Poly::var(Var::new(v.base(), sign * p as i32));
                                p += m as usize;
                            }
                            s
                        })
                        .clone();
                    let mut r = s.clone();
                    for _ in 1..e {
                        r = series_mul(&r, &s, k);
                    }
                    r
                })
                .clone();
            acc = series_mul(&acc, &pw, k);
        }
        out.add_assign(&acc[k]);
    }
    out
}

/// `F_[k]`: `k ≥ 0` lands in `S(q[t^{-1}]^θ)`, `k < 0` in `S(q[t]^θ)`.
pub fn t_polarisation(f: &Poly, k: i64, grading: &Grading) -> Poly {
    if k >= 0 {
        polarise(f, k as usize, grading, PolSide::Minus)
    } else {
        polarise(f, (-k) as usize, grading, PolSide::Plus)
    }
}

/// `F_[k]` for `k < 0` inside `S(t q[t]^θ)`, where `q_0` sits at `t^m`.
pub fn t_polarisation_strict(f: &Poly, k: i64, grading: &Grading) -> Poly {
    polarise(f, k.unsigned_abs() as usize, grading, PolSide::PlusStrict)
}

/// `ψ`: collapses `t^m = 1`, sending every `x t^{k}` to `x`.
pub fn psi_quotient(f: &Poly) -> Poly {
    f.map_vars(|v| Var::new(v.base(), 0))
}

/// `binom(n, k)` as an exact scalar; zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> CycloScalar {
    if k < 0 || n < 0 || k > n {
        return CycloScalar::zero();
    }
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    CycloScalar::from_rational(crate::scalars::Rational::from_integer(acc))
}

/// Whether every variable of `f` respects `x ∈ q_{k̄}` at `t^{-k}`.
pub fn respects_grading(f: &Poly, grading: &Grading) -> bool {
    let m = grading.order() as i64;
    f.vars().iter().all(|v| (-(v.t as i64)).rem_euclid(m) == grading.degree(v.base()) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{catalog, charpoly_invariants};
    use crate::liealg::grading_from_automorphism;

    fn sl2_trivial() -> Grading {
        Grading::trivial(&catalog::algebra("sl2").unwrap())
    }

    fn sl2_involution() -> Grading {
        let sl2 = catalog::algebra("sl2").unwrap();
        let th = catalog::automorphism(&sl2, "sl2", "inner:diag(1,-1)").unwrap();
        grading_from_automorphism(&sl2, &th, &CycloScalar::from_int(-1)).unwrap()
    }

    fn v(b: usize, t: i32) -> Poly {
        Poly::var(Var::new(b, t))
    }

    #[test]
    fn untwisted_first_polarisations() {
        let g = sl2_trivial();
        let f = charpoly_invariants(2).unwrap().generators[0].poly.clone();
        assert_eq!(t_polarisation(&f, 0, &g), f);
        // e0 f1 + e1 f0 + h0 h1 / 2 with x_j = x t^{-j}
        let expected = v(0, 0)
            .mul(&v(1, -1))
            .add(&v(0, -1).mul(&v(1, 0)))
            .add(&v(2, 0).mul(&v(2, -1)).scalar_mul(&CycloScalar::frac(1, 2)));
        assert_eq!(t_polarisation(&f, 1, &g), expected);
    }

    #[test]
    fn odd_polarisations_vanish_for_involution() {
        let g = sl2_involution();
        let f = crate::invariants::to_eigenbasis(&charpoly_invariants(2).unwrap().generators[0].poly, &g).unwrap();
        for k in [-5i64, -3, -1, 1, 3, 5] {
            assert!(t_polarisation(&f, k, &g).is_zero(), "k = {k}");
        }
        assert!(!t_polarisation(&f, 2, &g).is_zero());
        assert!(respects_grading(&t_polarisation(&f, 4, &g), &g));
    }

    #[test]
    fn psi_examples() {
        let g = sl2_trivial();
        let f = charpoly_invariants(2).unwrap().generators[0].poly.clone();
        assert_eq!(psi_quotient(&t_polarisation(&f, 1, &g)), f.scalar_mul(&CycloScalar::from_int(2)));
        let g = sl2_involution();
        let f = crate::invariants::to_eigenbasis(&f, &g).unwrap();
        let (e, fi, h) = (g.algebra().index_of("e").unwrap(), g.algebra().index_of("f").unwrap(), g.algebra().index_of("h").unwrap());
        let expected = v(e, 0).mul(&v(fi, 0)).add(&v(h, 0).pow(2).scalar_mul(&CycloScalar::frac(1, 2)));
        assert_eq!(psi_quotient(&t_polarisation(&f, 2, &g)), expected);
    }

    #[test]
    fn strict_side_starts_at_highest_component() {
        let g = sl2_involution();
        let f = crate::invariants::to_eigenbasis(&charpoly_invariants(2).unwrap().generators[0].poly, &g).unwrap();
        let (e, fi) = (g.algebra().index_of("e").unwrap(), g.algebra().index_of("f").unwrap());
        assert!(t_polarisation_strict(&f, -1, &g).is_zero());
        assert_eq!(t_polarisation_strict(&f, -2, &g), v(e, 1).mul(&v(fi, 1)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), CycloScalar::from_int(10));
        assert_eq!(binomial(3, 0), CycloScalar::one());
        assert!(binomial(2, 3).is_zero());
    }
}
