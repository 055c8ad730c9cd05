use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::scalars::CycloScalar;

use super::{Monomial, Poly, Var};

/// A Lie bracket on variables, extended to polynomials by the Leibniz rule.
pub trait PoissonStructure: Sync {
    /// `{a, b}` as a linear combination of variables.
    fn bracket_vars(&self, a: Var, b: Var) -> Result<Vec<(Var, CycloScalar)>>;
}

impl PoissonStructure for LieAlgebra {
    fn bracket_vars(&self, a: Var, b: Var) -> Result<Vec<(Var, CycloScalar)>> {
        for v in [a, b] {
            if v.t != 0 || v.base() >= self.dim() {
                return Err(Error::UnknownVariable(format!("x{}[t^{}] in {}", v.base, v.t, self.name())));
            }
        }
        Ok(self.bracket_basis(a.base(), b.base()).iter().map(|(k, c)| (Var::plain(*k), c.clone())).collect())
    }
}

/// `{f, g} = Σ ∂f/∂a · ∂g/∂b · {a, b}`, evaluated term pair by term pair.
pub fn poisson_bracket<S: PoissonStructure + ?Sized>(s: &S, f: &Poly, g: &Poly) -> Result<Poly> {
    let fv = f.vars();
    let gv = g.vars();
    let mut table: HashMap<(Var, Var), Vec<(Var, CycloScalar)>> = HashMap::new();
    for &a in &fv {
        for &b in &gv {
            let br = s.bracket_vars(a, b)?;
            if !br.is_empty() {
                table.insert((a, b), br);
            }
        }
    }
    if table.is_empty() {
        return Ok(Poly::zero());
    }
    let mut acc: HashMap<Monomial, CycloScalar> = HashMap::new();
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            let c12 = c1 * c2;
            for &(a, ea) in m1.factors() {
                for &(b, eb) in m2.factors() {
                    let Some(br) = table.get(&(a, b)) else { continue };
                    let mut rest1 = m1.clone();
                    rest1.div_var(a);
                    let mut rest2 = m2.clone();
                    rest2.div_var(b);
                    let rest = rest1.mul(&rest2);
                    let base = &c12 * &CycloScalar::from_int((ea * eb) as i64);
                    for (v, c) in br {
                        let mut m = rest.clone();
                        m.mul_var(*v, 1);
                        let coeff = &base * c;
                        match acc.entry(m) {
                            std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &coeff,
                            std::collections::hash_map::Entry::Vacant(e) => {
                                e.insert(coeff);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Poly::from_map(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::catalog;

    fn p(i: usize) -> Poly {
        Poly::var(Var::plain(i))
    }

    #[test]
    fn degree_one_is_the_bracket() {
        let sl2 = catalog::algebra("sl2").unwrap();
        assert_eq!(poisson_bracket(&sl2, &p(0), &p(1)).unwrap(), p(2));
    }

    #[test]
    fn casimir_is_central() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let cas = p(0).mul(&p(1)).add(&p(2).pow(2).scalar_mul(&CycloScalar::frac(1, 4)));
        for i in 0..3 {
            assert!(poisson_bracket(&sl2, &cas, &p(i)).unwrap().is_zero());
        }
    }

    #[test]
    fn abelian_brackets_vanish() {
        let a = LieAlgebra::abelian("a", 2);
        assert!(poisson_bracket(&a, &p(0), &p(1)).unwrap().is_zero());
    }

    #[test]
    fn unknown_variable() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let bad = Poly::var(Var::plain(7));
        assert!(matches!(poisson_bracket(&sl2, &bad, &p(0)), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn leibniz_on_sample() {
        let sl2 = catalog::algebra("sl2").unwrap();
        let f = p(0).mul(&p(2));
        let g = p(1);
        let h = p(1).add(&p(2));
        let lhs = poisson_bracket(&sl2, &f, &g.mul(&h)).unwrap();
        let rhs = poisson_bracket(&sl2, &f, &g)
            .unwrap()
            .mul(&h)
            .add(&g.mul(&poisson_bracket(&sl2, &f, &h).unwrap()));
        assert_eq!(lhs, rhs);
    }
}
