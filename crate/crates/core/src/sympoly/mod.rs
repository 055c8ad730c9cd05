//! Sparse exact polynomials in Lie-algebra-indexed variables, with Poisson brackets,
//! φ-degree splittings and algebraic independence tests.

mod independence;
mod poisson;
mod split;

pub use independence::{is_in_linear_ideal, is_in_linear_ideal_by, jacobian_rank, jacobian_rank_random, RankReport};
pub use poisson::{poisson_bracket, PoissonStructure};
pub use split::{highest_component, phi_split, phi_split_by, theta_eigen_split, PhiSplit};

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::linalg::Matrix;
use crate::scalars::CycloScalar;

/// The variable `x_base · t^t`. Plain finite-dimensional use has `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Var {
    pub t: i32,
    pub base: u32,
}

impl Var {
    pub fn new(base: usize, t: i32) -> Self {
        Var { t, base: base as u32 }
    }

    pub fn plain(base: usize) -> Self {
        Var { t: 0, base: base as u32 }
    }

    pub fn base(&self) -> usize {
        self.base as usize
    }
}

/// A monomial as a sorted list of `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        let mut s = SmallVec::new();
        s.push((v, 1));
        Monomial(s)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m.mul_var(v, e);
        }
        m
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul_var(&mut self, v: Var, e: u32) {
        if e == 0 {
            return;
        }
        match self.0.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.0[i].1 += e,
            Err(i) => self.0.insert(i, (v, e)),
        }
    }

    /// Removes one factor of `v`; the caller guarantees it is present.
    pub fn div_var(&mut self, v: Var) {
        let i = self.0.binary_search_by(|(w, _)| w.cmp(&v)).expect("variable present");
        if self.0[i].1 == 1 {
            self.0.remove(i);
        } else {
            self.0[i].1 -= 1;
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Sum of `w(v)·e` over the factors.
    pub fn weight(&self, w: impl Fn(Var) -> i64) -> i64 {
        self.0.iter().map(|(v, e)| w(*v) * *e as i64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact cyclotomic coefficients; no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, CycloScalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: CycloScalar) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v), CycloScalar::one())
    }

    pub fn term(m: Monomial, c: CycloScalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// Builds from terms, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, CycloScalar)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn from_map(map: HashMap<Monomial, CycloScalar>) -> Self {
        Poly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> CycloScalar {
        self.terms.get(m).cloned().unwrap_or_else(CycloScalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scalar_mul(&self, c: &CycloScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, CycloScalar> = HashMap::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Poly::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(CycloScalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.div_var(v);
            out.add_term(m2, c * &CycloScalar::from_int(e as i64));
        }
        out
    }

    /// Maximal total degree; zero has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect()
    }

    pub fn min_t(&self) -> Option<i32> {
        self.vars().iter().map(|v| v.t).min()
    }

    pub fn max_t(&self) -> Option<i32> {
        self.vars().iter().map(|v| v.t).max()
    }

    /// Renames variables; colliding images merge.
    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Poly {
        Poly::from_terms(
            self.terms.iter().map(|(m, c)| (Monomial::from_pairs(m.0.iter().map(|(v, e)| (f(*v), *e))), c.clone())),
        )
    }

    /// Keeps the terms satisfying the predicate.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Substitutes every variable by a polynomial; `f` is called once per distinct variable.
    pub fn substitute(&self, f: impl Fn(Var) -> Poly) -> Poly {
        let mut images: HashMap<Var, Vec<Poly>> = HashMap::new();
        for m in self.terms.keys() {
            for &(v, e) in m.0.iter() {
                let powers = images.entry(v).or_insert_with(|| vec![Poly::constant(CycloScalar::one()), f(v)]);
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul(&powers[1]);
                    powers.push(next);
                }
            }
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &(v, e) in m.0.iter() {
                t = t.mul(&images[&v][e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            out.add_assign(&t);
        }
        out
    }

    /// Applies a linear map on base indices (`x_b ↦ Σ_r M[r][b] x_r`), keeping t-exponents.
    pub fn apply_linear(&self, matrix: &Matrix) -> Poly {
        self.substitute(|v| {
            let b = v.base();
            Poly::from_terms(
                matrix
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| !row[b].is_zero())
                    .map(|(r, row)| (Monomial::var(Var::new(r, v.t)), row[b].clone())),
            )
        })
    }

    pub fn eval(&self, point: impl Fn(Var) -> CycloScalar) -> CycloScalar {
        let mut cache: HashMap<Var, CycloScalar> = HashMap::new();
        let mut acc = CycloScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.0.iter() {
                let x = cache.entry(v).or_insert_with(|| point(v));
                t = &t * &x.pow(e);
            }
            acc += &t;
        }
        acc
    }

    pub fn to_text(&self, label: &dyn Fn(Var) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::with_capacity(self.len());
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if m.is_one() || !c.is_one() {
                factors.push(c.to_text());
            }
            for &(v, e) in m.0.iter() {
                let base = label(v);
                factors.push(if e == 1 { base } else { format!("{base}^{e}") });
            }
            parts.push(factors.join(" * "));
        }
        parts.join(" + ")
    }

    pub fn to_json(&self, label: &dyn Fn(Var) -> String) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let factors: Vec<serde_json::Value> = m
                    .0
                    .iter()
                    .map(|(v, e)| serde_json::json!({"base": v.base, "t": v.t, "label": label(*v), "exp": e}))
                    .collect();
                serde_json::json!({"coeff": c.to_json_coeffs(), "cyclotomic_order": c.order(), "monomial": factors})
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

/// Default variable label: the basis label, with `[t^k]` when `k ≠ 0`.
pub fn var_label(labels: &[String], v: Var) -> String {
    if v.t == 0 {
        labels[v.base()].clone()
    } else {
        format!("{}[t^{}]", labels[v.base()], v.t)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_text(&|v: Var| if v.t == 0 { format!("x{}", v.base) } else { format!("x{}[t^{}]", v.base, v.t) });
        f.write_str(&s)
    }
}
