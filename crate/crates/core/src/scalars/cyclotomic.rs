//! Cyclotomic polynomials and the reduction data for the power basis of ℚ(ζ_M).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Dense integer polynomial, lowest degree first.
pub type IntPoly = Vec<BigInt>;

/// Returns Φ_M by dividing x^M − 1 by Φ_d for every proper divisor d of M.
pub fn cyclotomic_polynomial(m: u32) -> IntPoly {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut cache: HashMap<u32, IntPoly> = HashMap::new();
    cyclotomic_rec(m, &mut cache)
}

fn cyclotomic_rec(m: u32, cache: &mut HashMap<u32, IntPoly>) -> IntPoly {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // x^m - 1
    let mut num: IntPoly = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_rec(d, cache);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    cache.insert(m, num.clone());
    num
}

/// Exact division by a monic integer polynomial; panics if there is a remainder.
fn exact_div_monic(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.clone();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "cyclotomic division left a remainder");
    quot
}

pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Reduction data for one cyclotomic order.
#[derive(Debug)]
pub(crate) struct FieldContext {
    pub phi: usize,
    /// Φ_M with rational coefficients (monic).
    pub modulus: Vec<Rational>,
    /// `high_powers[k]` = x^(phi + k) reduced mod Φ_M, for 0 ≤ k < phi - 1.
    pub high_powers: Vec<Vec<Rational>>,
}

impl FieldContext {
    fn new(m: u32) -> Self {
        let poly = cyclotomic_polynomial(m);
        let phi = poly.len() - 1;
        let modulus: Vec<Rational> = poly.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let mut high_powers = Vec::new();
        // x^phi = -(Φ_M - x^phi)
        let mut cur: Vec<Rational> = modulus[..phi].iter().map(|c| -c.clone()).collect();
        for _ in 0..phi.saturating_sub(1) {
            high_powers.push(cur.clone());
            // multiply by x
            let top = cur[phi - 1].clone();
            let mut next = vec![Rational::zero(); phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..phi {
                    next[i] -= &top * &modulus[i];
                }
            }
            cur = next;
        }
        FieldContext { phi, modulus, high_powers }
    }

    /// Reduces a dense product of length ≤ 2·phi − 1 into the power basis.
    pub fn reduce(&self, mut prod: Vec<Rational>) -> Vec<Rational> {
        let phi = self.phi;
        if prod.len() <= phi {
            prod.resize(phi, Rational::zero());
            return prod;
        }
        let mut out: Vec<Rational> = prod.drain(..phi).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let hp = self.high_powers.get(k).cloned().unwrap_or_else(|| self.power(phi + k));
            for (o, h) in out.iter_mut().zip(hp.iter()) {
                if !h.is_zero() {
                    *o += &c * h;
                }
            }
        }
        out
    }

    /// x^e reduced mod Φ_M for arbitrary e.
    pub fn power(&self, e: usize) -> Vec<Rational> {
        let phi = self.phi;
        let mut cur = vec![Rational::zero(); phi];
        if e < phi {
            cur[e] = Rational::one();
            return cur;
        }
        cur[phi - 1] = Rational::one();
        for _ in phi..=e {
            let top = cur[phi - 1].clone();
            let mut next = vec![Rational::zero(); phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..phi {
                    next[i] -= &top * &self.modulus[i];
                }
            }
            cur = next;
        }
        cur
    }
}

pub(crate) fn context(m: u32) -> Arc<FieldContext> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldContext>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(ctx) = cache.read().expect("cyclotomic cache poisoned").get(&m) {
        return ctx.clone();
    }
    let ctx = Arc::new(FieldContext::new(m));
    cache.write().expect("cyclotomic cache poisoned").entry(m).or_insert(ctx).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=30 {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, euler_phi(m), "M = {m}");
        }
    }

    #[test]
    fn product_over_divisors_is_xm_minus_one() {
        for m in 1..=18u32 {
            let mut prod = ints(&[1]);
            for d in (1..=m).filter(|d| m % d == 0) {
                let p = cyclotomic_polynomial(d);
                let mut out = vec![BigInt::zero(); prod.len() + p.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in p.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                prod = out;
            }
            let mut expect = vec![BigInt::zero(); m as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[m as usize] = BigInt::one();
            assert_eq!(prod, expect);
        }
    }
}
