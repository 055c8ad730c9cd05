//! Exact scalars: ℚ and the cyclotomic fields ℚ(ζ_M).
//!
//! A [`CycloScalar`] stores coordinates in the power basis `1, ζ, …, ζ^{φ(M)−1}` reduced
//! modulo the cyclotomic polynomial Φ_M. Operands of different orders are lifted to the
//! field of order `lcm(M₁, M₂)` via `ζ_m = ζ_M^{M/m}` before combining.

mod cyclotomic;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, lcm, IntPoly};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(format!("scalar {s:?}"), "expected integer or a/b");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An element of ℚ(ζ_M).
#[derive(Clone, Debug)]
pub struct CycloScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycloScalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloScalar { order: 1, coeffs: vec![r] }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// Builds an element of ℚ(ζ_M) from power-basis coordinates; longer inputs are reduced.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let order = canonical_order(order);
        let ctx = cyclotomic::context(order);
        let coeffs = if coeffs.len() > ctx.phi {
            reduce_long(order, coeffs)
        } else {
            ctx.reduce(coeffs)
        };
        CycloScalar { order, coeffs }
    }

    /// ζ_M^k with k taken modulo M.
    pub fn zeta_power(order: u32, k: i64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let e = k.rem_euclid(order as i64) as usize;
        if order == 2 {
            return Self::from_int(if e == 0 { 1 } else { -1 });
        }
        let order = canonical_order(order);
        let ctx = cyclotomic::context(order);
        CycloScalar { order, coeffs: ctx.power(e) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if this element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses this element in ℚ(ζ_target); `self.order` must divide `target`.
    pub fn lift(&self, target: u32) -> Self {
        let target = canonical_order(target);
        if target == self.order {
            return self.clone();
        }
        if let Some(r) = self.as_rational() {
            let ctx = cyclotomic::context(target);
            let mut coeffs = vec![Rational::zero(); ctx.phi];
            coeffs[0] = r.clone();
            return CycloScalar { order: target, coeffs };
        }
        assert!(target % self.order == 0, "cannot lift order {} into {}", self.order, target);
        let step = (target / self.order) as usize;
        let ctx = cyclotomic::context(target);
        let mut out = vec![Rational::zero(); ctx.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = ctx.power(j * step);
            for (o, pi) in out.iter_mut().zip(p.iter()) {
                if !pi.is_zero() {
                    *o += c * pi;
                }
            }
        }
        CycloScalar { order: target, coeffs: out }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.order, b.order);
        (a.lift(m), b.lift(m))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let ctx = cyclotomic::context(self.order);
        let inv = poly_inverse_mod(&self.coeffs, &ctx.modulus).ok_or(Error::DivisionByZero)?;
        Ok(CycloScalar::from_coeffs(self.order, inv))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Text form: `a/b` for rationals, `(c0+c1*z+c2*z^2)` otherwise, with z = ζ_M.
    pub fn to_text(&self) -> String {
        if let Some(r) = self.as_rational() {
            return rational_to_text(r);
        }
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mon = match j {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{j}"),
            };
            let body = if j == 0 {
                rational_to_text(c)
            } else if c.is_one() {
                mon
            } else if (-c).is_one() {
                format!("-{mon}")
            } else {
                format!("{}*{mon}", rational_to_text(c))
            };
            if !parts.is_empty() && !body.starts_with('-') {
                parts.push(format!("+{body}"));
            } else {
                parts.push(body);
            }
        }
        format!("({})", parts.concat())
    }

    /// Coefficient strings for the JSON mirror.
    pub fn to_json_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_to_text).collect()
    }

    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().map(|r| r.is_negative()).unwrap_or(false)
    }
}

fn canonical_order(m: u32) -> u32 {
    if m <= 2 {
        1
    } else {
        m
    }
}

fn reduce_long(order: u32, coeffs: Vec<Rational>) -> Vec<Rational> {
    let ctx = cyclotomic::context(order);
    let mut out = vec![Rational::zero(); ctx.phi];
    for (e, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, p) in out.iter_mut().zip(ctx.power(e)) {
            if !p.is_zero() {
                *o += &c * p;
            }
        }
    }
    out
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `modulus` via the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[Rational], modulus: &[Rational]) -> Option<Vec<Rational>> {
    let (mut r0, mut r1) = (modulus.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd, a nonzero constant when the modulus is irreducible
    if r0.len() != 1 || r0[0].is_zero() {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloScalar {}

impl From<Rational> for CycloScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return CycloScalar { order: self.order, coeffs };
        }
        let (a, b) = CycloScalar::common(self, rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
            return CycloScalar { order: self.order, coeffs };
        }
        let (a, b) = CycloScalar::common(self, rhs);
        &a - &b
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        if self.coeffs.len() == 1 && rhs.coeffs.len() == 1 {
            return CycloScalar { order: 1, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        if self.coeffs.len() == 1 {
            let c = &self.coeffs[0];
            return CycloScalar { order: rhs.order, coeffs: rhs.coeffs.iter().map(|x| x * c).collect() };
        }
        if rhs.coeffs.len() == 1 {
            let c = &rhs.coeffs[0];
            return CycloScalar { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        }
        if self.order != rhs.order {
            let (a, b) = CycloScalar::common(self, rhs);
            return &a * &b;
        }
        let ctx = cyclotomic::context(self.order);
        let prod = poly_mul(&self.coeffs, &rhs.coeffs);
        CycloScalar { order: self.order, coeffs: ctx.reduce(prod) }
    }
}

impl<'a> Div<&'a CycloScalar> for &'a CycloScalar {
    type Output = Result<CycloScalar>;
    fn div(self, rhs: &CycloScalar) -> Result<CycloScalar> {
        Ok(self * &rhs.inverse()?)
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = &*self * rhs;
    }
}
