use crate::error::{Error, Result};
use crate::liealg::{cyclic_twist, is_primitive_root, Automorphism, LieAlgebra};
use crate::scalars::CycloScalar;
use crate::sympoly::Poly;

/// One `H_{rj+i}` together with its expected `θ̃`-eigenvalue.
#[derive(Clone, Debug)]
pub struct HGenerator {
    pub name: String,
    pub i: usize,
    pub j: usize,
    pub ell: u32,
    pub poly: Poly,
    /// `ℓ_i − mj` reduced mod `N = nm`.
    pub exponent: u32,
    pub eigenvalue: CycloScalar,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The first `ζ_N^a` with `gcd(a, N) = 1` whose n-th power is `ζ`.
pub fn choose_zeta_tilde(zeta: &CycloScalar, m: u32, n: usize) -> Result<CycloScalar> {
    let big = m as usize * n;
    (1..=big)
        .filter(|a| gcd(*a, big) == 1)
        .map(|a| CycloScalar::zeta_power(big as u32, a as i64))
        .find(|z| z.pow(n as u32) == *zeta)
        .ok_or_else(|| Error::BadRoot(format!("no primitive {big}-th root over {}", zeta.to_text())))
}

/// `H_{rj+i} = (1/n) Σ_k ω^{jk} ζ̃^{-kℓ_i} θ̃^k(F_i)` on `g^{⊕n}`, with `F_i` in the first copy.
///
/// `family` holds the generators in the original basis of `alg` with their eigen-exponents
/// `θ(F_i) = ζ^{ℓ_i} F_i`. Returns `θ̃` and the `H` in the order `rj + i`.
pub fn build_h_generators(
    alg: &LieAlgebra,
    theta: &Automorphism,
    zeta: &CycloScalar,
    family: &[(Poly, u32)],
    n: usize,
    zeta_tilde: &CycloScalar,
) -> Result<(Automorphism, Vec<HGenerator>)> {
    let m = theta.order();
    let big = m as usize * n;
    if n == 0 || zeta_tilde.pow(n as u32) != *zeta || !is_primitive_root(zeta_tilde, big as u32) {
        return Err(Error::BadRoot(zeta_tilde.to_text()));
    }
    let twist = cyclic_twist(alg, theta, n)?;
    let powers: Vec<_> = (0..n).map(|k| twist.power(k as u32)).collect();
    let omega = zeta_tilde.pow(m);
    let inv = zeta_tilde.inverse()?;
    let scale = CycloScalar::frac(1, n as i64);
    let r = family.len();
    let mut out = Vec::with_capacity(r * n);
    for j in 0..n {
        for (i, (f, ell)) in family.iter().enumerate() {
            let images: Vec<Poly> = powers.iter().map(|p| f.apply_linear(p)).collect();
            let mut h = Poly::zero();
            for (k, img) in images.iter().enumerate() {
                let c = &omega.pow((j * k) as u32) * &inv.pow(k as u32 * ell);
                h.add_assign(&img.scalar_mul(&c));
            }
            let exponent = (*ell as i64 - (m as usize * j) as i64).rem_euclid(big as i64) as u32;
            out.push(HGenerator {
                name: format!("H{}", r * j + i + 1),
                i,
                j,
                ell: *ell,
                poly: h.scalar_mul(&scale),
                exponent,
                eigenvalue: zeta_tilde.pow(exponent),
            });
        }
    }
    Ok((twist, out))
}
