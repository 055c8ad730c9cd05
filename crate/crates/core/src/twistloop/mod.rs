//! Truncations and cyclic quotients of the twisted loop algebra `q̂^θ = ⊕ q_{k̄} t^{-k}`,
//! t-polarisations, the collapse `ψ` and the generator families built from them.
//!
//! Loop variables are [`Var`]s over the eigenbasis of a [`Grading`]: `Var { base: x, t: -k }`
//! stands for `x t^{-k}` and is admissible when `x ∈ q_{k̄}`.

mod generators;
mod hgen;
mod polarisation;
mod quotient;
mod verify;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::Grading;
use crate::sympoly::{var_label, Poly, Var};

pub use generators::{
    generators_z0, generators_zt, generators_zx, window_invariants, GeneratorEntry, GeneratorSet, Provenance,
};
pub use hgen::{build_h_generators, choose_zeta_tilde, HGenerator};
pub use polarisation::{binomial, polarise, psi_quotient, respects_grading, t_polarisation, t_polarisation_strict, PolSide};
pub use quotient::{build_cyclic_quotient, dft_isomorphism, CyclicQuotient, LoopStructure, QuotientStructure};
pub use verify::{
    transition_matrix, verify_image_formula, verify_image_formula_strict, verify_invariance, verify_pairwise_commute,
    CommuteReport, ImageCheck, InvarianceReport, InvarianceStyle, TransitionMatrix,
};

/// Which object a window models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowSide {
    /// `x t^{-k}` for `0 ≤ k ≤ N`; the actors `x t^{p}`, `p > N`, act by zero.
    Minus,
    /// `x t^{k}` for `k_min ≤ k ≤ k_max`, `k ≥ 0`.
    Positive,
    /// `x t^{-k}` for `0 ≤ k < N` with `t^{-N} = 1`.
    Cyclic,
}

/// A finite slice of the loop algebra: the admissible `x t^{-k}` with `k` in a range.
#[derive(Clone, Debug)]
pub struct TwistedWindow {
    grading: Arc<Grading>,
    side: WindowSide,
    k_min: i64,
    k_max: i64,
}

impl TwistedWindow {
    /// Variables `x t^{-k}` with `0 ≤ k ≤ n`.
    pub fn minus(grading: Arc<Grading>, n: usize) -> Self {
        TwistedWindow { grading, side: WindowSide::Minus, k_min: 0, k_max: n as i64 }
    }

    /// The window `(q t^{-N+1} ⊕ … ⊕ q t^{-1})^Θ ⊕ q_0`.
    pub fn w_n(grading: Arc<Grading>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGrading("W_N needs N ≥ 1".into()));
        }
        Ok(Self::minus(grading, n - 1))
    }

    /// Variables `x t^{p}` with `lo ≤ p ≤ hi`.
    pub fn positive(grading: Arc<Grading>, lo: usize, hi: usize) -> Self {
        TwistedWindow { grading, side: WindowSide::Positive, k_min: -(hi as i64), k_max: -(lo as i64) }
    }

    /// The quotient by `t^{-n} − 1`; `n` must be a positive multiple of the order.
    pub fn cyclic(grading: Arc<Grading>, n: usize) -> Result<Self> {
        let m = grading.order() as usize;
        if n == 0 || n % m != 0 {
            return Err(Error::BadTruncation { n, m });
        }
        Ok(TwistedWindow { grading, side: WindowSide::Cyclic, k_min: 0, k_max: n as i64 - 1 })
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn grading_arc(&self) -> Arc<Grading> {
        self.grading.clone()
    }

    pub fn side(&self) -> WindowSide {
        self.side
    }

    /// `[k_min, k_max]` in the `x t^{-k}` convention.
    pub fn k_range(&self) -> (i64, i64) {
        (self.k_min, self.k_max)
    }

    /// Largest `|t|`-exponent held by the window.
    pub fn reach(&self) -> i64 {
        self.k_max.abs().max(self.k_min.abs())
    }

    pub fn contains(&self, v: Var) -> bool {
        let k = -(v.t as i64);
        let m = self.grading.order() as i64;
        v.base() < self.grading.dim()
            && (self.k_min..=self.k_max).contains(&k)
            && k.rem_euclid(m) == self.grading.degree(v.base()) as i64
    }

    /// All window variables, ordered by `k` and then by base index.
    pub fn variables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut ks: Vec<i64> = (self.k_min..=self.k_max).collect();
        if self.side == WindowSide::Positive {
            ks.reverse();
        }
        for k in ks {
            for b in 0..self.grading.dim() {
                let v = Var::new(b, -k as i32);
                if self.contains(v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn label(&self, v: Var) -> String {
        var_label(self.grading.algebra().labels(), v)
    }

    /// `Err(WindowOverflow)` unless every variable of `f` lies in the window.
    pub fn check_fits(&self, f: &Poly) -> Result<()> {
        if let Some(v) = f.vars().into_iter().find(|v| !self.contains(*v)) {
            return Err(Error::WindowOverflow { needed: v.t.unsigned_abs() as i64, available: self.reach() });
        }
        Ok(())
    }

    /// `F_[k]` with the window check; positive windows use the strict side when they start at `t^1`.
    pub fn polarise(&self, f: &Poly, k: i64) -> Result<Poly> {
        if k.abs() > self.reach() {
            return Err(Error::WindowOverflow { needed: k.abs(), available: self.reach() });
        }
        let p = match self.side {
            WindowSide::Positive if self.k_max < 0 => t_polarisation_strict(f, k, &self.grading),
            _ => t_polarisation(f, k, &self.grading),
        };
        self.check_fits(&p)?;
        Ok(p)
    }
}
