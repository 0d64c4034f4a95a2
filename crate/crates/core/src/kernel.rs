//! Integrands shared by the trigonometric and elliptic modules:
//! `k(t) = (1 − t^q)^{−1/p} (1 − ρ t^q)^{σ}` on `(0, 1)`, with `ρ = r^q`.

use crate::error::Result;
use crate::quadrature::{integrate, integrate_01_split, QuadratureResult, QuadratureSpec};

/// Below this `1 − ρ` the integrand has a boundary layer at `t = 1` that the
/// plain tanh-sinh rule cannot resolve, and [`Kernel::full`] splits it.
const LAYER_SPLIT: f64 = 1e-2;

/// `1 − t^q` given `t` and `c = 1 − t`, accurate for `t` near 1.
#[inline]
pub(crate) fn one_minus_pow(t: f64, c: f64, q: f64) -> f64 {
    if t > 0.5 {
        -(q * (-c).ln_1p()).exp_m1()
    } else {
        1.0 - t.powf(q)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernel {
    pub p: f64,
    pub q: f64,
    /// `r^q`
    pub rho: f64,
    /// Exponent of the modular factor `(1 − ρ t^q)`.
    pub sigma: f64,
}

impl Kernel {
    /// Integrand of `K_{p,q}`; with `rho = 0` it is the `arcsin_{p,q}` integrand.
    pub fn first_kind(p: f64, q: f64, rho: f64) -> Self {
        Kernel { p, q, rho, sigma: -1.0 / p }
    }

    pub fn second_kind(p: f64, q: f64, rho: f64) -> Self {
        Kernel { p, q, rho, sigma: 1.0 / p }
    }

    #[inline]
    pub fn eval(&self, t: f64, c: f64) -> f64 {
        let base = one_minus_pow(t, c, self.q).powf(-1.0 / self.p);
        if self.rho == 0.0 {
            return base;
        }
        let modular =
            if t > 0.5 { (1.0 - self.rho) + self.rho * one_minus_pow(t, c, self.q) } else { 1.0 - self.rho * t.powf(self.q) };
        base * modular.powf(self.sigma)
    }

    /// `∫₀¹ k`.
    pub fn full(&self, spec: &QuadratureSpec) -> Result<QuadratureResult> {
        let eps = 1.0 - self.rho;
        if self.rho == 0.0 || eps == 0.0 || eps >= LAYER_SPLIT {
            return integrate_01_split(|t, c| self.eval(t, c), spec);
        }
        // Geometric pieces in c = 1 − t: [0, ε], [ε, 4ε], ..., [·, 1/2], then [0, 1/2] in t.
        let mut total = self.tail(eps, spec)?;
        let mut add = |piece: QuadratureResult| {
            total.value += piece.value;
            total.error_estimate += piece.error_estimate;
            total.levels_used = total.levels_used.max(piece.levels_used);
        };
        let mut a = eps;
        while a < 0.5 {
            let b = (4.0 * a).min(0.5);
            add(integrate(|c| self.eval(1.0 - c, c), a, b, spec)?);
            a = b;
        }
        add(self.head(0.5, spec)?);
        Ok(total)
    }

    /// `∫₀ˣ k` for `x ≤ 1/2`-ish (no care taken near `t = 1`).
    pub fn head(&self, x: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
        integrate_01_split(
            |s, _| {
                let t = x * s;
                x * self.eval(t, 1.0 - t)
            },
            spec,
        )
    }

    /// `∫_{1−w}^1 k`, evaluated in the complement variable so that small `w`
    /// keeps full relative accuracy.
    pub fn tail(&self, w: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
        let (coeff, kappa) = self.tail_asymptote();
        integrate_01_split(
            |v, _| {
                let c = w * v;
                if c < f64::MIN_POSITIVE {
                    // w·v underflowed; use the leading term of w·k(1 − wv).
                    return coeff * kappa * w.powf(kappa) * v.powf(kappa - 1.0);
                }
                w * self.eval(1.0 - c, c)
            },
            spec,
        )
    }

    /// Leading behaviour `tail(w) ≈ coeff · w^κ` as `w → 0`, `κ = 1 − 1/p`.
    pub fn tail_asymptote(&self) -> (f64, f64) {
        let kappa = 1.0 - 1.0 / self.p;
        let coeff = self.q.powf(-1.0 / self.p) * (1.0 - self.rho).powf(self.sigma) / kappa;
        (coeff, kappa)
    }
}
