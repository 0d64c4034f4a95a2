//! Generalized (p,q)-trigonometric functions.
//!
//! `arcsin_{p,q}(x) = ∫₀ˣ (1 − t^q)^{−1/p} dt` maps `[0,1]` onto
//! `[0, π_{p,q}/2]`; `sin_{p,q}` is its inverse, extended to `[0, π_{p,q}]`
//! by reflection about `π_{p,q}/2`, to `[−π_{p,q}, π_{p,q}]` by oddness and
//! to the whole line by `2π_{p,q}`-periodicity. `cos_{p,q} = (1 − sin^q)^{1/p}`
//! on the first quarter period, even, and odd about `π_{p,q}/2`.
//!
//! `arcsn_{p,q}(·, r)` / `sn_{p,q}(·, r)` are the analogous pair for the
//! integrand `((1 − t^q)(1 − r^q t^q))^{−1/p}`.

use crate::error::{Error, Result};
use crate::kernel::{one_minus_pow, Kernel};
use crate::quadrature::QuadratureSpec;
use crate::special::beta_unchecked;

/// Pole guard half-width for `tan_{p,q}`.
pub const TAN_POLE_GUARD: f64 = 1e-9;

/// Split point between integrating from 0 and integrating from 1.
const SPLIT: f64 = 0.5;

fn trig_quad() -> QuadratureSpec {
    QuadratureSpec::with_tol(1e-14)
}

/// Exponent pair `(p, q)` with `p, q > 1`, carrying its half-period
/// `π_{p,q}` computed at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQParams {
    p: f64,
    q: f64,
    pi_pq: f64,
}

impl PQParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite() && p > 1.0 && q > 1.0) {
            return Err(Error::domain("PQParams", format!("need finite p, q > 1 (got p = {p}, q = {q})")));
        }
        let pi_pq = 2.0 / q * beta_unchecked(1.0 - 1.0 / p, 1.0 / q);
        Ok(PQParams { p, q, pi_pq })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `π_{p,q} = (2/q) B(1 − 1/p, 1/q)`.
    pub fn pi_pq(&self) -> f64 {
        self.pi_pq
    }

    pub fn half_period(&self) -> HalfPeriod {
        HalfPeriod(self.pi_pq)
    }

    pub(crate) fn kernel(&self, rho: f64) -> Kernel {
        Kernel::first_kind(self.p, self.q, rho)
    }
}

/// The generalized half-period constant `π_{p,q}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct HalfPeriod(pub f64);

impl HalfPeriod {
    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn pi_pq(params: &PQParams) -> HalfPeriod {
    params.half_period()
}

fn check_unit(op: &'static str, name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(op, format!("{name} = {x} outside [0, 1]")))
    }
}

fn check_modulus(op: &'static str, r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::domain(op, format!("r = {r} outside [0, 1)")))
    }
}

/// `∫₀ˣ k` for a first-kind kernel whose complete integral is `full`.
fn partial_integral(kernel: &Kernel, full: f64, x: f64) -> Result<f64> {
    if x == 0.0 {
        Ok(0.0)
    } else if x == 1.0 {
        Ok(full)
    } else if x <= SPLIT {
        Ok(kernel.head(x, &trig_quad())?.value)
    } else {
        Ok(full - kernel.tail(1.0 - x, &trig_quad())?.value)
    }
}

/// Solve `∫₀ʸ k = target` for `y ∈ [0, 1]`; returns `(y, 1 − y)`.
///
/// Below the split the unknown is `y` (Newton with the kernel as derivative);
/// above it the unknown is `w = 1 − y` and the equation is rewritten as
/// `tail(w)^{1/κ} = (full − target)^{1/κ}`, which is close to linear in `w`.
/// Both use bisection as a bracket safeguard.
fn invert(kernel: &Kernel, full: f64, target: f64) -> Result<(f64, f64)> {
    let spec = trig_quad();
    if target <= 0.0 {
        return Ok((0.0, 1.0));
    }
    let remaining = full - target;
    if remaining <= 0.0 {
        return Ok((1.0, 0.0));
    }
    let head_split = kernel.head(SPLIT, &spec)?.value;

    if target <= head_split {
        let y = newton_bracketed(0.0, SPLIT, target.min(SPLIT), |y| {
            let value = kernel.head(y, &spec)?.value - target;
            Ok((value, kernel.eval(y, 1.0 - y)))
        })?;
        return Ok((y, 1.0 - y));
    }

    let (coeff, kappa) = kernel.tail_asymptote();
    let goal = remaining.powf(1.0 / kappa);
    let guess = (remaining / coeff).powf(1.0 / kappa).clamp(f64::MIN_POSITIVE, SPLIT);
    // tail(w) is increasing in w; G(w) = tail(w)^{1/κ}.
    let w = newton_bracketed(0.0, SPLIT, guess, |w| {
        if w == 0.0 {
            return Ok((-goal, f64::INFINITY));
        }
        let tail = kernel.tail(w, &spec)?.value;
        let g = tail.powf(1.0 / kappa);
        let dg = g / (kappa * tail) * kernel.eval(1.0 - w, w);
        Ok((g - goal, dg))
    })?;
    Ok((1.0 - w, w))
}

/// Newton iteration for an increasing function on `[lo, hi]`, falling back to
/// bisection whenever a step leaves the bracket.
fn newton_bracketed<F>(mut lo: f64, mut hi: f64, start: f64, f: F) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let mut x = start.clamp(lo, hi);
    for _ in 0..100 {
        let (value, slope) = f(x)?;
        if value == 0.0 {
            return Ok(x);
        }
        if value > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let mut next = x - value / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 2e-16 * x.abs() || hi - lo <= 2e-16 * hi.abs() {
            return Ok(x);
        }
    }
    Err(Error::no_convergence("inverse", "root finder did not settle in 100 iterations"))
}

/// `arcsin_{p,q}(x)` for `x ∈ [0, 1]`.
pub fn arcsin_pq(params: &PQParams, x: f64) -> Result<f64> {
    check_unit("arcsin_pq", "x", x)?;
    partial_integral(&params.kernel(0.0), 0.5 * params.pi_pq, x)
}

/// `(sin_{p,q}(a), cos_{p,q}(a))` for `a ∈ [0, π_{p,q}/2]`.
fn first_quadrant(params: &PQParams, a: f64) -> Result<(f64, f64)> {
    let (s, c) = invert(&params.kernel(0.0), 0.5 * params.pi_pq, a)?;
    let cos = one_minus_pow(s, c, params.q).max(0.0).powf(1.0 / params.p);
    Ok((s, cos))
}

/// Reduce `x` to `(sign_sin, sign_cos, a)` with `a ∈ [0, π_{p,q}/2]`.
fn reduce(params: &PQParams, x: f64) -> (f64, f64, f64) {
    let half = params.pi_pq;
    let period = 2.0 * half;
    let xr = x - period * (x / period).round();
    let sin_sign = if xr < 0.0 { -1.0 } else { 1.0 };
    let a = xr.abs();
    if a > 0.5 * half {
        (sin_sign, -1.0, (half - a).max(0.0))
    } else {
        (sin_sign, 1.0, a)
    }
}

/// `(sin_{p,q}(x), cos_{p,q}(x))` for any real `x`.
pub fn sin_cos_pq(params: &PQParams, x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::domain("sin_pq", format!("x = {x} is not finite")));
    }
    let (ss, cs, a) = reduce(params, x);
    let (s, c) = first_quadrant(params, a)?;
    Ok((ss * s, cs * c))
}

pub fn sin_pq(params: &PQParams, x: f64) -> Result<f64> {
    sin_cos_pq(params, x).map(|(s, _)| s)
}

pub fn cos_pq(params: &PQParams, x: f64) -> Result<f64> {
    sin_cos_pq(params, x).map(|(_, c)| c)
}

pub fn tan_pq(params: &PQParams, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("tan_pq", format!("x = {x} is not finite")));
    }
    let (_, _, a) = reduce(params, x);
    if (a - 0.5 * params.pi_pq).abs() < TAN_POLE_GUARD {
        return Err(Error::Pole { op: "tan_pq", x, guard: TAN_POLE_GUARD });
    }
    let (s, c) = sin_cos_pq(params, x)?;
    Ok(s / c)
}

fn k_quadrature(params: &PQParams, r: f64) -> Result<f64> {
    if r == 0.0 {
        return Ok(0.5 * params.pi_pq);
    }
    Ok(params.kernel(r.powf(params.q)).full(&trig_quad())?.value)
}

/// `arcsn_{p,q}(x, r) = ∫₀ˣ ((1 − t^q)(1 − r^q t^q))^{−1/p} dt`.
pub fn arcsn_pq(params: &PQParams, x: f64, r: f64) -> Result<f64> {
    check_unit("arcsn_pq", "x", x)?;
    check_modulus("arcsn_pq", r)?;
    let full = k_quadrature(params, r)?;
    partial_integral(&params.kernel(r.powf(params.q)), full, x)
}

/// Inverse of [`arcsn_pq`] in its first argument, for `u ∈ [0, K_{p,q}(r)]`.
pub fn sn_pq(params: &PQParams, u: f64, r: f64) -> Result<f64> {
    check_modulus("sn_pq", r)?;
    let full = k_quadrature(params, r)?;
    if !(u >= 0.0 && u <= full * (1.0 + 1e-14)) {
        return Err(Error::domain("sn_pq", format!("u = {u} outside [0, K = {full}]")));
    }
    invert(&params.kernel(r.powf(params.q)), full, u.min(full)).map(|(y, _)| y)
}
