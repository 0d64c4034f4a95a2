//! Generalized complete elliptic integrals
//!
//! ```text
//! K_{p,q}(r) = ∫₀¹ (1 − t^q)^{−1/p} (1 − r^q t^q)^{−1/p} dt
//! E_{p,q}(r) = ∫₀¹ (1 − t^q)^{−1/p} (1 − r^q t^q)^{+1/p} dt
//! ```
//!
//! with four backends: tanh-sinh quadrature, the Gauss series
//! `(π_{p,q}/2) ₂F₁(±1/p, 1/q; 1 − 1/p + 1/q; r^q)`, the shifted moment
//! series, and (for `p = q = 2` only) the arithmetic-geometric mean.

pub mod abc;
pub mod agm;
pub mod derivatives;
pub mod perimeter;
pub mod printed;

use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};
use crate::gtrig::{sin_pq, PQParams};
use crate::hypergeom::{hyp2f1, lambda_series_with, BetaMomentShift, LambdaSpec, SeriesSpec};
use crate::kernel::Kernel;
use crate::quadrature::{integrate, QuadratureSpec};
use crate::special::beta_unchecked;

pub use abc::{e_abc, k_abc, ABCParams};
pub use agm::{classical_e_agm, classical_k_agm};
pub use perimeter::p_ellipse_perimeter;

/// Auto backend switches from series to quadrature above this modulus.
pub const SERIES_MAX_R: f64 = 0.9;

/// Modulus `r ∈ [0, 1]` bound to the exponent `q` that defines its
/// complement `r′ = (1 − r^q)^{1/q}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    r: f64,
    q: f64,
    r_pow_q: f64,
    comp_pow_q: f64,
}

impl Modulus {
    pub fn new(params: &PQParams, r: f64) -> Result<Self> {
        Self::with_exponent(params.q(), r)
    }

    pub(crate) fn with_exponent(q: f64, r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::domain("Modulus", format!("r = {r} outside [0, 1]")));
        }
        let log_r = r.ln();
        Ok(Modulus { r, q, r_pow_q: (q * log_r).exp(), comp_pow_q: -(q * log_r).exp_m1() })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `r^q`
    pub fn r_pow_q(&self) -> f64 {
        self.r_pow_q
    }

    /// `(r′)^q = 1 − r^q`, without cancellation for small `r`.
    pub fn comp_pow_q(&self) -> f64 {
        self.comp_pow_q
    }

    /// `r′ = (1 − r^q)^{1/q}`
    pub fn r_comp(&self) -> f64 {
        self.comp_pow_q.powf(1.0 / self.q)
    }

    pub fn is_one(&self) -> bool {
        self.r == 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Backend {
    /// Series for `r ≤ 0.9` (falling back to quadrature), quadrature above.
    #[default]
    Auto,
    Quadrature,
    Series,
    /// Shifted moment series with the given shift `λ ∈ [0, 1/2)`.
    Lambda(f64),
    /// Classical AGM; `p = q = 2` only.
    Agm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticConfig {
    pub quad: QuadratureSpec,
    pub series: SeriesSpec,
}

impl Default for EllipticConfig {
    fn default() -> Self {
        EllipticConfig { quad: QuadratureSpec::with_tol(1e-14), series: SeriesSpec::default() }
    }
}

impl EllipticConfig {
    pub fn with_tol(tol: f64) -> Self {
        EllipticConfig { quad: QuadratureSpec::with_tol(tol), series: SeriesSpec { tol, ..SeriesSpec::default() } }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    First,
    Second,
}

impl Kind {
    pub fn symbol(self) -> &'static str {
        match self {
            Kind::First => "K",
            Kind::Second => "E",
        }
    }

    /// Exponent `ξ` of the modular factor `(1 − r^q t^q)^{−ξ}`.
    fn xi(self, p: f64) -> f64 {
        match self {
            Kind::First => 1.0 / p,
            Kind::Second => -1.0 / p,
        }
    }

    fn kernel(self, p: f64, q: f64, rho: f64) -> Kernel {
        match self {
            Kind::First => Kernel::first_kind(p, q, rho),
            Kind::Second => Kernel::second_kind(p, q, rho),
        }
    }
}

fn check_binding(op: &'static str, params: &PQParams, m: &Modulus) -> Result<()> {
    if m.q == params.q() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("modulus built for q = {} used with q = {}", m.q, params.q())))
    }
}

/// `K_{p,q}(1)` where it is finite: `(1/q) B(1/q, 1 − 2/p)` for `p > 2`.
pub fn k_at_one(params: &PQParams) -> Result<f64> {
    let p = params.p();
    if p > 2.0 {
        Ok(beta_unchecked(1.0 / params.q(), 1.0 - 2.0 / p) / params.q())
    } else {
        Err(Error::divergent("K_pq", format!("K_{{p,q}}(1) is infinite for p = {p} <= 2")))
    }
}

/// Evaluate `K_{p,q}` (`Kind::First`) or `E_{p,q}` (`Kind::Second`).
pub fn complete(kind: Kind, params: &PQParams, m: &Modulus, backend: Backend, cfg: &EllipticConfig) -> Result<EvalResult> {
    let op = match kind {
        Kind::First => "K_pq",
        Kind::Second => "E_pq",
    };
    check_binding(op, params, m)?;
    let half = 0.5 * params.pi_pq();
    if m.r == 0.0 && backend != Backend::Agm {
        return Ok(EvalResult::exact(half));
    }
    match backend {
        Backend::Auto => {
            if m.is_one() {
                return match kind {
                    Kind::First => k_at_one(params).map(EvalResult::exact),
                    Kind::Second => Ok(EvalResult::exact(1.0)),
                };
            }
            if m.r <= SERIES_MAX_R {
                if let Ok(v) = by_series(kind, params, m, cfg) {
                    return Ok(v);
                }
            }
            by_quadrature(kind, params, m, cfg)
        }
        Backend::Quadrature => {
            if m.is_one() && kind == Kind::Second {
                // The integrand is identically 1.
                return Ok(EvalResult::exact(1.0));
            }
            by_quadrature(kind, params, m, cfg)
        }
        Backend::Series => {
            if m.is_one() {
                return Err(Error::domain(op, "the hypergeometric series needs r < 1"));
            }
            by_series(kind, params, m, cfg)
        }
        Backend::Lambda(lambda) => {
            if m.is_one() {
                return Err(Error::domain(op, "the shifted moment series needs r < 1"));
            }
            by_lambda(kind, params, m, lambda, cfg)
        }
        Backend::Agm => {
            if params.p() != 2.0 || params.q() != 2.0 {
                return Err(Error::Unsupported { op, detail: "the AGM backend needs p = q = 2".into() });
            }
            match kind {
                Kind::First => classical_k_agm(m.r),
                Kind::Second => classical_e_agm(m.r),
            }
        }
    }
}

pub fn k_pq(params: &PQParams, m: &Modulus, backend: Backend, cfg: &EllipticConfig) -> Result<EvalResult> {
    complete(Kind::First, params, m, backend, cfg)
}

pub fn e_pq(params: &PQParams, m: &Modulus, backend: Backend, cfg: &EllipticConfig) -> Result<EvalResult> {
    complete(Kind::Second, params, m, backend, cfg)
}

/// `K_{p,q}(r)` with the default backend and configuration.
pub fn k(p: f64, q: f64, r: f64) -> Result<f64> {
    let params = PQParams::new(p, q)?;
    k_pq(&params, &Modulus::new(&params, r)?, Backend::Auto, &EllipticConfig::default()).map(|v| v.value)
}

/// `E_{p,q}(r)` with the default backend and configuration.
pub fn e(p: f64, q: f64, r: f64) -> Result<f64> {
    let params = PQParams::new(p, q)?;
    e_pq(&params, &Modulus::new(&params, r)?, Backend::Auto, &EllipticConfig::default()).map(|v| v.value)
}

/// `K_p = K_{p,p}`.
pub fn k_p(p: f64, r: f64, backend: Backend, cfg: &EllipticConfig) -> Result<EvalResult> {
    let params = PQParams::new(p, p)?;
    k_pq(&params, &Modulus::new(&params, r)?, backend, cfg)
}

/// `E_p = E_{p,p}`.
pub fn e_p(p: f64, r: f64, backend: Backend, cfg: &EllipticConfig) -> Result<EvalResult> {
    let params = PQParams::new(p, p)?;
    e_pq(&params, &Modulus::new(&params, r)?, backend, cfg)
}

fn by_quadrature(kind: Kind, params: &PQParams, m: &Modulus, cfg: &EllipticConfig) -> Result<EvalResult> {
    let res = kind.kernel(params.p(), params.q(), m.r_pow_q).full(&cfg.quad)?;
    Ok(EvalResult::new(res.value, Method::Quadrature, res.error_estimate))
}

fn by_series(kind: Kind, params: &PQParams, m: &Modulus, cfg: &EllipticConfig) -> Result<EvalResult> {
    let (p, q) = (params.p(), params.q());
    let f = hyp2f1(kind.xi(p), 1.0 / q, 1.0 - 1.0 / p + 1.0 / q, m.r_pow_q, &cfg.series)?;
    Ok(EvalResult { method: Method::HypSeries, ..f.scaled(0.5 * params.pi_pq()) })
}

fn by_lambda(kind: Kind, params: &PQParams, m: &Modulus, lambda: f64, cfg: &EllipticConfig) -> Result<EvalResult> {
    let (p, q) = (params.p(), params.q());
    let spec = LambdaSpec::new(lambda, m.r_pow_q, q, kind.xi(p))?;
    let mut moments = BetaMomentShift::new(0.5 * params.pi_pq(), m.r_pow_q, 1.0 / q, 1.0 - 1.0 / p, lambda)?;
    lambda_series_with(&mut moments, &spec, &cfg.series)
}

/// `K_{p,q}` by the λ-method.
pub fn k_pq_lambda(params: &PQParams, m: &Modulus, lambda: f64, series: &SeriesSpec) -> Result<EvalResult> {
    let cfg = EllipticConfig { series: *series, ..EllipticConfig::default() };
    k_pq(params, m, Backend::Lambda(lambda), &cfg)
}

/// `E_{p,q}` by the λ-method.
pub fn e_pq_lambda(params: &PQParams, m: &Modulus, lambda: f64, series: &SeriesSpec) -> Result<EvalResult> {
    let cfg = EllipticConfig { series: *series, ..EllipticConfig::default() };
    e_pq(params, m, Backend::Lambda(lambda), &cfg)
}

/// The defining integral for arbitrary positive exponents, including the
/// `p ≤ 1` / `q ≤ 1` cases that parameter-direction comparisons reach.
/// Non-integrable cases surface as divergence errors from the quadrature.
pub fn integral(kind: Kind, p: f64, q: f64, r: f64, quad: &QuadratureSpec) -> Result<EvalResult> {
    if !(p.is_finite() && q.is_finite() && p > 0.0 && q > 0.0) {
        return Err(Error::domain("integral", format!("need finite p, q > 0 (got {p}, {q})")));
    }
    let m = Modulus::with_exponent(q, r)?;
    let res = kind.kernel(p, q, m.r_pow_q).full(quad)?;
    Ok(EvalResult::new(res.value, Method::Quadrature, res.error_estimate))
}

/// `K` or `E` through the trigonometric form
/// `∫₀^{π_{p,q}/2} (1 − r^q sin_{p,q}(θ)^q)^{∓1/p} dθ`.
pub fn theta_form(kind: Kind, params: &PQParams, r: f64, quad: &QuadratureSpec) -> Result<EvalResult> {
    let m = Modulus::new(params, r)?;
    if m.is_one() {
        return Err(Error::domain("theta_form", "needs r < 1"));
    }
    let exponent = -kind.xi(params.p());
    let failure = std::cell::RefCell::new(None);
    let res = integrate(
        |theta| match sin_pq(params, theta) {
            Ok(s) => (1.0 - m.r_pow_q * s.powf(params.q())).powf(exponent),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        0.5 * params.pi_pq(),
        quad,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let res = res?;
    Ok(EvalResult::new(res.value, Method::Quadrature, res.error_estimate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    const LAYER_SPLIT_EPS: f64 = 1e-2;
    const K_HALF: f64 = 1.685_750_354_812_596;
    const E_HALF: f64 = 1.467_462_209_339_427_2;

    fn cfg() -> EllipticConfig {
        EllipticConfig::default()
    }

    fn pq(p: f64, q: f64) -> PQParams {
        PQParams::new(p, q).unwrap()
    }

    #[test]
    fn modulus_complement() {
        let m = Modulus::new(&pq(3.0, 2.25), 0.7).unwrap();
        assert!((m.r_pow_q() + m.r_comp().powf(2.25) - 1.0).abs() < 1e-14);
        assert!(Modulus::new(&pq(3.0, 2.25), 1.2).is_err());
        let tiny = Modulus::new(&pq(2.0, 2.0), 1e-10).unwrap();
        assert_eq!(tiny.comp_pow_q(), 1.0);
    }

    #[test]
    fn modulus_must_match_q() {
        let m = Modulus::new(&pq(2.0, 3.0), 0.5).unwrap();
        assert!(k_pq(&pq(2.0, 2.0), &m, Backend::Auto, &cfg()).is_err());
    }

    #[test]
    fn classical_values_by_every_backend() {
        let pp = pq(2.0, 2.0);
        let m = Modulus::new(&pp, 0.5).unwrap();
        for b in [Backend::Quadrature, Backend::Series, Backend::Lambda(0.25), Backend::Agm, Backend::Auto] {
            let kv = k_pq(&pp, &m, b, &cfg()).unwrap().value;
            let ev = e_pq(&pp, &m, b, &cfg()).unwrap().value;
            assert!((kv - K_HALF).abs() < 1e-13, "{b:?}: {kv}");
            assert!((ev - E_HALF).abs() < 1e-13, "{b:?}: {ev}");
        }
    }

    #[test]
    fn zero_modulus_is_half_period() {
        let pp = pq(1.5, 2.25);
        let m = Modulus::new(&pp, 0.0).unwrap();
        assert_eq!(k_pq(&pp, &m, Backend::Auto, &cfg()).unwrap().value, 0.5 * pp.pi_pq());
        assert_eq!(e_pq(&pp, &m, Backend::Quadrature, &cfg()).unwrap().value, 0.5 * pp.pi_pq());
        assert!((k(2.0, 2.0, 0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn unit_modulus_policy() {
        let pp = pq(1.5, 2.25);
        let one = Modulus::new(&pp, 1.0).unwrap();
        assert_eq!(e_pq(&pp, &one, Backend::Auto, &cfg()).unwrap().value, 1.0);
        assert!(k_pq(&pp, &one, Backend::Auto, &cfg()).unwrap_err().is_divergence());
        assert!(k_pq(&pp, &one, Backend::Quadrature, &cfg()).unwrap_err().is_divergence());
        assert!(k_pq(&pq(2.0, 2.0), &Modulus::new(&pq(2.0, 2.0), 1.0).unwrap(), Backend::Quadrature, &cfg())
            .unwrap_err()
            .is_divergence());

        let pp = pq(3.0, 1.5);
        let one = Modulus::new(&pp, 1.0).unwrap();
        let closed = k_pq(&pp, &one, Backend::Auto, &cfg()).unwrap().value;
        let quad = k_pq(&pp, &one, Backend::Quadrature, &cfg()).unwrap().value;
        assert!(((closed - quad) / closed).abs() < 1e-12, "{closed} vs {quad}");
    }

    #[test]
    fn sandwich_around_half_period() {
        for (p, q) in [(1.25, 4.0), (3.0, 1.5), (2.0, 2.0)] {
            let pp = pq(p, q);
            for r in [0.1, 0.5, 0.95] {
                let m = Modulus::new(&pp, r).unwrap();
                let kv = k_pq(&pp, &m, Backend::Auto, &cfg()).unwrap().value;
                let ev = e_pq(&pp, &m, Backend::Auto, &cfg()).unwrap().value;
                assert!(ev < 0.5 * pp.pi_pq() && 0.5 * pp.pi_pq() < kv);
            }
        }
    }

    #[test]
    fn backends_agree_off_the_classical_point() {
        let pp = pq(1.5, 2.25);
        let m = Modulus::new(&pp, 0.6).unwrap();
        for kind in [Kind::First, Kind::Second] {
            let quad = complete(kind, &pp, &m, Backend::Quadrature, &cfg()).unwrap().value;
            for b in [Backend::Series, Backend::Lambda(0.0), Backend::Lambda(0.25), Backend::Lambda(0.4)] {
                let v = complete(kind, &pp, &m, b, &cfg()).unwrap().value;
                assert!(((v - quad) / quad).abs() < 1e-13, "{kind:?} {b:?}: {v} vs {quad}");
            }
        }
    }

    #[test]
    fn agm_backend_is_classical_only() {
        let pp = pq(3.0, 2.0);
        let m = Modulus::new(&pp, 0.5).unwrap();
        assert!(matches!(k_pq(&pp, &m, Backend::Agm, &cfg()), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn raw_integral_reaches_q_at_most_one() {
        // K_{2,1}(r) = ∫ (1−t)^{−1/2}(1−rt)^{−1/2} dt = (2/√r) artanh(√r)·… closed form:
        // substituting u = √(1−t): 2∫₀¹ du / √(1 − r + r u²) = (2/√r) asinh(√(r/(1−r)))
        let r: f64 = 0.5;
        let closed = 2.0 / r.sqrt() * (r / (1.0 - r)).sqrt().asinh();
        let v = integral(Kind::First, 2.0, 1.0, r, &QuadratureSpec::with_tol(1e-14)).unwrap().value;
        assert!((v - closed).abs() < 1e-13, "{v} vs {closed}");
        assert!(integral(Kind::First, 1.0, 2.0, 0.5, &QuadratureSpec::default()).unwrap_err().is_divergence());
        assert!(integral(Kind::Second, 1.0, 2.0, 0.5, &QuadratureSpec::default()).unwrap_err().is_divergence());
    }

    #[test]
    fn theta_form_matches_t_form() {
        let pp = pq(1.5, 2.25);
        let spec = QuadratureSpec::with_tol(1e-11);
        for kind in [Kind::First, Kind::Second] {
            let m = Modulus::new(&pp, 0.6).unwrap();
            let t_form = complete(kind, &pp, &m, Backend::Quadrature, &cfg()).unwrap().value;
            let th = theta_form(kind, &pp, 0.6, &spec).unwrap().value;
            assert!(((th - t_form) / t_form).abs() < 1e-9, "{kind:?}: {th} vs {t_form}");
        }
    }

    #[test]
    fn specializations_delegate() {
        let a = e_p(1.5, 0.5, Backend::Auto, &cfg()).unwrap().value;
        assert_eq!(a, e(1.5, 1.5, 0.5).unwrap());
        let half_pi3 = 0.5 * pq(3.0, 3.0).pi_pq();
        assert_eq!(k_p(3.0, 0.0, Backend::Auto, &cfg()).unwrap().value, half_pi3);
        assert!((k_p(2.0, 0.5, Backend::Auto, &cfg()).unwrap().value - K_HALF).abs() < 1e-14);
    }

    #[test]
    fn quadrature_near_unit_modulus() {
        let classical = pq(2.0, 2.0);
        // Dyadic offsets keep r^2 exact, so both routes see the same modulus.
        for d in [2f64.powi(-13), 2f64.powi(-20), 2f64.powi(-26)] {
            let m = Modulus::new(&classical, 1.0 - d).unwrap();
            for kind in [Kind::First, Kind::Second] {
                let quad = complete(kind, &classical, &m, Backend::Quadrature, &cfg()).unwrap().value;
                let agm = complete(kind, &classical, &m, Backend::Agm, &cfg()).unwrap().value;
                assert!((quad - agm).abs() <= 1e-12 * agm, "{kind:?} r = 1 - {d}: {quad} vs {agm}");
            }
        }
        // Either side of the split threshold.
        let fig = pq(1.5, 2.25);
        let rho = 1.0 - LAYER_SPLIT_EPS;
        let below = integral(Kind::First, 1.5, 2.25, (rho * (1.0 + 1e-12)).powf(1.0 / 2.25), &cfg().quad).unwrap().value;
        let above = integral(Kind::First, 1.5, 2.25, (rho * (1.0 - 1e-12)).powf(1.0 / 2.25), &cfg().quad).unwrap().value;
        assert!((below - above).abs() < 1e-10 * above);
        let m = Modulus::new(&fig, 1.0 - 1e-9).unwrap();
        assert!(complete(Kind::First, &fig, &m, Backend::Quadrature, &cfg()).unwrap().value > 1e3);
    }
}
