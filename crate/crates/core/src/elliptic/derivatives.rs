//! r-derivatives of `K_{p,q}` and `E_{p,q}`.
//!
//! Two families live here. The closed forms in `E`, `K`, `r` and
//! `s = (r′)^q = 1 − r^q`:
//!
//! ```text
//! K′  = (E − s K) / (r s)
//! E′  = (q / (p r)) (E − K)
//! E″  = (q / (p r²)) ((q/p − 1/s − 1) E + (2 − q/p) K)
//! K″  = ((s q/p + q r^q − 2s) E + (2s² − (q/p) s) K) / (r² s²)
//! ```
//!
//! (`K″` is obtained by differentiating `K′` with the `E′` rule.) These are
//! exact for `p = 2` and any `q`; for `p ≠ 2` they are not identities, and
//! the verification suites measure by how much they miss.
//!
//! The second family differentiates the hypergeometric representation
//! term by term and is exact for every `(p, q)`:
//! `d/dr [A F(a,b;c;r^q)] = A (ab/c) F(a+1,b+1;c+1;r^q) q r^{q−1}`.

use crate::error::{Error, Result};
use crate::gtrig::PQParams;
use crate::hypergeom::hyp2f1;

use super::{complete, Backend, EllipticConfig, Kind, Modulus};

/// `K`, `E` and the modulus at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub r: f64,
    pub p: f64,
    pub q: f64,
    pub k: f64,
    pub e: f64,
    /// `(r′)^q`
    pub s: f64,
}

impl Point {
    pub fn evaluate(params: &PQParams, r: f64, backend: Backend, cfg: &EllipticConfig) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::domain("derivative", format!("r = {r} outside (0, 1)")));
        }
        let m = Modulus::new(params, r)?;
        let k = complete(Kind::First, params, &m, backend, cfg)?.value;
        let e = complete(Kind::Second, params, &m, backend, cfg)?.value;
        Ok(Point { r, p: params.p(), q: params.q(), k, e, s: m.comp_pow_q() })
    }

    pub fn dk(&self) -> f64 {
        (self.e - self.s * self.k) / (self.r * self.s)
    }

    pub fn de(&self) -> f64 {
        self.q / (self.p * self.r) * (self.e - self.k)
    }

    pub fn d2e(&self) -> f64 {
        let qp = self.q / self.p;
        qp / (self.r * self.r) * ((qp - 1.0 / self.s - 1.0) * self.e + (2.0 - qp) * self.k)
    }

    pub fn d2k(&self) -> f64 {
        let (qp, s, r) = (self.q / self.p, self.s, self.r);
        let rq = 1.0 - s;
        ((s * qp + self.q * rq - 2.0 * s) * self.e + (2.0 * s * s - qp * s) * self.k) / (r * r * s * s)
    }

    /// The same bracket as [`Point::d2k`] without the `1/(r² s²)` factor.
    pub fn d2k_printed(&self) -> f64 {
        let (qp, s) = (self.q / self.p, self.s);
        (qp * s + self.q * (1.0 - s) - 2.0 * s) * self.e + (2.0 * s * s - qp * s) * self.k
    }

    /// `E″ + (2 − q/p) E′ / r + (q/p) r^{q−2} E / (1 − r^q)` evaluated with
    /// caller-supplied derivatives.
    pub fn e_ode_residual(&self, de: f64, d2e: f64) -> f64 {
        let qp = self.q / self.p;
        d2e + (2.0 - qp) * de / self.r + qp * self.r.powf(self.q - 2.0) / self.s * self.e
    }
}

pub fn dk_dr(params: &PQParams, r: f64, cfg: &EllipticConfig) -> Result<f64> {
    Point::evaluate(params, r, Backend::Auto, cfg).map(|pt| pt.dk())
}

pub fn de_dr(params: &PQParams, r: f64, cfg: &EllipticConfig) -> Result<f64> {
    Point::evaluate(params, r, Backend::Auto, cfg).map(|pt| pt.de())
}

pub fn d2e_dr2(params: &PQParams, r: f64, cfg: &EllipticConfig) -> Result<f64> {
    Point::evaluate(params, r, Backend::Auto, cfg).map(|pt| pt.d2e())
}

pub fn d2k_dr2(params: &PQParams, r: f64, cfg: &EllipticConfig) -> Result<f64> {
    Point::evaluate(params, r, Backend::Auto, cfg).map(|pt| pt.d2k())
}

pub fn d2k_dr2_printed(params: &PQParams, r: f64, cfg: &EllipticConfig) -> Result<f64> {
    Point::evaluate(params, r, Backend::Auto, cfg).map(|pt| pt.d2k_printed())
}

/// First and second r-derivatives from the hypergeometric series.
pub fn series_derivatives(kind: Kind, params: &PQParams, r: f64, cfg: &EllipticConfig) -> Result<(f64, f64)> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain("series_derivatives", format!("r = {r} outside (0, 1)")));
    }
    let (p, q) = (params.p(), params.q());
    let a = kind.xi(p);
    let b = 1.0 / q;
    let c = 1.0 - 1.0 / p + b;
    let z = r.powf(q);
    let scale = 0.5 * params.pi_pq();
    let f1 = hyp2f1(a + 1.0, b + 1.0, c + 1.0, z, &cfg.series)?.value;
    let f2 = hyp2f1(a + 2.0, b + 2.0, c + 2.0, z, &cfg.series)?.value;
    let dz = q * r.powf(q - 1.0);
    let d2z = q * (q - 1.0) * r.powf(q - 2.0);
    let c1 = a * b / c;
    let c2 = c1 * (a + 1.0) * (b + 1.0) / (c + 1.0);
    Ok((scale * c1 * f1 * dz, scale * (c2 * f2 * dz * dz + c1 * f1 * d2z)))
}

/// Five-point central differences `(f′, f″)` with step `h` (fourth order).
pub fn central_differences<F>(f: F, x: f64, h: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let (m2, m1, mid, p1, p2) = (f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?);
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * mid + 16.0 * p1 - p2) / (12.0 * h * h);
    Ok((d1, d2))
}
