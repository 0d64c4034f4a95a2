//! Perimeter of the p-ellipse `|x/a|^p + |y/b|^p = 1`, `b ≤ a`:
//! `P = 4a E_p(r)` with `r^p = 1 − (b/a)^p`.

use crate::error::{Error, Result};
use crate::gtrig::{cos_pq, PQParams};
use crate::quadrature::{integrate, QuadratureSpec};

use super::{e_p, Backend, EllipticConfig};

fn modulus(a: f64, b: f64, p: f64) -> Result<f64> {
    if !(a.is_finite() && b > 0.0 && b <= a) {
        return Err(Error::domain("p_ellipse_perimeter", format!("need 0 < b <= a (got a = {a}, b = {b})")));
    }
    Ok((-(p * (b / a).ln()).exp_m1()).powf(1.0 / p))
}

pub fn p_ellipse_perimeter(a: f64, b: f64, p: f64) -> Result<f64> {
    let params = PQParams::new(p, p)?;
    let r = modulus(a, b, p)?;
    Ok(4.0 * a * e_p(params.p(), r, Backend::Auto, &EllipticConfig::default())?.value)
}

/// `4a ∫₀^{π_p/2} (1 − r^p cos_p(t)^p)^{1/p} dt`, the cosine form of the
/// perimeter integral, evaluated literally. It equals the perimeter only
/// when `cos_p(t) = sin_p(π_p/2 − t)`, which holds for `p = 2`.
pub fn perimeter_cos_form(a: f64, b: f64, p: f64, quad: &QuadratureSpec) -> Result<f64> {
    let params = PQParams::new(p, p)?;
    let r = modulus(a, b, p)?;
    let rp = r.powf(p);
    let failure = std::cell::RefCell::new(None);
    let res = integrate(
        |t| match cos_pq(&params, t) {
            Ok(c) => (1.0 - rp * c.powf(p)).powf(1.0 / p),
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
    Ok(4.0 * a * res?.value)
}
