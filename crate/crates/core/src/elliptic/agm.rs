//! Classical `K`, `E` by the arithmetic-geometric mean.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};

/// Runs the AGM on `(1, r′)`; returns `(AGM, Σ 2^{n−1} c_n², last c)`.
fn agm_with_sum(r: f64) -> (f64, f64, f64) {
    let (mut a, mut b) = (1.0f64, ((1.0 - r) * (1.0 + r)).sqrt());
    let mut c = r;
    let mut weight = 0.5;
    let mut sum = weight * c * c;
    for _ in 0..64 {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        c = 0.5 * (a - b);
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
        weight *= 2.0;
        sum += weight * c * c;
    }
    (a, sum, c)
}

fn check(op: &'static str, r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::domain(op, format!("r = {r} outside [0, 1)")))
    }
}

/// `K(r) = π / (2 AGM(1, √(1 − r²)))`.
pub fn classical_k_agm(r: f64) -> Result<EvalResult> {
    check("classical_k_agm", r)?;
    let (m, _, _) = agm_with_sum(r);
    let k = FRAC_PI_2 / m;
    Ok(EvalResult::new(k, Method::Agm, 4.0 * f64::EPSILON * k))
}

/// `E(r) = K(r) (1 − Σ_{n≥0} 2^{n−1} c_n²)`.
pub fn classical_e_agm(r: f64) -> Result<EvalResult> {
    if r == 1.0 {
        return Ok(EvalResult::exact(1.0));
    }
    check("classical_e_agm", r)?;
    let (m, sum, _) = agm_with_sum(r);
    let k = FRAC_PI_2 / m;
    let e = k * (1.0 - sum);
    Ok(EvalResult::new(e, Method::Agm, 8.0 * f64::EPSILON * k))
}
