//! Series displays for `K_{p,q}`, `E_{p,q}` transcribed exactly as printed, so
//! the verification suites can compare them with the corrected backends.
//! Nothing in the evaluation paths depends on this module.

use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};
use crate::gtrig::PQParams;
use crate::hypergeom::{hyp3f2, lambda_series_with, BetaMomentShift, LambdaSpec, SeriesSpec};
use crate::special::gen_binomial;

use super::{Kind, Modulus};

/// Cap on the outer index of the literal double sums (each step is `O(n)`).
const DOUBLE_SUM_MAX: usize = 4000;

/// λ-series with the correct moments but the printed exponent
/// `ξ = 1 − 1/p` for `K`.
pub fn k_with_printed_xi(params: &PQParams, r: f64, lambda: f64, series: &SeriesSpec) -> Result<EvalResult> {
    let (p, q) = (params.p(), params.q());
    let m = Modulus::new(params, r)?;
    let spec = LambdaSpec::new(lambda, m.r_pow_q(), q, 1.0 - 1.0 / p)?;
    let mut moments = BetaMomentShift::new(0.5 * params.pi_pq(), m.r_pow_q(), 1.0 / q, 1.0 - 1.0 / p, lambda)?;
    lambda_series_with(&mut moments, &spec, series)
}

/// Normalized moment `b_j / (π_{p,q}/2) = r^{qj} (1/q)_j / (1 + 1/q − 1/p)_j`.
pub fn moment(params: &PQParams, r: f64, j: usize) -> f64 {
    let (p, q) = (params.p(), params.q());
    let mut m = 1.0;
    for i in 0..j {
        let i = i as f64;
        m *= r.powf(q) * (1.0 / q + i) / (1.0 + 1.0 / q - 1.0 / p + i);
    }
    m
}

/// The normalized moment as printed: `C(−1/q, j) C(1/p − 1 − 1/q, j) r^{qj}`,
/// which equals `r^{qj} (1/q)_j (1 + 1/q − 1/p)_j / (j!)²`.
pub fn printed_moment(params: &PQParams, r: f64, j: usize) -> f64 {
    let (p, q) = (params.p(), params.q());
    gen_binomial(-1.0 / q, j) * gen_binomial(1.0 / p - 1.0 - 1.0 / q, j) * r.powf(q * j as f64)
}

/// Sum `Σ_n outer(n) Σ_{j≤n} inner(n, j)` until two consecutive outer terms
/// fall below `tol · |sum|`.
fn double_sum<O, I>(outer: O, inner: I, series: &SeriesSpec) -> Result<EvalResult>
where
    O: Fn(usize) -> f64,
    I: Fn(usize, usize) -> f64,
{
    let mut sum = 0.0;
    let mut quiet = 0;
    let mut last = 0.0f64;
    for n in 0..DOUBLE_SUM_MAX.min(series.n_max) {
        let term = outer(n) * (0..=n).map(|j| inner(n, j)).sum::<f64>();
        if !term.is_finite() {
            return Err(Error::no_convergence("printed series", format!("non-finite term at n = {n}")));
        }
        sum += term;
        last = term.abs();
        if last <= series.tol * sum.abs() {
            quiet += 1;
            if quiet >= 2 && n >= series.n_min {
                return Ok(EvalResult::new(sum, Method::LambdaSeries, last));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::no_convergence("printed series", format!("no convergence by n = {DOUBLE_SUM_MAX} (last term {last:e})")))
}

/// The printed series for `K_{p,q}(r)` with shift `λ`, transcribed literally.
pub fn kse_literal(params: &PQParams, r: f64, lambda: f64, series: &SeriesSpec) -> Result<EvalResult> {
    let (p, q) = (params.p(), params.q());
    let rq = r.powf(q);
    let res = double_sum(
        |n| gen_binomial(1.0 / p - 1.0, n) * (1.0 - lambda).powf(-(n as f64 + 1.0 - 1.0 / p)),
        |n, j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * gen_binomial(n as f64, j)
                * gen_binomial(-1.0 / q, j)
                * gen_binomial(1.0 / p - 1.0 - 1.0 / q, j)
                * lambda.powi((n - j) as i32)
                * rq.powi(j as i32)
        },
        series,
    )?;
    Ok(res.scaled(0.5 * params.pi_pq()))
}

/// The printed series for `E_{p,q}(r)` with shift `λ`, transcribed literally
/// (index placement included).
pub fn eqse_literal(params: &PQParams, r: f64, lambda: f64, series: &SeriesSpec) -> Result<EvalResult> {
    let (p, q) = (params.p(), params.q());
    let rq = r.powf(q);
    let res = double_sum(
        |n| {
            gen_binomial(1.0 / p, n)
                * (1.0 - lambda).powf(-(n as f64 - 1.0 / p))
                * gen_binomial(1.0 / p - 1.0 - 1.0 / q, n)
                * rq.powi(n as i32)
        },
        |n, j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * gen_binomial(n as f64, j) * gen_binomial(-1.0 / q, j) * lambda.powi((n - j) as i32)
        },
        series,
    )?;
    Ok(res.scaled(0.5 * params.pi_pq()))
}

/// The `λ = 0` reduction as a `₃F₂`:
/// `(π_{p,q}/2) ₃F₂(a, 1/q, 1 + 1/q − 1/p; 1, 1; r^q)` with `a = 1 − 1/p` for
/// `K` and `a = −1/p` for `E`.
pub fn k_3f2_form(kind: Kind, params: &PQParams, r: f64, series: &SeriesSpec) -> Result<EvalResult> {
    let (p, q) = (params.p(), params.q());
    let a = match kind {
        Kind::First => 1.0 - 1.0 / p,
        Kind::Second => -1.0 / p,
    };
    let f = hyp3f2(a, 1.0 / q, 1.0 + 1.0 / q - 1.0 / p, 1.0, 1.0, r.powf(q), series)?;
    Ok(f.scaled(0.5 * params.pi_pq()))
}

/// Coefficient of `r^q` in `K_{p,q}(r) / (π_{p,q}/2)`:
/// `(printed ₃F₂ form, ₂F₁ form)`.
pub fn first_order_coefficients(params: &PQParams) -> (f64, f64) {
    let (ip, iq) = (1.0 / params.p(), 1.0 / params.q());
    ((1.0 - ip) * iq * (1.0 + iq - ip), ip * iq / (1.0 - ip + iq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{complete, Backend, EllipticConfig};

    fn pq(p: f64, q: f64) -> PQParams {
        PQParams::new(p, q).unwrap()
    }

    fn reference(kind: Kind, params: &PQParams, r: f64) -> f64 {
        let m = Modulus::new(params, r).unwrap();
        complete(kind, params, &m, Backend::Quadrature, &EllipticConfig::default()).unwrap().value
    }

    #[test]
    fn first_order_coefficients_at_the_figure_parameters() {
        let (printed, hyp) = first_order_coefficients(&pq(1.5, 2.25));
        assert!((printed - 28.0 / 243.0).abs() < 1e-15);
        assert!((hyp - 8.0 / 21.0).abs() < 1e-15);
        let (printed, hyp) = first_order_coefficients(&pq(2.0, 2.0));
        assert!((printed - hyp).abs() < 1e-15);
    }

    #[test]
    fn three_f_two_form_matches_at_p_equals_q_two() {
        let pp = pq(2.0, 2.0);
        for r in [0.3, 0.6] {
            let v = k_3f2_form(Kind::First, &pp, r, &SeriesSpec::default()).unwrap().value;
            let k = reference(Kind::First, &pp, r);
            assert!(((v - k) / k).abs() < 1e-12, "r = {r}: {v} vs {k}");
        }
        let pp = pq(1.5, 2.25);
        let v = k_3f2_form(Kind::First, &pp, 0.6, &SeriesSpec::default()).unwrap().value;
        assert!((v - reference(Kind::First, &pp, 0.6)).abs() > 1e-3);
    }

    #[test]
    fn printed_moments_differ_from_integral_moments() {
        let pp = pq(1.5, 2.25);
        assert_eq!(printed_moment(&pp, 0.5, 0), 1.0);
        assert_eq!(moment(&pp, 0.5, 0), 1.0);
        assert!((printed_moment(&pp, 0.5, 1) - moment(&pp, 0.5, 1)).abs() > 1e-3);
        // b_j / b_0 = ∫ t^{jq}(1−t^q)^{−1/p} dt / ∫ (1−t^q)^{−1/p} dt
        let spec = crate::quadrature::QuadratureSpec::with_tol(1e-14);
        let b = |j: i32| {
            crate::quadrature::integrate_01_split(
                |t, c| t.powf(2.25 * j as f64) * crate::kernel::one_minus_pow(t, c, 2.25).powf(-1.0 / 1.5),
                &spec,
            )
            .unwrap()
            .value
        };
        let ratio = 0.5f64.powf(2.25 * 2.0) * b(2) / b(0);
        assert!((moment(&pp, 0.5, 2) - ratio).abs() < 1e-12);
    }

    #[test]
    fn printed_exponent_changes_the_value() {
        let pp = pq(1.5, 2.25);
        let v = k_with_printed_xi(&pp, 0.6, 0.25, &SeriesSpec::default()).unwrap().value;
        assert!((v - reference(Kind::First, &pp, 0.6)).abs() > 1e-3);
        // At p = 2 the two exponents coincide.
        let pp = pq(2.0, 2.0);
        let v = k_with_printed_xi(&pp, 0.6, 0.25, &SeriesSpec::default()).unwrap().value;
        assert!((v - reference(Kind::First, &pp, 0.6)).abs() < 1e-12);
    }

    #[test]
    fn literal_k_display_at_zero_shift_is_the_3f2() {
        let pp = pq(1.5, 2.25);
        let lit = kse_literal(&pp, 0.5, 0.0, &SeriesSpec::default()).unwrap().value;
        let f32 = k_3f2_form(Kind::First, &pp, 0.5, &SeriesSpec::default()).unwrap().value;
        assert!(((lit - f32) / f32).abs() < 1e-12, "{lit} vs {f32}");
    }
}
