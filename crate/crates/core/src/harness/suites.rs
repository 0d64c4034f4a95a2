//! The verification suites behind `pq-elliptic verify`.
//!
//! Claims come in two kinds. Internal claims compare independent routes
//! inside this crate (quadrature, series, AGM, finite differences) and a
//! failure is a defect. Printed claims test a formula or inequality exactly
//! as it is stated in the source text; their failures are collected as
//! errata together with the measured values.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::elliptic::derivatives::{central_differences, series_derivatives, Point as DerivPoint};
use crate::elliptic::perimeter::{p_ellipse_perimeter, perimeter_cos_form};
use crate::elliptic::printed::{
    eqse_literal, first_order_coefficients, k_3f2_form, k_with_printed_xi, kse_literal, moment, printed_moment,
};
use crate::elliptic::{abc, agm, complete, integral, k_at_one, theta_form, Backend, EllipticConfig, Kind, Modulus};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::gtrig::{arcsn_pq, sin_cos_pq, sin_pq, sn_pq, PQParams};
use crate::hypergeom::hyp2f1;
use crate::quadrature::{integrate, integrate_01_split, QuadratureSpec};
use crate::special::beta;

use super::checks::{check_corollary, check_parameter_turan, check_r_monotone_convex, Direction, Evaluator};
use super::grid::GridSpec;
use super::report::{fmt_num, ClaimKind, ClaimReport, Erratum, Point, Sample, SuiteReport};

/// Relative step for the r-derivative finite differences.
pub const DERIV_STEP: f64 = 1e-4;
/// Step for the trigonometric finite differences.
pub const TRIG_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Derivatives,
    Trig,
    Series,
    Turan,
    RConvexity,
    Corollary,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Derivatives, Suite::Trig, Suite::Series, Suite::Turan, Suite::RConvexity, Suite::Corollary];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Derivatives => "derivatives",
            Suite::Trig => "trig",
            Suite::Series => "series",
            Suite::Turan => "turan",
            Suite::RConvexity => "r-convexity",
            Suite::Corollary => "corollary",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Grids and numerical settings shared by the suites.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub grid: GridSpec,
    /// Radii for the derivative suite.
    pub derivative_r: Vec<f64>,
    pub cfg: EllipticConfig,
    pub strategy: Strategy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            grid: GridSpec::default(),
            derivative_r: (1..=19).map(|i| i as f64 * 0.05).collect(),
            cfg: EllipticConfig::default(),
            strategy: Strategy::default(),
        }
    }
}

impl SuiteConfig {
    fn evaluator(&self) -> Evaluator {
        Evaluator::new(self.cfg, self.strategy)
    }
}

pub fn run(suite: Suite, sc: &SuiteConfig) -> SuiteReport {
    match suite {
        Suite::Derivatives => derivatives(sc),
        Suite::Trig => trig(sc),
        Suite::Series => series(sc),
        Suite::Turan => turan(sc),
        Suite::RConvexity => r_convexity(sc),
        Suite::Corollary => corollary(sc),
    }
}

pub fn run_all(sc: &SuiteConfig) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run(s, sc)).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn pq_grid_text(grid: &GridSpec) -> String {
    format!("p = {{{}}}; q = {{{}}}", list(&grid.p_values), list(&grid.q_values))
}

fn params(p: f64, q: f64) -> PQParams {
    PQParams::new(p, q).expect("grid exponents exceed 1")
}

/// Worst error among points with `p = 2` and among the rest, for claims that
/// are identities only on the `p = 2` slice.
fn split_by_p_two(samples: &[Sample], tol: f64) -> String {
    let worst = |on: bool| {
        samples
            .iter()
            .filter(|s| s.point.iter().any(|&(k, v)| k == "p" && (v == 2.0) == on))
            .map(|s| tol - s.margin)
            .fold(0.0f64, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
    };
    format!("max error at p = 2: {:.3e}; elsewhere: {:.3e}", worst(true), worst(false))
}

fn within_or_fail(point: Point, value: Result<f64>, reference: f64, tol: f64) -> Sample {
    match value {
        Ok(v) => Sample::within(point, rel(v, reference), tol),
        Err(_) => Sample::within(point, f64::NAN, tol),
    }
}

// ---------------------------------------------------------------- derivatives

struct DerivRow {
    closed: [f64; 5],
    fd: [f64; 4],
    series: [f64; 4],
    residual: f64,
}

fn derivative_row(p: f64, q: f64, r: f64, cfg: &EllipticConfig) -> Result<DerivRow> {
    let pp = params(p, q);
    let pt = DerivPoint::evaluate(&pp, r, Backend::Quadrature, cfg)?;
    let fd = |kind: Kind| {
        central_differences(
            |x| complete(kind, &pp, &Modulus::new(&pp, x)?, Backend::Quadrature, cfg).map(|v| v.value),
            r,
            DERIV_STEP,
        )
    };
    let (dk, d2k) = fd(Kind::First)?;
    let (de, d2e) = fd(Kind::Second)?;
    let (sk1, sk2) = series_derivatives(Kind::First, &pp, r, cfg)?;
    let (se1, se2) = series_derivatives(Kind::Second, &pp, r, cfg)?;
    // The ODE is checked with the series derivatives; differences are too noisy
    // at small r, where the terms nearly cancel.
    let qp = q / p;
    let scale = se2.abs() + ((2.0 - qp) * se1 / r).abs() + (qp * r.powf(q - 2.0) / pt.s * pt.e).abs();
    Ok(DerivRow {
        closed: [pt.dk(), pt.de(), pt.d2e(), pt.d2k(), pt.d2k_printed()],
        fd: [dk, de, d2e, d2k],
        series: [sk1, se1, se2, sk2],
        residual: pt.e_ode_residual(se1, se2) / scale,
    })
}

fn derivatives(sc: &SuiteConfig) -> SuiteReport {
    let mut items = Vec::new();
    for (p, q) in sc.grid.pq_pairs() {
        for &r in &sc.derivative_r {
            items.push((p, q, r));
        }
    }
    let rows =
        exec::map(&items, sc.strategy, |&(p, q, r)| (vec![("p", p), ("q", q), ("r", r)], derivative_row(p, q, r, &sc.cfg)));

    // (closed-form index, finite-difference index, tolerance, id, statement)
    let printed: [(usize, usize, f64, &str, &str); 5] = [
        (0, 0, 1e-6, "deriv-Kd", "dK/dr = (E - (r')^q K) / (r (r')^q)"),
        (1, 1, 1e-6, "deriv-Ed", "dE/dr = (q/(p r)) (E - K)"),
        (2, 2, 1e-4, "deriv-Edd", "d2E/dr2 = (q/(p r^2)) ((q/p - 1/(r')^q - 1) E + (2 - q/p) K)"),
        (3, 3, 1e-4, "deriv-Kdd-rederived", "d2K/dr2 from differentiating dK/dr with the dE/dr rule"),
        (4, 3, 1e-4, "deriv-Kdd-printed", "d2K/dr2 = (q (r')^q/p + q r^q - 2 (r')^q) E + (2 (r')^{2q} - (q/p) (r')^q) K"),
    ];
    let mut claims = Vec::new();
    for (ci, fi, tol, id, statement) in printed {
        let samples: Vec<Sample> = rows
            .iter()
            .map(|(pt, row)| match row {
                Ok(row) => Sample::within(pt.clone(), rel(row.closed[ci], row.fd[fi]), tol),
                Err(_) => Sample::within(pt.clone(), f64::NAN, tol),
            })
            .collect();
        let detail = split_by_p_two(&samples, tol);
        claims.push(ClaimReport::from_samples(id, ClaimKind::Printed, statement, &samples, false).with_detail(detail));
    }

    let ode: Vec<Sample> = rows
        .iter()
        .map(|(pt, row)| match row {
            Ok(row) => Sample::within(pt.clone(), row.residual, 1e-6),
            Err(_) => Sample::within(pt.clone(), f64::NAN, 1e-6),
        })
        .collect();
    let detail = split_by_p_two(&ode, 1e-6);
    claims.push(
        ClaimReport::from_samples(
            "deriv-E-ode",
            ClaimKind::Printed,
            "E'' + (2 - q/p) E'/r + (q/p) r^{q-2} E/(1 - r^q) = 0 (series derivatives; residual relative to the largest term)",
            &ode,
            false,
        )
        .with_detail(detail),
    );

    let names = ["dK/dr", "dE/dr", "d2E/dr2", "d2K/dr2"];
    let tols = [1e-6, 1e-6, 1e-4, 1e-4];
    let series: Vec<Sample> = rows
        .iter()
        .flat_map(|(pt, row)| {
            (0..4).map(move |i| match row {
                Ok(row) => Sample::within(pt.clone(), rel(row.series[i], row.fd[i]), tols[i]),
                Err(_) => Sample::within(pt.clone(), f64::NAN, tols[i]),
            })
        })
        .collect();
    claims.push(ClaimReport::from_samples(
        "deriv-series-vs-differences",
        ClaimKind::Internal,
        &format!("term-wise differentiated 2F1 series match five-point differences for {}", names.join(", ")),
        &series,
        false,
    ));

    let mut errata = Vec::new();
    if let Ok(row) = derivative_row(2.0, 2.0, 0.5, &sc.cfg) {
        errata.push(Erratum::new(
            "d2K/dr2 at (p, q, r) = (2, 2, 0.5)",
            fmt_num(row.closed[4]),
            format!(
                "{} by differences, {} re-derived (the printed bracket lacks the factor 1/(r^2 (r')^{{2q}}))",
                fmt_num(row.fd[3]),
                fmt_num(row.closed[3])
            ),
        ));
    }
    let r_text = if sc.derivative_r.len() > 1 {
        format!("{}..{} ({} points)", sc.derivative_r[0], sc.derivative_r[sc.derivative_r.len() - 1], sc.derivative_r.len())
    } else {
        list(&sc.derivative_r)
    };
    SuiteReport {
        suite: Suite::Derivatives.name().into(),
        grid: format!("{}; r = {r_text}; five-point differences, h = {DERIV_STEP}", pq_grid_text(&sc.grid)),
        claims,
        errata,
    }
}

// ---------------------------------------------------------------------- trig

fn interior(pp: &PQParams) -> Vec<f64> {
    (1..10).map(|k| k as f64 / 10.0 * 0.5 * pp.pi_pq()).collect()
}

fn derivative_at<F: Fn(f64) -> Result<f64>>(f: F, x: f64) -> Result<f64> {
    central_differences(f, x, TRIG_STEP).map(|(d1, _)| d1)
}

/// Literal `∫₀^{π_{p,q}/2} (1 − r^q sin_p(t)^q)^{1/p} dt` with `sin_p = sin_{p,p}`.
fn e_with_sin_p(p: f64, q: f64, r: f64, quad: &QuadratureSpec) -> Result<f64> {
    let pp = params(p, q);
    let sp = params(p, p);
    let rq = r.powf(q);
    let f = |t: f64| sin_pq(&sp, t).map_or(f64::NAN, |s| (1.0 - rq * s.abs().powf(q)).powf(1.0 / p));
    let end = 0.5 * pp.pi_pq();
    // sin_p has a cusp-like maximum at pi_p/2; split there when it is inside.
    let kink = 0.5 * sp.pi_pq();
    if kink < end {
        Ok(integrate(f, 0.0, kink, quad)?.value + integrate(f, kink, end, quad)?.value)
    } else {
        Ok(integrate(f, 0.0, end, quad)?.value)
    }
}

fn trig(sc: &SuiteConfig) -> SuiteReport {
    let pairs = sc.grid.pq_pairs();
    let quad = sc.cfg.quad;
    let mut claims = Vec::new();

    let pi_samples = exec::map(&pairs, sc.strategy, |&(p, q)| {
        let pp = params(p, q);
        let by_quad = integral(Kind::First, p, q, 0.0, &quad).map(|v| 2.0 * v.value);
        within_or_fail(vec![("p", p), ("q", q)], by_quad, pp.pi_pq(), 1e-10)
    });
    claims.push(ClaimReport::from_samples(
        "trig-pi-beta-vs-quadrature",
        ClaimKind::Internal,
        "pi_{p,q} = (2/q) B(1 - 1/p, 1/q) agrees with the integral of (1 - t^q)^{-1/p}",
        &pi_samples,
        false,
    ));

    let pyth: Vec<Sample> = exec::map(&pairs, sc.strategy, |&(p, q)| {
        let pp = params(p, q);
        let span = 3.0 * pp.pi_pq();
        (0..=60)
            .map(|i| {
                let x = -span + i as f64 * span / 30.0;
                let res = sin_cos_pq(&pp, x).map(|(s, c)| c.abs().powf(p) + s.abs().powf(q) - 1.0);
                Sample::within(vec![("p", p), ("q", q), ("x", x)], res.unwrap_or(f64::NAN), 1e-10)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    claims.push(ClaimReport::from_samples(
        "trig-pythagorean",
        ClaimKind::Printed,
        "|cos_{p,q}(x)|^p + |sin_{p,q}(x)|^q = 1 over three periods",
        &pyth,
        false,
    ));

    let identities = exec::map(&pairs, sc.strategy, |&(p, q)| {
        let pp = params(p, q);
        let sin = |x: f64| sin_pq(&pp, x);
        let cos = |x: f64| sin_cos_pq(&pp, x).map(|(_, c)| c);
        let mut out: Vec<Vec<Sample>> = vec![Vec::new(); 4];
        for x in interior(&pp) {
            let pt = vec![("p", p), ("q", q), ("x", x)];
            let (s, c) = match sin_cos_pq(&pp, x) {
                Ok(v) => v,
                Err(_) => (f64::NAN, f64::NAN),
            };
            let checks: [(Result<f64>, f64); 4] = [
                (derivative_at(sin, x), c),
                (derivative_at(cos, x), -q / p * c.powf(2.0 - p) * s.powf(q - 1.0)),
                (derivative_at(|x| cos(x).map(|c| -c.powf(p - 1.0)), x), (p - 1.0) * q / p * s.powf(q - 1.0)),
                (derivative_at(|x| sin(x).map(|s| s.powf(q)), x), q * s.powf(q - 1.0) * c),
            ];
            for (i, (fd, closed)) in checks.into_iter().enumerate() {
                out[i].push(within_or_fail(pt.clone(), Ok(closed), fd.unwrap_or(f64::NAN), 1e-6));
            }
        }
        out
    });
    let statements = [
        "d/dx sin_{p,q} x = cos_{p,q} x",
        "d/dx cos_{p,q} x = -(q/p) cos_{p,q}(x)^{2-p} sin_{p,q}(x)^{q-1}",
        "d/dx (-cos_{p,q}(x)^{p-1}) = ((p-1) q/p) sin_{p,q}(x)^{q-1}",
        "d/dx sin_{p,q}(x)^q = q sin_{p,q}(x)^{q-1} cos_{p,q} x",
    ];
    for (i, st) in statements.iter().enumerate() {
        let samples: Vec<Sample> = identities.iter().flat_map(|o| o[i].iter().cloned()).collect();
        claims.push(ClaimReport::from_samples(&format!("trig-derivative-{}", i + 1), ClaimKind::Printed, st, &samples, false));
    }

    // Residual of (|u'|^{p-2} u')' + λ |u|^{q-2} u on the open quarter period.
    let candidates: [(&str, fn(f64, f64) -> f64); 3] = [
        ("q(p-1)/p", |p, q| q * (p - 1.0) / p),
        ("p/(q(p-1))", |p, q| p / (q * (p - 1.0))),
        ("(p/q)(p-1)", |p, q| p / q * (p - 1.0)),
    ];
    let residuals = exec::map(&pairs, sc.strategy, |&(p, q)| {
        let pp = params(p, q);
        interior(&pp)
            .into_iter()
            .map(|x| {
                let flux = derivative_at(|x| sin_cos_pq(&pp, x).map(|(_, c)| c.powf(p - 1.0)), x);
                let s = sin_pq(&pp, x);
                let res: Vec<f64> = candidates
                    .iter()
                    .map(|(_, lam)| match (&flux, &s) {
                        (Ok(f), Ok(s)) => f + lam(p, q) * s.powf(q - 1.0),
                        _ => f64::NAN,
                    })
                    .collect();
                (vec![("p", p), ("q", q), ("x", x)], res)
            })
            .collect::<Vec<_>>()
    });
    let residuals: Vec<(Point, Vec<f64>)> = residuals.into_iter().flatten().collect();
    let worst: Vec<String> = candidates
        .iter()
        .enumerate()
        .map(|(i, (name, _))| {
            let m = residuals.iter().map(|(_, r)| r[i].abs()).fold(0.0f64, f64::max);
            format!("{name}: {m:.3e}")
        })
        .collect();
    let detail = format!("max |residual| by eigenvalue reading: {}", worst.join("; "));
    let derived: Vec<Sample> = residuals.iter().map(|(pt, r)| Sample::within(pt.clone(), r[0], 1e-5)).collect();
    claims.push(
        ClaimReport::from_samples(
            "trig-eigen-ode",
            ClaimKind::Internal,
            "sin_{p,q} solves (|u'|^{p-2} u')' + lambda |u|^{q-2} u = 0 with lambda = q(p-1)/p",
            &derived,
            false,
        )
        .with_detail(detail.clone()),
    );
    let literal: Vec<Sample> = residuals.iter().map(|(pt, r)| Sample::within(pt.clone(), r[1], 1e-5)).collect();
    claims.push(
        ClaimReport::from_samples(
            "trig-eigen-printed",
            ClaimKind::Printed,
            "sin_{p,q} solves the eigenvalue problem with lambda = p/(q(p-1))",
            &literal,
            false,
        )
        .with_detail(detail),
    );

    let sym = exec::map(&pairs, sc.strategy, |&(p, q)| {
        let pp = params(p, q);
        let period = 2.0 * pp.pi_pq();
        (0..=20)
            .map(|i| {
                let x = -period + i as f64 * period / 10.0 + 0.1;
                let err = match (sin_pq(&pp, x), sin_pq(&pp, x + period), sin_pq(&pp, -x)) {
                    (Ok(a), Ok(b), Ok(c)) => (a - b).abs().max((a + c).abs()),
                    _ => f64::NAN,
                };
                Sample::within(vec![("p", p), ("q", q), ("x", x)], err, 1e-12)
            })
            .collect::<Vec<_>>()
    });
    let sym: Vec<Sample> = sym.into_iter().flatten().collect();
    claims.push(ClaimReport::from_samples(
        "trig-period-odd",
        ClaimKind::Internal,
        "sin_{p,q}(x + 2 pi_{p,q}) = sin_{p,q}(x) and sin_{p,q}(-x) = -sin_{p,q}(x)",
        &sym,
        false,
    ));

    let round = exec::map(&pairs, sc.strategy, |&(p, q)| {
        let pp = params(p, q);
        let mut out = Vec::new();
        for r in [0.3, 0.8] {
            for i in 1..=9 {
                let x = i as f64 / 10.0;
                let back = arcsn_pq(&pp, x, r).and_then(|u| sn_pq(&pp, u, r));
                let err = back.map_or(f64::NAN, |b| b - x);
                out.push(Sample::within(vec![("p", p), ("q", q), ("r", r), ("x", x)], err, 1e-9));
            }
        }
        out
    });
    let round: Vec<Sample> = round.into_iter().flatten().collect();
    claims.push(ClaimReport::from_samples(
        "trig-sn-round-trip",
        ClaimKind::Internal,
        "sn_{p,q}(arcsn_{p,q}(x, r), r) = x",
        &round,
        false,
    ));

    let arcsn_k = exec::map(&pairs, sc.strategy, |&(p, q)| {
        let pp = params(p, q);
        [0.3, 0.8]
            .into_iter()
            .map(|r| {
                let k = complete(Kind::First, &pp, &Modulus::new(&pp, r).expect("r in range"), Backend::Series, &sc.cfg);
                match k {
                    Ok(k) => within_or_fail(vec![("p", p), ("q", q), ("r", r)], arcsn_pq(&pp, 1.0, r), k.value, 1e-10),
                    Err(_) => Sample::within(vec![("p", p), ("q", q), ("r", r)], f64::NAN, 1e-10),
                }
            })
            .collect::<Vec<_>>()
    });
    let arcsn_k: Vec<Sample> = arcsn_k.into_iter().flatten().collect();
    claims.push(ClaimReport::from_samples(
        "trig-arcsn-one-is-K",
        ClaimKind::Internal,
        "arcsn_{p,q}(1, r) = K_{p,q}(r) (quadrature vs 2F1 series)",
        &arcsn_k,
        false,
    ));

    let theta_pts = [(1.5, 2.25, 0.5), (3.0, 1.5, 0.7), (2.0, 2.0, 0.5), (1.25, 4.0, 0.3)];
    let theta_samples = exec::map(&theta_pts, sc.strategy, |&(p, q, r)| {
        let pp = params(p, q);
        [Kind::First, Kind::Second]
            .into_iter()
            .map(|kind| {
                let series = complete(kind, &pp, &Modulus::new(&pp, r).expect("r in range"), Backend::Series, &sc.cfg);
                let tf = theta_form(kind, &pp, r, &QuadratureSpec::with_tol(1e-12)).map(|v| v.value);
                match series {
                    Ok(s) => within_or_fail(vec![("p", p), ("q", q), ("r", r)], tf, s.value, 1e-8),
                    Err(_) => Sample::within(vec![("p", p), ("q", q), ("r", r)], f64::NAN, 1e-8),
                }
            })
            .collect::<Vec<_>>()
    });
    let theta_samples: Vec<Sample> = theta_samples.into_iter().flatten().collect();
    claims.push(ClaimReport::from_samples(
        "trig-theta-form",
        ClaimKind::Internal,
        "integrals over theta in (0, pi_{p,q}/2) with sin_{p,q} equal the t-forms",
        &theta_samples,
        false,
    ));

    let sinp_samples = exec::map(&theta_pts, sc.strategy, |&(p, q, r)| {
        let pp = params(p, q);
        let e = complete(Kind::Second, &pp, &Modulus::new(&pp, r).expect("r in range"), Backend::Series, &sc.cfg);
        match e {
            Ok(e) => within_or_fail(
                vec![("p", p), ("q", q), ("r", r)],
                e_with_sin_p(p, q, r, &QuadratureSpec::with_tol(1e-12)),
                e.value,
                1e-8,
            ),
            Err(_) => Sample::within(vec![("p", p), ("q", q), ("r", r)], f64::NAN, 1e-8),
        }
    });
    claims.push(ClaimReport::from_samples(
        "trig-E-theta-form-sin-p",
        ClaimKind::Printed,
        "E_{p,q}(r) = integral over (0, pi_{p,q}/2) of (1 - r^q sin_p(t)^q)^{1/p}",
        &sinp_samples,
        false,
    ));

    let p_values = &sc.grid.p_values;
    let reflection = exec::map(p_values, sc.strategy, |&p| {
        let pp = params(p, p);
        interior(&pp)
            .into_iter()
            .map(|t| {
                let err = match (sin_cos_pq(&pp, t), sin_pq(&pp, 0.5 * pp.pi_pq() - t)) {
                    (Ok((_, c)), Ok(s)) => c - s,
                    _ => f64::NAN,
                };
                Sample::within(vec![("p", p), ("t", t)], err, 1e-10)
            })
            .collect::<Vec<_>>()
    });
    let reflection: Vec<Sample> = reflection.into_iter().flatten().collect();
    claims.push(ClaimReport::from_samples(
        "trig-cos-reflection",
        ClaimKind::Printed,
        "cos_p(t) = sin_p(pi_p/2 - t)",
        &reflection,
        false,
    ));

    let (a, b) = (2.0, 1.0);
    let perimeter_ps = [1.5, 2.0, 3.0];
    let perims = exec::map(&perimeter_ps, sc.strategy, |&p| {
        let reference = p_ellipse_perimeter(a, b, p);
        let r = (1.0 - (b / a).powf(p)).powf(1.0 / p);
        let theta = theta_form(Kind::Second, &params(p, p), r, &QuadratureSpec::with_tol(1e-12)).map(|v| 4.0 * a * v.value);
        let cos_form = perimeter_cos_form(a, b, p, &QuadratureSpec::with_tol(1e-12));
        (p, reference, theta, cos_form)
    });
    let mut errata = Vec::new();
    let mut theta_pts_s = Vec::new();
    let mut cos_pts = Vec::new();
    for (p, reference, theta, cos_form) in &perims {
        let pt = vec![("p", *p), ("a", a), ("b", b)];
        match reference {
            Ok(reference) => {
                theta_pts_s.push(within_or_fail(pt.clone(), theta.clone(), *reference, 1e-8));
                cos_pts.push(within_or_fail(pt, cos_form.clone(), *reference, 1e-8));
                if let Ok(c) = cos_form {
                    if rel(*c, *reference) > 1e-8 {
                        errata.push(Erratum::new(
                            format!("p-ellipse perimeter, cosine form, p = {p}, a = {a}, b = {b}"),
                            fmt_num(*c),
                            format!("{} (= 4a E_p(r))", fmt_num(*reference)),
                        ));
                    }
                }
            }
            Err(_) => {
                theta_pts_s.push(Sample::within(pt.clone(), f64::NAN, 1e-8));
                cos_pts.push(Sample::within(pt, f64::NAN, 1e-8));
            }
        }
    }
    claims.push(ClaimReport::from_samples(
        "perimeter-theta-form",
        ClaimKind::Internal,
        "4a E_p(r) equals 4a times the integral of (1 - r^p sin_p(t)^p)^{1/p} over (0, pi_p/2)",
        &theta_pts_s,
        false,
    ));
    claims.push(ClaimReport::from_samples(
        "perimeter-cos-form",
        ClaimKind::Printed,
        "perimeter = 4a times the integral of (1 - r^p cos_p(t)^p)^{1/p} over (0, pi_p/2)",
        &cos_pts,
        false,
    ));

    if let (Ok((_, c)), Ok(s)) =
        (sin_cos_pq(&params(3.0, 3.0), 0.4), sin_pq(&params(3.0, 3.0), 0.5 * params(3.0, 3.0).pi_pq() - 0.4))
    {
        errata.push(Erratum::new(
            "cos_p(t) = sin_p(pi_p/2 - t) at p = 3, t = 0.4",
            fmt_num(s),
            format!("cos_p(0.4) = {}", fmt_num(c)),
        ));
    }

    SuiteReport {
        suite: Suite::Trig.name().into(),
        grid: format!("{}; interior x = k/10 * pi_{{p,q}}/2, k = 1..9; h = {TRIG_STEP}", pq_grid_text(&sc.grid)),
        claims,
        errata,
    }
}

// -------------------------------------------------------------------- series

/// Radii of the 3F2 and printed-series spot checks.
const SPOT: [(f64, f64, f64); 3] = [(1.5, 2.25, 0.6), (3.0, 3.0, 0.5), (1.25, 4.0, 0.3)];

fn series(sc: &SuiteConfig) -> SuiteReport {
    let cfg = &sc.cfg;
    let mut claims = Vec::new();
    let mut errata = Vec::new();

    let mut items = Vec::new();
    for (p, q) in sc.grid.pq_pairs() {
        for &r in &sc.grid.r_values {
            items.push((p, q, r));
        }
    }
    let agree = exec::map(&items, sc.strategy, |&(p, q, r)| {
        let pp = params(p, q);
        let m = Modulus::new(&pp, r).expect("r in range");
        [Kind::First, Kind::Second]
            .into_iter()
            .map(|kind| {
                let vals: Result<Vec<f64>> = [Backend::Quadrature, Backend::Series, Backend::Lambda(0.25)]
                    .into_iter()
                    .map(|b| complete(kind, &pp, &m, b, cfg).map(|v| v.value))
                    .collect();
                let err = vals.map_or(f64::NAN, |v| rel(v[1], v[0]).max(rel(v[2], v[0])).max(rel(v[2], v[1])));
                Sample::within(vec![("p", p), ("q", q), ("r", r)], err, 1e-8)
            })
            .collect::<Vec<_>>()
    });
    let agree: Vec<Sample> = agree.into_iter().flatten().collect();
    claims.push(ClaimReport::from_samples(
        "series-backends-agree",
        ClaimKind::Internal,
        "quadrature, 2F1 series and lambda-series (lambda = 0.25) agree pairwise for K and E",
        &agree,
        false,
    ));

    let (p, q, r) = (1.5, 2.25, 0.6);
    let pp = params(p, q);
    let m = Modulus::new(&pp, r).expect("r in range");
    let lambdas = [0.0, 0.1, 0.25, 0.4];
    let mut inv = Vec::new();
    for kind in [Kind::First, Kind::Second] {
        let base = complete(kind, &pp, &m, Backend::Lambda(0.0), cfg).map(|v| v.value);
        for &l in &lambdas[1..] {
            let v = complete(kind, &pp, &m, Backend::Lambda(l), cfg).map(|v| v.value);
            let err = match (&base, v) {
                (Ok(b), Ok(v)) => rel(v, *b),
                _ => f64::NAN,
            };
            inv.push(Sample::within(vec![("p", p), ("q", q), ("r", r), ("lambda", l)], err, 1e-8));
        }
    }
    claims.push(ClaimReport::from_samples(
        "series-lambda-invariance",
        ClaimKind::Internal,
        "the lambda-series value does not depend on lambda in [0, 1/2)",
        &inv,
        false,
    ));

    let classical = params(2.0, 2.0);
    let rs: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let mut agm_s = Vec::new();
    let mut abc_s = Vec::new();
    let abc_params = abc::ABCParams::new(0.5, 0.5, 1.0).expect("valid");
    for &r in &rs {
        let m = Modulus::new(&classical, r).expect("r in range");
        let ka = agm::classical_k_agm(r).map(|v| v.value);
        let ea = agm::classical_e_agm(r).map(|v| v.value);
        for (kind, oracle, abc_val) in [
            (Kind::First, ka, abc::k_abc(&abc_params, r, &cfg.series)),
            (Kind::Second, ea, abc::e_abc(&abc_params, r, &cfg.series)),
        ] {
            let pt = vec![("r", r)];
            match oracle {
                Ok(o) => {
                    for b in [Backend::Auto, Backend::Quadrature] {
                        agm_s.push(within_or_fail(pt.clone(), complete(kind, &classical, &m, b, cfg).map(|v| v.value), o, 1e-10));
                    }
                    abc_s.push(within_or_fail(pt, abc_val.map(|v| v.value), o, 1e-10));
                }
                Err(_) => agm_s.push(Sample::within(pt, f64::NAN, 1e-10)),
            }
        }
    }
    claims.push(ClaimReport::from_samples(
        "series-classical-agm",
        ClaimKind::Internal,
        "K_{2,2} = pi/(2 AGM(1, r')) and E_{2,2} matches the AGM companion series",
        &agm_s,
        false,
    ));
    claims.push(ClaimReport::from_samples(
        "series-abc-reduction",
        ClaimKind::Internal,
        "K_{1/2,1/2,1} = K and E_{1/2,1/2,1} = E",
        &abc_s,
        false,
    ));

    let pairs = sc.grid.pq_pairs();
    let zero: Vec<Sample> = exec::map(&pairs, sc.strategy, |&(p, q)| {
        let half = 0.5 * params(p, q).pi_pq();
        [Kind::First, Kind::Second]
            .into_iter()
            .map(|kind| {
                within_or_fail(vec![("p", p), ("q", q)], integral(kind, p, q, 0.0, &cfg.quad).map(|v| v.value), half, 1e-12)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    claims.push(ClaimReport::from_samples(
        "boundary-zero",
        ClaimKind::Printed,
        "K_{p,q}(0) = E_{p,q}(0) = pi_{p,q}/2",
        &zero,
        false,
    ));

    let e_one: Vec<(f64, f64, Result<f64>)> =
        exec::map(&pairs, sc.strategy, |&(p, q)| (p, q, integral(Kind::Second, p, q, 1.0, &cfg.quad).map(|v| v.value)));
    let e_one_s: Vec<Sample> = e_one
        .iter()
        .map(|(p, q, v)| {
            let err = v.as_ref().map_or(f64::NAN, |v| v.abs());
            Sample::within(vec![("p", *p), ("q", *q)], err, 1e-12)
        })
        .collect();
    claims.push(ClaimReport::from_samples("boundary-E-one", ClaimKind::Printed, "E_{p,q}(1) = 0", &e_one_s, false));
    if let Some((_, _, Ok(v))) = e_one.first() {
        errata.push(Erratum::new("E_{p,q}(1)", "0", format!("{} for every (p, q): the integrand is identically 1", fmt_num(*v))));
    }

    let k_one: Vec<(f64, f64, Result<f64>)> =
        exec::map(&pairs, sc.strategy, |&(p, q)| (p, q, integral(Kind::First, p, q, 1.0, &cfg.quad).map(|v| v.value)));
    let k_one_s: Vec<Sample> = k_one
        .iter()
        .map(|(p, q, v)| {
            let pt = vec![("p", *p), ("q", *q)];
            match v {
                Err(e) if e.is_divergence() => Sample::new(pt, 1.0, 0.0),
                Ok(v) => Sample::new(pt, -1.0 / v, 0.0),
                Err(_) => Sample::new(pt, f64::NAN, 0.0),
            }
        })
        .collect();
    claims.push(
        ClaimReport::from_samples("boundary-K-one", ClaimKind::Printed, "K_{p,q}(1) = infinity", &k_one_s, false)
            .with_detail("margin +1 where the quadrature divergence detector fires, -1/K(1) where the integral is finite"),
    );
    if let Some((p, q, Ok(v))) = k_one.iter().find(|(_, _, v)| v.is_ok()) {
        let closed = k_at_one(&params(*p, *q)).unwrap_or(f64::NAN);
        errata.push(Erratum::new(
            format!("K_{{p,q}}(1) at (p, q) = ({p}, {q})"),
            "infinity",
            format!("{} by quadrature, {} = (1/q) B(1/q, 1 - 2/p); finite whenever p > 2", fmt_num(*v), fmt_num(closed)),
        ));
    }

    let fig = params(1.5, 2.25);
    let fig_half = 0.5 * fig.pi_pq();
    claims.push(ClaimReport::from_samples(
        "figure-constant",
        ClaimKind::Printed,
        "pi_{1.5,2.25}/2 is approximately 1.9937",
        &[Sample::within(vec![("p", 1.5), ("q", 2.25)], fig_half - 1.9937, 5e-4)],
        false,
    ));
    let k1 = integral(Kind::First, 1.5, 2.25, 1.0, &cfg.quad);
    let e1 = integral(Kind::Second, 1.5, 2.25, 1.0, &cfg.quad).map(|v| v.value);
    let cap = [
        match &k1 {
            Ok(v) => Sample::within(vec![("kind", 1.0)], rel(v.value, fig_half), 1e-8),
            Err(_) => Sample::within(vec![("kind", 1.0)], f64::NAN, 1e-8),
        },
        within_or_fail(vec![("kind", 2.0)], e1.clone(), fig_half, 1e-8),
    ];
    claims.push(ClaimReport::from_samples(
        "figure-values-at-one",
        ClaimKind::Printed,
        "K_{1.5,2.25}(1) = E_{1.5,2.25}(1) = pi_{1.5,2.25}/2",
        &cap,
        false,
    ));
    errata.push(Erratum::new(
        "K_{1.5,2.25}(1) = E_{1.5,2.25}(1)",
        fmt_num(fig_half),
        format!(
            "K: {}; E: {}",
            match &k1 {
                Ok(v) => fmt_num(v.value),
                Err(e) => format!("diverges ({e})"),
            },
            e1.map_or_else(|e| e.to_string(), fmt_num)
        ),
    ));

    let mut r3_classical = Vec::new();
    for r in [0.3, 0.6] {
        let m = Modulus::new(&classical, r).expect("r in range");
        let reference = complete(Kind::First, &classical, &m, Backend::Series, cfg).map(|v| v.value);
        let v = k_3f2_form(Kind::First, &classical, r, &cfg.series).map(|v| v.value);
        r3_classical.push(match reference {
            Ok(k) => within_or_fail(vec![("p", 2.0), ("q", 2.0), ("r", r)], v, k, 1e-10),
            Err(_) => Sample::within(vec![("r", r)], f64::NAN, 1e-10),
        });
    }
    claims.push(ClaimReport::from_samples(
        "3f2-form-classical",
        ClaimKind::Printed,
        "K_{2,2}(r) = (pi/2) 3F2(1/2, 1/2, 1; 1, 1; r^2)",
        &r3_classical,
        false,
    ));

    let spot_cmp = |f: &dyn Fn(&PQParams, f64) -> Result<f64>, kind: Kind, tol: f64| -> Vec<Sample> {
        SPOT.iter()
            .map(|&(p, q, r)| {
                let pp = params(p, q);
                let m = Modulus::new(&pp, r).expect("r in range");
                let pt = vec![("p", p), ("q", q), ("r", r)];
                match complete(kind, &pp, &m, Backend::Series, cfg) {
                    Ok(v) => within_or_fail(pt, f(&pp, r), v.value, tol),
                    Err(_) => Sample::within(pt, f64::NAN, tol),
                }
            })
            .collect()
    };

    let mut r3 = spot_cmp(&|pp, r| k_3f2_form(Kind::First, pp, r, &cfg.series).map(|v| v.value), Kind::First, 1e-8);
    r3.extend(spot_cmp(&|pp, r| k_3f2_form(Kind::Second, pp, r, &cfg.series).map(|v| v.value), Kind::Second, 1e-8));
    claims.push(ClaimReport::from_samples(
        "3f2-form",
        ClaimKind::Printed,
        "K_{p,q}(r) = (pi_{p,q}/2) 3F2(1 - 1/p, 1/q, 1 + 1/q - 1/p; 1, 1; r^q), E likewise with -1/p",
        &r3,
        false,
    ));
    let (c3, c2) = first_order_coefficients(&fig);
    errata.push(Erratum::new(
        "coefficient of r^q in K_{1.5,2.25}(r)/(pi_{p,q}/2), 3F2 form",
        format!("{} (= 28/243)", fmt_num(c3)),
        format!("{} (= 8/21) from 2F1(1/p, 1/q; 1 - 1/p + 1/q; r^q) and from quadrature", fmt_num(c2)),
    ));

    let xi = spot_cmp(&|pp, r| k_with_printed_xi(pp, r, 0.25, &cfg.series).map(|v| v.value), Kind::First, 1e-8);
    claims.push(ClaimReport::from_samples(
        "lambda-printed-exponent",
        ClaimKind::Printed,
        "K_{p,q} from the lambda-series with exponent xi = 1 - 1/p (lambda = 0.25)",
        &xi,
        false,
    ));

    let mut bj = Vec::new();
    for &(p, q, r) in &SPOT {
        let pp = params(p, q);
        for j in 1..=5 {
            bj.push(Sample::within(
                vec![("p", p), ("q", q), ("r", r), ("j", j as f64)],
                rel(printed_moment(&pp, r, j), moment(&pp, r, j)),
                1e-12,
            ));
        }
    }
    claims.push(
        ClaimReport::from_samples(
            "lambda-printed-moments",
            ClaimKind::Printed,
            "b_j = (pi_{p,q}/2) r^{qj} C(-1/q, j) C(1/p - 1 - 1/q, j)",
            &bj,
            false,
        )
        .with_detail("reference: b_j = (pi_{p,q}/2) r^{qj} (1/q)_j / (1 + 1/q - 1/p)_j from the beta moments"),
    );

    let kse = spot_cmp(&|pp, r| kse_literal(pp, r, 0.25, &cfg.series).map(|v| v.value), Kind::First, 1e-8);
    claims.push(ClaimReport::from_samples(
        "kse-literal",
        ClaimKind::Printed,
        "printed double series for K_{p,q}(r), lambda = 0.25",
        &kse,
        false,
    ));
    let eqse = spot_cmp(&|pp, r| eqse_literal(pp, r, 0.25, &cfg.series).map(|v| v.value), Kind::Second, 1e-8);
    claims.push(ClaimReport::from_samples(
        "eqse-literal",
        ClaimKind::Printed,
        "printed double series for E_{p,q}(r), lambda = 0.25",
        &eqse,
        false,
    ));

    let (a, b, c, z) = (0.5, 0.5, 1.0, 0.5);
    let euler = integrate_01_split(
        |t, u| t.powf(b - 1.0) * u.powf(c - b - 1.0) * (1.0 - z * t).powf(-a),
        &QuadratureSpec::with_tol(1e-13),
    )
    .map(|v| v.value);
    let f = hyp2f1(a, b, c, z, &cfg.series).map(|v| v.value);
    let mut euler_s = Vec::new();
    if let (Ok(int), Ok(f)) = (&euler, &f) {
        let printed_f = int / (c - b);
        let standard_f = int / beta(b, c - b).unwrap_or(f64::NAN);
        let pt = vec![("a", a), ("b", b), ("c", c), ("z", z)];
        euler_s.push(Sample::within(pt.clone(), rel(printed_f, *f), 1e-10));
        claims.push(ClaimReport::from_samples(
            "euler-integral-standard",
            ClaimKind::Internal,
            "2F1(a, b; c; z) = (1/B(b, c - b)) * integral of t^{b-1} (1-t)^{c-b-1} (1-zt)^{-a}",
            &[Sample::within(pt, rel(standard_f, *f), 1e-10)],
            false,
        ));
        errata.push(Erratum::new(
            "Euler integral prefactor Gamma(c)/(Gamma(c)(c-b)) at (a, b, c, z) = (1/2, 1/2, 1, 1/2)",
            format!("prefactor {} giving {}", fmt_num(1.0 / (c - b)), fmt_num(printed_f)),
            format!("prefactor 1/B(b, c-b) = {} giving {}; validity needs Re c > Re b > 0", fmt_num(1.0 / PI), fmt_num(*f)),
        ));
    } else {
        euler_s.push(Sample::within(vec![("z", z)], f64::NAN, 1e-10));
    }
    claims.push(ClaimReport::from_samples(
        "euler-integral-printed",
        ClaimKind::Printed,
        "2F1(a, b; c; z) = (Gamma(c)/(Gamma(c)(c-b))) * integral of t^{b-1} (1-t)^{c-b-1} (1-zt)^{-a}",
        &euler_s,
        false,
    ));

    SuiteReport {
        suite: Suite::Series.name().into(),
        grid: format!("{}; r = {{{}}}", pq_grid_text(&sc.grid), list(&sc.grid.r_values)),
        claims,
        errata,
    }
}

// ------------------------------------------------------- inequalities

fn turan(sc: &SuiteConfig) -> SuiteReport {
    let ev = sc.evaluator();
    let mut claims = check_parameter_turan(&sc.grid, Direction::P, &ev);
    claims.extend(check_parameter_turan(&sc.grid, Direction::Q, &ev));
    SuiteReport {
        suite: Suite::Turan.name().into(),
        grid: format!("{}; steps include 1 where the lower neighbour converges", sc.grid),
        claims,
        errata: Vec::new(),
    }
}

fn r_convexity(sc: &SuiteConfig) -> SuiteReport {
    SuiteReport {
        suite: Suite::RConvexity.name().into(),
        grid: format!("{}; r = {{{}}}; all pairs r1 < r2", pq_grid_text(&sc.grid), list(&sc.grid.r_values)),
        claims: check_r_monotone_convex(&sc.grid, &sc.evaluator()),
        errata: Vec::new(),
    }
}

fn corollary(sc: &SuiteConfig) -> SuiteReport {
    SuiteReport {
        suite: Suite::Corollary.name().into(),
        grid: format!("r = {{{}}}", list(&sc.grid.r_values)),
        claims: check_corollary(&sc.grid.r_values, &sc.evaluator()),
        errata: Vec::new(),
    }
}

/// Internal failures surface as an error for callers that need a `Result`.
pub fn ensure_internal(reports: &[SuiteReport]) -> Result<()> {
    let bad: Vec<&str> = reports.iter().flat_map(|r| &r.claims).filter(|c| c.is_defect()).map(|c| c.claim_id.as_str()).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::no_convergence("verify", format!("internal checks failed: {}", bad.join(", "))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::report::Status;

    fn small() -> SuiteConfig {
        SuiteConfig {
            grid: GridSpec { p_values: vec![1.5, 2.0], q_values: vec![2.0, 2.25], r_values: vec![0.3, 0.6], deltas: vec![0.5] },
            derivative_r: vec![0.3, 0.7],
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_derivative_suite() {
        let rep = run(Suite::Derivatives, &small());
        assert_eq!(rep.claim("deriv-series-vs-differences").unwrap().status, Status::Holds);
        assert_eq!(rep.claim("deriv-Kdd-printed").unwrap().status, Status::Fails);
        assert_eq!(rep.claim("deriv-Kd").unwrap().status, Status::Fails);
        assert_eq!(rep.errata.len(), 1);
    }

    #[test]
    fn small_series_suite_has_no_defects() {
        let rep = run(Suite::Series, &small());
        for c in &rep.claims {
            assert!(!c.is_defect(), "{} {:?}", c.claim_id, c.witness);
        }
        assert_eq!(rep.claim("3f2-form-classical").unwrap().status, Status::Holds);
        assert_eq!(rep.claim("3f2-form").unwrap().status, Status::Fails);
        assert_eq!(rep.claim("boundary-E-one").unwrap().status, Status::Fails);
        assert_eq!(rep.claim("figure-constant").unwrap().status, Status::Holds);
    }

    #[test]
    fn small_trig_suite_has_no_defects() {
        let rep = run(Suite::Trig, &small());
        for c in &rep.claims {
            assert!(!c.is_defect(), "{} {:?}", c.claim_id, c.witness);
        }
        assert_eq!(rep.claim("trig-pythagorean").unwrap().status, Status::Holds);
        assert_eq!(rep.claim("trig-cos-reflection").unwrap().status, Status::Fails);
    }
}
