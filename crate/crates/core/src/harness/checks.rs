//! Grid checks for the monotonicity / convexity statements in `r` and in the
//! exponents, and for the double inequality bounding the classical `K`, `E`
//! by exponent-shifted neighbours.

use crate::elliptic::{complete, integral, Backend, EllipticConfig, Kind, Modulus};
use crate::error::Result;
use crate::eval::EvalResult;
use crate::exec::{self, Strategy};
use crate::gtrig::PQParams;

use super::grid::GridSpec;
use super::report::{ClaimKind, ClaimReport, Sample};

/// Evaluates `K`/`E` at arbitrary positive exponents.
#[derive(Debug, Clone, Copy, Default)]
pub struct Evaluator {
    pub cfg: EllipticConfig,
    pub strategy: Strategy,
}

impl Evaluator {
    pub fn new(cfg: EllipticConfig, strategy: Strategy) -> Self {
        Evaluator { cfg, strategy }
    }

    /// Default backend inside `p, q > 1`, the raw integral outside.
    pub fn value(&self, kind: Kind, p: f64, q: f64, r: f64) -> Result<EvalResult> {
        if p > 1.0 && q > 1.0 && r < 1.0 {
            let params = PQParams::new(p, q)?;
            complete(kind, &params, &Modulus::new(&params, r)?, Backend::Auto, &self.cfg)
        } else {
            integral(kind, p, q, r, &self.cfg.quad)
        }
    }

    /// `(ln F, relative error)`; errors become `(NaN, 0)` so the sample fails.
    fn log_value(&self, kind: Kind, p: f64, q: f64, r: f64) -> (f64, f64) {
        match self.value(kind, p, q, r) {
            Ok(v) => (v.value.ln(), v.relative_error()),
            Err(_) => (f64::NAN, 0.0),
        }
    }
}

/// Parameter direction for the exponent statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    P,
    Q,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::P => "p",
            Direction::Q => "q",
        }
    }
}

/// `φ(a) = a^q ln²a / (1 − a^q)²`, i.e. `−∂²/∂q² ln(1 − a^q)`.
fn phi(a: f64, q: f64) -> f64 {
    let u = a.powf(q);
    let la = a.ln();
    u * la * la / ((1.0 - u) * (1.0 - u))
}

/// Closed-form second derivative, in the chosen exponent, of the logarithm of
/// the `K` integrand `f = ((1 − t^q)(1 − r^q t^q))^{−1/p}` or the `E`
/// integrand `g = ((1 − r^q t^q)/(1 − t^q))^{1/p}`.
pub fn integrand_log_second_derivative(kind: Kind, direction: Direction, p: f64, q: f64, r: f64, t: f64) -> f64 {
    let a = (-t.powf(q)).ln_1p();
    let b = (-(r * t).powf(q)).ln_1p();
    match (kind, direction) {
        (Kind::First, Direction::P) => -2.0 / p.powi(3) * (a + b),
        (Kind::Second, Direction::P) => 2.0 / p.powi(3) * (b - a),
        (Kind::First, Direction::Q) => (phi(t, q) + phi(r * t, q)) / p,
        (Kind::Second, Direction::Q) => (phi(t, q) - phi(r * t, q)) / p,
    }
}

/// Default abscissae for the integrand oracle.
pub fn oracle_t_grid() -> Vec<f64> {
    let mut ts = vec![1e-6];
    ts.extend((1..200).map(|i| i as f64 / 200.0));
    ts.push(1.0 - 1e-6);
    ts
}

/// Uniform sign (`+1` log-convex, `−1` log-concave) of the integrand's
/// log-curvature over `t_grid`, or `None` if it changes sign.
pub fn integrand_log_convexity_oracle(kind: Kind, direction: Direction, p: f64, q: f64, r: f64, t_grid: &[f64]) -> Option<f64> {
    let vals: Vec<f64> = t_grid.iter().map(|&t| integrand_log_second_derivative(kind, direction, p, q, r, t)).collect();
    if vals.iter().all(|&v| v > 0.0) {
        Some(1.0)
    } else if vals.iter().all(|&v| v < 0.0) {
        Some(-1.0)
    } else {
        None
    }
}

fn kind_samples_to_reports(
    specs: &[(&str, &str)],
    per_item: Vec<Vec<Vec<Sample>>>,
    kind: ClaimKind,
    reversible: bool,
) -> Vec<ClaimReport> {
    specs
        .iter()
        .enumerate()
        .map(|(i, (id, statement))| {
            let samples: Vec<Sample> = per_item.iter().flat_map(|item| item[i].iter().cloned()).collect();
            ClaimReport::from_samples(id, kind, statement, &samples, reversible)
        })
        .collect()
}

/// Monotonicity, midpoint log-convexity and geometric convexity of `K` in
/// `r`; monotonicity and geometric concavity of `E` in `r`. Midpoints are
/// evaluated for every pair of grid radii.
pub fn check_r_monotone_convex(grid: &GridSpec, ev: &Evaluator) -> Vec<ClaimReport> {
    const SPECS: [(&str, &str); 5] = [
        ("r-K-increasing", "r -> K_{p,q}(r) is strictly increasing"),
        ("r-K-log-convex", "log K((r1+r2)/2) <= (log K(r1) + log K(r2))/2"),
        ("r-K-geometrically-convex", "K(sqrt(r1 r2)) <= sqrt(K(r1) K(r2))"),
        ("r-E-decreasing", "r -> E_{p,q}(r) is strictly decreasing"),
        ("r-E-geometrically-concave", "E(sqrt(r1 r2)) >= sqrt(E(r1) E(r2))"),
    ];
    let rs = &grid.r_values;
    let per_pq = exec::map(&grid.pq_pairs(), ev.strategy, |&(p, q)| {
        let k: Vec<(f64, f64)> = rs.iter().map(|&r| ev.log_value(Kind::First, p, q, r)).collect();
        let e: Vec<(f64, f64)> = rs.iter().map(|&r| ev.log_value(Kind::Second, p, q, r)).collect();
        let mut out = vec![Vec::new(); 5];
        for i in 0..rs.len().saturating_sub(1) {
            let pt = vec![("p", p), ("q", q), ("r1", rs[i]), ("r2", rs[i + 1])];
            out[0].push(Sample::new(pt.clone(), k[i + 1].0 - k[i].0, k[i].1 + k[i + 1].1));
            out[3].push(Sample::new(pt, e[i].0 - e[i + 1].0, e[i].1 + e[i + 1].1));
        }
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                let pt = vec![("p", p), ("q", q), ("r1", rs[i]), ("r2", rs[j])];
                let mid = 0.5 * (rs[i] + rs[j]);
                let geo = (rs[i] * rs[j]).sqrt();
                let (km, kme) = ev.log_value(Kind::First, p, q, mid);
                let (kg, kge) = ev.log_value(Kind::First, p, q, geo);
                let (eg, ege) = ev.log_value(Kind::Second, p, q, geo);
                let kmean = 0.5 * (k[i].0 + k[j].0);
                let knoise = 0.5 * (k[i].1 + k[j].1);
                let emean = 0.5 * (e[i].0 + e[j].0);
                let enoise = 0.5 * (e[i].1 + e[j].1);
                out[1].push(Sample::new(pt.clone(), kmean - km, knoise + kme));
                out[2].push(Sample::new(pt.clone(), kmean - kg, knoise + kge));
                out[4].push(Sample::new(pt, eg - emean, enoise + ege));
            }
        }
        out
    });
    kind_samples_to_reports(&SPECS, per_pq, ClaimKind::Printed, true)
}

/// Steps usable at a base exponent: the grid deltas plus the unit step, kept
/// only where the lower neighbour stays in the convergent range.
fn steps(grid: &GridSpec, direction: Direction, base: f64) -> Vec<f64> {
    let mut ds = grid.deltas.clone();
    if !ds.contains(&1.0) {
        ds.push(1.0);
    }
    ds.into_iter()
        .filter(|&d| match direction {
            Direction::P => base - d > 1.0,
            Direction::Q => base - d > 0.0,
        })
        .collect()
}

/// Turán ratios `T = F(x)² / (F(x−δ) F(x+δ))` in `p` or `q` for `F ∈ {K, E}`.
///
/// Per kind this yields three reports: the printed direction of the Turán
/// inequality (`≥` in `p`, `≤` in `q`), the printed monotonicity in the
/// exponent (increasing in `p`, decreasing in `q`), and the internal check
/// that `sign(ln T)` agrees with the integrand oracle at every point.
pub fn check_parameter_turan(grid: &GridSpec, direction: Direction, ev: &Evaluator) -> Vec<ClaimReport> {
    let t_grid = oracle_t_grid();
    let mut items = Vec::new();
    for &(p, q) in &grid.pq_pairs() {
        let base = if direction == Direction::P { p } else { q };
        for d in steps(grid, direction, base) {
            for &r in &grid.r_values {
                items.push((p, q, r, d));
            }
        }
    }
    let mut reports = Vec::new();
    for kind in [Kind::First, Kind::Second] {
        let f = kind.symbol();
        let x = direction.name();
        let per_item = exec::map(&items, ev.strategy, |&(p, q, r, d)| {
            let shifted = |s: f64| match direction {
                Direction::P => ev.log_value(kind, p + s, q, r),
                Direction::Q => ev.log_value(kind, p, q + s, r),
            };
            let (lo, lo_e) = shifted(-d);
            let (mid, mid_e) = shifted(0.0);
            let (hi, hi_e) = shifted(d);
            let log_t = 2.0 * mid - lo - hi;
            let noise = 2.0 * mid_e + lo_e + hi_e;
            let pt = vec![("p", p), ("q", q), ("r", r), ("delta", d)];

            let turan = match direction {
                Direction::P => Sample::new(pt.clone(), log_t, noise),
                Direction::Q => Sample::new(pt.clone(), -log_t, noise),
            };
            let monotone = match direction {
                Direction::P => Sample::new(pt.clone(), hi - lo, lo_e + hi_e),
                Direction::Q => Sample::new(pt.clone(), lo - hi, lo_e + hi_e),
            };
            let params_along: Vec<(f64, f64)> = (0..=4)
                .map(|i| {
                    let s = -d + 0.5 * d * i as f64;
                    match direction {
                        Direction::P => (p + s, q),
                        Direction::Q => (p, q + s),
                    }
                })
                .collect();
            let signs: Vec<Option<f64>> = params_along
                .iter()
                .map(|&(pp, qq)| integrand_log_convexity_oracle(kind, direction, pp, qq, r, &t_grid))
                .collect();
            let oracle = if signs.iter().all(|s| *s == Some(1.0)) {
                Some(1.0)
            } else if signs.iter().all(|s| *s == Some(-1.0)) {
                Some(-1.0)
            } else {
                None
            };
            let agreement = match oracle {
                // Log-convex integrands give a log-convex integral: ln T ≤ 0.
                Some(s) => Sample::new(pt, -s * log_t, noise),
                None => Sample::new(pt, 0.0, f64::INFINITY),
            };
            vec![vec![turan], vec![monotone], vec![agreement]]
        });
        let (turan_stmt, mono_stmt) = match direction {
            Direction::P => (
                format!("{f}_{{p,q}}(r)^2 >= {f}_{{p-d,q}}(r) {f}_{{p+d,q}}(r) (log-concave in p)"),
                format!("p -> {f}_{{p,q}}(r) is strictly increasing"),
            ),
            Direction::Q => (
                format!("{f}_{{p,q}}(r)^2 <= {f}_{{p,q-d}}(r) {f}_{{p,q+d}}(r) (log-convex in q)"),
                format!("q -> {f}_{{p,q}}(r) is strictly decreasing"),
            ),
        };
        let oracle_stmt = format!("sign of ln T for {f} in {x} matches the closed-form integrand log-curvature");
        let ids = [format!("turan-{x}-{f}"), format!("monotone-{x}-{f}"), format!("turan-oracle-{x}-{f}")];
        let pick = |i: usize| -> Vec<Sample> { per_item.iter().flat_map(|it| it[i].iter().cloned()).collect() };
        reports.push(ClaimReport::from_samples(&ids[0], ClaimKind::Printed, &turan_stmt, &pick(0), true));
        reports.push(ClaimReport::from_samples(&ids[1], ClaimKind::Printed, &mono_stmt, &pick(1), true));
        reports.push(ClaimReport::from_samples(&ids[2], ClaimKind::Internal, &oracle_stmt, &pick(2), false));
    }
    reports
}

/// `√(F_{1,2} F_{3,2}) ≤ F_{2,2} ≤ √(F_{2,1} F_{2,3})` for `F ∈ {K, E}`.
pub fn check_corollary(r_grid: &[f64], ev: &Evaluator) -> Vec<ClaimReport> {
    let mut reports = Vec::new();
    for kind in [Kind::First, Kind::Second] {
        let f = kind.symbol();
        let rows = exec::map(r_grid, ev.strategy, |&r| {
            let (c, ce) = ev.log_value(kind, 2.0, 2.0, r);
            let (u1, u1e) = ev.log_value(kind, 2.0, 1.0, r);
            let (u3, u3e) = ev.log_value(kind, 2.0, 3.0, r);
            let upper = Sample::new(vec![("r", r)], u1 + u3 - 2.0 * c, 2.0 * ce + u1e + u3e);
            let lower = match (ev.value(kind, 1.0, 2.0, r), ev.value(kind, 3.0, 2.0, r)) {
                (Ok(l1), Ok(l3)) => Ok(Sample::new(
                    vec![("r", r)],
                    2.0 * c - l1.value.ln() - l3.value.ln(),
                    2.0 * ce + l1.relative_error() + l3.relative_error(),
                )),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
            (upper, lower)
        });
        let upper: Vec<Sample> = rows.iter().map(|(u, _)| u.clone()).collect();
        reports.push(ClaimReport::from_samples(
            &format!("corollary-upper-{f}"),
            ClaimKind::Printed,
            &format!("{f}(r) <= sqrt({f}_{{2,1}}(r) {f}_{{2,3}}(r))"),
            &upper,
            true,
        ));
        let lower_id = format!("corollary-lower-{f}");
        let lower_stmt = format!("sqrt({f}_{{1,2}}(r) {f}_{{3,2}}(r)) <= {f}(r)");
        match rows.iter().map(|(_, l)| l.clone()).collect::<Result<Vec<Sample>>>() {
            Ok(samples) => reports.push(ClaimReport::from_samples(&lower_id, ClaimKind::Printed, &lower_stmt, &samples, true)),
            Err(e) => reports.push(ClaimReport::not_evaluable(
                &lower_id,
                ClaimKind::Printed,
                &lower_stmt,
                format!("not evaluable: {f}_{{1,2}}(r) is not finite ({e})"),
            )),
        }
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::report::Status;

    fn ev() -> Evaluator {
        Evaluator::default()
    }

    #[test]
    fn oracle_signs() {
        let ts = oracle_t_grid();
        for kind in [Kind::First, Kind::Second] {
            for dir in [Direction::P, Direction::Q] {
                assert_eq!(integrand_log_convexity_oracle(kind, dir, 2.0, 2.0, 0.5, &ts), Some(1.0), "{kind:?} {dir:?}");
            }
        }
    }

    #[test]
    fn oracle_matches_finite_differences() {
        let (p, q, r, t): (f64, f64, f64, f64) = (2.0, 2.0, 0.5, 0.5);
        let h = 1e-3;
        let log_f = |kind: Kind, p: f64, q: f64| {
            let a = 1.0 - t.powf(q);
            let b = 1.0 - (r * t).powf(q);
            match kind {
                Kind::First => -(a * b).ln() / p,
                Kind::Second => (b / a).ln() / p,
            }
        };
        for kind in [Kind::First, Kind::Second] {
            let fd_p = (log_f(kind, p + h, q) - 2.0 * log_f(kind, p, q) + log_f(kind, p - h, q)) / (h * h);
            let fd_q = (log_f(kind, p, q + h) - 2.0 * log_f(kind, p, q) + log_f(kind, p, q - h)) / (h * h);
            let cp = integrand_log_second_derivative(kind, Direction::P, p, q, r, t);
            let cq = integrand_log_second_derivative(kind, Direction::Q, p, q, r, t);
            assert!((fd_p - cp).abs() < 1e-5 * cp.abs(), "{kind:?} p: {fd_p} vs {cp}");
            assert!((fd_q - cq).abs() < 1e-5 * cq.abs(), "{kind:?} q: {fd_q} vs {cq}");
        }
    }

    #[test]
    fn classical_slice_r_checks_hold() {
        let grid = GridSpec { p_values: vec![2.0], q_values: vec![2.0], ..GridSpec::default() };
        for rep in check_r_monotone_convex(&grid, &ev()) {
            assert_eq!(rep.status, Status::Holds, "{}", rep.claim_id);
        }
    }

    #[test]
    fn turan_q_direction_at_classical_point() {
        let grid = GridSpec { p_values: vec![2.0], q_values: vec![2.0], r_values: vec![0.5], deltas: vec![0.5] };
        let reps = check_parameter_turan(&grid, Direction::Q, &ev());
        let k = reps.iter().find(|r| r.claim_id == "turan-q-K").unwrap();
        assert_eq!(k.status, Status::Holds);
        assert_eq!(k.points, 2);
        let oracle = reps.iter().find(|r| r.claim_id == "turan-oracle-q-K").unwrap();
        assert_eq!(oracle.status, Status::Holds);
    }

    #[test]
    fn corollary_lower_bounds_are_not_evaluable() {
        let reps = check_corollary(&[0.5], &ev());
        let upper_k = reps.iter().find(|r| r.claim_id == "corollary-upper-K").unwrap();
        assert_eq!(upper_k.status, Status::Holds);
        let lower_k = reps.iter().find(|r| r.claim_id == "corollary-lower-K").unwrap();
        assert_eq!(lower_k.status, Status::Indeterminate);
        let lower_e = reps.iter().find(|r| r.claim_id == "corollary-lower-E").unwrap();
        assert_eq!(lower_e.status, Status::Indeterminate);
    }
}
