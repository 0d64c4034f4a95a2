//! Truncated hypergeometric series: Gauss `₂F₁`, `₃F₂`, and the shifted
//! moment ("λ-method") series
//!
//! ```text
//! ∫₀¹ g(x) (1 − α x^η)^{−ξ} dx
//!     = Σ_n (ξ)_n / (n! (1−λ)^{n+ξ}) · Σ_{j≤n} C(n,j) (−λ)^{n−j} b_j,
//! b_j = α^j ∫₀¹ t^{jη} g(t) dt,   λ < 1/2.
//! ```
//!
//! All engines work at real argument inside the unit disc and report
//! non-convergence instead of attempting analytic continuation.

use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};
use crate::special::{binomial, gen_binomial};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSpec {
    /// Stop once terms (and the geometric tail bound) fall below `tol · |sum|`.
    pub tol: f64,
    pub n_min: usize,
    pub n_max: usize,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        SeriesSpec { tol: 1e-16, n_min: 2, n_max: 200_000 }
    }
}

impl SeriesSpec {
    fn validate(&self, op: &'static str) -> Result<()> {
        if self.tol > 0.0 && self.n_min >= 2 && self.n_min <= self.n_max {
            Ok(())
        } else {
            Err(Error::domain(op, format!("invalid series spec {self:?}")))
        }
    }
}

/// Tracks the two-consecutive-small-terms stopping rule.
struct Stopper {
    quiet: usize,
}

impl Stopper {
    fn new() -> Self {
        Stopper { quiet: 0 }
    }

    /// `tail` is the estimated magnitude of everything after this term.
    fn done(&mut self, n: usize, term: f64, tail: f64, sum: f64, spec: &SeriesSpec) -> bool {
        let bound = spec.tol * sum.abs();
        if term.abs() <= bound && tail <= bound {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        n >= spec.n_min && self.quiet >= 2
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Generalized hypergeometric series `pFq(upper; lower; z)` for `|z| < 1`.
pub fn hyp_pfq(upper: &[f64], lower: &[f64], z: f64, spec: &SeriesSpec) -> Result<EvalResult> {
    const OP: &str = "hypergeometric series";
    spec.validate(OP)?;
    if let Some(b) = lower.iter().find(|b| is_nonpositive_integer(**b)) {
        return Err(Error::domain(OP, format!("lower parameter {b} is a non-positive integer")));
    }
    if !z.is_finite() || z.abs() >= 1.0 {
        return Err(Error::domain(OP, format!("|z| = {} is not < 1", z.abs())));
    }
    if upper.iter().chain(lower).any(|x| !x.is_finite()) {
        return Err(Error::domain(OP, "parameters must be finite"));
    }

    let mut sum = 1.0;
    let mut term = 1.0;
    let mut stopper = Stopper::new();
    for n in 0..spec.n_max {
        let nf = n as f64;
        let num: f64 = upper.iter().map(|a| a + nf).product();
        let den: f64 = lower.iter().map(|b| b + nf).product();
        let ratio = num / den * z / (nf + 1.0);
        let next = term * ratio;
        if next == 0.0 && num == 0.0 {
            // Terminating (polynomial) series.
            return Ok(EvalResult::new(sum, Method::HypSeries, 0.0));
        }
        sum += next;
        term = next;
        let r = ratio.abs();
        let tail = if r < 1.0 { term.abs() * r / (1.0 - r) } else { f64::INFINITY };
        if stopper.done(n + 1, term, tail, sum, spec) {
            return Ok(EvalResult::new(sum, Method::HypSeries, tail));
        }
    }
    Err(Error::no_convergence(OP, format!("n_max = {} reached at z = {z}", spec.n_max)))
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)`.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64, spec: &SeriesSpec) -> Result<EvalResult> {
    hyp_pfq(&[a, b], &[c], z, spec)
}

/// `₃F₂(a1, a2, a3; b1, b2; z)`.
pub fn hyp3f2(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64, z: f64, spec: &SeriesSpec) -> Result<EvalResult> {
    hyp_pfq(&[a1, a2, a3], &[b1, b2], z, spec)
}

/// Parameters of the shifted moment series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSpec {
    pub lambda: f64,
    pub alpha: f64,
    pub eta: f64,
    pub xi: f64,
}

impl LambdaSpec {
    pub fn new(lambda: f64, alpha: f64, eta: f64, xi: f64) -> Result<Self> {
        const OP: &str = "lambda_series";
        if !(lambda.is_finite() && alpha.is_finite() && eta.is_finite() && xi.is_finite()) {
            return Err(Error::domain(OP, "parameters must be finite"));
        }
        if lambda < 0.0 {
            return Err(Error::Unsupported { op: OP, detail: format!("negative shift lambda = {lambda}") });
        }
        if lambda >= 0.5 {
            return Err(Error::domain(OP, format!("lambda = {lambda} must be < 1/2")));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(OP, format!("alpha = {alpha} outside [0, 1]")));
        }
        if eta <= 0.0 {
            return Err(Error::domain(OP, format!("eta = {eta} must be > 0")));
        }
        Ok(LambdaSpec { lambda, alpha, eta, xi })
    }

    /// Geometric decay rate of the outer series: `max|α x^η − λ| / (1 − λ)`.
    pub fn contraction(&self) -> f64 {
        self.lambda.max((self.alpha - self.lambda).abs()) / (1.0 - self.lambda)
    }
}

/// Source of the shifted moments `c_n = Σ_j C(n,j) (−λ)^{n−j} b_j`,
/// requested in order `n = 0, 1, 2, …`.
pub trait ShiftedMoments {
    fn shifted(&mut self, n: usize) -> f64;
}

/// Shifted moments from an explicit `b_j` sequence by direct binomial
/// summation. Exact for small `n`; the alternating sum loses roughly
/// `log10((α+λ)/|α−λ|)` digits per unit of `n`.
pub struct BinomialShift<F> {
    moments: F,
    lambda: f64,
    cache: Vec<f64>,
}

impl<F: Fn(usize) -> f64> BinomialShift<F> {
    pub fn new(moments: F, lambda: f64) -> Self {
        BinomialShift { moments, lambda, cache: Vec::new() }
    }
}

impl<F: Fn(usize) -> f64> ShiftedMoments for BinomialShift<F> {
    fn shifted(&mut self, n: usize) -> f64 {
        while self.cache.len() <= n {
            let j = self.cache.len();
            self.cache.push((self.moments)(j));
        }
        // Neumaier-compensated sum.
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for j in 0..=n {
            let coeff = if n <= 64 { binomial(n, j) } else { gen_binomial(n as f64, j) };
            let term = coeff * (-self.lambda).powi((n - j) as i32) * self.cache[j];
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
        sum + comp
    }
}

/// Shifted moments for `b_j = scale · α^j (β)_j / (β+δ)_j`, i.e. moments of
/// `α X` with `X ~ Beta(β, δ)`.
///
/// Uses the three-term recurrence obtained from the Pearson equation of the
/// Beta density applied to `y^n`, `y = αx − λ`:
///
/// ```text
/// (β+δ+n) M_{n+1} = (αβ − (β+δ)λ + n(α − 2λ)) M_n + n λ(α−λ) M_{n−1}
/// ```
///
/// The characteristic roots are `α − λ` and `−λ`; both endpoint
/// contributions are present in `M_n`, so forward recursion is stable.
#[derive(Debug, Clone)]
pub struct BetaMomentShift {
    scale: f64,
    alpha: f64,
    beta: f64,
    delta: f64,
    lambda: f64,
    prev: f64,
    curr: f64,
    /// `curr` holds the normalized moment `M_index`.
    index: usize,
}

impl BetaMomentShift {
    pub fn new(scale: f64, alpha: f64, beta: f64, delta: f64, lambda: f64) -> Result<Self> {
        if !(beta > 0.0 && delta > 0.0) {
            return Err(Error::domain("BetaMomentShift", format!("need beta, delta > 0 (got {beta}, {delta})")));
        }
        Ok(BetaMomentShift { scale, alpha, beta, delta, lambda, prev: 0.0, curr: 1.0, index: 0 })
    }

    /// Unshifted moment `b_j`.
    pub fn moment(&self, j: usize) -> f64 {
        let mut m = self.scale;
        for i in 0..j {
            let i = i as f64;
            m *= self.alpha * (self.beta + i) / (self.beta + self.delta + i);
        }
        m
    }
}

impl ShiftedMoments for BetaMomentShift {
    fn shifted(&mut self, n: usize) -> f64 {
        assert!(n >= self.index, "shifted moments must be requested in order");
        let (a, b, d, l) = (self.alpha, self.beta, self.delta, self.lambda);
        while self.index < n {
            let k = self.index as f64;
            let next = ((a * b - (b + d) * l + k * (a - 2.0 * l)) * self.curr + k * l * (a - l) * self.prev) / (b + d + k);
            self.prev = self.curr;
            self.curr = next;
            self.index += 1;
        }
        self.scale * self.curr
    }
}

/// Shifted moment series with moments supplied by `source`.
pub fn lambda_series_with<S: ShiftedMoments>(source: &mut S, spec: &LambdaSpec, series: &SeriesSpec) -> Result<EvalResult> {
    const OP: &str = "lambda_series";
    series.validate(OP)?;
    let rho = spec.contraction();
    let tail_factor = if rho < 1.0 { rho / (1.0 - rho) } else { f64::INFINITY };
    let one_minus = 1.0 - spec.lambda;

    let mut coeff = one_minus.powf(-spec.xi);
    let mut sum = 0.0;
    let mut stopper = Stopper::new();
    for n in 0..series.n_max {
        let term = coeff * source.shifted(n);
        if !term.is_finite() {
            return Err(Error::no_convergence(OP, format!("non-finite term at n = {n}")));
        }
        sum += term;
        let tail = term.abs() * tail_factor;
        if stopper.done(n, term, tail, sum, series) {
            return Ok(EvalResult::new(sum, Method::LambdaSeries, tail));
        }
        coeff *= (spec.xi + n as f64) / ((n as f64 + 1.0) * one_minus);
    }
    Err(Error::no_convergence(OP, format!("n_max = {} reached (contraction {rho})", series.n_max)))
}

/// Shifted moment series from an explicit moment sequence `b_j`.
pub fn lambda_series<F: Fn(usize) -> f64>(b: F, spec: &LambdaSpec, series: &SeriesSpec) -> Result<EvalResult> {
    lambda_series_with(&mut BinomialShift::new(b, spec.lambda), spec, series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_01_split, QuadratureSpec};
    use crate::special::beta;

    fn spec() -> SeriesSpec {
        SeriesSpec::default()
    }

    #[test]
    fn hyp2f1_basic_values() {
        assert_eq!(hyp2f1(0.3, 0.7, 1.1, 0.0, &spec()).unwrap().value, 1.0);
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5, &spec()).unwrap();
        assert!((v.value - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!(v.error_estimate < 1e-14);
    }

    #[test]
    fn hyp2f1_matches_euler_integral() {
        let q = QuadratureSpec::default();
        for &(a, b, c, z) in &[(0.5, 0.5, 1.0, 0.25), (0.4, 0.3, 1.7, -0.6), (-0.5, 0.8, 1.2, 0.9)] {
            let series = hyp2f1(a, b, c, z, &spec()).unwrap().value;
            let integral =
                integrate_01_split(|t, s| t.powf(b - 1.0) * s.powf(c - b - 1.0) * (1.0 - z * t).powf(-a), &q).unwrap().value
                    / beta(b, c - b).unwrap();
            assert!(((series - integral) / integral).abs() < 1e-10, "({a},{b},{c},{z}): {series} vs {integral}");
        }
    }

    #[test]
    fn hyp2f1_domain_errors() {
        assert!(matches!(hyp2f1(1.0, 1.0, 0.0, 0.5, &spec()), Err(Error::Domain { .. })));
        assert!(matches!(hyp2f1(1.0, 1.0, -2.0, 0.5, &spec()), Err(Error::Domain { .. })));
        assert!(matches!(hyp2f1(1.0, 1.0, 2.0, 1.0, &spec()), Err(Error::Domain { .. })));
        let tight = SeriesSpec { n_max: 50, ..spec() };
        assert!(matches!(hyp2f1(1.0, 1.0, 1.5, 0.999, &tight), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn terminating_series_is_exact() {
        // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
        let (b, c, z) = (0.5, 1.5, 0.4);
        let expected = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
        let v = hyp2f1(-2.0, b, c, z, &spec()).unwrap();
        assert!((v.value - expected).abs() < 1e-15);
    }

    #[test]
    fn hyp3f2_reduces_when_parameters_cancel() {
        for z in [0.0, 0.3, -0.7, 0.95] {
            let a = hyp3f2(0.4, 0.6, 1.3, 1.1, 1.3, z, &spec()).unwrap().value;
            let b = hyp2f1(0.4, 0.6, 1.1, z, &spec()).unwrap().value;
            assert!(((a - b) / b).abs() < 1e-13, "z = {z}");
        }
    }

    #[test]
    fn hyp3f2_long_sum_oracle() {
        // Brute-force 400-term sum with compensated accumulation.
        let z = 0.3;
        let (mut sum, mut comp, mut term) = (1.0f64, 0.0f64, 1.0f64);
        for n in 0..400 {
            let nf = n as f64;
            term *= (0.5 + nf).powi(3) / ((1.0 + nf) * (1.0 + nf)) * z / (nf + 1.0);
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        let v = hyp3f2(0.5, 0.5, 0.5, 1.0, 1.0, z, &spec()).unwrap().value;
        assert!(((v - sum) / sum).abs() < 1e-14);
    }

    #[test]
    fn lambda_series_delta_moments() {
        for xi in [-0.7, 0.0, 0.5, 2.0] {
            let ls = LambdaSpec::new(0.0, 0.5, 1.0, xi).unwrap();
            let v = lambda_series(|j| if j == 0 { 1.0 } else { 0.0 }, &ls, &spec()).unwrap();
            assert_eq!(v.value, 1.0);
        }
    }

    #[test]
    fn lambda_zero_collapses_to_plain_sum() {
        let xi = 0.6;
        let b = |j: usize| 0.8f64.powi(j as i32) / (j as f64 + 1.0);
        let ls = LambdaSpec::new(0.0, 0.8, 1.0, xi).unwrap();
        let v = lambda_series(b, &ls, &spec()).unwrap().value;
        let (mut direct, mut coeff) = (0.0, 1.0);
        for n in 0..400 {
            direct += coeff * b(n);
            coeff *= (xi + n as f64) / (n as f64 + 1.0);
        }
        assert!(((v - direct) / direct).abs() < 1e-13, "{v} vs {direct}");
    }

    #[test]
    fn beta_recurrence_matches_binomial_sum_at_small_n() {
        let (scale, alpha, beta_, delta, lambda) = (1.7, 0.6, 0.4, 0.55, 0.3);
        let mut rec = BetaMomentShift::new(scale, alpha, beta_, delta, lambda).unwrap();
        let reference = rec.clone();
        let mut direct = BinomialShift::new(|j| reference.moment(j), lambda);
        for n in 0..25 {
            let a = rec.shifted(n);
            let b = direct.shifted(n);
            assert!((a - b).abs() <= 1e-13 * b.abs().max(1e-3), "n = {n}: {a} vs {b}");
        }
    }

    #[test]
    fn lambda_series_reproduces_quadrature_for_classical_k() {
        // K(0.5) = ∫ (1 - t^2)^{-1/2} (1 - 0.25 t^2)^{-1/2} dt
        let alpha = 0.25;
        let q =
            integrate_01_split(|t, c| (c * (1.0 + t)).powf(-0.5) * (1.0 - alpha * t * t).powf(-0.5), &QuadratureSpec::default())
                .unwrap()
                .value;
        let scale = 0.5 * beta(0.5, 0.5).unwrap();
        for lambda in [0.0, 0.1, 0.25, 0.4] {
            let ls = LambdaSpec::new(lambda, alpha, 2.0, 0.5).unwrap();
            let mut m = BetaMomentShift::new(scale, alpha, 0.5, 0.5, lambda).unwrap();
            let v = lambda_series_with(&mut m, &ls, &spec()).unwrap().value;
            assert!(((v - q) / q).abs() < 1e-12, "lambda = {lambda}: {v} vs {q}");
        }
    }

    #[test]
    fn lambda_spec_validation() {
        assert!(matches!(LambdaSpec::new(-0.1, 0.5, 1.0, 0.5), Err(Error::Unsupported { .. })));
        assert!(matches!(LambdaSpec::new(0.5, 0.5, 1.0, 0.5), Err(Error::Domain { .. })));
        assert!(LambdaSpec::new(0.2, 1.5, 1.0, 0.5).is_err());
        assert!(LambdaSpec::new(0.2, 0.5, 0.0, 0.5).is_err());
    }
}
