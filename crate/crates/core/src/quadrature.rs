//! Tanh-sinh (double exponential) quadrature on the open unit interval.
//!
//! The substitution `t = (1 + tanh(π/2 · sinh s)) / 2` maps `(0, 1)` onto the
//! real line and makes integrands with power-type endpoint singularities decay
//! double exponentially, so a plain trapezoidal sum in `s` converges very fast.
//! Each level halves the step; level sums are reused.
//!
//! Nodes carry both `t` and `1 − t`, both computed without cancellation, so
//! integrands that need the distance to the right endpoint (such as
//! `(1 − t^q)^{−1/p}`) can be evaluated accurately down to `1 − t ≈ 1e-300`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Deepest supported refinement level (`h = 2^-MAX_LEVEL`).
pub const MAX_LEVEL: usize = 14;

/// Nodes whose endpoint distance falls below this are not generated.
const ENDPOINT_CUTOFF: f64 = 1e-300;

/// Nodes closer than this to an endpoint feed the divergence (tail) check.
const DEEP_TAIL: f64 = 1e-250;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Refinement depth bound, at most [`MAX_LEVEL`].
    pub max_level: usize,
    /// Convergence is not declared before this level.
    pub min_level: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { abs_tol: 1e-12, rel_tol: 1e-12, max_level: 12, min_level: 3 }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec { abs_tol: tol, rel_tol: tol, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.max_level >= 1
            && self.max_level <= MAX_LEVEL
            && self.min_level <= self.max_level;
        if ok {
            Ok(())
        } else {
            Err(Error::domain("integrate_01", format!("invalid quadrature spec {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub levels_used: usize,
}

/// One abscissa pair `±s`: `near` is the point close to 1, `far` = 1 − near.
#[derive(Debug, Clone, Copy)]
struct Node {
    near: f64,
    far: f64,
    weight: f64,
    centre: bool,
}

fn node_at(s: f64) -> Node {
    let z = PI * s.sinh();
    // near = 1/(1 + e^{-z}), far = 1/(1 + e^{z}) with z = 2·(π/2)·sinh s.
    let ez = z.exp();
    let far = 1.0 / (1.0 + ez);
    let near = 1.0 / (1.0 + 1.0 / ez);
    Node { near, far, weight: PI * s.cosh() * near * far, centre: s == 0.0 }
}

fn build_level(level: usize) -> Vec<Node> {
    let h = 0.5f64.powi(level as i32);
    let (start, stride) = if level == 0 { (0usize, 1usize) } else { (1, 2) };
    let mut nodes = Vec::new();
    let mut k = start;
    loop {
        let node = node_at(k as f64 * h);
        if node.far < ENDPOINT_CUTOFF {
            break;
        }
        nodes.push(node);
        k += stride;
    }
    nodes
}

fn level_nodes(level: usize) -> &'static [Node] {
    static TABLES: [OnceLock<Vec<Node>>; MAX_LEVEL + 1] = [const { OnceLock::new() }; MAX_LEVEL + 1];
    TABLES[level].get_or_init(|| build_level(level))
}

/// Integrate `f(t, 1 − t)` over `(0, 1)`.
///
/// The integrand receives the abscissa and its complement; both are strictly
/// inside the open interval.
pub fn integrate_01_split<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> f64,
{
    spec.validate()?;
    let mut raw_sum = 0.0;
    let mut deep_tail = 0.0;
    let mut previous: Option<f64> = None;
    let mut last_diff = f64::INFINITY;
    let mut stalled = 0usize;

    for level in 0..=spec.max_level {
        let h = 0.5f64.powi(level as i32);
        for node in level_nodes(level) {
            let right = f(node.near, node.far);
            let mut contribution = node.weight * right;
            let mut tail = if node.far < DEEP_TAIL { contribution.abs() } else { 0.0 };
            if !node.centre {
                let left = f(node.far, node.near);
                let c = node.weight * left;
                if node.far < DEEP_TAIL {
                    tail += c.abs();
                }
                contribution += c;
            }
            if !contribution.is_finite() {
                return Err(Error::divergent(
                    "integrate_01",
                    format!("integrand is not finite near t = {:e} or 1 - {:e}", node.far, node.far),
                ));
            }
            raw_sum += contribution;
            deep_tail += tail;
        }

        let estimate = h * raw_sum;
        let tol = spec.abs_tol.max(spec.rel_tol * estimate.abs());
        if h * deep_tail > tol {
            return Err(Error::divergent(
                "integrate_01",
                format!("endpoint contributions do not decay (tail {:e})", h * deep_tail),
            ));
        }
        if let Some(prev) = previous {
            let diff = (estimate - prev).abs();
            if level >= spec.min_level && diff <= tol {
                return Ok(QuadratureResult { value: estimate, error_estimate: diff, levels_used: level });
            }
            if level >= 5 && diff > 0.5 * last_diff {
                stalled += 1;
                if stalled >= 3 {
                    return Err(Error::no_convergence(
                        "integrate_01",
                        format!("level differences stopped shrinking at level {level} (diff {diff:e})"),
                    ));
                }
            } else {
                stalled = 0;
            }
            last_diff = diff;
        }
        previous = Some(estimate);
    }
    Err(Error::no_convergence(
        "integrate_01",
        format!("tolerance not met after {} levels (last diff {last_diff:e})", spec.max_level),
    ))
}

/// Integrate `f(t)` over `(0, 1)`.
pub fn integrate_01<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    // Largest double below 1; the split nodes may round `t` up to exactly 1.
    const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;
    integrate_01_split(|t, _| f(t.min(BELOW_ONE)), spec)
}

/// Integrate `f` over the finite interval `(a, b)` by an affine map onto `(0, 1)`.
pub fn integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    let width = b - a;
    integrate_01_split(|t, c| width * f(if t <= 0.5 { a + width * t } else { b - width * c.max(f64::EPSILON / 2.0) }), spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta;

    fn quad(f: impl Fn(f64) -> f64) -> QuadratureResult {
        integrate_01(f, &QuadratureSpec::default()).unwrap()
    }

    #[test]
    fn constant_and_square_root_singularity() {
        assert!((quad(|_| 1.0).value - 1.0).abs() < 1e-14);
        let r = integrate_01_split(|_, c| c.powf(-0.5), &QuadratureSpec::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13, "{}", r.value);
    }

    #[test]
    fn nodes_never_touch_endpoints() {
        for level in 0..=6 {
            for n in level_nodes(level) {
                assert!(n.far > 0.0 && n.far <= 0.5);
                assert!((n.near + n.far - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn symmetric_beta_integrand_matches_beta() {
        let r = integrate_01_split(|t, c| t.powf(-1.0 / 3.0) * c.powf(-1.0 / 3.0), &QuadratureSpec::default()).unwrap();
        let b = beta(2.0 / 3.0, 2.0 / 3.0).unwrap();
        assert!(((r.value - b) / b).abs() < 1e-12);
    }

    #[test]
    fn half_interval_symmetry() {
        let f = |t: f64| (t * (1.0 - t)).powf(-0.25) * (1.0 + (t - 0.5).powi(2));
        let whole = quad(f).value;
        let half = integrate(f, 0.0, 0.5, &QuadratureSpec::default()).unwrap().value;
        assert!((whole - 2.0 * half).abs() < 1e-11);
    }

    #[test]
    fn non_integrable_endpoint_is_reported() {
        let err = integrate_01_split(|_, c| 1.0 / c, &QuadratureSpec::default()).unwrap_err();
        assert!(err.is_divergence(), "{err}");
        let err = integrate_01(|t| t.powf(-1.2), &QuadratureSpec::default()).unwrap_err();
        assert!(err.is_divergence(), "{err}");
    }

    #[test]
    fn rejects_bad_spec() {
        let spec = QuadratureSpec { max_level: 0, min_level: 0, ..QuadratureSpec::default() };
        assert!(integrate_01(|_| 1.0, &spec).is_err());
        let spec = QuadratureSpec { abs_tol: 0.0, ..QuadratureSpec::default() };
        assert!(integrate_01(|_| 1.0, &spec).is_err());
    }
}
