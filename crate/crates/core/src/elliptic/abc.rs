//! Three-parameter family
//! `K_{a,b,c}(r) = (B(a,b)/2) ₂F₁(a, b; c; r²)`,
//! `E_{a,b,c}(r) = (B(a,b)/2) ₂F₁(a − 1, b; c; r²)`.

use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::hypergeom::{hyp2f1, SeriesSpec};
use crate::special::beta_unchecked;

/// `0 < a < min(c, 1)` and `0 < b < c ≤ a + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ABCParams {
    a: f64,
    b: f64,
    c: f64,
}

impl ABCParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let ok = [a, b, c].iter().all(|x| x.is_finite()) && 0.0 < a && a < c.min(1.0) && 0.0 < b && b < c && c <= a + b;
        if ok {
            Ok(ABCParams { a, b, c })
        } else {
            Err(Error::domain("ABCParams", format!("need 0 < a < min(c,1), 0 < b < c <= a+b (got {a}, {b}, {c})")))
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

fn check_r(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::domain("K_abc", format!("r = {r} outside [0, 1)")))
    }
}

pub fn k_abc(abc: &ABCParams, r: f64, series: &SeriesSpec) -> Result<EvalResult> {
    check_r(r)?;
    let f = hyp2f1(abc.a, abc.b, abc.c, r * r, series)?;
    Ok(f.scaled(0.5 * beta_unchecked(abc.a, abc.b)))
}

pub fn e_abc(abc: &ABCParams, r: f64, series: &SeriesSpec) -> Result<EvalResult> {
    check_r(r)?;
    let f = hyp2f1(abc.a - 1.0, abc.b, abc.c, r * r, series)?;
    Ok(f.scaled(0.5 * beta_unchecked(abc.a, abc.b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::agm::{classical_e_agm, classical_k_agm};

    #[test]
    fn reduces_to_classical() {
        let abc = ABCParams::new(0.5, 0.5, 1.0).unwrap();
        let s = SeriesSpec::default();
        for r in [0.0, 0.5, 0.8] {
            assert!((k_abc(&abc, r, &s).unwrap().value - classical_k_agm(r).unwrap().value).abs() < 1e-14);
            assert!((e_abc(&abc, r, &s).unwrap().value - classical_e_agm(r).unwrap().value).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_modulus_and_validation() {
        let abc = ABCParams::new(0.3, 0.9, 1.1).unwrap();
        let half_beta = 0.5 * crate::special::beta(0.3, 0.9).unwrap();
        assert_eq!(k_abc(&abc, 0.0, &SeriesSpec::default()).unwrap().value, half_beta);
        assert!(ABCParams::new(1.0, 0.5, 1.2).is_err());
        assert!(ABCParams::new(0.5, 0.5, 1.5).is_err());
        assert!(ABCParams::new(0.5, 1.0, 1.0).is_err());
        assert!(k_abc(&abc, 1.0, &SeriesSpec::default()).is_err());
    }
}
